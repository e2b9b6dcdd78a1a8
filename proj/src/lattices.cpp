#include "spherepack/lattices.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <sstream>

namespace spherepack {

namespace {

BigInt int_sqrt(const BigInt& z) { return boost::multiprecision::sqrt(z); }

// Splits z > 0 into s^2 * r with r squarefree (trial division up to 10^5;
// larger prime-square factors, if any, are left in r).
std::pair<BigInt, BigInt> square_part(BigInt z) {
    BigInt s = 1;
    BigInt root = int_sqrt(z);
    if (root * root == z) return {root, 1};
    for (unsigned p = 2; p < 100000; ++p) {
        BigInt p2 = BigInt(p) * p;
        if (p2 > z) break;
        while (z % p2 == 0) {
            z /= p2;
            s *= p;
        }
    }
    return {s, z};
}

SymbolicVolume normalized(Rational c, BigInt rad, int pi_twice) {
    if (c == 0) return {0, 1, 0};
    auto [s, r] = square_part(rad);
    return {c * s, r, pi_twice};
}

bool is_integer(const Rational& q) { return denominator(q) == 1; }

RatMatrix gram_of(const IntMatrix& basis, int s) {
    std::size_t n = basis.size();
    Rational scale = Rational(1, BigInt(1) << s);
    RatMatrix g(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            BigInt acc = 0;
            for (std::size_t k = 0; k < basis[i].size(); ++k) acc += basis[i][k] * basis[j][k];
            g[i][j] = g[j][i] = Rational(acc) * scale;
        }
    return g;
}

RatMatrix rat_inverse(const RatMatrix& m) {
    std::size_t n = m.size();
    RatMatrix a = m, inv(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a[p][c] == 0) ++p;
        if (p == n) throw NumericalError("singular matrix");
        std::swap(a[p], a[c]);
        std::swap(inv[p], inv[c]);
        Rational piv = a[c][c];
        for (std::size_t k = 0; k < n; ++k) {
            a[c][k] /= piv;
            inv[c][k] /= piv;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || a[r][c] == 0) continue;
            Rational f = a[r][c];
            for (std::size_t k = 0; k < n; ++k) {
                a[r][k] -= f * a[c][k];
                inv[r][k] -= f * inv[c][k];
            }
        }
    }
    return inv;
}

bool positive_definite(const RatMatrix& g) {
    std::size_t n = g.size();
    RatMatrix a = g;
    for (std::size_t k = 0; k < n; ++k) {
        if (a[k][k] <= 0) return false;
        for (std::size_t i = k + 1; i < n; ++i) {
            Rational f = a[i][k] / a[k][k];
            for (std::size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
        }
    }
    return true;
}

// ---- structured counting ----------------------------------------------------

using Poly4 = std::array<std::vector<BigInt>, 4>;

Poly4 coordinate_poly(int bit, int w, int emax) {
    Poly4 p;
    for (auto& v : p) v.assign(emax + 1, 0);
    int lim = static_cast<int>(std::sqrt(static_cast<double>(emax))) + 2;
    for (int m = -lim; m <= lim; ++m) {
        if (((m % 2) + 2) % 2 != bit) continue;
        long z = w + 2L * m;
        long e = z * z;
        if (e > emax) continue;
        p[((m % 4) + 4) % 4][e] += 1;
    }
    return p;
}

Poly4 poly_mul(const Poly4& a, const Poly4& b, int emax) {
    Poly4 r;
    for (auto& v : r) v.assign(emax + 1, 0);
    for (int ca = 0; ca < 4; ++ca)
        for (int ea = 0; ea <= emax; ++ea) {
            if (a[ca][ea] == 0) continue;
            for (int cb = 0; cb < 4; ++cb)
                for (int eb = 0; ea + eb <= emax; ++eb) {
                    if (b[cb][eb] == 0) continue;
                    r[(ca + cb) % 4][ea + eb] += a[ca][ea] * b[cb][eb];
                }
        }
    return r;
}

Poly4 poly_one(int emax) {
    Poly4 p;
    for (auto& v : p) v.assign(emax + 1, 0);
    p[0][0] = 1;
    return p;
}

// Adds sum over codewords of [omega^cls] prod_i P_{c_i}(w) to out (cls < 0: all classes).
void accumulate_part(const WeightEnumerator& we, int n, int w, int cls, int emax, std::vector<BigInt>& out) {
    Poly4 p0 = coordinate_poly(0, w, emax), p1 = coordinate_poly(1, w, emax);
    std::vector<Poly4> pow0{poly_one(emax)}, pow1{poly_one(emax)};
    for (int j = 1; j <= n; ++j) {
        pow0.push_back(poly_mul(pow0.back(), p0, emax));
        pow1.push_back(poly_mul(pow1.back(), p1, emax));
    }
    for (auto [wt, count] : we.counts) {
        Poly4 prod = poly_mul(pow0[n - wt], pow1[wt], emax);
        for (int c = 0; c < 4; ++c) {
            if (cls >= 0 && c != cls) continue;
            for (int e = 0; e <= emax; ++e) out[e] += prod[c][e] * BigInt(count);
        }
    }
}

NormCountTable structured_counts(const CodeStructure& st, int n, const Rational& max_norm) {
    Rational scaled = max_norm * 8;
    BigInt emax_big = numerator(scaled) / denominator(scaled);
    if (emax_big > 4000) throw NumericalError("cutoff too large for the enumeration budget");
    int emax = static_cast<int>(emax_big);
    std::vector<BigInt> acc(emax + 1, 0);
    auto we = weight_enumerator(st.code);
    if (!st.leech_twist) {
        accumulate_part(we, n, 0, -1, emax, acc);
    } else {
        if (st.shift_exponent % 2 == 0 || st.shift_exponent > 3 || st.shift_exponent < 1)
            throw InvalidArgument("twisted lattice needs shift exponent 1 or 3");
        int w = st.shift_exponent == 3 ? 1 : 2;
        accumulate_part(we, n, 0, 0, emax, acc);
        accumulate_part(we, n, w, 2, emax, acc);
    }
    NormCountTable t;
    t.max_norm = max_norm;
    for (int e = 0; e <= emax; ++e)
        if (acc[e] != 0) t.counts[Rational(e, 8)] = acc[e];
    return t;
}

// ---- generic enumeration ----------------------------------------------------

NormCountTable generic_counts(const LatticeDescription& lat, const Rational& max_norm, std::uint64_t budget) {
    int n = lat.dimension;
    BigInt den = 1;
    for (auto& row : lat.gram)
        for (auto& x : row) den = boost::multiprecision::lcm(den, denominator(x));
    std::vector<std::vector<long long>> gi(n, std::vector<long long>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Rational v = lat.gram[i][j] * den;
            if (abs(numerator(v)) > BigInt(1LL << 40)) throw NumericalError("Gram entries too large for enumeration");
            gi[i][j] = numerator(v).convert_to<long long>();
        }
    Rational bound_r = max_norm * den;
    BigInt bound_big = numerator(bound_r) / denominator(bound_r);
    long long bound = bound_big.convert_to<long long>();
    double dden = den.convert_to<double>();

    // Cholesky of the real Gram: G = R^T R, mu[i][j] = R_ij / R_ii.
    std::vector<std::vector<long double>> g(n, std::vector<long double>(n)), mu(n, std::vector<long double>(n, 0));
    std::vector<long double> rii(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g[i][j] = static_cast<long double>(gi[i][j]) / dden;
    std::vector<std::vector<long double>> r(n, std::vector<long double>(n, 0));
    for (int i = 0; i < n; ++i) {
        long double s = g[i][i];
        for (int k = 0; k < i; ++k) s -= r[k][i] * r[k][i];
        if (s <= 0) throw NumericalError("Gram matrix not positive definite in floating point");
        r[i][i] = std::sqrt(s);
        for (int j = i + 1; j < n; ++j) {
            long double t = g[i][j];
            for (int k = 0; k < i; ++k) t -= r[k][i] * r[k][j];
            r[i][j] = t / r[i][i];
        }
    }
    for (int i = 0; i < n; ++i) {
        rii[i] = r[i][i] * r[i][i];
        for (int j = i + 1; j < n; ++j) mu[i][j] = r[i][j] / r[i][i];
    }
    // ||x||^2 = sum_i rii[i] (x_i + sum_{j>i} mu[i][j] x_j)^2
    long double cap = max_norm.convert_to<long double>() * (1 + 1e-12L) + 1e-12L;
    std::map<long long, BigInt> counts;
    std::vector<long long> x(n, 0);
    std::vector<long double> partial(n + 1, 0);
    std::uint64_t nodes = 0;

    auto exact_norm = [&]() {
        __int128 acc = 0;
        for (int i = 0; i < n; ++i) {
            if (!x[i]) continue;
            __int128 row = 0;
            for (int j = 0; j < n; ++j) row += static_cast<__int128>(gi[i][j]) * x[j];
            acc += row * x[i];
        }
        return static_cast<long long>(acc);
    };

    // Iterative depth-first search from level n-1 down to 0.
    std::vector<long long> hi(n);
    int level = n - 1;
    auto enter = [&](int i) {
        long double c = 0;
        for (int j = i + 1; j < n; ++j) c -= mu[i][j] * x[j];
        long double rem = cap - partial[i + 1];
        if (rem < 0) rem = 0;
        long double rad = std::sqrt(rem / rii[i]);
        x[i] = static_cast<long long>(std::ceil(c - rad - 1e-9L));
        hi[i] = static_cast<long long>(std::floor(c + rad + 1e-9L));
    };
    enter(level);
    while (true) {
        if (++nodes > budget) throw NumericalError("cutoff too large for the enumeration budget");
        if (x[level] > hi[level]) {
            if (++level >= n) break;
            ++x[level];
            continue;
        }
        long double c = 0;
        for (int j = level + 1; j < n; ++j) c -= mu[level][j] * x[j];
        long double d = x[level] - c;
        partial[level] = partial[level + 1] + rii[level] * d * d;
        if (partial[level] > cap) {
            ++x[level];
            continue;
        }
        if (level == 0) {
            long long nn = exact_norm();
            if (nn <= bound) counts[nn] += 1;
            ++x[0];
            continue;
        }
        --level;
        enter(level);
    }
    NormCountTable t;
    t.max_norm = max_norm;
    for (auto& [k, v] : counts) t.counts[Rational(BigInt(k), den)] = v;
    return t;
}

} // namespace

// ---- SymbolicVolume ---------------------------------------------------------

SymbolicVolume SymbolicVolume::sqrt_of(const Rational& q) {
    if (q < 0) throw InvalidArgument("square root of a negative rational");
    // sqrt(p/d) = sqrt(p d) / d
    return normalized(Rational(1, denominator(q)), numerator(q) * denominator(q), 0);
}

SymbolicVolume SymbolicVolume::operator*(const SymbolicVolume& o) const {
    return normalized(coefficient * o.coefficient, radicand * o.radicand, pi_twice + o.pi_twice);
}

SymbolicVolume SymbolicVolume::operator/(const SymbolicVolume& o) const {
    if (o.coefficient == 0) throw InvalidArgument("division by zero volume");
    SymbolicVolume inv{Rational(1) / (o.coefficient * Rational(o.radicand)), o.radicand, -o.pi_twice};
    return *this * inv;
}

SymbolicVolume SymbolicVolume::operator+(const SymbolicVolume& o) const {
    if (coefficient == 0) return o;
    if (o.coefficient == 0) return *this;
    if (radicand != o.radicand || pi_twice != o.pi_twice)
        throw InvalidArgument("symbolic volumes with different radicals or pi powers cannot be added exactly");
    return normalized(coefficient + o.coefficient, radicand, pi_twice);
}

bool SymbolicVolume::operator==(const SymbolicVolume& o) const {
    if (coefficient == 0 && o.coefficient == 0) return true;
    return coefficient == o.coefficient && radicand == o.radicand && pi_twice == o.pi_twice;
}

Real SymbolicVolume::value() const {
    Real v = to_real(coefficient) * sqrt(Real(radicand));
    if (pi_twice != 0) v *= pow(pi_real(), Real(pi_twice) / 2);
    return v;
}

std::string SymbolicVolume::str() const {
    if (coefficient == 0) return "0";
    BigInt num = numerator(coefficient), den = denominator(coefficient);
    std::vector<std::string> factors;
    bool neg = num < 0;
    if (neg) num = -num;
    if (num != 1) factors.push_back(num.str());
    if (radicand != 1) factors.push_back("sqrt(" + radicand.str() + ")");
    if (pi_twice != 0) {
        std::string p = "pi";
        if (pi_twice % 2 == 0) {
            if (pi_twice != 2) p += "^" + std::to_string(pi_twice / 2);
        } else {
            p += "^(" + std::to_string(pi_twice) + "/2)";
        }
        factors.push_back(p);
    }
    std::string s = neg ? "-" : "";
    if (factors.empty()) s += "1";
    for (std::size_t i = 0; i < factors.size(); ++i) s += (i ? "*" : "") + factors[i];
    if (den != 1) s += "/" + den.str();
    return s;
}

// ---- NormCountTable ---------------------------------------------------------

BigInt NormCountTable::count_at(const Rational& norm) const {
    auto it = counts.find(norm);
    return it == counts.end() ? BigInt(0) : it->second;
}

std::string NormCountTable::csv() const {
    std::ostringstream os;
    os << "sq_norm,count\n";
    for (auto& [k, v] : counts) os << to_string(k) << "," << v.str() << "\n";
    return os.str();
}

// ---- constructions -----------------------------------------------------------

IntMatrix integer_row_reduce(IntMatrix rows) {
    if (rows.empty()) return rows;
    std::size_t ncols = rows[0].size();
    std::size_t cur = 0;
    for (std::size_t c = 0; c < ncols && cur < rows.size(); ++c) {
        while (true) {
            std::size_t best = rows.size();
            for (std::size_t r = cur; r < rows.size(); ++r)
                if (rows[r][c] != 0 && (best == rows.size() || abs(rows[r][c]) < abs(rows[best][c]))) best = r;
            if (best == rows.size()) break;
            std::swap(rows[cur], rows[best]);
            bool done = true;
            for (std::size_t r = cur + 1; r < rows.size(); ++r) {
                if (rows[r][c] == 0) continue;
                BigInt q = rows[r][c] / rows[cur][c];
                for (std::size_t k = c; k < ncols; ++k) rows[r][k] -= q * rows[cur][k];
                if (rows[r][c] != 0) done = false;
            }
            if (done) break;
        }
        if (rows[cur][c] == 0) continue;
        if (rows[cur][c] < 0)
            for (auto& v : rows[cur]) v = -v;
        // Reduce the entries above the pivot into [0, pivot).
        for (std::size_t r = 0; r < cur; ++r) {
            BigInt q = rows[r][c] / rows[cur][c];
            if (rows[r][c] - q * rows[cur][c] < 0) q -= 1;
            if (q != 0)
                for (std::size_t k = c; k < ncols; ++k) rows[r][k] -= q * rows[cur][k];
        }
        ++cur;
    }
    rows.resize(cur);
    return rows;
}

LatticeDescription make_lattice(std::string name, const IntMatrix& generators, int scale_exponent) {
    if (generators.empty()) throw InvalidArgument("lattice needs generators");
    std::size_t n = generators[0].size();
    for (auto& g : generators)
        if (g.size() != n) throw InvalidArgument("generators of unequal length");
    IntMatrix basis = integer_row_reduce(generators);
    if (basis.size() != n) throw InvalidArgument("generators do not span a full-rank lattice");
    int s = scale_exponent;
    while (s >= 2) {
        bool all_even = true;
        for (auto& row : basis)
            for (auto& v : row)
                if (v % 2 != 0) all_even = false;
        if (!all_even) break;
        for (auto& row : basis)
            for (auto& v : row) v /= 2;
        s -= 2;
    }
    LatticeDescription lat;
    lat.name = std::move(name);
    lat.dimension = static_cast<int>(n);
    lat.scale_exponent = s;
    lat.scaled_basis = std::move(basis);
    lat.gram = gram_of(lat.scaled_basis, s);
    if (!positive_definite(lat.gram)) throw ValidationError("Gram matrix is not positive definite");
    return lat;
}

LatticeDescription construction_a(const BinaryCode& code) {
    int n = code.length();
    if (n > 24) throw InvalidArgument("construction_a supports length <= 24");
    IntMatrix gens;
    for (auto w : code.generator()) {
        std::vector<BigInt> row(n, 0);
        for (int i = 0; i < n; ++i) row[i] = (w >> i) & 1ULL;
        gens.push_back(row);
    }
    for (int i = 0; i < n; ++i) {
        std::vector<BigInt> row(n, 0);
        row[i] = 2;
        gens.push_back(row);
    }
    auto lat = make_lattice("construction_a", gens, 1);
    lat.structure = CodeStructure{code, false, 0};
    return lat;
}

LatticeDescription zn(int n) {
    if (n < 1) throw InvalidArgument("zn needs n >= 1");
    IntMatrix id(n, std::vector<BigInt>(n, 0));
    for (int i = 0; i < n; ++i) id[i][i] = 1;
    return make_lattice("zn(" + std::to_string(n) + ")", id, 0);
}

LatticeDescription e8() {
    auto lat = construction_a(hamming8());
    lat.name = "e8";
    return lat;
}

LatticeDescription l24() {
    auto lat = construction_a(golay24());
    lat.name = "l24";
    return lat;
}

LatticeDescription leech_candidate(int s) {
    if (s < 0) throw InvalidArgument("shift exponent must be nonnegative");
    std::string label = "shift (1,...,1)*2^(-" + std::to_string(s) + "/2)";
    if (s % 2 == 0)
        throw ValidationError(label + ": inner product with L24 vectors is sum(x)*2^(-" + std::to_string(s + 1) +
                              "/2), irrational, so the union is not an integral lattice");
    if (s > 3)
        throw ValidationError(label + ": shift is not in (1/sqrt 8)Z^24, union is not closed under addition");
    const int n = 24;
    BinaryCode g = golay24();
    int w = s == 3 ? 1 : 2;
    IntMatrix gens;
    for (auto word : g.generator()) {
        std::vector<BigInt> row(n, 0);
        for (int i = 0; i < n; ++i) row[i] = 2 * static_cast<int>((word >> i) & 1ULL);
        gens.push_back(row);
    }
    for (int i = 1; i < n; ++i) {
        std::vector<BigInt> row(n, 0);
        row[i] = 4;
        row[0] = -4;
        gens.push_back(row);
    }
    {
        std::vector<BigInt> row(n, 0);
        row[0] = 8;
        gens.push_back(row);
        std::vector<BigInt> odd(n, w);
        odd[0] += 4;
        gens.push_back(odd);
    }
    // Golay rows have weight 0 mod 4, so they lie in the even part.
    auto lat = make_lattice("leech", gens, 3);
    lat.structure = CodeStructure{g, true, s};
    for (auto& row : lat.gram)
        for (auto& v : row)
            if (!is_integer(v)) throw ValidationError(label + ": Gram matrix not integral");
    for (int i = 0; i < n; ++i)
        if (numerator(lat.gram[i][i]) % 2 != 0) throw ValidationError(label + ": lattice not even");
    if (gram_determinant(lat.gram) != 1) throw ValidationError(label + ": determinant is not 1 (not unimodular)");
    auto t = vectors_by_norm(lat, 4);
    if (t.count_at(2) != 0)
        throw ValidationError(label + ": lattice has " + t.count_at(2).str() + " vectors of squared length 2");
    if (t.count_at(4) != 196560)
        throw ValidationError(label + ": kissing number " + t.count_at(4).str() + " != 196560");
    return lat;
}

LatticeDescription leech() {
    static const LatticeDescription cached = [] {
        std::optional<LatticeDescription> accepted;
        nlohmann::json rejected = nlohmann::json::object();
        for (int s = 0; s <= 3; ++s) {
            try {
                auto cand = leech_candidate(s);
                if (accepted) throw ValidationError("more than one coset shift passes validation");
                accepted = std::move(cand);
            } catch (const ValidationError& e) {
                rejected[std::to_string(s)] = e.what();
            }
        }
        if (!accepted) throw ValidationError("no coset shift yields an even unimodular lattice with minimum 4");
        accepted->metadata["leech_shift_exponent"] = accepted->structure->shift_exponent;
        accepted->metadata["rejected_shifts"] = rejected;
        return *accepted;
    }();
    return cached;
}

LatticeDescription standard_lattice(const std::string& name) {
    if (name == "e8") return e8();
    if (name == "l24") return l24();
    if (name == "leech") return leech();
    std::string digits;
    if (name.rfind("zn(", 0) == 0 && name.back() == ')') digits = name.substr(3, name.size() - 4);
    else if (name.rfind("zn", 0) == 0) digits = name.substr(2);
    else if (name.rfind("z", 0) == 0) digits = name.substr(1);
    if (!digits.empty() && std::all_of(digits.begin(), digits.end(), ::isdigit)) {
        int n = std::stoi(digits);
        if (n < 1 || n > 64) throw InvalidArgument("zn dimension out of range");
        return zn(n);
    }
    throw InvalidArgument("unknown lattice '" + name + "' (expected zn(n), e8, l24, leech)");
}

// ---- invariants --------------------------------------------------------------

Rational gram_determinant(const RatMatrix& gram) {
    std::size_t n = gram.size();
    RatMatrix a = gram;
    Rational det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a[p][c] == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            std::swap(a[p], a[c]);
            det = -det;
        }
        det *= a[c][c];
        for (std::size_t r = c + 1; r < n; ++r) {
            if (a[r][c] == 0) continue;
            Rational f = a[r][c] / a[c][c];
            for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
        }
    }
    return det;
}

SymbolicVolume covolume(const LatticeDescription& lat) { return SymbolicVolume::sqrt_of(gram_determinant(lat.gram)); }

LatticeDescription dual_lattice(const LatticeDescription& lat) {
    int n = lat.dimension;
    RatMatrix ginv = rat_inverse(lat.gram);
    // dual basis = G^{-1} B, B = S 2^{-s/2}
    RatMatrix m(n, std::vector<Rational>(n));
    BigInt den = 1;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Rational acc = 0;
            for (int k = 0; k < n; ++k) acc += ginv[i][k] * Rational(lat.scaled_basis[k][j]);
            m[i][j] = acc;
            den = boost::multiprecision::lcm(den, denominator(acc));
        }
    unsigned k = 0;
    BigInt d = den;
    while (d % 2 == 0) {
        d /= 2;
        ++k;
    }
    if (d != 1) throw NumericalError("dual basis has a non-dyadic denominator; not representable with a scale exponent");
    IntMatrix basis(n, std::vector<BigInt>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) basis[i][j] = numerator(m[i][j] * Rational(den));
    auto dual = make_lattice("dual(" + lat.name + ")", basis, lat.scale_exponent + 2 * static_cast<int>(k));
    bool integral = true;
    for (auto& row : lat.gram)
        for (auto& v : row) integral = integral && is_integer(v);
    if (integral && gram_determinant(lat.gram) == 1) {
        dual.structure = lat.structure;  // L* = L as a set
        dual.metadata = lat.metadata;
    }
    return dual;
}

NormCountTable vectors_by_norm(const LatticeDescription& lat, const Rational& max_sq_norm, const EnumerationOptions& opt) {
    if (max_sq_norm < 0) throw InvalidArgument("negative norm cutoff");
    if (lat.dimension > 64) throw InvalidArgument("dimension too large");
    NormCountTable t = lat.structure ? structured_counts(*lat.structure, lat.dimension, max_sq_norm)
                                     : generic_counts(lat, max_sq_norm, opt.budget);
    if (t.count_at(0) != 1) throw NumericalError("enumeration lost the zero vector");
    return t;
}

SymbolicVolume ball_volume(int n, const Rational& sq_radius) {
    if (n < 1) throw InvalidArgument("ball_volume needs n >= 1");
    if (sq_radius < 0) throw InvalidArgument("negative squared radius");
    // r^n = sq_radius^{n/2}
    SymbolicVolume rn{rat_pow(sq_radius, n / 2), 1, 0};
    if (n % 2) rn = rn * SymbolicVolume::sqrt_of(sq_radius);
    // Gamma(n/2 + 1) by recurrence from Gamma(1) = 1 or Gamma(1/2) = sqrt(pi).
    SymbolicVolume gamma{1, 1, n % 2 ? 1 : 0};
    Rational x = n % 2 ? Rational(1, 2) : Rational(1);
    Rational target = Rational(n, 2) + 1;
    while (x < target) {
        gamma.coefficient *= x;
        x += 1;
    }
    SymbolicVolume pi_part{1, 1, n};
    return pi_part * rn / gamma;
}

LatticeProperties lattice_properties(const LatticeDescription& lat, const EnumerationOptions& opt) {
    LatticeProperties p;
    p.integral = true;
    for (auto& row : lat.gram)
        for (auto& v : row) p.integral = p.integral && is_integer(v);
    p.even = p.integral;
    if (p.integral)
        for (int i = 0; i < lat.dimension; ++i) p.even = p.even && numerator(lat.gram[i][i]) % 2 == 0;
    Rational det = gram_determinant(lat.gram);
    if (det == 1) {
        // L* = L iff the dual basis is an integral combination of the basis: G^{-1} integral.
        auto ginv = rat_inverse(lat.gram);
        p.unimodular = true;
        for (auto& row : ginv)
            for (auto& v : row) p.unimodular = p.unimodular && is_integer(v);
    }
    Rational cutoff = lat.gram[0][0];
    for (int i = 0; i < lat.dimension; ++i) cutoff = std::min(cutoff, lat.gram[i][i]);
    auto t = vectors_by_norm(lat, cutoff, opt);
    for (auto& [norm, count] : t.counts)
        if (norm > 0) {
            p.min_sq_norm = norm;
            p.kissing = count;
            break;
        }
    return p;
}

SymbolicVolume density(const LatticeDescription& lat) {
    auto p = lattice_properties(lat);
    return ball_volume(lat.dimension, p.min_sq_norm / 4) / covolume(lat);
}

// ---- JSON ----------------------------------------------------------------------

nlohmann::json to_json(const LatticeDescription& lat) {
    nlohmann::json basis = nlohmann::json::array(), gram = nlohmann::json::array();
    for (auto& row : lat.scaled_basis) {
        nlohmann::json r = nlohmann::json::array();
        for (auto& v : row) r.push_back(v.convert_to<long long>());
        basis.push_back(r);
    }
    for (auto& row : lat.gram) {
        nlohmann::json r = nlohmann::json::array();
        for (auto& v : row) r.push_back(to_string(v));
        gram.push_back(r);
    }
    nlohmann::json j{{"name", lat.name},
                     {"dimension", lat.dimension},
                     {"scale_exponent", lat.scale_exponent},
                     {"scaled_basis", basis},
                     {"gram", gram}};
    if (lat.structure) {
        j["structure"] = {{"code", to_json(lat.structure->code)},
                          {"leech_twist", lat.structure->leech_twist},
                          {"shift_exponent", lat.structure->shift_exponent}};
    }
    if (!lat.metadata.empty()) j["metadata"] = lat.metadata;
    return j;
}

LatticeDescription lattice_from_json(const nlohmann::json& j) {
    IntMatrix basis;
    for (auto& row : j.at("scaled_basis")) {
        std::vector<BigInt> r;
        for (auto& v : row) r.emplace_back(v.get<long long>());
        basis.push_back(r);
    }
    auto lat = make_lattice(j.value("name", std::string("lattice")), basis, j.at("scale_exponent").get<int>());
    if (static_cast<int>(basis.size()) != j.at("dimension").get<int>()) throw InvalidArgument("dimension mismatch");
    if (j.contains("gram")) {
        // Validate the stored Gram of the given basis (before reduction).
        RatMatrix g = gram_of(basis, j.at("scale_exponent").get<int>());
        for (std::size_t a = 0; a < g.size(); ++a)
            for (std::size_t b = 0; b < g.size(); ++b)
                if (parse_rational(j.at("gram")[a][b].get<std::string>()) != g[a][b])
                    throw InvalidArgument("stored gram disagrees with scaled_basis");
    }
    if (j.contains("structure")) {
        auto& s = j.at("structure");
        lat.structure = CodeStructure{code_from_json(s.at("code")), s.at("leech_twist").get<bool>(),
                                      s.at("shift_exponent").get<int>()};
    }
    if (j.contains("metadata")) lat.metadata = j.at("metadata");
    return lat;
}

} // namespace spherepack
