#include "spherepack/certify.hpp"

#include <boost/integer/common_factor.hpp>

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

namespace spherepack {

// ---- intervals ---------------------------------------------------------------------

RationalInterval::RationalInterval(Rational l, Rational h) : lo(std::move(l)), hi(std::move(h)) {
    if (lo > hi) throw InvalidArgument("interval with lo > hi");
}

std::string RationalInterval::str() const { return "[" + to_string(lo) + ", " + to_string(hi) + "]"; }

RationalInterval operator+(const RationalInterval& a, const RationalInterval& b) { return {a.lo + b.lo, a.hi + b.hi}; }

RationalInterval operator-(const RationalInterval& a, const RationalInterval& b) { return {a.lo - b.hi, a.hi - b.lo}; }

RationalInterval operator*(const RationalInterval& a, const RationalInterval& b) {
    Rational c[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
    return {*std::min_element(c, c + 4), *std::max_element(c, c + 4)};
}

RationalInterval pow(const RationalInterval& a, unsigned e) {
    RationalInterval r = RationalInterval::point(1);
    for (unsigned i = 0; i < e; ++i) r = r * a;
    if (e % 2 == 0 && a.contains(Rational(0))) r.lo = 0;
    return r;
}

namespace {

// Enclosure of exp(x) for rational x >= 0.
RationalInterval exp_nonneg(const Rational& x, unsigned bits) {
    unsigned s = 0;
    Rational y = x;
    while (y > Rational(1, 2)) {
        y /= 2;
        ++s;
    }
    Rational eps = Rational(1, BigInt(1) << (bits + 16));
    Rational sum = 1, term = 1;
    for (int k = 1; k < 10000; ++k) {
        term = term * y / k;
        sum += term;
        if (term < eps) break;
    }
    // remainder <= 2 * next term for y <= 1/2
    RationalInterval r{round_down(sum, bits + 16), round_up(sum + 2 * term * y, bits + 16)};
    for (unsigned i = 0; i < s; ++i) r = {round_down(r.lo * r.lo, bits + 16), round_up(r.hi * r.hi, bits + 16)};
    return {round_down(r.lo, bits), round_up(r.hi, bits)};
}

RationalInterval exp_point(const Rational& x, unsigned bits) {
    if (x >= 0) return exp_nonneg(x, bits);
    auto e = exp_nonneg(-x, bits);
    return {round_down(1 / e.hi, bits), round_up(1 / e.lo, bits)};
}

} // namespace

RationalInterval exp(const RationalInterval& a, unsigned bits) {
    return {exp_point(a.lo, bits).lo, exp_point(a.hi, bits).hi};
}

RationalInterval pi_interval() { return {pi_lower(), pi_upper()}; }

RationalInterval nth_root(const RationalInterval& a, unsigned m, unsigned bits) {
    if (a.lo < 0) throw InvalidArgument("root of a negative interval");
    if (m == 0) throw InvalidArgument("zeroth root");
    if (m == 1) return a;
    PrecisionGuard g(bits / 3 + 20);
    Rational step(1, BigInt(1) << bits);
    auto root = [&](const Rational& q, bool up) {
        if (q == 0) return Rational(0);
        Real r = pow(to_real(q), Real(1) / m);
        Rational c = up ? round_up(exact_rational(r), bits) : round_down(exact_rational(r), bits);
        if (up)
            while (rat_pow(c, m) < q) c += step;
        else
            while (c > 0 && rat_pow(c, m) > q) c -= step;
        return c < 0 ? Rational(0) : c;
    };
    return {root(a.lo, false), root(a.hi, true)};
}

// ---- polynomials -------------------------------------------------------------------

void trim(RatPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

int degree(const RatPoly& p) {
    RatPoly q = p;
    trim(q);
    return static_cast<int>(q.size()) - 1;
}

Rational eval(const RatPoly& p, const Rational& x) {
    Rational v = 0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) v = v * x + *it;
    return v;
}

RationalInterval eval(const RatPoly& p, const RationalInterval& x) {
    RationalInterval v = RationalInterval::point(0);
    for (auto it = p.rbegin(); it != p.rend(); ++it) v = v * x + RationalInterval::point(*it);
    return v;
}

RatPoly derivative(const RatPoly& p) {
    RatPoly d;
    for (std::size_t k = 1; k < p.size(); ++k) d.push_back(p[k] * static_cast<long>(k));
    trim(d);
    return d;
}

RatPoly remainder(const RatPoly& a, const RatPoly& b) {
    RatPoly r = a, d = b;
    trim(r);
    trim(d);
    if (d.empty()) throw InvalidArgument("division by the zero polynomial");
    while (r.size() >= d.size()) {
        Rational f = r.back() / d.back();
        std::size_t shift = r.size() - d.size();
        for (std::size_t k = 0; k < d.size(); ++k) r[k + shift] -= f * d[k];
        r.pop_back();
        trim(r);
    }
    return r;
}

namespace {

// Scale to a primitive integer polynomial with positive leading coefficient sign kept.
void normalize_content(RatPoly& p) {
    trim(p);
    if (p.empty()) return;
    BigInt l = 1, gnum = 0;
    for (auto& c : p) l = boost::integer::lcm(l, denominator(c));
    for (auto& c : p) gnum = boost::integer::gcd(gnum, BigInt(abs(numerator(c) * (l / denominator(c)))));
    Rational s = Rational(l) / Rational(gnum);
    for (auto& c : p) c *= s;
}

RatPoly divide_linear(const RatPoly& p, const Rational& root) {
    // synthetic division by (x - root), exact since root is a root
    RatPoly q(p.size() - 1);
    Rational carry = 0;
    for (std::size_t k = p.size() - 1; k >= 1; --k) {
        carry = p[k] + carry * root;
        q[k - 1] = carry;
    }
    return q;
}

int sign_variations(const std::vector<RatPoly>& chain, const Rational& x) {
    int v = 0, last = 0;
    for (auto& p : chain) {
        Rational y = eval(p, x);
        int s = y > 0 ? 1 : (y < 0 ? -1 : 0);
        if (s == 0) continue;
        if (last != 0 && s != last) ++v;
        last = s;
    }
    return v;
}

} // namespace

std::vector<RatPoly> sturm_chain(const RatPoly& p) {
    RatPoly p0 = p;
    normalize_content(p0);
    if (p0.empty()) throw InvalidArgument("Sturm chain of the zero polynomial");
    std::vector<RatPoly> chain{p0};
    RatPoly p1 = derivative(p0);
    normalize_content(p1);
    while (!p1.empty()) {
        chain.push_back(p1);
        RatPoly r = remainder(chain[chain.size() - 2], p1);
        for (auto& c : r) c = -c;
        normalize_content(r);  // positive scaling keeps the signs
        p1 = r;
    }
    return chain;
}

int sturm_count(const RatPoly& poly, const RationalInterval& interval) {
    RatPoly p = poly;
    trim(p);
    if (p.empty()) throw InvalidArgument("sturm_count of the zero polynomial");
    if (interval.lo == interval.hi) return 0;
    for (const Rational& e : {interval.lo, interval.hi})
        while (p.size() > 1 && eval(p, e) == 0) p = divide_linear(p, e);
    if (p.size() <= 1) return 0;
    auto chain = sturm_chain(p);
    return sign_variations(chain, interval.lo) - sign_variations(chain, interval.hi);
}

// ---- q-series positivity ------------------------------------------------------------

Certificate certify_positive_tail(const QSeries& series, const RationalInterval& q, const PositivityOptions& opt) {
    if (series.is_zero()) throw InvalidArgument("zero series");
    if (opt.head_terms < 1) throw InvalidArgument("need at least one head term");
    if (q.lo < 0) throw InvalidArgument("q interval must be nonnegative");
    if (series.is_exact() ? q.hi > 1 : q.hi >= 1) throw InvalidArgument("q interval must lie inside [0, 1)");
    if (q.hi == 0) throw InvalidArgument("empty q interval");

    Certificate cert;
    cert.claim = "series > 0 for q in " + q.str() + (q.lo == 0 ? " (q = 0 excluded)" : "");
    int e0 = series.min_exp();
    int g = 0;
    for (auto& [e, c] : series.terms()) g = std::gcd(g, e - e0);
    int gp = std::gcd(g, 8);
    if (gp == 0) gp = 8;
    unsigned m = static_cast<unsigned>(8 / gp);  // y = q^{1/m}
    RationalInterval y = nth_root(q, m);

    // dense coefficients in y, with q^{e0/8} > 0 factored out
    std::vector<Rational> d;
    for (auto& [e, c] : series.terms()) {
        std::size_t j = static_cast<std::size_t>((e - e0) / gp);
        if (d.size() <= j) d.resize(j + 1);
        d[j] = c;
    }
    std::size_t K = std::min<std::size_t>(static_cast<std::size_t>(opt.head_terms), d.size());

    Rational tail_stored = 0;
    for (std::size_t j = K; j < d.size(); ++j)
        if (d[j] != 0) tail_stored += abs(d[j]) * rat_pow(y.hi, static_cast<unsigned>(j));

    Rational tail_env = 0;
    if (!series.is_exact()) {
        CoefficientEnvelope env = opt.envelope ? *opt.envelope : fit_envelope(series);
        check_envelope(series, env);
        PrecisionGuard guard(60);
        // coefficients of exponents >= trunc, in units x = q^{1/8}; q^{e0/8} factored out
        Real x = to_real(nth_root(q, 8).hi);
        int j0 = series.trunc() - e0;
        Real j(j0);
        Real ratio = pow((j + 2) / (j + 1), env.p) * exp(env.a * (sqrt(j + 1) - sqrt(j))) * x;
        if (ratio >= 1) throw NumericalError("coefficient envelope does not converge on this interval");
        Real first = env.C * pow(j + 1, env.p) * exp(env.a * sqrt(j)) * pow(x, j0);
        Real bound = first / (1 - ratio) * (1 + Real("1e-30"));
        tail_env = exact_rational(bound);
        std::ostringstream s;
        s << "|c_e| <= C (1+j)^p exp(a sqrt j) with C = " << to_string(env.C, 6) << ", p = " << to_string(env.p, 3)
          << ", a = " << to_string(env.a, 6) << " (fitted to and checked on stored coefficients)";
        cert.add("coefficient envelope beyond the truncation", "numerical", s.str(), true);
    }
    Rational T = tail_stored + tail_env;
    cert.details["head_terms"] = K;
    cert.details["variable"] = m == 1 ? "q" : "q^(1/" + std::to_string(m) + ")";
    cert.details["tail_bound"] = to_string(to_real(T), 6);

    RatPoly Q(d.begin(), d.begin() + static_cast<long>(K));
    if (Q.empty()) Q.push_back(0);
    Q[0] -= T;
    Rational at_lo = eval(Q, y.lo), at_hi = eval(Q, y.hi);
    int roots = sturm_count(Q, y);
    bool ok = at_lo > 0 && at_hi > 0 && roots == 0;
    if (ok) {
        cert.add("head polynomial minus tail bound is positive on " + y.str(), "exact",
                 "Sturm count 0, value at left endpoint " + to_string(to_real(at_lo), 6), true);
        cert.finalize();
        return cert;
    }
    // Look for a point where even the full stored sum plus its envelope is negative.
    for (int k = 0; k <= 16; ++k) {
        Rational qk = q.lo + q.width() * Rational(k, 16);
        if (qk == 0) continue;
        RationalInterval yk = nth_root(RationalInterval::point(qk), m);
        RationalInterval v = eval(RatPoly(d.begin(), d.end()), yk);
        if (v.hi + tail_env < 0) {
            cert.add("series is negative at q = " + to_string(qk), "exact",
                     "enclosure upper end " + to_string(to_real(v.hi + tail_env), 6), false);
            cert.finalize();
            return cert;
        }
    }
    cert.add("head polynomial minus tail bound is positive on " + y.str(), "exact",
             "inconclusive: " + std::to_string(roots) + " roots of p - T; more head terms may help", false);
    cert.status = Status::inconclusive;
    return cert;
}

// ---- Poisson summation ------------------------------------------------------------

namespace {

// Bound on sum_{|x|^2 > Y} w exp(-rate |x|^2) using N(<= s) <= (2 sqrt(s/mu) + 1)^n.
Real gaussian_tail(int n, const Real& mu, const Real& rate, const Real& weight, const Real& Y) {
    // sum_{s_i > Y} e^{-rate s_i} <= int_Y^inf N(s) rate e^{-rate s} ds
    auto f = [&](const Real& s) -> IntegrandValue {
        Real N = pow(2 * sqrt(s / mu) + 1, n);
        return {N * rate * exp(-rate * s), Real(0)};
    };
    Real total = 0;
    Real a = Y, w = 1 / rate;
    AdaptiveOptions o;
    for (int k = 0; k < 400; ++k) {
        Real peak = f(a).value;
        o.target = peak * w * Real("1e-12") + Real("1e-200");
        Real piece = integrate(f, a, a + w, o).value;
        total += piece;
        a += w;
        if (piece < total * Real("1e-30")) break;
        w *= 2;
    }
    return weight * total;
}

} // namespace

PoissonResult poisson_check(const LatticeDescription& lat, const Rational& sigma, const Rational& cutoff,
                            const EnumerationOptions& opt) {
    if (sigma <= 0) throw InvalidArgument("sigma must be positive");
    if (cutoff <= 0) throw InvalidArgument("cutoff must be positive");
    PrecisionGuard g(50);
    Real pi = pi_real();
    int n = lat.dimension;
    Real s2 = to_real(sigma * sigma);
    LatticeDescription dual = dual_lattice(lat);
    Real covol = covolume(lat).value();
    auto direct_counts = vectors_by_norm(lat, cutoff, opt);
    auto dual_counts = vectors_by_norm(dual, cutoff, opt);
    PoissonResult r;
    r.direct = 0;
    for (auto& [norm, c] : direct_counts.counts) r.direct += to_real(c) * exp(-pi * to_real(norm) / s2);
    Real ds = 0;
    for (auto& [norm, c] : dual_counts.counts) ds += to_real(c) * exp(-pi * s2 * to_real(norm));
    Real sn = pow(to_real(sigma), n);
    r.dual = sn * ds / covol;
    Real mu = to_real(lattice_properties(lat, opt).min_sq_norm);
    Real mu_dual = to_real(lattice_properties(dual, opt).min_sq_norm);
    Real Y = to_real(cutoff);
    Real t1 = gaussian_tail(n, mu, pi / s2, Real(1), Y);
    Real t2 = gaussian_tail(n, mu_dual, pi * s2, sn / covol, Y);
    if (t1 > 1 || t2 > 1) throw NumericalError("cutoff too small for the Gaussian tail bound to close");
    // both true tails are nonnegative and below their bounds
    r.tail_bound = std::max(t1, t2);
    r.residual = abs(r.direct - r.dual) + r.tail_bound;
    return r;
}

// ---- magic certificate --------------------------------------------------------------

std::pair<Rational, Rational> taylor_targets(int n) {
    if (n == 8) return {Rational(-27, 10), Rational(-3, 2)};
    if (n == 24) return {Rational(-14347, 5460), Rational(-205, 156)};
    throw InvalidArgument("no Taylor targets for this dimension");
}

namespace {

std::string sci(const Real& x) { return to_string(x, 4); }

// Largest value on [-1, 1] of the parabola through samples at -1, 0, 1.
double cell_max(double a, double b, double c) {
    // p(s) = b + (c - a)/2 s + (a - 2b + c)/2 s^2 for s in [-1, 1]
    double m = std::max(a, b);
    m = std::max(m, c);
    double curv = (a - 2 * b + c) / 2, slope = (c - a) / 2;
    if (curv < 0) {
        double s = -slope / (2 * curv);
        if (s > -1 && s < 1) m = std::max(m, b + slope * s + curv * s * s);
    }
    return m;
}

void kernel_argument_n8(const MagicFunction& m, Certificate& cert, int head_terms) {
    const PsiForms& psi = m.psi();
    int tr = psi.psi_plus.trunc();
    auto e2 = eisenstein(2, tr + 64), e4 = eisenstein(4, tr + 64), e6 = eisenstein(6, tr + 64);
    auto d = delta(tr + 64);
    QSeries sq = e4 * e2 - e6;
    bool plus_ok = (psi.psi_plus * d).truncated(tr) == (sq * sq).truncated(tr);
    cert.add("psi+ * Delta = (E4 E2 - E6)^2, so psi+(i/t) >= 0 (real forms, Delta > 0 by its product)", "exact",
             "identity checked through q^" + std::to_string(tr / 8), plus_ok);
    auto th01 = theta01(tr + 64), th10 = theta10(tr + 64);
    QSeries num = pow(th01, 12) * pow(th10, 8) * Rational(5) + pow(th01, 16) * pow(th10, 4) * Rational(5) +
                  pow(th01, 20) * Rational(2);
    bool minus_ok = (psi.psi_minus * d).truncated(tr) == num.truncated(tr);
    cert.add("psi- * Delta = 5 T01^12 T10^8 + 5 T01^16 T10^4 + 2 T01^20, so psi-(it) > 0", "exact",
             "identity checked through q^" + std::to_string(tr / 8), minus_ok);

    PositivityOptions po;
    int used = 0;
    Certificate tail;
    for (int k = 1; k <= head_terms; ++k) {
        po.head_terms = k;
        tail = certify_positive_tail(psi.psi_minus, RationalInterval(0, Rational(1, 500)), po);
        used = k;
        if (tail.status != Status::inconclusive) break;
    }
    // e^{-2 pi} < 1/500 places t >= 1 inside the interval
    bool inside = exp(RationalInterval(-2 * pi_upper(), -2 * pi_lower())).hi < Rational(1, 500);
    cert.add("psi-(it) > 0 for t >= 1 from the q-series on (0, 1/500]", "exact",
             "head terms " + std::to_string(used) + ", status " + to_string(tail.status) +
                 (inside ? "" : ", e^{-2pi} not below 1/500"),
             tail.status == Status::verified && inside);
    cert.details["psi_minus_positivity"] = tail.to_json();

    int op = m.pipeline(1).outer_sign, om = m.pipeline(-1).outer_sign;
    bool signs = m.alpha_real() * op < 0 && m.beta_real() * om < 0;
    cert.add("for r > r1 f(r) = sin^2(pi r^2/2) * int_0^inf [alpha F+ kernel + beta F- kernel] e^{-pi r^2 t} dt"
             " with both kernel coefficients negative, hence f <= 0 on [r1, inf)",
             "exact", "alpha factor " + sci(m.alpha_real() * op) + ", beta factor " + sci(m.beta_real() * om), signs);
}

} // namespace

Certificate certify_magic(const MagicFunction& m, const MagicCertifyOptions& opt) {
    PrecisionGuard guard(m.config().digits);
    const int n = m.n();
    Certificate cert;
    cert.claim = "magic function n=" + std::to_string(n) + " satisfies the linear programming bound conditions";
    Rational R = opt.radius ? *opt.radius : Rational(n == 8 ? 8 : 10);
    Real r1 = m.r1();
    auto dbl = [](const Real& x) { return x.convert_to<double>(); };

    // (i) normalization
    auto [f0, fh0] = m.eval_both(Real(0));
    Real e0 = abs(f0.value - 1), eh0 = abs(fh0.value - 1);
    cert.add("|f(0) - 1| <= tol", "numerical", sci(e0), e0 <= opt.tol);
    cert.add("|f_hat(0) - 1| <= tol", "numerical", sci(eh0), eh0 <= opt.tol);

    // (ii) sign checks: grid samples, and on each cell the parabola through its end and
    // midpoint values, bisected until it respects the slack
    Real h = to_real(opt.grid_step);
    int N = static_cast<int>((to_real(R) / h).convert_to<double>() + 0.5);
    if (N % 2) ++N;
    std::map<double, std::pair<double, double>> samples;
    auto sample = [&](const Real& r) -> const std::pair<double, double>& {
        double key = dbl(r);
        auto it = samples.find(key);
        if (it == samples.end()) {
            auto b = m.eval_both(r);
            it = samples.emplace(key, std::make_pair(dbl(b.first.value), dbl(b.second.value))).first;
        }
        return it->second;
    };
    double worst_f = -1e300, worst_fh = 1e300, at_f = 0, at_fh = 0;
    int refined = 0;
    // sign = +1 checks value <= slack, -1 checks value >= -slack
    std::function<void(const Real&, const Real&, int, int)> cell = [&](const Real& a, const Real& b, int which,
                                                                      int depth) {
        Real mid = (a + b) / 2;
        auto pick = [&](const Real& r) { return which == 0 ? sample(r).first : -sample(r).second; };
        double va = pick(a), vm = pick(mid), vb = pick(b);
        double c = cell_max(va, vm, vb);
        double sampled = std::max({va, vm, vb});
        // refine only while the samples themselves respect the slack
        if (c > opt.slack && sampled <= opt.slack && depth < 8 && refined < 4000) {
            ++refined;
            cell(a, mid, which, depth + 1);
            cell(mid, b, which, depth + 1);
            return;
        }
        double v = std::max(c, sampled);
        if (which == 0 && v > worst_f) worst_f = v, at_f = dbl(mid);
        if (which == 1 && -v < worst_fh) worst_fh = -v, at_fh = dbl(mid);
    };
    for (int k = 0; k < N; k += 2) {
        Real a = h * k, b = h * (k + 2);
        cell(a, b, 1, 0);
        if (b > r1) cell(a > r1 ? a : r1, b, 0, 0);
    }
    std::ostringstream gs;
    gs << "max f = " << worst_f << " near r = " << at_f << "; " << samples.size() << " samples, base step "
       << to_string(opt.grid_step) << ", " << refined << " cell refinements";
    cert.add("f <= slack on [r1, R]", "numerical", gs.str(), worst_f <= opt.slack);
    std::ostringstream hs;
    hs << "min f_hat = " << worst_fh << " near r = " << at_fh;
    cert.add("f_hat >= -slack on [0, R]", "numerical", hs.str(), worst_fh >= -opt.slack);

    // far tail: the leading small-t term fixes the sign beyond R
    for (Side side : {Side::f, Side::f_hat}) {
        bool ok = true;
        Real worst = -1;
        for (Rational scale : {Rational(1), Rational(3, 2), Rational(2), Rational(4)}) {
            auto ts = m.tail_split(side, to_real(R * scale));
            bool sign_ok = side == Side::f ? ts.leading < 0 : ts.leading > 0;
            Real ratio = ts.rest_bound == 0 ? Real(1e300) : Real(abs(ts.leading) / ts.rest_bound);
            if (worst < 0 || ratio < worst) worst = ratio;
            ok = ok && sign_ok && ratio >= opt.tail_margin;
        }
        cert.add(std::string(side == Side::f ? "f" : "f_hat") +
                     " has the sign of its leading small-t term for r > R (checked at R, 3R/2, 2R, 4R;"
                     " remaining terms decay faster)",
                 "numerical", "min dominance ratio " + sci(worst), ok);
    }
    if (n == 8) kernel_argument_n8(m, cert, opt.head_terms);

    // (iii) roots and derivatives at the first four vector lengths
    Rational r1sq = m.r1_squared();
    for (int k = 0; k < 4; ++k) {
        Real r = sqrt(to_real(r1sq + 2 * k));
        auto b = m.eval_both(r);
        std::string at = "r^2 = " + to_string(Rational(r1sq + 2 * k));
        cert.add("f and f_hat vanish at " + at, "numerical", sci(abs(b.first.value)) + ", " + sci(abs(b.second.value)),
                 abs(b.first.value) <= opt.root_tol && abs(b.second.value) <= opt.root_tol);
        auto dh = derivative(m, Side::f_hat, r);
        cert.add("f_hat has a double root at " + at, "numerical", "f_hat' = " + sci(dh.value),
                 abs(dh.value) <= opt.root_tol);
        auto df = derivative(m, Side::f, r);
        if (k == 0)
            cert.add("f has a simple sign-changing root at r1", "numerical",
                     "f' = " + sci(df.value) + " +- " + sci(df.error), df.value < 0 && abs(df.value) > 10 * df.error);
        else
            cert.add("f has a double root at " + at, "numerical", "f' = " + sci(df.value), abs(df.value) <= opt.root_tol);
    }

    // (iv) Taylor coefficients
    auto [tf, tfh] = taylor_targets(n);
    auto cf = taylor_quadratic(m, Side::f), cfh = taylor_quadratic(m, Side::f_hat);
    Real df = abs(cf.value - to_real(tf)), dfh = abs(cfh.value - to_real(tfh));
    cert.add("r^2 coefficient of f is " + to_string(tf), "numerical", sci(cf.value) + ", error " + sci(df),
             df <= opt.tol);
    cert.add("r^2 coefficient of f_hat is " + to_string(tfh), "numerical", sci(cfh.value) + ", error " + sci(dfh),
             dfh <= opt.tol);

    auto bound = cohn_elkies_bound(n, f0, r1sq);
    cert.details["bound"] = to_string(bound.value, 20);
    cert.details["bound_symbolic"] = ball_volume(n, r1sq / 4).str();
    cert.details["radius"] = to_string(R);
    cert.details["samples"] = samples.size();
    cert.details["soundness"] =
        "if every step holds then f_hat >= 0 everywhere, f <= 0 for |x| >= r1 and f(0) = f_hat(0) = 1, so the "
        "density of any packing in dimension n is at most f(0) vol(B(r1/2)) = " +
        ball_volume(n, r1sq / 4).str();
    cert.finalize();
    return cert;
}

Certificate certify_magic(int n, const MagicConfig& cfg, const MagicCertifyOptions& opt) {
    MagicConfig c = cfg;
    c.n = n;
    MagicFunction m(c);
    return certify_magic(m, opt);
}

} // namespace spherepack
