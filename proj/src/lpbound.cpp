#include "spherepack/lpbound.hpp"

#include "spherepack/certify.hpp"
#include "spherepack/lattices.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <complex>
#include <iomanip>
#include <sstream>

namespace spherepack {

// ---- Laguerre ansatz ----------------------------------------------------------------

Real laguerre(int k, const Rational& alpha, const Real& x) {
    if (k < 0) throw InvalidArgument("Laguerre degree must be nonnegative");
    Real al = to_real(alpha);
    Real prev = 1;
    if (k == 0) return prev;
    Real cur = 1 + al - x;
    for (int j = 1; j < k; ++j) {
        Real next = ((2 * j + 1 + al - x) * cur - (j + al) * prev) / (j + 1);
        prev = cur;
        cur = next;
    }
    return cur;
}

Rational laguerre(int k, const Rational& alpha, const Rational& x) {
    if (k < 0) throw InvalidArgument("Laguerre degree must be nonnegative");
    Rational prev = 1;
    if (k == 0) return prev;
    Rational cur = 1 + alpha - x;
    for (int j = 1; j < k; ++j) {
        Rational next = ((2 * j + 1 + alpha - x) * cur - (j + alpha) * prev) / (j + 1);
        prev = cur;
        cur = next;
    }
    return cur;
}

std::vector<Rational> laguerre_coefficients(int k, const Rational& alpha) {
    if (k < 0) throw InvalidArgument("Laguerre degree must be nonnegative");
    // L_k(y) = sum_j (-1)^j C(k + alpha, k - j) y^j / j!
    std::vector<Rational> c(static_cast<std::size_t>(k + 1));
    for (int j = 0; j <= k; ++j) {
        Rational b = binomial_rational(alpha + k, k - j);
        Rational v = b / Rational(factorial(static_cast<unsigned>(j)));
        c[static_cast<std::size_t>(j)] = j % 2 ? Rational(-v) : v;
    }
    return c;
}

namespace {

Rational nu_of(int n) { return Rational(n, 2) - 1; }

// ell_k(s) for k = 1..d.
std::vector<Real> ell_all(int n, int d, const Real& s, int alpha_shift = 0) {
    Real al = to_real(nu_of(n) + alpha_shift);
    Real pi = pi_real();
    Real y = pi * s;
    std::vector<Real> out(static_cast<std::size_t>(d));
    Real prev = 1, cur = 1 + al - y;
    Real scale = 1 / pi;  // k! pi^{-k} at k = 1
    for (int k = 1; k <= d; ++k) {
        if (k > 1) {
            Real next = ((2 * k - 1 + al - y) * cur - (k - 1 + al) * prev) / k;
            prev = cur;
            cur = next;
            scale *= Real(k) / pi;
        }
        out[static_cast<std::size_t>(k - 1)] = scale * cur;
    }
    return out;
}

// d/ds ell_k(s) = -k! pi^{1-k} L_{k-1}^{nu+1}(pi s)
std::vector<Real> ell_derivative_all(int n, int d, const Real& s) {
    Real pi = pi_real();
    std::vector<Real> out(static_cast<std::size_t>(d));
    if (d == 0) return out;
    out[0] = -1;
    if (d == 1) return out;
    auto lower = ell_all(n, d - 1, s, 1);  // (k-1)! pi^{1-k} L_{k-1}^{nu+1}
    for (int k = 2; k <= d; ++k) out[static_cast<std::size_t>(k - 1)] = -Real(k) * lower[static_cast<std::size_t>(k - 2)];
    return out;
}

Real dot(const std::vector<Real>& a, const std::vector<Real>& b) {
    Real s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// Power-basis coefficients of p(s) = 1 + sum a_k ell_k(s).
std::vector<Real> power_coefficients(const LaguerreAnsatz& f) {
    Real pi = pi_real();
    std::vector<Real> p(static_cast<std::size_t>(f.d() + 1), Real(0));
    p[0] = 1;
    for (int k = 1; k <= f.d(); ++k) {
        if (f.a[static_cast<std::size_t>(k - 1)] == 0) continue;
        auto lc = laguerre_coefficients(k, nu_of(f.n));
        Real kf = to_real(factorial(static_cast<unsigned>(k)));
        for (int j = 0; j <= k; ++j)
            p[static_cast<std::size_t>(j)] += f.a[static_cast<std::size_t>(k - 1)] * kf * pow(pi, j - k) *
                                              to_real(lc[static_cast<std::size_t>(j)]);
    }
    return p;
}

Real horner(const std::vector<Real>& p, const Real& x) {
    Real v = 0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) v = v * x + *it;
    return v;
}

// Fujiwara's bound: every root of p has modulus below the returned value.
Real root_bound(const std::vector<Real>& p) {
    std::size_t D = p.size();
    while (D > 0 && p[D - 1] == 0) --D;
    if (D <= 1) return Real(0);
    Real best = 0;
    for (std::size_t j = 0; j + 1 < D; ++j) {
        if (p[j] == 0) continue;
        Real q = abs(p[j] / p[D - 1]);
        std::size_t e = D - 1 - j;
        if (j == 0) q /= 2;
        best = std::max(best, Real(pow(q, Real(1) / e)));
    }
    return 2 * best;
}

int leading_sign(const std::vector<Real>& p) {
    for (auto it = p.rbegin(); it != p.rend(); ++it)
        if (*it != 0) return *it > 0 ? 1 : -1;
    return 0;
}

// p keeps the sign of its leading term on [x0, inf): checked exactly by a Sturm count
// of the rational rounding of p between x0 and a root bound.
bool tail_sign_ok(const std::vector<Real>& p, const Real& x0, int want) {
    if (leading_sign(p) != want) return false;
    RatPoly q;
    for (auto& v : p) q.push_back(exact_rational(v));
    trim(q);
    if (degree(q) <= 0) return true;
    Rational lo = exact_rational(x0);
    if (want * eval(q, lo) <= 0) return false;
    Real B = root_bound(p);
    if (B <= x0) return true;
    Rational hi = exact_rational(B) + 1;
    return sturm_count(q, RationalInterval(lo, hi)) == 0;
}

} // namespace

Real ell(int n, int k, const Real& s) {
    if (k < 1) throw InvalidArgument("ell_k needs k >= 1");
    return ell_all(n, k, s).back();
}

Real ell_derivative(int n, int k, const Real& s) {
    if (k < 1) throw InvalidArgument("ell_k needs k >= 1");
    return ell_derivative_all(n, k, s).back();
}

Real ansatz_eval(Side side, const LaguerreAnsatz& f, const Real& r) {
    if (r < 0) throw InvalidArgument("radius must be nonnegative");
    Real s = r * r;
    Real g = exp(-pi_real() * s);
    if (side == Side::f) return (1 + dot(f.a, ell_all(f.n, f.d(), s))) * g;
    Real v = 1, t = 1;
    for (auto& ak : f.a) {
        t *= s;
        v += ak * t;
    }
    return v * g;
}

Real ansatz_at_zero(const LaguerreAnsatz& f) { return 1 + dot(f.a, ell_all(f.n, f.d(), Real(0))); }

Real ansatz_bound(const LaguerreAnsatz& f, const Real& r1) {
    // vol(B_n(r1/2)) = vol(B_n(1)) (r1/2)^n
    Real unit = ball_volume(f.n, 1).value();
    return ansatz_at_zero(f) * unit * pow(r1 / 2, f.n);
}

unsigned lp_digits(int d) { return static_cast<unsigned>(std::max(60, 3 * d + 30)); }

SignReport sign_check(const LaguerreAnsatz& f, const Real& r1, const SignCheckOptions& opt) {
    SignReport rep;
    Real pi = pi_real();
    Real rmax = to_real(opt.r_max);
    if (rmax <= r1) throw InvalidArgument("sign check range is empty");
    auto p = power_coefficients(f);
    std::vector<Real> ph(static_cast<std::size_t>(f.d() + 1));
    ph[0] = 1;
    for (int k = 1; k <= f.d(); ++k) ph[static_cast<std::size_t>(k)] = f.a[static_cast<std::size_t>(k - 1)];
    Real f0 = ansatz_at_zero(f);
    Real slack = Real(opt.slack) * abs(f0);
    rep.max_f = -1;
    rep.min_fhat = 1;
    rep.points = opt.points;
    for (int i = 0; i < opt.points; ++i) {
        Real r = r1 + (rmax - r1) * i / (opt.points - 1);
        Real s = r * r;
        Real v = horner(p, s) * exp(-pi * s);
        if (i == 0 || v > rep.max_f) rep.max_f = v, rep.at_f = r;
        Real u = rmax * i / (opt.points - 1);
        Real w = horner(ph, u * u) * exp(-pi * u * u);
        if (i == 0 || w < rep.min_fhat) rep.min_fhat = w, rep.at_fhat = u;
    }
    Real rmax2 = rmax * rmax;
    rep.tail_ok = tail_sign_ok(p, rmax2, -1) && tail_sign_ok(ph, rmax2, 1);
    rep.ok = rep.max_f <= slack && rep.min_fhat >= -slack && rep.tail_ok;
    return rep;
}

// ---- simplex ---------------------------------------------------------------------------

namespace {

// Tableau rows 0..m-1 are constraints, row m is the objective (reduced costs), the last
// column is the right-hand side. Only columns below `enterable` may enter the basis.
template <class T>
struct Tableau {
    std::vector<std::vector<T>> t;
    std::vector<std::size_t> basis;
    std::size_t enterable = 0;
};

template <class T>
void pivot(Tableau<T>& tab, std::size_t leave, std::size_t enter) {
    auto& t = tab.t;
    T piv = t[leave][enter];
    for (auto& v : t[leave]) v /= piv;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (i == leave || t[i][enter] == 0) continue;
        T f = t[i][enter];
        for (std::size_t j = 0; j < t[i].size(); ++j)
            if (t[leave][j] != 0) t[i][j] -= f * t[leave][j];
    }
    tab.basis[leave] = enter;
}

template <class T>
void optimize(Tableau<T>& tab, const T& eps, int max_iterations, LpSolution<T>& sol) {
    auto& t = tab.t;
    const std::size_t m = tab.basis.size(), rhs = t[0].size() - 1;
    int stalled = 0;
    for (;;) {
        if (sol.iterations >= max_iterations) throw NumericalError("simplex iteration budget exhausted");
        std::size_t enter = rhs;
        if (sol.bland) {
            for (std::size_t j = 0; j < tab.enterable; ++j)
                if (t[m][j] < -eps) {
                    enter = j;
                    break;
                }
        } else {
            T best = -eps;
            for (std::size_t j = 0; j < tab.enterable; ++j)
                if (t[m][j] < best) {
                    best = t[m][j];
                    enter = j;
                }
        }
        if (enter == rhs) return;
        std::size_t leave = m;
        T best_ratio = 0;
        for (std::size_t i = 0; i < m; ++i) {
            if (t[i][enter] <= eps) continue;
            T ratio = t[i][rhs] / t[i][enter];
            if (leave == m || ratio < best_ratio || (ratio == best_ratio && tab.basis[i] < tab.basis[leave])) {
                leave = i;
                best_ratio = ratio;
            }
        }
        if (leave == m) throw NumericalError("linear program is unbounded");
        if (best_ratio <= eps) {
            if (++stalled > 50) sol.bland = true;
        } else {
            stalled = 0;
        }
        pivot(tab, leave, enter);
        ++sol.iterations;
    }
}

template <class T>
void check_shape(const std::vector<std::vector<T>>& A, const std::vector<T>& b, const std::vector<T>& c) {
    for (auto& row : A)
        if (row.size() != c.size()) throw InvalidArgument("constraint row has the wrong length");
    if (b.size() != A.size()) throw InvalidArgument("right-hand side has the wrong length");
}

} // namespace

template <class T>
LpSolution<T> simplex_max(const std::vector<std::vector<T>>& A, const std::vector<T>& b, const std::vector<T>& c,
                          const T& eps, int max_iterations) {
    check_shape(A, b, c);
    for (auto& v : b)
        if (v < 0) throw InvalidArgument("simplex needs b >= 0");
    const std::size_t m = A.size(), nv = c.size(), rhs = nv + m;
    Tableau<T> tab;
    tab.t.assign(m + 1, std::vector<T>(rhs + 1, T(0)));
    tab.basis.resize(m);
    tab.enterable = rhs;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < nv; ++j) tab.t[i][j] = A[i][j];
        tab.t[i][nv + i] = 1;
        tab.t[i][rhs] = b[i];
        tab.basis[i] = nv + i;
    }
    for (std::size_t j = 0; j < nv; ++j) tab.t[m][j] = -c[j];
    LpSolution<T> sol;
    optimize(tab, eps, max_iterations, sol);
    sol.x.assign(nv, T(0));
    for (std::size_t i = 0; i < m; ++i)
        if (tab.basis[i] < nv) sol.x[tab.basis[i]] = tab.t[i][rhs];
    sol.duals.resize(m);
    for (std::size_t i = 0; i < m; ++i) sol.duals[i] = tab.t[m][nv + i];
    sol.objective = tab.t[m][rhs];
    return sol;
}

template <class T>
LpSolution<T> simplex_max_eq(const std::vector<std::vector<T>>& A, const std::vector<T>& b, const std::vector<T>& c,
                             const T& eps, int max_iterations) {
    check_shape(A, b, c);
    const std::size_t m = A.size(), nv = c.size(), rhs = nv + m;
    Tableau<T> tab;
    tab.t.assign(m + 1, std::vector<T>(rhs + 1, T(0)));
    tab.basis.resize(m);
    std::vector<bool> flipped(m, false);
    for (std::size_t i = 0; i < m; ++i) {
        flipped[i] = b[i] < 0;
        for (std::size_t j = 0; j < nv; ++j) tab.t[i][j] = flipped[i] ? T(-A[i][j]) : A[i][j];
        tab.t[i][nv + i] = 1;  // artificial
        tab.t[i][rhs] = flipped[i] ? T(-b[i]) : b[i];
        tab.basis[i] = nv + i;
    }
    // phase 1: maximize minus the sum of the artificials
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < nv; ++j) tab.t[m][j] -= tab.t[i][j];
    for (std::size_t i = 0; i < m; ++i) tab.t[m][rhs] -= tab.t[i][rhs];
    tab.enterable = nv;
    LpSolution<T> sol;
    optimize(tab, eps, max_iterations, sol);
    if (-tab.t[m][rhs] > eps * static_cast<int>(m + 1)) throw NumericalError("linear program is infeasible");
    for (std::size_t i = 0; i < m; ++i) {
        if (tab.basis[i] < nv) continue;
        std::size_t j = 0;
        while (j < nv && abs(tab.t[i][j]) <= eps) ++j;
        if (j < nv) pivot(tab, i, j);  // otherwise the row is redundant
    }
    // phase 2
    std::fill(tab.t[m].begin(), tab.t[m].end(), T(0));
    for (std::size_t j = 0; j < nv; ++j) tab.t[m][j] = -c[j];
    for (std::size_t i = 0; i < m; ++i) {
        std::size_t j = tab.basis[i];
        if (j >= nv || c[j] == 0) continue;
        T cj = c[j];
        for (std::size_t k = 0; k <= rhs; ++k) tab.t[m][k] += cj * tab.t[i][k];
    }
    optimize(tab, eps, max_iterations, sol);
    sol.x.assign(nv, T(0));
    for (std::size_t i = 0; i < m; ++i)
        if (tab.basis[i] < nv) sol.x[tab.basis[i]] = tab.t[i][rhs];
    sol.duals.resize(m);
    for (std::size_t i = 0; i < m; ++i) sol.duals[i] = flipped[i] ? T(-tab.t[m][nv + i]) : tab.t[m][nv + i];
    sol.objective = tab.t[m][rhs];
    return sol;
}

template LpSolution<Real> simplex_max<Real>(const std::vector<std::vector<Real>>&, const std::vector<Real>&,
                                            const std::vector<Real>&, const Real&, int);
template LpSolution<Rational> simplex_max<Rational>(const std::vector<std::vector<Rational>>&,
                                                    const std::vector<Rational>&, const std::vector<Rational>&,
                                                    const Rational&, int);
template LpSolution<Real> simplex_max_eq<Real>(const std::vector<std::vector<Real>>&, const std::vector<Real>&,
                                               const std::vector<Real>&, const Real&, int);
template LpSolution<Rational> simplex_max_eq<Rational>(const std::vector<std::vector<Rational>>&,
                                                       const std::vector<Rational>&, const std::vector<Rational>&,
                                                       const Rational&, int);

// ---- sampled LP -------------------------------------------------------------------------

std::vector<Real> default_samples(const Rational& radius, int points) {
    if (radius <= 1) throw InvalidArgument("sample radius must exceed 1");
    if (points < 2) throw InvalidArgument("need at least two samples");
    Real R = to_real(radius);
    std::vector<Real> s;
    for (int i = 0; i < points; ++i) s.push_back(pow(R, Real(i) / (points - 1)));
    // clusters around sqrt(k), where lattice vector lengths sit in the normalized setting
    Real R2 = R * R;
    for (int k = 2; k < R2; ++k) {
        Real c = sqrt(Real(k));
        for (const char* eps : {"-0.002", "0.002"}) s.push_back(c * (1 + Real(eps)));
    }
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
}

namespace {

// Local maxima of v on the grid that exceed `level`.
std::vector<Real> peaks_above(const std::vector<Real>& x, const std::vector<Real>& v, const Real& level) {
    std::vector<Real> out;
    std::size_t N = v.size();
    for (std::size_t i = 0; i < N; ++i) {
        bool peak = (i == 0 || v[i] >= v[i - 1]) && (i + 1 == N || v[i] >= v[i + 1]);
        if (peak && v[i] > level) out.push_back(x[i]);
    }
    return out;
}

void merge(std::vector<Real>& into, const std::vector<Real>& extra) {
    into.insert(into.end(), extra.begin(), extra.end());
    std::sort(into.begin(), into.end());
    into.erase(std::unique(into.begin(), into.end()), into.end());
}

} // namespace

SampledLpResult sampled_lp(int n, int d, const SampledLpOptions& opt) {
    if (n < 1) throw InvalidArgument("dimension must be positive");
    if (d < 1) throw InvalidArgument("degree must be at least 1");
    PrecisionGuard g(lp_digits(d));
    if (opt.r1 <= 0) throw InvalidArgument("r1 must be positive");
    Real r1 = to_real(opt.r1);
    std::vector<Real> samples = opt.samples;
    if (samples.empty())
        for (auto& r : default_samples(opt.grid_radius, opt.grid_points)) samples.push_back(r * r1);
    if (samples.empty()) throw InvalidArgument("sample set is empty");
    for (auto& r : samples)
        if (r < r1) throw InvalidArgument("samples must lie in [r1, inf)");
    std::vector<Real> hat_samples;
    if (!opt.nonnegative) {
        Real R = to_real(opt.grid_radius) * r1;
        for (int i = 0; i < opt.grid_points; ++i) hat_samples.push_back(R * i / (opt.grid_points - 1));
        // a free leading coefficient can flip sign far out; pin both signs up to 8 R
        std::vector<Real> far;
        for (Real r = R * 3 / 2; r <= 8 * R; r *= Real(3) / 2) far.push_back(r);
        merge(samples, far);
        merge(hat_samples, far);
    }
    Real eps = pow(Real(10), -static_cast<int>(lp_digits(d)) + 12);
    // With a free, f_a <= 0 and f_hat_a >= 0 at infinity need the top coefficient to be
    // nonnegative and of odd degree, so an even d drops its top term.
    const int de = opt.nonnegative || d % 2 ? d : d - 1;
    auto c0 = ell_all(n, de, Real(0));
    Real one_plus = 1 + to_real(opt.margin);
    SampledLpResult res;
    res.ansatz.n = n;
    for (int round = 0;; ++round) {
        // Primal: min c0.a s.t. G a >= h. The dual max h.z s.t. G^T z <= c0 (a >= 0) or
        // G^T z = c0 (a free), z >= 0, has only d rows; a is read off its multipliers.
        const std::size_t extra = opt.nonnegative ? 0 : 1;
        std::size_t m = samples.size() + hat_samples.size() + extra;
        std::vector<std::vector<Real>> D(static_cast<std::size_t>(de), std::vector<Real>(m));
        std::vector<Real> obj(m);
        auto put = [&](std::size_t i, const std::vector<Real>& row, const Real& h) {
            Real sc = 0;
            for (auto& v : row) sc = std::max(sc, Real(abs(v)));
            if (sc == 0) sc = 1;
            for (int k = 0; k < de; ++k) D[static_cast<std::size_t>(k)][i] = row[static_cast<std::size_t>(k)] / sc;
            obj[i] = h / sc;
        };
        for (std::size_t i = 0; i < samples.size(); ++i) {
            auto row = ell_all(n, de, samples[i] * samples[i]);
            for (auto& v : row) v = -v;
            put(i, row, one_plus);
        }
        for (std::size_t i = 0; i < hat_samples.size(); ++i) {
            std::vector<Real> row(static_cast<std::size_t>(de));
            Real t = hat_samples[i] * hat_samples[i], p = 1;
            for (auto& v : row) v = (p *= t);
            put(samples.size() + i, row, Real(-1));
        }
        if (extra) {
            std::vector<Real> row(static_cast<std::size_t>(de), Real(0));
            row.back() = 1;
            put(m - 1, row, Real(0));
        }
        LpSolution<Real> sol;
        try {
            sol = opt.nonnegative ? simplex_max(D, c0, obj, eps) : simplex_max_eq(D, c0, obj, eps);
        } catch (const NumericalError& e) {
            if (std::string(e.what()).find("unbounded") != std::string::npos)
                throw NumericalError("sampled LP is infeasible: no admissible a meets the sample constraints");
            throw;
        }
        res.iterations += sol.iterations;
        res.ansatz.a = sol.duals;
        res.ansatz.a.resize(static_cast<std::size_t>(d), Real(0));
        if (opt.nonnegative)
            for (auto& v : res.ansatz.a)
                if (v < 0) v = 0;
        res.rounds = round;
        if (round >= opt.refine_rounds) break;
        // add violated local extrema on the dense grid and re-solve
        auto p = power_coefficients(res.ansatz);
        Real rmax = to_real(opt.check.r_max);
        int N = opt.check.points;
        Real tol = pow(Real(10), -static_cast<int>(lp_digits(d)) / 2);
        std::vector<Real> r(static_cast<std::size_t>(N)), v(static_cast<std::size_t>(N));
        for (int i = 0; i < N; ++i) {
            auto I = static_cast<std::size_t>(i);
            r[I] = r1 + (rmax - r1) * i / (N - 1);
            v[I] = horner(p, r[I] * r[I]);
        }
        auto added = peaks_above(r, v, -to_real(opt.margin) + tol);
        std::vector<Real> added_hat;
        if (!opt.nonnegative) {
            std::vector<Real> ph(static_cast<std::size_t>(d + 1));
            ph[0] = 1;
            for (int k = 1; k <= d; ++k) ph[static_cast<std::size_t>(k)] = res.ansatz.a[static_cast<std::size_t>(k - 1)];
            for (int i = 0; i < N; ++i) {
                auto I = static_cast<std::size_t>(i);
                r[I] = rmax * i / (N - 1);
                v[I] = -horner(ph, r[I] * r[I]);
            }
            added_hat = peaks_above(r, v, tol);
        }
        if (added.empty() && added_hat.empty()) break;
        merge(samples, added);
        merge(hat_samples, added_hat);
    }
    res.samples_used = static_cast<int>(samples.size() + hat_samples.size());
    res.bound = ansatz_bound(res.ansatz, r1);
    res.report = sign_check(res.ansatz, r1, opt.check);
    return res;
}

// ---- forced roots --------------------------------------------------------------------------

namespace {

struct Lu {
    std::vector<std::vector<Real>> m;
    std::vector<std::size_t> perm;
};

Lu lu_factor(std::vector<std::vector<Real>> a) {
    std::size_t n = a.size();
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (abs(a[i][k]) > abs(a[p][k])) p = i;
        if (a[p][k] == 0) throw NumericalError("forced-root system is singular");
        std::swap(a[p], a[k]);
        std::swap(perm[p], perm[k]);
        for (std::size_t i = k + 1; i < n; ++i) {
            a[i][k] /= a[k][k];
            if (a[i][k] == 0) continue;
            for (std::size_t j = k + 1; j < n; ++j) a[i][j] -= a[i][k] * a[k][j];
        }
    }
    return {std::move(a), std::move(perm)};
}

std::vector<Real> lu_solve(const Lu& lu, const std::vector<Real>& b) {
    std::size_t n = b.size();
    std::vector<Real> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        y[i] = b[lu.perm[i]];
        for (std::size_t j = 0; j < i; ++j) y[i] -= lu.m[i][j] * y[j];
    }
    for (std::size_t i = n; i-- > 0;) {
        for (std::size_t j = i + 1; j < n; ++j) y[i] -= lu.m[i][j] * y[j];
        y[i] /= lu.m[i][i];
    }
    return y;
}

std::vector<std::vector<Real>> transpose(const std::vector<std::vector<Real>>& a) {
    std::vector<std::vector<Real>> t(a[0].size(), std::vector<Real>(a.size()));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[i].size(); ++j) t[j][i] = a[i][j];
    return t;
}

Real norm1(const std::vector<std::vector<Real>>& a) {
    Real best = 0;
    for (std::size_t j = 0; j < a[0].size(); ++j) {
        Real s = 0;
        for (auto& row : a) s += abs(row[j]);
        best = std::max(best, s);
    }
    return best;
}

struct System {
    std::vector<std::vector<Real>> M;
    std::vector<Real> rhs;
};

// Squared locations: x for f (simple root x1), t for f_hat.
System forced_system(int n, int d, const Real& x1, const std::vector<Real>& xf, const std::vector<Real>& tf) {
    System s;
    auto add = [&](std::vector<Real> row, int rhs) {
        s.M.push_back(std::move(row));
        s.rhs.push_back(Real(rhs));
    };
    add(ell_all(n, d, x1), -1);
    for (auto& x : xf) {
        add(ell_all(n, d, x), -1);
        add(ell_derivative_all(n, d, x), 0);
    }
    for (auto& t : tf) {
        std::vector<Real> v(static_cast<std::size_t>(d)), dv(static_cast<std::size_t>(d));
        Real p = 1;
        for (int k = 1; k <= d; ++k) {
            dv[static_cast<std::size_t>(k - 1)] = k * p;
            p *= t;
            v[static_cast<std::size_t>(k - 1)] = p;
        }
        add(std::move(v), -1);
        add(std::move(dv), 0);
    }
    return s;
}

struct SquaredRoots {
    std::vector<Real> xf, tf;
};

SquaredRoots squares(const RootSchedule& r) {
    SquaredRoots s;
    for (auto& v : r.f) s.xf.push_back(v * v);
    for (auto& v : r.fhat) s.tf.push_back(v * v);
    return s;
}

} // namespace

ForcedRootsResult forced_roots_solve(int n, int d, const Real& r1, const std::vector<Real>& double_roots_f,
                                     const std::vector<Real>& double_roots_fhat) {
    if (n < 1) throw InvalidArgument("dimension must be positive");
    std::size_t need = 1 + 2 * double_roots_f.size() + 2 * double_roots_fhat.size();
    if (static_cast<std::size_t>(d) != need)
        throw InvalidArgument("forced roots give " + std::to_string(need) + " constraints but d = " +
                              std::to_string(d));
    if (r1 <= 0) throw InvalidArgument("simple root must be positive");
    PrecisionGuard g(lp_digits(d));
    std::vector<Real> xf, tf;
    for (auto& z : double_roots_f) xf.push_back(z * z);
    for (auto& w : double_roots_fhat) tf.push_back(w * w);
    auto sys = forced_system(n, d, r1 * r1, xf, tf);
    Lu lu = lu_factor(sys.M);
    ForcedRootsResult res;
    res.ansatz.n = n;
    res.ansatz.a = lu_solve(lu, sys.rhs);
    // ||M^{-1}||_1 from the columns of the inverse
    Real inv_norm = 0;
    for (std::size_t j = 0; j < need; ++j) {
        std::vector<Real> e(need, Real(0));
        e[j] = 1;
        auto col = lu_solve(lu, e);
        Real s = 0;
        for (auto& v : col) s += abs(v);
        inv_norm = std::max(inv_norm, s);
    }
    res.condition = norm1(sys.M) * inv_norm;
    res.residual = 0;
    for (std::size_t i = 0; i < need; ++i) {
        Real scale = 0;
        for (auto& v : sys.M[i]) scale = std::max(scale, Real(abs(v)));
        Real r = abs(dot(sys.M[i], res.ansatz.a) - sys.rhs[i]) / std::max(Real(1), scale);
        res.residual = std::max(res.residual, r);
    }
    if (res.condition * pow(Real(10), -static_cast<int>(lp_digits(d))) > Real("1e-3"))
        throw NumericalError("forced-root system is ill-conditioned (condition " + to_string(res.condition, 3) + ")");
    res.bound = ansatz_bound(res.ansatz, r1);
    return res;
}

RootSchedule lattice_schedule(int n, int double_f, int double_fhat, bool unimodular) {
    if (double_f < 0 || double_fhat < 0) throw InvalidArgument("root counts must be nonnegative");
    // squared lengths of E8 are 2, 4, 6, ...; of the Leech lattice 4, 6, 8, ... (both self-dual)
    int first;
    if (n == 8)
        first = 1;
    else if (n == 24)
        first = 2;
    else
        throw InvalidArgument("lattice root schedules exist for n = 8 and n = 24");
    RootSchedule s;
    Real r1sq = 2 * first;
    Real scale = unimodular ? Real(1) : Real(1 / r1sq);  // factor on squared lengths
    s.r1 = sqrt(r1sq * scale);
    for (int k = 0; k < double_f; ++k) s.f.push_back(sqrt(Real(2 * (first + 1 + k)) * scale));
    // the dual of c L is L / c, so dual squared lengths scale by 1 / scale
    for (int k = 0; k < double_fhat; ++k) s.fhat.push_back(sqrt(Real(2 * (first + k)) / scale));
    return s;
}

RootSchedule roots_from_ansatz(const LaguerreAnsatz& f, const Real& r1, const Rational& r_max, int points) {
    RootSchedule s;
    s.r1 = r1;
    Real rmax = to_real(r_max);
    Real tol = pow(Real(10), -static_cast<int>(current_digits()) / 8);
    auto c = power_coefficients(f);
    std::vector<Real> ch(static_cast<std::size_t>(f.d() + 1));
    ch[0] = 1;
    for (int k = 1; k <= f.d(); ++k) ch[static_cast<std::size_t>(k)] = f.a[static_cast<std::size_t>(k - 1)];
    // the size of the cancelling terms sets the scale for "touches zero"
    auto scale = [](const std::vector<Real>& p, const Real& x) {
        Real v = 0, xp = 1;
        for (auto& pk : p) {
            v += abs(pk) * xp;
            xp *= x;
        }
        return v;
    };
    auto collect = [&](const std::vector<Real>& p, const Real& lo, int sign, std::vector<Real>& out) {
        std::vector<Real> x(static_cast<std::size_t>(points)), v(x.size());
        for (int i = 0; i < points; ++i) {
            auto I = static_cast<std::size_t>(i);
            Real r = lo + (rmax - lo) * i / (points - 1);
            x[I] = r * r;
            v[I] = sign * horner(p, x[I]) / scale(p, x[I]);
        }
        for (std::size_t i = 1; i + 1 < x.size(); ++i)
            if (v[i] >= v[i - 1] && v[i] >= v[i + 1] && v[i] > -tol) out.push_back(sqrt(x[i]));
    };
    collect(c, r1, 1, s.f);
    collect(ch, Real(0), -1, s.fhat);
    // drop the first grid point hit right at r1
    s.f.erase(std::remove_if(s.f.begin(), s.f.end(), [&](const Real& z) { return z <= r1 * (1 + Real("1e-3")); }),
              s.f.end());
    return s;
}

namespace {

struct Gradient {
    std::vector<Real> a;
    Real f0;
    std::vector<Real> g;  // multipliers of the derivative rows
};

Gradient stationarity(int n, int d, const Real& x1, const SquaredRoots& r) {
    auto sys = forced_system(n, d, x1, r.xf, r.tf);
    Lu lu = lu_factor(sys.M);
    Gradient out;
    out.a = lu_solve(lu, sys.rhs);
    auto c = ell_all(n, d, Real(0));
    out.f0 = 1 + dot(c, out.a);
    Lu lt = lu_factor(transpose(sys.M));
    auto lam = lu_solve(lt, c);
    for (std::size_t j = 0; j < r.xf.size(); ++j) out.g.push_back(lam[2 + 2 * j]);
    for (std::size_t j = 0; j < r.tf.size(); ++j) out.g.push_back(lam[2 + 2 * r.xf.size() + 2 * j]);
    return out;
}

bool ordered(const Real& x1, const SquaredRoots& r) {
    for (std::size_t i = 0; i < r.xf.size(); ++i)
        if (r.xf[i] <= x1 || (i > 0 && r.xf[i] <= r.xf[i - 1])) return false;
    for (std::size_t i = 0; i < r.tf.size(); ++i)
        if (r.tf[i] <= 0 || (i > 0 && r.tf[i] <= r.tf[i - 1])) return false;
    return true;
}

SquaredRoots perturbed(const SquaredRoots& r, const std::vector<Real>& step, const Real& scale) {
    SquaredRoots out = r;
    for (std::size_t i = 0; i < r.xf.size(); ++i) out.xf[i] -= scale * step[i];
    for (std::size_t i = 0; i < r.tf.size(); ++i) out.tf[i] -= scale * step[r.xf.size() + i];
    return out;
}

} // namespace

NewtonResult newton_refine(int n, int d, const RootSchedule& initial, const NewtonOptions& opt) {
    PrecisionGuard g(lp_digits(d));
    NewtonResult res;
    SquaredRoots r = squares(initial);
    Real x1 = initial.r1 * initial.r1;
    res.initial_bound = forced_roots_solve(n, d, initial.r1, initial.f, initial.fhat).bound;
    std::size_t m = r.xf.size() + r.tf.size();
    Real h = pow(Real(10), -static_cast<int>(lp_digits(d)) / 3);
    Real tol(opt.tolerance);
    if (m > 0) {
        for (int it = 0; it < opt.max_iterations; ++it) {
            Gradient cur = stationarity(n, d, x1, r);
            std::vector<std::vector<Real>> J(m, std::vector<Real>(m));
            for (std::size_t j = 0; j < m; ++j) {
                SquaredRoots rr = r;
                if (j < r.xf.size())
                    rr.xf[j] += h;
                else
                    rr.tf[j - r.xf.size()] += h;
                auto gj = stationarity(n, d, x1, rr).g;
                for (std::size_t i = 0; i < m; ++i) J[i][j] = (gj[i] - cur.g[i]) / h;
            }
            std::vector<Real> step;
            try {
                step = lu_solve(lu_factor(J), cur.g);
            } catch (const NumericalError&) {
                throw NumericalError("Newton Jacobian is singular");
            }
            Real scale = 1;
            bool accepted = false;
            for (int bt = 0; bt < 30; ++bt, scale /= 2) {
                SquaredRoots cand = perturbed(r, step, scale);
                if (!ordered(x1, cand)) continue;
                Gradient next = stationarity(n, d, x1, cand);
                if (next.f0 <= cur.f0) {
                    r = cand;
                    accepted = true;
                    break;
                }
            }
            res.iterations = it + 1;
            Real size = 0;
            for (auto& v : step) size = std::max(size, Real(abs(v) * scale));
            if (!accepted || size < tol) {
                res.converged = accepted || size < tol;
                break;
            }
        }
    } else {
        res.converged = true;
    }
    for (auto& x : r.xf) res.roots.f.push_back(sqrt(x));
    for (auto& t : r.tf) res.roots.fhat.push_back(sqrt(t));
    res.roots.r1 = initial.r1;
    res.solution = forced_roots_solve(n, d, initial.r1, res.roots.f, res.roots.fhat);
    return res;
}

// ---- SOS certificates ---------------------------------------------------------------------

std::vector<Rational> sos_polynomial(const SosCertificate& cert) {
    // p(w) = 1 + sum_k c_k k! L_k(y0 w)
    std::vector<Rational> p(static_cast<std::size_t>(cert.d + 1), Rational(0));
    p[0] = 1;
    Rational nu = Rational(cert.n, 2) - 1;
    for (int k = 1; k <= cert.d; ++k) {
        const Rational& ck = cert.c[static_cast<std::size_t>(k - 1)];
        if (ck == 0) continue;
        auto lc = laguerre_coefficients(k, nu);
        Rational kf(factorial(static_cast<unsigned>(k)));
        Rational ypow = 1;
        for (int j = 0; j <= k; ++j) {
            p[static_cast<std::size_t>(j)] += ck * kf * lc[static_cast<std::size_t>(j)] * ypow;
            ypow *= cert.y0;
        }
    }
    return p;
}

namespace {

// Coefficients of b^T Q1 b + (w - 1) b^T Q2 b.
std::vector<Rational> gram_polynomial(const RatMatrix& Q1, const RatMatrix& Q2) {
    std::size_t m = Q1.size();
    std::vector<Rational> out(2 * m, Rational(0));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            out[i + j] += Q1[i][j];
            out[i + j + 1] += Q2[i][j];
            out[i + j] -= Q2[i][j];
        }
    return out;
}

bool symmetric(const RatMatrix& Q) {
    for (std::size_t i = 0; i < Q.size(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (Q[i][j] != Q[j][i]) return false;
    return true;
}

// w-basis coefficients of (w - 1)^j.
std::vector<Rational> shifted_power(int j, std::size_t size) {
    std::vector<Rational> v(size, Rational(0));
    for (int i = 0; i <= j; ++i)
        v[static_cast<std::size_t>(i)] = Rational(binomial(j, i)) * ((j - i) % 2 ? -1 : 1);
    return v;
}

void add_outer(RatMatrix& Q, const Rational& w, const std::vector<Rational>& v) {
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] == 0) continue;
        for (std::size_t j = 0; j < v.size(); ++j)
            if (v[j] != 0) Q[i][j] += w * v[i] * v[j];
    }
}

using DPoly = std::vector<double>;

DPoly dmul(const DPoly& a, const DPoly& b) {
    DPoly c(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    return c;
}

// weighted sums of squares: sum w_i p_i^2
using Sos = std::vector<std::pair<double, DPoly>>;

Sos sos_mul(const Sos& a, const Sos& b) {
    Sos out;
    for (auto& [wa, pa] : a)
        for (auto& [wb, pb] : b) out.emplace_back(wa * wb, dmul(pa, pb));
    return out;
}

DPoly shift_to_w(const DPoly& p) {
    // p(u) with u = w - 1
    DPoly out(p.size(), 0.0);
    for (std::size_t j = 0; j < p.size(); ++j) {
        for (std::size_t i = 0; i <= j; ++i) {
            double b = binomial(static_cast<long>(j), static_cast<long>(i)).convert_to<double>();
            out[i] += p[j] * b * (((j - i) % 2) ? -1.0 : 1.0);
        }
    }
    return out;
}

} // namespace

bool is_psd(const RatMatrix& Q, std::string* why) {
    std::size_t n = Q.size();
    RatMatrix M = Q;
    std::vector<bool> done(n, false);
    for (std::size_t step = 0; step < n; ++step) {
        std::size_t p = n;
        for (std::size_t i = 0; i < n; ++i)
            if (!done[i] && (p == n || M[i][i] > M[p][p])) p = i;
        if (M[p][p] < 0) {
            if (why) *why = "negative pivot at elimination step " + std::to_string(step + 1) + " (index " +
                            std::to_string(p) + ")";
            return false;
        }
        done[p] = true;
        if (M[p][p] == 0) {
            for (std::size_t j = 0; j < n; ++j)
                if (!done[j] && M[p][j] != 0) {
                    if (why) *why = "zero pivot with nonzero off-diagonal entry at step " + std::to_string(step + 1);
                    return false;
                }
            continue;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (done[i] || M[i][p] == 0) continue;
            Rational f = M[i][p] / M[p][p];
            for (std::size_t j = 0; j < n; ++j)
                if (!done[j]) M[i][j] -= f * M[p][j];
        }
    }
    return true;
}

Certificate verify_sos(const SosCertificate& cert) {
    Certificate out;
    out.claim = "f_a <= 0 for r >= 1 and f_hat_a >= 0 (n=" + std::to_string(cert.n) + ", d=" + std::to_string(cert.d) +
                ")";
    std::size_t m = static_cast<std::size_t>(cert.d + 1);
    bool shapes = cert.d >= 1 && cert.c.size() == static_cast<std::size_t>(cert.d) && cert.Q1.size() == m &&
                  cert.Q2.size() == m;
    for (auto* Q : {&cert.Q1, &cert.Q2})
        for (auto& row : *Q) shapes = shapes && row.size() == m;
    out.add("certificate dimensions", "exact", "d = " + std::to_string(cert.d), shapes);
    if (!shapes) {
        out.finalize();
        return out;
    }
    bool y0_ok = cert.y0 > 0 && cert.y0 <= pi_lower();
    out.add("0 < y0 <= pi, so s >= 1 implies w >= 1", "exact", "y0 = " + to_string(cert.y0), y0_ok);
    bool c_ok = std::all_of(cert.c.begin(), cert.c.end(), [](const Rational& v) { return v >= 0; });
    out.add("c >= 0, so f_hat_a >= 0", "exact", c_ok ? "all coefficients nonnegative" : "negative coefficient", c_ok);
    bool sym = symmetric(cert.Q1) && symmetric(cert.Q2);
    out.add("Q1 and Q2 are symmetric", "exact", sym ? "yes" : "asymmetric entry", sym);

    auto p = sos_polynomial(cert);
    auto gram = gram_polynomial(cert.Q1, cert.Q2);
    std::string mismatch;
    for (std::size_t k = 0; k < gram.size(); ++k) {
        Rational lhs = k < p.size() ? Rational(-p[k]) : Rational(0);
        if (lhs != gram[k]) {
            mismatch = "identity mismatch at coefficient of w^" + std::to_string(k);
            break;
        }
    }
    out.add("-p(w) = b^T Q1 b + (w - 1) b^T Q2 b", "exact", mismatch.empty() ? "all coefficients agree" : mismatch,
            mismatch.empty());
    std::string why1, why2;
    bool psd1 = is_psd(cert.Q1, &why1), psd2 = is_psd(cert.Q2, &why2);
    out.add("Q1 is positive semidefinite (pivoted LDL^T)", "exact", psd1 ? "nonnegative pivots" : why1, psd1);
    out.add("Q2 is positive semidefinite (pivoted LDL^T)", "exact", psd2 ? "nonnegative pivots" : why2, psd2);
    out.finalize();
    return out;
}

LaguerreAnsatz to_ansatz(const SosCertificate& cert) {
    LaguerreAnsatz f;
    f.n = cert.n;
    Real pi = pi_real();
    for (int k = 1; k <= cert.d; ++k) f.a.push_back(to_real(cert.c[static_cast<std::size_t>(k - 1)]) * pow(pi, k));
    return f;
}

SosCertificate build_sos_certificate(int n, int d, const Rational& margin) {
    if (d < 1 || d > 12) throw InvalidArgument("certificate construction supports 1 <= d <= 12");
    SampledLpOptions lo;
    lo.margin = margin;
    auto lp = sampled_lp(n, d, lo);
    PrecisionGuard g(lp_digits(d));
    SosCertificate cert;
    cert.n = n;
    cert.d = d;
    cert.y0 = Rational(314, 100);
    Real pi = pi_real();
    for (int k = 1; k <= d; ++k) {
        Real ck = lp.ansatz.a[static_cast<std::size_t>(k - 1)] / pow(pi, k);
        cert.c.push_back(ck < Real("1e-40") ? Rational(0) : rationalize(ck, BigInt(1000000)));
    }
    auto p = sos_polynomial(cert);
    // R(u) = -p(1 + u)
    std::size_t D = p.size();
    while (D > 1 && p[D - 1] == 0) --D;
    std::vector<Rational> R(D, Rational(0));
    for (std::size_t j = 0; j < D; ++j)
        for (std::size_t i = 0; i <= j; ++i) R[i] -= p[j] * Rational(binomial(static_cast<long>(j), static_cast<long>(i)));
    if (R.back() <= 0) throw NumericalError("polynomial does not stay negative at infinity");
    // shave delta * sum u^m so the rounding residual is strictly positive in every coefficient
    auto Rd = [&](double u) {
        double v = 0;
        for (std::size_t j = D; j-- > 0;) v = v * u + R[j].convert_to<double>();
        return v;
    };
    double ratio = 1e300;
    for (int i = 0; i <= 4000; ++i) {
        double u = i < 2000 ? i / 1000.0 : std::pow(10.0, (i - 2000) / 400.0) * 2;
        double s = 0, up = 1;
        for (std::size_t j = 0; j < D; ++j, up *= u) s += up;
        ratio = std::min(ratio, Rd(u) / s);
    }
    if (ratio <= 0) throw NumericalError("polynomial is not negative on [1, inf) in w");
    Rational delta = rationalize(Real(ratio / 4), BigInt(1000000));
    std::vector<double> Rs(D);
    for (std::size_t j = 0; j < D; ++j) Rs[j] = (R[j] - delta).convert_to<double>();

    Sos s1{{1.0, DPoly{1.0}}}, s2;  // R = s1 + u s2
    Sos t1, t2;
    if (D >= 2) {
        std::size_t deg = D - 1;
        Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(static_cast<long>(deg), static_cast<long>(deg));
        for (std::size_t i = 1; i < deg; ++i) comp(static_cast<long>(i), static_cast<long>(i - 1)) = 1;
        for (std::size_t i = 0; i < deg; ++i) comp(static_cast<long>(i), static_cast<long>(deg - 1)) = -Rs[i] / Rs[deg];
        Eigen::EigenSolver<Eigen::MatrixXd> es(comp);
        auto roots = es.eigenvalues();
        std::vector<bool> used(deg, false);
        for (std::size_t i = 0; i < deg; ++i) {
            if (used[i]) continue;
            used[i] = true;
            std::complex<double> z = roots(static_cast<long>(i));
            Sos n1, n2;
            if (std::abs(z.imag()) < 1e-9 * (1 + std::abs(z))) {
                if (z.real() >= 0) throw NumericalError("nonnegative real root in the certified region");
                // u - z = (-z) + u * 1
                n1 = {{-z.real(), DPoly{1.0}}};
                n2 = {{1.0, DPoly{1.0}}};
            } else {
                for (std::size_t j = i + 1; j < deg; ++j)
                    if (!used[j] && std::abs(roots(static_cast<long>(j)) - std::conj(z)) < 1e-6 * (1 + std::abs(z))) {
                        used[j] = true;
                        break;
                    }
                // (u - a)^2 + b^2
                n1 = {{1.0, DPoly{-z.real(), 1.0}}, {z.imag() * z.imag(), DPoly{1.0}}};
            }
            // (s1 + u s2)(n1 + u n2) = (s1 n1 + u^2 s2 n2) + u (s1 n2 + s2 n1)
            Sos a1 = sos_mul(s1, n1), a2 = sos_mul(s2, n2), b1 = sos_mul(s1, n2), b2 = sos_mul(s2, n1);
            for (auto& [w, q] : a2) q.insert(q.begin(), 0.0);  // u^2 s2 n2 = (u q)^2
            s1 = a1;
            s1.insert(s1.end(), a2.begin(), a2.end());
            s2 = b1;
            s2.insert(s2.end(), b2.begin(), b2.end());
        }
    }
    double lc = Rs[D - 1];
    std::size_t size = static_cast<std::size_t>(d + 1);
    cert.Q1.assign(size, std::vector<Rational>(size, Rational(0)));
    cert.Q2 = cert.Q1;
    auto absorb = [&](const Sos& s, RatMatrix& Q) {
        for (auto& [w, q] : s) {
            if (q.size() > size) throw NumericalError("square exceeds the certificate basis");
            DPoly qw = shift_to_w(q);
            std::vector<Rational> v(size, Rational(0));
            for (std::size_t i = 0; i < qw.size(); ++i) v[i] = rationalize(Real(qw[i]), BigInt(100000000));
            add_outer(Q, rationalize(Real(w * lc), BigInt(100000000)), v);
        }
    };
    absorb(s1, cert.Q1);
    absorb(s2, cert.Q2);
    // exact residual in u; every coefficient must be positive, then add it as diagonal squares
    auto gram = gram_polynomial(cert.Q1, cert.Q2);
    std::vector<Rational> E(gram.size(), Rational(0));
    for (std::size_t k = 0; k < gram.size(); ++k) E[k] = (k < p.size() ? Rational(-p[k]) : Rational(0)) - gram[k];
    std::vector<Rational> Eu(E.size(), Rational(0));  // E(1 + u)
    for (std::size_t j = 0; j < E.size(); ++j)
        for (std::size_t i = 0; i <= j; ++i) Eu[i] += E[j] * Rational(binomial(static_cast<long>(j), static_cast<long>(i)));
    for (std::size_t m2 = 0; m2 < Eu.size(); ++m2) {
        if (Eu[m2] == 0) continue;
        if (Eu[m2] < 0) throw NumericalError("rounding residual is negative; repair would break PSD");
        int j = static_cast<int>(m2 / 2);
        if (static_cast<std::size_t>(j) >= size) throw NumericalError("residual degree exceeds the basis");
        add_outer(m2 % 2 ? cert.Q2 : cert.Q1, Eu[m2], shifted_power(j, size));
    }
    return cert;
}

// ---- SDPA export --------------------------------------------------------------------------

std::string export_sos_sdp(int n, int d, const Rational& y0) {
    if (d < 1) throw InvalidArgument("degree must be at least 1");
    if (n < 1) throw InvalidArgument("dimension must be positive");
    if (y0 <= 0 || y0 > pi_lower()) throw InvalidArgument("y0 must lie in (0, pi]");
    PrecisionGuard g(40);
    std::size_t m = static_cast<std::size_t>(d + 1);
    std::size_t ncons = 2 * m;  // coefficients of w^0 .. w^{2d+1}
    Rational nu = Rational(n, 2) - 1;
    std::ostringstream out;
    auto num = [](const Real& v) {
        std::ostringstream s;
        s << std::setprecision(17) << v.convert_to<double>();
        return s.str();
    };
    out << "* SOS program for the linear programming bound, n = " << n << ", d = " << d << "\n";
    out << "* variable w = pi s / y0, y0 = " << to_string(y0) << "; block 1 = Q1, block 2 = Q2, block 3 = diag(c)\n";
    out << "* constraint m: coefficient of w^m in b^T Q1 b + (w-1) b^T Q2 b + sum_k c_k k! L_k(y0 w) equals -[m = 0]\n";
    out << "* objective: maximize -sum_k c_k pi^k k! L_k(0), i.e. minimize f_a(0) - 1\n";
    out << ncons << "\n3\n" << m << " " << m << " " << -d << "\n";
    for (std::size_t k = 0; k < ncons; ++k) out << (k ? " " : "") << (k == 0 ? "-1" : "0");
    out << "\n";
    Real pi = pi_real();
    // F0: objective on block 3
    for (int k = 1; k <= d; ++k) {
        Real v = -pow(pi, k) * to_real(Rational(factorial(static_cast<unsigned>(k)))) *
                 to_real(binomial_rational(nu + k, k));
        out << "0 3 " << k << " " << k << " " << num(v) << "\n";
    }
    std::vector<std::vector<Rational>> L(static_cast<std::size_t>(d + 1));
    for (int k = 1; k <= d; ++k) {
        auto lc = laguerre_coefficients(k, nu);
        Rational kf(factorial(static_cast<unsigned>(k))), yp = 1;
        for (auto& v : lc) {
            v *= kf * yp;
            yp *= y0;
        }
        L[static_cast<std::size_t>(k)] = lc;
    }
    for (std::size_t c = 0; c < ncons; ++c) {
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = i; j < m; ++j)
                if (i + j == c) out << c + 1 << " 1 " << i + 1 << " " << j + 1 << " 1\n";
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = i; j < m; ++j) {
                int v = (i + j + 1 == c ? 1 : 0) - (i + j == c ? 1 : 0);
                if (v) out << c + 1 << " 2 " << i + 1 << " " << j + 1 << " " << v << "\n";
            }
        for (int k = 1; k <= d; ++k) {
            const auto& lc = L[static_cast<std::size_t>(k)];
            if (c < lc.size() && lc[c] != 0) out << c + 1 << " 3 " << k << " " << k << " " << num(to_real(lc[c])) << "\n";
        }
    }
    return out.str();
}

// ---- serialization ------------------------------------------------------------------------

nlohmann::json to_json(const SosCertificate& cert) {
    auto mat = [](const RatMatrix& Q) {
        nlohmann::json j = nlohmann::json::array();
        for (auto& row : Q) {
            nlohmann::json r = nlohmann::json::array();
            for (auto& v : row) r.push_back(to_string(v));
            j.push_back(r);
        }
        return j;
    };
    nlohmann::json c = nlohmann::json::array();
    for (auto& v : cert.c) c.push_back(to_string(v));
    return {{"n", cert.n}, {"d", cert.d}, {"y0", to_string(cert.y0)}, {"c", c}, {"Q1", mat(cert.Q1)}, {"Q2", mat(cert.Q2)}};
}

SosCertificate sos_from_json(const nlohmann::json& j) {
    try {
        SosCertificate cert;
        cert.n = j.at("n").get<int>();
        cert.d = j.at("d").get<int>();
        cert.y0 = parse_rational(j.at("y0").get<std::string>());
        for (auto& v : j.at("c")) cert.c.push_back(parse_rational(v.get<std::string>()));
        auto mat = [](const nlohmann::json& m) {
            RatMatrix Q;
            for (auto& row : m) {
                std::vector<Rational> r;
                for (auto& v : row) r.push_back(parse_rational(v.get<std::string>()));
                Q.push_back(r);
            }
            return Q;
        };
        cert.Q1 = mat(j.at("Q1"));
        cert.Q2 = mat(j.at("Q2"));
        return cert;
    } catch (const nlohmann::json::exception& e) {
        throw InvalidArgument(std::string("malformed SOS certificate: ") + e.what());
    }
}

} // namespace spherepack
