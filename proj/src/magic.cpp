#include "spherepack/magic.hpp"

#include "spherepack/lattices.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <cmath>

namespace spherepack {

namespace {

const Constant I{1, 0, 1};

QSeries abs_series(const QSeries& s) {
    std::vector<Rational> c = s.coeffs();
    for (auto& v : c) v = abs(v);
    return QSeries(s.min_exp(), std::move(c), s.trunc());
}

RealTerm make_term(const Constant& k, int t_power, const QSeries& s) {
    if (!k.is_real()) throw NumericalError("integrand constant is not real after i-absorption");
    return RealTerm{k, t_power, SeriesEvaluator(s), SeriesEvaluator(abs_series(s))};
}

Real sinc(const Real& u) {
    if (abs(u) < Real("1e-3")) {
        // 1 - u^2/6 + u^4/120 - ...
        Real u2 = u * u, term = 1, sum = 1;
        Real eps = pow(Real(10), -static_cast<int>(current_digits()) - 5);
        for (int k = 1; k < 60; ++k) {
            term *= -u2 / ((2 * k) * (2 * k + 1));
            sum += term;
            if (abs(term) < eps) break;
        }
        return sum;
    }
    return sin(u) / u;
}

Real rel_eps() { return pow(Real(10), -static_cast<int>(current_digits()) + 5); }

} // namespace

CertifiedValue EigenParts::total() const {
    return {small.value + large.value + closed.value, small.error + large.error + closed.error};
}

MagicFunction::MagicFunction(const MagicConfig& cfg) : cfg_(cfg) {
    PrecisionGuard g(cfg.digits);
    if (cfg.n != 8 && cfg.n != 24) throw InvalidArgument("magic functions are implemented for n = 8 and n = 24");
    if (cfg.digits < 20 || cfg.digits > 400) throw InvalidArgument("precision must be between 20 and 400 digits");
    if (cfg.t_split <= 0) throw InvalidArgument("split point must be positive");
    psi_ = psi_forms(cfg.n, cfg.trunc);
    auto st = s_transform_terms(psi_);
    int p = cfg.n / 2 - 2;

    plus_.sign = 1;
    // f+ = -4 sin^2 i^{p+1} int t^p psi+(i/t) e^{-pi r^2 t} dt, so F+ = f+/i = -4 i^p sin^2 (...)
    plus_.outer_sign = -4 * static_cast<int>(Constant{1, 0, p}.real_part().convert_to<long>());
    plus_.small.push_back(make_term(Constant{1, 0, 0}, p, psi_.psi_plus));
    for (auto& t : st.plus) plus_.large.push_back(make_term(t.coefficient * Constant{1, 0, t.z_power - p}, t.z_power, t.series));

    minus_.sign = -1;
    minus_.outer_sign = -4;
    for (auto& t : st.minus) minus_.small.push_back(make_term(t.coefficient * Constant{1, 0, t.z_power}, -t.z_power, t.series));
    minus_.large.push_back(make_term(Constant{1, 0, 0}, 0, psi_.psi_minus));

    check_poles(plus_);
    check_poles(minus_);

    if (cfg.n == 8) {
        alpha_ = Constant{Rational(1, 8640), 1, 1};
        beta_ = Constant{Rational(1, 240), -1, 1};
    } else {
        alpha_ = Constant{Rational(-1, 113218560), 1, 1};
        beta_ = Constant{Rational(-1, 262080), -1, 1};
    }
    Constant beta_used = beta_;
    // The printed n = 8 beta is off by a factor -2 relative to the printed psi_minus
    // (see README); the corrected value is fixed by the double root of f_hat at r1.
    if (cfg.n == 8 && !cfg.table_beta) beta_used = beta_used * Constant{Rational(-1, 2), 0, 0};
    if (cfg.flip_beta) beta_used = beta_used * Constant{-1, 0, 0};
    alpha_real_ = (alpha_ * I).real_part();
    beta_real_ = (beta_used * I).real_part();
    t_split_ = to_real(cfg.t_split);
    quad_.order = cfg.gl_order;
    quad_.target = Real(cfg.target);
}

Real MagicFunction::r1() const {
    PrecisionGuard g(cfg_.digits);
    return sqrt(to_real(r1_squared()));
}

void MagicFunction::check_poles(const EigenPipeline& p) const {
    for (auto& t : p.small)
        if (!t.series.series().is_zero() && t.series.series().min_exp() < 0)
            throw NumericalError("inverted series has a pole; the small-t integral diverges");
    for (auto& t : p.large)
        for (auto& [e, c] : t.series.series().terms()) {
            if (e > 0) break;
            if (e % 8 != 0)
                throw NumericalError("non-decaying term at exponent " + std::to_string(e) +
                                     "/8 gives a pole not cancelled by sin^2");
            if (t.t_power >= 2 || t.t_power < 0)
                throw NumericalError("pole of order > 2 at r^2 = " + std::to_string(-e / 8 * 2));
        }
}

CertifiedValue MagicFunction::integrate_region(const std::vector<RealTerm>& terms, bool inverted, const Real& a,
                                               const Real& b, const Real& r2, int cut) const {
    Real pi = pi_real();
    auto f = [&](const Real& t) -> IntegrandValue {
        Real x = inverted ? Real(exp(-pi / (4 * t))) : Real(exp(-pi * t / 4));
        Real damp = exp(-pi * r2 * t);
        Real v = 0, err = 0;
        for (auto& term : terms) {
            auto s = inverted ? term.series.at_x(x) : term.series.at_x_above(x, cut);
            Real kt = term.k.real_part() * pow(t, term.t_power) * damp;
            v += kt * s.value;
            err += abs(kt) * s.error;
        }
        return {v, err};
    };
    auto r = integrate(f, a, b, quad_);
    return {r.value, r.error};
}

CertifiedValue MagicFunction::closed_forms(const EigenPipeline& p, const Real& r2) const {
    Real pi = pi_real();
    CertifiedValue out{Real(0), Real(0)};
    const Real& ts = t_split_;
    for (auto& term : p.large) {
        for (auto& [e, c] : term.series.series().terms()) {
            if (e > 0) break;
            // sin^2(pi r^2/2) * int_{t*}^inf t^k e^{-s t} dt with s = pi (r^2 + e/4) = 2u
            Real u = pi * (r2 + Real(e) / 4) / 2;
            Real sc = sinc(u);
            Real h = 0;
            int k = term.t_power;
            Real s = 2 * u;
            Real decay = exp(-s * ts);
            if (k == 0) {
                h = sc * sc * u / 2 * decay;
            } else {
                // j = 0: t* * sin^2/s; j = 1: sin^2/s^2
                h = (ts * sc * sc * u / 2 + sc * sc / 4) * decay;
            }
            Real contrib = term.k.real_part() * to_real(c) * h;
            out.value += contrib;
            out.error += abs(contrib) * rel_eps();
        }
    }
    return out;
}

EigenParts MagicFunction::eigen_parts(int sign, const Real& r) const {
    PrecisionGuard g(cfg_.digits);
    const EigenPipeline& p = pipeline(sign);
    Real pi = pi_real();
    Real r2 = r * r;
    Real sn = sin(pi * r2 / 2);
    Real s2 = sn * sn;
    EigenParts out;
    const Real& ts = t_split_;

    // (0, t*] in four panels
    CertifiedValue small{Real(0), Real(0)};
    Real edges[5] = {Real(0), ts / 8, ts / 4, ts / 2, ts};
    for (int i = 0; i < 4; ++i) {
        auto v = integrate_region(p.small, true, edges[i], edges[i + 1], r2, 0);
        small.value += v.value;
        small.error += v.error;
    }
    out.small = {s2 * small.value, s2 * small.error};

    // [t*, T] on doubling panels, then an explicit tail bound beyond T.
    int emin_pos = std::numeric_limits<int>::max();
    int max_power = 0;
    for (auto& term : p.large) {
        for (auto& [e, c] : term.series.series().terms())
            if (e > 0) {
                emin_pos = std::min(emin_pos, e);
                break;
            }
        max_power = std::max(max_power, term.t_power);
    }
    CertifiedValue large{Real(0), Real(0)};
    if (emin_pos != std::numeric_limits<int>::max()) {
        Real lambda = pi * r2 + pi * Real(emin_pos) / 4;
        auto bound_at = [&](const Real& t) -> Real {
            Real x = exp(-pi * t / 4);
            Real b = 0;
            for (auto& term : p.large) {
                auto s = term.abs_series.at_x_above(x, 0);
                b += abs(term.k.real_part()) * pow(t, term.t_power) * (s.value + s.error);
            }
            return b * exp(-pi * r2 * t);
        };
        Real lo = ts, hi = 2 * ts;
        Real tail;
        while (true) {
            auto v = integrate_region(p.large, false, lo, hi, r2, 0);
            large.value += v.value;
            large.error += v.error;
            Real rate = lambda - Real(max_power) / hi;
            if (rate > 0) {
                tail = bound_at(hi) / rate;
                if (tail < quad_.target * Real("1e-3")) break;
            }
            if (hi > 1e6) throw NumericalError("remainder integral does not decay");
            lo = hi;
            hi *= 2;
        }
        large.error += tail;
    }
    out.large = {s2 * large.value, s2 * large.error};
    out.closed = closed_forms(p, r2);
    return out;
}

CertifiedValue MagicFunction::eigenfunction(int sign, const Real& r) const {
    PrecisionGuard g(cfg_.digits);
    auto parts = eigen_parts(sign, r).total();
    int o = pipeline(sign).outer_sign;
    return {o * parts.value, abs(Real(o)) * parts.error};
}

std::pair<CertifiedValue, CertifiedValue> MagicFunction::parts(const Real& r) const {
    PrecisionGuard g(cfg_.digits);
    auto fp = eigenfunction(1, r), fm = eigenfunction(-1, r);
    CertifiedValue a{alpha_real_ * fp.value, abs(alpha_real_) * fp.error};
    CertifiedValue b{beta_real_ * fm.value, abs(beta_real_) * fm.error};
    return {a, b};
}

std::pair<CertifiedValue, CertifiedValue> MagicFunction::eval_both(const Real& r) const {
    PrecisionGuard g(cfg_.digits);
    auto [a, b] = parts(r);
    Real err = a.error + b.error;
    return {{a.value + b.value, err}, {a.value - b.value, err}};
}

CertifiedValue MagicFunction::eval(Side side, const Real& r) const {
    auto both = eval_both(r);
    return side == Side::f ? both.first : both.second;
}

MagicFunction::TailSplit MagicFunction::tail_split(Side side, const Real& r) const {
    PrecisionGuard g(cfg_.digits);
    Real pi = pi_real();
    Real r2 = r * r;
    // dominant component: smallest leading exponent among the inverted series
    int best_sign = 0, best_e = std::numeric_limits<int>::max();
    for (int sign : {1, -1})
        for (auto& t : pipeline(sign).small) {
            int e = t.series.series().min_exp();
            if (e < best_e) {
                best_e = e;
                best_sign = sign;
            }
        }
    auto factor = [&](int sign) -> Real {
        Real f = sign > 0 ? alpha_real_ : beta_real_;
        if (sign < 0 && side == Side::f_hat) f = -f;
        return f * pipeline(sign).outer_sign;
    };
    // Fixed-order integration with a relative target for these tiny values.
    auto fixed = [&](const std::function<Real(const Real&)>& h, const Real& a, const Real& b) -> Real {
        AdaptiveOptions o = quad_;
        Real scale = 0;
        for (int i = 1; i < 64; ++i) scale = std::max(scale, Real(abs(h(a + (b - a) * i / 64))));
        o.target = (b - a) * scale * Real("1e-12") + Real("1e-300");
        auto res = integrate([&](const Real& t) { return IntegrandValue{h(t), Real(0)}; }, a, b, o);
        return res.value;
    };
    const Real& ts = t_split_;
    TailSplit out{Real(0), Real(0)};
    for (int sign : {1, -1}) {
        const auto& p = pipeline(sign);
        Real fac = abs(factor(sign));
        for (auto& term : p.small) {
            const QSeries& s = term.series.series();
            Rational c0 = s.coeff(s.min_exp());
            bool leading = sign == best_sign && s.min_exp() == best_e;
            if (leading) {
                Real k = term.k.real_part() * to_real(c0) * factor(sign);
                out.leading += fixed(
                    [&](const Real& t) -> Real { return k * pow(t, term.t_power) * exp(-pi * Real(best_e) / (4 * t) - pi * r2 * t); },
                    Real(0), ts);
            }
            // everything except the leading coefficient (or all of it for other components)
            out.rest_bound += fac * abs(term.k.real_part()) * fixed(
                [&](const Real& t) -> Real {
                    Real x = exp(-pi / (4 * t));
                    auto v = leading ? term.abs_series.at_x_above(x, s.min_exp()) : term.abs_series.at_x(x);
                    return pow(t, term.t_power) * (v.value + v.error) * exp(-pi * r2 * t);
                },
                Real(0), ts);
        }
        for (auto& term : p.large) {
            out.rest_bound += fac * abs(term.k.real_part()) * fixed(
                [&](const Real& t) -> Real {
                    auto v = term.abs_series.at_x_above(exp(-pi * t / 4), 0);
                    return pow(t, term.t_power) * (v.value + v.error) * exp(-pi * r2 * t);
                },
                ts, ts + 1 + 200 / (r2 + 1));
            for (auto& [e, c] : term.series.series().terms()) {
                if (e > 0) break;
                Real s = pi * (r2 + Real(e) / 4);
                if (s <= 0) throw InvalidArgument("tail split requested below the last pole");
                Real h = term.t_power == 0 ? Real(exp(-s * ts) / s) : Real(exp(-s * ts) * (ts / s + 1 / (s * s)));
                out.rest_bound += fac * abs(term.k.real_part() * to_real(c)) * h;
            }
        }
    }
    return out;
}

CertifiedValue taylor_quadratic(const MagicFunction& m, Side side) {
    PrecisionGuard g(m.config().digits);
    // g(x) = f(sqrt x); D(x) = (g(x) - g(0))/x -> c2 as x -> 0, Neville in x.
    auto f0 = m.eval(side, Real(0));
    const int levels = 6;
    std::vector<Real> x(levels), d(levels);
    Real noise = 0;
    for (int k = 0; k < levels; ++k) {
        x[k] = Real("0.04") / pow(Real(2), k);
        auto v = m.eval(side, sqrt(x[k]));
        d[k] = (v.value - f0.value) / x[k];
        noise = std::max(noise, Real((v.error + f0.error) / x[k]));
    }
    // Neville extrapolation to x = 0
    std::vector<Real> p = d;
    Real prev = 0, est = 0;
    for (int lev = 1; lev < levels; ++lev) {
        for (int i = levels - 1; i >= lev; --i) p[i] = (x[i - lev] * p[i] - x[i] * p[i - 1]) / (x[i - lev] - x[i]);
        prev = est;
        est = p[levels - 1];
    }
    Real noise_amp = noise * pow(Real(2), 2 * levels);
    return {est, abs(est - prev) + noise_amp};
}

CertifiedValue derivative(const MagicFunction& m, Side side, const Real& r) {
    PrecisionGuard g(m.config().digits);
    const int levels = 4;
    std::vector<Real> h(levels), d(levels);
    Real noise = 0;
    for (int k = 0; k < levels; ++k) {
        h[k] = Real("0.02") / pow(Real(2), k);
        auto a = m.eval(side, r + h[k]), b = m.eval(side, r - h[k]);
        d[k] = (a.value - b.value) / (2 * h[k]);
        noise = std::max(noise, Real((a.error + b.error) / (2 * h[k])));
    }
    std::vector<Real> p = d;
    Real prev = 0, est = p[0];
    for (int lev = 1; lev < levels; ++lev) {
        for (int i = levels - 1; i >= lev; --i) {
            Real h2a = h[i - lev] * h[i - lev], h2b = h[i] * h[i];
            p[i] = (h2a * p[i] - h2b * p[i - 1]) / (h2a - h2b);
        }
        prev = est;
        est = p[levels - 1];
    }
    return {est, abs(est - prev) + noise * pow(Real(2), 2 * levels)};
}

CertifiedValue cohn_elkies_bound(int n, const CertifiedValue& f0, const Rational& r1_squared) {
    Real vol = ball_volume(n, r1_squared / 4).value();
    return {f0.value * vol, f0.error * vol};
}

CertifiedValue ce_bound_from_function(const MagicFunction& m, const Certificate& cert) {
    if (cert.status != Status::verified) throw ValidationError("feasibility certificate missing or not verified");
    PrecisionGuard g(m.config().digits);
    return cohn_elkies_bound(m.n(), m.eval(Side::f, Real(0)), m.r1_squared());
}

double radial_fourier_oracle(int n, const std::function<double(double)>& f, double u, const OracleOptions& opt) {
    if (n < 1) throw InvalidArgument("dimension must be positive");
    if (u < 0) throw InvalidArgument("u must be nonnegative");
    using Rule = boost::math::quadrature::gauss<double, 30>;
    // Fixed nodes (independent of u) so callers can cache samples of f.
    double nu = n / 2.0 - 1;
    int panels = static_cast<int>(std::ceil(opt.rmax * 4));
    double w = opt.rmax / panels;
    auto g = [&](double r) {
        if (u == 0) return f(r) * std::pow(r, n - 1);
        return f(r) * boost::math::cyl_bessel_j(nu, 2 * M_PI * u * r) * std::pow(r, n / 2.0);
    };
    double integral = 0;
    for (int i = 0; i < panels; ++i) integral += Rule::integrate(g, i * w, (i + 1) * w);
    double value = u == 0 ? 2 * std::pow(M_PI, n / 2.0) / boost::math::tgamma(n / 2.0) * integral
                          : 2 * M_PI * std::pow(u, 1 - n / 2.0) * integral;
    if (!std::isfinite(value)) throw NumericalError("radial Fourier quadrature produced a non-finite value");
    return value;
}

} // namespace spherepack
