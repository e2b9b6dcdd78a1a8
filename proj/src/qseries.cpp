#include "spherepack/qseries.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace spherepack {

namespace {

int add_trunc(int a, int b) {
    long long s = static_cast<long long>(a) + b;
    if (a >= QSeries::exact || b >= QSeries::exact || s >= QSeries::exact) return QSeries::exact;
    return static_cast<int>(s);
}

} // namespace

QSeries::QSeries(int min_exp, std::vector<Rational> coeffs, int trunc)
    : min_exp_(min_exp), coeffs_(std::move(coeffs)), trunc_(std::min(trunc, exact)) {
    normalize();
}

QSeries QSeries::monomial(const Rational& c, int exp, int trunc) { return QSeries(exp, {c}, trunc); }

void QSeries::normalize() {
    if (!is_exact()) {
        long long keep = static_cast<long long>(trunc_) - min_exp_;
        if (keep < 0) keep = 0;
        if (static_cast<long long>(coeffs_.size()) > keep) coeffs_.resize(static_cast<std::size_t>(keep));
    }
    std::size_t lead = 0;
    while (lead < coeffs_.size() && coeffs_[lead] == 0) ++lead;
    if (lead == coeffs_.size()) {
        coeffs_.clear();
        min_exp_ = 0;
        return;
    }
    if (lead) {
        coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<long>(lead));
        min_exp_ += static_cast<int>(lead);
    }
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rational QSeries::coeff(int e) const {
    if (e >= trunc_) throw InvalidArgument("coefficient requested beyond the series truncation");
    if (is_zero() || e < min_exp_ || e >= end_exp()) return 0;
    return coeffs_[static_cast<std::size_t>(e - min_exp_)];
}

std::vector<std::pair<int, Rational>> QSeries::terms() const {
    std::vector<std::pair<int, Rational>> t;
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        if (coeffs_[i] != 0) t.emplace_back(min_exp_ + static_cast<int>(i), coeffs_[i]);
    return t;
}

int QSeries::exponent_gcd() const {
    int g = 0;
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        if (coeffs_[i] != 0) g = std::gcd(g, static_cast<int>(i));
    return g == 0 ? 1 : g;
}

QSeries QSeries::truncated(int new_trunc) const {
    if (new_trunc > trunc_) throw InvalidArgument("cannot extend a series beyond its truncation");
    QSeries r = *this;
    r.trunc_ = new_trunc;
    r.normalize();
    return r;
}

QSeries QSeries::shifted(int de) const {
    QSeries r = *this;
    r.min_exp_ += de;
    r.trunc_ = add_trunc(trunc_, de);
    return r;
}

QSeries QSeries::operator-() const {
    QSeries r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
}

QSeries QSeries::operator*(const Rational& s) const {
    QSeries r = *this;
    for (auto& c : r.coeffs_) c *= s;
    r.normalize();
    return r;
}

QSeries operator+(const QSeries& a, const QSeries& b) {
    int t = std::min(a.trunc_, b.trunc_);
    if (a.is_zero() && b.is_zero()) return QSeries(0, {}, t);
    int lo = std::min(a.is_zero() ? b.min_exp_ : a.min_exp_, b.is_zero() ? a.min_exp_ : b.min_exp_);
    int hi = std::max(a.end_exp(), b.end_exp());
    if (t < QSeries::exact) hi = std::min(hi, t);
    std::vector<Rational> c(static_cast<std::size_t>(std::max(0, hi - lo)));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        int e = a.min_exp_ + static_cast<int>(i);
        if (e < hi) c[static_cast<std::size_t>(e - lo)] += a.coeffs_[i];
    }
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i) {
        int e = b.min_exp_ + static_cast<int>(i);
        if (e < hi) c[static_cast<std::size_t>(e - lo)] += b.coeffs_[i];
    }
    return QSeries(lo, std::move(c), t);
}

QSeries operator-(const QSeries& a, const QSeries& b) { return a + (-b); }

QSeries operator*(const QSeries& a, const QSeries& b) {
    if ((a.is_zero() && a.is_exact()) || (b.is_zero() && b.is_exact())) return QSeries();
    int t = std::min(add_trunc(a.trunc_, b.order()), add_trunc(b.trunc_, a.order()));
    if (a.is_zero() || b.is_zero()) return QSeries(0, {}, t);
    int lo = a.min_exp_ + b.min_exp_;
    if (t <= lo) throw InvalidArgument("product has an empty validity range");
    int hi = a.end_exp() + b.end_exp() - 1;
    if (t < QSeries::exact) hi = std::min(hi, t);
    auto ta = a.terms(), tb = b.terms();
    std::vector<Rational> c(static_cast<std::size_t>(hi - lo));
    for (auto& [ea, ca] : ta)
        for (auto& [eb, cb] : tb) {
            int e = ea + eb;
            if (e >= hi) break;
            c[static_cast<std::size_t>(e - lo)] += ca * cb;
        }
    return QSeries(lo, std::move(c), t);
}

QSeries divide(const QSeries& a, const QSeries& b, int max_trunc) {
    if (b.is_zero()) throw InvalidArgument("division by zero series");
    int mb = b.min_exp();
    int oa = a.order();
    int t = std::min({add_trunc(a.trunc(), -mb), add_trunc(b.trunc(), oa - 2 * mb), max_trunc});
    auto tb = b.terms();
    if (t >= QSeries::exact && tb.size() > 1)
        throw InvalidArgument("division by a non-monomial exact series needs a truncation");
    if (a.is_zero()) return QSeries(0, {}, t);
    int lo = oa - mb;
    if (t <= lo) throw InvalidArgument("quotient has an empty validity range");
    int hi = t < QSeries::exact ? t : a.end_exp() - mb;
    std::vector<Rational> r(static_cast<std::size_t>(hi - lo));
    Rational lead = tb[0].second;
    for (int k = 0; k < hi - lo; ++k) {
        Rational acc = (lo + k + mb < a.end_exp()) ? a.coeff(oa + k) : Rational(0);
        for (std::size_t idx = 1; idx < tb.size(); ++idx) {
            int j = tb[idx].first - mb;
            if (j > k) break;
            if (r[static_cast<std::size_t>(k - j)] != 0) acc -= tb[idx].second * r[static_cast<std::size_t>(k - j)];
        }
        r[static_cast<std::size_t>(k)] = acc / lead;
    }
    return QSeries(lo, std::move(r), t);
}

QSeries operator/(const QSeries& a, const QSeries& b) { return divide(a, b, QSeries::exact); }

QSeries inverse(const QSeries& a) { return QSeries::constant(1) / a; }

QSeries pow(const QSeries& a, unsigned k) {
    QSeries r = QSeries::constant(1), base = a;
    while (k) {
        if (k & 1u) r = r * base;
        k >>= 1;
        if (k) base = base * base;
    }
    return r;
}

bool QSeries::operator==(const QSeries& o) const {
    return min_exp_ == o.min_exp_ && coeffs_ == o.coeffs_ && trunc_ == o.trunc_;
}

std::string QSeries::str(int max_terms) const {
    std::ostringstream os;
    int shown = 0;
    for (auto& [e, c] : terms()) {
        if (shown == max_terms) break;
        if (shown) os << (c < 0 ? " - " : " + ");
        else if (c < 0) os << "-";
        Rational ac = abs(c);
        Rational ex(e, 8);
        bool one = ac == 1 && e != 0;
        if (!one) os << to_string(ac);
        if (e != 0) {
            os << (one ? "" : "*") << "q";
            if (ex != 1) os << "^" << (denominator(ex) == 1 ? to_string(ex) : "(" + to_string(ex) + ")");
        }
        ++shown;
    }
    if (shown == 0) os << "0";
    if (!is_exact()) {
        Rational ex(trunc_, 8);
        os << " + O(q^" << (denominator(ex) == 1 ? to_string(ex) : "(" + to_string(ex) + ")") << ")";
    }
    return os.str();
}

std::string QSeries::csv() const {
    std::ostringstream os;
    os << "exponent_in_eighths,numerator,denominator\n";
    for (auto& [e, c] : terms()) os << e << "," << numerator(c).str() << "," << denominator(c).str() << "\n";
    return os.str();
}

// ---- Bernoulli / Eisenstein -------------------------------------------------

Rational bernoulli(int k) {
    if (k < 0) throw InvalidArgument("bernoulli needs k >= 0");
    if (k > 1 && k % 2) throw InvalidArgument("bernoulli is only exposed for even k (odd k > 1 vanish)");
    static std::vector<Rational> cache{Rational(1)};
    while (static_cast<int>(cache.size()) <= k) {
        int m = static_cast<int>(cache.size());
        Rational s = 0;
        for (int j = 0; j < m; ++j) s += Rational(binomial(m + 1, j)) * cache[static_cast<std::size_t>(j)];
        cache.push_back(-s / (m + 1));
    }
    return cache[static_cast<std::size_t>(k)];
}

Rational zeta_at_negative(int k) { return -bernoulli(k) / k; }

QSeries eisenstein(int k, int trunc) {
    if (k < 2 || k % 2) throw InvalidArgument("eisenstein needs an even weight k >= 2");
    if (trunc < 1) throw InvalidArgument("truncation must be >= 1");
    Rational factor = Rational(2) / zeta_at_negative(k);
    std::vector<Rational> c(static_cast<std::size_t>(trunc));
    c[0] = 1;
    for (int n = 1; 8 * n < trunc; ++n) {
        BigInt sigma = 0;
        for (int d = 1; d <= n; ++d)
            if (n % d == 0) sigma += boost::multiprecision::pow(BigInt(d), static_cast<unsigned>(k - 1));
        c[static_cast<std::size_t>(8 * n)] = factor * Rational(sigma);
    }
    return QSeries(0, std::move(c), trunc);
}

QSeries delta(int trunc) {
    int t = trunc + 8;
    auto e4 = eisenstein(4, t), e6 = eisenstein(6, t);
    return ((pow(e4, 3) - e6 * e6) * Rational(1, 1728)).truncated(trunc);
}

QSeries delta_product(int trunc) {
    QSeries prod = QSeries::constant(1, trunc);
    for (int n = 1; 8 * n < trunc; ++n) {
        QSeries factor(0, {Rational(1)}, trunc);
        factor = factor - QSeries::monomial(1, 8 * n, trunc);
        prod = prod * pow(factor, 24);
    }
    return prod.shifted(8).truncated(trunc);
}

QSeries theta01(int trunc) {
    std::vector<Rational> c(static_cast<std::size_t>(trunc));
    c[0] = 1;
    for (int n = 1; 4 * n * n < trunc; ++n) c[static_cast<std::size_t>(4 * n * n)] = n % 2 ? -2 : 2;
    return QSeries(0, std::move(c), trunc);
}

QSeries theta10(int trunc) {
    std::vector<Rational> c(static_cast<std::size_t>(trunc));
    for (int n = 0; (2 * n + 1) * (2 * n + 1) < trunc; ++n) c[static_cast<std::size_t>((2 * n + 1) * (2 * n + 1))] = 2;
    return QSeries(0, std::move(c), trunc);
}

QSeries leech_theta(int trunc) {
    auto e4 = eisenstein(4, trunc);
    return pow(e4, 3) - delta(trunc) * Rational(720);
}

PsiForms psi_forms(int n, int trunc) {
    if (n != 8 && n != 24) throw InvalidArgument("psi forms exist for n = 8 and n = 24");
    if (trunc < 8) throw InvalidArgument("truncation too small for Laurent division");
    int t = trunc + 64;
    auto e2 = eisenstein(2, t), e4 = eisenstein(4, t), e6 = eisenstein(6, t);
    auto d = delta(t);
    auto th01 = theta01(t), th10 = theta10(t);
    PsiForms p;
    p.n = n;
    auto numerator_minus = [&](const QSeries& x, const QSeries& y) {
        if (n == 8)
            return pow(x, 12) * pow(y, 8) * Rational(5) + pow(x, 16) * pow(y, 4) * Rational(5) +
                   pow(x, 20) * Rational(2);
        return pow(x, 20) * pow(y, 8) * Rational(7) + pow(x, 24) * pow(y, 4) * Rational(7) + pow(x, 28) * Rational(2);
    };
    if (n == 8) {
        p.a = e6 * e6 / d;
        p.b = e4 * e6 * Rational(-2) / d;
        p.c = e4 * e4 / d;
        p.psi_minus = numerator_minus(th01, th10) / d;
        p.psi_minus_swapped = numerator_minus(th10, th01) / d;
    } else {
        auto d2 = d * d;
        auto e42 = e4 * e4;
        p.a = (e42 * e42 * Rational(25) - e6 * e6 * e4 * Rational(49)) / d2;
        p.b = e6 * e42 * Rational(48) / d2;
        p.c = (e6 * e6 * Rational(25) - e42 * e4 * Rational(49)) / d2;
        p.psi_minus = numerator_minus(th01, th10) / d2;
        p.psi_minus_swapped = numerator_minus(th10, th01) / d2;
    }
    p.psi_plus = p.a + p.b * e2 + p.c * e2 * e2;
    for (QSeries* s : {&p.psi_plus, &p.psi_minus, &p.a, &p.b, &p.c, &p.psi_minus_swapped}) {
        if (s->trunc() < trunc) throw NumericalError("internal truncation margin too small");
        *s = s->truncated(trunc);
    }
    return p;
}

QSeries named_form(const std::string& name, int trunc) {
    if (name.size() >= 2 && (name[0] == 'E' || name[0] == 'e') &&
        std::all_of(name.begin() + 1, name.end(), ::isdigit))
        return eisenstein(std::stoi(name.substr(1)), trunc);
    if (name == "delta" || name == "Delta") return delta(trunc);
    if (name == "theta01" || name == "Theta01") return theta01(trunc);
    if (name == "theta10" || name == "Theta10") return theta10(trunc);
    if (name == "leech_theta") return leech_theta(trunc);
    for (int n : {8, 24}) {
        std::string suffix = std::to_string(n);
        if (name == "psi_plus" + suffix) return psi_forms(n, trunc).psi_plus;
        if (name == "psi_minus" + suffix) return psi_forms(n, trunc).psi_minus;
    }
    throw InvalidArgument("unknown series '" + name + "'");
}

// ---- constants and S-transform ---------------------------------------------------

Constant Constant::operator*(const Constant& o) const {
    return {r * o.r, pi_power + o.pi_power, ((i_power + o.i_power) % 4 + 4) % 4};
}

Real Constant::real_part() const {
    int b = ((i_power % 4) + 4) % 4;
    if (b % 2) return Real(0);
    Real v = to_real(r) * pow(pi_real(), pi_power);
    return b == 2 ? Real(-v) : v;
}

Real Constant::imag_part() const {
    int b = ((i_power % 4) + 4) % 4;
    if (b % 2 == 0) return Real(0);
    Real v = to_real(r) * pow(pi_real(), pi_power);
    return b == 3 ? Real(-v) : v;
}

std::string Constant::str() const {
    std::string s = to_string(r);
    if (pi_power) s += "*pi^" + std::to_string(pi_power);
    int b = ((i_power % 4) + 4) % 4;
    if (b) s += "*i^" + std::to_string(b);
    return s;
}

STransform s_transform_terms(const PsiForms& psi) {
    // E2(-1/z) = z^2 E2(z) + kappa z with kappa = 6/(pi i) = -6i/pi; A, B, C have weights
    // -p, -p-2, -p-4 with p = n/2 - 2.
    Constant kappa{-6, -1, 1};
    STransform st;
    auto e2 = eisenstein(2, psi.psi_plus.trunc() + 64);
    QSeries bc = psi.b + psi.c * e2 * Rational(2);
    bc = bc.truncated(std::min(bc.trunc(), psi.psi_plus.trunc()));
    st.plus.push_back({psi.psi_plus, 2, Constant{1, 0, 0}});
    st.plus.push_back({bc, 1, kappa});
    st.plus.push_back({psi.c, 0, kappa * kappa});
    // Theta01(-1/z) = sqrt(z/i) Theta10(z), Theta10(-1/z) = sqrt(z/i) Theta01(z), Delta(-1/z) = z^12 Delta(z).
    int degree = psi.n == 8 ? 20 : 28;
    int delta_power = psi.n == 8 ? 1 : 2;
    int i_pow = ((-degree / 2) % 4 + 4) % 4;
    st.minus.push_back({psi.psi_minus_swapped, degree / 2 - 12 * delta_power, Constant{1, 0, i_pow}});
    return st;
}

STransform s_transform_terms(int n, int trunc) { return s_transform_terms(psi_forms(n, trunc)); }

// ---- envelopes and evaluation --------------------------------------------------

CoefficientEnvelope fit_envelope(const QSeries& s) {
    CoefficientEnvelope env{Real(0), Real(0), Real(0)};
    if (s.is_exact() || s.is_zero()) {
        Real mx = 0;
        for (auto& [e, c] : s.terms()) mx = std::max(mx, Real(abs(to_real(c))));
        env.C = mx;
        return env;
    }
    auto t = s.terms();
    int span = s.trunc() - s.min_exp();
    std::vector<std::pair<Real, Real>> pts;  // (sqrt j, log|c|)
    for (auto& [e, c] : t) {
        int j = e - s.min_exp();
        if (2 * j >= span) pts.emplace_back(sqrt(Real(j)), log(abs(to_real(c))));
    }
    Real a_fit = 0;
    if (pts.size() >= 3) {
        Real sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (auto& [x, y] : pts) {
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
        }
        Real m = Real(static_cast<long>(pts.size()));
        Real den = m * sxx - sx * sx;
        if (den != 0) a_fit = (m * sxy - sx * sy) / den;
    }
    env.a = a_fit > 0 ? Real(a_fit * Real("1.1") + Real("0.5")) : Real("0.5");
    Real mx = 0;
    for (auto& [e, c] : t) {
        int j = e - s.min_exp();
        Real ratio = abs(to_real(c)) / exp(env.a * sqrt(Real(j)));
        mx = std::max(mx, ratio);
    }
    env.C = 2 * mx;
    return env;
}

void check_envelope(const QSeries& s, const CoefficientEnvelope& env) {
    for (auto& [e, c] : s.terms()) {
        int j = e - s.min_exp();
        Real bound = env.C * pow(Real(1 + j), env.p) * exp(env.a * sqrt(Real(j)));
        if (abs(to_real(c)) > bound)
            throw ValidationError("coefficient envelope violated at exponent " + std::to_string(e) + "/8");
    }
}

SeriesEvaluator::SeriesEvaluator(const QSeries& s, std::optional<CoefficientEnvelope> env)
    : series_(s), env_(std::move(env)) {
    if (!env_) env_ = fit_envelope(s);
    check_envelope(s, *env_);
    step_ = s.exponent_gcd();
    if (!s.is_zero()) {
        std::size_t count = (s.coeffs().size() - 1) / static_cast<std::size_t>(step_) + 1;
        dense_.resize(count);
        for (std::size_t k = 0; k < count; ++k) dense_[k] = to_real(s.coeffs()[k * static_cast<std::size_t>(step_)]);
    }
}

Real SeriesEvaluator::tail_bound(const Real& x) const {
    if (series_.is_exact()) return Real(0);
    const auto& env = *env_;
    int m = series_.is_zero() ? series_.trunc() : series_.min_exp();
    int jj = series_.trunc() - m;
    if (jj < 0) jj = 0;
    Real j(jj);
    Real ratio = pow((j + 2) / (j + 1), env.p) * exp(env.a * (sqrt(j + 1) - sqrt(j))) * x;
    if (ratio >= 1) throw NumericalError("series tail bound is infinite at this argument (t below validity)");
    Real first = env.C * pow(j + 1, env.p) * exp(env.a * sqrt(j)) * pow(x, jj + m);
    return first / (1 - ratio);
}

EvalResult SeriesEvaluator::at_x_above(const Real& x, int cut) const {
    EvalResult r{Real(0), Real(0)};
    r.error = tail_bound(x);
    if (series_.is_zero()) return r;
    int m = series_.min_exp();
    long k0 = 0;
    if (cut >= m) k0 = (cut - m) / step_ + 1;
    if (k0 >= static_cast<long>(dense_.size())) return r;
    Real y = pow(x, step_);
    Real acc = 0, absacc = 0;
    for (long k = static_cast<long>(dense_.size()) - 1; k >= k0; --k) {
        acc = acc * y + dense_[static_cast<std::size_t>(k)];
        absacc = absacc * y + abs(dense_[static_cast<std::size_t>(k)]);
    }
    Real scale = pow(x, m + static_cast<int>(k0) * step_);
    r.value = acc * scale;
    Real eps = pow(Real(10), -static_cast<int>(current_digits()) + 3);
    r.error += absacc * scale * eps;
    return r;
}

EvalResult SeriesEvaluator::at_x(const Real& x) const {
    return at_x_above(x, std::numeric_limits<int>::min() / 2);
}

EvalResult evaluate_at_it(const QSeries& s, const Real& t, const EvalOptions& opt) {
    if (t < to_real(opt.t_min)) throw NumericalError("t below the validity bound of the series evaluation");
    SeriesEvaluator ev(s, opt.envelope);
    Real x = exp(-pi_real() * t / 4);
    return ev.at_x(x);
}

ComplexValue evaluate_terms_at_it(const std::vector<IntegrandTerm>& terms, const Real& t, Real* error) {
    ComplexValue v{Real(0), Real(0)};
    Real err = 0;
    for (auto& term : terms) {
        auto r = evaluate_at_it(term.series, t);
        Constant c = term.coefficient * Constant{1, 0, term.z_power};
        Real tm = pow(t, term.z_power);
        v.re += c.real_part() * tm * r.value;
        v.im += c.imag_part() * tm * r.value;
        err += abs(to_real(c.r) * pow(pi_real(), c.pi_power)) * tm * r.error;
    }
    if (error) *error = err;
    return v;
}

} // namespace spherepack
