#pragma once

#include "spherepack/numeric.hpp"

#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace spherepack {

// Truncated Laurent series sum_e c_e q^{e/8}. Terms with e >= trunc are unknown.
class QSeries {
public:
    static constexpr int exact = std::numeric_limits<int>::max() / 4;

    QSeries() = default;  // exact zero
    QSeries(int min_exp, std::vector<Rational> coeffs, int trunc = exact);
    static QSeries monomial(const Rational& c, int exp, int trunc = exact);
    static QSeries constant(const Rational& c, int trunc = exact) { return monomial(c, 0, trunc); }

    bool is_zero() const { return coeffs_.empty(); }
    bool is_exact() const { return trunc_ >= exact; }
    int trunc() const { return trunc_; }
    // Leading exponent; for a zero series, its truncation (the order is at least that).
    int order() const { return is_zero() ? trunc_ : min_exp_; }
    int min_exp() const { return min_exp_; }
    // Largest stored exponent + 1.
    int end_exp() const { return min_exp_ + static_cast<int>(coeffs_.size()); }
    Rational coeff(int e) const;
    const std::vector<Rational>& coeffs() const { return coeffs_; }
    // Nonzero terms in ascending exponent order.
    std::vector<std::pair<int, Rational>> terms() const;
    int exponent_gcd() const;

    QSeries truncated(int new_trunc) const;
    QSeries shifted(int de) const;  // multiply by q^{de/8}
    QSeries operator-() const;
    QSeries operator*(const Rational& s) const;

    friend QSeries operator+(const QSeries& a, const QSeries& b);
    friend QSeries operator-(const QSeries& a, const QSeries& b);
    friend QSeries operator*(const QSeries& a, const QSeries& b);
    friend QSeries operator/(const QSeries& a, const QSeries& b);

    bool operator==(const QSeries& o) const;

    std::string str(int max_terms = 8) const;
    std::string csv() const;

private:
    void normalize();
    int min_exp_ = 0;
    std::vector<Rational> coeffs_;
    int trunc_ = exact;
};

QSeries pow(const QSeries& a, unsigned k);
QSeries inverse(const QSeries& a);
// Exact division with an explicit cap on the result truncation (needed when both are exact).
QSeries divide(const QSeries& a, const QSeries& b, int max_trunc);

Rational bernoulli(int k);
// zeta(1 - k) = -B_k / k
Rational zeta_at_negative(int k);

constexpr int default_trunc = 300;

QSeries eisenstein(int k, int trunc = default_trunc);
QSeries delta(int trunc = default_trunc);
QSeries delta_product(int trunc = default_trunc);
QSeries theta01(int trunc = default_trunc);
QSeries theta10(int trunc = default_trunc);
QSeries leech_theta(int trunc = default_trunc);
// Names: E2, E4, E6, ..., delta, theta01, theta10, leech_theta, psi_plus8, psi_minus8, ...
QSeries named_form(const std::string& name, int trunc = default_trunc);

struct PsiForms {
    int n = 0;
    QSeries psi_plus, psi_minus;
    // psi_plus = A + B E2 + C E2^2, with A, B, C modular.
    QSeries a, b, c;
    // psi_minus with Theta01 and Theta10 swapped (its image under z -> -1/z up to a power of z).
    QSeries psi_minus_swapped;
};
PsiForms psi_forms(int n, int trunc = default_trunc);

// Exact constant rational * pi^pi_power * i^i_power.
struct Constant {
    Rational r = 1;
    int pi_power = 0;
    int i_power = 0;  // mod 4
    Constant operator*(const Constant& o) const;
    Real real_part() const;
    Real imag_part() const;
    bool is_real() const { return r == 0 || i_power % 2 == 0; }
    std::string str() const;
};

// coefficient * z^{z_power} * series(z)
struct IntegrandTerm {
    QSeries series;
    int z_power = 0;
    Constant coefficient;
};

struct STransform {
    // psi_plus(-1/z) z^{n/2-2} = sum of plus terms, valid for Im z large.
    std::vector<IntegrandTerm> plus;
    // psi_minus(-1/z) = sum of minus terms.
    std::vector<IntegrandTerm> minus;
};
STransform s_transform_terms(const PsiForms& psi);
STransform s_transform_terms(int n, int trunc = default_trunc);

// |c_{min+j}| <= C (1+j)^p exp(a sqrt(j)) for all j >= 0.
struct CoefficientEnvelope {
    Real C, p, a;
};
CoefficientEnvelope fit_envelope(const QSeries& s);
// Throws ValidationError if a stored coefficient violates the envelope.
void check_envelope(const QSeries& s, const CoefficientEnvelope& env);

struct EvalResult {
    Real value;
    Real error;
};

// Fast repeated evaluation of one series at x = q^{1/8} with tail bounds.
class SeriesEvaluator {
public:
    SeriesEvaluator() = default;
    explicit SeriesEvaluator(const QSeries& s, std::optional<CoefficientEnvelope> env = std::nullopt);
    // Evaluates at x in (0, 1); throws NumericalError when the tail bound is infinite.
    EvalResult at_x(const Real& x) const;
    // Same with only terms of exponent > cut (the rest are removed).
    EvalResult at_x_above(const Real& x, int cut) const;
    const QSeries& series() const { return series_; }
    Real tail_bound(const Real& x) const;

private:
    QSeries series_;
    std::vector<Real> dense_;  // coefficient of y^k, y = x^step, exponent min + k*step
    int step_ = 1;
    std::optional<CoefficientEnvelope> env_;
};

struct EvalOptions {
    Rational t_min = Rational(1, 2);
    std::optional<CoefficientEnvelope> envelope;
};

EvalResult evaluate_at_it(const QSeries& s, const Real& t, const EvalOptions& opt = {});

struct ComplexValue {
    Real re, im;
};
// sum of terms evaluated at z = i t (t >= t_min), with error bound on both parts.
ComplexValue evaluate_terms_at_it(const std::vector<IntegrandTerm>& terms, const Real& t, Real* error = nullptr);

} // namespace spherepack
