#pragma once

#include "spherepack/certificate.hpp"
#include "spherepack/qseries.hpp"
#include "spherepack/quadrature.hpp"

#include <functional>
#include <map>

namespace spherepack {

enum class Side { f, f_hat };

struct CertifiedValue {
    Real value;
    Real error;
};

struct MagicConfig {
    int n = 8;
    unsigned digits = 60;
    int trunc = default_trunc;
    Rational t_split = 1;
    unsigned gl_order = 20;
    std::string target = "1e-15";
    // Use the printed beta for n = 8 instead of the corrected one (diagnostics).
    bool table_beta = false;
    // Sabotage switch for certificate tests.
    bool flip_beta = false;
};

// One integrand piece: K * t^power * S(x) where x = e^{-pi/(4t)} (inverted) or e^{-pi t/4}.
struct RealTerm {
    Constant k;  // real constant
    int t_power = 0;
    SeriesEvaluator series;
    SeriesEvaluator abs_series;  // |coefficients|, for bounds
};

struct EigenPipeline {
    int sign = 1;
    std::vector<RealTerm> small;  // on (0, t*], series evaluated at i/t
    std::vector<RealTerm> large;  // on [t*, inf), series evaluated at it
    // f_sign = factor * (the t-integral), factor = +-4 sin^2(pi r^2/2)
    int outer_sign = 1;
};

// Integrals of one eigenfunction at a point, split by region.
struct EigenParts {
    CertifiedValue small;   // sin^2 * integral over (0, t*]
    CertifiedValue large;   // sin^2 * remainder integral over [t*, inf)
    CertifiedValue closed;  // sin^2 * closed-form non-decaying terms
    CertifiedValue total() const;
};

class MagicFunction {
public:
    explicit MagicFunction(const MagicConfig& cfg);

    const MagicConfig& config() const { return cfg_; }
    int n() const { return cfg_.n; }
    Rational r1_squared() const { return cfg_.n == 8 ? 2 : 4; }
    Real r1() const;
    // Published alpha, beta constants and the real factors multiplying the real-normalized F+- = f+- / i.
    Constant alpha() const { return alpha_; }
    Constant beta() const { return beta_; }
    Real alpha_real() const { return alpha_real_; }
    Real beta_real() const { return beta_real_; }

    // Real-normalized eigenfunction F+-(r) = f+-(r) / i.
    CertifiedValue eigenfunction(int sign, const Real& r) const;
    EigenParts eigen_parts(int sign, const Real& r) const;
    // alpha f+ and beta f- as real values.
    std::pair<CertifiedValue, CertifiedValue> parts(const Real& r) const;
    CertifiedValue eval(Side side, const Real& r) const;
    std::pair<CertifiedValue, CertifiedValue> eval_both(const Real& r) const;

    const EigenPipeline& pipeline(int sign) const { return sign > 0 ? plus_ : minus_; }
    const PsiForms& psi() const { return psi_; }

    // Quantities for the far-tail sign argument at radius r: the leading small-t
    // term of the dominant component and a bound on everything else (both for the
    // bracket multiplying sin^2, combined with alpha/beta for the given side).
    struct TailSplit {
        Real leading;
        Real rest_bound;
    };
    TailSplit tail_split(Side side, const Real& r) const;

private:
    CertifiedValue integrate_region(const std::vector<RealTerm>& terms, bool inverted, const Real& a, const Real& b,
                                    const Real& r2, int cut) const;
    CertifiedValue closed_forms(const EigenPipeline& p, const Real& r2) const;
    void check_poles(const EigenPipeline& p) const;

    MagicConfig cfg_;
    PsiForms psi_;
    EigenPipeline plus_, minus_;
    Constant alpha_, beta_;
    Real alpha_real_, beta_real_;
    Real t_split_;
    AdaptiveOptions quad_;
};

// Richardson-extrapolated r^2 coefficient of the Taylor expansion at 0.
CertifiedValue taylor_quadratic(const MagicFunction& m, Side side);
// Richardson-extrapolated central difference.
CertifiedValue derivative(const MagicFunction& m, Side side, const Real& r);

// density bound f(0) * vol(B_n(r1/2)).
CertifiedValue cohn_elkies_bound(int n, const CertifiedValue& f0, const Rational& r1_squared);
// Requires a verified sign certificate.
CertifiedValue ce_bound_from_function(const MagicFunction& m, const Certificate& sign_certificate);

struct OracleOptions {
    double rmax = 6.0;  // f is treated as zero beyond rmax
};
// n-dimensional Fourier transform of a radial function, evaluated at radius u.
double radial_fourier_oracle(int n, const std::function<double(double)>& f, double u, const OracleOptions& opt = {});

} // namespace spherepack
