#pragma once

#include "spherepack/certificate.hpp"
#include "spherepack/magic.hpp"
#include "spherepack/numeric.hpp"

#include <optional>

namespace spherepack {

// f_a(x) = (1 + sum_k a_k k! pi^{-k} L_k^{n/2-1}(pi |x|^2)) e^{-pi |x|^2}
// f_hat_a(u) = (1 + sum_k a_k |u|^{2k}) e^{-pi |u|^2}
struct LaguerreAnsatz {
    int n = 8;
    std::vector<Real> a;  // a[k-1] = a_k, k = 1..d
    int d() const { return static_cast<int>(a.size()); }
};

Real laguerre(int k, const Rational& alpha, const Real& x);
Rational laguerre(int k, const Rational& alpha, const Rational& x);
// Coefficients of L_k^alpha, lowest degree first.
std::vector<Rational> laguerre_coefficients(int k, const Rational& alpha);

// ell_k(s) = k! pi^{-k} L_k^{n/2-1}(pi s) and its s-derivative.
Real ell(int n, int k, const Real& s);
Real ell_derivative(int n, int k, const Real& s);

Real ansatz_eval(Side side, const LaguerreAnsatz& f, const Real& r);
Real ansatz_at_zero(const LaguerreAnsatz& f);
// f_a(0) * vol(B_n(r1/2)).
Real ansatz_bound(const LaguerreAnsatz& f, const Real& r1);

// Working precision for degree d.
unsigned lp_digits(int d);

struct SignReport {
    bool ok = false;
    Real max_f;        // max of f_a on [r1, r_max]
    Real at_f;
    Real min_fhat;     // min of f_hat_a on [0, r_max]
    Real at_fhat;
    bool tail_ok = false;  // sign of the leading polynomial term beyond r_max
    int points = 0;
};
struct SignCheckOptions {
    Rational r_max = 24;
    int points = 6000;
    double slack = 1e-12;  // relative to f_a(0)
};
SignReport sign_check(const LaguerreAnsatz& f, const Real& r1, const SignCheckOptions& opt = {});

// ---- linear programming ---------------------------------------------------------------

template <class T>
struct LpSolution {
    std::vector<T> x;       // primal point
    std::vector<T> duals;   // shadow prices of the constraints
    T objective;
    int iterations = 0;
    bool bland = false;     // switched to Bland's rule
};

// maximize c.x subject to A x <= b, x >= 0, with b >= 0 (the origin is feasible).
// Throws NumericalError when unbounded or when the iteration budget runs out.
template <class T>
LpSolution<T> simplex_max(const std::vector<std::vector<T>>& A, const std::vector<T>& b, const std::vector<T>& c,
                          const T& eps, int max_iterations = 20000);
// maximize c.x subject to A x = b, x >= 0 (two-phase). duals are the equality multipliers.
template <class T>
LpSolution<T> simplex_max_eq(const std::vector<std::vector<T>>& A, const std::vector<T>& b, const std::vector<T>& c,
                             const T& eps, int max_iterations = 20000);

struct SampledLpOptions {
    Rational r1 = 1;             // f_a <= 0 is imposed for r >= r1
    std::vector<Real> samples;   // radii >= r1; default grid (scaled by r1) when empty
    Rational grid_radius = 8;
    int grid_points = 400;
    Rational margin = 0;         // constraints p(r^2) <= -margin
    int refine_rounds = 12;      // add violated local maxima and re-solve
    // a >= 0 makes f_hat_a >= 0 automatically; otherwise f_hat_a >= 0 is imposed on a
    // uniform grid of grid_points radii in [0, grid_radius] and a is free.
    bool nonnegative = true;
    SignCheckOptions check;
};
struct SampledLpResult {
    LaguerreAnsatz ansatz;
    Real bound;
    SignReport report;
    int samples_used = 0;
    int rounds = 0;
    int iterations = 0;
};
std::vector<Real> default_samples(const Rational& radius, int points);
SampledLpResult sampled_lp(int n, int d, const SampledLpOptions& opt = {});

// ---- forced roots and Newton ---------------------------------------------------------------

struct ForcedRootsResult {
    LaguerreAnsatz ansatz;
    Real condition;     // 1-norm condition estimate of the linear system
    Real residual;      // largest constraint residual
    Real bound;
};
// Roots are radii; double_roots_fhat are radii of f_hat's double roots.
ForcedRootsResult forced_roots_solve(int n, int d, const Real& r1, const std::vector<Real>& double_roots_f,
                                     const std::vector<Real>& double_roots_fhat);

struct RootSchedule {
    Real r1 = 1;  // simple root of f
    std::vector<Real> f, fhat;
};
// Root pattern of the optimal lattice: its nonzero vector lengths for f and dual lengths
// for f_hat. Scaled so that r1 = 1 (E8/sqrt2, Leech/2), or unscaled (E8, Leech) when
// `unimodular` is set, which suits the fixed Gaussian far better at n = 24.
RootSchedule lattice_schedule(int n, int double_f, int double_fhat, bool unimodular = false);

// Double roots of an LP solution (grid local extrema that touch zero), as a starting
// point for Newton refinement.
RootSchedule roots_from_ansatz(const LaguerreAnsatz& f, const Real& r1, const Rational& r_max = 24,
                               int points = 20000);

struct NewtonOptions {
    int max_iterations = 40;
    double tolerance = 1e-12;  // on root perturbations
};
struct NewtonResult {
    RootSchedule roots;
    ForcedRootsResult solution;
    Real initial_bound;
    int iterations = 0;
    bool converged = false;
};
NewtonResult newton_refine(int n, int d, const RootSchedule& initial, const NewtonOptions& opt = {});

// ---- SOS certificates ---------------------------------------------------------------------

// With y0 <= pi rational and c_k = a_k pi^{-k}, the polynomial factor of f_a is the
// rational polynomial p(w) = 1 + sum_k c_k k! L_k^{n/2-1}(y0 w) in w = pi s / y0,
// and s >= 1 implies w >= 1. Certificate: -p(w) = b^T Q1 b + (w - 1) b^T Q2 b with
// b = (1, w, ..., w^d), Q1, Q2 PSD, and c >= 0 (so f_hat_a >= 0).
struct SosCertificate {
    int n = 1;
    int d = 1;
    Rational y0;
    std::vector<Rational> c;
    RatMatrix Q1, Q2;
};

std::vector<Rational> sos_polynomial(const SosCertificate& cert);  // p(w)
// Exact check of the identity, symmetry, PSD (pivoted LDL^T) and c >= 0.
Certificate verify_sos(const SosCertificate& cert);
// PSD test by pivoted rational LDL^T; on failure reports the offending step.
bool is_psd(const RatMatrix& Q, std::string* why = nullptr);

// Builds a certificate by rounding a sampled-LP solution and repairing it exactly.
SosCertificate build_sos_certificate(int n, int d, const Rational& margin = Rational(1, 20));
LaguerreAnsatz to_ansatz(const SosCertificate& cert);

// SDPA sparse (.dat-s) text of the SOS program for (n, d).
std::string export_sos_sdp(int n, int d, const Rational& y0 = Rational(314, 100));

nlohmann::json to_json(const SosCertificate& cert);
SosCertificate sos_from_json(const nlohmann::json& j);

} // namespace spherepack
