#pragma once

#include "spherepack/certificate.hpp"
#include "spherepack/lattices.hpp"
#include "spherepack/magic.hpp"
#include "spherepack/qseries.hpp"

#include <optional>

namespace spherepack {

struct RationalInterval {
    Rational lo, hi;

    RationalInterval() = default;
    RationalInterval(Rational lo, Rational hi);
    static RationalInterval point(const Rational& q) { return {q, q}; }

    bool contains(const Rational& q) const { return lo <= q && q <= hi; }
    bool contains(const RationalInterval& o) const { return lo <= o.lo && o.hi <= hi; }
    Rational width() const { return hi - lo; }
    std::string str() const;
};

RationalInterval operator+(const RationalInterval& a, const RationalInterval& b);
RationalInterval operator-(const RationalInterval& a, const RationalInterval& b);
RationalInterval operator*(const RationalInterval& a, const RationalInterval& b);
RationalInterval pow(const RationalInterval& a, unsigned e);
// Enclosure of exp over the interval; endpoints are dyadic with `bits` fractional bits.
RationalInterval exp(const RationalInterval& a, unsigned bits = 128);
RationalInterval pi_interval();
// Enclosure of the m-th root of a nonnegative interval.
RationalInterval nth_root(const RationalInterval& a, unsigned m, unsigned bits = 128);

// Dense polynomial with rational coefficients, lowest degree first.
using RatPoly = std::vector<Rational>;

void trim(RatPoly& p);
int degree(const RatPoly& p);
Rational eval(const RatPoly& p, const Rational& x);
RationalInterval eval(const RatPoly& p, const RationalInterval& x);
RatPoly derivative(const RatPoly& p);
// Remainder of a divided by b (b nonzero).
RatPoly remainder(const RatPoly& a, const RatPoly& b);
std::vector<RatPoly> sturm_chain(const RatPoly& p);
// Number of distinct real roots in the open interval (lo, hi). Roots sitting on an
// endpoint are divided out exactly first.
int sturm_count(const RatPoly& p, const RationalInterval& interval);

// Claim: series(q) > 0 for q in the interval (q = 0 excluded).
struct PositivityOptions {
    int head_terms = 300;
    // Envelope for coefficients beyond the truncation; fitted when absent.
    std::optional<CoefficientEnvelope> envelope;
};
Certificate certify_positive_tail(const QSeries& series, const RationalInterval& q_interval,
                                  const PositivityOptions& opt = {});

struct PoissonResult {
    Real direct;       // truncated sum over the lattice
    Real dual;         // covolume^{-1} * truncated sum over the dual
    Real tail_bound;   // bound on what the truncation dropped from either sum
    Real residual;     // |direct - dual| + tail_bound
};
// g(x) = exp(-pi |x|^2 / sigma^2), g_hat(y) = sigma^n exp(-pi sigma^2 |y|^2).
PoissonResult poisson_check(const LatticeDescription& lat, const Rational& sigma, const Rational& cutoff,
                            const EnumerationOptions& opt = {});

struct MagicCertifyOptions {
    std::optional<Rational> radius;  // R; 8 for n = 8, 10 for n = 24
    Rational grid_step{1, 50};
    double tol = 1e-6;                // normalization and Taylor coefficients
    double slack = 1e-9;              // grid sign slack
    double root_tol = 1e-8;           // values and derivatives at double roots
    double tail_margin = 10;          // far-tail dominance factor
    int head_terms = 300;             // q-series positivity instance
};
Certificate certify_magic(const MagicFunction& m, const MagicCertifyOptions& opt = {});
Certificate certify_magic(int n, const MagicConfig& cfg, const MagicCertifyOptions& opt = {});

// Exact r^2 Taylor coefficients of f and f_hat at the origin.
std::pair<Rational, Rational> taylor_targets(int n);

} // namespace spherepack
