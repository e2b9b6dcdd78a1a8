#include "spherepack/numeric.hpp"

#include <mpfr.h>

#include <iomanip>
#include <sstream>

namespace spherepack {

PrecisionGuard::PrecisionGuard(unsigned digits) : saved_(Real::default_precision()) {
    Real::default_precision(digits);
}

PrecisionGuard::~PrecisionGuard() { Real::default_precision(saved_); }

unsigned current_digits() { return Real::default_precision(); }

Real pi_real() {
    Real p;
    mpfr_const_pi(p.backend().data(), MPFR_RNDN);
    return p;
}

Real to_real(const Rational& q) {
    return Real(numerator(q)) / Real(denominator(q));
}

Real to_real(const BigInt& z) { return Real(z); }

std::string to_string(const Rational& q) {
    if (denominator(q) == 1) return numerator(q).str();
    return numerator(q).str() + "/" + denominator(q).str();
}

std::string to_string(const BigInt& z) { return z.str(); }

std::string to_string(const Real& x, int digits) {
    return x.str(digits, std::ios_base::scientific);
}

Rational parse_rational(std::string_view s) {
    std::string str(s);
    auto slash = str.find('/');
    try {
        if (slash != std::string::npos) {
            BigInt n(str.substr(0, slash));
            BigInt d(str.substr(slash + 1));
            if (d == 0) throw InvalidArgument("zero denominator in rational '" + str + "'");
            return Rational(n, d);
        }
        auto dot = str.find('.');
        if (dot != std::string::npos) {
            std::string digits = str.substr(0, dot) + str.substr(dot + 1);
            BigInt n(digits.empty() || digits == "-" ? std::string("0") : digits);
            BigInt d = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(str.size() - dot - 1));
            return Rational(n, d);
        }
        return Rational(BigInt(str));
    } catch (const std::runtime_error&) {
        throw InvalidArgument("cannot parse rational '" + str + "'");
    }
}

BigInt factorial(unsigned n) {
    BigInt r = 1;
    for (unsigned i = 2; i <= n; ++i) r *= i;
    return r;
}

BigInt binomial(long n, long k) {
    if (k < 0 || n < 0 || k > n) return 0;
    BigInt r = 1;
    for (long i = 1; i <= k; ++i) {
        r *= n - k + i;
        r /= i;
    }
    return r;
}

Rational binomial_rational(const Rational& top, long k) {
    if (k < 0) return 0;
    Rational r = 1;
    for (long i = 0; i < k; ++i) r *= (top - i) / Rational(i + 1);
    return r;
}

Rational rationalize(const Real& x, const BigInt& cap) {
    Real y = x;
    BigInt p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    for (int iter = 0; iter < 400; ++iter) {
        Real fl = floor(y);
        BigInt a(fl.convert_to<Rational>());
        BigInt p2 = a * p1 + p0;
        BigInt q2 = a * q1 + q0;
        if (q2 > cap) break;
        p0 = p1; q0 = q1; p1 = p2; q1 = q2;
        Real frac = y - fl;
        if (frac == 0 || abs(frac) < Real(1e-300)) break;
        y = 1 / frac;
    }
    if (q1 == 0) return Rational(BigInt(floor(x).convert_to<Rational>()));
    return Rational(p1, q1);
}

namespace {
BigInt floor_div(const BigInt& a, const BigInt& b) {
    BigInt q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) q -= 1;
    return q;
}
} // namespace

Rational round_down(const Rational& q, unsigned bits) {
    BigInt scale = BigInt(1) << bits;
    BigInt n = floor_div(numerator(q) * scale, denominator(q));
    return Rational(n, scale);
}

Rational round_up(const Rational& q, unsigned bits) { return -round_down(-q, bits); }

Rational rat_pow(const Rational& base, unsigned e) {
    Rational r = 1, b = base;
    while (e) {
        if (e & 1u) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

Rational exact_rational(const Real& x) {
    if (!isfinite(x)) throw NumericalError("non-finite value has no rational form");
    if (x == 0) return Rational(0);
    BigInt m;
    mpfr_exp_t e = mpfr_get_z_2exp(m.backend().data(), x.backend().data());
    if (e >= 0) return Rational(m << static_cast<unsigned>(e));
    return Rational(m, BigInt(1) << static_cast<unsigned>(-e));
}

// 3.14159265358979323846264338327950288 < pi < ...9
Rational pi_lower() { return parse_rational("3.14159265358979323846264338327950288"); }
Rational pi_upper() { return parse_rational("3.14159265358979323846264338327950289"); }

} // namespace spherepack
