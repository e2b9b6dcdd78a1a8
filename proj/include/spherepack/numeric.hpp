#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace spherepack {

using BigInt = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;
using Real = boost::multiprecision::mpfr_float;

using IntMatrix = std::vector<std::vector<BigInt>>;
using RatMatrix = std::vector<std::vector<Rational>>;

// Error hierarchy. The CLI maps these to exit codes.
struct InvalidArgument : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Sets the default mpfr precision (decimal digits) for its lifetime.
class PrecisionGuard {
public:
    explicit PrecisionGuard(unsigned digits);
    ~PrecisionGuard();
    PrecisionGuard(const PrecisionGuard&) = delete;
    PrecisionGuard& operator=(const PrecisionGuard&) = delete;

private:
    unsigned saved_;
};

unsigned current_digits();

Real pi_real();
Real to_real(const Rational& q);
Real to_real(const BigInt& z);

std::string to_string(const Rational& q);
std::string to_string(const BigInt& z);
// Fixed decimal rendering with `digits` significant digits.
std::string to_string(const Real& x, int digits = 20);
Rational parse_rational(std::string_view s);

BigInt factorial(unsigned n);
BigInt binomial(long n, long k);
Rational binomial_rational(const Rational& top, long k);

// Rational approximation of x by continued fractions with denominator <= cap.
Rational rationalize(const Real& x, const BigInt& cap);
// Dyadic outward rounding: round_down(q, b) <= q <= round_up(q, b), denominators 2^b.
Rational round_down(const Rational& q, unsigned bits);
Rational round_up(const Rational& q, unsigned bits);

Rational rat_pow(const Rational& base, unsigned e);
// The exact binary value of x.
Rational exact_rational(const Real& x);

// Known rational enclosure of pi.
Rational pi_lower();
Rational pi_upper();

} // namespace spherepack
