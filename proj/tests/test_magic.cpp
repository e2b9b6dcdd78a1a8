#include "test_main.hpp"

#include "spherepack/magic.hpp"

#include <map>

using namespace spherepack;

namespace {

const MagicFunction& magic(int n, unsigned digits = 40) {
    static std::map<std::pair<int, unsigned>, MagicFunction> cache;
    auto key = std::make_pair(n, digits);
    auto it = cache.find(key);
    if (it == cache.end()) {
        MagicConfig c;
        c.n = n;
        c.digits = digits;
        it = cache.emplace(key, MagicFunction(c)).first;
    }
    return it->second;
}

double dbl(const Real& x) { return x.convert_to<double>(); }

Real sqrt_of(int k) { return sqrt(Real(k)); }

} // namespace

TEST_CASE("normalization f(0) = f_hat(0) = 1") {
    for (int n : {8, 24}) {
        const auto& m = magic(n);
        PrecisionGuard g(40);
        auto [f, fh] = m.eval_both(Real(0));
        CHECK(abs(f.value - 1) < Real("1e-20"));
        CHECK(abs(fh.value - 1) < Real("1e-20"));
        CHECK(f.error < Real("1e-12"));
    }
}

TEST_CASE("roots at sqrt(2k)") {
    for (int n : {8, 24}) {
        const auto& m = magic(n);
        PrecisionGuard g(40);
        int first = n == 8 ? 1 : 2;
        for (int k = first; k <= 6; ++k) {
            auto [f, fh] = m.eval_both(sqrt_of(2 * k));
            CHECK(abs(f.value) < Real("1e-20"));
            CHECK(abs(fh.value) < Real("1e-20"));
        }
    }
    // for n = 24 the point sqrt(2) is not a root of f
    PrecisionGuard g(40);
    CHECK(abs(magic(24).eval(Side::f, sqrt_of(2)).value - Real(1) / 156) < Real("1e-12"));
}

TEST_CASE("double roots and the simple root at r1 for n = 8") {
    const auto& m = magic(8);
    PrecisionGuard g(40);
    CHECK(dbl(derivative(m, Side::f, sqrt_of(2)).value) < -1e-2);
    CHECK(std::abs(dbl(derivative(m, Side::f_hat, sqrt_of(2)).value)) < 1e-8);
    for (int k = 2; k <= 4; ++k) {
        CHECK(std::abs(dbl(derivative(m, Side::f, sqrt_of(2 * k)).value)) < 1e-8);
        CHECK(std::abs(dbl(derivative(m, Side::f_hat, sqrt_of(2 * k)).value)) < 1e-8);
    }
}

TEST_CASE("n = 24 derivative at r1 = 2 is small but nonzero") {
    const auto& m = magic(24);
    PrecisionGuard g(40);
    auto d = derivative(m, Side::f, Real(2));
    CHECK(std::abs(dbl(d.value) + 1.0 / 16380) < 1e-10);
    CHECK(std::abs(dbl(derivative(m, Side::f_hat, Real(2)).value)) < 1e-8);
    CHECK(std::abs(dbl(derivative(m, Side::f, sqrt_of(6)).value)) < 1e-8);
}

TEST_CASE("Taylor coefficients at the origin") {
    PrecisionGuard g(40);
    auto a8 = taylor_quadratic(magic(8), Side::f), b8 = taylor_quadratic(magic(8), Side::f_hat);
    CHECK(std::abs(dbl(a8.value) + 2.7) < 1e-8);
    CHECK(std::abs(dbl(b8.value) + 1.5) < 1e-8);
    auto a24 = taylor_quadratic(magic(24), Side::f), b24 = taylor_quadratic(magic(24), Side::f_hat);
    CHECK(std::abs(dbl(a24.value) + 14347.0 / 5460) < 1e-8);
    CHECK(std::abs(dbl(b24.value) + 205.0 / 156) < 1e-8);
    CHECK(a8.error < Real("1e-6"));
}

TEST_CASE("density bounds") {
    PrecisionGuard g(40);
    auto b8 = cohn_elkies_bound(8, magic(8).eval(Side::f, Real(0)), 2);
    Real pi = pi_real();
    CHECK(abs(b8.value / (pow(pi, 4) / 384) - 1) < Real("1e-15"));
    auto b24 = cohn_elkies_bound(24, magic(24).eval(Side::f, Real(0)), 4);
    CHECK(abs(b24.value / (pow(pi, 12) / to_real(Rational(factorial(12)))) - 1) < Real("1e-15"));
    Certificate unverified;
    CHECK_THROWS_AS(ce_bound_from_function(magic(8), unverified), ValidationError);
}

TEST_CASE("split point does not change values") {
    for (int n : {8, 24}) {
        std::vector<MagicFunction> fs;
        for (Rational t : {Rational(3, 4), Rational(1), Rational(3, 2)}) {
            MagicConfig c;
            c.n = n;
            c.digits = 40;
            c.t_split = t;
            fs.emplace_back(c);
        }
        PrecisionGuard g(40);
        for (const char* r : {"0.3", "1", "1.7", "2.9"}) {
            auto ref = fs[1].eval_both(Real(r));
            for (int i : {0, 2}) {
                auto v = fs[i].eval_both(Real(r));
                CHECK(abs(v.first.value - ref.first.value) < Real("1e-13"));
                CHECK(abs(v.second.value - ref.second.value) < Real("1e-13"));
            }
        }
    }
}

TEST_CASE("Fourier oracle reproduces the Gaussian") {
    for (int n : {1, 8, 24}) {
        auto gauss = [](double r) { return std::exp(-M_PI * r * r); };
        for (double u : {0.0, 0.5, 1.0, std::sqrt(2.0)})
            CHECK(std::abs(radial_fourier_oracle(n, gauss, u) - std::exp(-M_PI * u * u)) < 1e-12);
    }
    CHECK_THROWS_AS(radial_fourier_oracle(8, [](double) { return 0.0; }, -1), InvalidArgument);
}

TEST_CASE("Fourier oracle: eigenvalues and the pair (f, f_hat)") {
    for (int n : {8, 24}) {
        const auto& m = magic(n, 24);
        PrecisionGuard g(24);
        std::map<double, std::pair<double, double>> cache;  // r -> (alpha f+, beta f-)
        auto sample = [&](double r) -> const std::pair<double, double>& {
            auto it = cache.find(r);
            if (it == cache.end()) {
                auto [a, b] = m.parts(Real(r));
                it = cache.emplace(r, std::make_pair(dbl(a.value), dbl(b.value))).first;
            }
            return it->second;
        };
        auto plus = [&](double r) { return sample(r).first; };
        auto minus = [&](double r) { return sample(r).second; };
        auto f = [&](double r) { return sample(r).first + sample(r).second; };
        // r^{n-1} weights the n = 24 tail heavily, so integrate further out
        OracleOptions opt;
        opt.rmax = n == 8 ? 6 : 8;
        for (double u : {0.0, 1.0, std::sqrt(2.0), 2.0}) {
            auto [a, b] = m.parts(Real(u));
            CHECK(std::abs(radial_fourier_oracle(n, plus, u, opt) - dbl(a.value)) < 1e-9);
            CHECK(std::abs(radial_fourier_oracle(n, minus, u, opt) + dbl(b.value)) < 1e-9);
            CHECK(std::abs(radial_fourier_oracle(n, f, u, opt) - dbl(m.eval(Side::f_hat, Real(u)).value)) < 1e-9);
        }
    }
}

TEST_CASE("printed n = 8 beta loses the double root of f_hat") {
    MagicConfig c;
    c.digits = 40;
    c.table_beta = true;
    MagicFunction printed(c);
    PrecisionGuard g(40);
    CHECK(std::abs(dbl(derivative(printed, Side::f_hat, sqrt_of(2)).value)) > 1e-3);
    CHECK(abs(printed.beta_real() + 2 * magic(8).beta_real()) < Real("1e-30"));
    c.table_beta = false;
    c.flip_beta = true;
    MagicFunction flipped(c);
    CHECK(abs(flipped.beta_real() + magic(8).beta_real()) < Real("1e-30"));
}

TEST_CASE("eigenfunction f- vanishes at r = 2 for n = 8") {
    PrecisionGuard g(40);
    CHECK(abs(magic(8).eigenfunction(-1, Real(2)).value) < Real("1e-20"));
    CHECK(abs(magic(8).eigenfunction(-1, Real("1.9")).value) > Real("1e-6"));
}

TEST_CASE("far tail is dominated by the leading small-t term") {
    for (int n : {8, 24}) {
        PrecisionGuard g(40);
        for (double r : {8.0, 10.0, 16.0}) {
            auto s = magic(n).tail_split(Side::f, Real(r));
            auto h = magic(n).tail_split(Side::f_hat, Real(r));
            CHECK(s.leading < 0);
            CHECK(h.leading > 0);
            CHECK(abs(s.leading) > 10 * s.rest_bound);
            CHECK(abs(h.leading) > 10 * h.rest_bound);
        }
    }
    PrecisionGuard g(40);
    CHECK_THROWS_AS(magic(24).tail_split(Side::f, Real("0.5")), InvalidArgument);
}

TEST_CASE("invalid configurations") {
    MagicConfig c;
    c.n = 16;
    CHECK_THROWS_AS(MagicFunction{c}, InvalidArgument);
    c.n = 8;
    c.digits = 5;
    CHECK_THROWS_AS(MagicFunction{c}, InvalidArgument);
    c.digits = 40;
    c.t_split = 0;
    CHECK_THROWS_AS(MagicFunction{c}, InvalidArgument);
}
