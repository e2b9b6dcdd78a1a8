#include "test_main.hpp"

#include "spherepack/lattices.hpp"
#include "spherepack/lpbound.hpp"

#include <random>

using namespace spherepack;

namespace {

double dbl(const Real& x) { return x.convert_to<double>(); }

Real e8_density() { return pow(pi_real(), 4) / 384; }

LaguerreAnsatz random_ansatz(int n, int d, unsigned seed, double scale) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> u(0, scale);
    LaguerreAnsatz f;
    f.n = n;
    for (int k = 0; k < d; ++k) f.a.push_back(Real(u(rng)));
    return f;
}

} // namespace

TEST_CASE("Laguerre values") {
    PrecisionGuard g(40);
    CHECK(laguerre(0, Rational(7, 2), Real("0.3")) == 1);
    CHECK(abs(laguerre(1, Rational(7, 2), Real("0.3")) - Real("4.2")) < Real("1e-35"));
    CHECK(abs(laguerre(2, Rational(3), Real(0)) - 10) < Real("1e-35"));
    CHECK(laguerre(2, Rational(3), Rational(0)) == 10);
    // exact and floating modes agree, and the coefficient list reproduces both
    for (int k = 0; k <= 8; ++k) {
        Rational x(7, 3), alpha(11);
        Rational exact = laguerre(k, alpha, x);
        CHECK(abs(laguerre(k, alpha, to_real(x)) - to_real(exact)) < Real("1e-30"));
        auto c = laguerre_coefficients(k, alpha);
        Rational v = 0, p = 1;
        for (auto& ck : c) {
            v += ck * p;
            p *= x;
        }
        CHECK(v == exact);
    }
    CHECK_THROWS_AS(laguerre(-1, Rational(0), Real(1)), InvalidArgument);
}

TEST_CASE("ell and its derivative") {
    PrecisionGuard g(40);
    Real h("1e-12");
    for (int n : {1, 8, 24})
        for (int k : {1, 2, 5, 9}) {
            Real s("1.7");
            Real fd = (ell(n, k, s + h) - ell(n, k, s - h)) / (2 * h);
            CHECK(abs(fd - ell_derivative(n, k, s)) < Real("1e-10") * (1 + abs(fd)));
        }
}

TEST_CASE("Gaussian is the a = 0 ansatz") {
    PrecisionGuard g(40);
    LaguerreAnsatz f;
    f.n = 8;
    f.a.assign(5, Real(0));
    for (const char* r : {"0", "0.5", "1", "2.5"}) {
        Real x(r), gauss = exp(-pi_real() * x * x);
        CHECK(abs(ansatz_eval(Side::f, f, x) - gauss) < Real("1e-35"));
        CHECK(abs(ansatz_eval(Side::f_hat, f, x) - gauss) < Real("1e-35"));
    }
}

TEST_CASE("f_a(0) closed form") {
    PrecisionGuard g(40);
    for (int n : {1, 8, 24}) {
        auto f = random_ansatz(n, 6, 17u + static_cast<unsigned>(n), 1.0);
        Real expected = 1;
        for (int k = 1; k <= 6; ++k)
            expected += f.a[static_cast<std::size_t>(k - 1)] * to_real(Rational(factorial(static_cast<unsigned>(k)))) *
                        pow(pi_real(), -k) * to_real(binomial_rational(Rational(n, 2) - 1 + k, k));
        CHECK(abs(ansatz_at_zero(f) - expected) < Real("1e-30"));
        CHECK(abs(ansatz_eval(Side::f, f, Real(0)) - expected) < Real("1e-30"));
    }
}

TEST_CASE("f_a and f_hat_a are a Fourier pair") {
    PrecisionGuard g(30);
    for (int n : {1, 8}) {
        auto f = random_ansatz(n, 4, 5u + static_cast<unsigned>(n), 0.1);
        auto fa = [&](double r) { return dbl(ansatz_eval(Side::f, f, Real(r))); };
        for (double u : {0.0, 0.5, 1.0, 2.0}) {
            double o = radial_fourier_oracle(n, fa, u, OracleOptions{7.0});
            CHECK(std::abs(o - dbl(ansatz_eval(Side::f_hat, f, Real(u)))) < 1e-6);
        }
    }
}

TEST_CASE("Poisson summation for f_a on unimodular lattices") {
    PrecisionGuard g(40);
    for (auto lat : {e8(), zn(8)}) {
        auto counts = vectors_by_norm(lat, Rational(25));
        auto f = random_ansatz(8, 5, 3, 0.5);
        Real direct = 0, dual = 0;
        for (auto& [norm, c] : counts.counts) {
            Real r = sqrt(to_real(norm));
            direct += to_real(c) * ansatz_eval(Side::f, f, r);
            dual += to_real(c) * ansatz_eval(Side::f_hat, f, r);
        }
        // both lattices are self-dual; the omitted shells are below e^{-25 pi} times a polynomial
        CHECK(abs(direct - dual) < Real("1e-10"));
    }
}

TEST_CASE("simplex on small programs") {
    // max 3x + 2y, x + y <= 4, x + 3y <= 6  ->  x = 4, y = 0, value 12
    std::vector<std::vector<Rational>> A{{1, 1}, {1, 3}};
    auto s = simplex_max(A, std::vector<Rational>{4, 6}, std::vector<Rational>{3, 2}, Rational(0));
    CHECK(s.objective == 12);
    CHECK(s.x[0] == 4);
    CHECK(s.x[1] == 0);
    CHECK(s.duals[0] == 3);
    CHECK(s.duals[1] == 0);
    // max x + y, x - y <= 1 only: unbounded
    CHECK_THROWS_AS(simplex_max(std::vector<std::vector<Rational>>{{1, -1}}, std::vector<Rational>{1},
                                std::vector<Rational>{1, 1}, Rational(0)),
                    NumericalError);
    // equality form: max -x - y, x + 2y = 4, x - y = 1  ->  x = 2, y = 1
    auto e = simplex_max_eq(std::vector<std::vector<Rational>>{{1, 2}, {1, -1}}, std::vector<Rational>{4, 1},
                            std::vector<Rational>{-1, -1}, Rational(0));
    CHECK(e.objective == -3);
    CHECK(e.x[0] == 2);
    CHECK(e.x[1] == 1);
    // multipliers y with A^T y = c: y = (-2/3, -1/3)
    CHECK(e.duals[0] == Rational(-2, 3));
    CHECK(e.duals[1] == Rational(-1, 3));
    CHECK_THROWS_AS(simplex_max_eq(std::vector<std::vector<Rational>>{{1}, {1}}, std::vector<Rational>{1, 2},
                                   std::vector<Rational>{1}, Rational(0)),
                    NumericalError);
}

TEST_CASE("sampled LP") {
    auto one = sampled_lp(1, 6);
    CHECK(one.report.ok);
    CHECK(dbl(one.bound) >= 1.0);

    PrecisionGuard g(60);
    auto r = sampled_lp(8, 30);
    CHECK(r.report.ok);
    CHECK(r.bound >= e8_density());
    CHECK(r.bound <= Real("1.5") * e8_density());
    for (auto& a : r.ansatz.a) CHECK(a >= 0);

    // with the nonnegativity of a dropped, f_hat >= 0 is sampled instead
    SampledLpOptions free;
    free.nonnegative = false;
    auto rf = sampled_lp(8, 13, free);
    CHECK(rf.report.ok);
    CHECK(rf.bound >= e8_density());
    CHECK(rf.bound < r.bound);

    SampledLpOptions bad;
    bad.samples = {Real("0.5")};
    CHECK_THROWS_AS(sampled_lp(8, 4, bad), InvalidArgument);
}

TEST_CASE("sampled LP bound does not decrease on sample supersets") {
    PrecisionGuard g(60);
    std::vector<Real> base;
    for (int i = 0; i <= 20; ++i) base.push_back(1 + Real(i) / 4);
    SampledLpOptions o;
    o.refine_rounds = 0;
    Real last = 0;
    for (int extra = 0; extra <= 3; ++extra) {
        o.samples = base;
        for (int i = 0; i < 10 * extra; ++i) o.samples.push_back(1 + Real(2 * i + 1) / 80);
        auto r = sampled_lp(8, 8, o);
        CHECK(r.bound >= last - Real("1e-40"));
        last = r.bound;
    }
}

TEST_CASE("forced roots") {
    PrecisionGuard g(60);
    auto r = forced_roots_solve(8, 5, Real(1), {sqrt(Real(2))}, {sqrt(Real(2))});
    CHECK(r.residual <= Real("1e-12"));
    const auto& f = r.ansatz;
    Real h("1e-20");
    CHECK(abs(ansatz_eval(Side::f, f, Real(1))) < Real("1e-12"));
    for (Real z : {sqrt(Real(2))}) {
        CHECK(abs(ansatz_eval(Side::f, f, z)) < Real("1e-12"));
        CHECK(abs(ansatz_eval(Side::f, f, z + h) - ansatz_eval(Side::f, f, z - h)) / (2 * h) < Real("1e-12"));
        CHECK(abs(ansatz_eval(Side::f_hat, f, z)) < Real("1e-12"));
        CHECK(abs(ansatz_eval(Side::f_hat, f, z + h) - ansatz_eval(Side::f_hat, f, z - h)) / (2 * h) <
              Real("1e-12"));
    }
    CHECK(r.condition > 1);
    CHECK_THROWS_AS(forced_roots_solve(8, 6, Real(1), {sqrt(Real(2))}, {sqrt(Real(2))}), InvalidArgument);
    CHECK_THROWS_AS(forced_roots_solve(8, 3, Real(1), {Real(1)}, {}), NumericalError);
}

TEST_CASE("forced roots: simple root sqrt2, double root 2, f_hat double root sqrt2") {
    PrecisionGuard g(60);
    Real s2 = sqrt(Real(2)), h("1e-20");
    auto r = forced_roots_solve(8, 5, s2, {Real(2)}, {s2});
    CHECK(r.residual <= Real("1e-12"));
    CHECK(abs(ansatz_eval(Side::f, r.ansatz, s2)) < Real("1e-12"));
    CHECK(abs(ansatz_eval(Side::f, r.ansatz, Real(2))) < Real("1e-12"));
    CHECK(abs(ansatz_eval(Side::f, r.ansatz, 2 + h) - ansatz_eval(Side::f, r.ansatz, 2 - h)) / (2 * h) < Real("1e-12"));
    CHECK(abs(ansatz_eval(Side::f_hat, r.ansatz, s2)) < Real("1e-12"));
}

TEST_CASE("lattice root schedules") {
    PrecisionGuard g(40);
    auto s = lattice_schedule(8, 3, 2);
    CHECK(abs(s.r1 - 1) < Real("1e-30"));
    CHECK(abs(s.f[0] * s.f[0] - 2) < Real("1e-30"));
    CHECK(abs(s.f[2] * s.f[2] - 4) < Real("1e-30"));
    CHECK(abs(s.fhat[1] * s.fhat[1] - 8) < Real("1e-30"));
    auto u = lattice_schedule(24, 2, 2, true);
    CHECK(abs(u.r1 - 2) < Real("1e-30"));
    CHECK(abs(u.f[0] * u.f[0] - 6) < Real("1e-30"));
    CHECK(abs(u.fhat[0] * u.fhat[0] - 4) < Real("1e-30"));
    CHECK_THROWS_AS(lattice_schedule(16, 1, 1), InvalidArgument);
}

TEST_CASE("Newton refinement at n = 8") {
    PrecisionGuard g(60);
    auto s = lattice_schedule(8, 2, 2, true);
    auto r = newton_refine(8, 9, s);
    CHECK(r.solution.bound <= r.initial_bound);
    CHECK(r.solution.bound >= e8_density());
    CHECK(sign_check(r.solution.ansatz, s.r1).ok);

    auto big = newton_refine(8, 25, lattice_schedule(8, 6, 6, true));
    CHECK(sign_check(big.solution.ansatz, big.roots.r1).ok);
    CHECK(big.solution.bound >= e8_density());
    CHECK(big.solution.bound <= Real("1.01") * e8_density());
}

TEST_CASE("Newton refinement at n = 24") {
    PrecisionGuard g(60);
    Real leech = pow(pi_real(), 12) / to_real(Rational(factorial(12)));
    auto r = newton_refine(24, 27, lattice_schedule(24, 6, 7, true));
    CHECK(r.converged);
    CHECK(sign_check(r.solution.ansatz, r.roots.r1).ok);
    CHECK(r.solution.bound >= leech);
    CHECK(r.solution.bound <= Real("1.05") * leech);
}

TEST_CASE("roots read off an LP solution") {
    PrecisionGuard g(60);
    SampledLpOptions o;
    o.nonnegative = false;
    auto lp = sampled_lp(8, 13, o);
    auto s = roots_from_ansatz(lp.ansatz, Real(1));
    int d = 1 + 2 * static_cast<int>(s.f.size() + s.fhat.size());
    REQUIRE(d <= 13);
    auto nr = newton_refine(8, d, s);
    CHECK(nr.solution.bound >= e8_density());
    CHECK(abs(nr.solution.bound / lp.bound - 1) < Real("1e-2"));
}

TEST_CASE("PSD test") {
    RatMatrix I(3, std::vector<Rational>(3, Rational(0)));
    for (int i = 0; i < 3; ++i) I[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;
    CHECK(is_psd(I));
    RatMatrix rank1{{1, 2}, {2, 4}};
    CHECK(is_psd(rank1));
    RatMatrix indefinite{{1, 2}, {2, 1}};
    std::string why;
    CHECK_FALSE(is_psd(indefinite, &why));
    CHECK(why.find("negative pivot") != std::string::npos);
    RatMatrix zero_pivot{{0, 1}, {1, 1}};
    CHECK_FALSE(is_psd(zero_pivot));
}

TEST_CASE("toy SOS certificate") {
    auto cert = build_sos_certificate(1, 4);
    auto c = verify_sos(cert);
    CHECK(c.status == Status::verified);
    // soundness: the certified function passes the dense sign check
    {
        PrecisionGuard g(60);
        CHECK(sign_check(to_ansatz(cert), Real(1)).ok);
        CHECK(ansatz_bound(to_ansatz(cert), Real(1)) >= 1);
    }
    // JSON round trip
    auto back = sos_from_json(to_json(cert));
    CHECK(verify_sos(back).status == Status::verified);

    // every single-entry tampering is rejected
    int tried = 0, rejected = 0;
    for (auto which : {&SosCertificate::Q1, &SosCertificate::Q2})
        for (std::size_t i = 0; i <= static_cast<std::size_t>(cert.d); ++i)
            for (std::size_t j = 0; j <= static_cast<std::size_t>(cert.d); ++j) {
                SosCertificate t = cert;
                (t.*which)[i][j] += Rational(1, 1000);
                ++tried;
                if (verify_sos(t).status != Status::verified) ++rejected;
            }
    for (std::size_t k = 0; k < cert.c.size(); ++k) {
        SosCertificate t = cert;
        t.c[k] += Rational(1, 1000);
        ++tried;
        if (verify_sos(t).status != Status::verified) ++rejected;
    }
    CHECK(rejected == tried);

    // a symmetric perturbation keeps symmetry but breaks the identity, and says where
    SosCertificate t = cert;
    t.Q1[0][1] += 1;
    t.Q1[1][0] += 1;
    auto tc = verify_sos(t);
    CHECK(tc.status != Status::verified);
    bool named = false;
    for (auto& step : tc.log)
        if (!step.passed && step.bound.find("identity mismatch at coefficient of w^1") != std::string::npos) named = true;
    CHECK(named);
}

TEST_CASE("SDPA export") {
    auto text = export_sos_sdp(8, 3);
    CHECK(text == export_sos_sdp(8, 3));
    std::istringstream in(text);
    std::string line;
    std::vector<std::string> body;
    while (std::getline(in, line))
        if (!line.empty() && line[0] != '*') body.push_back(line);
    REQUIRE(body.size() > 4);
    CHECK(body[0] == "8");
    CHECK(body[1] == "3");
    CHECK(body[2] == "4 4 -3");
    CHECK(body[3] == "-1 0 0 0 0 0 0 0");
    CHECK(body[4].rfind("0 3 1 1 ", 0) == 0);
    CHECK_THROWS_AS(export_sos_sdp(8, 0), InvalidArgument);
    CHECK_THROWS_AS(export_sos_sdp(8, 3, Rational(22, 7)), InvalidArgument);
}
