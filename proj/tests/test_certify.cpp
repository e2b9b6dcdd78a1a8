#include "test_main.hpp"

#include "spherepack/certify.hpp"

#include <random>

using namespace spherepack;

namespace {

RatPoly poly(std::initializer_list<long> c) {
    RatPoly p;
    for (long v : c) p.emplace_back(v);
    return p;
}

// Independent root count: bisection with interval exclusion, down to width 1e-6.
struct DoubleInterval {
    double lo, hi;
};

DoubleInterval horner(const std::vector<double>& c, DoubleInterval x) {
    DoubleInterval v{0, 0};
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        double p[4] = {v.lo * x.lo, v.lo * x.hi, v.hi * x.lo, v.hi * x.hi};
        v = {*std::min_element(p, p + 4) + *it, *std::max_element(p, p + 4) + *it};
        v.lo -= 1e-12 * (std::abs(v.lo) + 1);
        v.hi += 1e-12 * (std::abs(v.hi) + 1);
    }
    return v;
}

double point(const std::vector<double>& c, double x) {
    double v = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * x + *it;
    return v;
}

int bisect_count(const std::vector<double>& sf, const std::vector<double>& dsf, double a, double b) {
    auto v = horner(sf, {a, b});
    if (v.lo > 0 || v.hi < 0) return 0;
    auto d = horner(dsf, {a, b});
    bool monotone = d.lo > 0 || d.hi < 0;
    if (monotone) return (point(sf, a) > 0) != (point(sf, b) > 0) ? 1 : 0;
    if (b - a < 1e-6) return (point(sf, a) > 0) != (point(sf, b) > 0) ? 1 : 0;
    double m = (a + b) / 2;
    return bisect_count(sf, dsf, a, m) + bisect_count(sf, dsf, m, b) + (point(sf, m) == 0 ? 1 : 0);
}

RatPoly squarefree(const RatPoly& p) {
    // p / gcd(p, p')
    RatPoly a = p, b = derivative(p);
    while (degree(b) >= 0) {
        RatPoly r = remainder(a, b);
        a = b;
        b = r;
    }
    if (degree(a) == 0) return p;
    RatPoly q, rem = p;
    trim(rem);
    trim(a);
    q.assign(rem.size() - a.size() + 1, Rational(0));
    while (rem.size() >= a.size() && degree(rem) >= 0) {
        Rational f = rem.back() / a.back();
        std::size_t s = rem.size() - a.size();
        q[s] = f;
        for (std::size_t k = 0; k < a.size(); ++k) rem[k + s] -= f * a[k];
        trim(rem);
    }
    return q;
}

} // namespace

TEST_CASE("interval arithmetic encloses pointwise results") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> d(-40, 40);
    PrecisionGuard g(60);
    for (int i = 0; i < 50; ++i) {
        Rational a(d(rng), 7), b(d(rng), 5);
        RationalInterval A(std::min(a, b), std::max(a, b));
        RationalInterval B(Rational(d(rng), 3), Rational(d(rng), 3) + 20);
        Rational x = (A.lo + A.hi) / 2, y = B.lo + B.width() / 3;
        CHECK((A * B).contains(x * y));
        CHECK((A + B).contains(x + y));
        CHECK((A - B).contains(x - y));
        auto E = exp(A);
        Real ex = exp(to_real(x));
        CHECK(to_real(E.lo) <= ex);
        CHECK(ex <= to_real(E.hi));
    }
    auto e1 = exp(RationalInterval::point(1));
    CHECK(e1.width() < Rational(1, BigInt(1) << 100));
    CHECK(to_real(e1.lo) < exp(Real(1)));
    auto r = nth_root(RationalInterval(2, 3), 2);
    CHECK(r.lo * r.lo <= 2);
    CHECK(r.hi * r.hi >= 3);
    CHECK(pi_interval().contains(Rational(314159265358979, 100000000000000)) == false);
    CHECK(to_real(pi_interval().lo) < pi_real());
    CHECK_THROWS_AS(RationalInterval(1, 0), InvalidArgument);
}

TEST_CASE("Sturm counts on known polynomials") {
    CHECK(sturm_count(poly({-2, 0, 1}), {1, 2}) == 1);
    CHECK(sturm_count(poly({-2, 0, 1}), {-2, 2}) == 2);
    // (x-1)(x-2)(x-3)
    CHECK(sturm_count(poly({-6, 11, -6, 1}), {0, Rational(5, 2)}) == 2);
    // endpoint roots are not counted in the open interval
    CHECK(sturm_count(poly({2, -3, 1}), {1, 2}) == 0);
    CHECK(sturm_count(poly({2, -3, 1}), {0, 2}) == 1);
    // repeated roots count once
    CHECK(sturm_count(poly({1, -2, 1}), {0, 2}) == 1);
    CHECK(sturm_count(poly({5}), {0, 1}) == 0);
    CHECK_THROWS_AS(sturm_count(RatPoly{}, {0, 1}), InvalidArgument);
}

TEST_CASE("Sturm counts agree with bisection on random polynomials") {
    std::mt19937 rng(2024);
    std::uniform_int_distribution<int> coef(-9, 9), deg(1, 10);
    for (int trial = 0; trial < 100; ++trial) {
        RatPoly p;
        int dg = deg(rng);
        for (int k = 0; k <= dg; ++k) p.emplace_back(coef(rng));
        if (p.back() == 0) p.back() = 1;
        RationalInterval I(Rational(-10) + Rational(trial % 7, 13), Rational(10) - Rational(trial % 5, 11));
        RatPoly sf = squarefree(p);
        std::vector<double> c, dc;
        for (auto& v : sf) c.push_back(v.convert_to<double>());
        for (auto& v : derivative(sf)) dc.push_back(v.convert_to<double>());
        double a = I.lo.convert_to<double>(), b = I.hi.convert_to<double>();
        CAPTURE(trial);
        CHECK(sturm_count(p, I) == bisect_count(c, dc, a, b));
    }
}

TEST_CASE("certify_positive_tail on simple series") {
    QSeries one_plus_q(0, {Rational(1), 0, 0, 0, 0, 0, 0, 0, Rational(1)}, QSeries::exact);
    CHECK(certify_positive_tail(one_plus_q, {0, Rational(1, 2)}).status == Status::verified);
    QSeries one_minus_3q(0, {Rational(1), 0, 0, 0, 0, 0, 0, 0, Rational(-3)}, QSeries::exact);
    CHECK(certify_positive_tail(one_minus_3q, {Rational(1, 2), 1}).status == Status::refuted);

    // 1 - q + q^2 on [0, 1]: the crude tail bound needs all three terms
    QSeries s = QSeries::monomial(1, 0) - QSeries::monomial(1, 8) + QSeries::monomial(1, 16);
    PositivityOptions po;
    std::vector<Status> seen;
    for (int k = 1; k <= 4; ++k) {
        po.head_terms = k;
        seen.push_back(certify_positive_tail(s, {0, 1}, po).status);
    }
    CHECK(seen[0] == Status::inconclusive);
    CHECK(seen[2] == Status::verified);
    CHECK(seen[3] == Status::verified);
    CHECK_THROWS_AS(certify_positive_tail(s, {0, 2}), InvalidArgument);
}

TEST_CASE("q-series positivity for the n = 8 sign conditions") {
    auto psi = psi_forms(8);
    int needed = 0;
    PositivityOptions po;
    bool verified = false;
    for (int k = 1; k <= 300 && !verified; ++k) {
        po.head_terms = k;
        auto c = certify_positive_tail(psi.psi_minus, {0, Rational(1, 500)}, po);
        verified = c.status == Status::verified;
        needed = k;
        CHECK(c.status != Status::refuted);
    }
    CHECK(verified);
    MESSAGE("head terms needed: " << needed);
    // monotone in the number of head terms
    for (int k = needed; k < needed + 20; ++k) {
        po.head_terms = k;
        CHECK(certify_positive_tail(psi.psi_minus, {0, Rational(1, 500)}, po).status == Status::verified);
    }
    // the swapped form starts at q^{1/2} with a positive coefficient
    int first = 0;
    for (int k = 1; k <= 40; ++k) {
        po.head_terms = k;
        auto c = certify_positive_tail(psi.psi_minus_swapped, {0, Rational(1, 50)}, po);
        if (first == 0 && c.status == Status::verified) first = k;
        if (first != 0) CHECK(c.status == Status::verified);
    }
    CHECK(first > 0);
}

TEST_CASE("Poisson summation residuals") {
    CHECK(poisson_check(zn(1), 1, 25).residual < Real("1e-12"));
    CHECK(poisson_check(e8(), 1, 25).residual < Real("1e-12"));
    CHECK(poisson_check(zn(8), 1, 25).residual < Real("1e-10"));
    // non-self-dual lattice: sqrt(2) Z
    auto s2 = make_lattice("sqrt2z", {{BigInt(2)}}, 1);
    CHECK(poisson_check(s2, Rational(3, 2), 30).residual < Real("1e-12"));
    // residual shrinks with the cutoff until it reaches the floor
    Real prev = 10;
    for (int cut : {4, 8, 12, 16}) {
        Real r = poisson_check(e8(), 1, cut).residual;
        CHECK(r < prev);
        prev = r;
    }
    // the Leech sums agree exactly; the generic tail bound with cutoff 12 is loose
    auto lr = poisson_check(leech(), 1, 12);
    CHECK(abs(lr.direct - lr.dual) < Real("1e-30"));
    CHECK(lr.tail_bound < 1);
    CHECK_THROWS_AS(poisson_check(e8(), 0, 10), InvalidArgument);
}

TEST_CASE("magic certificates") {
    MagicConfig c;
    c.digits = 40;
    for (int n : {8, 24}) {
        auto cert = certify_magic(n, c);
        CAPTURE(cert.to_json().dump(1));
        CHECK(cert.status == Status::verified);
        for (auto& s : cert.log) CHECK((s.method == "exact" || s.method == "numerical"));
        MagicConfig cn = c;
        cn.n = n;
        MagicFunction m(cn);
        auto b = ce_bound_from_function(m, cert);
        Real expected = ball_volume(n, m.r1_squared() / 4).value();
        CHECK(abs(b.value / expected - 1) < Real("1e-12"));
    }
    c.flip_beta = true;
    auto bad = certify_magic(8, c);
    CHECK(bad.status == Status::refuted);
    CHECK_THROWS_AS(taylor_targets(16), InvalidArgument);
}
