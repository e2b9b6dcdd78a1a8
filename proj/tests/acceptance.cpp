// Acceptance run: one PASS/FAIL line per criterion.
//
// usage: acceptance <path to the spherepack binary>
//
// A criterion marked XFAIL contains a sub-check that no correct implementation can meet
// (the target contradicts the mathematics). It is reported as FAIL with the reason and does
// not make the run exit nonzero; any other failure does.

#include "spherepack/certify.hpp"
#include "spherepack/codes.hpp"
#include "spherepack/lattices.hpp"
#include "spherepack/lpbound.hpp"
#include "spherepack/magic.hpp"
#include "spherepack/qseries.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

using namespace spherepack;

namespace {

// ---- pinned tolerances ----
const char* const tol_modular = "1e-10";
const char* const tol_poisson_unimodular = "1e-10";
const char* const tol_poisson_leech = "1e-8";
const char* const tol_normalization = "1e-6";
const char* const tol_roots = "1e-6";
const char* const tol_double_root_derivative = "1e-5";
const char* const min_simple_root_derivative = "1e-2";
const char* const tol_taylor = "1e-3";
const char* const tol_bound_relative = "1e-6";
const char* const lp_sampled_max_ratio = "1.5";
const char* const lp_newton_max_ratio = "1.01";
const unsigned magic_digits = 60;
const int magic_trunc = 300;

struct Criterion {
    int id;
    std::string title;
    std::vector<std::string> failures;
    std::vector<std::string> expected;  // failures known to be unattainable
    std::vector<std::string> notes;

    void check(bool ok, const std::string& what) {
        if (!ok) failures.push_back(what);
    }
    // A sub-check whose target is mathematically unreachable.
    void check_unattainable(bool ok, const std::string& what, const std::string& why) {
        if (ok)
            notes.push_back("unexpectedly met: " + what);
        else
            expected.push_back(what + " [" + why + "]");
    }
};

std::vector<Criterion> results;

template <class F>
void run(int id, const std::string& title, F body) {
    Criterion c{id, title, {}, {}, {}};
    auto t0 = std::chrono::steady_clock::now();
    try {
        body(c);
    } catch (const std::exception& e) {
        c.failures.push_back(std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool pass = c.failures.empty() && c.expected.empty();
    std::ostringstream line;
    line << (pass ? "PASS" : "FAIL") << "  criterion " << id << ": " << title << " (" << std::fixed
         << std::setprecision(1) << secs << " s)";
    if (!c.failures.empty()) {
        line << "\n        failed:";
        for (auto& f : c.failures) line << "\n          - " << f;
    }
    if (!c.expected.empty()) {
        line << "\n        XFAIL (known unattainable):";
        for (auto& f : c.expected) line << "\n          - " << f;
    }
    for (auto& n : c.notes) line << "\n        note: " << n;
    std::cout << line.str() << std::endl;
    results.push_back(c);
}

Real num(const char* s) { return Real(s); }

std::string sci(const Real& x) { return to_string(x, 4); }

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

bool step_passed(const Certificate& c, const std::string& statement_prefix) {
    for (auto& s : c.log)
        if (s.statement.rfind(statement_prefix, 0) == 0) return s.passed;
    return false;
}

void magic_criterion(Criterion& c, int n) {
    MagicConfig cfg;
    cfg.n = n;
    cfg.digits = magic_digits;
    cfg.trunc = magic_trunc;
    MagicFunction m(cfg);
    PrecisionGuard g(magic_digits);
    Real r1 = m.r1();
    auto [f0, fh0] = m.eval_both(Real(0));
    c.check(abs(f0.value - 1) <= num(tol_normalization), "|f(0) - 1| = " + sci(abs(f0.value - 1)));
    c.check(abs(fh0.value - 1) <= num(tol_normalization), "|f_hat(0) - 1| = " + sci(abs(fh0.value - 1)));
    // the first two vector lengths: r1 and the next shell
    Real r2 = sqrt(to_real(m.r1_squared() + 2));
    for (const Real& r : {r1, r2}) {
        auto [f, fh] = m.eval_both(r);
        c.check(abs(f.value) <= num(tol_roots), "|f(" + to_string(r, 6) + ")| = " + sci(abs(f.value)));
        c.check(abs(fh.value) <= num(tol_roots), "|f_hat(" + to_string(r, 6) + ")| = " + sci(abs(fh.value)));
    }
    Real d2 = derivative(m, Side::f, r2).value;
    c.check(abs(d2) <= num(tol_double_root_derivative), "|f'(" + to_string(r2, 6) + ")| = " + sci(abs(d2)));
    Real d1 = derivative(m, Side::f, r1).value;
    std::string what = "|f'(r1)| = " + sci(abs(d1)) + " >= " + min_simple_root_derivative;
    if (n == 8)
        c.check(abs(d1) >= num(min_simple_root_derivative), what);
    else
        c.check_unattainable(abs(d1) >= num(min_simple_root_derivative), what,
                             "the exact value is f'(2) = -1/16380 = -6.105e-5");
    if (n == 24) c.check(abs(d1 + Real(1) / 16380) <= num("1e-8"), "f'(2) = -1/16380: got " + sci(d1));
    auto [tf, tfh] = taylor_targets(n);
    Real cf = taylor_quadratic(m, Side::f).value, cfh = taylor_quadratic(m, Side::f_hat).value;
    c.check(abs(cf - to_real(tf)) <= num(tol_taylor), "f Taylor coefficient " + to_string(cf, 10) + " vs " + to_string(tf));
    c.check(abs(cfh - to_real(tfh)) <= num(tol_taylor),
            "f_hat Taylor coefficient " + to_string(cfh, 10) + " vs " + to_string(tfh));
    auto cert = certify_magic(m);
    c.check(cert.status == Status::verified, "certify_magic status " + to_string(cert.status));
    c.check(step_passed(cert, "f <= slack on [r1, R]"), "grid sign check of f on [r1, R]");
    c.check(step_passed(cert, "f_hat >= -slack on [0, R]"), "grid sign check of f_hat on [0, R]");
    Real optimal = n == 8 ? pow(pi_real(), 4) / 384 : pow(pi_real(), 12) / to_real(Rational(factorial(12)));
    if (cert.status == Status::verified) {
        Real bound = ce_bound_from_function(m, cert).value;
        c.check(abs(bound / optimal - 1) <= num(tol_bound_relative),
                "certified bound " + to_string(bound, 15) + " vs optimal " + to_string(optimal, 15));
    }
}

} // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: acceptance <spherepack binary>\n";
        return 2;
    }
    const std::string cli = argv[1];

    run(1, "exact codes and lattices", [](Criterion& c) {
        auto we = weight_enumerator(hamming8());
        c.check(we.counts == std::map<int, std::uint64_t>{{0, 1}, {4, 14}, {8, 1}}, "Hamming weight enumerator");
        auto gp = code_properties(golay24());
        c.check(gp.self_dual && gp.doubly_even, "Golay code self-dual and doubly even");
        auto e8c = vectors_by_norm(e8(), 6);
        c.check(e8c.count_at(2) == 240 && e8c.count_at(4) == 2160 && e8c.count_at(6) == 6720, "E8 shells 240, 2160, 6720");
        auto lc = vectors_by_norm(leech(), 6);
        c.check(lc.count_at(2) == 0, "Leech has no norm-2 vectors");
        c.check(lc.count_at(4) == 196560, "Leech kissing number 196560");
        c.check(lc.count_at(6) == 16773120, "Leech norm-6 shell 16773120");
        auto lp = lattice_properties(leech());
        c.check(lp.min_sq_norm == 4 && lp.kissing == 196560, "Leech minimum 4 with kissing 196560");
        c.check(covolume(e8()).str() == "1", "covolume(E8) = 1");
        c.check(covolume(leech()).str() == "1", "covolume(Leech) = 1");
    });

    run(2, "theta series equal modular forms through q^5", [](Criterion& c) {
        auto e4 = eisenstein(4, 64);
        auto leech_form = pow(eisenstein(4, 64), 3) - delta(64) * Rational(720);
        auto te8 = vectors_by_norm(e8(), 10);
        auto tl = vectors_by_norm(leech(), 10);
        for (int k = 0; k <= 5; ++k) {
            Rational norm(2 * k);
            c.check(Rational(te8.count_at(norm)) == e4.coeff(8 * k), "E8 theta coefficient of q^" + std::to_string(k));
            c.check(Rational(tl.count_at(norm)) == leech_form.coeff(8 * k),
                    "Leech theta coefficient of q^" + std::to_string(k));
        }
    });

    run(3, "modular evaluations at z = i", [](Criterion& c) {
        PrecisionGuard g(40);
        Real e6 = evaluate_at_it(eisenstein(6), Real(1)).value;
        Real e2 = evaluate_at_it(eisenstein(2), Real(1)).value;
        c.check(abs(e6) <= num(tol_modular), "|E6(i)| = " + sci(abs(e6)));
        c.check(abs(e2 - 3 / pi_real()) <= num(tol_modular), "|E2(i) - 3/pi| = " + sci(abs(e2 - 3 / pi_real())));
        for (int n : {8, 24}) {
            auto psi = psi_forms(n);
            auto st = s_transform_terms(psi);
            Real err;
            Constant ip{1, 0, n / 2 - 2};
            Real direct = evaluate_at_it(psi.psi_plus, Real(1)).value;
            auto v = evaluate_terms_at_it(st.plus, Real(1), &err);
            Real dev = abs(v.re - ip.real_part() * direct) + abs(v.im - ip.imag_part() * direct);
            c.check(dev <= num(tol_modular), "psi_plus S-transform at i, n = " + std::to_string(n) + ": " + sci(dev));
            Real dm = evaluate_at_it(psi.psi_minus, Real(1)).value;
            auto vm = evaluate_terms_at_it(st.minus, Real(1), &err);
            Real devm = abs(vm.re - dm) + abs(vm.im);
            c.check(devm <= num(tol_modular), "psi_minus S-transform at i, n = " + std::to_string(n) + ": " + sci(devm));
        }
    });

    run(4, "Poisson summation residuals", [](Criterion& c) {
        for (auto [lat, label] : {std::pair{zn(8), "Z^8"}, std::pair{e8(), "E8"}}) {
            auto p = poisson_check(lat, Rational(1), Rational(25));
            c.check(p.residual <= num(tol_poisson_unimodular), std::string(label) + " residual " + sci(p.residual));
        }
        auto p = poisson_check(leech(), Rational(1), Rational(12));
        c.check(abs(p.direct - p.dual) <= num("1e-30"), "Leech truncated sums differ by " + sci(abs(p.direct - p.dual)));
        c.check_unattainable(p.residual <= num(tol_poisson_leech), "Leech residual " + sci(p.residual) + " (cutoff 12)",
                             "the first omitted shell, norm 14, alone contributes about 1.4e-8");
    });

    run(5, "magic function n = 8", [](Criterion& c) { magic_criterion(c, 8); });
    run(6, "magic function n = 24", [](Criterion& c) { magic_criterion(c, 24); });

    run(7, "linear programming bounds for n = 8", [](Criterion& c) {
        PrecisionGuard g(60);
        Real optimal = pow(pi_real(), 4) / 384;
        auto s = sampled_lp(8, 30);
        c.check(s.report.ok, "sampled LP (d = 30) fails the sign check");
        Real ratio = s.bound / optimal;
        c.check(ratio >= 1 && ratio <= num(lp_sampled_max_ratio), "sampled LP bound / optimal = " + to_string(ratio, 10));
        auto sch = lattice_schedule(8, 6, 6, true);
        auto nr = newton_refine(8, 25, sch);
        Real nratio = nr.solution.bound / optimal;
        c.check(sign_check(nr.solution.ansatz, sch.r1).ok, "Newton solution (d = 25) fails the sign check");
        c.check(nratio >= 1 && nratio <= num(lp_newton_max_ratio), "Newton bound / optimal = " + to_string(nratio, 10));
        c.notes.push_back("sampled d=30: " + to_string(ratio, 8) + ", newton d=25: " + to_string(nratio, 10));
    });

    run(8, "certificate soundness", [](Criterion& c) {
        auto cert = build_sos_certificate(1, 4);
        c.check(verify_sos(cert).status == Status::verified, "toy SOS certificate rejected");
        int tampered = 0, accepted = 0;
        for (auto which : {&SosCertificate::Q1, &SosCertificate::Q2})
            for (std::size_t i = 0; i < (cert.*which).size(); ++i)
                for (std::size_t j = 0; j < (cert.*which).size(); ++j) {
                    SosCertificate t = cert;
                    (t.*which)[i][j] += Rational(1, 1000);
                    ++tampered;
                    if (verify_sos(t).status == Status::verified) ++accepted;
                }
        for (std::size_t k = 0; k < cert.c.size(); ++k) {
            SosCertificate t = cert;
            t.c[k] += Rational(1, 1000);
            ++tampered;
            if (verify_sos(t).status == Status::verified) ++accepted;
        }
        c.check(accepted == 0, std::to_string(accepted) + " of " + std::to_string(tampered) + " tamperings accepted");
        MagicConfig cfg;
        cfg.n = 8;
        cfg.digits = 40;
        cfg.flip_beta = true;
        auto flipped = certify_magic(8, cfg);
        c.check(flipped.status == Status::refuted, "beta-flipped magic function not refuted");
    });

    run(9, "deterministic magic check artifacts", [&cli](Criterion& c) {
        std::string a = "acceptance_magic_1.json", b = "acceptance_magic_2.json";
        for (auto& path : {a, b}) {
            std::string cmd = "\"" + cli + "\" magic check --dim 8 --out " + path;
            int rc = std::system(cmd.c_str());
            c.check(rc == 0, "exit status " + std::to_string(rc) + " from: " + cmd);
        }
        std::string x = slurp(a), y = slurp(b);
        c.check(!x.empty() && x == y, "artifacts differ or are empty");
        std::remove(a.c_str());
        std::remove(b.c_str());
    });

    int unexpected = 0, xfail = 0;
    for (auto& r : results) {
        if (!r.failures.empty()) ++unexpected;
        if (r.failures.empty() && !r.expected.empty()) ++xfail;
    }
    std::cout << "summary: " << results.size() - static_cast<std::size_t>(unexpected + xfail) << " passed, " << xfail
              << " failed only on known-unattainable targets, " << unexpected << " failed" << std::endl;
    return unexpected ? 1 : 0;
}
