// spherepack command-line front end.
//
// Exit codes: 0 success / verified, 1 refuted, 2 usage error, 3 numerically inconclusive.

#include "spherepack/certify.hpp"
#include "spherepack/codes.hpp"
#include "spherepack/lattices.hpp"
#include "spherepack/lpbound.hpp"
#include "spherepack/magic.hpp"
#include "spherepack/qseries.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#ifndef SPHEREPACK_VERSION
#define SPHEREPACK_VERSION "0.0.0"
#endif

using namespace spherepack;
using ojson = nlohmann::ordered_json;

namespace {

enum Exit { ok = 0, refuted = 1, usage = 2, inconclusive = 3 };

struct RunConfig {
    unsigned precision = 60;
    int trunc = default_trunc;
    std::string quad_target = "1e-15";
    unsigned gl_order = 20;
    std::uint64_t budget = 200'000'000;
    std::string format = "json";

    ojson to_json() const {
        return {{"precision", precision}, {"trunc", trunc},
                {"quadrature", {{"target", quad_target}, {"gauss_legendre_order", gl_order}}},
                {"budget", budget}, {"format", format}, {"deterministic", true}};
    }

    void validate() const {
        if (precision < 20 || precision > 2000) throw InvalidArgument("--precision must lie in [20, 2000]");
        if (trunc < 8 || trunc > 4000) throw InvalidArgument("--trunc must lie in [8, 4000]");
        if (gl_order < 4 || gl_order > 200) throw InvalidArgument("quadrature order must lie in [4, 200]");
        if (budget == 0) throw InvalidArgument("--budget must be positive");
        if (format != "json" && format != "csv" && format != "text")
            throw InvalidArgument("--format must be json, csv or text");
    }
};

// Defaults come from SPHEREPACK_CONFIG (a JSON file with RunConfig keys) when set.
void load_config_file(RunConfig& cfg, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot read config file " + path);
    nlohmann::json j;
    try {
        in >> j;
        if (j.contains("precision")) cfg.precision = j["precision"].get<unsigned>();
        if (j.contains("trunc")) cfg.trunc = j["trunc"].get<int>();
        if (j.contains("quadrature_target")) cfg.quad_target = j["quadrature_target"].get<std::string>();
        if (j.contains("gauss_legendre_order")) cfg.gl_order = j["gauss_legendre_order"].get<unsigned>();
        if (j.contains("budget")) cfg.budget = j["budget"].get<std::uint64_t>();
        if (j.contains("format")) cfg.format = j["format"].get<std::string>();
    } catch (const nlohmann::json::exception& e) {
        throw InvalidArgument("bad config file " + path + ": " + e.what());
    }
}

struct Output {
    std::string path;

    void write(const std::string& text) const {
        if (path.empty()) {
            std::cout << text;
            return;
        }
        std::ofstream out(path, std::ios::binary);
        if (!out) throw InvalidArgument("cannot write " + path);
        out << text;
    }
};

std::string dump(ojson j, const RunConfig& cfg) {
    j["config"] = cfg.to_json();
    j["version"] = SPHEREPACK_VERSION;
    return j.dump() + "\n";
}

ojson ordered(const nlohmann::json& j) { return ojson::parse(j.dump()); }

MagicConfig magic_config(int n, const RunConfig& cfg) {
    MagicConfig m;
    m.n = n;
    m.digits = cfg.precision;
    m.trunc = cfg.trunc;
    m.target = cfg.quad_target;
    m.gl_order = cfg.gl_order;
    return m;
}

Real optimal_density(int n) {
    if (n == 1) return Real(1);
    if (n == 8) return pow(pi_real(), 4) / 384;
    if (n == 24) return pow(pi_real(), 12) / to_real(Rational(factorial(12)));
    throw InvalidArgument("known optimal densities: n = 1, 8, 24");
}

BinaryCode named_code(const std::string& name) {
    if (name == "hamming8") return hamming8();
    if (name == "golay24") return golay24();
    throw InvalidArgument("unknown code '" + name + "' (expected hamming8, golay24)");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sphere packing computations in dimensions 8 and 24", "spherepack"};
    app.require_subcommand(1);
    app.set_version_flag("--version", SPHEREPACK_VERSION);
    app.fallthrough();  // global flags may follow the subcommand

    RunConfig cfg;
    if (const char* path = std::getenv("SPHEREPACK_CONFIG")) {
        try {
            load_config_file(cfg, path);
        } catch (const InvalidArgument& e) {
            std::cerr << "error: " << e.what() << "\n";
            return usage;
        }
    }
    Output out;
    app.add_option("--precision", cfg.precision, "working precision in decimal digits");
    app.add_option("--trunc", cfg.trunc, "q-series truncation (exponents in q^(1/8))");
    app.add_option("--budget", cfg.budget, "enumeration node budget");
    app.add_option("--format", cfg.format, "json, csv or text");
    app.add_option("--out,-o", out.path, "write the artifact to this path");

    // ---- code ----
    auto* code = app.add_subcommand("code", "binary codes");
    code->require_subcommand(1);
    auto* code_show = code->add_subcommand("show", "generator, weight enumerator, self-duality");
    std::string code_name = "hamming8";
    code_show->add_option("--name", code_name, "hamming8 or golay24");

    // ---- lattice ----
    auto* lattice = app.add_subcommand("lattice", "lattices");
    lattice->require_subcommand(1);
    auto* lat_info = lattice->add_subcommand("info", "minimum, kissing number, covolume, density");
    std::string lat_name = "e8";
    bool lat_json = false;
    lat_info->add_option("--name", lat_name, "e8, leech, l24, zn");
    lat_info->add_flag("--json", lat_json, "JSON output");
    auto* lat_count = lattice->add_subcommand("count", "vector counts by squared norm (CSV)");
    std::string max_norm = "6";
    lat_count->add_option("--name", lat_name, "e8, leech, l24, zn");
    lat_count->add_option("--max-norm", max_norm, "largest squared norm");

    // ---- qseries ----
    auto* qs = app.add_subcommand("qseries", "modular forms as q-series");
    qs->require_subcommand(1);
    auto* qs_show = qs->add_subcommand("show", "leading coefficients");
    std::string series_name;
    int terms = 8;
    qs_show->add_option("name", series_name, "E2, E4, E6, delta, theta01, theta10, leech_theta, psi_plus8, ...")
        ->required();
    qs_show->add_option("--terms", terms, "number of coefficients");

    // ---- magic ----
    auto* magic = app.add_subcommand("magic", "magic functions");
    magic->require_subcommand(1);
    int dim = 8;
    std::string radius = "1";
    auto* m_eval = magic->add_subcommand("eval", "f and f_hat at one radius");
    m_eval->add_option("--dim", dim, "8 or 24");
    m_eval->add_option("--r", radius, "radius (decimal or rational)");
    auto* m_table = magic->add_subcommand("table", "CSV table r, f, f_err, fhat, fhat_err");
    std::string rmax = "4", step = "1/100";
    m_table->add_option("--dim", dim, "8 or 24");
    m_table->add_option("--rmax", rmax, "last radius");
    m_table->add_option("--step", step, "radius step");
    auto* m_check = magic->add_subcommand("check", "certify the sign and root conditions");
    std::string report = "json";
    bool flip_beta = false;
    m_check->add_option("--dim", dim, "8 or 24");
    m_check->add_option("--report", report, "json or text");
    m_check->add_flag("--flip-beta", flip_beta, "sabotage: negate beta");

    // ---- lpbound ----
    auto* lp = app.add_subcommand("lpbound", "linear programming bounds");
    lp->require_subcommand(0, 1);
    int degree = 30;
    std::string method = "sampled", schedule, r1_text;
    bool free_sign = false, unit_scale = false;
    lp->add_option("--dim", dim, "dimension");
    lp->add_option("--degree", degree, "Laguerre degree d");
    lp->add_option("--method", method, "sampled, forced or newton")
        ->check(CLI::IsMember({"sampled", "forced", "newton"}));
    lp->add_flag("--free", free_sign, "sampled: allow negative a and sample f_hat >= 0 instead");
    lp->add_option("--r1", r1_text, "sampled: simple root radius (default 1)");
    lp->add_option("--schedule", schedule, "forced/newton: double root counts 'f,fhat' (default fits the degree)");
    lp->add_flag("--unit-min", unit_scale, "forced/newton: scale the lattice to minimal length 1");
    auto* lp_export = lp->add_subcommand("export-sdp", "write the SOS program in SDPA sparse format");
    std::string y0 = "157/50";
    lp_export->add_option("--dim", dim, "dimension");
    lp_export->add_option("--degree", degree, "Laguerre degree d");
    lp_export->add_option("--y0", y0, "rational y0 <= pi");
    auto* lp_sos = lp->add_subcommand("sos", "build an exact SOS certificate by rounding an LP solution");
    lp_sos->add_option("--dim", dim, "dimension");
    lp_sos->add_option("--degree", degree, "Laguerre degree d (at most 12)");

    // ---- verify ----
    auto* verify = app.add_subcommand("verify", "re-check a certificate file");
    std::string cert_path;
    verify->add_option("file", cert_path, "SOS certificate JSON")->required()->check(CLI::ExistingFile);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? ok : usage;
    }

    try {
        cfg.validate();
        PrecisionGuard guard(cfg.precision);
        EnumerationOptions eopt;
        eopt.budget = cfg.budget;

        if (*code_show) {
            auto c = named_code(code_name);
            auto we = weight_enumerator(c);
            auto props = code_properties(c);
            ojson j;
            j["name"] = code_name;
            j["code"] = ordered(to_json(c));
            ojson w = ojson::object();
            for (auto& [k, v] : we.counts) w[std::to_string(k)] = v;
            j["weight_enumerator"] = w;
            j["minimum_weight"] = minimum_weight(c);
            j["self_dual"] = props.self_dual;
            j["doubly_even"] = props.doubly_even;
            out.write(dump(j, cfg));
            return ok;
        }

        if (*lat_info) {
            auto lat = standard_lattice(lat_name);
            auto p = lattice_properties(lat, eopt);
            ojson j;
            const BigInt num = boost::multiprecision::numerator(p.min_sq_norm);
            j["min_sq_norm"] = boost::multiprecision::denominator(p.min_sq_norm) == 1 ? ojson(num.convert_to<long long>())
                                                                                        : ojson(to_string(p.min_sq_norm));
            j["kissing"] = p.kissing.convert_to<long long>();
            j["covolume"] = covolume(lat).str();
            j["density"] = density(lat).str();
            if (lat_json || cfg.format == "json") {
                out.write(dump(j, cfg));
            } else {
                std::ostringstream s;
                for (auto& [k, v] : j.items()) s << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
                out.write(s.str());
            }
            return ok;
        }

        if (*lat_count) {
            auto lat = standard_lattice(lat_name);
            out.write(vectors_by_norm(lat, parse_rational(max_norm), eopt).csv());
            return ok;
        }

        if (*qs_show) {
            if (terms < 1) throw InvalidArgument("--terms must be positive");
            auto s = named_form(series_name, cfg.trunc);
            if (cfg.format == "csv") {
                out.write(s.csv());
                return ok;
            }
            int g = std::max(1, s.exponent_gcd());
            std::ostringstream line;
            int e = s.min_exp();
            for (int i = 0; i < terms; ++i, e += g) {
                if (e >= s.trunc()) throw InvalidArgument("--terms exceeds the truncation; raise --trunc");
                line << (i ? ", " : "") << to_string(s.coeff(e));
            }
            line << "\n";
            out.write(line.str());
            return ok;
        }

        if (*m_eval) {
            MagicFunction m(magic_config(dim, cfg));
            Real r = to_real(parse_rational(radius));
            auto [f, fh] = m.eval_both(r);
            ojson j{{"n", dim},
                    {"r", radius},
                    {"f", to_string(f.value, 30)},
                    {"f_err", to_string(f.error, 3)},
                    {"fhat", to_string(fh.value, 30)},
                    {"fhat_err", to_string(fh.error, 3)}};
            out.write(dump(j, cfg));
            return ok;
        }

        if (*m_table) {
            MagicFunction m(magic_config(dim, cfg));
            Rational hi = parse_rational(rmax), h = parse_rational(step);
            if (h <= 0 || hi < 0) throw InvalidArgument("need --step > 0 and --rmax >= 0");
            std::ostringstream s;
            s << "r,f,f_err,fhat,fhat_err\n";
            for (Rational r = 0; r <= hi; r += h) {
                auto [f, fh] = m.eval_both(to_real(r));
                s << to_string(to_real(r), 17) << "," << to_string(f.value, 20) << "," << to_string(f.error, 3) << ","
                  << to_string(fh.value, 20) << "," << to_string(fh.error, 3) << "\n";
            }
            out.write(s.str());
            return ok;
        }

        if (*m_check) {
            auto mc = magic_config(dim, cfg);
            mc.flip_beta = flip_beta;
            MagicFunction m(mc);
            auto cert = certify_magic(m);
            std::string replay = "spherepack --precision " + std::to_string(cfg.precision) + " --trunc " +
                                 std::to_string(cfg.trunc) + " magic check --dim " + std::to_string(dim) +
                                 (flip_beta ? " --flip-beta" : "");
            if (report == "text") {
                std::ostringstream s;
                s << cert.claim << ": " << to_string(cert.status) << "\n";
                for (auto& step : cert.log)
                    s << (step.passed ? "  pass  " : "  FAIL  ") << "[" << step.method << "] " << step.statement << " ("
                      << step.bound << ")\n";
                s << "replay: " << replay << "\n";
                out.write(s.str());
            } else {
                ojson j = ordered(cert.to_json());
                j["replay"] = replay;
                out.write(dump(j, cfg));
            }
            return cert.status == Status::verified ? ok : cert.status == Status::refuted ? refuted : inconclusive;
        }

        if (*lp_export) {
            out.write(export_sos_sdp(dim, degree, parse_rational(y0)));
            return ok;
        }

        if (*lp_sos) {
            auto cert = build_sos_certificate(dim, degree);
            auto c = verify_sos(cert);
            ojson j = ordered(to_json(cert));
            j["verification"] = ordered(c.to_json());
            out.write(dump(j, cfg));
            return c.status == Status::verified ? ok : refuted;
        }

        if (*lp) {
            PrecisionGuard g(std::max(cfg.precision, lp_digits(degree)));
            LaguerreAnsatz f;
            Real bound, r1 = 1;
            ojson extra = ojson::object();
            if (method == "sampled") {
                SampledLpOptions o;
                o.nonnegative = !free_sign;
                if (!r1_text.empty()) o.r1 = parse_rational(r1_text);
                auto r = sampled_lp(dim, degree, o);
                f = r.ansatz;
                bound = r.bound;
                r1 = to_real(o.r1);
                extra["samples"] = r.samples_used;
                extra["refinement_rounds"] = r.rounds;
                extra["simplex_iterations"] = r.iterations;
            } else {
                int nf, nh;
                if (schedule.empty()) {
                    // balanced counts; d = 1 + 2 (nf + nh)
                    if (degree % 2 == 0) throw InvalidArgument("forced roots need an odd degree d = 1 + 2 (nf + nh)");
                    nh = (degree - 1) / 4;
                    nf = (degree - 1) / 2 - nh;
                } else {
                    char comma;
                    std::istringstream ss(schedule);
                    if (!(ss >> nf >> comma >> nh) || comma != ',') throw InvalidArgument("--schedule expects 'f,fhat'");
                }
                auto sch = lattice_schedule(dim, nf, nh, !unit_scale);
                r1 = sch.r1;
                if (method == "forced") {
                    auto r = forced_roots_solve(dim, degree, sch.r1, sch.f, sch.fhat);
                    f = r.ansatz;
                    bound = r.bound;
                    extra["condition"] = to_string(r.condition, 4);
                    extra["residual"] = to_string(r.residual, 4);
                } else {
                    auto r = newton_refine(dim, degree, sch);
                    f = r.solution.ansatz;
                    bound = r.solution.bound;
                    extra["initial_bound"] = to_string(r.initial_bound, 20);
                    extra["iterations"] = r.iterations;
                    extra["converged"] = r.converged;
                }
            }
            auto rep = sign_check(f, r1);
            Real opt = optimal_density(dim);
            ojson j{{"n", dim},
                    {"d", degree},
                    {"method", method},
                    {"bound", to_string(bound, 20)},
                    {"bound_over_optimal", to_string(bound / opt, 20)},
                    {"certificate_status", rep.ok ? "grid-checked" : "sign-violation"}};
            j["r1"] = to_string(r1, 20);
            j["details"] = extra;
            ojson coeffs = ojson::array();
            for (auto& a : f.a) coeffs.push_back(to_string(a, 30));
            j["a"] = coeffs;
            out.write(dump(j, cfg));
            return rep.ok ? ok : refuted;
        }

        if (*verify) {
            std::ifstream in(cert_path);
            nlohmann::json j;
            try {
                in >> j;
            } catch (const nlohmann::json::exception& e) {
                throw InvalidArgument(std::string("not a JSON file: ") + e.what());
            }
            auto cert = sos_from_json(j);
            auto c = verify_sos(cert);
            out.write(dump(ordered(c.to_json()), cfg));
            return c.status == Status::verified ? ok : c.status == Status::refuted ? refuted : inconclusive;
        }
    } catch (const InvalidArgument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return usage;
    } catch (const ValidationError& e) {
        std::cerr << "refuted: " << e.what() << "\n";
        return refuted;
    } catch (const NumericalError& e) {
        std::cerr << "inconclusive: " << e.what() << "\n";
        return inconclusive;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return inconclusive;
    }
    return usage;
}
