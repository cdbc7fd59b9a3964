// zafe - evaluate the exponentially accurate approximate functional
// equation for the Riemann zeta function, scan its error decay, solve the
// underlying saddle equation, and run the built-in verification suites.

#include <cmath>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "zafe/afe.hpp"
#include "zafe/hasse_sondow.hpp"
#include "zafe/interpolant.hpp"
#include "zafe/saddle.hpp"
#include "zafe/special.hpp"

using nlohmann::json;

namespace {

struct RunConfig {
    long precision_bits = zafe::kDefaultPrecision;
    double tolerance = 1e-12;
    int jobs = 1;
    std::string output_format = "json";
    std::string output_path;

    void validate() const {
        if (precision_bits < zafe::kMinPrecision)
            throw zafe::UsageError("precision must be >= 53 bits");
        if (tolerance < std::pow(2.0, -static_cast<double>(precision_bits) + 16))
            throw zafe::UsageError("tolerance must be >= 2^(16-precision)");
        if (tolerance <= 0) throw zafe::UsageError("tolerance must be positive");
        if (jobs < 1) throw zafe::UsageError("jobs must be >= 1");
        if (output_format != "csv" && output_format != "json")
            throw zafe::UsageError("format must be csv or json");
    }

    zafe::QuadratureSpec quad() const {
        zafe::QuadratureSpec q;
        q.tolerance = tolerance;
        return q;
    }
};

void emit(const RunConfig& cfg, const std::string& text) {
    if (cfg.output_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(cfg.output_path, std::ios::binary);
    if (!out) throw zafe::UsageError("cannot open output path " + cfg.output_path);
    out << text;
}

json complex_json(const zafe::Complex& z) {
    return json{{"re", z.re().to_string()}, {"im", z.im().to_string()}};
}

json report_json(const zafe::EvalReport& rep, const zafe::AfeParams& params) {
    json j;
    j["main_sum"] = complex_json(rep.main_sum);
    j["chi_sum_term"] = complex_json(rep.chi_sum_term);
    j["afe_value"] = complex_json(rep.afe_value);
    if (!rep.quadless) {
        j["reference"] = complex_json(rep.reference);
        j["abs_error"] = rep.abs_error.to_string();
    }
    j["omega_used"] = rep.omega_used.to_string();
    j["predicted_bound"] = rep.predicted_bound.to_string();
    j["sign_convention"] = rep.sign_convention == zafe::SignConvention::minus ? "minus" : "plus";
    j["x"] = params.x.to_string();
    j["y"] = params.y.to_string();
    j["alpha"] = params.alpha.to_string();
    j["n_chi_terms"] = params.n_chi_terms;
    j["band_count"] = params.band_count;
    j["band_mismatch"] = params.band_mismatch;
    return j;
}

std::string report_csv(const zafe::EvalReport& rep, const zafe::AfeParams& params) {
    std::string out =
        "main_sum_re,main_sum_im,chi_sum_term_re,chi_sum_term_im,afe_value_re,afe_value_im,"
        "reference_re,reference_im,abs_error,omega_used,predicted_bound,sign_convention\n";
    auto add = [&out](const std::string& v, bool last = false) {
        out += v;
        out += last ? '\n' : ',';
    };
    add(rep.main_sum.re().to_string());
    add(rep.main_sum.im().to_string());
    add(rep.chi_sum_term.re().to_string());
    add(rep.chi_sum_term.im().to_string());
    add(rep.afe_value.re().to_string());
    add(rep.afe_value.im().to_string());
    if (rep.quadless) {
        add("");
        add("");
        add("");
    } else {
        add(rep.reference.re().to_string());
        add(rep.reference.im().to_string());
        add(rep.abs_error.to_string());
    }
    add(rep.omega_used.to_string());
    add(rep.predicted_bound.to_string());
    add(rep.sign_convention == zafe::SignConvention::minus ? "minus" : "plus", true);
    (void)params;
    return out;
}

int cmd_eval(const RunConfig& cfg, double sigma, double t, double alpha, double x,
             bool has_alpha, bool has_x, bool quadless) {
    cfg.validate();
    if (has_alpha == has_x)
        throw zafe::UsageError("provide exactly one of --alpha or --x");
    zafe::AfeParams params =
        has_alpha ? zafe::make_afe_params_alpha(sigma, t, alpha, cfg.precision_bits)
                  : zafe::make_afe_params_x(sigma, t, x, cfg.precision_bits);
    zafe::EvalReport rep = zafe::afe_eval(params, quadless, cfg.quad());
    if (cfg.output_format == "json")
        emit(cfg, report_json(rep, params).dump(2) + "\n");
    else
        emit(cfg, report_csv(rep, params));
    return 0;
}

int cmd_scan(const RunConfig& cfg, double alpha, double sigma, double t_min, double t_max,
             long steps) {
    cfg.validate();
    zafe::ScanTable table = zafe::error_scan(alpha, sigma, t_min, t_max, steps,
                                             cfg.precision_bits, cfg.quad(), cfg.jobs);
    if (cfg.output_format == "json") {
        json j;
        j["alpha"] = alpha;
        j["sigma"] = sigma;
        j["omega"] = table.omega_value.to_string();
        j["fitted_c_ln"] = table.fitted_c_ln.to_string();
        j["csv"] = zafe::scan_to_csv(table);
        emit(cfg, j.dump(2) + "\n");
    } else {
        emit(cfg, zafe::scan_to_csv(table));
    }
    return 0;
}

int cmd_saddle(const RunConfig& cfg, double alpha, long k_max) {
    cfg.validate();
    zafe::SaddleFamily fam =
        zafe::saddle_family(alpha, k_max, cfg.tolerance, cfg.precision_bits);
    std::string selected = "";
    std::string omega_s = "";
    try {
        zafe::select_k(alpha, fam, cfg.tolerance);
        fam.omega = zafe::omega(alpha, cfg.tolerance, cfg.precision_bits);
        selected = std::to_string(fam.selected_k);
        omega_s = fam.omega.to_string();
    } catch (const zafe::Error& e) {
        selected = e.code_name();
        omega_s = e.code_name();
    }
    if (cfg.output_format == "json") {
        json rows = json::array();
        for (const auto& pt : fam.points) {
            rows.push_back(json{{"k", pt.index_k},
                                {"x", pt.w.re().to_string()},
                                {"y", pt.w.im().to_string()},
                                {"r", pt.r.to_string()},
                                {"theta", pt.theta.to_string()},
                                {"residual", pt.residual.to_string()}});
        }
        json j;
        j["alpha"] = alpha;
        j["points"] = rows;
        j["selected_k"] = selected;
        j["omega"] = omega_s;
        j["tie_flag"] = fam.tie_flag;
        emit(cfg, j.dump(2) + "\n");
    } else {
        std::string out = "k,x,y,r,theta,residual\n";
        for (const auto& pt : fam.points) {
            out += std::to_string(pt.index_k) + ',' + pt.w.re().to_string() + ',' +
                   pt.w.im().to_string() + ',' + pt.r.to_string() + ',' +
                   pt.theta.to_string() + ',' + pt.residual.to_string() + '\n';
        }
        out += "selected_k," + selected + "\nomega," + omega_s + "\n";
        emit(cfg, out);
    }
    return 0;
}

// ---------------------------------------------------------------------------
// verify suites

struct CheckResult {
    std::string name;
    bool pass;
    double measured;
    double bound;
};

void run_check(std::vector<CheckResult>& out, const std::string& name, double measured,
               double bound) {
    out.push_back({name, measured <= bound, measured, bound});
}

std::vector<CheckResult> verify_em_identity(const RunConfig& cfg) {
    std::vector<CheckResult> out;
    zafe::QuadratureSpec quad = cfg.quad();
    struct Case {
        double x, sigma, t;
    };
    for (const Case& c : {Case{10.5, 2.0, 0.0}, Case{7.3, 0.5, 20.0}, Case{3.5, 1.5, 5.0},
                          Case{5.25, 1.0, 10.0}, Case{12.75, 0.25, 8.0}}) {
        zafe::SParam s(c.sigma, c.t, cfg.precision_bits);
        double r = zafe::em_identity_residual(c.x, s, quad).to_double();
        run_check(out,
                  "em-identity x=" + std::to_string(c.x) + " s=" + std::to_string(c.sigma) +
                      "+" + std::to_string(c.t) + "i",
                  r, 50 * cfg.tolerance);
    }
    return out;
}

std::vector<CheckResult> verify_interpolation(const RunConfig& cfg) {
    std::vector<CheckResult> out;
    zafe::QuadratureSpec quad = cfg.quad();
    for (double sigma : {2.0, 0.5, 0.05}) {
        for (double t : {0.0, 5.0, 20.0}) {
            zafe::SParam s(sigma, t, cfg.precision_bits);
            double worst = 0;
            for (unsigned n = 0; n <= 24; n += 3) {
                zafe::Complex a = zafe::a_tilde(static_cast<double>(n), s, quad);
                zafe::Complex c = zafe::coeff_discrete(n, s);
                worst = std::max(worst, zafe::abs(a - c).to_double());
            }
            run_check(out,
                      "interpolation sigma=" + std::to_string(sigma) +
                          " t=" + std::to_string(t),
                      worst, 10 * cfg.tolerance);
        }
    }
    return out;
}

std::vector<CheckResult> verify_residues(const RunConfig& cfg) {
    std::vector<CheckResult> out;
    zafe::SParam s(0.5, 50.0, cfg.precision_bits);
    for (long k : {1L, 2L}) {
        zafe::Complex lhs = zafe::residue_term(k, s);
        zafe::Complex rhs = zafe::chi_main_terms(s, k) - ((k > 1) ? zafe::chi_main_terms(s, k - 1)
                                                                  : zafe::Complex(cfg.precision_bits));
        double rel = zafe::abs(lhs - rhs).to_double() / zafe::abs(rhs).to_double();
        run_check(out, "residue k=" + std::to_string(k), rel, 1e-6);
    }
    return out;
}

std::vector<CheckResult> verify_chi(const RunConfig& cfg) {
    std::vector<CheckResult> out;
    long p = cfg.precision_bits;
    std::mt19937_64 rng(20240923);
    std::uniform_real_distribution<double> us(0.0, 1.0), ut(-100.0, 100.0);
    double worst = 0;
    for (int i = 0; i < 50; ++i) {
        double sigma = us(rng), t = ut(rng);
        zafe::SParam s(sigma, t, p);
        zafe::SParam s1(zafe::Real(1L, p) - zafe::Real(sigma, p), zafe::Real(-t, p));
        zafe::Complex prod = zafe::chi(s) * zafe::chi(s1);
        worst = std::max(worst,
                         zafe::abs(prod - zafe::Complex(1.0, 0.0, p)).to_double());
    }
    run_check(out, "chi(s)chi(1-s)=1 (50 samples)", worst, 1e-25);

    zafe::SParam line(0.5, 25.0, p);
    double mod = std::abs(zafe::abs(zafe::chi(line)).to_double() - 1.0);
    run_check(out, "|chi(1/2+25i)| = 1", mod, 1e-25);

    zafe::SParam half(0.5, 0.0, p);
    double at_half = zafe::abs(zafe::chi(half) - zafe::Complex(1.0, 0.0, p)).to_double();
    run_check(out, "chi(1/2) = 1", at_half, 1e-30);
    return out;
}

std::vector<CheckResult> verify_saddle_constants(const RunConfig& cfg) {
    std::vector<CheckResult> out;
    long p = cfg.precision_bits;
    zafe::SaddlePoint w2 = zafe::solve_saddle(1.0 / M_PI, 2, 1e-12, p);
    double dx = std::abs(w2.w.re().to_double() - 0.68154);
    double dy = std::abs(w2.w.im().to_double() - 9.31481);
    run_check(out, "w2(1/pi) = 0.68154 + 9.31481i", std::max(dx, dy), 1e-4);

    double om = zafe::omega(1.0 / M_PI, 1e-9, p).to_double();
    run_check(out, "omega(1/pi) = 0.017728", std::abs(om - 0.017728), 1e-5);

    for (long n : {1L, 2L, 3L}) {
        double alpha = 2.0 / ((2.0 * n - 1.0) * M_PI);
        zafe::SaddlePoint pt = zafe::solve_saddle(alpha, n, 1e-12, p);
        double err = std::max(std::abs(pt.w.re().to_double()),
                              std::abs(pt.w.im().to_double() - (2 * n - 1) * M_PI));
        run_check(out, "degenerate root N=" + std::to_string(n), err, 1e-10);
    }
    return out;
}

int cmd_verify(const RunConfig& cfg, const std::string& suite) {
    cfg.validate();
    std::vector<CheckResult> results;
    if (suite == "em-identity")
        results = verify_em_identity(cfg);
    else if (suite == "interpolation")
        results = verify_interpolation(cfg);
    else if (suite == "residues")
        results = verify_residues(cfg);
    else if (suite == "chi")
        results = verify_chi(cfg);
    else if (suite == "saddle-constants")
        results = verify_saddle_constants(cfg);
    else
        throw zafe::UsageError("unknown suite: " + suite);

    std::string first_fail;
    for (const CheckResult& r : results) {
        std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.name << "  measured=" << r.measured
                  << " bound=" << r.bound << "\n";
        if (!r.pass && first_fail.empty()) first_fail = r.name;
    }
    if (!first_fail.empty()) {
        std::cerr << "first failing check: " << first_fail << "\n";
        return 1;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"high-precision approximate functional equation toolkit for zeta"};
    app.set_config("--config", "", "configuration file (key=value lines)");

    RunConfig cfg;
    app.add_option("--precision", cfg.precision_bits, "working precision in bits (>= 53)")
        ->envname("ZAFE_PRECISION_BITS");
    app.add_option("--tolerance", cfg.tolerance, "quadrature/series tolerance")
        ->envname("ZAFE_TOLERANCE");
    app.add_option("--jobs", cfg.jobs, "parallel rows for scans")->envname("ZAFE_JOBS");
    app.add_option("--format", cfg.output_format, "output format: csv or json");
    app.add_option("--output", cfg.output_path, "write output to this path (default stdout)");

    // eval
    auto* eval = app.add_subcommand("eval", "evaluate the AFE at one point");
    double e_sigma = 0.5, e_t = 0.0, e_alpha = 0.0, e_x = 0.0;
    bool e_quadless = false;
    eval->add_option("--sigma", e_sigma, "Re(s)")->required();
    eval->add_option("--t", e_t, "Im(s)")->required();
    auto* oa = eval->add_option("--alpha", e_alpha, "x/t ratio (sets x = alpha t)");
    auto* ox = eval->add_option("--x", e_x, "main-sum cutoff");
    eval->add_flag("--quadless", e_quadless, "skip the reference oracle");

    // scan
    auto* scan = app.add_subcommand("scan", "error decay scan over a t range");
    double s_alpha = 1.0 / M_PI, s_sigma = 0.05, s_tmin = 50, s_tmax = 400;
    long s_steps = 15;
    scan->add_option("--alpha", s_alpha, "x/t ratio")->required();
    scan->add_option("--sigma", s_sigma, "Re(s)")->required();
    scan->add_option("--t-min", s_tmin, "scan start (>= 20)")->required();
    scan->add_option("--t-max", s_tmax, "scan end")->required();
    scan->add_option("--steps", s_steps, "row count");

    // saddle
    auto* saddle = app.add_subcommand("saddle", "solve the saddle equation family");
    double d_alpha = 1.0 / M_PI;
    long d_kmax = 4;
    saddle->add_option("--alpha", d_alpha, "family parameter")->required();
    saddle->add_option("--k-max", d_kmax, "number of saddle points");

    // verify
    auto* verify = app.add_subcommand("verify", "run a verification suite");
    std::string v_suite;
    verify
        ->add_option("suite", v_suite,
                     "em-identity | interpolation | residues | chi | saddle-constants")
        ->required();

    app.require_subcommand(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (*eval) return cmd_eval(cfg, e_sigma, e_t, e_alpha, e_x, oa->count() > 0,
                                   ox->count() > 0, e_quadless);
        if (*scan) return cmd_scan(cfg, s_alpha, s_sigma, s_tmin, s_tmax, s_steps);
        if (*saddle) return cmd_saddle(cfg, d_alpha, d_kmax);
        if (*verify) return cmd_verify(cfg, v_suite);
    } catch (const zafe::Error& e) {
        std::cerr << e.code_name() << ": " << e.what() << "\n";
        return e.exit_status();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
