#include "zafe/afe.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "zafe/hasse_sondow.hpp"
#include "zafe/saddle.hpp"

namespace zafe {

namespace {

// Degeneracy is checked where omega lives: 2y = 2/(pi alpha) within 1e-6 of
// an odd integer, equivalently alpha near 2/((2N-1)pi).
void check_degenerate_band(double alpha) {
    double m = 2.0 / (alpha * M_PI);
    double nearest_odd = 2.0 * std::round((m + 1.0) / 2.0) - 1.0;
    if (nearest_odd >= 1.0 && std::abs(m - nearest_odd) < 1e-6)
        throw DegenerateError("2y lies within 1e-6 of an odd integer (omega degenerates)");
}

AfeParams make_params(double sigma, double t, double alpha, double x, long prec) {
    if (alpha <= 0) throw DomainError("alpha must be positive");
    if (x < 1.0) throw DomainError("main-sum cutoff x must be >= 1");
    check_degenerate_band(alpha);

    long p = clamp_precision(prec);
    AfeParams params{SParam(sigma, t, p), Real(x, p), Real(p), Real(alpha, p)};

    // y from t = pi x y; integer y (the usual calibrated grids) is snapped
    // so floor(y) is immune to the alpha rounding.
    double y = 1.0 / (M_PI * alpha);
    double yr = std::round(y);
    if (std::abs(y - yr) < 1e-9) y = yr;
    params.y = Real(y, p);

    params.n_chi_terms = static_cast<long>(std::floor(y + 1e-12));
    params.band_count = band_index(alpha);
    params.band_mismatch = params.n_chi_terms != params.band_count;
    return params;
}

Real reference_target(long prec, double tol) {
    double want = std::min(tol * 1e-2, 1e-24);
    Real floor = pow2(-(prec - 16), prec);
    Real target(want, prec);
    return max(target, floor);
}

}  // namespace

AfeParams make_afe_params_alpha(double sigma, double t, double alpha, long prec) {
    if (t == 0) throw DomainError("afe parameters need t != 0");
    return make_params(sigma, t, alpha, alpha * std::abs(t), prec);
}

AfeParams make_afe_params_x(double sigma, double t, double x, long prec) {
    if (t == 0) throw DomainError("afe parameters need t != 0");
    return make_params(sigma, t, x / std::abs(t), x, prec);
}

EvalReport afe_eval(const AfeParams& params, bool quadless, const QuadratureSpec& quad) {
    long p = params.s.precision;
    if (params.s.t.sign() < 0) {
        AfeParams conj_params = params;
        conj_params.s = params.s.conjugated();
        EvalReport rep = afe_eval(conj_params, quadless, quad);
        rep.main_sum = rep.main_sum.conj();
        rep.chi_sum_term = rep.chi_sum_term.conj();
        rep.afe_value = rep.afe_value.conj();
        rep.reference = rep.reference.conj();
        return rep;
    }

    EvalReport rep(p);
    rep.quadless = quadless;
    rep.band_mismatch = params.band_mismatch;

    rep.main_sum = partial_sum(params.x, params.s);
    if (params.n_chi_terms >= 1) {
        Complex term = chi_main_terms(params.s, params.n_chi_terms);
        rep.chi_sum_term = (kChiSignConvention == SignConvention::plus) ? term : -term;
    }
    rep.afe_value = rep.main_sum + rep.chi_sum_term;

    double alpha = params.alpha.to_double();
    rep.omega_used = omega(alpha, 1e-9, p);
    rep.predicted_bound = exp(-(rep.omega_used * params.s.t.rounded(p)));

    if (!quadless) {
        rep.reference = zeta_reference(params.s, reference_target(p, quad.tolerance));
        rep.abs_error = abs(rep.afe_value - rep.reference);
    }
    return rep;
}

ScanTable error_scan(double alpha, double sigma, double t_min, double t_max, long steps,
                     long prec, const QuadratureSpec& quad, int jobs) {
    if (alpha <= 0) throw DomainError("alpha must be positive");
    if (t_min < 20.0) throw DomainError("scan requires t_min >= 20");
    if (t_max < t_min) throw DomainError("scan requires t_max >= t_min");
    if (steps < 1) throw DomainError("scan requires steps >= 1");
    long p = clamp_precision(prec);

    ScanTable table;
    table.alpha = alpha;
    table.sigma = sigma;
    table.precision = p;
    table.omega_value = omega(alpha, 1e-9, p);
    double omega_d = table.omega_value.to_double();

    std::vector<double> ts;
    if (steps == 1 || t_max == t_min) {
        ts.push_back(t_min);
    } else {
        for (long i = 0; i < steps; ++i)
            ts.push_back(t_min + (t_max - t_min) * static_cast<double>(i) /
                                     static_cast<double>(steps - 1));
    }

    table.rows.assign(ts.size(), ScanRow(p));
    auto compute_row = [&](size_t i) {
        ScanRow row(p);
        double t = ts[i];
        row.t = Real(t, p);
        try {
            AfeParams params = make_afe_params_alpha(sigma, t, alpha, p);
            row.x = params.x;
            row.y = params.y;
            EvalReport rep = afe_eval(params, false, quad);
            row.abs_error = rep.abs_error;
            row.log_abs_error = log(rep.abs_error);
            Complex at = a_tilde(params.x, params.s, quad);
            row.log_a_tilde = log(abs(at));
            row.neg_omega_t = -(table.omega_value * row.t);
            row.ok = true;
        } catch (const Error& e) {
            row.flags = e.code_name();
        }
        table.rows[i] = std::move(row);
    };

    if (jobs <= 1) {
        for (size_t i = 0; i < ts.size(); ++i) compute_row(i);
    } else {
        std::vector<std::thread> pool;
        std::atomic<size_t> next{0};
        int n = std::min<int>(jobs, static_cast<int>(ts.size()));
        for (int j = 0; j < n; ++j)
            pool.emplace_back([&] {
                for (size_t i = next.fetch_add(1); i < ts.size(); i = next.fetch_add(1))
                    compute_row(i);
            });
        for (auto& th : pool) th.join();
    }

    // C fitted as exp(max(log abs_error + omega t)) over the usable rows.
    bool any = false;
    Real c_ln(p);
    for (const ScanRow& row : table.rows) {
        if (!row.ok) continue;
        Real v = row.log_abs_error + table.omega_value * row.t;
        if (!any || v > c_ln) c_ln = v;
        any = true;
    }
    table.fitted_c_ln = c_ln;
    for (ScanRow& row : table.rows) {
        if (!row.ok) continue;
        row.bound = exp(c_ln - Real(omega_d, p) * row.t);
    }
    return table;
}

DecayFit fit_line(const std::vector<std::pair<double, double>>& pts) {
    if (pts.size() < 5)
        throw DomainError("decay fit needs at least 5 rows");
    double n = static_cast<double>(pts.size());
    double sx = 0, sy = 0;
    for (auto& [x, y] : pts) {
        sx += x;
        sy += y;
    }
    double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0, syy = 0;
    for (auto& [x, y] : pts) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
        syy += (y - my) * (y - my);
    }
    DecayFit fit;
    fit.slope = (sxx > 0) ? sxy / sxx : 0.0;
    fit.intercept = my - fit.slope * mx;
    double ss_res = 0;
    for (auto& [x, y] : pts) {
        double r = y - (fit.intercept + fit.slope * x);
        ss_res += r * r;
    }
    if (syy < 1e-30) {
        fit.r_squared = (ss_res < 1e-30) ? 1.0 : 0.0;
    } else {
        fit.r_squared = 1.0 - ss_res / syy;
    }
    return fit;
}

DecayFit fit_decay_rate(const ScanTable& table) {
    std::vector<std::pair<double, double>> pts;
    for (const ScanRow& row : table.rows)
        if (row.ok) pts.emplace_back(row.t.to_double(), row.log_abs_error.to_double());
    return fit_line(pts);
}

Complex simple_afe_classical(const SParam& s, const Real& x) {
    long p = s.precision;
    if (s.is_pole_of_zeta()) throw PoleError("classical approximation at s = 1");
    double t_abs = std::abs(s.t.to_double());
    if (t_abs > M_PI * x.to_double() * (1 + 1e-12))
        throw ValidityError("simple classical form requires |t| <= pi x");
    long wp = p + kGuardBits;
    Complex z = s.value(wp);
    long cutoff = static_cast<long>(floor(x).to_double());
    Complex acc = dirichlet_partial(z, cutoff);
    Real xw = x.rounded(wp);
    Complex one(Real(1L, wp), Real(0L, wp));
    acc += exp((one - z) * log(xw)) / (z - Real(1L, wp));
    return acc.rounded(p);
}

Complex simple_afe_classical(const SParam& s, double x) {
    return simple_afe_classical(s, Real(x, s.precision));
}

std::string scan_to_csv(const ScanTable& table) {
    std::string out = "t,x,y,abs_error,log_abs_error,log_a_tilde,neg_omega_t,bound,flags\n";
    for (const ScanRow& row : table.rows) {
        out += row.t.to_string();
        out += ',';
        if (row.ok) {
            out += row.x.to_string();
            out += ',';
            out += row.y.to_string();
            out += ',';
            out += row.abs_error.to_string();
            out += ',';
            out += row.log_abs_error.to_string();
            out += ',';
            out += row.log_a_tilde.to_string();
            out += ',';
            out += row.neg_omega_t.to_string();
            out += ',';
            out += row.bound.to_string();
            out += ',';
        } else {
            out += ",,,,,,,";
        }
        out += row.flags;
        out += '\n';
    }
    return out;
}

}  // namespace zafe
