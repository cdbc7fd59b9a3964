#include "zafe/interpolant.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>
#include <vector>

#include "zafe/bernoulli.hpp"
#include "zafe/hasse_sondow.hpp"
#include "zafe/saddle.hpp"

namespace zafe {

namespace {

constexpr double kTsBaseStep = 0.25;
constexpr int kMaxLevel = 18;

// Cancellation from the oscillatory w^{it} factor costs about
// (pi/2) t / ln 2 bits of the summation's leading magnitude.
long working_precision(long prec, double t_abs) {
    return prec + static_cast<long>(2.27 * t_abs) + 3 * kGuardBits;
}

double truncation_for(double tol, double t_abs, double sigma, double overrideT) {
    if (overrideT > 0) return overrideT;
    double T = std::max(40.0, std::log(10.0 / tol) + M_PI * t_abs / 2 + 0.1 * t_abs + 20.0);
    if (sigma > 1.0) T += (sigma - 1.0) * std::log(T) + 4.0;
    return T;
}

// ---------------------------------------------------------------------------
// Analytic piece over (0, eps]: e^{-w}(1-e^{-w})^u = w^u exp(g(w)) with
// g(w) = -(1+u/2) w + sum_k (u B_{2k}/(2k (2k)!)) w^{2k}, integrated
// termwise against w^{s-1} (and optionally the log((1-e^{-w})/2) factor).
// Returns the folded value, i.e. including the 2^{-u} of ((1-e^{-w})/2)^u.

Complex analytic_tail(const Complex& z, const Real& u, double eps, long wp,
                      bool du_mode, double skip_ln) {
    long p = wp;
    double sigma = z.re().to_double();
    double ud = u.to_double();
    double est_ln = (sigma + ud) * std::log(eps) - ud * M_LN2 -
                    std::log(std::max(sigma + ud, 1e-8));
    if (est_ln < skip_ln) return Complex(p);

    Real epsr(eps, p);
    Real ln2 = const_ln2(p);
    Real cut = pow2(-p - 16, p);

    // exp(g) coefficients d_m by (m+1) d_{m+1} = sum_j j g_j d_{m+1-j}
    std::vector<Real> g;  // g[0] unused
    g.emplace_back(0L, p);
    g.push_back(-(Real(1L, p) + u.mul_2si(-1)));
    std::vector<Real> d;
    d.emplace_back(1L, p);
    Real epspow(1L, p);  // eps^m
    int M = 1;
    {
        int quiet = 0;
        for (int m = 0; m < 400 && quiet < 2; ++m) {
            // extend g through index m+1
            while (static_cast<int>(g.size()) <= m + 1) {
                int j = static_cast<int>(g.size());
                if (j % 2 == 1) {
                    g.emplace_back(0L, p);
                } else {
                    Real fact(p);
                    mpfr_set_z(fact.raw(), factorial(static_cast<unsigned>(j)).get_mpz_t(),
                               MPFR_RNDN);
                    g.push_back(u * bernoulli_real(static_cast<unsigned>(j), p) /
                                (Real(static_cast<long>(j), p) * fact));
                }
            }
            Real acc(0L, p);
            for (int j = 1; j <= m + 1; ++j) {
                if (g[j].is_zero() || d[m + 1 - j].is_zero()) continue;
                acc += Real(static_cast<long>(j), p) * g[j] * d[m + 1 - j];
            }
            d.push_back(acc / Real(static_cast<long>(m + 1), p));
            epspow *= epsr;
            M = m + 1;
            if (abs(d.back()) * epspow < cut && m >= 8) ++quiet;
        }
    }

    // q~ coefficients for the du factor: log((1-e^{-w})/2) = ln w + q~(w)
    std::vector<Real> e;
    if (du_mode) {
        std::vector<Real> q;
        q.push_back(-ln2);
        q.emplace_back(-0.5, p);
        for (int j = 2; j <= M; ++j) {
            if (j % 2 == 1) {
                q.emplace_back(0L, p);
            } else {
                Real fact(p);
                mpfr_set_z(fact.raw(), factorial(static_cast<unsigned>(j)).get_mpz_t(),
                           MPFR_RNDN);
                q.push_back(bernoulli_real(static_cast<unsigned>(j), p) /
                            (Real(static_cast<long>(j), p) * fact));
            }
        }
        e.reserve(M + 1);
        for (int m = 0; m <= M; ++m) {
            Real acc(0L, p);
            for (int j = 0; j <= m; ++j) {
                if (d[j].is_zero() || q[m - j].is_zero()) continue;
                acc += d[j] * q[m - j];
            }
            e.push_back(acc);
        }
    }

    Real lneps = log(epsr);
    Complex zu = z + u;
    Complex acc(p);
    Real epow(1L, p);
    Complex one(Real(1L, p), Real(0L, p));
    for (int m = 0; m <= M; ++m) {
        Complex inv = one / (zu + Real(static_cast<long>(m), p));
        if (!du_mode) {
            acc += inv * (d[m] * epow);
        } else {
            acc += (inv * lneps - inv * inv) * (d[m] * epow);
            acc += inv * (e[m] * epow);
        }
        epow *= epsr;
    }
    // eps^{z+u} * 2^{-u}
    Complex scale = exp(zu * lneps - Complex(u * ln2, Real(0L, p)));
    return acc * scale;
}

// ---------------------------------------------------------------------------
// Node tables for the [eps, T] piece.

struct Level {
    std::vector<Complex> c;  // weight * e^{-w} * w^{s-1} (* mapping factor)
    std::vector<Real> lb2;   // log((1 - e^{-w}) / 2)
    std::vector<Real> b2;    // (1 - e^{-w}) / 2
};

class WTable {
public:
    WTable(const SParam& s, long wp, double tol, double eps, double T, bool composite,
           long budget)
        : composite_(composite),
          wp_(wp),
          eps_(eps),
          T_(T),
          tol_(tol),
          t_abs_(std::abs(s.t.to_double())),
          z_(s.value(wp)),
          budget_(budget),
          ln2_(const_ln2(wp)) {
        if (composite_) init_edges();
    }

    std::mutex mutex;

    bool ensure(int L) {
        while (static_cast<int>(levels_.size()) <= L) {
            if (nodes_ >= budget_) return false;
            build_level(static_cast<int>(levels_.size()));
        }
        return true;
    }

    int start_level() const {
        if (composite_) return 0;
        double lnratio = std::log((T_ - eps_) / eps_);
        double rate = t_abs_ * M_PI * std::cosh(std::asinh(lnratio / M_PI));
        double h_needed = 0.75 / std::max(rate, 3.0);
        int L0 = static_cast<int>(std::ceil(std::log2(kTsBaseStep / h_needed)));
        return std::clamp(L0, 2, kMaxLevel - 2);
    }

    // Integral over [eps, T] of e^{-w} ((1-e^{-w})/2)^u w^{s-1} X dw with
    // X = 1 (mode 0), log((1-e^{-w})/2) (mode 1), 1/log((1-e^{-w})/2) (mode 2).
    Complex sum(int L, const Real& u, int mode) const {
        Real acc_re(wp_), acc_im(wp_), t1(wp_);
        auto add_level = [&](const Level& lv) {
            for (size_t i = 0; i < lv.c.size(); ++i) {
                mpfr_mul(t1.raw(), u.raw(), lv.lb2[i].raw(), MPFR_RNDN);
                mpfr_exp(t1.raw(), t1.raw(), MPFR_RNDN);
                if (mode == 1)
                    mpfr_mul(t1.raw(), t1.raw(), lv.lb2[i].raw(), MPFR_RNDN);
                else if (mode == 2)
                    mpfr_div(t1.raw(), t1.raw(), lv.lb2[i].raw(), MPFR_RNDN);
                mpfr_fma(acc_re.raw(), t1.raw(), lv.c[i].re().raw(), acc_re.raw(), MPFR_RNDN);
                mpfr_fma(acc_im.raw(), t1.raw(), lv.c[i].im().raw(), acc_im.raw(), MPFR_RNDN);
            }
        };
        if (composite_) {
            add_level(levels_[L]);
        } else {
            for (int l = 0; l <= L; ++l) add_level(levels_[l]);
            Real h(kTsBaseStep, wp_);
            h = h.mul_2si(-L);
            acc_re *= h;
            acc_im *= h;
        }
        acc_re.check_finite("quadrature sum");
        acc_im.check_finite("quadrature sum");
        return {std::move(acc_re), std::move(acc_im)};
    }

    const std::vector<Level>& levels() const { return levels_; }
    bool composite() const { return composite_; }
    long wp() const { return wp_; }
    double eps() const { return eps_; }
    double T() const { return T_; }
    double t_abs() const { return t_abs_; }
    const Complex& z() const { return z_; }
    long nodes() const { return nodes_; }
    long roundoff_floor_exp() const { return max_exp_ - wp_ + 64; }

private:
    void init_edges() {
        double a = std::log(eps_), b = std::log(T_);
        double cw = std::min(1.0, 9.0 / std::max(t_abs_, 1.0));
        double v = a;
        while (v + cw < b - 2.0) {
            edges_.push_back(v);
            v += cw;
        }
        edges_.push_back(v);
        int guard = 0;
        while (b - v > std::min(0.1, cw) && guard++ < 64) {
            v += (b - v) / 2;
            edges_.push_back(v);
        }
        edges_.push_back(b);
    }

    void push_node(Level& lv, const Real& w, const Real& lnw_or_v, const Real& wt,
                   bool vspace) {
        Real em = exp(-w);
        Real om(wp_);
        mpfr_expm1(om.raw(), Real(-w).raw(), MPFR_RNDN);
        mpfr_neg(om.raw(), om.raw(), MPFR_RNDN);  // 1 - e^{-w}
        Real lb2 = log(om) - ln2_;
        Complex c = vspace ? exp(z_ * lnw_or_v) * (wt * em)
                           : exp((z_ - Real(1L, wp_)) * lnw_or_v) * (wt * em);
        long ex = std::max(c.re().is_zero() ? -budget_ : c.re().exponent(),
                           c.im().is_zero() ? -budget_ : c.im().exponent());
        max_exp_ = std::max(max_exp_, ex);
        lv.b2.push_back(om.mul_2si(-1));
        lv.lb2.push_back(std::move(lb2));
        lv.c.push_back(std::move(c));
        ++nodes_;
    }

    void build_level(int L) {
        Level lv;
        if (composite_) {
            const GaussLegendreRule& gl = gauss_legendre(8, wp_);
            long parts = 1L << L;
            for (size_t pnl = 0; pnl + 1 < edges_.size(); ++pnl) {
                double p0 = edges_[pnl], p1 = edges_[pnl + 1];
                double pw = (p1 - p0) / static_cast<double>(parts);
                for (long q = 0; q < parts; ++q) {
                    Real lo(p0 + pw * static_cast<double>(q), wp_);
                    Real width(pw, wp_);
                    for (int i = 0; i < 8; ++i) {
                        Real v = lo + width * gl.x[i];
                        Real w = exp(v);
                        push_node(lv, w, v, gl.w[i] * width, true);
                    }
                }
            }
        } else {
            double h = kTsBaseStep / std::pow(2.0, L);
            Real span(T_ - eps_, wp_);
            Real epsr(eps_, wp_);
            Real Tr(T_, wp_);
            long weight_cut = -wp_ - 48;
            long j = (L == 0) ? 0 : 1;
            long jstep = (L == 0) ? 1 : 2;
            for (;; j += jstep) {
                Real tau(h * static_cast<double>(j), wp_);
                TanhSinhPoint pt = tanh_sinh_point(tau, wp_);
                Real wt = pt.weight * span;
                if (j > 0 && (pt.weight.is_zero() || pt.weight.exponent() < weight_cut))
                    break;
                Real w_lo = epsr + span * pt.d;
                push_node(lv, w_lo, log(w_lo), wt, false);
                if (j > 0) {
                    Real w_hi = Tr - span * pt.d;
                    push_node(lv, w_hi, log(w_hi), wt, false);
                }
                if (nodes_ > budget_ + (budget_ >> 1)) break;
            }
        }
        levels_.push_back(std::move(lv));
    }

    bool composite_;
    long wp_;
    double eps_, T_, tol_;
    double t_abs_;
    Complex z_;
    long budget_;
    Real ln2_;
    std::vector<double> edges_;
    std::vector<Level> levels_;
    long nodes_ = 0;
    long max_exp_ = -(1L << 40);
};

// Level-doubling driver: refine until successive levels agree within
// tol * max(|value|, roundoff floor); a second confirming agreement is
// required in the oscillatory regime.
Complex adaptive_integral(WTable& tab, const QuadratureSpec& quad, const Real& u, int mode,
                          const char* what) {
    int L = tab.start_level();
    if (!tab.ensure(L + 1))
        throw QuadratureError(std::string(what) + ": node budget exhausted before refinement");
    Real tol(quad.tolerance, tab.wp());
    Complex prev = tab.sum(L, u, mode);
    bool confirmed_once = false;
    bool need_confirm = tab.t_abs() > 60.0;
    double last_diff = -1.0;
    int stall = 0;
    for (++L; L <= kMaxLevel; ++L) {
        if (!tab.ensure(L))
            throw QuadratureError(std::string(what) + ": node budget exhausted at level " +
                                  std::to_string(L));
        Complex cur = tab.sum(L, u, mode);
        Real diff = abs(cur - prev);
        Real scale = max(abs(cur), pow2(tab.roundoff_floor_exp(), tab.wp()));
        if (diff <= tol * scale) {
            if (!need_confirm || confirmed_once) return cur;
            confirmed_once = true;
        } else {
            confirmed_once = false;
        }
        double dd = diff.is_zero() ? 0.0 : diff.to_double();
        if (last_diff > 0 && dd > 0.9 * last_diff) {
            if (++stall >= 3)
                throw QuadratureError(std::string(what) +
                                      ": refinement stalled above tolerance");
        } else {
            stall = 0;
        }
        last_diff = dd;
        prev = cur;
    }
    throw QuadratureError(std::string(what) + ": no convergence within level limit");
}

// ---------------------------------------------------------------------------
// Shared evaluation contexts, cached per (s, tolerance, u-bucket).

struct EvalContext {
    std::shared_ptr<WTable> table;
    Complex pre;  // 1 / (2 (1 - 2^{1-s}) Gamma(s))
    long wp = 0;
    double skip_ln = 0.0;

    EvalContext() : pre(kDefaultPrecision) {}
};

struct CacheKey {
    double sigma, t, tol, T_override;
    long prec, bucket;
    int kind;  // 0: interpolant family; 1: inverse-log (I1)
    bool composite;

    bool operator<(const CacheKey& o) const {
        return std::tie(sigma, t, tol, T_override, prec, bucket, kind, composite) <
               std::tie(o.sigma, o.t, o.tol, o.T_override, o.prec, o.bucket, o.kind,
                        o.composite);
    }
};

std::mutex g_ctx_mutex;
std::map<CacheKey, std::shared_ptr<EvalContext>> g_ctx_cache;

Complex prefactor_2dg(const SParam& s, long wp) {
    Complex z = s.value(wp);
    SParam sw(s.sigma.rounded(wp), s.t.rounded(wp));
    Complex d = eta_denominator(sw, wp);
    Complex gamma_s = exp(log_gamma(z));
    Complex one(Real(1L, wp), Real(0L, wp));
    return one / (d * gamma_s).mul_2si(1);
}

bool pick_composite(const QuadratureSpec& quad, double t_abs, double eps, double T) {
    if (quad.scheme_forced) return quad.scheme == QuadScheme::adaptive_composite;
    if (quad.scheme == QuadScheme::adaptive_composite) return true;
    double cycles = t_abs * (std::log(T) - std::log(eps)) / (2 * M_PI);
    return cycles > 256.0;
}

std::shared_ptr<EvalContext> get_context(const SParam& s, const QuadratureSpec& quad,
                                         double u_ceiling, int kind, double eps_override) {
    double t_abs = std::abs(s.t.to_double());
    double sigma = s.sigma.to_double();
    long wp = working_precision(s.precision, t_abs);
    double T = truncation_for(quad.tolerance, t_abs, sigma, quad.truncation_T);

    long bucket = 2;
    while (static_cast<double>(bucket) < u_ceiling + 2) bucket <<= 1;
    double eps = (eps_override > 0) ? eps_override
                                    : std::min(0.5, 2.0 / (2.0 + static_cast<double>(bucket)));
    bool composite = pick_composite(quad, t_abs, eps, T);

    CacheKey key{sigma, s.t.to_double(), quad.tolerance, quad.truncation_T,
                 s.precision, (eps_override > 0) ? -1 : bucket, kind, composite};

    std::lock_guard<std::mutex> lock(g_ctx_mutex);
    auto it = g_ctx_cache.find(key);
    if (it != g_ctx_cache.end()) return it->second;

    auto ctx = std::make_shared<EvalContext>();
    ctx->wp = wp;
    ctx->table = std::make_shared<WTable>(s, wp, quad.tolerance, eps, T, composite, quad.nodes);
    ctx->pre = prefactor_2dg(s, wp);
    ctx->skip_ln = std::log(quad.tolerance) - M_PI * t_abs / 2 - 30.0;

    if (g_ctx_cache.size() > 48) g_ctx_cache.clear();
    g_ctx_cache[key] = ctx;
    return ctx;
}

void check_a_domain(const Real& u, const SParam& s) {
    if ((s.sigma.to_double() + u.to_double()) <= 1e-12)
        throw DomainError("a_tilde requires sigma + u > 0");
}

Complex a_family_value(const Real& u, const SParam& s, const QuadratureSpec& quad,
                       bool du_mode) {
    if (s.t.sign() < 0) {
        Complex v = a_family_value(u, s.conjugated(), quad, du_mode);
        return v.conj();
    }
    check_a_domain(u, s);
    auto ctx = get_context(s, quad, u.to_double(), 0, 0.0);
    WTable& tab = *ctx->table;
    std::lock_guard<std::mutex> lock(tab.mutex);
    Real uw = u.rounded(ctx->wp);
    Complex core = adaptive_integral(tab, quad, uw, du_mode ? 1 : 0,
                                     du_mode ? "a_tilde_du" : "a_tilde");
    Complex tail = analytic_tail(tab.z(), uw, tab.eps(), ctx->wp, du_mode,
                                 ctx->skip_ln - uw.to_double() * M_LN2);
    return ((core + tail) * ctx->pre).rounded(s.precision);
}

}  // namespace

Complex a_tilde(const Real& u, const SParam& s, const QuadratureSpec& quad) {
    return a_family_value(u, s, quad, false);
}

Complex a_tilde(double u, const SParam& s, const QuadratureSpec& quad) {
    return a_tilde(Real(u, s.precision), s, quad);
}

Complex a_tilde_du(const Real& u, const SParam& s, const QuadratureSpec& quad) {
    return a_family_value(u, s, quad, true);
}

Complex a_tilde_du(double u, const SParam& s, const QuadratureSpec& quad) {
    return a_tilde_du(Real(u, s.precision), s, quad);
}

Complex interpolation_integral(const Real& u, const SParam& s, const QuadratureSpec& quad) {
    if (s.t.sign() < 0)
        return interpolation_integral(u, s.conjugated(), quad).conj();
    check_a_domain(u, s);
    auto ctx = get_context(s, quad, u.to_double(), 0, 0.0);
    WTable& tab = *ctx->table;
    std::lock_guard<std::mutex> lock(tab.mutex);
    Real uw = u.rounded(ctx->wp);
    Complex core = adaptive_integral(tab, quad, uw, 0, "interpolation_integral");
    Complex tail = analytic_tail(tab.z(), uw, tab.eps(), ctx->wp, false,
                                 ctx->skip_ln - uw.to_double() * M_LN2);
    Real unfold = exp(uw * const_ln2(ctx->wp));
    return ((core + tail) * unfold).rounded(s.precision);
}

Complex I1_numeric(const Real& x, const SParam& s, const QuadratureSpec& quad,
                   I1Contour contour) {
    if (s.t.sign() < 0)
        return I1_numeric(x, s.conjugated(), quad, contour).conj();
    if (x.sign() <= 0) throw DomainError("I1 requires x > 0");
    double t_abs = s.t.to_double();
    double sigma = s.sigma.to_double();
    double xd = x.to_double();

    if (contour == I1Contour::deformed) {
        if (t_abs <= 0) throw DomainError("deformed contour needs t > 0");
        long count = band_index(xd / t_abs);
        Complex acc(s.precision);
        for (long k = 1; k <= count; ++k) acc += residue_term(k, s);
        return acc;
    }

    double T = truncation_for(quad.tolerance, t_abs, sigma, quad.truncation_T);
    long required = static_cast<long>(20.0 * (t_abs / (2 * M_PI)) * T);
    if (quad.nodes < required)
        throw OscillationError("I1 node budget below the sampling heuristic for this t");

    // Left cut deep enough that the omitted (0, eps) piece stays below
    // tolerance relative to the e^{-pi t/2} magnitude of the integral.
    double ln_eps = (std::log(quad.tolerance) - M_PI * t_abs / 2 - 0.05 * t_abs - 30.0 +
                     xd * M_LN2) /
                    (sigma + xd);
    double eps = std::exp(std::min(ln_eps, std::log(0.2)));

    auto ctx = get_context(s, quad, xd, 1, eps);
    WTable& tab = *ctx->table;
    std::lock_guard<std::mutex> lock(tab.mutex);
    Real xw = x.rounded(ctx->wp);
    Complex core = adaptive_integral(tab, quad, xw, 2, "I1");
    // integrating ((1-e^{-w})/2)^u over u in [x, inf) gives -B^x / log B
    return (-(core * ctx->pre)).rounded(s.precision);
}

Complex residue_term(long k, const SParam& s) {
    if (k < 1) throw DomainError("residue index k must be >= 1");
    if (s.t.sign() < 0) return residue_term(k, s.conjugated()).conj();
    long p = s.precision;
    long wp = p + 2 * kGuardBits;
    Complex z = s.value(wp);
    SParam sw(s.sigma.rounded(wp), s.t.rounded(wp));
    Complex d = eta_denominator(sw, wp);
    Real pi = const_pi(wp);
    Real ln2k1(wp);
    mpfr_log_ui(ln2k1.raw(), static_cast<unsigned long>(2 * k - 1), MPFR_RNDN);
    // -4 (2k-1)^{s-1} pi^s i^s / (2 (1-2^{1-s}) Gamma(s)); principal i^s.
    Complex expo = (z - Real(1L, wp)) * ln2k1 + z * log(pi) +
                   mul_i(z) * pi.mul_2si(-1) - log_gamma(z);
    Complex val = exp(expo) * Real(-4L, wp);
    return (val / d.mul_2si(1)).rounded(p);
}

Complex chi_main_terms(const SParam& s, long count) {
    long p = s.precision;
    long wp = p + kGuardBits;
    Complex z = s.value(wp);
    Real ln2 = const_ln2(wp);
    Complex denom = Real(1L, wp) - exp((z - Real(1L, wp)) * ln2);  // 1 - 2^{s-1}
    if (abs(denom) < pow2(-p / 2, wp))
        throw DegenerateError("1 - 2^{s-1} vanishes to working precision");
    Complex acc(wp);
    Complex zm1 = z - Real(1L, wp);
    Real lnk(wp);
    for (long k = 1; k <= count; ++k) {
        mpfr_log_ui(lnk.raw(), static_cast<unsigned long>(2 * k - 1), MPFR_RNDN);
        acc += exp(zm1 * lnk);
    }
    SParam sw(s.sigma.rounded(wp), s.t.rounded(wp));
    return (chi(sw) * acc / denom).rounded(p);
}

namespace {

// Direct a_tilde_du through an existing table at a given refinement level.
Complex a_du_at(const WTable& tab, const Complex& pre, const Real& u, int L,
                double skip_ln) {
    Complex core = tab.sum(L, u, 1);
    Complex tail = analytic_tail(tab.z(), u, tab.eps(), tab.wp(), true,
                                 skip_ln - u.to_double() * M_LN2);
    return (core + tail) * pre;
}

}  // namespace

Complex I2_numeric(const Real& x, const SParam& s, const QuadratureSpec& quad,
                   const Real& u_window) {
    if (s.t.sign() < 0)
        return I2_numeric(x, s.conjugated(), quad, u_window).conj();
    if (x.sign() <= 0) throw DomainError("I2 requires x > 0");
    if (u_window.sign() <= 0) throw DomainError("I2 requires u_window > 0");
    long p = s.precision;
    double xd = x.to_double();
    double wd = u_window.to_double();
    double t_abs = s.t.to_double();
    double sigma = s.sigma.to_double();

    long wp = working_precision(p, t_abs);
    double T = truncation_for(quad.tolerance, t_abs, sigma, quad.truncation_T);
    double eps = std::min(0.5, 2.0 / (2.0 + xd + wd));
    bool composite = pick_composite(quad, t_abs, eps, T);
    double skip_ln = std::log(quad.tolerance) - M_PI * t_abs / 2 - 30.0;

    SParam sw(s.sigma.rounded(wp), s.t.rounded(wp));
    WTable tab(sw, wp, quad.tolerance, eps, T, composite, quad.nodes);
    Complex pre = prefactor_2dg(s, wp);

    int L0 = tab.start_level();
    if (!tab.ensure(L0 + 1)) throw QuadratureError("I2: node budget exhausted");

    // Window contract: the integrand at the truncation point must already be
    // below tolerance.
    Real xw = x.rounded(wp);
    Real uend = xw + u_window.rounded(wp);
    {
        Complex edge = a_du_at(tab, pre, uend, L0 + 1, skip_ln);
        if (abs(edge).cmp(quad.tolerance) > 0)
            throw WindowError("I2 u_window too small: integrand above tolerance at the edge");
    }

    Real tolr(quad.tolerance, wp);
    Complex prev_val(wp);
    bool have_prev = false;

    for (int pass = 0; pass < 6; ++pass) {
        int L = L0 + 1 + pass;
        if (!tab.ensure(L)) throw QuadratureError("I2: node budget exhausted");
        int g = (pass == 0) ? 8 : 16;
        const GaussLegendreRule& gl = gauss_legendre(g, wp);

        // Flatten the node set for this level.
        std::vector<const Level*> lvls;
        if (tab.composite()) {
            lvls.push_back(&tab.levels()[L]);
        } else {
            for (int l = 0; l <= L; ++l) lvls.push_back(&tab.levels()[l]);
        }
        size_t J = 0;
        for (auto* lv : lvls) J += lv->c.size();
        std::vector<Complex> cd;  // c * lb2
        std::vector<Real> lb2, b2;
        cd.reserve(J);
        lb2.reserve(J);
        b2.reserve(J);
        for (auto* lv : lvls)
            for (size_t i = 0; i < lv->c.size(); ++i) {
                cd.push_back(lv->c[i] * lv->lb2[i]);
                lb2.push_back(lv->lb2[i]);
                b2.push_back(lv->b2[i]);
            }
        Real hscale(1L, wp);
        if (!tab.composite()) hscale = Real(kTsBaseStep, wp).mul_2si(-L);

        long m_first = static_cast<long>(std::ceil(xd - 1e-15));
        long m_last = static_cast<long>(std::floor(xd + wd + 1e-15));
        if (m_last > m_first + 4000) throw WindowError("I2 window too wide");

        Complex total(wp);
        Real half(0.5, wp);

        // Partial panel [x, m_first) and tail panel [m_last, x + W]: direct.
        auto panel_direct = [&](const Real& lo, const Real& hi) {
            Real width = hi - lo;
            if (width.sign() <= 0) return;
            Complex acc(wp);
            for (int i = 0; i < g; ++i) {
                Real u = lo + width * gl.x[i];
                Complex v = a_du_at(tab, pre, u, L, skip_ln);
                acc += v * (gl.w[i] * psi_sawtooth(u));
            }
            total += acc * width;
        };
        panel_direct(xw, Real(m_first, wp));

        if (m_last > m_first) {
            // Q[i][j] = b2_j^{xi_i}; M_j = b2_j^m marched one unit at a time.
            std::vector<std::vector<Real>> Q(g);
            for (int i = 0; i < g; ++i) {
                Q[i].reserve(J);
                for (size_t j = 0; j < J; ++j) {
                    Real e(wp);
                    mpfr_mul(e.raw(), gl.x[i].raw(), lb2[j].raw(), MPFR_RNDN);
                    mpfr_exp(e.raw(), e.raw(), MPFR_RNDN);
                    Q[i].push_back(std::move(e));
                }
            }
            std::vector<Real> M;
            M.reserve(J);
            Real mf(static_cast<double>(m_first), wp);
            for (size_t j = 0; j < J; ++j) {
                Real e(wp);
                mpfr_mul(e.raw(), mf.raw(), lb2[j].raw(), MPFR_RNDN);
                mpfr_exp(e.raw(), e.raw(), MPFR_RNDN);
                M.push_back(std::move(e));
            }
            Real tmp(wp), acc_re(wp), acc_im(wp);
            for (long m = m_first; m < m_last; ++m) {
                Complex interval(wp);
                for (int i = 0; i < g; ++i) {
                    mpfr_set_zero(acc_re.raw(), 1);
                    mpfr_set_zero(acc_im.raw(), 1);
                    for (size_t j = 0; j < J; ++j) {
                        mpfr_mul(tmp.raw(), M[j].raw(), Q[i][j].raw(), MPFR_RNDN);
                        mpfr_fma(acc_re.raw(), tmp.raw(), cd[j].re().raw(), acc_re.raw(),
                                 MPFR_RNDN);
                        mpfr_fma(acc_im.raw(), tmp.raw(), cd[j].im().raw(), acc_im.raw(),
                                 MPFR_RNDN);
                    }
                    Complex node_sum =
                        Complex(acc_re.rounded(wp), acc_im.rounded(wp)) * hscale;
                    Real u = Real(static_cast<double>(m), wp) + gl.x[i];
                    Complex tail = analytic_tail(tab.z(), u, tab.eps(), wp, true,
                                                 skip_ln - u.to_double() * M_LN2);
                    Complex v = (node_sum + tail) * pre;
                    interval += v * (gl.w[i] * (gl.x[i] - half));
                }
                total += interval;
                for (size_t j = 0; j < J; ++j)
                    mpfr_mul(M[j].raw(), M[j].raw(), b2[j].raw(), MPFR_RNDN);
            }
        }
        panel_direct(Real(std::max(static_cast<double>(m_last), xd), wp), uend);

        if (have_prev) {
            Real diff = abs(total - prev_val);
            if (diff <= tolr * max(Real(1L, wp), abs(total)))
                return total.rounded(p);
        }
        prev_val = total;
        have_prev = true;
    }
    throw QuadratureError("I2: outer/inner refinement did not converge");
}

Complex I2_numeric(const Real& x, const SParam& s, const QuadratureSpec& quad,
                   double u_window) {
    return I2_numeric(x, s, quad, Real(u_window, s.precision));
}

Real em_identity_residual(const Real& x, const SParam& s, const QuadratureSpec& quad) {
    if (x.sign() <= 0) throw DomainError("identity check requires x > 0");
    if (x.is_integer())
        throw DomainError("identity check requires non-integer x (endpoint half-terms)");
    long p = s.precision;

    Complex zeta = zeta_reference(s, Real(quad.tolerance * 0.02, p));
    Complex lhs = zeta - partial_sum(x, s);

    Complex i1 = I1_numeric(x, s, quad, I1Contour::real_axis);
    Complex half_a = a_tilde(x, s, quad).mul_2si(-1);

    double W = std::max(25.0, 3.0 / 0.28);
    Complex i2(p);
    for (;;) {
        try {
            i2 = I2_numeric(x, s, quad, Real(W, p));
            break;
        } catch (const WindowError&) {
            if (W > 800) throw;
            W *= 1.6;
        }
    }
    return abs(lhs - i1 - i2 - half_a).rounded(p);
}

Real em_identity_residual(double x, const SParam& s, const QuadratureSpec& quad) {
    return em_identity_residual(Real(x, s.precision), s, quad);
}

}  // namespace zafe
