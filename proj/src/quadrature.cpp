#include "zafe/quadrature.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>

namespace zafe {

namespace {

std::mutex g_gl_mutex;
std::map<std::pair<int, long>, std::unique_ptr<GaussLegendreRule>> g_gl_cache;

// Legendre P_n and P_n' at x by the three-term recurrence.
void legendre_pair(int n, const Real& x, Real& p, Real& dp, long prec) {
    Real p0(1L, prec), p1 = x;
    for (int k = 2; k <= n; ++k) {
        Real pk = (Real(2 * k - 1, prec) * x * p1 - Real(k - 1, prec) * p0) / Real(k, prec);
        p0 = p1;
        p1 = pk;
    }
    p = p1;
    // (x^2 - 1) P_n' = n (x P_n - P_{n-1})
    dp = Real(n, prec) * (x * p1 - p0) / (x * x - Real(1L, prec));
}

std::unique_ptr<GaussLegendreRule> build_gauss_legendre(int order, long prec) {
    auto rule = std::make_unique<GaussLegendreRule>();
    rule->x.reserve(order);
    rule->w.reserve(order);
    Real one(1L, prec), half(0.5, prec);
    for (int i = 1; i <= order; ++i) {
        double guess = std::cos(M_PI * (i - 0.25) / (order + 0.5));
        Real x(guess, prec), p(prec), dp(prec);
        for (int it = 0; it < 64; ++it) {
            legendre_pair(order, x, p, dp, prec);
            Real step = p / dp;
            x -= step;
            if (abs(step) < pow2(-prec + 4, prec)) break;
        }
        legendre_pair(order, x, p, dp, prec);
        Real w = Real(2L, prec) / ((one - x * x) * dp * dp);
        // map from (-1,1) (descending x) to (0,1) ascending
        rule->x.push_back((one - x) * half);
        rule->w.push_back(w * half);
    }
    return rule;
}

}  // namespace

const GaussLegendreRule& gauss_legendre(int order, long prec) {
    std::lock_guard<std::mutex> lock(g_gl_mutex);
    auto key = std::make_pair(order, prec);
    auto it = g_gl_cache.find(key);
    if (it == g_gl_cache.end())
        it = g_gl_cache.emplace(key, build_gauss_legendre(order, prec)).first;
    return *it->second;
}

TanhSinhPoint tanh_sinh_point(const Real& tau, long prec) {
    // x(tau) = (1 + tanh((pi/2) sinh tau)) / 2; d = 1 - x(tau) = x(-tau)
    Real g = const_pi(prec).mul_2si(-1) * sinh(tau);
    Real e2g = exp(g.mul_2si(1));  // e^{2g}
    Real d = Real(1L, prec) / (Real(1L, prec) + e2g);
    // x'(tau) = (pi/4) cosh(tau) / cosh^2(g)
    Real ch = cosh(g);
    Real weight = const_pi(prec).mul_2si(-2) * cosh(tau) / (ch * ch);
    return {std::move(d), std::move(weight)};
}

}  // namespace zafe
