#include "zafe/bernoulli.hpp"

#include <mutex>
#include <vector>

namespace zafe {

namespace {
std::mutex g_mutex;
std::vector<mpq_class> g_cache;  // B_0, B_1, ...

// B_m = -1/(m+1) * sum_{k<m} C(m+1,k) B_k
void extend_cache(unsigned n) {
    if (g_cache.empty()) {
        g_cache.emplace_back(1);
    }
    while (g_cache.size() <= n) {
        unsigned m = static_cast<unsigned>(g_cache.size());
        if (m >= 3 && (m % 2) == 1) {
            g_cache.emplace_back(0);
            continue;
        }
        mpq_class sum(0);
        mpz_class binom;
        for (unsigned k = 0; k < m; ++k) {
            if (k >= 3 && (k % 2) == 1) continue;
            mpz_bin_uiui(binom.get_mpz_t(), m + 1, k);
            sum += mpq_class(binom) * g_cache[k];
        }
        mpq_class b = -sum / mpq_class(m + 1);
        b.canonicalize();
        g_cache.push_back(b);
    }
}
}  // namespace

mpq_class bernoulli(unsigned n) {
    std::lock_guard<std::mutex> lock(g_mutex);
    extend_cache(n);
    return g_cache[n];
}

Real bernoulli_real(unsigned n, long prec) {
    mpq_class b = bernoulli(n);
    Real r(prec);
    mpfr_set_q(r.raw(), b.get_mpq_t(), MPFR_RNDN);
    return r;
}

mpz_class factorial(unsigned n) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return f;
}

}  // namespace zafe
