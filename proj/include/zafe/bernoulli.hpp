#ifndef ZAFE_BERNOULLI_HPP
#define ZAFE_BERNOULLI_HPP

#include <gmpxx.h>

#include "zafe/real.hpp"

namespace zafe {

/// Exact Bernoulli number B_n (B_1 = -1/2 convention). Cached; thread-safe.
mpq_class bernoulli(unsigned n);

/// B_n rounded to the given precision.
Real bernoulli_real(unsigned n, long prec);

/// Exact n! as a rational (for series coefficients).
mpz_class factorial(unsigned n);

}  // namespace zafe

#endif
