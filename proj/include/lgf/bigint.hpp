#ifndef LGF_BIGINT_HPP
#define LGF_BIGINT_HPP

#include <gmpxx.h>

#include <string>

namespace lgf {

using Int = mpz_class;

/// n!, memoized.  The cache grows monotonically and entries are immutable
/// once published, so concurrent readers need no locking after warm-up.
const Int& factorial(int n);

/// Pre-extends the factorial cache so later lookups are lock-free.
void warm_factorials(int n_max);

/// Binomial coefficient; 0 when k < 0 or k > n.
Int binomial(long n, long k);

/// num/den as a double, one rounding step.
double ratio_as_double(const Int& num, const Int& den);

std::string to_decimal(const Int& v);

}  // namespace lgf

#endif
