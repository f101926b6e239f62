#ifndef LGF_FIXTURES_HPP
#define LGF_FIXTURES_HPP

#include <array>
#include <cstdint>

#include "lgf/lattice.hpp"

namespace lgf::fixtures {

// Reference sequences for n = 0..10, lattices in the order of all_lattices():
// chain, square, bcc, honeycomb, diamond, cubic, hypercubic4, triangular, fcc.
// The closed-walk columns coincide with OEIS A000984, A002894, A002897,
// A002893, A002895, A002896, A039699, A002898, A002899.

inline constexpr int kMaxN = 10;

/// W_n, closed walks.
extern const std::array<std::array<std::int64_t, kMaxN + 1>, 9> closed_walks;

/// z^n g_n, scaled local Chebyshev moments.
extern const std::array<std::array<std::int64_t, kMaxN + 1>, 9> scaled_moments;

/// a_nk for n <= 6 (k = 0..n; zeros where n-k is odd).
extern const std::array<std::array<std::int64_t, 7>, 7> cheb_coeffs;

}  // namespace lgf::fixtures

#endif
