#ifndef LGF_WALKS_HPP
#define LGF_WALKS_HPP

#include <array>
#include <vector>

#include "lgf/bigint.hpp"
#include "lgf/lattice.hpp"

namespace lgf {

/// Exact walk counts W_0..W_N for one lattice and displacement.
struct WalkTable {
    LatticeSpec lattice;
    Displacement displacement;
    std::vector<Int> counts;

    int max_order() const { return static_cast<int>(counts.size()) - 1; }
};

/// Number of closed walks of length n (start and end at the origin).
Int count_closed_walks(const LatticeSpec& lat, int n);

/// Number of walks of length n from the origin to displacement r.
/// Returns 0 when parity makes r unreachable in n steps; throws
/// InvalidDisplacement when r violates its family's coordinate convention.
Int count_walks_to(const LatticeSpec& lat, const Displacement& r, int n);

/// Cartesian projection of the 4D grid coordinates used for diamond/fcc:
/// (u,v,w,s) -> (u+v-w-s, u-v+w-s, u-v-w+s).
std::array<int, 3> project_grid4(int u, int v, int w, int s);

/// counts[n] = count_walks_to(lat, r, n) for n = 0..N, sharing factorial
/// caches and parent-family tables across n.
WalkTable build_walk_table(const LatticeSpec& lat, const Displacement& r, int N);

}  // namespace lgf

#endif
