#ifndef LGF_LATTICE_HPP
#define LGF_LATTICE_HPP

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace lgf {

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Displacement violates the coordinate convention of its lattice family.
struct InvalidDisplacement : Error {
    using Error::Error;
};

/// Evaluation point outside the domain of the requested function.
struct DomainError : Error {
    using Error::Error;
};

/// Power series requested inside the unit disk where it diverges.
struct ConvergenceDomain : Error {
    using Error::Error;
};

/// No built-in singular model for this lattice/displacement.
struct UnsupportedModel : Error {
    using Error::Error;
};

/// Least-squares fit has a vanishing normal matrix on the requested range.
struct DegenerateFit : Error {
    using Error::Error;
};

/// Adaptive quadrature could not reach the requested tolerance.
struct QuadratureFailure : Error {
    using Error::Error;
};

/// Walk length exceeds the patch radius, so boundary truncation would bias counts.
struct PatchTooSmall : Error {
    using Error::Error;
};

// ---------------------------------------------------------------------------
// Lattices
// ---------------------------------------------------------------------------

enum class Family {
    chain,
    square,
    bcc,
    cubic,
    hypercubic4,
    honeycomb,
    diamond,
    triangular,
    fcc,
};

/// Identity of a lattice family plus coordination number and dimensionality.
struct LatticeSpec {
    Family family;
    int z;    ///< coordination number; hopping is scaled t = 1/z
    int dim;  ///< spatial dimension of the lattice
};

/// All nine supported lattices, in the table column order
/// (chain, square, bcc, honeycomb, diamond, cubic, hypercubic4, triangular, fcc).
const std::vector<LatticeSpec>& all_lattices();

LatticeSpec lattice(Family f);
Family family_from_name(std::string_view name);  // accepts aliases hon/hcub/tri/sq
std::string_view family_name(Family f);

/// Number of integer coordinates a displacement carries for this family.
/// honeycomb/triangular use 3 projected cubic coordinates; diamond/fcc use
/// 4 grid coordinates (u,v,w,s); the rest use one coordinate per dimension.
int coord_count(Family f);

/// True for every family except triangular and fcc.  On bipartite lattices
/// W_n vanishes whenever n + sum(coords) is odd.
bool is_bipartite(Family f);

// ---------------------------------------------------------------------------
// Displacements
// ---------------------------------------------------------------------------

enum class CoordConvention {
    cartesian,  ///< per-axis integer coordinates (projected cubic for honeycomb/triangular)
    grid4,      ///< 4D grid (u,v,w,s) embedding for diamond/fcc
};

struct Displacement {
    std::vector<int> coords;
    CoordConvention convention = CoordConvention::cartesian;

    bool is_origin() const;
    int coord_sum() const;
    std::string to_string() const;
};

Displacement origin_displacement(const LatticeSpec& lat);
Displacement make_displacement(const LatticeSpec& lat, std::vector<int> coords);

/// Throws InvalidDisplacement unless the coordinate count and the family's
/// sublattice constraints hold:
///   honeycomb: x+y+z in {0,1};  triangular: x+y+z = 0;
///   diamond:   u+v+w+s in {0,1};  fcc: u+v+w+s = 0.
void validate_displacement(const LatticeSpec& lat, const Displacement& r);

}  // namespace lgf

#endif
