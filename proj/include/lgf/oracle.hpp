#ifndef LGF_ORACLE_HPP
#define LGF_ORACLE_HPP

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <unordered_map>
#include <vector>

#include "lgf/bigint.hpp"
#include "lgf/cheb.hpp"
#include "lgf/greens.hpp"
#include "lgf/lattice.hpp"

namespace lgf {

// Brute-force verifiers.  Deliberately simple and slow; only the adjacency
// walk oracle is held to zero tolerance.

/// All sites reachable from the origin in <= radius steps, with neighbor
/// lists.  Sites at graph distance < radius carry all z neighbors; sites on
/// the rim may have truncated lists and never emit for walks of length
/// <= radius.
class FinitePatch {
  public:
    FinitePatch(const LatticeSpec& lat, int radius);

    const LatticeSpec& lattice() const { return lattice_; }
    int radius() const { return radius_; }
    std::size_t size() const { return sites_.size(); }
    const std::array<int, 4>& site(std::size_t i) const { return sites_[i]; }
    const std::vector<std::vector<int32_t>>& neighbors() const { return neighbors_; }
    int coord_count() const { return ncoord_; }

    /// Site index for a coordinate tuple, or -1 when outside the patch.
    int find(std::span<const int> coords) const;
    int origin_index() const { return origin_; }

  private:
    LatticeSpec lattice_;
    int radius_;
    int ncoord_;
    int origin_;
    std::vector<std::array<int, 4>> sites_;
    std::vector<std::vector<int32_t>> neighbors_;
    std::unordered_map<std::uint64_t, int32_t> index_;
};

/// Applies the adjacency operator step by step to the origin indicator
/// vector in exact integer arithmetic; amplitudes()[i] after n steps is the
/// number of n-step walks from the origin to site i.
class AdjacencyWalker {
  public:
    explicit AdjacencyWalker(const FinitePatch& patch);
    void step();  ///< throws PatchTooSmall beyond the patch radius
    int steps() const { return steps_; }
    const std::vector<Int>& amplitudes() const { return amp_; }

  private:
    const FinitePatch& patch_;
    int steps_ = 0;
    std::vector<Int> amp_, next_;
};

/// W_{r,n} by n applications of the adjacency operator.
/// Throws PatchTooSmall when n > patch.radius().
Int walks_via_adjacency(const FinitePatch& patch, const Displacement& r, int n);

/// Lorentzian-broadened Brillouin-zone estimate of g_r(omega):
/// (1/N_k) sum_k cos(k.r) (eta/pi)/((omega - eps(k))^2 + eta^2) on a uniform
/// grid of grid_per_dim points per dimension, with eps(k) = (1/z) sum_delta
/// e^{ik.delta}.  Accuracy is O(eta) + O(grid spacing); honeycomb/diamond use
/// the equivalent two-band resolvent broadening -Im G(omega+i eta)/pi.
double spectral_via_bz(const LatticeSpec& lat, const Displacement& r, double omega,
                       int grid_per_dim, double eta);

/// Richardson step: 2 g(eta) - g(2 eta) removes the O(eta) broadening error.
double spectral_via_bz_extrapolated(const LatticeSpec& lat, const Displacement& r,
                                    double omega, int grid_per_dim, double eta);

/// Complex-frequency BZ sum (1/N_k) sum_k e^{ik.r} / (omega - eps(k)); valid
/// off the cut, used to cross-check the power series for |omega| > 1.
std::complex<double> green_via_bz(const LatticeSpec& lat, const Displacement& r,
                                  std::complex<double> omega, int grid_per_dim);

/// A spectral function prepared for Chebyshev-weighted quadrature: the value
/// form g(omega) plus the angle form g(cos theta) sin(theta) that keeps the
/// band-edge weight exact, with its interior singular angles.
struct SpectralFunction {
    std::function<double(double)> value;       ///< g(omega) on (-1,1)
    std::function<double(double)> theta_form;  ///< g(cos theta) sin(theta)
    std::vector<double> singular_thetas;       ///< interior splits for quadrature

    static SpectralFunction from_value(std::function<double(double)> g,
                                       std::vector<double> singular_omegas = {});
};

/// f_n = integral_{-1}^{1} T_n(omega) g(omega) d omega via the theta
/// substitution with singular-point-aware subdivision.
/// Throws QuadratureFailure on non-convergence.
double moment_via_quadrature(const SpectralFunction& g, int n, double tol = 1e-10);

/// Raw truncated moment series as a SpectralFunction (exact angle form).
SpectralFunction series_spectral(const MomentTable& moments);

/// Singularity-subtracted reconstruction f + h as a SpectralFunction with
/// the model's singular angles registered for quadrature splitting.
SpectralFunction reconstruction_spectral(const SingularModel& model,
                                         std::vector<double> h);

}  // namespace lgf

#endif
