#ifndef LGF_GREENS_HPP
#define LGF_GREENS_HPP

#include <complex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lgf/cheb.hpp"
#include "lgf/lattice.hpp"
#include "lgf/walks.hpp"

namespace lgf {

using Complex = std::complex<double>;

/// Evaluators refuse |omega| > 1 - kEdgeGuard on the cut; the 1/sqrt(1-w^2)
/// prefactor diverges at the band edges.
inline constexpr double kEdgeGuard = 1e-12;

// ---------------------------------------------------------------------------
// Singular models
// ---------------------------------------------------------------------------

/// Subdominant singular form whose coefficient is determined by a
/// least-squares fit on the residual moments.
struct FittedTerm {
    TransformPair form;
    int n_lo = -1;                      ///< fit range, even n in [n_lo, n_hi]
    int n_hi = -1;
    std::optional<double> coefficient;  ///< set by fit_subdominant
};

/// Weighted sum of transform pairs mimicking the van Hove singularities of a
/// spectral function, plus an optional fitted subdominant term.
struct SingularModel {
    std::vector<TransformPair> terms;
    std::optional<FittedTerm> fitted;

    bool empty() const { return terms.empty() && !fitted_active(); }
    bool fitted_active() const { return fitted && fitted->coefficient.has_value(); }

    /// f_n = sum_i weight_i * transform_coeff(pair_i, n) (+ fitted term).
    double coeff(int n) const;
    /// f(omega); DomainError propagates from log kinds at omega = 0.
    double eval(double omega) const;
    /// f(cos theta) * sin theta.
    double eval_theta(double theta) const;
    /// Interior singular angles (theta = pi/2 when any log kind is present).
    std::vector<double> singular_thetas() const;

    std::string describe() const;
};

/// Built-in van Hove models.
///   square origin:      (2/pi) log + (1/pi) constant
///   square (x,y):       [cos(pi(x+y)/2) + cos(pi(x-y)/2)]/pi on log
///   bcc origin:         (2/pi^2) log_squared + (4 ln8/pi^2) log
///   bcc, coords = 4k:   (2/pi^2) log_squared + fitted log term
///   bcc otherwise:      phase-weighted log_squared only (accuracy downgrade)
/// Throws UnsupportedModel for other lattices.
SingularModel builtin_singular_model(const LatticeSpec& lat, const Displacement& r);

// ---------------------------------------------------------------------------
// Subtraction and fitting
// ---------------------------------------------------------------------------

struct Residual {
    std::vector<double> h;      ///< h_n = g_n - f_n
    double tail_estimate;       ///< |h_N|, the truncation-error proxy
};

Residual subtract_singularities(const MomentTable& moments, const SingularModel& model);

struct FitResult {
    double coefficient;  ///< c = sum h_n phi_n / sum phi_n^2 over even n in range
    double pre_norm;     ///< l2 norm of h on the fit range before subtraction
    double post_norm;    ///< l2 norm of h - c phi on the fit range
};

/// Least-squares coefficient of `form` against the residual over even n in
/// [n_lo, n_hi].  Throws DegenerateFit when the form vanishes on the range.
FitResult fit_subdominant(std::span<const double> h, const TransformPair& form,
                          int n_lo, int n_hi);

/// Least-squares slope of ln|c_n| vs ln n over the nonzero entries with
/// n in [n_lo, n_hi]; subtract_log removes a ln(n) factor first.
double tail_exponent(std::span<const double> c, int n_lo, int n_hi, bool subtract_log = false);

// ---------------------------------------------------------------------------
// Evaluators
// ---------------------------------------------------------------------------

/// G(omega) = sum_n z^{-n} W_n / omega^{n+1} by Horner accumulation.
/// Converges for |omega| > 1 only; throws ConvergenceDomain otherwise.
Complex eval_power_series(const WalkTable& walks, Complex omega);
Complex eval_power_series(std::span<const double> scaled_walk_moments, Complex omega);

/// z^{-n} W_n as doubles (the power-series coefficients).
std::vector<double> scaled_walk_moments(const WalkTable& walks);

/// g(omega) = (1/(pi sqrt(1-w^2))) sum_n (2-delta_n) f^win_n T_n(omega) g_n.
/// Refuses |omega| >= 1 - edge_eps.
double eval_spectral(const MomentTable& moments, double omega,
                     std::optional<double> window_beta = {}, double edge_eps = kEdgeGuard);

/// G(omega+i0+) on the cut from the moment series; Im G = -pi g(omega).
Complex eval_green_on_cut(const MomentTable& moments, double omega,
                          std::optional<double> window_beta = {},
                          double edge_eps = kEdgeGuard);

/// g(omega) = f(omega) + h(omega) with the window (if any) applied to h_n only.
double reconstruct_spectral(const SingularModel& model, std::span<const double> h,
                            double omega, std::optional<double> window_beta = {});

/// H(omega): the on-cut Green series of a residual coefficient sequence.
Complex green_from_residual(std::span<const double> h, double omega,
                            std::optional<double> window_beta = {});

/// G = F + H with F(omega) = P.V. integral f(nu)/(omega-nu) dnu - i pi f(omega),
/// the principal value done by adaptive quadrature split at nu = omega and at
/// the model's interior singular point.  Throws QuadratureFailure if the
/// requested tolerance cannot be reached.
Complex real_part_reconstruct(const SingularModel& model, std::span<const double> h,
                              double omega, double tol = 1e-9);

// ---------------------------------------------------------------------------
// Grid evaluation
// ---------------------------------------------------------------------------

struct EvalOptions {
    int terms = 1000;
    std::optional<double> window_beta;        ///< Kaiser beta; none = rectangular
    bool subtract = false;                    ///< use the built-in singular model
    std::optional<std::pair<int, int>> fit_range;  ///< default: even n in [0.4N, N]
    double pv_tol = 1e-9;
    unsigned threads = 0;                     ///< 0 = hardware concurrency
};

struct GreenResultMeta {
    int terms_used = 0;
    std::optional<double> window_beta;
    std::string model = "none";
    double residual_tail_estimate = 0.0;   ///< |h_N|
    std::optional<double> fitted_coefficient;
};

/// omega grid with G and the spectral function; NaN marks per-point domain
/// failures (e.g. the model pole at omega = 0 when subtracting).
struct GreenResult {
    std::vector<double> omega;
    std::vector<Complex> green;
    std::vector<double> spectral;
    GreenResultMeta meta;
};

/// Dispatches each point: power series for |omega| > 1, on-cut series (with
/// optional subtraction and window) inside.  Pure per point; parallel over
/// the grid with results written in grid order.
GreenResult evaluate_grid(const WalkTable& walks, const MomentTable& moments,
                          std::vector<double> omegas, const EvalOptions& opt);

}  // namespace lgf

#endif
