#ifndef LGF_CHEB_HPP
#define LGF_CHEB_HPP

#include <span>
#include <vector>

#include "lgf/bigint.hpp"
#include "lgf/lattice.hpp"
#include "lgf/walks.hpp"

namespace lgf {

// ---------------------------------------------------------------------------
// Power-to-Chebyshev coefficient table
// ---------------------------------------------------------------------------

/// Integer coefficients a_nk with T_n(x) = sum_k a_nk x^k.  Nonzero only for
/// n-k even; built from a_00 = 1, a_11 = 1, a_nk = 2 a_{n-1,k-1} - a_{n-2,k}.
class ChebCoeffTable {
  public:
    explicit ChebCoeffTable(std::vector<std::vector<Int>> rows) : rows_(std::move(rows)) {}

    int max_order() const { return static_cast<int>(rows_.size()) - 1; }
    const Int& at(int n, int k) const { return rows_[n][k]; }
    const std::vector<Int>& row(int n) const { return rows_[n]; }

  private:
    std::vector<std::vector<Int>> rows_;
};

ChebCoeffTable build_coeff_table(int N);

// ---------------------------------------------------------------------------
// Chebyshev moments
// ---------------------------------------------------------------------------

/// Exact scaled moments z^n g_n (integers) plus the floating g_n in [-1,1].
/// The integers are the source of truth; floats are one division each.
struct MomentTable {
    LatticeSpec lattice;
    Displacement displacement;
    std::vector<Int> scaled;    ///< z^n g_n
    std::vector<double> floats; ///< g_n

    int max_order() const { return static_cast<int>(scaled.size()) - 1; }
};

/// z^n g_n = sum_k a_nk z^{n-k} W_k, entirely in integer arithmetic.
/// Requires coeffs.max_order() >= walks.max_order().
MomentTable moments_from_walks(const WalkTable& walks, const ChebCoeffTable& coeffs);

/// Inverse relation: recovers the scaled power moments z^{-n} W_n from the
/// Chebyshev moments via x^k = 2^{1-k} sum' C(k,(k-j)/2) T_j(x).
std::vector<double> power_moments_from_chebyshev(const MomentTable& moments);

// ---------------------------------------------------------------------------
// Analytic transform pairs (f(omega), f_n)
// ---------------------------------------------------------------------------

enum class PairKind {
    delta_like,   ///< 1/(pi sqrt(1-w^2))          -> delta_n
    semicircle,   ///< sqrt(1-w^2)/pi              -> delta_n/2 - delta_{n-2}/4
    constant,     ///< 1                           -> 2/(1-n^2), even n
    parabolic,    ///< 1-w^2                       -> 12/((1-n^2)(9-n^2)), even n
    log,          ///< ln(1/|w|)/(pi sqrt(1-w^2))  -> ln2; (-1)^{n/2}/n
    log_squared,  ///< ln^2(1/|w|)/(pi sqrt(1-w^2))-> pi^2/12+ln^2 2; see transform_coeff
};

struct TransformPair {
    PairKind kind;
    double weight = 1.0;  ///< used when the pair appears as a singular-model term
};

/// Chebyshev coefficient f_n of the (unweighted) table row; 0 for odd n.
double transform_coeff(const TransformPair& pair, int n);

/// f(omega) of the (unweighted) table row.  Throws DomainError at |omega| >= 1
/// for the 1/sqrt(1-w^2)-weighted kinds and at omega = 0 for the log kinds.
double transform_eval(const TransformPair& pair, double omega);

/// f(cos theta) * sin theta, the form that stays finite and cancellation-free
/// under the theta = arccos(omega) substitution used by the quadratures.
double transform_eval_theta(const TransformPair& pair, double theta);

/// Harmonic number H_m = sum_{k=1}^m 1/k, with a cached prefix table.
double harmonic_number(int m);

// ---------------------------------------------------------------------------
// Windows and series evaluation
// ---------------------------------------------------------------------------

/// Kaiser-Bessel taper I0(beta sqrt(1-(n/(L-1))^2)) / I0(beta), 0 <= n <= L-1.
double kaiser_window(int n, int L, double beta);

/// I0 by its power series, terms stopped at relative 1e-17.
double bessel_i0(double x);

/// sum_n c_n T_n(omega) by backward (Clenshaw) recurrence.
double eval_T_series(std::span<const double> c, double omega);

/// sum_n c_n U_{n-1}(omega), with U_{-1} = 0, by backward recurrence.
double eval_U_series(std::span<const double> c, double omega);

/// sum_n c_n cos(n theta); the T series in angle form, used where omega is
/// derived from theta and the endpoint sqrt would lose precision.
double eval_cos_series(std::span<const double> c, double theta);

}  // namespace lgf

#endif
