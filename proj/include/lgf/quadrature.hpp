#ifndef LGF_QUADRATURE_HPP
#define LGF_QUADRATURE_HPP

#include <functional>
#include <span>

namespace lgf {

/// Integrand defined on (a,b); may diverge integrably at the endpoints.
using RealFn = std::function<double(double)>;

/// Integral of f over [a,b] by tanh-sinh quadrature.  Endpoints may carry
/// integrable (log or inverse-square-root) singularities.  Throws
/// QuadratureFailure when the error estimate exceeds the tolerance.
double integrate_endpoint_singular(const RealFn& f, double a, double b, double tol);

/// Integral of a smooth f over [a,b] by adaptive Gauss-Kronrod refinement.
double integrate_adaptive(const RealFn& f, double a, double b, double tol);

/// Principal value of integral_0^pi C(theta) / (cos theta - cos theta0) dtheta.
///
/// Splits at theta0 and at the listed interior singular angles of C; the
/// symmetric window around theta0 is integrated as the pairwise sum
/// C(theta0+u)/D+ + C(theta0-u)/D- whose pole cancels.  Equivalently this is
/// P.V. integral_{-1}^{1} [C(arccos nu)/sqrt(1-nu^2)] / (nu - omega) dnu with
/// omega = cos theta0.
double pv_cheb_integral(const RealFn& C, double theta0,
                        std::span<const double> singular_thetas, double tol);

}  // namespace lgf

#endif
