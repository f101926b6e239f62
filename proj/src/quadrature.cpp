#include "lgf/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "lgf/lattice.hpp"

namespace lgf {

namespace {
constexpr double kPi = std::numbers::pi;
}

double integrate_endpoint_singular(const RealFn& f, double a, double b, double tol) {
    if (a == b) return 0.0;
    boost::math::quadrature::tanh_sinh<double> ts;
    double error = 0.0, l1 = 0.0;
    // The reported estimate is the last level difference; the achieved error
    // is close to its square, so terminate at sqrt(tol).
    const double term = std::sqrt(tol);
    const double v = ts.integrate(f, a, b, term, &error, &l1);
    if (error > 10.0 * term * std::max(1.0, l1))
        throw QuadratureFailure("tanh-sinh quadrature did not converge to tolerance");
    return v;
}

double integrate_adaptive(const RealFn& f, double a, double b, double tol) {
    if (a == b) return 0.0;
    double error = 0.0, l1 = 0.0;
    const double v = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
        f, a, b, 12, tol, &error, &l1);
    if (error > std::max(std::sqrt(tol), 100.0 * tol) * std::max(1.0, l1))
        throw QuadratureFailure("Gauss-Kronrod quadrature did not converge to tolerance");
    return v;
}

double pv_cheb_integral(const RealFn& C, double theta0,
                        std::span<const double> singular_thetas, double tol) {
    if (theta0 <= 0.0 || theta0 >= kPi)
        throw DomainError("principal-value angle must lie strictly inside (0, pi)");
    const double w = std::cos(theta0);

    // Half-width of the symmetric window around theta0, kept clear of the
    // interval ends and of the integrand's own singular angles.
    double a = std::min(theta0, kPi - theta0) / 2.0;
    for (double ts : singular_thetas) a = std::min(a, std::abs(ts - theta0) / 2.0);
    a = std::min(a, 0.5);
    if (a <= 0.0) throw DomainError("principal-value point coincides with a singular angle");

    // Pairwise sum across the pole: the denominators are evaluated in product
    // form so they never suffer cancellation.  The clamp keeps the 0/0 at
    // u = 0 finite without leaving the window.
    const double u_min = std::min(1e-12, 1e-6 * a);
    const auto pair_sum = [&, u_min](double u) {
        if (u < u_min) u = u_min;
        const double sig = std::sin(0.5 * u);
        const double dplus = -2.0 * sig * std::sin(theta0 + 0.5 * u);
        const double dminus = 2.0 * sig * std::sin(theta0 - 0.5 * u);
        return C(theta0 + u) / dplus + C(theta0 - u) / dminus;
    };
    double total = integrate_adaptive(pair_sum, 0.0, a, tol);

    // Remaining segments carry no pole; split at the integrand's singular
    // angles and integrate with endpoint-tolerant quadrature.
    std::vector<double> cuts{0.0, theta0 - a, theta0 + a, kPi};
    for (double ts : singular_thetas)
        if (ts > 0.0 && ts < kPi) cuts.push_back(ts);
    std::sort(cuts.begin(), cuts.end());
    const auto integrand = [&](double th) { return C(th) / (std::cos(th) - w); };
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double lo = cuts[i], hi = cuts[i + 1];
        if (hi - lo < 1e-14) continue;
        if (lo >= theta0 - a && hi <= theta0 + a) continue;  // the window itself
        total += integrate_endpoint_singular(integrand, lo, hi, tol);
    }
    return total;
}

}  // namespace lgf
