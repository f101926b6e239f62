#include "lgf/greens.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>
#include <thread>

#include "lgf/quadrature.hpp"

namespace lgf {

namespace {

constexpr double kPi = std::numbers::pi;

// cos(pi m / 2) for integer m, exactly.
double cos_half_pi(int m) {
    switch (((m % 4) + 4) % 4) {
        case 0: return 1.0;
        case 2: return -1.0;
        default: return 0.0;
    }
}

void check_on_cut(double omega, double edge_eps = kEdgeGuard) {
    if (std::abs(omega) >= 1.0 - edge_eps)
        throw DomainError(fmt::format("omega = {} too close to the band edge", omega));
}

// (2 - delta_n) f^win_n coef_n, the weights entering both on-cut series.
std::vector<double> weighted_coeffs(std::span<const double> coef,
                                    std::optional<double> window_beta) {
    const int L = static_cast<int>(coef.size());
    std::vector<double> c(coef.begin(), coef.end());
    for (int n = 1; n < L; ++n) c[static_cast<std::size_t>(n)] *= 2.0;
    if (window_beta && *window_beta != 0.0)
        for (int n = 0; n < L; ++n)
            c[static_cast<std::size_t>(n)] *= kaiser_window(n, L, *window_beta);
    return c;
}

double spectral_from_coeffs(std::span<const double> c, double omega) {
    return eval_T_series(c, omega) / (kPi * std::sqrt(1.0 - omega * omega));
}

const char* kind_name(PairKind k) {
    switch (k) {
        case PairKind::delta_like: return "delta";
        case PairKind::semicircle: return "semicircle";
        case PairKind::constant: return "constant";
        case PairKind::parabolic: return "parabolic";
        case PairKind::log: return "log";
        case PairKind::log_squared: return "log^2";
    }
    return "?";
}

}  // namespace

// ---------------------------------------------------------------------------
// SingularModel
// ---------------------------------------------------------------------------

double SingularModel::coeff(int n) const {
    double f = 0.0;
    for (const auto& t : terms) f += t.weight * transform_coeff(t, n);
    if (fitted_active()) f += *fitted->coefficient * transform_coeff(fitted->form, n);
    return f;
}

double SingularModel::eval(double omega) const {
    double f = 0.0;
    for (const auto& t : terms) f += t.weight * transform_eval(t, omega);
    if (fitted_active()) f += *fitted->coefficient * transform_eval(fitted->form, omega);
    return f;
}

double SingularModel::eval_theta(double theta) const {
    double f = 0.0;
    for (const auto& t : terms) f += t.weight * transform_eval_theta(t, theta);
    if (fitted_active()) f += *fitted->coefficient * transform_eval_theta(fitted->form, theta);
    return f;
}

std::vector<double> SingularModel::singular_thetas() const {
    auto is_log = [](PairKind k) { return k == PairKind::log || k == PairKind::log_squared; };
    for (const auto& t : terms)
        if (is_log(t.kind)) return {kPi / 2.0};
    if (fitted_active() && is_log(fitted->form.kind)) return {kPi / 2.0};
    return {};
}

std::string SingularModel::describe() const {
    if (empty()) return "none";
    std::string s;
    for (const auto& t : terms) {
        if (!s.empty()) s += " + ";
        s += fmt::format("{:.6g}*{}", t.weight, kind_name(t.kind));
    }
    if (fitted) {
        if (!s.empty()) s += " + ";
        if (fitted->coefficient)
            s += fmt::format("{:.6g}*{} (fitted on even n in [{},{}])", *fitted->coefficient,
                             kind_name(fitted->form.kind), fitted->n_lo, fitted->n_hi);
        else
            s += fmt::format("c*{} (unfitted)", kind_name(fitted->form.kind));
    }
    return s;
}

SingularModel builtin_singular_model(const LatticeSpec& lat, const Displacement& r) {
    validate_displacement(lat, r);
    SingularModel model;
    if (lat.family == Family::square) {
        const int x = r.coords[0], y = r.coords[1];
        if (r.is_origin()) {
            model.terms.push_back({PairKind::log, 2.0 / kPi});
            model.terms.push_back({PairKind::constant, 1.0 / kPi});
            return model;
        }
        // Saddle points of eps = cos kx cos ky sit at (+-pi/2, +-pi/2); their
        // phase factors combine to a real cosine pair in these coordinates.
        const double w = (cos_half_pi(x + y) + cos_half_pi(x - y)) / kPi;
        if (w != 0.0) model.terms.push_back({PairKind::log, w});
        return model;
    }
    if (lat.family == Family::bcc) {
        if (r.is_origin()) {
            model.terms.push_back({PairKind::log_squared, 2.0 / (kPi * kPi)});
            model.terms.push_back({PairKind::log, 4.0 * std::log(8.0) / (kPi * kPi)});
            return model;
        }
        const bool multiple_of_4 = std::all_of(r.coords.begin(), r.coords.end(),
                                               [](int c) { return c % 4 == 0; });
        if (multiple_of_4) {
            model.terms.push_back({PairKind::log_squared, 2.0 / (kPi * kPi)});
            model.fitted = FittedTerm{TransformPair{PairKind::log, 1.0}, -1, -1, std::nullopt};
            return model;
        }
        // Other displacements: dominant term only, weighted by the saddle
        // phases; the subdominant coefficient is not predictable here.
        double w = 2.0 / (kPi * kPi);
        for (int c : r.coords) w *= cos_half_pi(c);
        if (w != 0.0) model.terms.push_back({PairKind::log_squared, w});
        return model;
    }
    throw UnsupportedModel(
        fmt::format("no built-in singular model for the {} lattice", family_name(lat.family)));
}

// ---------------------------------------------------------------------------
// Subtraction and fitting
// ---------------------------------------------------------------------------

Residual subtract_singularities(const MomentTable& moments, const SingularModel& model) {
    const int N = moments.max_order();
    Residual res;
    res.h.resize(static_cast<std::size_t>(N) + 1);
    for (int n = 0; n <= N; ++n)
        res.h[static_cast<std::size_t>(n)] = moments.floats[static_cast<std::size_t>(n)] - model.coeff(n);
    res.tail_estimate = std::abs(res.h.back());
    return res;
}

FitResult fit_subdominant(std::span<const double> h, const TransformPair& form,
                          int n_lo, int n_hi) {
    n_lo = std::max(n_lo, 0);
    n_hi = std::min<int>(n_hi, static_cast<int>(h.size()) - 1);
    if (n_lo > n_hi) throw DegenerateFit("empty fit range");
    double num = 0.0, den = 0.0, pre2 = 0.0;
    for (int n = n_lo + (n_lo % 2); n <= n_hi; n += 2) {
        const double phi = transform_coeff(form, n);
        const double hn = h[static_cast<std::size_t>(n)];
        num += hn * phi;
        den += phi * phi;
        pre2 += hn * hn;
    }
    if (den == 0.0)
        throw DegenerateFit("fit form vanishes on the requested range");
    const double c = num / den;
    double post2 = 0.0;
    for (int n = n_lo + (n_lo % 2); n <= n_hi; n += 2) {
        const double d = h[static_cast<std::size_t>(n)] - c * transform_coeff(form, n);
        post2 += d * d;
    }
    return {c, std::sqrt(pre2), std::sqrt(post2)};
}

double tail_exponent(std::span<const double> c, int n_lo, int n_hi, bool subtract_log) {
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    int m = 0;
    n_hi = std::min<int>(n_hi, static_cast<int>(c.size()) - 1);
    for (int n = std::max(n_lo, 2); n <= n_hi; ++n) {
        const double v = std::abs(c[static_cast<std::size_t>(n)]);
        if (v == 0.0) continue;
        const double x = std::log(static_cast<double>(n));
        double y = std::log(v);
        if (subtract_log) y -= std::log(std::log(static_cast<double>(n)));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++m;
    }
    if (m < 2) throw Error("tail exponent needs at least two nonzero entries");
    return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

// ---------------------------------------------------------------------------
// Evaluators
// ---------------------------------------------------------------------------

std::vector<double> scaled_walk_moments(const WalkTable& walks) {
    const int N = walks.max_order();
    std::vector<double> w(static_cast<std::size_t>(N) + 1);
    Int zpow(1);
    for (int n = 0; n <= N; ++n) {
        w[static_cast<std::size_t>(n)] = ratio_as_double(walks.counts[static_cast<std::size_t>(n)], zpow);
        zpow *= walks.lattice.z;
    }
    return w;
}

Complex eval_power_series(std::span<const double> scaled_walk_moments, Complex omega) {
    if (std::abs(omega) <= 1.0)
        throw ConvergenceDomain("inverse power series converges only for |omega| > 1");
    Complex g(0.0, 0.0);
    for (std::size_t n = scaled_walk_moments.size(); n-- > 0;)
        g = (scaled_walk_moments[n] + g) / omega;
    return g;
}

Complex eval_power_series(const WalkTable& walks, Complex omega) {
    return eval_power_series(scaled_walk_moments(walks), omega);
}

double eval_spectral(const MomentTable& moments, double omega,
                     std::optional<double> window_beta, double edge_eps) {
    check_on_cut(omega, edge_eps);
    const auto c = weighted_coeffs(moments.floats, window_beta);
    return spectral_from_coeffs(c, omega);
}

Complex eval_green_on_cut(const MomentTable& moments, double omega,
                          std::optional<double> window_beta, double edge_eps) {
    check_on_cut(omega, edge_eps);
    const auto c = weighted_coeffs(moments.floats, window_beta);
    const double re = -eval_U_series(c, omega);
    const double im = -kPi * spectral_from_coeffs(c, omega);
    return {re, im};
}

double reconstruct_spectral(const SingularModel& model, std::span<const double> h,
                            double omega, std::optional<double> window_beta) {
    check_on_cut(omega);
    const double f = model.eval(omega);  // DomainError at model poles
    const auto c = weighted_coeffs(h, window_beta);
    return f + spectral_from_coeffs(c, omega);
}

Complex green_from_residual(std::span<const double> h, double omega,
                            std::optional<double> window_beta) {
    check_on_cut(omega);
    const auto c = weighted_coeffs(h, window_beta);
    const double re = -eval_U_series(c, omega);
    const double im = -kPi * spectral_from_coeffs(c, omega);
    return {re, im};
}

Complex real_part_reconstruct(const SingularModel& model, std::span<const double> h,
                              double omega, double tol) {
    check_on_cut(omega);
    Complex g = green_from_residual(h, omega);
    if (model.empty()) return g;
    // F(omega) = P.V. int f(nu)/(omega - nu) dnu - i pi f(omega); under
    // nu = cos(theta) the P.V. part is -P.V. int S(theta)/(cos theta - cos theta0).
    const double theta0 = std::acos(omega);
    const auto S = [&](double th) { return model.eval_theta(th); };
    const auto cuts = model.singular_thetas();
    const double f_re = -pv_cheb_integral(S, theta0, cuts, tol);
    const double f_im = -kPi * model.eval(omega);
    return g + Complex(f_re, f_im);
}

// ---------------------------------------------------------------------------
// Grid evaluation
// ---------------------------------------------------------------------------

GreenResult evaluate_grid(const WalkTable& walks, const MomentTable& moments,
                          std::vector<double> omegas, const EvalOptions& opt) {
    const int N = std::min(opt.terms, moments.max_order());
    MomentTable clipped;  // view of the first N+1 moments when terms < table size
    const MomentTable* mt = &moments;
    if (N < moments.max_order()) {
        clipped.lattice = moments.lattice;
        clipped.displacement = moments.displacement;
        clipped.scaled.assign(moments.scaled.begin(), moments.scaled.begin() + N + 1);
        clipped.floats.assign(moments.floats.begin(), moments.floats.begin() + N + 1);
        mt = &clipped;
    }

    GreenResult out;
    out.omega = std::move(omegas);
    out.green.assign(out.omega.size(), Complex(0.0, 0.0));
    out.spectral.assign(out.omega.size(), 0.0);
    out.meta.terms_used = N;
    out.meta.window_beta = opt.window_beta;

    SingularModel model;
    std::vector<double> h;
    if (opt.subtract) {
        try {
            model = builtin_singular_model(mt->lattice, mt->displacement);
        } catch (const UnsupportedModel&) {
            model = SingularModel{};  // fall back to the raw series
        }
        Residual res = subtract_singularities(*mt, model);
        if (model.fitted) {
            int lo = opt.fit_range ? opt.fit_range->first : (2 * N) / 5;
            int hi = opt.fit_range ? opt.fit_range->second : N;
            const FitResult fr = fit_subdominant(res.h, model.fitted->form, lo, hi);
            model.fitted->n_lo = lo;
            model.fitted->n_hi = hi;
            model.fitted->coefficient = fr.coefficient;
            out.meta.fitted_coefficient = fr.coefficient;
            res = subtract_singularities(*mt, model);
        }
        h = std::move(res.h);
        out.meta.residual_tail_estimate = res.tail_estimate;
        // A window requested alongside subtraction tapers the residual
        // coefficients only; the model part is exact.
        if (opt.window_beta && *opt.window_beta != 0.0)
            for (int n = 0; n <= N; ++n)
                h[static_cast<std::size_t>(n)] *= kaiser_window(n, N + 1, *opt.window_beta);
    } else {
        out.meta.residual_tail_estimate = std::abs(mt->floats.back());
    }
    out.meta.model = model.describe();

    auto powmom = scaled_walk_moments(walks);
    if (static_cast<int>(powmom.size()) > N + 1) powmom.resize(static_cast<std::size_t>(N) + 1);
    const double nan = std::numeric_limits<double>::quiet_NaN();

    const auto eval_point = [&](std::size_t i) {
        const double w = out.omega[i];
        try {
            if (std::abs(w) > 1.0) {
                out.green[i] = eval_power_series(powmom, Complex(w, 0.0));
                out.spectral[i] = 0.0;  // no states outside the band
            } else if (opt.subtract && !model.empty()) {
                out.spectral[i] = reconstruct_spectral(model, h, w);
                out.green[i] = real_part_reconstruct(model, h, w, opt.pv_tol);
            } else if (opt.subtract) {
                out.spectral[i] = reconstruct_spectral(model, h, w);
                out.green[i] = green_from_residual(h, w);
            } else {
                out.spectral[i] = eval_spectral(*mt, w, opt.window_beta);
                out.green[i] = eval_green_on_cut(*mt, w, opt.window_beta);
            }
        } catch (const DomainError&) {
            out.green[i] = Complex(nan, nan);
            out.spectral[i] = nan;
        }
    };

    const std::size_t npts = out.omega.size();
    unsigned nthreads = opt.threads ? opt.threads : std::thread::hardware_concurrency();
    nthreads = std::max(1u, std::min<unsigned>(nthreads, static_cast<unsigned>(npts ? npts : 1)));
    if (nthreads <= 1 || npts < 16) {
        for (std::size_t i = 0; i < npts; ++i) eval_point(i);
    } else {
        std::vector<std::thread> pool;
        std::exception_ptr failure;
        std::mutex failure_mu;
        const std::size_t chunk = (npts + nthreads - 1) / nthreads;
        for (unsigned t = 0; t < nthreads; ++t) {
            const std::size_t lo = t * chunk;
            const std::size_t hi = std::min(npts, lo + chunk);
            if (lo >= hi) break;
            pool.emplace_back([&, lo, hi] {
                try {
                    for (std::size_t i = lo; i < hi; ++i) eval_point(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(failure_mu);
                    if (!failure) failure = std::current_exception();
                }
            });
        }
        for (auto& th : pool) th.join();
        if (failure) std::rethrow_exception(failure);
    }
    return out;
}

}  // namespace lgf
