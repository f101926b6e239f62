#include "lgf/oracle.hpp"

#include <fmt/format.h>

#include <cmath>
#include <complex>
#include <memory>
#include <numbers>

#include "lgf/cheb.hpp"
#include "lgf/greens.hpp"
#include "lgf/quadrature.hpp"

namespace lgf {

namespace {

constexpr double kPi = std::numbers::pi;

std::uint64_t pack_coords(std::span<const int> c) {
    std::uint64_t key = 0;
    for (std::size_t i = 0; i < c.size(); ++i)
        key |= (static_cast<std::uint64_t>(c[i] + 32768) & 0xffff) << (16 * i);
    return key;
}

// Step vectors; for honeycomb/diamond they depend on the sublattice.
std::vector<std::array<int, 4>> step_vectors(Family f, int sublattice_sum) {
    std::vector<std::array<int, 4>> v;
    switch (f) {
        case Family::chain:
            v = {{1, 0, 0, 0}, {-1, 0, 0, 0}};
            break;
        case Family::square:
            for (int a : {-1, 1})
                for (int b : {-1, 1}) v.push_back({a, b, 0, 0});
            break;
        case Family::bcc:
            for (int a : {-1, 1})
                for (int b : {-1, 1})
                    for (int c : {-1, 1}) v.push_back({a, b, c, 0});
            break;
        case Family::cubic:
            for (int i = 0; i < 3; ++i)
                for (int s : {-1, 1}) {
                    std::array<int, 4> d{0, 0, 0, 0};
                    d[static_cast<std::size_t>(i)] = s;
                    v.push_back(d);
                }
            break;
        case Family::hypercubic4:
            for (int i = 0; i < 4; ++i)
                for (int s : {-1, 1}) {
                    std::array<int, 4> d{0, 0, 0, 0};
                    d[static_cast<std::size_t>(i)] = s;
                    v.push_back(d);
                }
            break;
        case Family::honeycomb:
            for (int i = 0; i < 3; ++i) {
                std::array<int, 4> d{0, 0, 0, 0};
                d[static_cast<std::size_t>(i)] = sublattice_sum == 0 ? 1 : -1;
                v.push_back(d);
            }
            break;
        case Family::diamond:
            for (int i = 0; i < 4; ++i) {
                std::array<int, 4> d{0, 0, 0, 0};
                d[static_cast<std::size_t>(i)] = sublattice_sum == 0 ? 1 : -1;
                v.push_back(d);
            }
            break;
        case Family::triangular:
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j)
                    if (i != j) {
                        std::array<int, 4> d{0, 0, 0, 0};
                        d[static_cast<std::size_t>(i)] = 1;
                        d[static_cast<std::size_t>(j)] = -1;
                        v.push_back(d);
                    }
            break;
        case Family::fcc:
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j)
                    if (i != j) {
                        std::array<int, 4> d{0, 0, 0, 0};
                        d[static_cast<std::size_t>(i)] = 1;
                        d[static_cast<std::size_t>(j)] = -1;
                        v.push_back(d);
                    }
            break;
    }
    return v;
}

int sum_of(std::span<const int> c) {
    int s = 0;
    for (int x : c) s += x;
    return s;
}

}  // namespace

FinitePatch::FinitePatch(const LatticeSpec& lat, int radius)
    : lattice_(lat), radius_(radius), ncoord_(::lgf::coord_count(lat.family)) {
    if (radius < 0) throw Error("patch radius must be nonnegative");
    const bool sublattice_steps =
        lat.family == Family::honeycomb || lat.family == Family::diamond;
    const auto steps_a = step_vectors(lat.family, 0);
    const auto steps_b = step_vectors(lat.family, 1);

    std::array<int, 4> origin{0, 0, 0, 0};
    sites_.push_back(origin);
    index_.emplace(pack_coords({origin.data(), static_cast<std::size_t>(ncoord_)}), 0);
    origin_ = 0;

    // breadth-first by shells
    std::vector<int> frontier{0};
    for (int depth = 0; depth < radius; ++depth) {
        std::vector<int> next_frontier;
        for (int si : frontier) {
            const auto site = sites_[static_cast<std::size_t>(si)];
            const auto& steps =
                sublattice_steps && sum_of({site.data(), static_cast<std::size_t>(ncoord_)}) == 1
                    ? steps_b
                    : steps_a;
            for (const auto& d : steps) {
                std::array<int, 4> nb{};
                for (int i = 0; i < ncoord_; ++i)
                    nb[static_cast<std::size_t>(i)] = site[static_cast<std::size_t>(i)] + d[static_cast<std::size_t>(i)];
                const auto key = pack_coords({nb.data(), static_cast<std::size_t>(ncoord_)});
                if (index_.emplace(key, static_cast<int32_t>(sites_.size())).second) {
                    next_frontier.push_back(static_cast<int>(sites_.size()));
                    sites_.push_back(nb);
                }
            }
        }
        frontier = std::move(next_frontier);
    }

    neighbors_.resize(sites_.size());
    for (std::size_t si = 0; si < sites_.size(); ++si) {
        const auto site = sites_[si];
        const auto& steps =
            sublattice_steps && sum_of({site.data(), static_cast<std::size_t>(ncoord_)}) == 1
                ? steps_b
                : steps_a;
        for (const auto& d : steps) {
            std::array<int, 4> nb{};
            for (int i = 0; i < ncoord_; ++i)
                nb[static_cast<std::size_t>(i)] = site[static_cast<std::size_t>(i)] + d[static_cast<std::size_t>(i)];
            const auto it = index_.find(pack_coords({nb.data(), static_cast<std::size_t>(ncoord_)}));
            if (it != index_.end()) neighbors_[si].push_back(it->second);
        }
    }
}

int FinitePatch::find(std::span<const int> coords) const {
    if (static_cast<int>(coords.size()) != ncoord_) return -1;
    const auto it = index_.find(pack_coords(coords));
    return it == index_.end() ? -1 : it->second;
}

AdjacencyWalker::AdjacencyWalker(const FinitePatch& patch) : patch_(patch) {
    amp_.resize(patch.size());
    next_.resize(patch.size());
    amp_[static_cast<std::size_t>(patch.origin_index())] = 1;
}

void AdjacencyWalker::step() {
    if (steps_ + 1 > patch_.radius())
        throw PatchTooSmall(fmt::format(
            "walk length {} exceeds patch radius {}", steps_ + 1, patch_.radius()));
    const auto& nbr = patch_.neighbors();
    for (std::size_t j = 0; j < next_.size(); ++j) {
        Int& acc = next_[j];
        acc = 0;
        for (int32_t i : nbr[j]) acc += amp_[static_cast<std::size_t>(i)];
    }
    amp_.swap(next_);
    ++steps_;
}

Int walks_via_adjacency(const FinitePatch& patch, const Displacement& r, int n) {
    if (n > patch.radius())
        throw PatchTooSmall(fmt::format("walk length {} exceeds patch radius {}", n, patch.radius()));
    validate_displacement(patch.lattice(), r);
    AdjacencyWalker walker(patch);
    for (int s = 0; s < n; ++s) walker.step();
    const int idx = patch.find(r.coords);
    return idx < 0 ? Int(0) : walker.amplitudes()[static_cast<std::size_t>(idx)];
}

// ---------------------------------------------------------------------------
// Brillouin-zone oracle
// ---------------------------------------------------------------------------

namespace {

struct ReducedLattice {
    int dim = 0;
    std::vector<int> site;                       // integer coordinates conjugate to k
    std::function<double(std::span<const double>)> dispersion;  // single band
    // two-band (honeycomb/diamond): eps = |phi|/z; target amplitude carries
    // phase e^{-i k.m} and either the AA or AB matrix element.
    bool two_band = false;
    bool ab = false;  // displacement lands on the B sublattice
    std::function<std::complex<double>(std::span<const double>)> phi;
};

ReducedLattice reduce(const LatticeSpec& lat, const Displacement& r) {
    validate_displacement(lat, r);
    ReducedLattice rl;
    const auto& c = r.coords;
    switch (lat.family) {
        case Family::chain:
            rl.dim = 1;
            rl.site = {c[0]};
            rl.dispersion = [](std::span<const double> k) { return std::cos(k[0]); };
            return rl;
        case Family::square:
            rl.dim = 2;
            rl.site = {c[0], c[1]};
            rl.dispersion = [](std::span<const double> k) {
                return std::cos(k[0]) * std::cos(k[1]);
            };
            return rl;
        case Family::bcc:
            rl.dim = 3;
            rl.site = {c[0], c[1], c[2]};
            rl.dispersion = [](std::span<const double> k) {
                return std::cos(k[0]) * std::cos(k[1]) * std::cos(k[2]);
            };
            return rl;
        case Family::cubic:
            rl.dim = 3;
            rl.site = {c[0], c[1], c[2]};
            rl.dispersion = [](std::span<const double> k) {
                return (std::cos(k[0]) + std::cos(k[1]) + std::cos(k[2])) / 3.0;
            };
            return rl;
        case Family::triangular:
            // basis a1 = ex - ey, a2 = ex - ez; site (x,y,z) = -y a1 - z a2
            rl.dim = 2;
            rl.site = {-c[1], -c[2]};
            rl.dispersion = [](std::span<const double> k) {
                return (std::cos(k[0]) + std::cos(k[1]) + std::cos(k[0] - k[1])) / 3.0;
            };
            return rl;
        case Family::fcc:
            rl.dim = 3;
            rl.site = {-c[1], -c[2], -c[3]};
            rl.dispersion = [](std::span<const double> k) {
                return (std::cos(k[0]) + std::cos(k[1]) + std::cos(k[2]) +
                        std::cos(k[0] - k[1]) + std::cos(k[0] - k[2]) +
                        std::cos(k[1] - k[2])) / 6.0;
            };
            return rl;
        case Family::honeycomb: {
            // A-lattice basis a1 = ex-ey, a2 = ex-ez; the Bravais label of
            // either sublattice site is (-y, -z).
            rl.dim = 2;
            rl.two_band = true;
            rl.ab = r.coord_sum() == 1;
            rl.site = {-c[1], -c[2]};
            rl.phi = [](std::span<const double> k) {
                return 1.0 + std::polar(1.0, k[0]) + std::polar(1.0, k[1]);
            };
            return rl;
        }
        case Family::diamond: {
            rl.dim = 3;
            rl.two_band = true;
            rl.ab = r.coord_sum() == 1;
            rl.site = {-c[1], -c[2], -c[3]};
            rl.phi = [](std::span<const double> k) {
                return 1.0 + std::polar(1.0, k[0]) + std::polar(1.0, k[1]) +
                       std::polar(1.0, k[2]);
            };
            return rl;
        }
        case Family::hypercubic4:
            throw Error("Brillouin-zone oracle supports dim <= 3 only");
    }
    throw Error("unknown lattice family");
}

// Sums F(k) over the uniform offset grid; F must be 2pi-periodic per axis.
template <typename F>
double bz_average(int dim, int M, F&& f) {
    const double step = 2.0 * kPi / M;
    double total = 0.0;
    std::array<double, 3> k{};
    if (dim == 1) {
        for (int i = 0; i < M; ++i) {
            k[0] = step * (i + 0.5);
            total += f(std::span<const double>{k.data(), 1});
        }
        return total / M;
    }
    if (dim == 2) {
        for (int i = 0; i < M; ++i) {
            k[0] = step * (i + 0.5);
            for (int j = 0; j < M; ++j) {
                k[1] = step * (j + 0.5);
                total += f(std::span<const double>{k.data(), 2});
            }
        }
        return total / (static_cast<double>(M) * M);
    }
    for (int i = 0; i < M; ++i) {
        k[0] = step * (i + 0.5);
        for (int j = 0; j < M; ++j) {
            k[1] = step * (j + 0.5);
            for (int l = 0; l < M; ++l) {
                k[2] = step * (l + 0.5);
                total += f(std::span<const double>{k.data(), 3});
            }
        }
    }
    return total / (static_cast<double>(M) * M * M);
}

double site_phase(std::span<const int> m, std::span<const double> k) {
    double p = 0.0;
    for (std::size_t i = 0; i < m.size(); ++i) p += m[i] * k[i];
    return p;
}

}  // namespace

double spectral_via_bz(const LatticeSpec& lat, const Displacement& r, double omega,
                       int grid_per_dim, double eta) {
    if (eta <= 0.0) throw Error("broadening eta must be positive");
    const ReducedLattice rl = reduce(lat, r);
    const double t = 1.0 / lat.z;
    if (!rl.two_band) {
        return bz_average(rl.dim, grid_per_dim, [&](std::span<const double> k) {
            const double eps = rl.dispersion(k);
            const double d = omega - eps;
            return std::cos(site_phase(rl.site, k)) * (eta / kPi) / (d * d + eta * eta);
        });
    }
    // two-band resolvent broadening: g = -Im G(omega + i eta) / pi
    const std::complex<double> zfreq(omega, eta);
    return bz_average(rl.dim, grid_per_dim, [&](std::span<const double> k) {
        const std::complex<double> phi = rl.phi(k);
        const std::complex<double> den = zfreq * zfreq - t * t * std::norm(phi);
        const std::complex<double> num = rl.ab ? t * std::conj(phi) : zfreq;
        const std::complex<double> bloch = std::polar(1.0, -site_phase(rl.site, k));
        return -std::imag(bloch * num / den) / kPi;
    });
}

double spectral_via_bz_extrapolated(const LatticeSpec& lat, const Displacement& r,
                                    double omega, int grid_per_dim, double eta) {
    const double g1 = spectral_via_bz(lat, r, omega, grid_per_dim, eta);
    const double g2 = spectral_via_bz(lat, r, omega, grid_per_dim, 2.0 * eta);
    return 2.0 * g1 - g2;
}

std::complex<double> green_via_bz(const LatticeSpec& lat, const Displacement& r,
                                  std::complex<double> omega, int grid_per_dim) {
    const ReducedLattice rl = reduce(lat, r);
    const double t = 1.0 / lat.z;
    const auto value = [&](std::span<const double> k) -> std::complex<double> {
        if (!rl.two_band)
            return std::polar(1.0, site_phase(rl.site, k)) / (omega - rl.dispersion(k));
        const std::complex<double> phi = rl.phi(k);
        const std::complex<double> den = omega * omega - t * t * std::norm(phi);
        const std::complex<double> num = rl.ab ? t * std::conj(phi) : omega;
        return std::polar(1.0, -site_phase(rl.site, k)) * num / den;
    };
    const double re = bz_average(rl.dim, grid_per_dim,
                                 [&](std::span<const double> k) { return value(k).real(); });
    const double im = bz_average(rl.dim, grid_per_dim,
                                 [&](std::span<const double> k) { return value(k).imag(); });
    return {re, im};
}

// ---------------------------------------------------------------------------
// Chebyshev-weighted quadrature
// ---------------------------------------------------------------------------

SpectralFunction SpectralFunction::from_value(std::function<double(double)> g,
                                              std::vector<double> singular_omegas) {
    SpectralFunction sf;
    sf.value = g;
    sf.theta_form = [g](double theta) {
        double w = std::cos(theta);
        // keep clear of evaluator edge guards; the sin(theta) factor bounds
        // the bias to the guard width
        const double lim = 1.0 - 2e-12;
        if (w > lim) w = lim;
        if (w < -lim) w = -lim;
        return g(w) * std::sin(theta);
    };
    for (double w : singular_omegas) {
        if (std::abs(w) < 1.0) sf.singular_thetas.push_back(std::acos(w));
    }
    return sf;
}

namespace {
std::vector<double> two_minus_delta(std::span<const double> coef) {
    std::vector<double> c(coef.begin(), coef.end());
    for (std::size_t n = 1; n < c.size(); ++n) c[n] *= 2.0;
    return c;
}
}  // namespace

SpectralFunction series_spectral(const MomentTable& moments) {
    SpectralFunction sf;
    auto c = std::make_shared<std::vector<double>>(two_minus_delta(moments.floats));
    sf.value = [c](double w) {
        return eval_T_series(*c, w) / (kPi * std::sqrt(1.0 - w * w));
    };
    sf.theta_form = [c](double theta) { return eval_cos_series(*c, theta) / kPi; };
    return sf;
}

SpectralFunction reconstruction_spectral(const SingularModel& model, std::vector<double> h) {
    SpectralFunction sf;
    auto m = std::make_shared<SingularModel>(model);
    auto c = std::make_shared<std::vector<double>>(two_minus_delta(h));
    sf.value = [m, c](double w) {
        return m->eval(w) + eval_T_series(*c, w) / (kPi * std::sqrt(1.0 - w * w));
    };
    sf.theta_form = [m, c](double theta) {
        return m->eval_theta(theta) + eval_cos_series(*c, theta) / kPi;
    };
    sf.singular_thetas = model.singular_thetas();
    return sf;
}

double moment_via_quadrature(const SpectralFunction& g, int n, double tol) {
    if (!g.theta_form) throw Error("spectral function has no angle form");
    std::vector<double> cuts{0.0, kPi};
    for (double th : g.singular_thetas)
        if (th > 0.0 && th < kPi) cuts.push_back(th);
    std::sort(cuts.begin(), cuts.end());
    const auto integrand = [&](double theta) {
        return std::cos(n * theta) * g.theta_form(theta);
    };
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
        total += integrate_endpoint_singular(integrand, cuts[i], cuts[i + 1], tol);
    return total;
}

}  // namespace lgf
