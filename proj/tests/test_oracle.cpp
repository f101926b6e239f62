#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "lgf/oracle.hpp"
#include "lgf/walks.hpp"

using namespace lgf;

namespace {

constexpr double kPi = std::numbers::pi;

// Analytic continuation of the moment series off the cut:
// G(z) = sum_n (2-delta_n) g_n q^n / sqrt(z^2-1) with q = z - sqrt(z^2-1),
// branch chosen so |q| < 1.  Independent of the BZ route.
std::complex<double> green_from_moments_offcut(const MomentTable& mt, std::complex<double> z) {
    const std::complex<double> s = std::sqrt(z - 1.0) * std::sqrt(z + 1.0);
    const std::complex<double> q = z - s;
    std::complex<double> acc(0.0, 0.0);
    std::complex<double> qn(1.0, 0.0);
    for (int n = 0; n <= mt.max_order(); ++n) {
        acc += (n == 0 ? 1.0 : 2.0) * mt.floats[static_cast<std::size_t>(n)] * qn;
        qn *= q;
    }
    return acc / s;
}

Displacement disp(const LatticeSpec& lat, std::vector<int> c) {
    return make_displacement(lat, std::move(c));
}

}  // namespace

TEST_CASE("adjacency oracle basics") {
    const auto sq = lattice(Family::square);
    FinitePatch patch(sq, 6);
    CHECK(walks_via_adjacency(patch, origin_displacement(sq), 6) == 400);
    CHECK(walks_via_adjacency(patch, origin_displacement(sq), 1) == 0);
    CHECK_THROWS_AS(walks_via_adjacency(patch, origin_displacement(sq), 7), PatchTooSmall);

    const auto tri = lattice(Family::triangular);
    FinitePatch tpatch(tri, 3);
    CHECK(walks_via_adjacency(tpatch, origin_displacement(tri), 3) == 12);
    for (const auto& lat : all_lattices()) {
        FinitePatch p1(lat, 1);
        CHECK(walks_via_adjacency(p1, origin_displacement(lat), 1) == 0);
    }
}

TEST_CASE("interior patch sites have degree z") {
    for (const auto& lat : all_lattices()) {
        FinitePatch patch(lat, 4);
        FinitePatch inner(lat, 3);
        for (std::size_t i = 0; i < patch.size(); ++i) {
            std::span<const int> c{patch.site(i).data(),
                                   static_cast<std::size_t>(patch.coord_count())};
            if (inner.find(c) >= 0)  // graph distance <= 3 < radius
                CHECK(patch.neighbors()[i].size() == static_cast<std::size_t>(lat.z));
        }
    }
}

TEST_CASE("combinatorial counts equal adjacency powers for every reachable site, n <= 8") {
    for (const auto& lat : all_lattices()) {
        const int n_max = 8;
        FinitePatch patch(lat, n_max);
        AdjacencyWalker walker(patch);
        for (int n = 0; n <= n_max; ++n) {
            if (n > 0) walker.step();
            long mismatches = 0;
            for (std::size_t i = 0; i < patch.size(); ++i) {
                Displacement r;
                r.coords.assign(patch.site(i).begin(),
                                patch.site(i).begin() + patch.coord_count());
                r.convention = origin_displacement(lat).convention;
                if (count_walks_to(lat, r, n) != walker.amplitudes()[i]) ++mismatches;
            }
            CAPTURE(family_name(lat.family));
            CAPTURE(n);
            CHECK(mismatches == 0);
        }
    }
}

TEST_CASE("BZ oracle: chain density of states") {
    const auto ch = lattice(Family::chain);
    const double got =
        spectral_via_bz_extrapolated(ch, origin_displacement(ch), 0.5, 4096, 0.01);
    CHECK(std::abs(got - 1.0 / (kPi * std::sqrt(0.75))) < 1e-4);
}

TEST_CASE("BZ oracle vanishes outside the band") {
    const auto sq = lattice(Family::square);
    const double g1 = spectral_via_bz(sq, origin_displacement(sq), 1.2, 400, 0.02);
    const double g2 = spectral_via_bz(sq, origin_displacement(sq), 1.2, 400, 0.01);
    CHECK(std::abs(g1) < 0.03);
    CHECK(std::abs(g2) < std::abs(g1));  // shrinks with eta
}

TEST_CASE("BZ oracle matches the off-cut moment continuation") {
    const auto coeffs = build_coeff_table(300);
    // single-band lattices, local and displaced
    struct Case {
        Family family;
        std::vector<int> coords;
        std::complex<double> z;
        int grid;
        int terms;
    };
    const std::vector<Case> cases = {
        {Family::chain, {2}, {0.3, 0.08}, 4000, 300},
        {Family::square, {1, 1}, {0.4, 0.06}, 400, 300},
        {Family::cubic, {1, 1, 0}, {0.2, 0.15}, 90, 200},
        {Family::bcc, {2, 0, 0}, {0.3, 0.15}, 90, 200},
        {Family::triangular, {1, -1, 0}, {0.35, 0.08}, 500, 300},
        {Family::fcc, {1, -1, 0, 0}, {0.25, 0.15}, 90, 200},
    };
    for (const auto& tc : cases) {
        const auto lat = lattice(tc.family);
        const auto r = disp(lat, tc.coords);
        const auto mt = moments_from_walks(build_walk_table(lat, r, tc.terms), coeffs);
        const auto series = green_from_moments_offcut(mt, tc.z);
        const auto bz = green_via_bz(lat, r, tc.z, tc.grid);
        CAPTURE(family_name(tc.family));
        CHECK(std::abs(series - bz) < 1e-5);
    }
    // two-band, same sublattice and cross sublattice
    {
        const auto hon = lattice(Family::honeycomb);
        for (auto coords : {std::vector<int>{0, 0, 0}, std::vector<int>{1, -1, 0},
                            std::vector<int>{1, 0, 0}, std::vector<int>{2, -1, 0}}) {
            const auto r = disp(hon, coords);
            const auto mt = moments_from_walks(build_walk_table(hon, r, 300), coeffs);
            const std::complex<double> z(0.4, 0.06);
            const auto series = green_from_moments_offcut(mt, z);
            const auto bz = green_via_bz(hon, r, z, 400);
            CAPTURE(r.to_string());
            CHECK(std::abs(series - bz) < 1e-5);
        }
    }
    {
        const auto dia = lattice(Family::diamond);
        for (auto coords : {std::vector<int>{0, 0, 0, 0}, std::vector<int>{1, 0, 0, 0}}) {
            const auto r = disp(dia, coords);
            const auto mt = moments_from_walks(build_walk_table(dia, r, 220), coeffs);
            const std::complex<double> z(0.3, 0.12);
            const auto series = green_from_moments_offcut(mt, z);
            const auto bz = green_via_bz(dia, r, z, 90);
            CAPTURE(r.to_string());
            CHECK(std::abs(series - bz) < 1e-5);
        }
    }
}

TEST_CASE("moment recovery by quadrature") {
    // chain: g = 1/(pi sqrt(1-w^2)), exactly the delta_like pair
    SpectralFunction chain;
    chain.value = [](double w) { return 1.0 / (kPi * std::sqrt(1.0 - w * w)); };
    chain.theta_form = [](double) { return 1.0 / kPi; };
    CHECK(moment_via_quadrature(chain, 0) == doctest::Approx(1.0).epsilon(1e-10));

    const auto coeffs = build_coeff_table(400);
    {
        const auto sq = lattice(Family::square);
        const auto mt = moments_from_walks(build_walk_table(sq, origin_displacement(sq), 400),
                                           coeffs);
        const auto model = builtin_singular_model(sq, origin_displacement(sq));
        const auto res = subtract_singularities(mt, model);
        const auto sf = reconstruction_spectral(model, res.h);
        CHECK(std::abs(moment_via_quadrature(sf, 4) - 0.125) < 1e-7);
    }
    {
        const auto bc = lattice(Family::bcc);
        const auto mt = moments_from_walks(build_walk_table(bc, origin_displacement(bc), 400),
                                           coeffs);
        const auto model = builtin_singular_model(bc, origin_displacement(bc));
        const auto res = subtract_singularities(mt, model);
        const auto sf = reconstruction_spectral(model, res.h);
        CHECK(std::abs(moment_via_quadrature(sf, 2) - (-0.75)) < 1e-7);
    }
}
