#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "lgf/greens.hpp"
#include "lgf/io.hpp"
#include "lgf/oracle.hpp"
#include "lgf/quadrature.hpp"

using namespace lgf;

namespace {

constexpr double kPi = std::numbers::pi;

struct SquareLocal {
    WalkTable walks;
    MomentTable moments;
    SingularModel model;
    std::vector<double> h;
};

const SquareLocal& square_local() {
    static const SquareLocal data = [] {
        const int N = 1000;
        const auto sq = lattice(Family::square);
        SquareLocal d{build_walk_table(sq, origin_displacement(sq), N), {}, {}, {}};
        d.moments = moments_from_walks(d.walks, build_coeff_table(N));
        d.model = builtin_singular_model(sq, origin_displacement(sq));
        d.h = subtract_singularities(d.moments, d.model).h;
        return d;
    }();
    return data;
}

// Level-set reduction of the square-lattice BZ integral:
// g(w) = (2/pi^2) int_0^{arccos|w|} dk / sqrt(cos^2 k - w^2).
double square_dos_levelset(double w) {
    const double aw = std::abs(w);
    const double kstar = std::acos(aw);
    return (2.0 / (kPi * kPi)) *
           integrate_endpoint_singular(
               [&](double k) {
                   const double c = std::cos(k);
                   return 1.0 / std::sqrt(c * c - w * w);
               },
               0.0, kstar, 1e-12);
}

}  // namespace

TEST_CASE("power series on and beyond the unit circle") {
    const auto ch = lattice(Family::chain);
    const auto walks = build_walk_table(ch, origin_displacement(ch), 80);
    CHECK(std::abs(eval_power_series(walks, {2.0, 0.0}) - 1.0 / std::sqrt(3.0)) < 1e-12);
    CHECK(std::abs(eval_power_series(walks, {1e8, 0.0}) - 1e-8) < 1e-20);
    CHECK_THROWS_AS(eval_power_series(walks, {0.9, 0.0}), ConvergenceDomain);
    CHECK_THROWS_AS(eval_power_series(walks, {1.0, 0.0}), ConvergenceDomain);

    const auto sq = lattice(Family::square);
    const auto sw = build_walk_table(sq, origin_displacement(sq), 400);
    const auto series = eval_power_series(sw, {1.5, 0.0});
    const auto bz = green_via_bz(sq, origin_displacement(sq), {1.5, 0.0}, 2000);
    CHECK(std::abs(series - bz) < 1e-6);
}

TEST_CASE("spectral series: chain reduces to the n = 0 term") {
    const auto ch = lattice(Family::chain);
    const auto mt = moments_from_walks(build_walk_table(ch, origin_displacement(ch), 200),
                                       build_coeff_table(200));
    for (double w : {-0.9, -0.2, 0.0, 0.55})
        CHECK(eval_spectral(mt, w) ==
              doctest::Approx(1.0 / (kPi * std::sqrt(1.0 - w * w))).epsilon(1e-13));
    CHECK_THROWS_AS(eval_spectral(mt, 1.0 - 1e-13), DomainError);
    CHECK_THROWS_AS(eval_spectral(mt, -1.0), DomainError);
}

TEST_CASE("square spectral function grows logarithmically toward the band center") {
    const auto& d = square_local();
    const double g03 = reconstruct_spectral(d.model, d.h, 0.3);
    const double g01 = reconstruct_spectral(d.model, d.h, 0.1);
    const double g001 = reconstruct_spectral(d.model, d.h, 0.01);
    CHECK(g001 > g01);
    CHECK(g01 > g03);
    // equal log steps produce (asymptotically) equal increments of (2/pi^2) ln 10
    const double step = (2.0 / (kPi * kPi)) * std::log(10.0);
    CHECK(g001 - g01 == doctest::Approx(step).epsilon(0.08));
    // the raw truncated series shows the same growth at resolved scales
    CHECK(eval_spectral(d.moments, 0.03) > eval_spectral(d.moments, 0.1));
    CHECK(eval_spectral(d.moments, 0.1) > eval_spectral(d.moments, 0.3));
}

TEST_CASE("bcc 200-term windowed series matches the subtracted reference to 1e-3") {
    const auto bc = lattice(Family::bcc);
    const auto coeffs = build_coeff_table(1000);
    const auto mt200 = moments_from_walks(build_walk_table(bc, origin_displacement(bc), 200),
                                          coeffs);
    const auto mt1000 = moments_from_walks(build_walk_table(bc, origin_displacement(bc), 1000),
                                           coeffs);
    const auto model = builtin_singular_model(bc, origin_displacement(bc));
    const auto h = subtract_singularities(mt1000, model).h;
    const auto raw = eval_green_on_cut(mt200, 0.5, 10.0);
    const auto ref = real_part_reconstruct(model, h, 0.5);
    CHECK(std::abs(raw.real() - ref.real()) < 1e-3);
    CHECK(std::abs(raw.imag() - ref.imag()) < 1e-3);
}

TEST_CASE("on-cut Green function: imaginary part is -pi times the spectral function") {
    const auto& d = square_local();
    for (double w : {-0.45, 0.3, 0.71}) {
        const auto g = eval_green_on_cut(d.moments, w);
        CHECK(g.imag() == -kPi * eval_spectral(d.moments, w));  // shared code path, exact
    }
    // chain: Re G vanishes identically on the cut
    const auto ch = lattice(Family::chain);
    const auto mt = moments_from_walks(build_walk_table(ch, origin_displacement(ch), 100),
                                       build_coeff_table(100));
    CHECK(std::abs(eval_green_on_cut(mt, 0.5).real()) < 1e-13);
}

TEST_CASE("built-in singular models") {
    const auto sq = lattice(Family::square);
    const auto bc = lattice(Family::bcc);

    const auto msq = builtin_singular_model(sq, origin_displacement(sq));
    CHECK(msq.coeff(0) ==
          doctest::Approx((2.0 / kPi) * std::log(2.0) + 2.0 / kPi).epsilon(1e-14));

    const auto mbcc = builtin_singular_model(bc, origin_displacement(bc));
    const double ln2 = std::log(2.0);
    CHECK(mbcc.coeff(0) == doctest::Approx((2.0 / (kPi * kPi)) * (kPi * kPi / 12.0 + ln2 * ln2) +
                                           (4.0 * std::log(8.0) / (kPi * kPi)) * ln2)
                               .epsilon(1e-14));

    // phase cancellation kills the log weight off the A sublattice and on (1,1)
    Displacement r10;
    r10.coords = {1, 0};
    CHECK(builtin_singular_model(sq, r10).empty());
    CHECK(builtin_singular_model(sq, make_displacement(sq, {1, 1})).empty());
    // (2,0): the singularity flips sign
    const auto m20 = builtin_singular_model(sq, make_displacement(sq, {2, 0}));
    REQUIRE(m20.terms.size() == 1);
    CHECK(m20.terms[0].weight == doctest::Approx(-2.0 / kPi));

    // bcc multiples of 4 get the fitted subdominant slot
    const auto m400 = builtin_singular_model(bc, make_displacement(bc, {4, 0, 0}));
    CHECK(m400.terms.size() == 1);
    CHECK(m400.fitted.has_value());
    CHECK_FALSE(m400.fitted_active());
    // other even displacements: dominant only, phase-weighted
    const auto m200 = builtin_singular_model(bc, make_displacement(bc, {2, 0, 0}));
    REQUIRE(m200.terms.size() == 1);
    CHECK_FALSE(m200.fitted.has_value());
    CHECK(m200.terms[0].weight == doctest::Approx(-2.0 / (kPi * kPi)));

    CHECK_THROWS_AS(builtin_singular_model(lattice(Family::cubic),
                                           origin_displacement(lattice(Family::cubic))),
                    UnsupportedModel);
}

TEST_CASE("square-lattice singularity subtraction accelerates the tail") {
    const auto& d = square_local();
    CHECK(std::abs(d.h[1000]) < 1e-9);
    const double slope = tail_exponent(d.h, 100, 1000);
    CHECK(slope == doctest::Approx(-3.0).epsilon(0.1));

    // zero model leaves the residual equal to the moments
    const auto res0 = subtract_singularities(d.moments, SingularModel{});
    for (int n : {0, 7, 100})
        CHECK(res0.h[static_cast<std::size_t>(n)] ==
              d.moments.floats[static_cast<std::size_t>(n)]);
}

TEST_CASE("subdominant least-squares fit") {
    const TransformPair form{PairKind::log, 1.0};
    std::vector<double> h(801, 0.0);
    for (int n = 2; n <= 800; n += 2) h[static_cast<std::size_t>(n)] = 0.7 * transform_coeff(form, n);
    const auto fit = fit_subdominant(h, form, 100, 800);
    CHECK(fit.coefficient == doctest::Approx(0.7).epsilon(1e-12));
    CHECK(fit.post_norm < 1e-14);

    // a pure 1/n^3 sequence has almost no overlap with the alternating form
    std::vector<double> h3(1001, 0.0);
    for (int n = 2; n <= 1000; n += 2)
        h3[static_cast<std::size_t>(n)] = 1.0 / (static_cast<double>(n) * n * n);
    const auto f3 = fit_subdominant(h3, form, 100, 1000);
    CHECK(std::abs(f3.coefficient) < 1e-4);
    CHECK(f3.post_norm <= f3.pre_norm * (1.0 + 1e-12));

    CHECK_THROWS_AS(fit_subdominant(h3, form, 801, 800), DegenerateFit);
    CHECK_THROWS_AS(fit_subdominant(h3, form, 1, 1), DegenerateFit);

    // square origin: the dominant model is already exact, so the post-fit
    // coefficient on its residual is essentially zero
    const auto& d = square_local();
    const auto fsq = fit_subdominant(d.h, form, 400, 1000);
    CHECK(std::abs(fsq.coefficient) < 1e-4);
}

TEST_CASE("bcc (4,0,0): fitted subdominant log leaves a (ln n)/n^3 tail") {
    const auto bc = lattice(Family::bcc);
    const auto r = make_displacement(bc, {4, 0, 0});
    const auto mt = moments_from_walks(build_walk_table(bc, r, 1000), build_coeff_table(1000));
    auto model = builtin_singular_model(bc, r);
    auto res = subtract_singularities(mt, model);  // g^A = g - f^A
    REQUIRE(model.fitted.has_value());
    CHECK(tail_exponent(res.h, 100, 1000) == doctest::Approx(-1.0).epsilon(0.08));

    const auto fit = fit_subdominant(res.h, model.fitted->form, 400, 1000);
    CHECK(fit.coefficient == doctest::Approx(-0.23796).epsilon(1e-3));
    model.fitted->coefficient = fit.coefficient;
    const auto final = subtract_singularities(mt, model);  // g^B
    CHECK(std::abs(final.h[1000]) < 5e-8);
    CHECK(tail_exponent(final.h, 100, 1000, /*subtract_log=*/true) ==
          doctest::Approx(-3.0).epsilon(0.15));
    CHECK(fit.post_norm < fit.pre_norm / 100.0);
}

TEST_CASE("nonlocal square subtraction cancels the mid-band log tail") {
    // displacement (2,0): raw moments decay like 1/n; after removing the
    // phase-weighted log term the residual drops to the 1/n^2 scale set by
    // the (unmodeled) band-edge steps.
    const auto sq = lattice(Family::square);
    const auto r = make_displacement(sq, {2, 0});
    const auto mt = moments_from_walks(build_walk_table(sq, r, 1000), build_coeff_table(1000));
    CHECK(tail_exponent(mt.floats, 100, 1000) == doctest::Approx(-1.0).epsilon(0.05));

    const auto model = builtin_singular_model(sq, r);
    REQUIRE(model.terms.size() == 1);
    CHECK(model.terms[0].weight == doctest::Approx(-2.0 / kPi));
    const auto res = subtract_singularities(mt, model);
    CHECK(tail_exponent(res.h, 100, 1000) == doctest::Approx(-2.0).epsilon(0.05));
    CHECK(res.tail_estimate < 1e-5);
}

TEST_CASE("bcc (4,0,0) reconstruction agrees with the broadened BZ oracle") {
    const auto bc = lattice(Family::bcc);
    const auto r = make_displacement(bc, {4, 0, 0});
    const auto mt = moments_from_walks(build_walk_table(bc, r, 1000), build_coeff_table(1000));
    auto model = builtin_singular_model(bc, r);
    auto res = subtract_singularities(mt, model);
    const auto fit = fit_subdominant(res.h, model.fitted->form, 400, 1000);
    model.fitted->coefficient = fit.coefficient;
    res = subtract_singularities(mt, model);
    const double recon = reconstruct_spectral(model, res.h, 0.5);
    const double bz = spectral_via_bz_extrapolated(bc, r, 0.5, 150, 0.01);
    CHECK(std::abs(recon - bz) < 2e-3);  // 3D oracle accuracy is grid-limited
}

TEST_CASE("reconstructed square spectral function matches independent oracles") {
    const auto& d = square_local();
    for (double w : {0.3, 0.5, 0.7}) {
        const double recon = reconstruct_spectral(d.model, d.h, w);
        // closed-form cross-check: g(w) = (2/pi^2) K(sqrt(1-w^2))
        const double elliptic = (2.0 / (kPi * kPi)) * std::comp_ellint_1(std::sqrt(1.0 - w * w));
        CHECK(std::abs(recon - elliptic) < 1e-8);
        CHECK(std::abs(recon - square_dos_levelset(w)) < 1e-8);
    }
    // residual = 0 reproduces the model exactly
    std::vector<double> zero(d.h.size(), 0.0);
    CHECK(reconstruct_spectral(d.model, zero, 0.5) == doctest::Approx(d.model.eval(0.5)));
    CHECK_THROWS_AS(reconstruct_spectral(d.model, d.h, 0.0), DomainError);
}

TEST_CASE("bcc local reconstruction is stable at the 1e-9 level") {
    const auto bc = lattice(Family::bcc);
    const auto coeffs = build_coeff_table(1400);
    const auto model = builtin_singular_model(bc, origin_displacement(bc));
    const auto mt1 = moments_from_walks(build_walk_table(bc, origin_displacement(bc), 1000), coeffs);
    const auto mt2 = moments_from_walks(build_walk_table(bc, origin_displacement(bc), 1400), coeffs);
    const auto h1 = subtract_singularities(mt1, model).h;
    const auto h2 = subtract_singularities(mt2, model).h;
    CHECK(std::abs(subtract_singularities(mt1, model).tail_estimate) < 1e-8);
    for (double w : {0.5, -0.31})
        CHECK(std::abs(reconstruct_spectral(model, h1, w) -
                       reconstruct_spectral(model, h2, w)) < 2e-9);
}

TEST_CASE("real part reconstruction") {
    // empty model: reduces to the residual series
    const auto& d = square_local();
    std::vector<double> g2(d.moments.floats.begin(), d.moments.floats.begin() + 201);
    CHECK(real_part_reconstruct(SingularModel{}, g2, 0.4) == green_from_residual(g2, 0.4));

    // chain: model = delta_like, residual = 0, Re G = 0 on the cut
    SingularModel chain_model;
    chain_model.terms.push_back({PairKind::delta_like, 1.0});
    std::vector<double> zero(2, 0.0);
    const auto gch = real_part_reconstruct(chain_model, zero, 0.5);
    CHECK(std::abs(gch.real()) < 1e-10);
    CHECK(gch.imag() == doctest::Approx(-1.0 / std::sqrt(0.75)).epsilon(1e-12));

    // square local: full G against a single principal-value transform of the
    // whole reconstructed spectral function (the pv engine itself is verified
    // against the analytic U_{n-1} identity elsewhere)
    for (double w : {0.6, -0.35}) {
        const auto g = real_part_reconstruct(d.model, d.h, w);
        const auto sf = reconstruction_spectral(d.model, d.h);
        const double theta0 = std::acos(w);
        const double re_direct =
            -pv_cheb_integral(sf.theta_form, theta0, sf.singular_thetas, 1e-10);
        CHECK(std::abs(g.real() - re_direct) < 1e-6);
        CHECK(g.imag() == doctest::Approx(-kPi * reconstruct_spectral(d.model, d.h, w))
                              .epsilon(1e-12));
    }
}

TEST_CASE("parity: even moments give an exactly even spectral function") {
    const auto& d = square_local();
    for (double w : {0.125, 0.375, 0.8125}) {  // exactly representable
        CHECK(eval_spectral(d.moments, w) == eval_spectral(d.moments, -w));
        CHECK(eval_green_on_cut(d.moments, w).real() ==
              -eval_green_on_cut(d.moments, -w).real());
    }
}

TEST_CASE("matching at the unit circle: walk and moment routes agree") {
    for (Family f : {Family::square, Family::bcc}) {
        const auto lat = lattice(f);
        const auto walks = build_walk_table(lat, origin_displacement(lat), 200);
        const auto mt = moments_from_walks(walks, build_coeff_table(200));
        const auto direct = scaled_walk_moments(walks);
        const auto inverted = power_moments_from_chebyshev(mt);
        const auto g1 = eval_power_series(direct, {1.05, 0.0});
        const auto g2 = eval_power_series(inverted, {1.05, 0.0});
        CHECK(std::abs(g1 - g2) < 1e-12);
        CHECK(std::abs(g1) > 0.1);
    }
}

TEST_CASE("window insensitivity under subtraction") {
    // The Kaiser window biases the low-n residual terms by (1-w_n)|h_n|,
    // about 5e-7 for the square local case, so beta = 0 and beta = 10 agree
    // to ~1e-6 (not the naive truncation-error scale).
    const auto& d = square_local();
    for (double w : {0.3, 0.5, 0.62}) {
        const double a = reconstruct_spectral(d.model, d.h, w, 0.0);
        const double b = reconstruct_spectral(d.model, d.h, w, 10.0);
        CHECK(std::abs(a - b) < 2e-6);
    }
}

TEST_CASE("grid evaluation dispatches by region") {
    const auto bc = lattice(Family::bcc);
    const auto walks = build_walk_table(bc, origin_displacement(bc), 300);
    const auto mt = moments_from_walks(walks, build_coeff_table(300));

    EvalOptions opt;
    opt.terms = 300;
    std::vector<double> grid{-1.5, -1.2, -0.5, 0.0, 0.5, 1.2, 1.5};
    const auto res = evaluate_grid(walks, mt, grid, opt);
    REQUIRE(res.omega.size() == grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (std::abs(grid[i]) > 1.0) {
            CHECK(res.green[i].imag() == 0.0);
            CHECK(res.spectral[i] == 0.0);
            CHECK(res.green[i] == eval_power_series(walks, {grid[i], 0.0}));
        } else {
            CHECK(res.green[i].imag() == doctest::Approx(-kPi * res.spectral[i]));
        }
    }
    CHECK(res.meta.terms_used == 300);
    CHECK(res.meta.model == "none");

    // with subtraction: the model pole at omega = 0 becomes an empty cell
    EvalOptions sopt;
    sopt.terms = 300;
    sopt.subtract = true;
    const auto sres = evaluate_grid(walks, mt, {-0.5, 0.0, 0.5}, sopt);
    CHECK(std::isnan(sres.spectral[1]));
    CHECK(std::isnan(sres.green[1].real()));
    CHECK_FALSE(std::isnan(sres.spectral[0]));
    CHECK(sres.meta.model != "none");

    // determinism: identical inputs give byte-identical CSV
    std::ostringstream a, b;
    write_green_csv(a, sres);
    const auto sres2 = evaluate_grid(walks, mt, {-0.5, 0.0, 0.5}, sopt);
    write_green_csv(b, sres2);
    CHECK(a.str() == b.str());
}
