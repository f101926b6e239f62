// lgf: lattice Green functions from exact walk counts.
//
// Subcommands: walks, moments, eval, fit, oracle, verify.
// Exit codes: 0 ok, 1 usage or invalid input, 2 fixture mismatch,
// 3 degenerate fit.

#include <CLI11.hpp>
#include <fmt/format.h>

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "lgf/fixtures.hpp"
#include "lgf/greens.hpp"
#include "lgf/io.hpp"
#include "lgf/oracle.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitFixtureMismatch = 2;
constexpr int kExitDegenerateFit = 3;

struct RunConfig {
    std::string lattice_name = "square";
    std::string displacement;   // comma-separated integers; empty = origin
    int n = 10;                 // table order for walks/moments
    int terms = 1000;           // series length for eval/fit
    std::string omega_spec;     // "start:stop:step", single value, or comma list
    std::optional<double> window_beta;
    bool subtract = false;
    std::string fit_range;      // "lo:hi"
    std::string output;
    std::string format = "csv";
    int digits = 17;
    unsigned threads = 0;
    bool verify = false;
    // oracle subcommand extras
    bool use_bz = false;
    double eta = 0.01;
    int grid = 400;
    double omega_point = 0.5;
};

lgf::LatticeSpec parse_lattice(const RunConfig& cfg) {
    return lgf::lattice(lgf::family_from_name(cfg.lattice_name));
}

lgf::Displacement parse_displacement(const lgf::LatticeSpec& lat, const std::string& text) {
    if (text.empty()) return lgf::origin_displacement(lat);
    std::vector<int> coords;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto comma = text.find(',', pos);
        const std::string tok = text.substr(pos, comma == std::string::npos ? comma : comma - pos);
        try {
            coords.push_back(std::stoi(tok));
        } catch (const std::exception&) {
            throw lgf::InvalidDisplacement(fmt::format("bad displacement component '{}'", tok));
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return lgf::make_displacement(lat, std::move(coords));
}

std::pair<int, int> parse_range(const std::string& text, int fallback_lo, int fallback_hi) {
    if (text.empty()) return {fallback_lo, fallback_hi};
    const auto colon = text.find(':');
    if (colon == std::string::npos)
        throw lgf::Error(fmt::format("range '{}' must be lo:hi", text));
    return {std::stoi(text.substr(0, colon)), std::stoi(text.substr(colon + 1))};
}

// "start:stop:step" | single value | comma list.  Range grids clamp on-cut
// points into (-1+step, 1-step); explicit values are taken verbatim.
std::vector<double> parse_omega(const std::string& spec) {
    if (spec.empty()) throw lgf::Error("eval needs --omega");
    const auto ncolon = std::count(spec.begin(), spec.end(), ':');
    if (ncolon == 2) {
        const auto c1 = spec.find(':');
        const auto c2 = spec.find(':', c1 + 1);
        const double start = std::stod(spec.substr(0, c1));
        const double stop = std::stod(spec.substr(c1 + 1, c2 - c1 - 1));
        const double step = std::stod(spec.substr(c2 + 1));
        if (step <= 0.0 || stop < start) throw lgf::Error("omega range must have step > 0 and start <= stop");
        std::vector<double> grid;
        bool clamped = false;
        const double delta = step;
        for (int k = 0;; ++k) {
            double w = start + k * step;
            if (w > stop + step * 1e-9) break;
            if (std::abs(w) <= 1.0 && std::abs(w) > 1.0 - delta) {
                w = std::copysign(1.0 - delta, w);
                clamped = true;
            }
            grid.push_back(w);
        }
        if (clamped)
            std::cerr << "warning: on-cut grid points clamped into (-1+step, 1-step)\n";
        return grid;
    }
    std::vector<double> grid;
    std::size_t pos = 0;
    while (pos <= spec.size()) {
        const auto comma = spec.find(',', pos);
        grid.push_back(std::stod(spec.substr(pos, comma == std::string::npos ? comma : comma - pos)));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return grid;
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text << '\n';
        return;
    }
    std::ofstream os(path);
    if (!os) throw lgf::Error(fmt::format("cannot open '{}'", path));
    os << text << '\n';
}

// ---------------------------------------------------------------------------
// walks
// ---------------------------------------------------------------------------

int verify_walks(const lgf::WalkTable& table) {
    const auto& lat = table.lattice;
    int failures = 0;
    if (table.displacement.is_origin()) {
        const auto& all = lgf::all_lattices();
        for (std::size_t li = 0; li < all.size(); ++li) {
            if (all[li].family != lat.family) continue;
            for (int n = 0; n <= std::min(table.max_order(), lgf::fixtures::kMaxN); ++n) {
                const lgf::Int expect(lgf::fixtures::closed_walks[li][static_cast<std::size_t>(n)]);
                if (table.counts[static_cast<std::size_t>(n)] != expect) {
                    std::cerr << fmt::format("FIXTURE MISMATCH: W_{} = {} expected {}\n", n,
                                             lgf::to_decimal(table.counts[static_cast<std::size_t>(n)]),
                                             lgf::to_decimal(expect));
                    ++failures;
                }
            }
        }
    }
    const int n_oracle = std::min(table.max_order(), 12);
    lgf::FinitePatch patch(lat, n_oracle);
    for (int n = 0; n <= n_oracle; ++n) {
        const auto oracle = lgf::walks_via_adjacency(patch, table.displacement, n);
        if (oracle != table.counts[static_cast<std::size_t>(n)]) {
            std::cerr << fmt::format("ORACLE MISMATCH: W_{} = {} adjacency gives {}\n", n,
                                     lgf::to_decimal(table.counts[static_cast<std::size_t>(n)]),
                                     lgf::to_decimal(oracle));
            ++failures;
        }
    }
    return failures;
}

int cmd_walks(const RunConfig& cfg) {
    const auto lat = parse_lattice(cfg);
    const auto r = parse_displacement(lat, cfg.displacement);
    const auto table = lgf::build_walk_table(lat, r, cfg.n);
    if (cfg.verify && verify_walks(table) > 0) return kExitFixtureMismatch;
    write_text(cfg.output, lgf::walk_table_json(table));
    return kExitOk;
}

// ---------------------------------------------------------------------------
// moments
// ---------------------------------------------------------------------------

int verify_moments(const lgf::MomentTable& mt) {
    int failures = 0;
    if (mt.displacement.is_origin()) {
        const auto& all = lgf::all_lattices();
        for (std::size_t li = 0; li < all.size(); ++li) {
            if (all[li].family != mt.lattice.family) continue;
            for (int n = 0; n <= std::min(mt.max_order(), lgf::fixtures::kMaxN); ++n) {
                const lgf::Int expect(lgf::fixtures::scaled_moments[li][static_cast<std::size_t>(n)]);
                if (mt.scaled[static_cast<std::size_t>(n)] != expect) {
                    std::cerr << fmt::format("FIXTURE MISMATCH: z^n g_n at n={} is {} expected {}\n",
                                             n, lgf::to_decimal(mt.scaled[static_cast<std::size_t>(n)]),
                                             lgf::to_decimal(expect));
                    ++failures;
                }
            }
        }
    }
    return failures;
}

int cmd_moments(const RunConfig& cfg) {
    const auto lat = parse_lattice(cfg);
    const auto r = parse_displacement(lat, cfg.displacement);
    const auto walks = lgf::build_walk_table(lat, r, cfg.n);
    const auto mt = lgf::moments_from_walks(walks, lgf::build_coeff_table(cfg.n));
    if (cfg.verify && verify_moments(mt) > 0) return kExitFixtureMismatch;
    write_text(cfg.output, lgf::moment_table_json(mt));
    return kExitOk;
}

// ---------------------------------------------------------------------------
// eval
// ---------------------------------------------------------------------------

int cmd_eval(const RunConfig& cfg) {
    const auto lat = parse_lattice(cfg);
    const auto r = parse_displacement(lat, cfg.displacement);
    const auto grid = parse_omega(cfg.omega_spec);

    const auto walks = lgf::build_walk_table(lat, r, cfg.terms);
    const auto mt = lgf::moments_from_walks(walks, lgf::build_coeff_table(cfg.terms));

    lgf::EvalOptions opt;
    opt.terms = cfg.terms;
    opt.window_beta = cfg.window_beta;
    opt.subtract = cfg.subtract;
    opt.threads = cfg.threads;
    if (!cfg.fit_range.empty()) opt.fit_range = parse_range(cfg.fit_range, 0, cfg.terms);

    const auto result = lgf::evaluate_grid(walks, mt, grid, opt);

    if (cfg.format == "json") {
        write_text(cfg.output, lgf::green_result_json(result));
    } else if (cfg.output.empty()) {
        lgf::write_green_csv(std::cout, result, cfg.digits);
    } else {
        std::ofstream os(cfg.output);
        if (!os) throw lgf::Error(fmt::format("cannot open '{}'", cfg.output));
        lgf::write_green_csv(os, result, cfg.digits);
        std::ofstream meta(cfg.output + ".meta.json");
        meta << lgf::green_result_meta_json(result) << '\n';
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// fit
// ---------------------------------------------------------------------------

int cmd_fit(const RunConfig& cfg) {
    const auto lat = parse_lattice(cfg);
    const auto r = parse_displacement(lat, cfg.displacement);
    const int N = cfg.terms;

    auto model = lgf::builtin_singular_model(lat, r);
    const auto walks = lgf::build_walk_table(lat, r, N);
    const auto mt = lgf::moments_from_walks(walks, lgf::build_coeff_table(N));

    const auto dominant = lgf::subtract_singularities(mt, model);  // g^A
    const lgf::TransformPair form =
        model.fitted ? model.fitted->form : lgf::TransformPair{lgf::PairKind::log, 1.0};
    const auto range = parse_range(cfg.fit_range, (2 * N) / 5, N);

    const auto fit = lgf::fit_subdominant(dominant.h, form, range.first, range.second);
    if (model.fitted) {
        model.fitted->n_lo = range.first;
        model.fitted->n_hi = range.second;
    } else {
        model.fitted = lgf::FittedTerm{form, range.first, range.second, std::nullopt};
    }
    model.fitted->coefficient = fit.coefficient;
    const auto final = lgf::subtract_singularities(mt, model);  // g^B

    const int tail_lo = std::min(100, N / 2), tail_hi = N;
    const auto exponents = [&](std::span<const double> c) {
        return std::make_pair(lgf::tail_exponent(c, tail_lo, tail_hi),
                              lgf::tail_exponent(c, tail_lo, tail_hi, true));
    };
    const auto [eg, egl] = exponents(mt.floats);
    const auto [ea, eal] = exponents(dominant.h);
    const auto [eb, ebl] = exponents(final.h);

    std::string report;
    report += fmt::format("lattice {} displacement {} terms {}\n",
                          lgf::family_name(lat.family), r.to_string(), N);
    report += fmt::format("dominant model: {}\n", lgf::builtin_singular_model(lat, r).describe());
    report += fmt::format("fitted coefficient c = {:.17g}  (form {}, even n in [{},{}])\n",
                          fit.coefficient, "log", range.first, range.second);
    report += fmt::format("residual norm on fit range: pre {:.6e}  post {:.6e}\n", fit.pre_norm,
                          fit.post_norm);
    report += fmt::format("tail exponents over n in [{},{}] (raw / log-corrected):\n", tail_lo,
                          tail_hi);
    report += fmt::format("  g_n   : {:+.3f} / {:+.3f}\n", eg, egl);
    report += fmt::format("  g^A_n : {:+.3f} / {:+.3f}\n", ea, eal);
    report += fmt::format("  g^B_n : {:+.3f} / {:+.3f}  (|g^B_N| = {:.3e})\n", eb, ebl,
                          std::abs(final.h.back()));
    write_text(cfg.output, report);
    return kExitOk;
}

// ---------------------------------------------------------------------------
// oracle (hidden debugging helper)
// ---------------------------------------------------------------------------

int cmd_oracle(const RunConfig& cfg) {
    const auto lat = parse_lattice(cfg);
    const auto r = parse_displacement(lat, cfg.displacement);
    if (cfg.use_bz) {
        const double g = lgf::spectral_via_bz_extrapolated(lat, r, cfg.omega_point, cfg.grid, cfg.eta);
        std::cout << fmt::format("{:.17g}\n", g);
        return kExitOk;
    }
    lgf::FinitePatch patch(lat, cfg.n);
    std::cout << lgf::to_decimal(lgf::walks_via_adjacency(patch, r, cfg.n)) << '\n';
    return kExitOk;
}

// ---------------------------------------------------------------------------
// verify: all closed-walk and moment fixtures
// ---------------------------------------------------------------------------

int cmd_verify() {
    const auto coeffs = lgf::build_coeff_table(lgf::fixtures::kMaxN);
    const auto& all = lgf::all_lattices();
    int failures = 0;
    for (std::size_t li = 0; li < all.size(); ++li) {
        const auto walks =
            lgf::build_walk_table(all[li], lgf::origin_displacement(all[li]), lgf::fixtures::kMaxN);
        const auto mt = lgf::moments_from_walks(walks, coeffs);
        for (int n = 0; n <= lgf::fixtures::kMaxN; ++n) {
            if (walks.counts[static_cast<std::size_t>(n)] !=
                lgf::Int(lgf::fixtures::closed_walks[li][static_cast<std::size_t>(n)])) {
                std::cerr << fmt::format("walk fixture mismatch: {} n={}\n",
                                         lgf::family_name(all[li].family), n);
                ++failures;
            }
            if (mt.scaled[static_cast<std::size_t>(n)] !=
                lgf::Int(lgf::fixtures::scaled_moments[li][static_cast<std::size_t>(n)])) {
                std::cerr << fmt::format("moment fixture mismatch: {} n={}\n",
                                         lgf::family_name(all[li].family), n);
                ++failures;
            }
        }
    }
    const auto ank = lgf::build_coeff_table(6);
    for (int n = 0; n <= 6; ++n)
        for (int k = 0; k <= n; ++k)
            if (ank.at(n, k) != lgf::Int(lgf::fixtures::cheb_coeffs[static_cast<std::size_t>(n)]
                                                                   [static_cast<std::size_t>(k)])) {
                std::cerr << fmt::format("a_nk fixture mismatch at n={} k={}\n", n, k);
                ++failures;
            }
    if (failures > 0) {
        std::cerr << fmt::format("{} fixture mismatches\n", failures);
        return kExitFixtureMismatch;
    }
    std::cout << "all walk, moment, and coefficient fixtures verified\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"lattice Green functions from exact walk counts"};
    app.require_subcommand(1);
    app.set_config("--config", "", "key=value config file (flags win on conflict)");

    RunConfig cfg;

    const auto add_common = [&cfg](CLI::App* sub, bool with_terms) {
        sub->add_option("--lattice", cfg.lattice_name,
                        "chain|square|bcc|honeycomb|diamond|cubic|hypercubic4|triangular|fcc");
        sub->add_option("--displacement", cfg.displacement,
                        "comma-separated integer coordinates (default: origin)");
        if (with_terms)
            sub->add_option("--terms", cfg.terms, "number of series terms N")
                ->check(CLI::PositiveNumber);
        else
            sub->add_option("--n", cfg.n, "table order N")->check(CLI::NonNegativeNumber);
        sub->add_option("--output", cfg.output, "output path (default: stdout)");
    };

    auto* walks = app.add_subcommand("walks", "exact walk counts W_0..W_N");
    add_common(walks, false);
    walks->add_flag("--verify", cfg.verify, "check against embedded fixtures and the adjacency oracle");

    auto* moments = app.add_subcommand("moments", "exact Chebyshev moments z^n g_n");
    add_common(moments, false);
    moments->add_flag("--verify", cfg.verify, "check against embedded fixtures");

    auto* eval = app.add_subcommand("eval", "evaluate G(omega) and the spectral function");
    add_common(eval, true);
    eval->add_option("--omega", cfg.omega_spec, "grid start:stop:step, single value, or comma list");
    eval->add_option("--window", cfg.window_beta, "Kaiser window beta (default: rectangular)");
    eval->add_flag("--subtract", cfg.subtract, "subtract the built-in van Hove singular model");
    eval->add_option("--fit-range", cfg.fit_range, "lo:hi for the subdominant fit (even n)");
    eval->add_option("--threads", cfg.threads, "worker threads for the grid (0 = all cores)");
    eval->add_option("--digits", cfg.digits, "significant digits in CSV output")
        ->check(CLI::Range(1, 17));
    eval->add_option("--format", cfg.format, "csv|json")->check(CLI::IsMember({"csv", "json"}));

    auto* fit = app.add_subcommand("fit", "fit the subdominant singular coefficient");
    add_common(fit, true);
    fit->add_option("--fit-range", cfg.fit_range, "lo:hi (default: 0.4N:N, even n)");

    auto* oracle = app.add_subcommand("oracle", "brute-force cross-checks");
    oracle->group("");  // hidden
    add_common(oracle, false);
    oracle->add_flag("--bz", cfg.use_bz, "Brillouin-zone spectral estimate");
    oracle->add_option("--omega-point", cfg.omega_point, "omega for --bz");
    oracle->add_option("--eta", cfg.eta, "Lorentzian broadening for --bz");
    oracle->add_option("--grid", cfg.grid, "k-points per dimension for --bz");

    auto* verify = app.add_subcommand("verify", "run every embedded fixture check");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (app.got_subcommand(walks)) return cmd_walks(cfg);
        if (app.got_subcommand(moments)) return cmd_moments(cfg);
        if (app.got_subcommand(eval)) return cmd_eval(cfg);
        if (app.got_subcommand(fit)) return cmd_fit(cfg);
        if (app.got_subcommand(oracle)) return cmd_oracle(cfg);
        if (app.got_subcommand(verify)) return cmd_verify();
    } catch (const lgf::DegenerateFit& e) {
        std::cerr << "degenerate fit: " << e.what() << '\n';
        return kExitDegenerateFit;
    } catch (const lgf::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
