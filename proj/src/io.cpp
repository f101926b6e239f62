#include "lgf/io.hpp"

#include <fmt/format.h>

#include <cmath>
#include <nlohmann/json.hpp>
#include <ostream>

namespace lgf {

using nlohmann::json;

namespace {

json displacement_json(const Displacement& r) {
    json j;
    j["coords"] = r.coords;
    j["convention"] = r.convention == CoordConvention::grid4 ? "grid4" : "cartesian";
    return j;
}

}  // namespace

std::string format_double(double v, int digits) {
    return fmt::format("{:.{}g}", v, digits);
}

std::string walk_table_json(const WalkTable& table) {
    json j;
    j["lattice"] = std::string(family_name(table.lattice.family));
    j["z"] = table.lattice.z;
    j["displacement"] = displacement_json(table.displacement);
    j["N"] = table.max_order();
    json counts = json::array();
    for (const auto& w : table.counts) counts.push_back(to_decimal(w));
    j["counts"] = std::move(counts);
    return j.dump(2);
}

std::string moment_table_json(const MomentTable& table) {
    json j;
    j["lattice"] = std::string(family_name(table.lattice.family));
    j["z"] = table.lattice.z;
    j["displacement"] = displacement_json(table.displacement);
    j["N"] = table.max_order();
    json scaled = json::array();
    for (const auto& s : table.scaled) scaled.push_back(to_decimal(s));
    j["scaled"] = std::move(scaled);
    json floats = json::array();
    for (double g : table.floats) floats.push_back(g);
    j["floats"] = std::move(floats);
    return j.dump(2);
}

namespace {

json meta_json(const GreenResult& result) {
    json meta;
    meta["terms_used"] = result.meta.terms_used;
    if (result.meta.window_beta)
        meta["window_beta"] = *result.meta.window_beta;
    else
        meta["window_beta"] = nullptr;
    meta["model"] = result.meta.model;
    meta["residual_tail_estimate"] = result.meta.residual_tail_estimate;
    if (result.meta.fitted_coefficient)
        meta["fitted_coefficient"] = *result.meta.fitted_coefficient;
    return meta;
}

json maybe_number(double v) {
    if (std::isnan(v)) return nullptr;
    return v;
}

}  // namespace

std::string green_result_meta_json(const GreenResult& result) {
    return meta_json(result).dump(2);
}

std::string green_result_json(const GreenResult& result) {
    json j;
    j["meta"] = meta_json(result);
    json rows = json::array();
    for (std::size_t i = 0; i < result.omega.size(); ++i) {
        json row;
        row["omega"] = result.omega[i];
        row["re_g"] = maybe_number(result.green[i].real());
        row["im_g"] = maybe_number(result.green[i].imag());
        row["spectral"] = maybe_number(result.spectral[i]);
        rows.push_back(std::move(row));
    }
    j["data"] = std::move(rows);
    return j.dump(2);
}

void write_green_csv(std::ostream& os, const GreenResult& result, int digits) {
    os << "omega,re_g,im_g,spectral\n";
    const auto cell = [&](double v) {
        return std::isnan(v) ? std::string() : format_double(v, digits);
    };
    for (std::size_t i = 0; i < result.omega.size(); ++i) {
        os << format_double(result.omega[i], digits) << ',' << cell(result.green[i].real())
           << ',' << cell(result.green[i].imag()) << ',' << cell(result.spectral[i]) << '\n';
    }
}

}  // namespace lgf
