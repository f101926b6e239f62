#include "lgf/lattice.hpp"

#include <fmt/format.h>

#include <numeric>

namespace lgf {

namespace {

struct FamilyInfo {
    Family family;
    std::string_view name;
    int z;
    int dim;
    int ncoord;
    CoordConvention convention;
};

constexpr FamilyInfo kFamilies[] = {
    {Family::chain, "chain", 2, 1, 1, CoordConvention::cartesian},
    {Family::square, "square", 4, 2, 2, CoordConvention::cartesian},
    {Family::bcc, "bcc", 8, 3, 3, CoordConvention::cartesian},
    {Family::honeycomb, "honeycomb", 3, 2, 3, CoordConvention::cartesian},
    {Family::diamond, "diamond", 4, 3, 4, CoordConvention::grid4},
    {Family::cubic, "cubic", 6, 3, 3, CoordConvention::cartesian},
    {Family::hypercubic4, "hypercubic4", 8, 4, 4, CoordConvention::cartesian},
    {Family::triangular, "triangular", 6, 2, 3, CoordConvention::cartesian},
    {Family::fcc, "fcc", 12, 3, 4, CoordConvention::grid4},
};

const FamilyInfo& info(Family f) {
    for (const auto& fi : kFamilies)
        if (fi.family == f) return fi;
    throw Error("unknown lattice family");
}

}  // namespace

const std::vector<LatticeSpec>& all_lattices() {
    static const std::vector<LatticeSpec> all = [] {
        std::vector<LatticeSpec> v;
        for (const auto& fi : kFamilies) v.push_back({fi.family, fi.z, fi.dim});
        return v;
    }();
    return all;
}

LatticeSpec lattice(Family f) {
    const auto& fi = info(f);
    return {fi.family, fi.z, fi.dim};
}

Family family_from_name(std::string_view name) {
    for (const auto& fi : kFamilies)
        if (fi.name == name) return fi.family;
    if (name == "sq") return Family::square;
    if (name == "hon") return Family::honeycomb;
    if (name == "diam") return Family::diamond;
    if (name == "hcub" || name == "hypercubic") return Family::hypercubic4;
    if (name == "tri") return Family::triangular;
    throw Error(fmt::format("unknown lattice '{}'", name));
}

std::string_view family_name(Family f) { return info(f).name; }

int coord_count(Family f) { return info(f).ncoord; }

bool is_bipartite(Family f) { return f != Family::triangular && f != Family::fcc; }

bool Displacement::is_origin() const {
    for (int c : coords)
        if (c != 0) return false;
    return true;
}

int Displacement::coord_sum() const {
    return std::accumulate(coords.begin(), coords.end(), 0);
}

std::string Displacement::to_string() const {
    std::string s;
    for (std::size_t i = 0; i < coords.size(); ++i) {
        if (i) s += ',';
        s += fmt::format("{}", coords[i]);
    }
    return "(" + s + ")";
}

Displacement origin_displacement(const LatticeSpec& lat) {
    Displacement r;
    r.coords.assign(coord_count(lat.family), 0);
    r.convention = info(lat.family).convention;
    return r;
}

Displacement make_displacement(const LatticeSpec& lat, std::vector<int> coords) {
    Displacement r;
    r.coords = std::move(coords);
    r.convention = info(lat.family).convention;
    validate_displacement(lat, r);
    return r;
}

void validate_displacement(const LatticeSpec& lat, const Displacement& r) {
    const auto& fi = info(lat.family);
    if (static_cast<int>(r.coords.size()) != fi.ncoord)
        throw InvalidDisplacement(fmt::format("{} displacement needs {} coordinates, got {}",
                                              fi.name, fi.ncoord, r.coords.size()));
    const int s = r.coord_sum();
    switch (lat.family) {
        case Family::honeycomb:
            if (s != 0 && s != 1)
                throw InvalidDisplacement(
                    fmt::format("honeycomb coordinates must satisfy x+y+z in {{0,1}}, got {}", s));
            break;
        case Family::diamond:
            if (s != 0 && s != 1)
                throw InvalidDisplacement(
                    fmt::format("diamond coordinates must satisfy u+v+w+s in {{0,1}}, got {}", s));
            break;
        case Family::triangular:
            if (s != 0)
                throw InvalidDisplacement(
                    fmt::format("triangular coordinates must satisfy x+y+z = 0, got {}", s));
            break;
        case Family::fcc:
            if (s != 0)
                throw InvalidDisplacement(
                    fmt::format("fcc coordinates must satisfy u+v+w+s = 0, got {}", s));
            break;
        default:
            break;
    }
}

}  // namespace lgf
