#ifndef LGF_IO_HPP
#define LGF_IO_HPP

#include <iosfwd>
#include <string>

#include "lgf/cheb.hpp"
#include "lgf/greens.hpp"
#include "lgf/walks.hpp"

namespace lgf {

// Big integers serialize as decimal strings; JSON numbers would lose
// precision.  JSON floats keep full round-trip precision; CSV floats print
// with `digits` significant digits (default 17).

std::string walk_table_json(const WalkTable& table);
std::string moment_table_json(const MomentTable& table);
std::string green_result_meta_json(const GreenResult& result);
std::string green_result_json(const GreenResult& result);

/// CSV with mandatory header "omega,re_g,im_g,spectral"; NaN cells are empty.
void write_green_csv(std::ostream& os, const GreenResult& result, int digits = 17);

std::string format_double(double v, int digits);

}  // namespace lgf

#endif
