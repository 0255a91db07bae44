#pragma once

#include <istream>
#include <string>

#include "bmlab/cell_set.hpp"

namespace bmlab {

/// Reads the plain-text set format: a header line `dim pitch_num pitch_den`,
/// then one line of dim integers per cell. `#` starts a comment.
/// Errors name the source and line number.
CellSet parse_set(std::istream& in, const std::string& source = "<input>");
CellSet parse_set_file(const std::string& path);

/// Header plus cells in lexicographic order; parse_set(format_set(s)) == s.
std::string format_set(const CellSet& s);
void write_set_file(const std::string& path, const CellSet& s);

}  // namespace bmlab
