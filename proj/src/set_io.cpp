#include "bmlab/set_io.hpp"

#include <fstream>
#include <optional>
#include <set>
#include <sstream>

namespace bmlab {

namespace {

[[noreturn]] void fail(const std::string& source, size_t line, const std::string& what) {
  throw InvalidArgument(source + ":" + std::to_string(line) + ": " + what);
}

}  // namespace

CellSet parse_set(std::istream& in, const std::string& source) {
  std::string raw;
  size_t line_no = 0;
  std::optional<GridSpec> grid;
  std::vector<Cell> cells;
  std::set<Cell> seen;
  while (std::getline(in, raw)) {
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream ls(raw);
    std::vector<std::string> tokens;
    for (std::string tok; ls >> tok;) tokens.push_back(tok);
    if (tokens.empty()) continue;

    std::vector<std::int64_t> ints;
    for (const auto& tok : tokens) {
      size_t used = 0;
      long long v = 0;
      try {
        v = std::stoll(tok, &used);
      } catch (const std::exception&) {
        fail(source, line_no, "not an integer: '" + tok + "'");
      }
      if (used != tok.size()) fail(source, line_no, "not an integer: '" + tok + "'");
      ints.push_back(v);
    }

    if (!grid) {
      if (ints.size() != 3) fail(source, line_no, "header must be 'dim pitch_num pitch_den'");
      if (ints[0] < 1 || ints[0] > kMaxExactDim) fail(source, line_no, "dim must be 1..3");
      if (ints[1] <= 0 || ints[2] <= 0) fail(source, line_no, "pitch must be positive");
      Rational pitch(static_cast<long>(ints[1]), static_cast<long>(ints[2]));
      pitch.canonicalize();
      grid = GridSpec(static_cast<int>(ints[0]), pitch);
      continue;
    }
    if (static_cast<int>(ints.size()) != grid->dim)
      fail(source, line_no, "expected " + std::to_string(grid->dim) + " coordinates, got " + std::to_string(ints.size()));
    Cell c{};
    for (size_t i = 0; i < ints.size(); ++i) c[i] = ints[i];
    if (!seen.insert(c).second) fail(source, line_no, "duplicate cell");
    cells.push_back(c);
  }
  if (!grid) fail(source, line_no, "missing header line");
  return CellSet(*grid, std::move(cells));
}

CellSet parse_set_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open set file: " + path);
  return parse_set(in, path);
}

std::string format_set(const CellSet& s) {
  std::ostringstream os;
  os << s.dim() << ' ' << s.pitch().get_num() << ' ' << s.pitch().get_den() << '\n';
  for (const auto& c : s.cells()) {
    for (int i = 0; i < s.dim(); ++i) os << (i ? " " : "") << c[i];
    os << '\n';
  }
  return os.str();
}

void write_set_file(const std::string& path, const CellSet& s) {
  std::ofstream out(path);
  if (!out) throw InvalidArgument("cannot write set file: " + path);
  out << format_set(s);
  if (!out) throw InvalidArgument("write failed: " + path);
}

}  // namespace bmlab
