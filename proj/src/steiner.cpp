#include <algorithm>
#include <cmath>
#include <map>

#include "bmlab/partition.hpp"

namespace bmlab {

CellSet steiner_symmetrize(const CellSet& a, int axis) {
  const int d = a.dim();
  if (d < 2) throw InvalidArgument("steiner_symmetrize: dim must be >= 2");
  if (axis < 0 || axis >= d) throw InvalidArgument("steiner_symmetrize: axis out of range");

  std::map<std::int64_t, size_t> counts;
  for (const auto& c : a.cells()) ++counts[c[axis]];

  std::vector<int> others;
  for (int i = 0; i < d; ++i)
    if (i != axis) others.push_back(i);

  std::vector<Cell> out;
  for (const auto& [level, count] : counts) {
    // Quasi-disc: cells of the slice ordered by squared center distance to the
    // axis line, i.e. by Σ (2c + 1)², lexicographic on ties.
    const auto rad = others.size() > 1
                         ? static_cast<std::int64_t>(std::ceil(std::sqrt(static_cast<double>(count)))) + 1
                         : static_cast<std::int64_t>(count / 2) + 1;
    std::vector<std::pair<std::int64_t, Cell>> cand;
    for (std::int64_t x = -rad; x < rad; ++x) {
      for (std::int64_t y = (others.size() > 1 ? -rad : 0); y < (others.size() > 1 ? rad : 1); ++y) {
        Cell c{};
        c[axis] = level;
        c[others[0]] = x;
        std::int64_t key = (2 * x + 1) * (2 * x + 1);
        if (others.size() > 1) {
          c[others[1]] = y;
          key += (2 * y + 1) * (2 * y + 1);
        }
        cand.emplace_back(key, c);
      }
    }
    std::sort(cand.begin(), cand.end());
    for (size_t i = 0; i < count; ++i) out.push_back(cand[i].second);
  }
  return CellSet(a.grid(), std::move(out));
}

}  // namespace bmlab
