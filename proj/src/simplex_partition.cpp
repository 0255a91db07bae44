#include <sstream>

#include "bmlab/measure.hpp"
#include "bmlab/partition.hpp"

namespace bmlab {

std::vector<Simplex> subdivide_simplex(const Simplex& s, const Point& x) {
  if (!s.strictly_contains(x)) throw InvalidArgument("subdivide_simplex: point not strictly inside");
  std::vector<Simplex> out;
  for (size_t i = 0; i < s.vertices().size(); ++i) out.push_back(s.with_vertex(i, x));
  return out;
}

bool central_point_ok(const Simplex& s, const Point& x) {
  const int d = s.dim();
  const Rational floor_ratio(1, d + 2);
  for (const auto& l : s.barycentric(x))
    if (l < floor_ratio) return false;
  const Rational c(d + 1, d + 2);
  const Rational bound = c * c * s.max_edge_sq();
  for (const auto& v : s.vertices())
    if (dist_sq(x, v) > bound) return false;
  return true;
}

std::optional<CentralPoint> find_central_point(const CellSet& a, const Simplex& s) {
  const int d = s.dim();
  if (a.dim() != d) throw InvalidArgument("central_point: dimension mismatch");
  const Point bary = s.barycenter();
  if (a.contains_point(bary)) return CentralPoint{bary, s.barycentric(bary)};

  // Shrunk copies (1 - r)S + r·barycenter for r = k / (K (d+2)), k = 1..K;
  // r <= 1/(d+2) keeps every barycentric coordinate >= 1/(d+2).
  constexpr int kSteps = 8;
  std::vector<std::pair<Point, std::vector<Rational>>> centers;
  for (const auto& c : a.cells()) {
    Point x = a.center(c);
    auto l = s.barycentric(x);
    bool inside = true;
    for (const auto& v : l)
      if (v <= 0) { inside = false; break; }
    if (inside) centers.emplace_back(std::move(x), std::move(l));
  }
  for (int k = 1; k <= kSteps; ++k) {
    const Rational r = fraction(k, kSteps * (d + 2));
    const Rational floor_l = (Rational(1) - r) / (d + 1);
    for (const auto& [x, l] : centers) {
      bool ok = true;
      for (const auto& v : l)
        if (v < floor_l) { ok = false; break; }
      if (ok && central_point_ok(s, x)) return CentralPoint{x, l};
    }
  }
  return std::nullopt;
}

CentralPoint central_point(const CellSet& a, const Simplex& s, const Rational& alpha) {
  const Polytope p = s.polytope();
  if (s.volume() > (Rational(1) + alpha) * region_measure(a, p))
    throw InvalidArgument("central_point: |S| > (1 + alpha)|A ∩ S|");
  auto found = find_central_point(a, s);
  if (!found) throw InvalidArgument("central_point: no qualifying cell center");
  return *found;
}

const char* to_string(NodeCategory c) {
  switch (c) {
    case NodeCategory::active: return "active";
    case NodeCategory::low_density: return "low_density";
    case NodeCategory::full: return "full";
    case NodeCategory::small_radius: return "small_radius";
  }
  return "?";
}

std::vector<size_t> PartitionTree::leaves() const {
  std::vector<size_t> out;
  for (const auto& n : nodes)
    if (n.children.empty()) out.push_back(n.id);
  return out;
}

PartitionTree linear_partition_process(const CellSet& a, const Weight& t, const Rational& eps, int max_depth,
                                       const PartitionOptions& options) {
  if (a.empty()) throw InvalidArgument("linear_partition_process: empty set");
  if (!(eps > 0 && eps < 1)) throw InvalidArgument("linear_partition_process: eps must lie in (0, 1)");
  if (max_depth < 0) throw InvalidArgument("linear_partition_process: negative max depth");
  const Rational threshold = options.low_density_threshold.value_or(eps);

  PartitionTree tree;
  tree.t = t.value();
  tree.eps = eps;
  const Polytope hull = convex_hull(a);
  tree.hull_volume = polytope_volume(hull);

  auto add = [&](Simplex s, int depth, std::optional<size_t> parent) {
    const Rational vol = s.volume();
    const Rational m = region_measure(a, s.polytope());
    NodeCategory cat = NodeCategory::active;
    if (m == vol) cat = NodeCategory::full;
    else if (m <= threshold * vol) cat = NodeCategory::low_density;
    else if (options.min_diameter_sq && s.max_edge_sq() < *options.min_diameter_sq) cat = NodeCategory::small_radius;
    const size_t id = tree.nodes.size();
    tree.nodes.push_back(PartitionNode{id, depth, parent, std::move(s), m, vol, cat, {}, std::nullopt, {}});
    return id;
  };

  for (auto& s : triangulate(hull)) tree.roots.push_back(add(std::move(s), 0, std::nullopt));

  // Breadth-first: node ids grow by depth, which fixes the output order.
  for (size_t i = 0; i < tree.nodes.size(); ++i) {
    if (tree.nodes[i].category != NodeCategory::active || tree.nodes[i].depth >= max_depth) continue;
    auto cp = find_central_point(a, tree.nodes[i].simplex);
    if (!cp) {
      tree.nodes[i].failure = "no central point";
      continue;
    }
    auto children = subdivide_simplex(tree.nodes[i].simplex, cp->x);
    tree.nodes[i].split = std::move(cp);
    const int depth = tree.nodes[i].depth + 1;
    for (auto& c : children) {
      const size_t id = add(std::move(c), depth, i);
      tree.nodes[i].children.push_back(id);
    }
  }

  for (size_t id : tree.leaves()) {
    const auto& n = tree.nodes[id];
    if (n.category == NodeCategory::low_density) tree.low_density_volume += n.simplex_volume;
    else tree.dense_gap += n.simplex_volume - n.measure_in_a;
  }
  return tree;
}

namespace {

std::string vertex_list(const Simplex& s) {
  std::string out;
  for (size_t i = 0; i < s.vertices().size(); ++i) {
    if (i) out += ' ';
    out += to_string(s.vertex(i));
  }
  return out;
}

}  // namespace

std::string dump_tree(const PartitionTree& tree) {
  std::ostringstream os;
  os << "t=" << to_string(tree.t) << " eps=" << to_string(tree.eps) << " hull=" << to_string(tree.hull_volume)
     << " low_density_volume=" << to_string(tree.low_density_volume) << " dense_gap=" << to_string(tree.dense_gap)
     << '\n';
  auto emit = [&](auto&& self, size_t id) -> void {
    const auto& n = tree.nodes[id];
    os << std::string(2 * n.depth, ' ') << '#' << n.id << ' ' << to_string(n.category)
       << " measure=" << to_string(n.measure_in_a) << " volume=" << to_string(n.simplex_volume) << " ["
       << vertex_list(n.simplex) << ']';
    if (n.split) os << " split=" << to_string(n.split->x);
    if (!n.failure.empty()) os << " failure=\"" << n.failure << '"';
    os << '\n';
    for (size_t c : n.children) self(self, c);
  };
  for (size_t r : tree.roots) emit(emit, r);
  return os.str();
}

std::string leaves_csv(const PartitionTree& tree) {
  std::ostringstream os;
  os << "node_id,depth,category,vertices,measure,simplex_volume\n";
  for (size_t id : tree.leaves()) {
    const auto& n = tree.nodes[id];
    os << n.id << ',' << n.depth << ',' << to_string(n.category) << ",\"" << vertex_list(n.simplex) << "\","
       << to_string(n.measure_in_a) << ',' << to_string(n.simplex_volume) << '\n';
  }
  return os.str();
}

}  // namespace bmlab
