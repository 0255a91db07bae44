#include <cstdlib>

#include "bmlab/measure.hpp"
#include "bmlab/partition.hpp"

namespace bmlab {

namespace {

// e1, e2 spanning the normals of hyperplanes through the anchor.
std::pair<Point, Point> pencil_basis(const Anchor& anchor) {
  const int d = static_cast<int>(anchor.point.size());
  if (d == 2) return {Point{1, 0}, Point{0, 1}};
  if (d != 3) throw InvalidArgument("balanced_hyperplane: dim must be 2 or 3");
  const Point& dir = anchor.direction;
  if (dir.size() != 3 || norm_sq(dir) == 0) throw InvalidArgument("balanced_hyperplane: 3D anchor needs a direction");
  // Coordinate axis least aligned with the direction.
  int k = 0;
  for (int i = 1; i < 3; ++i)
    if (abs(dir[i]) < abs(dir[k])) k = i;
  Point axis = zero_point(3);
  axis[k] = 1;
  Point e1 = orthogonal_complement({dir, axis}, 3);
  Point e2 = orthogonal_complement({dir, e1}, 3);
  return {e1, e2};
}

}  // namespace

Point pencil_normal(const Anchor& anchor, const Rational& s) {
  const auto [e1, e2] = pencil_basis(anchor);
  return (Rational(1) - 2 * s) * e1 + (2 * s * (Rational(1) - s)) * e2;
}

BalanceResult balanced_hyperplane(const CellSet& a, const CellSet& b, const std::vector<HalfSpace>& cone,
                                  const Anchor& anchor, const Rational& tol, int max_iterations) {
  require_same_grid(a, b, "balanced_hyperplane");
  if (static_cast<int>(anchor.point.size()) != a.dim()) throw InvalidArgument("balanced_hyperplane: anchor dimension");
  if (tol <= 0) throw InvalidArgument("balanced_hyperplane: tol must be positive");
  const Rational mass_a = region_measure(a, cone), mass_b = region_measure(b, cone);
  if (mass_a != mass_b) throw InvalidArgument("balanced_hyperplane: |A∩C| != |B∩C|");
  const Rational target = tol * mass_a;

  auto side = [&](const Rational& s) {
    Point n = pencil_normal(anchor, s);
    Rational off = dot(n, anchor.point);
    return HalfSpace(std::move(n), std::move(off));
  };
  auto imbalance = [&](const HalfSpace& hp) -> Rational {
    auto region = cone;
    region.push_back(hp);
    return region_measure(a, region) - region_measure(b, region);
  };
  auto result = [&](const Rational& s, HalfSpace hp, const Rational& f, int it) {
    BalanceResult r;
    r.parameter = s;
    r.witness = hp.normal;
    r.halfspace = std::move(hp);
    r.residual = abs(f);
    r.iterations = it;
    return r;
  };

  // f(1) = -f(0) because H⁺(1) is the closure of the complement of H⁺(0).
  Rational lo = 0, hi = 1;
  HalfSpace h0 = side(lo);
  Rational f_lo = imbalance(h0);
  if (abs(f_lo) <= target) return result(lo, std::move(h0), f_lo, 0);
  for (int it = 1; it <= max_iterations; ++it) {
    const Rational mid = (lo + hi) / 2;
    HalfSpace hm = side(mid);
    const Rational f = imbalance(hm);
    if (abs(f) <= target) return result(mid, std::move(hm), f, it);
    if ((f > 0) == (f_lo > 0)) {
      lo = mid;
      f_lo = f;
    } else {
      hi = mid;
    }
  }
  throw ConvergenceError("balanced_hyperplane: iteration cap reached");
}

}  // namespace bmlab
