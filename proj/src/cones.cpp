#include <algorithm>
#include <cmath>

#include "bmlab/measure.hpp"
#include "bmlab/partition.hpp"

namespace bmlab {

std::vector<Rational> cone_measures(const CellSet& s, const ConeFrame& frame) {
  if (frame.dim() != s.dim()) throw InvalidArgument("cone_measures: dimension mismatch");
  std::vector<Rational> out;
  for (size_t i = 0; i < frame.cone_count(); ++i) out.push_back(region_measure(s, frame.cone(i)));
  return out;
}

namespace {

class ConeImbalance {
 public:
  ConeImbalance(const CellSet& a, const CellSet& b, const ConeFrame& frame)
      : b_(b), frame_(frame), target_(cone_measures(a, frame)) {}

  // m_A,i - |(B + v) ∩ C_i|, using (B + v) ∩ C = B ∩ (C - v).
  std::vector<Rational> operator()(const Point& v) const {
    std::vector<Rational> out;
    for (size_t i = 0; i < frame_.cone_count(); ++i) {
      std::vector<HalfSpace> moved;
      for (const auto& h : frame_.cone(i)) moved.emplace_back(h.normal, h.offset - dot(h.normal, v));
      out.push_back(target_[i] - region_measure(b_, moved));
    }
    return out;
  }

  static Rational residual(const std::vector<Rational>& diff) {
    Rational r = 0;
    for (const auto& x : diff) r = std::max(r, abs(x));
    return r;
  }

 private:
  const CellSet& b_;
  const ConeFrame& frame_;
  std::vector<Rational> target_;
};

// Solves the d x d system m x = rhs by partial pivoting; false if singular.
bool solve(std::vector<std::vector<double>> m, std::vector<double> rhs, std::vector<double>& x) {
  const size_t n = rhs.size();
  for (size_t c = 0; c < n; ++c) {
    size_t piv = c;
    for (size_t r = c + 1; r < n; ++r)
      if (std::fabs(m[r][c]) > std::fabs(m[piv][c])) piv = r;
    if (std::fabs(m[piv][c]) < 1e-300) return false;
    std::swap(m[c], m[piv]);
    std::swap(rhs[c], rhs[piv]);
    for (size_t r = c + 1; r < n; ++r) {
      const double f = m[r][c] / m[c][c];
      for (size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
      rhs[r] -= f * rhs[c];
    }
  }
  x.assign(n, 0);
  for (size_t c = n; c-- > 0;) {
    double s = rhs[c];
    for (size_t k = c + 1; k < n; ++k) s -= m[c][k] * x[k];
    x[c] = s / m[c][c];
  }
  return std::all_of(x.begin(), x.end(), [](double v) { return std::isfinite(v); });
}

Point centroid(const CellSet& s) {
  Point c = zero_point(s.dim());
  for (const auto& cell : s.cells()) c = c + s.center(cell);
  return Rational(1, static_cast<long>(s.size())) * c;
}

}  // namespace

BalanceResult kkm_cone_translate(const CellSet& a, const CellSet& b, const ConeFrame& frame, const Rational& tol,
                                 const KkmOptions& options) {
  require_same_grid(a, b, "kkm_cone_translate");
  if (a.size() != b.size() || a.empty()) throw InvalidArgument("kkm_cone_translate: needs equal nonzero volumes");
  if (tol <= 0) throw InvalidArgument("kkm_cone_translate: tol must be positive");
  if (frame.dim() != a.dim()) throw InvalidArgument("kkm_cone_translate: frame dimension mismatch");

  const int d = a.dim();
  const Rational& h = a.pitch();
  const Rational target = tol * volume(a);
  const ConeImbalance imbalance(a, b, frame);

  BalanceResult best;
  std::vector<Rational> best_diff;
  auto consider = [&](const Point& v) {
    auto diff = imbalance(v);
    Rational r = ConeImbalance::residual(diff);
    if (best_diff.empty() || r < best.residual) {
      best.witness = v;
      best.residual = r;
      best_diff = std::move(diff);
      return true;
    }
    return false;
  };

  // Multistart on the lattice around the centroid difference, nearest first.
  const Point guess = centroid(a) - centroid(b);
  Cell base{};
  for (int i = 0; i < d; ++i) {
    base[i] = floor(guess[i] / h + Rational(1, 2)).get_si();
  }
  std::vector<Cell> offsets;
  const int rad = options.start_radius;
  for (int x = -rad; x <= rad; ++x)
    for (int y = (d > 1 ? -rad : 0); y <= (d > 1 ? rad : 0); ++y)
      for (int z = (d > 2 ? -rad : 0); z <= (d > 2 ? rad : 0); ++z) offsets.push_back(Cell{x, y, z});
  std::stable_sort(offsets.begin(), offsets.end(), [](const Cell& p, const Cell& q) {
    return p[0] * p[0] + p[1] * p[1] + p[2] * p[2] < q[0] * q[0] + q[1] * q[1] + q[2] * q[2];
  });
  for (const auto& off : offsets) {
    Point v(d);
    for (int i = 0; i < d; ++i) v[i] = h * Rational(static_cast<long>(base[i] + off[i]));
    consider(v);
    if (best.residual == 0) return best;
  }
  consider(zero_point(d));
  if (best.residual <= target) return best;

  // Newton on the first d imbalances (the last follows from equal volumes),
  // finite-difference Jacobian, backtracking; compass steps when Newton stalls.
  const double hd = to_double(h);
  double fd_step = hd / 64;
  Rational compass = h / 4;
  while (best.residual > target) {
    if (best.iterations >= options.max_iterations)
      throw ConvergenceError("kkm_cone_translate: residual " + std::to_string(to_double(best.residual)) +
                             " above target after " + std::to_string(best.iterations) + " iterations");
    ++best.iterations;

    std::vector<std::vector<double>> jac(d, std::vector<double>(d));
    for (int j = 0; j < d; ++j) {
      Point v = best.witness;
      v[j] += round_dyadic(fd_step);
      const auto diff = imbalance(v);
      for (int i = 0; i < d; ++i) jac[i][j] = (to_double(diff[i]) - to_double(best_diff[i])) / fd_step;
    }
    std::vector<double> rhs(d), step;
    for (int i = 0; i < d; ++i) rhs[i] = -to_double(best_diff[i]);
    bool moved = false;
    if (solve(jac, rhs, step)) {
      double lambda = 1;
      for (int k = 0; k < 12 && !moved; ++k, lambda /= 2) {
        Point v = best.witness;
        for (int i = 0; i < d; ++i) v[i] += round_dyadic(lambda * step[i]);
        moved = consider(v);
        if (moved) {
          double len = 0;
          for (double s : step) len = std::max(len, std::fabs(lambda * s));
          fd_step = std::clamp(len, hd * 1e-9, hd / 64);
        }
      }
    }
    if (moved) continue;
    for (int i = 0; i < d && !moved; ++i) {
      for (int sign : {1, -1}) {
        Point v = best.witness;
        v[i] += sign * compass;
        if ((moved = consider(v))) break;
      }
    }
    if (!moved) compass /= 2;
  }
  return best;
}

}  // namespace bmlab
