#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "region_median/errors.hpp"
#include "region_median/geometry.hpp"
#include "region_median/solver.hpp"

namespace region_median {

// Weighted finite point set; weights default to 1.
class PointSet {
 public:
  explicit PointSet(std::vector<Point2> points, std::optional<std::vector<double>> weights = std::nullopt)
      : points_(std::move(points)) {
    if (points_.empty()) throw Error("point set is empty");
    for (const auto& p : points_) {
      if (!p.is_finite()) throw Error("point set has a non-finite coordinate");
    }
    if (weights) {
      if (weights->size() != points_.size()) throw Error("weights and points differ in length");
      for (double w : *weights) {
        if (!(w > 0.0) || !std::isfinite(w)) throw Error("weights must be positive and finite");
      }
      weights_ = std::move(*weights);
    } else {
      weights_.assign(points_.size(), 1.0);
    }
  }

  const std::vector<Point2>& points() const { return points_; }
  const std::vector<double>& weights() const { return weights_; }
  std::size_t size() const { return points_.size(); }

  double total_weight() const {
    double t = 0.0;
    for (double w : weights_) t += w;
    return t;
  }

  Point2 weighted_centroid() const {
    double sx = 0.0, sy = 0.0, sw = 0.0;
    for (std::size_t i = 0; i < points_.size(); ++i) {
      sx += weights_[i] * (points_[i].x - points_[0].x);
      sy += weights_[i] * (points_[i].y - points_[0].y);
      sw += weights_[i];
    }
    return {points_[0].x + sx / sw, points_[0].y + sy / sw};
  }

  // Bounding-box diagonal, used as the length scale (within sqrt 2 of the diameter).
  double extent() const {
    Point2 lo = points_[0], hi = points_[0];
    for (const auto& p : points_) {
      lo = {std::min(lo.x, p.x), std::min(lo.y, p.y)};
      hi = {std::max(hi.x, p.x), std::max(hi.y, p.y)};
    }
    return distance(lo, hi);
  }

  // Sum of w_i |P_i - x|.
  double objective(Point2 x) const {
    double s = 0.0;
    for (std::size_t i = 0; i < points_.size(); ++i) s += weights_[i] * distance(points_[i], x);
    return s;
  }

 private:
  std::vector<Point2> points_;
  std::vector<double> weights_;
};

namespace detail {

// Pull of all points other than `k` on the location of point k, and the sum of
// their w / distance.
struct VertexPull {
  Vector2 pull;
  double inverse_sum = 0.0;
};

inline VertexPull vertex_pull(const PointSet& ps, std::size_t k) {
  VertexPull vp;
  const Point2 at = ps.points()[k];
  for (std::size_t i = 0; i < ps.size(); ++i) {
    if (i == k) continue;
    const Vector2 d = ps.points()[i] - at;
    const double r = d.norm();
    if (r == 0.0) continue;  // duplicates of point k act as extra weight at k
    vp.pull += d * (ps.weights()[i] / r);
    vp.inverse_sum += ps.weights()[i] / r;
  }
  return vp;
}

inline double coincident_weight(const PointSet& ps, std::size_t k) {
  double w = 0.0;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    if (ps.points()[i] == ps.points()[k]) w += ps.weights()[i];
  }
  return w;
}

}  // namespace detail

// Weiszfeld iteration for the weighted geometric median of a point set,
// started at the weighted centroid.
//
// When an iterate comes within 1e-14 * extent of a data point P_k it is
// snapped there and the vertex optimality test is applied: P_k is the median
// iff |sum_{i != k} w_i (P_i - P_k) / |P_i - P_k|| <= w_k. Otherwise the
// iteration steps off P_k along that pull by (|pull| - w_k) / sum(w_i / r_i).
//
// trace[].normalized_norm is |subgradient| / total weight; objective_trace
// holds sum w_i |P_i - x| at every iterate.
inline SolveResult weiszfeld(const PointSet& ps, double tol = 1e-12, int max_iter = 10000) {
  if (!(tol > 0.0)) throw Error("weiszfeld tolerance must be positive");
  if (max_iter < 1) throw Error("max_iter must be at least 1");
  const double scale = ps.extent();
  const double total = ps.total_weight();
  SolveResult out;

  if (scale == 0.0) {  // all points coincide
    out.median = ps.points()[0];
    out.trace.push_back({out.median, 0.0});
    out.objective_trace.push_back(0.0);
    return out;
  }
  const double snap = 1e-14 * scale;

  const auto nearest = [&](Point2 x) {
    std::size_t k = 0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < ps.size(); ++i) {
      const double r = distance(ps.points()[i], x);
      if (r < best) {
        best = r;
        k = i;
      }
    }
    return std::pair{k, best};
  };

  // Subgradient norm at x (zero when x is an optimal data point).
  const auto stationarity = [&](Point2 x) {
    const auto [k, r] = nearest(x);
    if (r <= snap) {
      const auto vp = detail::vertex_pull(ps, k);
      return std::max(0.0, vp.pull.norm() - detail::coincident_weight(ps, k)) / total;
    }
    Vector2 g{};
    for (std::size_t i = 0; i < ps.size(); ++i) {
      const Vector2 d = x - ps.points()[i];
      g += d * (ps.weights()[i] / d.norm());
    }
    return g.norm() / total;
  };

  Point2 x = ps.weighted_centroid();
  double fx = ps.objective(x);
  out.trace.push_back({x, stationarity(x)});
  out.objective_trace.push_back(fx);
  out.status = SolveStatus::max_iter_exceeded;

  while (out.iterations < max_iter) {
    ++out.iterations;
    Point2 next;
    const auto [k, r] = nearest(x);
    if (r <= snap) {
      x = ps.points()[k];
      const auto vp = detail::vertex_pull(ps, k);
      const double wk = detail::coincident_weight(ps, k);
      const double pull = vp.pull.norm();
      if (pull <= wk) {
        out.status = SolveStatus::converged;
        break;
      }
      next = x + vp.pull * ((pull - wk) / (pull * vp.inverse_sum));
    } else {
      double sx = 0.0, sy = 0.0, sw = 0.0;
      for (std::size_t i = 0; i < ps.size(); ++i) {
        const Point2 p = ps.points()[i];
        const double w = ps.weights()[i] / distance(p, x);
        sx += w * (p.x - x.x);
        sy += w * (p.y - x.y);
        sw += w;
      }
      next = x + Vector2{sx / sw, sy / sw};
    }
    const double moved = distance(next, x);
    const double fn = ps.objective(next);
    // Descent is guaranteed in exact arithmetic. Near the optimum the objective
    // is flat to within its rounding noise while the iterate is still ~1e-8 off,
    // so small rises are accepted and the step-length test decides.
    if (fn - fx > 1e-12 * fx) {
      out.status = SolveStatus::stalled;
      break;
    }
    x = next;
    fx = fn;
    out.trace.push_back({x, stationarity(x)});
    out.objective_trace.push_back(fx);
    if (moved < tol * scale) {
      out.status = SolveStatus::converged;
      break;
    }
  }
  if (out.status == SolveStatus::converged) {
    // Iterates approach an optimal data point only linearly and usually stop
    // short of the snap radius. The vertex test is an exact certificate, so
    // land on the nearest point whenever it passes.
    const std::size_t k = nearest(x).first;
    const auto vp = detail::vertex_pull(ps, k);
    if (ps.points()[k] != x && vp.pull.norm() <= detail::coincident_weight(ps, k)) {
      x = ps.points()[k];
      out.trace.push_back({x, 0.0});
      out.objective_trace.push_back(ps.objective(x));
    }
  }
  out.median = x;
  out.normalized_norm = out.trace.back().normalized_norm;
  out.residual_norm = out.normalized_norm * total;
  return out;
}

// Discrete median of the cell centres of a grid_n x grid_n lattice over the
// bounding box that fall inside the polygon. A centre lying on the boundary
// (within 1e-12 * diameter) gets weight 1/2: when an edge runs through lattice
// corners it halves the cells it crosses, and counting their centres fully or
// not at all biases the result by a full half-cell along that edge.
inline SolveResult region_median_sampling_result(const Polygon& poly, int grid_n, double tol = 1e-12,
                                                 int max_iter = 100000) {
  if (grid_n < 2) throw Error("grid_n must be at least 2");
  const auto [lo, hi] = poly.bounding_box();
  const double dx = (hi.x - lo.x) / grid_n;
  const double dy = (hi.y - lo.y) / grid_n;
  const double on_edge = 1e-12 * poly.diameter();
  std::vector<Point2> pts;
  std::vector<double> weights;
  for (int i = 0; i < grid_n; ++i) {
    for (int j = 0; j < grid_n; ++j) {
      const Point2 p{lo.x + (i + 0.5) * dx, lo.y + (j + 0.5) * dy};
      if (distance_to_boundary(poly, p) <= on_edge) {
        pts.push_back(p);
        weights.push_back(0.5);
      } else if (poly.contains(p)) {
        pts.push_back(p);
        weights.push_back(1.0);
      }
    }
  }
  if (pts.empty()) throw EmptySample("no lattice point falls inside the polygon");
  return weiszfeld(PointSet(std::move(pts), std::move(weights)), tol, max_iter);
}

inline Point2 region_median_by_sampling(const Polygon& poly, int grid_n) {
  return region_median_sampling_result(poly, grid_n).median;
}

}  // namespace region_median
