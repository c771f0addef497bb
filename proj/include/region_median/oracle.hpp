#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "region_median/geometry.hpp"
#include "region_median/kernels.hpp"
#include "region_median/nelder_mead.hpp"
#include "region_median/triangle_rules.hpp"
#include "region_median/triangulation.hpp"

namespace region_median {

// Brute-force evaluation of the area objective, independent of the boundary
// formulas used by the solver.
struct OracleConfig {
  int quad_order = 7;
  int refine_depth = 5;
  std::int64_t mc_samples = 1'000'000;
  std::uint64_t seed = 20240601;

  void validate() const {
    const auto& ok = supported_triangle_rule_degrees();
    if (std::find(ok.begin(), ok.end(), quad_order) == ok.end()) throw Error("unsupported oracle quad_order");
    if (refine_depth < 0 || refine_depth > 12) throw Error("oracle refine_depth must lie in [0, 12]");
    if (mc_samples < 2) throw Error("oracle mc_samples must be at least 2");
  }
};

struct OracleEstimate {
  double value = 0.0;         // rule applied at refine_depth
  double error = 0.0;         // |Q(depth) - Q(depth - 1)|; infinite at depth 0
  double extrapolated = 0.0;  // Q(depth) + (Q(depth) - Q(depth - 1)) / 7
};

struct MonteCarloEstimate {
  double mean = 0.0;
  double standard_error = 0.0;
};

namespace detail {

// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      carry_ += (sum_ - t) + v;
    } else {
      carry_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

// A triangle rule replicated over the uniform 4^depth subdivision of the
// reference triangle (0,0), (1,0), (0,1).
class RefinedRule {
 public:
  RefinedRule(int degree, int depth) {
    const TriangleRule rule = triangle_rule(degree);
    const int n = 1 << depth;
    const double cell_weight = 1.0 / (double(n) * double(n));
    const auto emit = [&](double x0, double y0, double x1, double y1, double x2, double y2) {
      for (std::size_t k = 0; k < rule.points.size(); ++k) {
        const auto& l = rule.points[k];
        nodes_.push_back({(l[0] * x0 + l[1] * x1 + l[2] * x2) / n, (l[0] * y0 + l[1] * y1 + l[2] * y2) / n,
                          rule.weights[k] * cell_weight});
      }
    };
    for (int i = 0; i < n; ++i) {
      for (int j = 0; i + j < n; ++j) {
        emit(i, j, i + 1, j, i, j + 1);
        if (i + j + 2 <= n) emit(i + 1, j, i + 1, j + 1, i, j + 1);
      }
    }
  }

  // Integral of f over the triangle.
  template <class F>
  double integrate(const Triangle& t, F&& f) const {
    const Vector2 u = t.b - t.a;
    const Vector2 v = t.c - t.a;
    CompensatedSum sum;
    for (const auto& node : nodes_) sum.add(node.w * f(t.a + u * node.x + v * node.y));
    return std::abs(t.signed_area()) * sum.value();
  }

 private:
  struct Node {
    double x, y, w;
  };
  std::vector<Node> nodes_;
};

template <class F>
double integrate_cells(const std::vector<Triangle>& cells, const RefinedRule& rule, F&& f) {
  CompensatedSum sum;
  for (const auto& t : cells) sum.add(rule.integrate(t, f));
  return sum.value();
}

inline std::vector<Triangle> oracle_cells(const Polygon& poly, Point2 x) {
  return poly.contains(x) ? triangulate_around(poly, x) : triangulate(poly);
}

inline double oracle_value(const std::vector<Triangle>& cells, Point2 x, const RadialKernel& kernel,
                           const RefinedRule& rule) {
  return integrate_cells(cells, rule, [&](Point2 p) { return kernel(p - x); });
}

// Cells that have x as a corner see a kernel homogeneous of degree one about
// that corner, so halving the mesh cuts their rule error by exactly 8; the
// remaining cells converge far faster. One Richardson step removes the 8^-depth term.
inline double richardson(double fine, double coarse) { return fine + (fine - coarse) / 7.0; }

}  // namespace detail

// Area integral of kernel(P - x) over the polygon by a fixed symmetric rule
// on a uniformly refined triangulation. When x is inside, it is made a
// vertex of the triangulation so the kernel's kink sits at cell corners.
inline OracleEstimate oracle_sigma(const Polygon& poly, Point2 x, const RadialKernel& kernel,
                                   const OracleConfig& cfg = {}) {
  cfg.validate();
  require_finite(x, "query point");
  const std::vector<Triangle> cells = detail::oracle_cells(poly, x);
  const double fine = detail::oracle_value(cells, x, kernel, detail::RefinedRule(cfg.quad_order, cfg.refine_depth));
  if (cfg.refine_depth == 0) return {fine, std::numeric_limits<double>::infinity(), fine};
  const double coarse =
      detail::oracle_value(cells, x, kernel, detail::RefinedRule(cfg.quad_order, cfg.refine_depth - 1));
  return {fine, std::abs(fine - coarse), detail::richardson(fine, coarse)};
}

// Minimizer of the (extrapolated) oracle objective: Nelder-Mead from the
// centroid, then three 11x11 grid passes, each recentred on the best point and
// ten times finer.
inline Point2 oracle_minimize(const Polygon& poly, const RadialKernel& kernel, const OracleConfig& cfg = {}) {
  cfg.validate();
  const detail::RefinedRule fine(cfg.quad_order, cfg.refine_depth);
  const detail::RefinedRule coarse(cfg.quad_order, std::max(cfg.refine_depth - 1, 0));
  const auto objective = [&](Point2 x) {
    const std::vector<Triangle> cells = detail::oracle_cells(poly, x);
    const double f = detail::oracle_value(cells, x, kernel, fine);
    if (cfg.refine_depth == 0) return f;
    return detail::richardson(f, detail::oracle_value(cells, x, kernel, coarse));
  };
  const double d = poly.diameter();

  NelderMeadOptions nm;
  nm.initial_size = 0.05 * d;
  nm.xtol = 1e-8 * d;
  const NelderMeadResult start = nelder_mead(objective, poly.centroid(), nm);

  Point2 best = start.best;
  double best_value = start.value;
  double spacing = 1e-5 * d;
  for (int pass = 0; pass < 3; ++pass, spacing /= 10.0) {
    const Point2 center = best;
    for (int i = -5; i <= 5; ++i) {
      for (int j = -5; j <= 5; ++j) {
        const Point2 p = center + Vector2{i * spacing, j * spacing};
        const double v = objective(p);
        if (v < best_value) {
          best_value = v;
          best = p;
        }
      }
    }
  }
  return best;
}

// Monte Carlo estimate of the same integral: points drawn uniformly from the
// triangulation, cells picked in proportion to area.
inline MonteCarloEstimate oracle_sigma_mc(const Polygon& poly, Point2 x, const RadialKernel& kernel,
                                          const OracleConfig& cfg = {}) {
  cfg.validate();
  require_finite(x, "query point");
  const std::vector<Triangle> cells = triangulate(poly);
  std::vector<double> cumulative;
  cumulative.reserve(cells.size());
  double total = 0.0;
  for (const auto& t : cells) {
    total += t.signed_area();
    cumulative.push_back(total);
  }
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  double mean = 0.0;
  double m2 = 0.0;
  for (std::int64_t k = 0; k < cfg.mc_samples; ++k) {
    const double pick = unit(rng) * total;
    const auto idx = std::min<std::size_t>(
        static_cast<std::size_t>(std::upper_bound(cumulative.begin(), cumulative.end(), pick) - cumulative.begin()),
        cells.size() - 1);
    const Triangle& t = cells[idx];
    const double r = std::sqrt(unit(rng));
    const double s = unit(rng);
    const Point2 p = t.a + (t.b - t.a) * (r * (1.0 - s)) + (t.c - t.a) * (r * s);
    const double v = kernel(p - x);
    const double delta = v - mean;
    mean += delta / double(k + 1);
    m2 += delta * (v - mean);
  }
  const double n = double(cfg.mc_samples);
  const double variance = m2 / (n - 1.0);
  return {total * mean, total * std::sqrt(variance / n)};
}

}  // namespace region_median
