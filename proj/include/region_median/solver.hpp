#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "region_median/errors.hpp"
#include "region_median/geometry.hpp"
#include "region_median/kernels.hpp"
#include "region_median/residuals.hpp"

namespace region_median {

struct SolveConfig {
  double tol_rel = 1e-12;       // threshold on the normalized residual norm
  int max_iter = 100;
  double fd_step_rel = 1e-7;    // Jacobian step, as a fraction of the diameter
  double backtrack = 0.5;
  double min_step = 1e-10;
  double max_condition = 1e12;  // beyond this the Newton step is replaced by descent

  void validate() const {
    if (!(tol_rel > 0.0)) throw Error("tol_rel must be positive");
    if (max_iter < 1) throw Error("max_iter must be at least 1");
    if (!(fd_step_rel > 0.0 && fd_step_rel < 1.0)) throw Error("fd_step_rel must lie in (0, 1)");
    if (!(backtrack > 0.0 && backtrack < 1.0)) throw Error("backtrack factor must lie in (0, 1)");
    if (!(min_step > 0.0 && min_step <= 1.0)) throw Error("min_step must lie in (0, 1]");
  }
};

enum class SolveStatus {
  converged,
  max_iter_exceeded,
  stalled,  // no damped step reduced the residual any further
};

inline std::string to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::converged:
      return "converged";
    case SolveStatus::max_iter_exceeded:
      return "max_iter_exceeded";
    case SolveStatus::stalled:
      return "stalled";
  }
  return "unknown";
}

struct TracePoint {
  Point2 point;
  double normalized_norm = 0.0;
};

struct SolveResult {
  Point2 median;
  int iterations = 0;
  double residual_norm = 0.0;
  double normalized_norm = 0.0;
  std::vector<TracePoint> trace;
  std::optional<double> certificate;  // mean-distance spread, triangles only
  SolveStatus status = SolveStatus::converged;
  bool local = false;                 // objective not known to be convex; root may be a local critical point
  std::vector<double> objective_trace;  // filled by solvers that track their objective

  bool converged() const { return status == SolveStatus::converged; }
};

namespace detail {

struct Jacobian2 {
  double a, b, c, d;  // [[a, b], [c, d]]

  double determinant() const { return a * d - b * c; }

  // Ratio of singular values.
  double condition() const {
    const double f = a * a + b * b + c * c + d * d;
    const double det = std::abs(determinant());
    const double disc = std::sqrt(std::max(0.0, f * f - 4.0 * det * det));
    const double smax2 = 0.5 * (f + disc);
    const double smin2 = det * det / smax2;
    if (smin2 == 0.0) return std::numeric_limits<double>::infinity();
    return std::sqrt(smax2 / smin2);
  }

  Vector2 solve(Vector2 r) const {
    const double det = determinant();
    return {(d * r.dx - b * r.dy) / det, (a * r.dy - c * r.dx) / det};
  }
};

// Damped Newton on a planar residual field. `field` returns the tangent-form
// report at a point; its gradient member drives the descent fallback.
inline SolveResult newton_root(const std::function<ResidualReport(Point2)>& field, Point2 start, double diameter,
                               const SolveConfig& cfg) {
  cfg.validate();
  SolveResult out;
  Point2 x = start;
  ResidualReport rep = field(x);
  out.trace.push_back({x, rep.normalized_norm});
  const double h = cfg.fd_step_rel * diameter;

  out.status = SolveStatus::max_iter_exceeded;
  while (true) {
    if (rep.normalized_norm <= cfg.tol_rel) {
      out.status = SolveStatus::converged;
      break;
    }
    if (out.iterations >= cfg.max_iter) break;
    ++out.iterations;

    const Vector2 rxp = field(x + Vector2{h, 0.0}).residual;
    const Vector2 rxm = field(x - Vector2{h, 0.0}).residual;
    const Vector2 ryp = field(x + Vector2{0.0, h}).residual;
    const Vector2 rym = field(x - Vector2{0.0, h}).residual;
    const Vector2 jx = (rxp - rxm) / (2.0 * h);
    const Vector2 jy = (ryp - rym) / (2.0 * h);
    const Jacobian2 jac{jx.dx, jy.dx, jx.dy, jy.dy};

    Vector2 step;
    const double cond = jac.condition();
    if (std::isfinite(cond) && cond <= cfg.max_condition) {
      step = -jac.solve(rep.residual);
    } else {
      const double g = rep.gradient.norm();
      step = g > 0.0 ? rep.gradient * (-0.1 * diameter / g) : Vector2{};
    }

    bool accepted = false;
    for (double t = 1.0; t >= cfg.min_step; t *= cfg.backtrack) {
      const Point2 trial = x + step * t;
      ResidualReport next = field(trial);
      if (next.norm < rep.norm) {
        x = trial;
        rep = std::move(next);
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      out.status = SolveStatus::stalled;
      break;
    }
    out.trace.push_back({x, rep.normalized_norm});
  }
  out.median = x;
  out.residual_norm = rep.norm;
  out.normalized_norm = rep.normalized_norm;
  return out;
}

}  // namespace detail

// Geometric median of a polygonal region: root of the tangent-form residual,
// started from the area centroid.
inline SolveResult solve_median(const Polygon& poly, const SolveConfig& cfg = {}) {
  auto field = [&poly](Point2 x) { return polygon_residual(poly, x); };
  SolveResult result = detail::newton_root(field, poly.centroid(), poly.diameter(), cfg);
  if (poly.size() == 3) result.certificate = mean_distance_certificate(poly, result.median).spread;
  return result;
}

// Critical point of the area integral of kernel(P - X), driven by the
// outward-normal boundary residual.
inline SolveResult solve_medianoid(const Polygon& boundary, const RadialKernel& kernel, const SolveConfig& cfg = {}) {
  auto field = [&](Point2 x) { return general_boundary_residual(boundary, x, kernel); };
  SolveResult result = detail::newton_root(field, boundary.centroid(), boundary.diameter(), cfg);
  result.local = !kernel.convex();
  if (boundary.size() == 3 && kernel.kind() == RadialKernel::Kind::euclidean) {
    result.certificate = mean_distance_certificate(boundary, result.median).spread;
  }
  return result;
}

// Triangle with sides alpha and beta meeting at the origin (alpha along +x)
// and third side gamma. alpha and beta are swapped if needed so alpha >= beta.
inline Polygon triangle_from_sides(double alpha, double beta, double gamma) {
  if (alpha < beta) std::swap(alpha, beta);
  if (!(beta > 0.0) || !(gamma > alpha - beta) || !(gamma < alpha + beta) || !std::isfinite(alpha) ||
      !std::isfinite(gamma)) {
    throw InvalidTriangle("side lengths violate the strict triangle inequality");
  }
  // Heron in the cancellation-free ordering for sides a >= b >= c.
  std::array<double, 3> s{alpha, beta, gamma};
  std::sort(s.begin(), s.end(), std::greater<>());
  const auto [a, b, c] = s;
  const double area = 0.25 * std::sqrt((a + (b + c)) * (c - (a - b)) * (c + (a - b)) * (a + (b - c)));
  const double sin_t = 2.0 * area / (alpha * beta);
  const double cos_t = (alpha * alpha + beta * beta - gamma * gamma) / (2.0 * alpha * beta);
  return Polygon({{0.0, 0.0}, {alpha, 0.0}, {beta * cos_t, beta * sin_t}});
}

struct DegenerateSample {
  double gamma = 0.0;
  double distance = 0.0;  // from the common vertex of alpha and beta to the solved median
  SolveStatus status = SolveStatus::converged;
};

// Solves the triangles (alpha, beta, gamma) for each gamma; as gamma drops to
// alpha - beta the distances tend to sqrt(alpha * beta / 2).
inline std::vector<DegenerateSample> degenerate_limit_study(double alpha, double beta, const std::vector<double>& gammas,
                                                            const SolveConfig& cfg = {}) {
  if (alpha < beta) std::swap(alpha, beta);
  std::vector<Polygon> triangles;
  triangles.reserve(gammas.size());
  for (double g : gammas) triangles.push_back(triangle_from_sides(alpha, beta, g));
  std::vector<DegenerateSample> out;
  out.reserve(gammas.size());
  for (std::size_t i = 0; i < gammas.size(); ++i) {
    const SolveResult r = solve_median(triangles[i], cfg);
    out.push_back({gammas[i], distance(Point2{0.0, 0.0}, r.median), r.status});
  }
  return out;
}

inline double degenerate_limit(double alpha, double beta) { return std::sqrt(alpha * beta / 2.0); }

}  // namespace region_median
