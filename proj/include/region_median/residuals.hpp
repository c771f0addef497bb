#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <vector>

#include "region_median/errors.hpp"
#include "region_median/geometry.hpp"
#include "region_median/kernels.hpp"

namespace region_median {

// Left-hand side of the boundary gradient system at a query point.
//
// `residual` is the tangent form: the sum over CCW edges of
// (mean of f along the edge) * (edge vector). The gradient of the area
// objective is that vector turned a quarter counterclockwise.
struct ResidualReport {
  Vector2 residual;
  Vector2 gradient;
  std::vector<double> edge_means;
  double norm = 0.0;
  double normalized_norm = 0.0;
  // Outward-normal form (sum of edge integrals times unit outward normals),
  // filled in by general_boundary_residual only.
  std::optional<Vector2> normal_residual;
};

namespace detail {

inline ResidualReport finish_report(Vector2 residual, std::vector<double> edge_means, double scale) {
  ResidualReport report;
  report.residual = residual;
  report.gradient = rotate90(residual, Turn::counterclockwise);
  report.edge_means = std::move(edge_means);
  report.norm = residual.norm();
  report.normalized_norm = report.norm / scale;
  return report;
}

}  // namespace detail

// Tangent-form residual with f = |P - X|, using closed-form edge integrals.
// Zero exactly at the geometric median of the polygonal region.
inline ResidualReport polygon_residual(const Polygon& poly, Point2 x) {
  require_finite(x, "query point");
  Vector2 residual{};
  std::vector<double> means;
  means.reserve(poly.size());
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const SegmentIntegral s = segment_sigma_closed(poly.vertex(i), poly.vertex(i + 1), x);
    residual += poly.edge(i) * s.mean;
    means.push_back(s.mean);
  }
  const double d = poly.diameter();
  return detail::finish_report(residual, std::move(means), d * d);
}

// Scale that makes the residual of `kernel` dimensionless: diameter^(p + 1)
// for the Euclidean and power-law kernels, diameter times the mean |f| along
// the boundary for custom kernels.
inline double residual_scale(const Polygon& poly, const RadialKernel& kernel, double boundary_mean_abs) {
  const double d = poly.diameter();
  switch (kernel.kind()) {
    case RadialKernel::Kind::euclidean:
      return d * d;
    case RadialKernel::Kind::power_law:
      return std::pow(d, kernel.exponent() + 1.0);
    case RadialKernel::Kind::custom:
      return boundary_mean_abs > 0.0 ? d * boundary_mean_abs : d;
  }
  return d * d;
}

// Sum over straight boundary pieces of (integral of f(P - x) along the piece)
// times the piece's outward unit normal. On a CCW loop the outward normal is
// the edge direction turned clockwise. The tangent-form residual reported
// alongside is that sum turned counterclockwise, so `gradient` is again the
// gradient of the area objective.
inline ResidualReport general_boundary_residual(const Polygon& boundary, Point2 x, const RadialKernel& kernel) {
  require_finite(x, "query point");
  const double tol = kernel.kind() == RadialKernel::Kind::custom ? 1e-10 : 1e-13;
  Vector2 normal_sum{};
  std::vector<double> means;
  means.reserve(boundary.size());
  double abs_total = 0.0;
  double perimeter = 0.0;
  for (std::size_t i = 0; i < boundary.size(); ++i) {
    const Vector2 e = boundary.edge(i);
    const SegmentIntegral s = segment_sigma(boundary.vertex(i), boundary.vertex(i + 1), x, kernel, tol);
    const Vector2 outward = rotate90(e / s.segment_length, Turn::clockwise);
    normal_sum += outward * s.value;
    means.push_back(s.mean);
    abs_total += std::abs(s.value);
    perimeter += s.segment_length;
  }
  const double scale = residual_scale(boundary, kernel, abs_total / perimeter);
  ResidualReport report =
      detail::finish_report(rotate90(normal_sum, Turn::counterclockwise), std::move(means), scale);
  report.normal_residual = normal_sum;
  return report;
}

struct MeanDistanceCertificate {
  std::array<double, 3> means{};
  double spread = 0.0;  // (max - min) / max
};

// The three mean edge distances of a triangle from x; zero spread holds
// exactly at the triangle's geometric median.
inline MeanDistanceCertificate mean_distance_certificate(const Polygon& tri, Point2 x) {
  if (tri.size() != 3) throw InvalidTriangle("mean-distance certificate needs a triangle");
  require_finite(x, "query point");
  MeanDistanceCertificate cert;
  for (std::size_t i = 0; i < 3; ++i) cert.means[i] = segment_sigma_closed(tri.vertex(i), tri.vertex(i + 1), x).mean;
  const auto [lo, hi] = std::minmax_element(cert.means.begin(), cert.means.end());
  cert.spread = (*hi - *lo) / *hi;
  return cert;
}

// Regular sampling of a closed parametric curve t -> curve(t), t in [0, 1).
template <class Curve>
Polygon sample_closed_curve(Curve&& curve, std::size_t samples) {
  std::vector<Point2> pts;
  pts.reserve(samples);
  for (std::size_t k = 0; k < samples; ++k) pts.push_back(curve(double(k) / double(samples)));
  return Polygon(std::move(pts));
}

}  // namespace region_median
