#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "region_median/errors.hpp"

namespace region_median {

struct Vector2 {
  double dx = 0.0;
  double dy = 0.0;

  constexpr Vector2 operator+(Vector2 o) const { return {dx + o.dx, dy + o.dy}; }
  constexpr Vector2 operator-(Vector2 o) const { return {dx - o.dx, dy - o.dy}; }
  constexpr Vector2 operator-() const { return {-dx, -dy}; }
  constexpr Vector2 operator*(double s) const { return {dx * s, dy * s}; }
  constexpr Vector2 operator/(double s) const { return {dx / s, dy / s}; }
  constexpr Vector2& operator+=(Vector2 o) {
    dx += o.dx;
    dy += o.dy;
    return *this;
  }
  constexpr bool operator==(const Vector2&) const = default;

  double norm() const { return std::hypot(dx, dy); }
  bool is_finite() const { return std::isfinite(dx) && std::isfinite(dy); }
};

constexpr Vector2 operator*(double s, Vector2 v) { return v * s; }

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Point2 operator+(Vector2 v) const { return {x + v.dx, y + v.dy}; }
  constexpr Point2 operator-(Vector2 v) const { return {x - v.dx, y - v.dy}; }
  constexpr Vector2 operator-(Point2 o) const { return {x - o.x, y - o.y}; }
  constexpr bool operator==(const Point2&) const = default;

  bool is_finite() const { return std::isfinite(x) && std::isfinite(y); }
};

inline double distance(Point2 a, Point2 b) { return (b - a).norm(); }

constexpr double dot(Vector2 a, Vector2 b) { return a.dx * b.dx + a.dy * b.dy; }

// Oriented area of the parallelogram spanned by a and b.
constexpr double wedge(Vector2 a, Vector2 b) { return a.dx * b.dy - a.dy * b.dx; }

enum class Turn { counterclockwise, clockwise };

constexpr Vector2 rotate90(Vector2 v, Turn direction) {
  return direction == Turn::counterclockwise ? Vector2{-v.dy, v.dx} : Vector2{v.dy, -v.dx};
}

inline Vector2 rotate(Vector2 v, double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return {c * v.dx - s * v.dy, s * v.dx + c * v.dy};
}

inline void require_finite(Point2 p, const char* what) {
  if (!p.is_finite()) throw Error(std::string(what) + " has a non-finite coordinate");
}

namespace detail {

// Sign of the turn a -> b -> c; exact zero only for exactly collinear doubles.
inline double orient(Point2 a, Point2 b, Point2 c) { return wedge(b - a, c - a); }

inline bool on_segment_collinear(Point2 a, Point2 b, Point2 p) {
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
         p.y <= std::max(a.y, b.y);
}

inline bool segments_intersect(Point2 p1, Point2 p2, Point2 q1, Point2 q2) {
  const double d1 = orient(q1, q2, p1);
  const double d2 = orient(q1, q2, p2);
  const double d3 = orient(p1, p2, q1);
  const double d4 = orient(p1, p2, q2);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0))) return true;
  if (d1 == 0 && on_segment_collinear(q1, q2, p1)) return true;
  if (d2 == 0 && on_segment_collinear(q1, q2, p2)) return true;
  if (d3 == 0 && on_segment_collinear(p1, p2, q1)) return true;
  if (d4 == 0 && on_segment_collinear(p1, p2, q2)) return true;
  return false;
}

inline double shoelace(std::span<const Point2> v) {
  // Relative to v[0] so that translated inputs lose no precision.
  double twice = 0.0;
  for (std::size_t i = 1; i + 1 < v.size(); ++i) twice += wedge(v[i] - v[0], v[i + 1] - v[0]);
  return 0.5 * twice;
}

}  // namespace detail

// Simple, non-degenerate vertex loop stored counterclockwise.
class Polygon {
 public:
  explicit Polygon(std::vector<Point2> vertices) : vertices_(std::move(vertices)) {
    if (vertices_.size() < 3) throw InvalidPolygon("polygon needs at least 3 vertices");
    for (const auto& p : vertices_) {
      if (!p.is_finite()) throw InvalidPolygon("polygon has a non-finite coordinate");
    }
    const std::size_t n = vertices_.size();
    for (std::size_t i = 0; i < n; ++i) {
      if (vertices_[i] == vertices_[(i + 1) % n]) throw InvalidPolygon("polygon has repeated consecutive vertices");
    }
    if (!simple()) throw InvalidPolygon("polygon is self-intersecting");
    area_ = detail::shoelace(vertices_);
    if (area_ == 0.0) throw InvalidPolygon("polygon is degenerate (zero area)");
    if (area_ < 0.0) {
      std::reverse(vertices_.begin(), vertices_.end());
      area_ = -area_;
      reversed_ = true;
    }
    diameter_ = max_vertex_distance();
  }

  std::span<const Point2> vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }
  Point2 vertex(std::size_t i) const { return vertices_[i % vertices_.size()]; }
  Vector2 edge(std::size_t i) const { return vertex(i + 1) - vertex(i); }

  // True when the input loop was clockwise and got reversed.
  bool reversed_on_input() const { return reversed_; }

  double area() const { return area_; }

  Point2 centroid() const {
    const Point2 o = vertices_[0];
    double cx = 0.0;
    double cy = 0.0;
    double twice = 0.0;
    for (std::size_t i = 1; i + 1 < vertices_.size(); ++i) {
      const Vector2 a = vertices_[i] - o;
      const Vector2 b = vertices_[i + 1] - o;
      const double w = wedge(a, b);
      twice += w;
      cx += w * (a.dx + b.dx);
      cy += w * (a.dy + b.dy);
    }
    return {o.x + cx / (3.0 * twice), o.y + cy / (3.0 * twice)};
  }

  double diameter() const { return diameter_; }

  bool is_convex() const {
    const std::size_t n = vertices_.size();
    for (std::size_t i = 0; i < n; ++i) {
      if (detail::orient(vertex(i), vertex(i + 1), vertex(i + 2)) < 0.0) return false;
    }
    return true;
  }

  // Even-odd crossing test; points on the boundary may land either way.
  bool contains(Point2 p) const {
    bool inside = false;
    const std::size_t n = vertices_.size();
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
      const Point2 a = vertices_[i];
      const Point2 b = vertices_[j];
      if ((a.y > p.y) != (b.y > p.y)) {
        const double xc = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
        if (p.x < xc) inside = !inside;
      }
    }
    return inside;
  }

  std::pair<Point2, Point2> bounding_box() const {
    Point2 lo = vertices_[0];
    Point2 hi = vertices_[0];
    for (const auto& p : vertices_) {
      lo = {std::min(lo.x, p.x), std::min(lo.y, p.y)};
      hi = {std::max(hi.x, p.x), std::max(hi.y, p.y)};
    }
    return {lo, hi};
  }

 private:
  // O(n^2) pairwise edge test.
  bool simple() const {
    const std::size_t n = vertices_.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Point2 a0 = vertex(i);
      const Point2 a1 = vertex(i + 1);
      // Adjacent edge folding back over this one.
      const Point2 a2 = vertex(i + 2);
      if (detail::orient(a0, a1, a2) == 0.0 && dot(a1 - a0, a2 - a1) < 0.0) return false;
      for (std::size_t j = i + 2; j < n; ++j) {
        if (i == 0 && j == n - 1) continue;
        if (detail::segments_intersect(a0, a1, vertex(j), vertex(j + 1))) return false;
      }
    }
    return true;
  }

  double max_vertex_distance() const {
    double best = 0.0;
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
      for (std::size_t j = i + 1; j < vertices_.size(); ++j) best = std::max(best, distance(vertices_[i], vertices_[j]));
    }
    return best;
  }

  std::vector<Point2> vertices_;
  double area_ = 0.0;
  double diameter_ = 0.0;
  bool reversed_ = false;
};

inline double distance_to_boundary(const Polygon& poly, Point2 p) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Point2 a = poly.vertex(i);
    const Vector2 e = poly.edge(i);
    const double t = std::clamp(dot(p - a, e) / dot(e, e), 0.0, 1.0);
    best = std::min(best, distance(p, a + e * t));
  }
  return best;
}

inline double signed_area(const Polygon& poly) { return poly.area(); }
inline double diameter(const Polygon& poly) { return poly.diameter(); }

// x -> scale * R(angle) * x + shift
struct Similarity {
  double scale = 1.0;
  double angle = 0.0;
  Vector2 shift{};

  Vector2 operator()(Vector2 v) const { return rotate(v, angle) * scale; }
  Point2 operator()(Point2 p) const { return Point2{} + (*this)(p - Point2{}) + shift; }

  Polygon operator()(const Polygon& poly) const {
    std::vector<Point2> out;
    out.reserve(poly.size());
    for (const auto& p : poly.vertices()) out.push_back((*this)(p));
    return Polygon(std::move(out));
  }
};

}  // namespace region_median
