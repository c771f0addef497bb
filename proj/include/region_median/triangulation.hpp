#pragma once

#include <cmath>
#include <list>
#include <vector>

#include "region_median/geometry.hpp"

namespace region_median {

struct Triangle {
  Point2 a, b, c;

  double signed_area() const { return 0.5 * wedge(b - a, c - a); }
};

// Fan from vertex 0; only valid for convex polygons.
inline std::vector<Triangle> fan_triangulation(const Polygon& poly) {
  std::vector<Triangle> out;
  for (std::size_t i = 1; i + 1 < poly.size(); ++i) out.push_back({poly.vertex(0), poly.vertex(i), poly.vertex(i + 1)});
  return out;
}

namespace detail {

// Closed-triangle containment for a CCW triangle.
inline bool in_triangle(Point2 p, const Triangle& t) {
  return orient(t.a, t.b, p) >= 0.0 && orient(t.b, t.c, p) >= 0.0 && orient(t.c, t.a, p) >= 0.0;
}

}  // namespace detail

// O(n^2) ear clipping of a simple CCW polygon. Collinear vertices are dropped
// without emitting a triangle.
inline std::vector<Triangle> ear_clip_triangulation(const Polygon& poly) {
  std::vector<Point2> ring(poly.vertices().begin(), poly.vertices().end());
  std::vector<Triangle> out;
  out.reserve(ring.size());
  while (ring.size() > 3) {
    const std::size_t n = ring.size();
    std::size_t clip = n;
    std::size_t collinear = n;
    for (std::size_t i = 0; i < n && clip == n; ++i) {
      const Point2 prev = ring[(i + n - 1) % n];
      const Point2 cur = ring[i];
      const Point2 next = ring[(i + 1) % n];
      const double turn = detail::orient(prev, cur, next);
      if (turn == 0.0 && collinear == n) collinear = i;
      if (turn <= 0.0) continue;
      const Triangle t{prev, cur, next};
      bool blocked = false;
      for (std::size_t j = 0; j < n && !blocked; ++j) {
        if (j == i || j == (i + 1) % n || j == (i + n - 1) % n) continue;
        const Point2 q = ring[j];
        if (q == prev || q == cur || q == next) continue;
        blocked = detail::in_triangle(q, t);
      }
      if (!blocked) clip = i;
    }
    if (clip == n) {
      // Only reachable through floating-point ties; drop a collinear vertex or give up on the sliver.
      clip = collinear != n ? collinear : 0;
    } else {
      out.push_back({ring[(clip + n - 1) % n], ring[clip], ring[(clip + 1) % n]});
    }
    ring.erase(ring.begin() + static_cast<std::ptrdiff_t>(clip));
  }
  if (detail::orient(ring[0], ring[1], ring[2]) > 0.0) out.push_back({ring[0], ring[1], ring[2]});
  return out;
}

inline std::vector<Triangle> triangulate(const Polygon& poly) {
  return poly.is_convex() ? fan_triangulation(poly) : ear_clip_triangulation(poly);
}

namespace detail {

// Emits the cell (x, a, b), split at the foot of the perpendicular from x
// when that foot falls inside ab, so the angle at x stays below 90 degrees.
inline void push_apex_cell(std::vector<Triangle>& out, Point2 x, Point2 a, Point2 b) {
  const Vector2 ab = b - a;
  const double t = dot(x - a, ab) / dot(ab, ab);
  if (t > 0.0 && t < 1.0) {
    const Point2 foot = a + ab * t;
    for (const Triangle& piece : {Triangle{x, a, foot}, Triangle{x, foot, b}}) {
      if (piece.signed_area() > 0.0) out.push_back(piece);
    }
  } else if (Triangle{x, a, b}.signed_area() > 0.0) {
    out.push_back({x, a, b});
  }
}

}  // namespace detail

// Triangulation with x as a vertex of every cell that touches it: a star from x
// when the polygon is strictly star-shaped about x, otherwise the containing
// triangle of an ordinary triangulation split in three. Cells incident to x
// list x first and have an acute angle there.
inline std::vector<Triangle> triangulate_around(const Polygon& poly, Point2 x) {
  bool star = true;
  for (std::size_t i = 0; i < poly.size() && star; ++i) star = detail::orient(x, poly.vertex(i), poly.vertex(i + 1)) > 0.0;
  if (star) {
    std::vector<Triangle> out;
    out.reserve(2 * poly.size());
    for (std::size_t i = 0; i < poly.size(); ++i) detail::push_apex_cell(out, x, poly.vertex(i), poly.vertex(i + 1));
    return out;
  }
  std::vector<Triangle> base = triangulate(poly);
  std::vector<Triangle> out;
  out.reserve(base.size() + 2);
  bool split = false;
  for (const auto& t : base) {
    if (!split && detail::in_triangle(x, t)) {
      split = true;
      detail::push_apex_cell(out, x, t.a, t.b);
      detail::push_apex_cell(out, x, t.b, t.c);
      detail::push_apex_cell(out, x, t.c, t.a);
    } else {
      out.push_back(t);
    }
  }
  return out;
}

}  // namespace region_median
