#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <utility>

#include "region_median/geometry.hpp"

namespace region_median {

struct NelderMeadOptions {
  double initial_size = 0.05;  // edge of the starting simplex
  double xtol = 1e-9;          // stop when every vertex is this close to the best
  int max_iter = 2000;
};

struct NelderMeadResult {
  Point2 best;
  double value = 0.0;
  int iterations = 0;
};

// Plain Nelder-Mead in the plane with the standard coefficients
// (reflect 1, expand 2, contract 1/2, shrink 1/2).
template <class F>
NelderMeadResult nelder_mead(F&& f, Point2 start, const NelderMeadOptions& opt) {
  using Vertex = std::pair<Point2, double>;
  std::array<Vertex, 3> s{Vertex{start, f(start)}, Vertex{start + Vector2{opt.initial_size, 0.0}, 0.0},
                          Vertex{start + Vector2{0.0, opt.initial_size}, 0.0}};
  s[1].second = f(s[1].first);
  s[2].second = f(s[2].first);
  const auto by_value = [](const Vertex& l, const Vertex& r) { return l.second < r.second; };
  const auto blend = [](Point2 o, Point2 p, double t) { return o + (p - o) * t; };

  int it = 0;
  for (; it < opt.max_iter; ++it) {
    std::sort(s.begin(), s.end(), by_value);
    const double spread = std::max(distance(s[0].first, s[1].first), distance(s[0].first, s[2].first));
    if (spread < opt.xtol) break;

    const Point2 mid = blend(s[0].first, s[1].first, 0.5);
    const Point2 xr = blend(mid, s[2].first, -1.0);
    const double fr = f(xr);
    if (fr < s[0].second) {
      const Point2 xe = blend(mid, s[2].first, -2.0);
      const double fe = f(xe);
      s[2] = fe < fr ? Vertex{xe, fe} : Vertex{xr, fr};
      continue;
    }
    if (fr < s[1].second) {
      s[2] = {xr, fr};
      continue;
    }
    const bool outside = fr < s[2].second;
    const Point2 xc = outside ? blend(mid, xr, 0.5) : blend(mid, s[2].first, 0.5);
    const double fc = f(xc);
    if (fc < std::min(fr, s[2].second)) {
      s[2] = {xc, fc};
      continue;
    }
    for (std::size_t k = 1; k < 3; ++k) {
      s[k].first = blend(s[0].first, s[k].first, 0.5);
      s[k].second = f(s[k].first);
    }
  }
  std::sort(s.begin(), s.end(), by_value);
  return {s[0].first, s[0].second, it};
}

}  // namespace region_median
