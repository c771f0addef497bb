#pragma once

#include <array>
#include <string>
#include <vector>

#include "region_median/errors.hpp"

namespace region_median {

// Fully symmetric quadrature rule on a triangle, in barycentric coordinates.
// Weights sum to 1 (multiply by the triangle area).
struct TriangleRule {
  int degree = 0;
  std::vector<std::array<double, 3>> points;
  std::vector<double> weights;
};

namespace detail {

inline void add_centroid(TriangleRule& r, double w) {
  r.points.push_back({1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0});
  r.weights.push_back(w);
}

// Orbit of (a, a, 1 - 2a).
inline void add_orbit3(TriangleRule& r, double a, double w) {
  const double b = 1.0 - 2.0 * a;
  for (const auto& p : {std::array{a, a, b}, std::array{a, b, a}, std::array{b, a, a}}) {
    r.points.push_back(p);
    r.weights.push_back(w);
  }
}

// Cyclic rotations of (a, b, c).
inline void add_rotations(TriangleRule& r, double a, double b, double c, double w) {
  for (const auto& p : {std::array{a, b, c}, std::array{b, c, a}, std::array{c, a, b}}) {
    r.points.push_back(p);
    r.weights.push_back(w);
  }
}

// All six permutations of (a, b, 1 - a - b).
inline void add_orbit6(TriangleRule& r, double a, double b, double w) {
  const double c = 1.0 - a - b;
  add_rotations(r, a, b, c, w);
  add_rotations(r, b, a, c, w);
}

}  // namespace detail

// Degrees 1, 2, 4, 5, 6 and 7; all weights positive.
inline const std::vector<int>& supported_triangle_rule_degrees() {
  static const std::vector<int> degrees{1, 2, 4, 5, 6, 7};
  return degrees;
}

inline TriangleRule triangle_rule(int degree) {
  TriangleRule r;
  r.degree = degree;
  switch (degree) {
    case 1:
      detail::add_centroid(r, 1.0);
      break;
    case 2:
      detail::add_orbit3(r, 1.0 / 6.0, 1.0 / 3.0);
      break;
    case 4:
      detail::add_orbit3(r, 0.091576213509770743460, 2.0 * 0.054975871827660933819);
      detail::add_orbit3(r, 0.44594849091596488632, 2.0 * 0.11169079483900573285);
      break;
    case 5:
      detail::add_centroid(r, 2.0 * 0.1125);
      detail::add_orbit3(r, 0.10128650732345633880, 2.0 * 0.062969590272413576298);
      detail::add_orbit3(r, 0.47014206410511508977, 2.0 * 0.066197076394253090369);
      break;
    case 6:
      detail::add_orbit3(r, 0.063089014491502228340, 2.0 * 0.025422453185103408460);
      detail::add_orbit3(r, 0.24928674517091042129, 2.0 * 0.058393137863189683013);
      detail::add_orbit6(r, 0.053145049844816947353, 0.31035245103378440542, 2.0 * 0.041425537809186787597);
      break;
    case 7: {
      // 12-point rule with three rotation orbits (no reflection symmetry needed).
      const auto third = [](double a, double b) { return 1.0 - a - b; };
      detail::add_rotations(r, 0.062382265094402118174, 0.067517867073916085443,
                            third(0.062382265094402118174, 0.067517867073916085443), 2.0 * 0.026517028157436251429);
      detail::add_rotations(r, 0.055225456656926611737, 0.32150249385198182267,
                            third(0.055225456656926611737, 0.32150249385198182267), 2.0 * 0.043881408714446055037);
      detail::add_rotations(r, 0.034324302945097146470, 0.66094919618673565761, 0.30472650086816719592,
                            2.0 * 0.028775042784981585738);
      detail::add_rotations(r, 0.51584233435359177926, 0.27771616697639178257, 0.20644149867001643817,
                            2.0 * 0.067493187009802774463);
      break;
    }
    default:
      throw Error("unsupported triangle rule degree " + std::to_string(degree));
  }
  return r;
}

}  // namespace region_median
