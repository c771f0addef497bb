#pragma once

#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "region_median/errors.hpp"
#include "region_median/geometry.hpp"

namespace region_median {

// Cost function f(P - X) integrated over a region or along its boundary.
class RadialKernel {
 public:
  enum class Kind { euclidean, power_law, custom };
  using Evaluator = std::function<double(Vector2)>;

  static RadialKernel euclidean() { return RadialKernel(Kind::euclidean, 1.0, {}); }

  static RadialKernel power_law(double p) {
    if (!(p > 0.0) || !std::isfinite(p)) throw InvalidKernel("power-law exponent must be positive, got " + std::to_string(p));
    return RadialKernel(Kind::power_law, p, {});
  }

  // The evaluator must be continuous and free of side effects. It is sampled
  // on a grid over [-1, 1]^2 here and rejected if any sample is not finite.
  static RadialKernel custom(Evaluator f) {
    if (!f) throw InvalidKernel("custom kernel has no evaluator");
    constexpr int n = 8;
    for (int i = -n; i <= n; ++i) {
      for (int j = -n; j <= n; ++j) {
        if (!std::isfinite(f(Vector2{double(i) / n, double(j) / n}))) {
          throw InvalidKernel("custom kernel is not finite near the origin");
        }
      }
    }
    return RadialKernel(Kind::custom, 0.0, std::move(f));
  }

  Kind kind() const { return kind_; }
  double exponent() const { return exponent_; }

  // Whether the area objective is convex in X, so a critical point is the global minimum.
  bool convex() const { return kind_ != Kind::custom && exponent_ >= 1.0; }

  double operator()(Vector2 v) const {
    switch (kind_) {
      case Kind::euclidean:
        return v.norm();
      case Kind::power_law:
        return exponent_ == 2.0 ? dot(v, v) : std::pow(v.norm(), exponent_);
      case Kind::custom:
        return custom_(v);
    }
    return std::numeric_limits<double>::quiet_NaN();
  }

 private:
  RadialKernel(Kind kind, double exponent, Evaluator f) : kind_(kind), exponent_(exponent), custom_(std::move(f)) {}

  Kind kind_;
  double exponent_;
  Evaluator custom_;
};

struct SegmentIntegral {
  double value = 0.0;           // integral of f along the segment, by arclength
  double segment_length = 0.0;
  double mean = 0.0;            // value / segment_length, 0 for a degenerate segment
};

namespace detail {

inline SegmentIntegral make_segment_integral(double value, double length) {
  return {value, length, length > 0.0 ? value / length : 0.0};
}

// Below this perpendicular distance (relative to segment length) the point is
// treated as lying on the segment's line.
inline constexpr double collinear_eps = 1e-12;

}  // namespace detail

// Integral of |P - x| over P on segment ab, in closed form.
//
// With the segment parameterized by arclength fraction and shifted so that the
// foot of the perpendicular from x sits at t = 0, the integrand is
// sqrt(t^2 + c^2) on [t0, t1] with t1 - t0 = 1, whose antiderivative is
// (t r + c^2 asinh(t / c)) / 2, r = sqrt(t^2 + c^2). When t0 and t1 share a sign
// both differences are rewritten without subtraction.
inline SegmentIntegral segment_sigma_closed(Point2 a, Point2 b, Point2 x) {
  const Vector2 ab = b - a;
  const double length = ab.norm();
  if (length == 0.0) return {};
  const Vector2 u = ab / length;
  const Vector2 w = x - a;
  const double along = dot(w, u) / length;
  const double c = std::abs(wedge(u, w)) / length;
  const double t0 = -along;
  const double t1 = 1.0 - along;
  const double r0 = std::hypot(t0, c);
  const double r1 = std::hypot(t1, c);

  const bool same_sign = (t0 > 0.0 && t1 > 0.0) || (t0 < 0.0 && t1 < 0.0);
  double linear;
  double logarithmic = 0.0;
  if (same_sign) {
    linear = (t1 + t0) * (t1 * t1 + t0 * t0 + c * c) / (t1 * r1 + t0 * r0);
    if (c >= detail::collinear_eps) logarithmic = c * c * std::asinh((t1 + t0) / (t1 * r0 + t0 * r1));
  } else {
    linear = t1 * r1 - t0 * r0;
    if (c >= detail::collinear_eps) logarithmic = c * c * (std::asinh(t1 / c) - std::asinh(t0 / c));
  }
  const double normalized = 0.5 * (linear + logarithmic);
  return detail::make_segment_integral(normalized * length * length, length);
}

namespace detail {

// Globally adaptive bisection over [0, 1] driven by the 21-point
// Gauss-Kronrod rule. Boost's own adaptive driver compares the error of a
// subinterval in the rescaled variable against an absolute tolerance, which
// makes it over-refine and overstate the error on short pieces; here each
// panel is integrated non-adaptively and its error rescaled to the panel.
struct Panel {
  double lo, hi, value, error, l1;
  bool operator<(const Panel& o) const { return error < o.error; }
};

template <class F>
Panel gk21_panel(const F& f, double lo, double hi) {
  using Rule = boost::math::quadrature::gauss_kronrod<double, 21>;
  double err = 0.0;
  double l1 = 0.0;
  const double value = Rule::integrate(f, lo, hi, 0, 0.0, &err, &l1);
  return {lo, hi, value, err * 0.5 * (hi - lo), l1};
}

struct AdaptiveResult {
  double value = 0.0;
  double error = 0.0;
  bool converged = false;
};

template <class F>
AdaptiveResult integrate_adaptive(const F& f, const std::vector<double>& breaks, double tol, int max_panels = 2000) {
  std::priority_queue<Panel> heap;
  AdaptiveResult r;
  double l1 = 0.0;
  const auto add = [&](const Panel& p, double sign) {
    r.value += sign * p.value;
    r.error += sign * p.error;
    l1 += sign * p.l1;
  };
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const Panel p = gk21_panel(f, breaks[i], breaks[i + 1]);
    heap.push(p);
    add(p, 1.0);
  }

  const double rounding = 50.0 * std::numeric_limits<double>::epsilon();
  while (r.error > std::max(tol * (1.0 + std::abs(r.value)), rounding * l1)) {
    const Panel worst = heap.top();
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (static_cast<int>(heap.size()) >= max_panels || mid <= worst.lo || mid >= worst.hi) return r;
    heap.pop();
    add(worst, -1.0);
    for (const Panel& half : {gk21_panel(f, worst.lo, mid), gk21_panel(f, mid, worst.hi)}) {
      heap.push(half);
      add(half, 1.0);
    }
  }
  r.error = std::max(r.error, 0.0);
  r.converged = true;
  return r;
}

}  // namespace detail

// Integral of kernel(P - x) over P on segment ab by adaptive Gauss-Kronrod
// quadrature, with a break at the foot of the perpendicular from x where
// radial kernels are least smooth. Throws NonConvergence when the estimated
// absolute error exceeds tol * (1 + |value|) and is above rounding level.
inline SegmentIntegral segment_sigma_quadrature(Point2 a, Point2 b, Point2 x, const RadialKernel& kernel,
                                                double tol = 1e-10) {
  if (!(tol > 0.0)) throw Error("quadrature tolerance must be positive");
  const Vector2 ab = b - a;
  const double length = ab.norm();
  if (length == 0.0) return {};
  const auto integrand = [&](double t) { return length * kernel((a + ab * t) - x); };

  const double foot = dot(x - a, ab) / (length * length);
  std::vector<double> breaks{0.0};
  if (foot > 0.0 && foot < 1.0) breaks.push_back(foot);
  breaks.push_back(1.0);
  const detail::AdaptiveResult r = detail::integrate_adaptive(integrand, breaks, tol);
  const double value = r.value;
  if (!std::isfinite(value) || !r.converged) {
    char buf[112];
    std::snprintf(buf, sizeof buf, "segment quadrature did not reach tolerance (error estimate %.3g, value %.3g)",
                  r.error, value);
    throw NonConvergence(buf);
  }
  return detail::make_segment_integral(value, length);
}

// Euclidean kernels use the closed form, everything else goes through quadrature.
inline SegmentIntegral segment_sigma(Point2 a, Point2 b, Point2 x, const RadialKernel& kernel, double tol = 1e-13) {
  if (kernel.kind() == RadialKernel::Kind::euclidean) return segment_sigma_closed(a, b, x);
  return segment_sigma_quadrature(a, b, x, kernel, tol);
}

}  // namespace region_median
