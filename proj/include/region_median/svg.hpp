#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "region_median/geometry.hpp"

namespace region_median {

// Static SVG figure of a region and its median. Output depends only on the
// inputs: fixed number formatting, no timestamps.
class SvgFigure {
 public:
  SvgFigure(Point2 lo, Point2 hi, int pixels = 480) : pixels_(pixels) {
    const double pad = 0.08 * std::max(hi.x - lo.x, hi.y - lo.y);
    lo_ = {lo.x - pad, lo.y - pad};
    hi_ = {hi.x + pad, hi.y + pad};
    const double span = std::max(hi_.x - lo_.x, hi_.y - lo_.y);
    scale_ = span > 0.0 ? pixels_ / span : 1.0;
  }

  // Heat map of `field` on an n x n grid, drawn only where `inside` holds.
  void shading(const std::function<double(Point2)>& field, const std::function<bool(Point2)>& inside, int n) {
    std::vector<double> values;
    std::vector<Point2> centers;
    const double w = (hi_.x - lo_.x) / n;
    const double h = (hi_.y - lo_.y) / n;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const Point2 c{lo_.x + (i + 0.5) * w, lo_.y + (j + 0.5) * h};
        if (!inside(c)) continue;
        centers.push_back(c);
        values.push_back(field(c));
      }
    }
    if (values.empty()) return;
    const auto [mn, mx] = std::minmax_element(values.begin(), values.end());
    const double range = *mx - *mn;
    for (std::size_t k = 0; k < values.size(); ++k) {
      const double t = range > 0.0 ? (values[k] - *mn) / range : 0.0;
      const int shade = static_cast<int>(std::lround(255.0 - 155.0 * t));
      const Point2 corner{centers[k].x - 0.5 * w, centers[k].y + 0.5 * h};
      body_ << "<rect x=\"" << fmt(sx(corner.x)) << "\" y=\"" << fmt(sy(corner.y)) << "\" width=\""
            << fmt(w * scale_) << "\" height=\"" << fmt(h * scale_) << "\" fill=\"rgb(" << shade << ',' << shade
            << ",255)\" stroke=\"none\"/>\n";
    }
  }

  void polygon(std::span<const Point2> vertices) {
    body_ << "<polygon points=\"";
    for (std::size_t i = 0; i < vertices.size(); ++i) {
      if (i) body_ << ' ';
      body_ << fmt(sx(vertices[i].x)) << ',' << fmt(sy(vertices[i].y));
    }
    body_ << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1.5\"/>\n";
  }

  void dots(std::span<const Point2> points, double radius = 2.0) {
    for (const auto& p : points) {
      body_ << "<circle cx=\"" << fmt(sx(p.x)) << "\" cy=\"" << fmt(sy(p.y)) << "\" r=\"" << fmt(radius)
            << "\" fill=\"gray\"/>\n";
    }
  }

  void marker(Point2 p, const std::string& color, const std::string& label) {
    const double x = sx(p.x);
    const double y = sy(p.y);
    body_ << "<circle cx=\"" << fmt(x) << "\" cy=\"" << fmt(y) << "\" r=\"4\" fill=\"" << color << "\"/>\n";
    body_ << "<text x=\"" << fmt(x + 6) << "\" y=\"" << fmt(y - 6)
          << "\" font-family=\"sans-serif\" font-size=\"12\">" << label << "</text>\n";
  }

  std::string str() const {
    const double width = (hi_.x - lo_.x) * scale_;
    const double height = (hi_.y - lo_.y) * scale_;
    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(width) << "\" height=\"" << fmt(height)
       << "\" viewBox=\"0 0 " << fmt(width) << ' ' << fmt(height) << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << body_.str();
    os << "</svg>\n";
    return os.str();
  }

 private:
  double sx(double x) const { return (x - lo_.x) * scale_; }
  double sy(double y) const { return (hi_.y - y) * scale_; }

  static std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
  }

  int pixels_;
  Point2 lo_, hi_;
  double scale_ = 1.0;
  std::ostringstream body_;
};

}  // namespace region_median
