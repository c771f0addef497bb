#pragma once

#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "region_median/errors.hpp"
#include "region_median/geometry.hpp"
#include "region_median/kernels.hpp"
#include "region_median/weiszfeld.hpp"

namespace region_median {

// Malformed region files and command arguments.
class InputError : public Error {
 public:
  using Error::Error;
};

struct KernelSpec {
  std::string kind = "euclidean";  // "euclidean" | "power"
  double p = 1.0;

  RadialKernel make() const {
    if (kind == "euclidean") return RadialKernel::euclidean();
    if (kind == "power") return RadialKernel::power_law(p);
    throw InputError("unknown kernel kind '" + kind + "'");
  }

  std::string label() const {
    if (kind == "euclidean") return "euclidean";
    std::ostringstream os;
    os.precision(17);
    os << "power:" << p;
    return os.str();
  }
};

// "euclidean" or "power:<p>".
inline KernelSpec parse_kernel_spec(const std::string& text) {
  if (text == "euclidean") return {};
  const std::string prefix = "power:";
  if (text.rfind(prefix, 0) == 0) {
    const std::string num = text.substr(prefix.size());
    std::size_t used = 0;
    double p = 0.0;
    try {
      p = std::stod(num, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != num.size()) throw InputError("bad kernel exponent in '" + text + "'");
    KernelSpec k{"power", p};
    k.make();
    return k;
  }
  throw InputError("kernel must be 'euclidean' or 'power:<p>', got '" + text + "'");
}

// Parsed region file: exactly one of polygon, points or boundary_samples.
struct RegionFile {
  enum class Form { polygon, points, boundary_samples };
  Form form = Form::polygon;
  std::vector<Point2> coordinates;
  std::optional<std::vector<double>> weights;
  std::optional<KernelSpec> kernel;

  Polygon polygon() const {
    if (form == Form::points) throw InputError("region file holds a point set, not a polygon");
    return Polygon(coordinates);
  }

  PointSet point_set() const {
    if (form != Form::points) throw InputError("region file holds a polygon, not a point set");
    return PointSet(coordinates, weights);
  }
};

namespace detail {

inline std::vector<Point2> parse_coordinates(const nlohmann::json& j, const std::string& key) {
  if (!j.is_array() || j.empty()) throw InputError("'" + key + "' must be a non-empty array of [x, y] pairs");
  std::vector<Point2> out;
  out.reserve(j.size());
  for (const auto& item : j) {
    if (!item.is_array() || item.size() != 2 || !item[0].is_number() || !item[1].is_number()) {
      throw InputError("'" + key + "' entries must be [x, y] number pairs");
    }
    const Point2 p{item[0].get<double>(), item[1].get<double>()};
    if (!p.is_finite()) throw InputError("'" + key + "' has a non-finite coordinate");
    out.push_back(p);
  }
  return out;
}

}  // namespace detail

inline RegionFile parse_region(const nlohmann::json& j) {
  if (!j.is_object()) throw InputError("region file must be a JSON object");
  RegionFile r;
  int forms = 0;
  for (const auto& [key, form] : {std::pair{"polygon", RegionFile::Form::polygon},
                                  std::pair{"points", RegionFile::Form::points},
                                  std::pair{"boundary_samples", RegionFile::Form::boundary_samples}}) {
    if (j.contains(key)) {
      ++forms;
      r.form = form;
      r.coordinates = detail::parse_coordinates(j.at(key), key);
    }
  }
  if (forms != 1) throw InputError("region file needs exactly one of 'polygon', 'points', 'boundary_samples'");
  if (j.contains("weights")) {
    if (r.form != RegionFile::Form::points) throw InputError("'weights' only applies to 'points'");
    const auto& w = j.at("weights");
    if (!w.is_array()) throw InputError("'weights' must be an array of numbers");
    std::vector<double> ws;
    for (const auto& v : w) {
      if (!v.is_number()) throw InputError("'weights' must be an array of numbers");
      ws.push_back(v.get<double>());
    }
    r.weights = std::move(ws);
  }
  if (j.contains("kernel")) {
    const auto& k = j.at("kernel");
    if (!k.is_object() || !k.contains("kind") || !k.at("kind").is_string()) {
      throw InputError("'kernel' must be an object with a string 'kind'");
    }
    KernelSpec spec;
    spec.kind = k.at("kind").get<std::string>();
    if (spec.kind == "power") {
      if (!k.contains("p") || !k.at("p").is_number()) throw InputError("power kernel needs a numeric 'p'");
      spec.p = k.at("p").get<double>();
    } else if (spec.kind != "euclidean") {
      throw InputError("kernel kind must be 'euclidean' or 'power'");
    }
    spec.make();
    r.kernel = spec;
  }
  return r;
}

inline RegionFile load_region(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError("'" + path + "' is not valid JSON: " + e.what());
  }
  return parse_region(j);
}

struct OracleCheck {
  Point2 minimizer;
  double distance_to_median = 0.0;
  double sigma = 0.0;  // oracle area integral at the median
  double sigma_mc = 0.0;
  double sigma_mc_stderr = 0.0;
};

struct Report {
  Point2 median;
  double residual_norm = 0.0;
  double normalized_norm = 0.0;
  int iterations = 0;
  std::string status;
  std::vector<double> edge_means;
  std::optional<double> certificate_spread;
  std::optional<OracleCheck> oracle_check;
  std::optional<std::string> kernel;
  bool local = false;
};

inline nlohmann::json point_json(Point2 p) { return nlohmann::json::array({p.x, p.y}); }

inline Point2 point_from_json(const nlohmann::json& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }

// nlohmann writes the shortest decimal that reads back to the same double.
inline nlohmann::json to_json(const Report& r) {
  nlohmann::json j;
  j["median"] = point_json(r.median);
  j["residual_norm"] = r.residual_norm;
  j["normalized_norm"] = r.normalized_norm;
  j["iterations"] = r.iterations;
  j["status"] = r.status;
  if (!r.edge_means.empty()) j["edge_means"] = r.edge_means;
  if (r.certificate_spread) j["certificate_spread"] = *r.certificate_spread;
  if (r.kernel) {
    j["kernel"] = *r.kernel;
    j["local"] = r.local;
  }
  if (r.oracle_check) {
    const auto& o = *r.oracle_check;
    j["oracle_check"] = {{"minimizer", point_json(o.minimizer)},
                         {"distance_to_median", o.distance_to_median},
                         {"sigma", o.sigma},
                         {"sigma_mc", {{"mean", o.sigma_mc}, {"stderr", o.sigma_mc_stderr}}}};
  }
  return j;
}

inline Report report_from_json(const nlohmann::json& j) {
  Report r;
  r.median = point_from_json(j.at("median"));
  r.residual_norm = j.at("residual_norm").get<double>();
  r.normalized_norm = j.at("normalized_norm").get<double>();
  r.iterations = j.at("iterations").get<int>();
  r.status = j.at("status").get<std::string>();
  if (j.contains("edge_means")) r.edge_means = j.at("edge_means").get<std::vector<double>>();
  if (j.contains("certificate_spread")) r.certificate_spread = j.at("certificate_spread").get<double>();
  if (j.contains("kernel")) {
    r.kernel = j.at("kernel").get<std::string>();
    r.local = j.at("local").get<bool>();
  }
  if (j.contains("oracle_check")) {
    const auto& o = j.at("oracle_check");
    r.oracle_check = OracleCheck{point_from_json(o.at("minimizer")), o.at("distance_to_median").get<double>(),
                                 o.at("sigma").get<double>(), o.at("sigma_mc").at("mean").get<double>(),
                                 o.at("sigma_mc").at("stderr").get<double>()};
  }
  return r;
}

}  // namespace region_median
