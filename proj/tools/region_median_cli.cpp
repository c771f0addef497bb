// Command-line front end: median, discrete, medianoid, degenerate, check.
//
// Exit codes: 0 success, 1 input error, 2 solver did not converge.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "region_median/region_median.hpp"

namespace rm = region_median;

namespace {

constexpr int kOk = 0;
constexpr int kInputError = 1;
constexpr int kNotConverged = 2;

struct CommonFlags {
  std::string input;
  std::optional<double> tol;
  std::optional<int> max_iter;
  bool oracle = false;
  bool shading = false;
  std::string json_out;
  std::string svg_out;
};

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw rm::InputError("cannot write '" + path + "'");
  out << text;
}

void emit_json(const nlohmann::json& j, const std::string& path) {
  const std::string text = j.dump(2) + "\n";
  if (path.empty()) {
    std::cout << text;
  } else {
    write_text(path, text);
  }
}

std::uint64_t oracle_seed() {
  rm::OracleConfig defaults;
  const char* env = std::getenv("REGION_MEDIAN_SEED");
  if (env == nullptr || *env == '\0') return defaults.seed;
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(env, &used);
    if (used != std::string(env).size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw rm::InputError(std::string("REGION_MEDIAN_SEED is not an unsigned integer: '") + env + "'");
  }
}

rm::SolveConfig solve_config(const CommonFlags& f) {
  rm::SolveConfig cfg;
  if (f.tol) cfg.tol_rel = *f.tol;
  if (f.max_iter) cfg.max_iter = *f.max_iter;
  try {
    cfg.validate();
  } catch (const rm::Error& e) {
    throw rm::InputError(e.what());
  }
  return cfg;
}

rm::OracleCheck run_oracle(const rm::Polygon& poly, const rm::RadialKernel& kernel, rm::Point2 median) {
  rm::OracleConfig cfg;
  cfg.seed = oracle_seed();
  rm::OracleCheck check;
  check.minimizer = rm::oracle_minimize(poly, kernel, cfg);
  check.distance_to_median = rm::distance(check.minimizer, median);
  check.sigma = rm::oracle_sigma(poly, median, kernel, cfg).value;
  const rm::MonteCarloEstimate mc = rm::oracle_sigma_mc(poly, median, kernel, cfg);
  check.sigma_mc = mc.mean;
  check.sigma_mc_stderr = mc.standard_error;
  return check;
}

void region_figure(const rm::Polygon& poly, const rm::RadialKernel& kernel, rm::Point2 median, bool shading,
                   const std::string& path) {
  const auto [lo, hi] = poly.bounding_box();
  rm::SvgFigure fig(lo, hi);
  if (shading) {
    rm::OracleConfig coarse;
    coarse.refine_depth = 3;
    coarse.quad_order = 5;
    fig.shading([&](rm::Point2 p) { return rm::oracle_sigma(poly, p, kernel, coarse).value; },
                [&](rm::Point2 p) { return poly.contains(p); }, 40);
  }
  fig.polygon(poly.vertices());
  fig.marker(median, "red", "median");
  write_text(path, fig.str());
}

int exit_for(const rm::SolveResult& r) { return r.converged() ? kOk : kNotConverged; }

rm::Report continuous_report(const rm::SolveResult& r, const rm::ResidualReport& at_median) {
  rm::Report rep;
  rep.median = r.median;
  rep.residual_norm = r.residual_norm;
  rep.normalized_norm = r.normalized_norm;
  rep.iterations = r.iterations;
  rep.status = rm::to_string(r.status);
  rep.edge_means = at_median.edge_means;
  rep.certificate_spread = r.certificate;
  return rep;
}

int cmd_median(const CommonFlags& f) {
  const rm::RegionFile region = rm::load_region(f.input);
  const rm::Polygon poly = region.polygon();
  const rm::SolveResult r = rm::solve_median(poly, solve_config(f));
  rm::Report rep = continuous_report(r, rm::polygon_residual(poly, r.median));
  const auto kernel = rm::RadialKernel::euclidean();
  if (f.oracle) rep.oracle_check = run_oracle(poly, kernel, r.median);
  emit_json(rm::to_json(rep), f.json_out);
  if (!f.svg_out.empty()) region_figure(poly, kernel, r.median, f.shading, f.svg_out);
  return exit_for(r);
}

int cmd_medianoid(const CommonFlags& f, const std::string& kernel_text) {
  const rm::RegionFile region = rm::load_region(f.input);
  const rm::Polygon poly = region.polygon();
  rm::KernelSpec spec;
  if (!kernel_text.empty()) {
    spec = rm::parse_kernel_spec(kernel_text);
  } else if (region.kernel) {
    spec = *region.kernel;
  } else {
    throw rm::InputError("medianoid needs --kernel or a 'kernel' entry in the region file");
  }
  const rm::RadialKernel kernel = spec.make();
  const rm::SolveResult r = rm::solve_medianoid(poly, kernel, solve_config(f));
  rm::Report rep = continuous_report(r, rm::general_boundary_residual(poly, r.median, kernel));
  rep.kernel = spec.label();
  rep.local = r.local;
  if (f.oracle) rep.oracle_check = run_oracle(poly, kernel, r.median);
  emit_json(rm::to_json(rep), f.json_out);
  if (!f.svg_out.empty()) region_figure(poly, kernel, r.median, f.shading, f.svg_out);
  return exit_for(r);
}

int cmd_discrete(const CommonFlags& f) {
  const rm::RegionFile region = rm::load_region(f.input);
  const rm::PointSet ps = region.point_set();
  const rm::SolveConfig defaults = solve_config(f);
  const double tol = f.tol.value_or(defaults.tol_rel);
  const int max_iter = f.max_iter.value_or(10000);
  const rm::SolveResult r = rm::weiszfeld(ps, tol, max_iter);
  rm::Report rep;
  rep.median = r.median;
  rep.residual_norm = r.residual_norm;
  rep.normalized_norm = r.normalized_norm;
  rep.iterations = r.iterations;
  rep.status = rm::to_string(r.status);
  emit_json(rm::to_json(rep), f.json_out);
  if (!f.svg_out.empty()) {
    rm::Point2 lo = ps.points()[0], hi = ps.points()[0];
    for (const auto& p : ps.points()) {
      lo = {std::min(lo.x, p.x), std::min(lo.y, p.y)};
      hi = {std::max(hi.x, p.x), std::max(hi.y, p.y)};
    }
    rm::SvgFigure fig(lo, hi);
    fig.dots(ps.points());
    fig.marker(r.median, "red", "median");
    write_text(f.svg_out, fig.str());
  }
  return exit_for(r);
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) throw rm::InputError("bad number '" + item + "' in list '" + text + "'");
    out.push_back(v);
  }
  if (out.empty()) throw rm::InputError("empty number list");
  return out;
}

int cmd_degenerate(double alpha, double beta, const std::string& gammas_text, const std::string& json_out) {
  const std::vector<double> gammas = parse_list(gammas_text);
  if (alpha < beta) std::swap(alpha, beta);
  std::vector<rm::DegenerateSample> rows;
  try {
    rows = rm::degenerate_limit_study(alpha, beta, gammas);
  } catch (const rm::InvalidTriangle& e) {
    throw rm::InputError(e.what());
  }
  const double limit = rm::degenerate_limit(alpha, beta);
  nlohmann::json j;
  j["alpha"] = alpha;
  j["beta"] = beta;
  j["limit"] = limit;
  j["rows"] = nlohmann::json::array();
  bool all_converged = true;
  for (const auto& row : rows) {
    j["rows"].push_back({{"gamma", row.gamma},
                         {"distance", row.distance},
                         {"limit", limit},
                         {"gap", std::abs(row.distance - limit)},
                         {"status", rm::to_string(row.status)}});
    all_converged = all_converged && row.status == rm::SolveStatus::converged;
  }
  emit_json(j, json_out);
  return all_converged ? kOk : kNotConverged;
}

int cmd_check(const std::string& input, const std::string& point_text, const std::string& json_out) {
  const std::vector<double> xy = parse_list(point_text);
  if (xy.size() != 2) throw rm::InputError("--point expects x,y");
  const rm::Point2 x{xy[0], xy[1]};
  const rm::RegionFile region = rm::load_region(input);
  const rm::Polygon poly = region.polygon();
  const rm::ResidualReport rep = region.kernel ? rm::general_boundary_residual(poly, x, region.kernel->make())
                                               : rm::polygon_residual(poly, x);
  nlohmann::json j;
  j["point"] = rm::point_json(x);
  j["residual"] = {rep.residual.dx, rep.residual.dy};
  j["gradient"] = {rep.gradient.dx, rep.gradient.dy};
  j["residual_norm"] = rep.norm;
  j["normalized_norm"] = rep.normalized_norm;
  j["edge_means"] = rep.edge_means;
  if (poly.size() == 3 && !region.kernel) {
    const auto cert = rm::mean_distance_certificate(poly, x);
    j["certificate_means"] = cert.means;
    j["certificate_spread"] = cert.spread;
  }
  emit_json(j, json_out);
  return kOk;
}

void add_common(CLI::App* cmd, CommonFlags& f, bool oracle) {
  cmd->add_option("file", f.input, "region file (JSON)")->required();
  cmd->add_option("--tol", f.tol, "convergence tolerance");
  cmd->add_option("--max-iter", f.max_iter, "iteration limit");
  if (oracle) {
    cmd->add_flag("--oracle", f.oracle, "cross-check against the brute-force oracle");
    cmd->add_flag("--svg-shading", f.shading, "shade the figure by the area objective");
  }
  cmd->add_option("--json-out", f.json_out, "write the JSON report here instead of stdout");
  cmd->add_option("--svg-out", f.svg_out, "write an SVG figure here");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Geometric medians of planar regions and point sets"};
  app.require_subcommand(1);

  CommonFlags median_flags, discrete_flags, medianoid_flags;
  auto* median = app.add_subcommand("median", "geometric median of a polygonal region");
  add_common(median, median_flags, true);

  auto* discrete = app.add_subcommand("discrete", "geometric median of a weighted point set");
  add_common(discrete, discrete_flags, false);

  std::string kernel_text;
  auto* medianoid = app.add_subcommand("medianoid", "critical point for a power-law cost kernel");
  add_common(medianoid, medianoid_flags, true);
  medianoid->add_option("--kernel", kernel_text, "euclidean | power:<p>");

  double alpha = 0.0, beta = 0.0;
  std::string gammas, degenerate_json;
  auto* degenerate = app.add_subcommand("degenerate", "medians of triangles flattening toward a segment");
  degenerate->add_option("--alpha", alpha, "first long side")->required();
  degenerate->add_option("--beta", beta, "second long side")->required();
  degenerate->add_option("--gammas", gammas, "comma-separated third sides")->required();
  degenerate->add_option("--json-out", degenerate_json, "write the table here instead of stdout");

  std::string check_input, check_point, check_json;
  auto* check = app.add_subcommand("check", "residual and certificate at a given point");
  check->add_option("file", check_input, "region file (JSON)")->required();
  check->add_option("--point", check_point, "x,y")->required();
  check->add_option("--json-out", check_json, "write the JSON here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    if (median->parsed()) return cmd_median(median_flags);
    if (discrete->parsed()) return cmd_discrete(discrete_flags);
    if (medianoid->parsed()) return cmd_medianoid(medianoid_flags, kernel_text);
    if (degenerate->parsed()) return cmd_degenerate(alpha, beta, gammas, degenerate_json);
    if (check->parsed()) return cmd_check(check_input, check_point, check_json);
  } catch (const rm::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
