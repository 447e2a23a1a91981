#include "sfb/config.hpp"

#include <cmath>
#include <fstream>
#include <set>

namespace sfb {

namespace {

using nlohmann::json;

void check_keys(const json& j, const std::string& where, const std::set<std::string>& allowed) {
  if (!j.is_object()) throw ConfigError(where + ": expected an object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key()))
      throw ConfigError(where + ": unknown key '" + it.key() + "'");
}

SymMatrix parse_matrix(const json& j, std::size_t dim, const std::string& where) {
  if (!j.is_array() || j.size() != dim)
    throw ConfigError(where + ": expected a " + std::to_string(dim) + "x" + std::to_string(dim) +
                      " matrix");
  Matrix m(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) {
    const json& row = j[i];
    if (!row.is_array() || row.size() != dim)
      throw ConfigError(where + ": row " + std::to_string(i) + " has wrong length");
    for (std::size_t k = 0; k < dim; ++k) {
      if (!row[k].is_number()) throw ConfigError(where + ": non-numeric entry");
      m(i, k) = row[k].get<double>();
    }
  }
  try {
    return SymMatrix(m);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(where + ": " + e.what());
  }
}

TrigMatrixPolynomial parse_poly(const json& j, std::size_t dim, const std::string& where) {
  check_keys(j, where, {"lambda", "cos_coeffs", "sin_coeffs"});
  if (!j.contains("cos_coeffs")) throw ConfigError(where + ": missing cos_coeffs");
  std::vector<SymMatrix> cos_coeffs, sin_coeffs;
  const json& cc = j.at("cos_coeffs");
  if (!cc.is_array() || cc.empty()) throw ConfigError(where + ": cos_coeffs must be nonempty");
  for (std::size_t m = 0; m < cc.size(); ++m)
    cos_coeffs.push_back(parse_matrix(cc[m], dim, where + ".cos_coeffs[" + std::to_string(m) + "]"));
  if (j.contains("sin_coeffs")) {
    const json& sc = j.at("sin_coeffs");
    if (!sc.is_array()) throw ConfigError(where + ": sin_coeffs must be an array");
    for (std::size_t m = 0; m < sc.size(); ++m)
      sin_coeffs.push_back(
          parse_matrix(sc[m], dim, where + ".sin_coeffs[" + std::to_string(m) + "]"));
  }
  if (sin_coeffs.size() + 1 != cos_coeffs.size())
    throw ConfigError(where + ": need exactly one fewer sin than cos coefficient");
  return TrigMatrixPolynomial(std::move(cos_coeffs), std::move(sin_coeffs));
}

json matrix_to_json(const SymMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.dim(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < m.dim(); ++k) row.push_back(m(i, k));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

RunConfig parse_config(const json& j) {
  check_keys(j, "config",
             {"n", "family", "galerkin", "sfl", "comparison", "monodromy", "output"});
  if (!j.contains("n") || !j.at("n").is_number_integer() || j.at("n").get<long long>() <= 0)
    throw ConfigError("config.n: required positive integer");
  const std::size_t n = j.at("n").get<std::size_t>();
  const std::size_t dim = 2 * n;

  if (!j.contains("family") || !j.at("family").is_array() || j.at("family").empty())
    throw ConfigError("config.family: required nonempty knot array");
  std::vector<std::pair<double, TrigMatrixPolynomial>> knots;
  for (std::size_t i = 0; i < j.at("family").size(); ++i) {
    const json& knot = j.at("family")[i];
    const std::string where = "config.family[" + std::to_string(i) + "]";
    if (!knot.contains("lambda") || !knot.at("lambda").is_number())
      throw ConfigError(where + ": missing numeric lambda");
    knots.emplace_back(knot.at("lambda").get<double>(), parse_poly(knot, dim, where));
  }
  MatrixFamilyPath fam(std::move(knots));

  RunConfig cfg{n, std::move(fam)};

  if (j.contains("galerkin")) {
    const json& g = j.at("galerkin");
    check_keys(g, "config.galerkin", {"cutoff", "quad_points"});
    if (g.contains("cutoff")) cfg.galerkin_cutoff = g.at("cutoff").get<std::size_t>();
    if (g.contains("quad_points")) cfg.quad_points = g.at("quad_points").get<std::size_t>();
  }
  if (j.contains("sfl")) {
    const json& s = j.at("sfl");
    check_keys(s, "config.sfl", {"lambda_grid", "delta", "seed", "tol_kernel"});
    if (s.contains("lambda_grid")) cfg.sfl.lambda_grid = s.at("lambda_grid").get<std::size_t>();
    if (s.contains("delta")) {
      if (s.at("delta").is_string()) {
        if (s.at("delta").get<std::string>() != "auto")
          throw ConfigError("config.sfl.delta: number or \"auto\"");
      } else if (s.at("delta").is_number()) {
        cfg.sfl.delta = s.at("delta").get<double>();
      } else {
        throw ConfigError("config.sfl.delta: number or \"auto\"");
      }
    }
    if (s.contains("seed")) cfg.sfl.seed = s.at("seed").get<std::uint64_t>();
    if (s.contains("tol_kernel")) cfg.sfl.tol_kernel = s.at("tol_kernel").get<double>();
  }
  if (j.contains("comparison")) {
    const json& c = j.at("comparison");
    check_keys(c, "config.comparison", {"C0", "C1", "t_grid"});
    auto parse_side = [&](const char* key, AutoC& mode, std::optional<SymMatrix>& mat) {
      if (!c.contains(key)) return;
      const json& v = c.at(key);
      if (v.is_string()) {
        const std::string s = v.get<std::string>();
        if (s == "auto-scalar") {
          mode = AutoC::auto_scalar;
        } else if (s == "auto-shifted-mean") {
          mode = AutoC::auto_shifted_mean;
        } else {
          throw ConfigError(std::string("config.comparison.") + key +
                            ": matrix, \"auto-scalar\" or \"auto-shifted-mean\"");
        }
      } else {
        mode = AutoC::matrix;
        mat = parse_matrix(v, dim, std::string("config.comparison.") + key);
      }
    };
    parse_side("C0", cfg.comparison.c0_mode, cfg.comparison.c0);
    parse_side("C1", cfg.comparison.c1_mode, cfg.comparison.c1);
    if (c.contains("t_grid")) cfg.comparison.t_grid = c.at("t_grid").get<std::size_t>();
  }
  if (j.contains("monodromy")) {
    const json& m = j.at("monodromy");
    check_keys(m, "config.monodromy", {"steps", "lambda_grid", "tol"});
    if (m.contains("steps")) cfg.monodromy.steps = m.at("steps").get<std::size_t>();
    if (m.contains("lambda_grid"))
      cfg.monodromy_lambda_grid = m.at("lambda_grid").get<std::size_t>();
    if (m.contains("tol")) cfg.monodromy.tol = m.at("tol").get<double>();
  }
  if (j.contains("output")) {
    const json& o = j.at("output");
    check_keys(o, "config.output", {"format", "traces", "path"});
    if (o.contains("format")) {
      cfg.output.format = o.at("format").get<std::string>();
      if (cfg.output.format != "json" && cfg.output.format != "csv")
        throw ConfigError("config.output.format: json or csv");
    }
    if (o.contains("traces")) cfg.output.traces = o.at("traces").get<bool>();
    if (o.contains("path")) cfg.output.path = o.at("path").get<std::string>();
  }
  return cfg;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }
  return parse_config(j);
}

std::size_t effective_cutoff(const RunConfig& cfg) {
  if (cfg.galerkin_cutoff > 0) return cfg.galerkin_cutoff;
  const std::size_t t_grid = cfg.family.default_t_grid();
  double extreme = 0.0;
  for (double lam : {0.0, 1.0}) {
    const auto [alpha, beta] = cfg.family.spectral_bounds(lam, t_grid);
    extreme = std::max({extreme, std::fabs(alpha), std::fabs(beta)});
  }
  return default_cutoff(cfg.family.max_freq(), static_cast<std::size_t>(std::ceil(extreme)));
}

std::size_t effective_quad_points(const RunConfig& cfg, std::size_t cutoff) {
  if (cfg.quad_points > 0) return cfg.quad_points;
  return default_quad_points(FourierBasisSpec{cfg.n, cutoff}, cfg.family.max_freq());
}

nlohmann::json echo_config(const RunConfig& cfg) {
  json j;
  j["n"] = cfg.n;
  json fam = json::array();
  for (const auto& [lam, poly] : cfg.family.knots()) {
    json knot;
    knot["lambda"] = lam;
    json cc = json::array();
    for (const auto& m : poly.cos_coeffs()) cc.push_back(matrix_to_json(m));
    knot["cos_coeffs"] = cc;
    json sc = json::array();
    for (const auto& m : poly.sin_coeffs()) sc.push_back(matrix_to_json(m));
    knot["sin_coeffs"] = sc;
    fam.push_back(knot);
  }
  j["family"] = fam;
  const std::size_t cutoff = effective_cutoff(cfg);
  j["galerkin"] = {{"cutoff", cutoff}, {"quad_points", effective_quad_points(cfg, cutoff)}};
  j["sfl"] = {{"lambda_grid", cfg.sfl.lambda_grid},
              {"seed", cfg.sfl.seed},
              {"tol_kernel", cfg.sfl.tol_kernel}};
  if (cfg.sfl.delta) {
    j["sfl"]["delta"] = *cfg.sfl.delta;
  } else {
    j["sfl"]["delta"] = "auto";
  }
  auto side_to_json = [](AutoC mode, const std::optional<SymMatrix>& mat) -> json {
    switch (mode) {
      case AutoC::auto_scalar:
        return "auto-scalar";
      case AutoC::auto_shifted_mean:
        return "auto-shifted-mean";
      case AutoC::matrix:
        return matrix_to_json(*mat);
    }
    return nullptr;
  };
  j["comparison"] = {{"C0", side_to_json(cfg.comparison.c0_mode, cfg.comparison.c0)},
                     {"C1", side_to_json(cfg.comparison.c1_mode, cfg.comparison.c1)},
                     {"t_grid", cfg.comparison.t_grid == 0 ? cfg.family.default_t_grid()
                                                           : cfg.comparison.t_grid}};
  j["monodromy"] = {{"steps", cfg.monodromy.steps},
                    {"lambda_grid", cfg.monodromy_lambda_grid},
                    {"tol", cfg.monodromy.tol}};
  j["output"] = {{"format", cfg.output.format},
                 {"traces", cfg.output.traces},
                 {"path", cfg.output.path}};
  return j;
}

}  // namespace sfb
