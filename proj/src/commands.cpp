#include <cmath>
#include <iostream>
#include <sstream>

#include "sfb/config.hpp"

namespace sfb {

namespace {

using nlohmann::json;

constexpr const char* kVersion = "0.1.0";

json report_header(const char* command, const RunConfig& cfg) {
  json j;
  j["command"] = command;
  j["version"] = kVersion;
  j["config"] = echo_config(cfg);
  return j;
}

json crossing_to_json(const Crossing& c) {
  json j;
  j["lambda"] = c.lambda;
  j["kernel_dim"] = c.kernel_dim;
  j["signature"] = c.signature;
  j["regular"] = c.regular;
  if (c.at_left_endpoint) j["endpoint"] = "left";
  if (c.at_right_endpoint) j["endpoint"] = "right";
  return j;
}

json certificate_to_json(const ComparisonCertificate& cert) {
  json j;
  j["eig_C0"] = cert.eig_c0;
  j["eig_C1"] = cert.eig_c1;
  j["sandwich"] = {{"valid", cert.sandwich.valid()},
                   {"t_grid", cert.sandwich.t_grid},
                   {"margin_A0_C0", cert.sandwich.margin_a0_c0},
                   {"margin_C0_C1", cert.sandwich.margin_c0_c1},
                   {"margin_C1_A1", cert.sandwich.margin_c1_a1}};
  j["C0_leq_C1"] = cert.c0_leq_c1;
  j["commute_J"] = {cert.commute_J.first, cert.commute_J.second};
  if (cert.sign_change_index) j["morse_witness_index"] = *cert.sign_change_index;
  json gaps;
  gaps["applicable"] = cert.integer_gaps.applicable;
  if (cert.integer_gaps.witness)
    gaps["witness"] = {cert.integer_gaps.witness->first, cert.integer_gaps.witness->second};
  gaps["per_index_counts"] = cert.integer_gaps.per_index_counts;
  gaps["raw_bound"] = cert.integer_gaps.raw_bound;
  gaps["count_lower_bound"] = cert.integer_gaps.count_lower_bound;
  j["integer_gaps"] = gaps;
  j["endpoints_invertible"] = {cert.endpoints_invertible.first, cert.endpoints_invertible.second};
  j["finiteness_assumed"] = cert.finiteness_assumed;
  j["bifurcation_guaranteed"] = cert.bifurcation_guaranteed;
  j["count_lower_bound"] = cert.count_lower_bound;
  return j;
}

json scan_to_json(const std::vector<SingularLambda>& scan) {
  json arr = json::array();
  for (const auto& s : scan) arr.push_back({{"lambda", s.lambda}, {"kernel_dim", s.kernel_dim}});
  return arr;
}

CertifyOptions certify_options(const RunConfig& cfg) {
  CertifyOptions opts;
  opts.c0 = cfg.comparison.c0;
  opts.c1 = cfg.comparison.c1;
  opts.mode = cfg.comparison.c0_mode == AutoC::auto_shifted_mean ? SynthesisMode::shifted_mean
                                                                 : SynthesisMode::scalar;
  opts.t_grid = cfg.comparison.t_grid;
  opts.monodromy = cfg.monodromy;
  return opts;
}

bool is_scalar_constant_family(const MatrixFamilyPath& fam, std::vector<double>* values) {
  for (const auto& [lam, poly] : fam.knots()) {
    for (std::size_t m = 1; m < poly.cos_coeffs().size(); ++m)
      if (poly.cos_coeffs()[m].inf_norm() != 0.0 || poly.sin_coeffs()[m - 1].inf_norm() != 0.0)
        return false;
    const SymMatrix& c = poly.cos_coeffs().front();
    const double c00 = c(0, 0);
    for (std::size_t i = 0; i < c.dim(); ++i)
      for (std::size_t j = 0; j < c.dim(); ++j)
        if (c(i, j) != (i == j ? c00 : 0.0)) return false;
    if (values) values->push_back(c00);
  }
  return true;
}

}  // namespace

CommandResult cmd_certify(const RunConfig& cfg) {
  CommandResult out;
  out.report = report_header("certify", cfg);
  try {
    const ComparisonCertificate cert = certify(cfg.family, certify_options(cfg));
    out.report["certificate"] = certificate_to_json(cert);
    const auto scan = scan_lambda(cfg.family, cfg.monodromy_lambda_grid, cfg.monodromy);
    out.report["monodromy_scan"] = scan_to_json(scan);
    out.report["cross_checks"]["singular_lambda_count"] = scan.size();
    out.report["cross_checks"]["bound_attained"] =
        static_cast<long>(scan.size()) >= cert.count_lower_bound;
    if (!cert.endpoints_invertible.first || !cert.endpoints_invertible.second) {
      out.exit_code = kExitEndpointViolated;
    } else if (cert.bifurcation_guaranteed) {
      out.exit_code = kExitGuaranteed;
    } else {
      out.exit_code = kExitInconclusive;
    }
  } catch (const std::invalid_argument& e) {
    out.report["error"] = e.what();
    out.exit_code = kExitInputError;
  } catch (const std::runtime_error& e) {
    out.report["error"] = e.what();
    out.exit_code = kExitNumericalFailure;
  }
  return out;
}

CommandResult cmd_sfl(const RunConfig& cfg) {
  CommandResult out;
  out.report = report_header("sfl", cfg);
  try {
    const std::size_t cutoff = effective_cutoff(cfg);
    const std::size_t quad = effective_quad_points(cfg, cutoff);
    const FourierBasisSpec spec{cfg.n, cutoff};
    const OperatorPath path = make_hessian_path(spec, cfg.family, quad);

    const SflResult res = spectral_flow(path, cfg.sfl);
    out.report["sfl"] = {{"value", res.value},
                         {"delta_used", res.delta_used},
                         {"seed", res.seed},
                         {"retries", res.retries},
                         {"cutoff", cutoff},
                         {"lambda_grid", res.lambda_grid},
                         {"all_regular", res.all_regular}};
    json crossings = json::array();
    for (const auto& c : res.crossings) crossings.push_back(crossing_to_json(c));
    out.report["sfl"]["crossings"] = crossings;

    const auto scan = scan_lambda(cfg.family, cfg.monodromy_lambda_grid, cfg.monodromy);
    out.report["monodromy_scan"] = scan_to_json(scan);

    // Galerkin vs monodromy: same singular lambdas (within tolerance), same dims
    bool agree = scan.size() == res.crossings.size();
    for (std::size_t i = 0; agree && i < scan.size(); ++i)
      agree = std::fabs(scan[i].lambda - res.crossings[i].lambda) <= 2e-4 &&
              scan[i].kernel_dim == res.crossings[i].kernel_dim;
    out.report["cross_checks"]["galerkin_monodromy_agree"] = agree;

    if (const auto cert = scalar_corollary(cfg.family, cfg.comparison.t_grid)) {
      const long bound = cert->integer_gaps.total_count;
      out.report["cross_checks"]["comparison_bound"] = bound;
      out.report["cross_checks"]["sfl_geq_bound"] = res.value >= bound;
    }

    if (cfg.output.traces) {
      std::ostringstream csv;
      csv << "lambda";
      for (std::size_t i = 0; i < spec.dim(); ++i) csv << ",eig_" << (i + 1);
      csv << "\n";
      for (std::size_t i = 0; i <= cfg.sfl.lambda_grid; ++i) {
        const double lam =
            static_cast<double>(i) / static_cast<double>(cfg.sfl.lambda_grid);
        const auto dec = eig_sym(path.matrix(lam));
        csv << lam;
        for (double mu : dec.eigenvalues) csv << "," << mu;
        csv << "\n";
      }
      out.trace_csv = csv.str();
    }
    out.exit_code = kExitGuaranteed;
  } catch (const EndpointSingularError& e) {
    out.report["error"] = e.what();
    out.exit_code = kExitEndpointViolated;
  } catch (const RetriesExhaustedError& e) {
    out.report["error"] = e.what();
    out.exit_code = kExitNumericalFailure;
  } catch (const std::invalid_argument& e) {
    out.report["error"] = e.what();
    out.exit_code = kExitInputError;
  } catch (const std::runtime_error& e) {
    out.report["error"] = e.what();
    out.exit_code = kExitNumericalFailure;
  }
  return out;
}

CommandResult cmd_monodromy(const RunConfig& cfg) {
  CommandResult out;
  out.report = report_header("monodromy", cfg);
  try {
    const auto endpoints = endpoint_invertibility(cfg.family, cfg.monodromy);
    const auto scan = scan_lambda(cfg.family, cfg.monodromy_lambda_grid, cfg.monodromy);
    const MonodromyResult m0 = integrate_fundamental(cfg.family, 0.0, cfg.monodromy);
    const MonodromyResult m1 = integrate_fundamental(cfg.family, 1.0, cfg.monodromy);
    out.report["endpoints_invertible"] = {endpoints.first, endpoints.second};
    out.report["monodromy_scan"] = scan_to_json(scan);
    out.report["endpoint_results"] = {
        {{"lambda", 0.0},
         {"symplectic_residual", m0.symplectic_residual},
         {"det_M_minus_I", m0.det_mi},
         {"kernel_dim", m0.kernel_dim}},
        {{"lambda", 1.0},
         {"symplectic_residual", m1.symplectic_residual},
         {"det_M_minus_I", m1.det_mi},
         {"kernel_dim", m1.kernel_dim}}};
    out.exit_code = kExitGuaranteed;
  } catch (const std::invalid_argument& e) {
    out.report["error"] = e.what();
    out.exit_code = kExitInputError;
  } catch (const std::runtime_error& e) {
    out.report["error"] = e.what();
    out.exit_code = kExitNumericalFailure;
  }
  return out;
}

CommandResult cmd_oracle(const RunConfig& cfg) {
  CommandResult out;
  out.report = report_header("oracle", cfg);
  std::vector<double> c_values;
  if (!is_scalar_constant_family(cfg.family, &c_values)) {
    out.report["error"] = "oracle requires a constant scalar family c(lambda) * I";
    out.exit_code = kExitInputError;
    return out;
  }
  const auto& knots = cfg.family.knots();
  const double c_start = c_values.front(), c_end = c_values.back();
  if (c_start == std::round(c_start) || c_end == std::round(c_end)) {
    out.report["error"] = "oracle: c(lambda) is an integer at an endpoint";
    out.exit_code = kExitEndpointViolated;
    return out;
  }
  // closed form: e^{2 pi c J} = I exactly when c is an integer; each integer
  // crossed transversally contributes sgn(c') * 2n to the spectral flow
  const std::size_t dim = cfg.family.dim();
  json crossings = json::array();
  long value = 0;
  for (std::size_t seg = 0; seg + 1 < knots.size(); ++seg) {
    const double l0 = knots[seg].first, l1 = knots[seg + 1].first;
    const double a = c_values[seg], b = c_values[seg + 1];
    if (a == b) continue;
    const int sign = b > a ? 1 : -1;
    const long klo = static_cast<long>(std::ceil(std::min(a, b)));
    const long khi = static_cast<long>(std::floor(std::max(a, b)));
    for (long k = klo; k <= khi; ++k) {
      const double ck = static_cast<double>(k);
      if (ck == a) continue;  // counted by the previous segment (or excluded at lambda=0)
      const double lstar = l0 + (l1 - l0) * (ck - a) / (b - a);
      value += sign * static_cast<long>(dim);
      crossings.push_back(
          {{"lambda", lstar}, {"c", ck}, {"kernel_dim", dim}, {"sign", sign}});
    }
  }
  out.report["oracle"] = {{"sfl", value}, {"crossings", crossings}};
  out.exit_code = kExitGuaranteed;
  return out;
}

}  // namespace sfb
