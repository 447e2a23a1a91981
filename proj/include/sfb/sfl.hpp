#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "sfb/family.hpp"
#include "sfb/galerkin.hpp"
#include "sfb/linalg.hpp"

namespace sfb {

/// A path lambda -> symmetric Galerkin matrix on [0,1], with an optional
/// analytic lambda-derivative and the locations where that derivative jumps.
struct OperatorPath {
  std::function<SymMatrix(double)> matrix;
  std::function<Matrix(double)> derivative;  // may be empty; finite differences then
  std::vector<double> kinks;                 // interior lambdas with one-sided derivatives
  std::size_t dim = 0;
};

/// Path of truncated Hessians L_lambda of a coefficient family.
OperatorPath make_hessian_path(const FourierBasisSpec& spec, const MatrixFamilyPath& fam,
                               std::size_t quad_points);

enum class HomotopyEdge { bottom, left, top, right };

/// One edge of the homotopy rectangle, parametrized by sigma in [0,1]:
/// bottom: (sigma, 0), left: (0, sigma), top: (sigma, 1), right: (1, sigma).
OperatorPath make_homotopy_edge(const FourierBasisSpec& spec, const MatrixFamilyPath& fam,
                                const SymMatrix& c0, const SymMatrix& c1, HomotopyEdge edge,
                                std::size_t quad_points);

struct Crossing {
  double lambda;
  std::size_t kernel_dim;
  Matrix form;  // crossing form on the kernel (kernel_dim x kernel_dim)
  int signature;
  bool regular;
  bool at_left_endpoint = false;
  bool at_right_endpoint = false;
};

struct SflResult {
  long value = 0;
  std::vector<Crossing> crossings;
  double delta_used = 0.0;
  std::size_t lambda_grid = 0;
  bool all_regular = true;
  std::uint64_t seed = 0;
  int retries = 0;
};

struct SflOptions {
  std::size_t lambda_grid = 64;
  double tol_kernel = 1e-7;
  std::optional<double> delta;  // fixed shift; unset = start at 0, randomize on retry
  std::uint64_t seed = 20240801;
  int max_retries = 5;
  double refine_width = 1e-10;
  double merge_tol = 1e-8;
  double fd_step = 1e-5;
};

/// Candidate crossing locations of the delta-shifted path: grid scan of the
/// smallest-magnitude eigenvalue, sign-change bisection and near-zero minimum
/// refinement. Endpoint crossings are reported with lambda 0 or 1.
std::vector<double> detect_crossings(const OperatorPath& path, double delta,
                                     std::size_t lambda_grid, double tol_kernel);

struct CrossingForm {
  Matrix form;
  int signature;
  bool regular;
};

/// Crossing form <dL/dlambda k_i, k_j> on an orthonormal kernel basis. Uses the
/// analytic derivative when available and cross-checks it against central
/// finite differences (one-sided at path kinks).
CrossingForm crossing_form(const OperatorPath& path, double lambda_star,
                           const std::vector<std::vector<double>>& kernel, double d_lambda);

/// Spectral flow via the crossing-form sum, with random delta-regularization
/// retries when a crossing is irregular. Throws if the endpoints are singular
/// at delta = 0 or retries are exhausted.
SflResult spectral_flow(const OperatorPath& path, const SflOptions& opts = {});

/// Sum of kernel dimensions over crossings in (0,1], valid when every crossing
/// form is positive definite; falls back to spectral_flow otherwise.
long crossing_sum_positive(const OperatorPath& path, const SflOptions& opts = {});

struct EndpointSingularError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct RetriesExhaustedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace sfb
