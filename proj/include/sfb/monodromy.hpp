#pragma once

#include <utility>
#include <vector>

#include "sfb/family.hpp"
#include "sfb/linalg.hpp"

namespace sfb {

/// Fundamental solution of J u' + A_lambda(t) u = 0 at t = 2*pi, integrated as
/// X' = J A_lambda(t) X with classical fourth-order Runge-Kutta steps.
struct MonodromyResult {
  double lambda;
  Matrix m;                   // fundamental solution at t = 2*pi
  double symplectic_residual; // ||M^T J M - J||_inf
  double det_mi;              // det(M - I)
  std::size_t kernel_dim;     // dim ker(M - I) at tolerance
  std::size_t steps;
};

struct MonodromyOptions {
  std::size_t steps = 2048;
  double tol = 1e-7;  // relative kernel tolerance, scaled by (1 + ||M||_inf)
};

MonodromyResult integrate_fundamental(const MatrixFamilyPath& fam, double lambda,
                                      const MonodromyOptions& opts = {});

/// Whether the linearized system has only the trivial periodic solution at
/// lambda = 0 and lambda = 1.
std::pair<bool, bool> endpoint_invertibility(const MatrixFamilyPath& fam,
                                             const MonodromyOptions& opts = {});

struct SingularLambda {
  double lambda;
  std::size_t kernel_dim;
};

/// Locate the lambdas where (M(lambda) - I) is singular: bracket minima of the
/// smallest singular value on a grid, refine by golden-section search.
std::vector<SingularLambda> scan_lambda(const MatrixFamilyPath& fam, std::size_t lambda_grid,
                                        const MonodromyOptions& opts = {});

}  // namespace sfb
