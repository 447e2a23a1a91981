#pragma once

#include <utility>
#include <vector>

#include "sfb/linalg.hpp"

namespace sfb {

/// 2*pi-periodic symmetric-matrix-valued trigonometric polynomial
///   A(t) = cos_coeffs[0] + sum_{m=1..F} (cos_coeffs[m] cos(mt) + sin_coeffs[m-1] sin(mt)).
class TrigMatrixPolynomial {
 public:
  /// cos_coeffs has F+1 entries (index 0 is the constant term), sin_coeffs has
  /// F entries for frequencies 1..F. All matrices must share the dimension 2n.
  TrigMatrixPolynomial(std::vector<SymMatrix> cos_coeffs, std::vector<SymMatrix> sin_coeffs);

  static TrigMatrixPolynomial constant(const SymMatrix& c);

  std::size_t half_dim() const { return n_; }
  std::size_t dim() const { return 2 * n_; }
  std::size_t max_freq() const { return cos_coeffs_.size() - 1; }

  SymMatrix evaluate(double t) const;

  const std::vector<SymMatrix>& cos_coeffs() const { return cos_coeffs_; }
  const std::vector<SymMatrix>& sin_coeffs() const { return sin_coeffs_; }

  /// Coefficient-wise linear combination a*p + b*q (frequencies merged).
  static TrigMatrixPolynomial lincomb(double a, const TrigMatrixPolynomial& p, double b,
                                      const TrigMatrixPolynomial& q);

 private:
  std::size_t n_;
  std::vector<SymMatrix> cos_coeffs_;
  std::vector<SymMatrix> sin_coeffs_;
};

struct LambdaDerivative {
  SymMatrix value;
  bool at_knot;  // true when lambda hit an interior knot; value is the right derivative
};

/// The coefficient family A_lambda(t): trigonometric matrix polynomials at
/// lambda-knots, linearly interpolated in lambda. Knots span [0,1].
class MatrixFamilyPath {
 public:
  explicit MatrixFamilyPath(std::vector<std::pair<double, TrigMatrixPolynomial>> knots);

  std::size_t half_dim() const { return knots_.front().second.half_dim(); }
  std::size_t dim() const { return 2 * half_dim(); }
  std::size_t max_freq() const;
  std::size_t num_knots() const { return knots_.size(); }
  const std::vector<std::pair<double, TrigMatrixPolynomial>>& knots() const { return knots_; }
  /// Interior knot lambdas (where the lambda-derivative may jump).
  std::vector<double> interior_knots() const;

  SymMatrix evaluate(double lambda, double t) const;
  /// The interpolated polynomial at a fixed lambda.
  TrigMatrixPolynomial at_lambda(double lambda) const;

  LambdaDerivative derivative_lambda(double lambda, double t) const;
  /// The coefficient polynomial of the lambda-derivative on the segment
  /// containing lambda (right segment at interior knots).
  TrigMatrixPolynomial derivative_poly(double lambda) const;

  /// (alpha, beta): min/max of the eigenvalues of A_lambda(t) over a uniform
  /// t-grid. Requires t_grid_size >= 4*(F+1).
  std::pair<double, double> spectral_bounds(double lambda, std::size_t t_grid_size) const;

  std::size_t default_t_grid() const;

 private:
  std::size_t segment_index(double lambda) const;
  std::vector<std::pair<double, TrigMatrixPolynomial>> knots_;
};

}  // namespace sfb
