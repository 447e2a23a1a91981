#pragma once

#include <functional>
#include <vector>

#include "sfb/family.hpp"
#include "sfb/linalg.hpp"

namespace sfb {

/// Fourier basis of the truncated H^{1/2} space. Coordinate ordering:
/// block 0 holds the 2n constant coordinates, then for each mode k = 1..N the
/// sine block (2n coordinates) followed by the cosine block (2n coordinates).
struct FourierBasisSpec {
  std::size_t n;       // half dimension of the phase space
  std::size_t cutoff;  // highest retained mode N >= 1

  std::size_t dim() const { return 2 * n * (2 * cutoff + 1); }
  /// Offset of the sine block of mode k (k >= 1).
  std::size_t sin_offset(std::size_t k) const { return 2 * n * (2 * k - 1); }
  /// Offset of the cosine block of mode k (k >= 1).
  std::size_t cos_offset(std::size_t k) const { return 2 * n * (2 * k); }
};

/// Diagonal of the H^{1/2} Gram matrix in basis order: 2*pi for the constant
/// coordinates, pi*k for every mode-k coordinate.
using GramWeights = std::vector<double>;

GramWeights gram_weights(const FourierBasisSpec& spec);

/// Diagonal of the L^2 Gram matrix: 2*pi for constants, pi for every mode
/// coordinate.
GramWeights l2_weights(const FourierBasisSpec& spec);

/// Raw matrix of the form Q(u,v) = int <J u', v> dt on the basis functions.
/// Constants decouple; within mode k the sine and cosine blocks couple through
/// +/- pi*k*J; there is no cross-mode coupling.
Matrix assemble_Q(const FourierBasisSpec& spec);

/// Raw matrix of int_0^{2pi} <A(t) phi_i(t), phi_j(t)> dt via uniform
/// trapezoidal quadrature (exact for trigonometric A below the Nyquist limit).
Matrix assemble_mult(const FourierBasisSpec& spec,
                     const std::function<SymMatrix(double)>& coeff, std::size_t quad_points);

/// The Galerkin truncation of the Hessian in Gram-orthonormalized coordinates,
/// shifted by delta * I.
struct GalerkinOperator {
  FourierBasisSpec spec;
  SymMatrix matrix;
  double lambda;
  double delta;
};

std::size_t default_quad_points(const FourierBasisSpec& spec, std::size_t family_max_freq);

/// G^{-1/2} (B_Q + B_A) G^{-1/2} + delta*I with the coefficient A_lambda(t).
/// Requires quad_points >= 4*(N + F + 1).
GalerkinOperator assemble_L(const FourierBasisSpec& spec, const MatrixFamilyPath& fam,
                            double lambda, double delta, std::size_t quad_points);

/// Operator of the homotopy coefficient (1-s) A_lambda(t) + s C_lambda,
/// C_lambda = (1-lambda) C0 + lambda C1. s = 0 recovers assemble_L; s = 1 is
/// the comparison path M_lambda.
GalerkinOperator assemble_homotopy(const FourierBasisSpec& spec, const MatrixFamilyPath& fam,
                                   const SymMatrix& c0, const SymMatrix& c1, double lambda,
                                   double s, double delta, std::size_t quad_points);

/// Gram-normalized multiplication matrix G^{-1/2} B_A G^{-1/2} for an
/// arbitrary t-dependent coefficient; used for lambda-derivatives of paths.
Matrix assemble_mult_normalized(const FourierBasisSpec& spec,
                                const std::function<SymMatrix(double)>& coeff,
                                std::size_t quad_points);

/// Orthonormal eigenvectors whose eigenvalues lie within tol of zero.
std::vector<std::vector<double>> kernel_basis(const GalerkinOperator& op, double tol);

/// Default cutoff N = max(8, 2*(F + max_integer)), chosen so kernel elements
/// supported on the certificate's integer modes are representable.
std::size_t default_cutoff(std::size_t family_max_freq, std::size_t max_integer);

/// Coordinate vector (raw Fourier coefficients, before Gram normalization) of
/// u(t) = u0 cos(kt) + sgn(k) J u0 sin(kt) for |k| <= N, or of the constant
/// function u0 for k = 0.
std::vector<double> pure_mode_vector(const FourierBasisSpec& spec, long k,
                                     const std::vector<double>& u0);

/// Map raw Fourier coefficients to Gram-orthonormalized coordinates (G^{1/2} x).
std::vector<double> normalize_coords(const FourierBasisSpec& spec, const std::vector<double>& x);

}  // namespace sfb
