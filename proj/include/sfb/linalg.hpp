#pragma once

#include <cstddef>
#include <vector>

namespace sfb {

/// Dense real matrix, row-major.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Matrix transpose() const;
  /// Largest absolute entry.
  double inf_norm() const;

  Matrix operator+(const Matrix& other) const;
  Matrix operator-(const Matrix& other) const;
  Matrix operator*(const Matrix& other) const;
  Matrix& operator+=(const Matrix& other);
  friend Matrix operator*(double s, const Matrix& m);

  const std::vector<double>& data() const { return data_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// Symmetric matrix of even dimension 2n. Entries are symmetrized on
/// construction; inputs that are not symmetric within tolerance are rejected.
class SymMatrix {
 public:
  explicit SymMatrix(const Matrix& m, double sym_tol = 1e-10);
  SymMatrix(std::size_t dim, double fill);

  static SymMatrix identity(std::size_t dim);
  static SymMatrix scaled_identity(std::size_t dim, double c);

  std::size_t dim() const { return mat_.rows(); }
  std::size_t half_dim() const { return mat_.rows() / 2; }
  double operator()(std::size_t i, std::size_t j) const { return mat_(i, j); }
  const Matrix& matrix() const { return mat_; }
  double inf_norm() const { return mat_.inf_norm(); }

  SymMatrix operator+(const SymMatrix& other) const;
  SymMatrix operator-(const SymMatrix& other) const;
  friend SymMatrix operator*(double s, const SymMatrix& m);

  /// Unchecked symmetric write: sets (i,j) and (j,i).
  void set(std::size_t i, std::size_t j, double v) {
    mat_(i, j) = v;
    mat_(j, i) = v;
  }

 private:
  Matrix mat_;
};

struct EigenDecomposition {
  std::vector<double> eigenvalues;  // ascending
  Matrix eigenvectors;              // orthonormal columns, paired with eigenvalues
};

/// Cyclic Jacobi eigensolver for dense symmetric matrices.
/// Throws on non-convergence after max_sweeps with the off-diagonal residual.
EigenDecomposition eig_sym(const SymMatrix& a, int max_sweeps = 100);

/// Jacobi core on a plain square matrix (assumed symmetric); also serves
/// odd-dimensional quadratic forms such as crossing forms.
EigenDecomposition eig_sym_raw(const Matrix& a, int max_sweeps = 100);

/// Number of eigenvalues < -tol, with multiplicity.
std::size_t morse_index(const SymMatrix& a, double tol);

/// Löwner order: true iff the smallest eigenvalue of (b - a) is >= -tol.
bool loewner_leq(const SymMatrix& a, const SymMatrix& b, double tol);
/// Smallest eigenvalue of (b - a); the margin of the comparison a <= b.
double loewner_margin(const SymMatrix& a, const SymMatrix& b);

/// The standard symplectic matrix with blocks (0, -I_n; I_n, 0).
Matrix symplectic_J(std::size_t n);

/// True iff ||JC - CJ||_inf <= tol * (1 + ||C||_inf).
bool commutes_with_J(const SymMatrix& c, double tol);

/// e^{cJt} = cos(ct) I + sin(ct) J; orthogonal and symplectic.
Matrix exp_cJ(double c, double t, std::size_t n);

/// |{k in Z : a < k <= b}|. Values within snap_tol of an integer are snapped
/// to that integer before counting. Throws if a > b.
long count_integers_half_open(double a, double b, double snap_tol = 0.0);

/// Determinant via Gaussian elimination with partial pivoting.
double det(const Matrix& m);

/// Singular values, ascending, via eig_sym of m^T m.
std::vector<double> singular_values(const Matrix& m);

}  // namespace sfb
