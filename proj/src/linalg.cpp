#include "sfb/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace sfb {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

double Matrix::inf_norm() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::fabs(v));
  return m;
}

Matrix Matrix::operator+(const Matrix& other) const {
  Matrix r = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] += other.data_[i];
  return r;
}

Matrix Matrix::operator-(const Matrix& other) const {
  Matrix r = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] -= other.data_[i];
  return r;
}

Matrix& Matrix::operator+=(const Matrix& other) {
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

Matrix Matrix::operator*(const Matrix& other) const {
  Matrix r(rows_, other.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      double a = (*this)(i, k);
      if (a == 0.0) continue;
      for (std::size_t j = 0; j < other.cols_; ++j) r(i, j) += a * other(k, j);
    }
  return r;
}

Matrix operator*(double s, const Matrix& m) {
  Matrix r = m;
  for (double& v : r.data_) v *= s;
  return r;
}

SymMatrix::SymMatrix(const Matrix& m, double sym_tol) : mat_(m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("SymMatrix: matrix is not square");
  if (m.rows() == 0 || m.rows() % 2 != 0)
    throw std::invalid_argument("SymMatrix: dimension must be even and positive, got " +
                                std::to_string(m.rows()));
  const double scale = 1.0 + m.inf_norm();
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i + 1; j < m.cols(); ++j) {
      if (std::fabs(m(i, j) - m(j, i)) > sym_tol * scale)
        throw std::invalid_argument("SymMatrix: entries (" + std::to_string(i) + "," +
                                    std::to_string(j) + ") violate symmetry");
      const double v = 0.5 * (m(i, j) + m(j, i));
      mat_(i, j) = v;
      mat_(j, i) = v;
    }
}

SymMatrix::SymMatrix(std::size_t dim, double fill) : mat_(dim, dim, fill) {
  if (dim == 0 || dim % 2 != 0)
    throw std::invalid_argument("SymMatrix: dimension must be even and positive");
}

SymMatrix SymMatrix::identity(std::size_t dim) { return SymMatrix(Matrix::identity(dim)); }

SymMatrix SymMatrix::scaled_identity(std::size_t dim, double c) {
  SymMatrix m(dim, 0.0);
  for (std::size_t i = 0; i < dim; ++i) m.set(i, i, c);
  return m;
}

SymMatrix SymMatrix::operator+(const SymMatrix& other) const {
  SymMatrix r = *this;
  r.mat_ += other.mat_;
  return r;
}

SymMatrix SymMatrix::operator-(const SymMatrix& other) const {
  SymMatrix r = *this;
  r.mat_ = r.mat_ - other.mat_;
  return r;
}

SymMatrix operator*(double s, const SymMatrix& m) {
  SymMatrix r = m;
  r.mat_ = s * r.mat_;
  return r;
}

namespace {

double off_diagonal_norm(const Matrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j) s += a(i, j) * a(i, j);
  return std::sqrt(s);
}

}  // namespace

EigenDecomposition eig_sym(const SymMatrix& sym, int max_sweeps) {
  return eig_sym_raw(sym.matrix(), max_sweeps);
}

EigenDecomposition eig_sym_raw(const Matrix& input, int max_sweeps) {
  if (input.rows() != input.cols())
    throw std::invalid_argument("eig_sym_raw: matrix not square");
  const std::size_t n = input.rows();
  Matrix a = input;
  Matrix v = Matrix::identity(n);

  double frob = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) frob += a(i, j) * a(i, j);
  frob = std::sqrt(frob);
  const double stop = 1e-15 * std::max(frob, 1.0);

  bool converged = false;
  for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
    const double off = off_diagonal_norm(a);
    if (off <= stop) {
      converged = true;
      break;
    }
    // rotate only entries above the per-sweep threshold
    const double thresh = off / static_cast<double>(n);
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (std::fabs(apq) <= 0.1 * thresh) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }
  if (!converged && off_diagonal_norm(a) > stop)
    throw std::runtime_error("eig_sym: Jacobi did not converge after " +
                             std::to_string(max_sweeps) + " sweeps, off-diagonal residual " +
                             std::to_string(off_diagonal_norm(a)));

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&a](std::size_t i, std::size_t j) { return a(i, i) < a(j, j); });

  EigenDecomposition dec;
  dec.eigenvalues.resize(n);
  dec.eigenvectors = Matrix(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    dec.eigenvalues[j] = a(order[j], order[j]);
    for (std::size_t i = 0; i < n; ++i) dec.eigenvectors(i, j) = v(i, order[j]);
  }
  return dec;
}

std::size_t morse_index(const SymMatrix& a, double tol) {
  if (tol < 0) throw std::invalid_argument("morse_index: tol must be >= 0");
  const auto dec = eig_sym(a);
  std::size_t count = 0;
  for (double mu : dec.eigenvalues)
    if (mu < -tol) ++count;
  return count;
}

double loewner_margin(const SymMatrix& a, const SymMatrix& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("loewner: dimension mismatch");
  return eig_sym(b - a).eigenvalues.front();
}

bool loewner_leq(const SymMatrix& a, const SymMatrix& b, double tol) {
  return loewner_margin(a, b) >= -tol;
}

Matrix symplectic_J(std::size_t n) {
  Matrix j(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    j(i, n + i) = -1.0;
    j(n + i, i) = 1.0;
  }
  return j;
}

bool commutes_with_J(const SymMatrix& c, double tol) {
  const Matrix j = symplectic_J(c.half_dim());
  const Matrix comm = j * c.matrix() - c.matrix() * j;
  return comm.inf_norm() <= tol * (1.0 + c.inf_norm());
}

Matrix exp_cJ(double c, double t, std::size_t n) {
  return std::cos(c * t) * Matrix::identity(2 * n) + std::sin(c * t) * symplectic_J(n);
}

long count_integers_half_open(double a, double b, double snap_tol) {
  if (a > b) throw std::invalid_argument("count_integers_half_open: a > b");
  auto snap = [snap_tol](double x) {
    const double r = std::round(x);
    return std::fabs(x - r) <= snap_tol ? r : x;
  };
  return static_cast<long>(std::floor(snap(b)) - std::floor(snap(a)));
}

double det(const Matrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("det: matrix not square");
  const std::size_t n = m.rows();
  Matrix a = m;
  double d = 1.0;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t i = col + 1; i < n; ++i)
      if (std::fabs(a(i, col)) > std::fabs(a(piv, col))) piv = i;
    if (a(piv, col) == 0.0) return 0.0;
    if (piv != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(piv, j), a(col, j));
      d = -d;
    }
    d *= a(col, col);
    for (std::size_t i = col + 1; i < n; ++i) {
      const double f = a(i, col) / a(col, col);
      for (std::size_t j = col; j < n; ++j) a(i, j) -= f * a(col, j);
    }
  }
  return d;
}

std::vector<double> singular_values(const Matrix& m) {
  const Matrix g = m.transpose() * m;
  const auto dec = eig_sym_raw(g);
  std::vector<double> s;
  s.reserve(dec.eigenvalues.size());
  for (double mu : dec.eigenvalues) s.push_back(std::sqrt(std::max(mu, 0.0)));
  return s;
}

}  // namespace sfb
