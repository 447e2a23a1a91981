#include "sfb/family.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sfb {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

TrigMatrixPolynomial::TrigMatrixPolynomial(std::vector<SymMatrix> cos_coeffs,
                                           std::vector<SymMatrix> sin_coeffs)
    : cos_coeffs_(std::move(cos_coeffs)), sin_coeffs_(std::move(sin_coeffs)) {
  if (cos_coeffs_.empty())
    throw std::invalid_argument("TrigMatrixPolynomial: constant term required");
  if (sin_coeffs_.size() + 1 != cos_coeffs_.size())
    throw std::invalid_argument("TrigMatrixPolynomial: need F sin coefficients for F+1 cos");
  n_ = cos_coeffs_.front().half_dim();
  for (const auto& c : cos_coeffs_)
    if (c.half_dim() != n_)
      throw std::invalid_argument("TrigMatrixPolynomial: inconsistent coefficient dimensions");
  for (const auto& s : sin_coeffs_)
    if (s.half_dim() != n_)
      throw std::invalid_argument("TrigMatrixPolynomial: inconsistent coefficient dimensions");
}

TrigMatrixPolynomial TrigMatrixPolynomial::constant(const SymMatrix& c) {
  return TrigMatrixPolynomial({c}, {});
}

SymMatrix TrigMatrixPolynomial::evaluate(double t) const {
  // reduce mod 2*pi so shifted arguments evaluate identically
  const double tr = std::remainder(t, kTwoPi);
  SymMatrix a = cos_coeffs_[0];
  for (std::size_t m = 1; m < cos_coeffs_.size(); ++m) {
    const double md = static_cast<double>(m);
    a = a + std::cos(md * tr) * cos_coeffs_[m] + std::sin(md * tr) * sin_coeffs_[m - 1];
  }
  return a;
}

TrigMatrixPolynomial TrigMatrixPolynomial::lincomb(double a, const TrigMatrixPolynomial& p,
                                                   double b, const TrigMatrixPolynomial& q) {
  if (p.half_dim() != q.half_dim())
    throw std::invalid_argument("TrigMatrixPolynomial::lincomb: dimension mismatch");
  const std::size_t f = std::max(p.max_freq(), q.max_freq());
  const SymMatrix zero(p.dim(), 0.0);
  std::vector<SymMatrix> cos_out, sin_out;
  for (std::size_t m = 0; m <= f; ++m) {
    SymMatrix c = zero;
    if (m < p.cos_coeffs().size()) c = c + a * p.cos_coeffs()[m];
    if (m < q.cos_coeffs().size()) c = c + b * q.cos_coeffs()[m];
    cos_out.push_back(c);
    if (m >= 1) {
      SymMatrix s = zero;
      if (m - 1 < p.sin_coeffs().size()) s = s + a * p.sin_coeffs()[m - 1];
      if (m - 1 < q.sin_coeffs().size()) s = s + b * q.sin_coeffs()[m - 1];
      sin_out.push_back(s);
    }
  }
  return TrigMatrixPolynomial(std::move(cos_out), std::move(sin_out));
}

MatrixFamilyPath::MatrixFamilyPath(std::vector<std::pair<double, TrigMatrixPolynomial>> knots)
    : knots_(std::move(knots)) {
  if (knots_.empty()) throw std::invalid_argument("MatrixFamilyPath: no knots");
  if (knots_.front().first != 0.0 || knots_.back().first != 1.0) {
    if (knots_.size() == 1 && knots_.front().first == 0.0) {
      // single knot: constant in lambda, extend to [0,1]
      knots_.emplace_back(1.0, knots_.front().second);
    } else {
      throw std::invalid_argument("MatrixFamilyPath: knots must span [0,1]");
    }
  }
  for (std::size_t j = 1; j < knots_.size(); ++j)
    if (knots_[j].first <= knots_[j - 1].first)
      throw std::invalid_argument("MatrixFamilyPath: knots must be strictly increasing");
  const std::size_t n = knots_.front().second.half_dim();
  for (const auto& [lam, poly] : knots_)
    if (poly.half_dim() != n)
      throw std::invalid_argument("MatrixFamilyPath: knot polynomials differ in dimension");
}

std::size_t MatrixFamilyPath::max_freq() const {
  std::size_t f = 0;
  for (const auto& [lam, poly] : knots_) f = std::max(f, poly.max_freq());
  return f;
}

std::vector<double> MatrixFamilyPath::interior_knots() const {
  std::vector<double> out;
  for (std::size_t j = 1; j + 1 < knots_.size(); ++j) out.push_back(knots_[j].first);
  return out;
}

std::size_t MatrixFamilyPath::segment_index(double lambda) const {
  if (lambda < 0.0 || lambda > 1.0)
    throw std::invalid_argument("MatrixFamilyPath: lambda outside [0,1]");
  std::size_t j = 0;
  while (j + 2 < knots_.size() && lambda >= knots_[j + 1].first) ++j;
  return j;
}

SymMatrix MatrixFamilyPath::evaluate(double lambda, double t) const {
  return at_lambda(lambda).evaluate(t);
}

TrigMatrixPolynomial MatrixFamilyPath::at_lambda(double lambda) const {
  const std::size_t j = segment_index(lambda);
  const auto& [l0, p0] = knots_[j];
  const auto& [l1, p1] = knots_[j + 1];
  const double s = (lambda - l0) / (l1 - l0);
  if (s == 0.0) return p0;
  if (s == 1.0) return p1;
  return TrigMatrixPolynomial::lincomb(1.0 - s, p0, s, p1);
}

TrigMatrixPolynomial MatrixFamilyPath::derivative_poly(double lambda) const {
  const std::size_t j = segment_index(lambda);
  const auto& [l0, p0] = knots_[j];
  const auto& [l1, p1] = knots_[j + 1];
  const double inv = 1.0 / (l1 - l0);
  return TrigMatrixPolynomial::lincomb(-inv, p0, inv, p1);
}

LambdaDerivative MatrixFamilyPath::derivative_lambda(double lambda, double t) const {
  const std::size_t j = segment_index(lambda);
  bool at_knot = false;
  for (std::size_t i = 1; i + 1 < knots_.size(); ++i)
    if (lambda == knots_[i].first) at_knot = true;
  return {derivative_poly(lambda).evaluate(t), at_knot};
}

std::pair<double, double> MatrixFamilyPath::spectral_bounds(double lambda,
                                                            std::size_t t_grid_size) const {
  const std::size_t f = max_freq();
  if (t_grid_size < 4 * (f + 1))
    throw std::invalid_argument("spectral_bounds: t-grid too coarse, need >= 4*(F+1) points");
  const TrigMatrixPolynomial poly = at_lambda(lambda);
  double alpha = 0.0, beta = 0.0;
  for (std::size_t j = 0; j < t_grid_size; ++j) {
    const double t = kTwoPi * static_cast<double>(j) / static_cast<double>(t_grid_size);
    const auto dec = eig_sym(poly.evaluate(t));
    if (j == 0) {
      alpha = dec.eigenvalues.front();
      beta = dec.eigenvalues.back();
    } else {
      alpha = std::min(alpha, dec.eigenvalues.front());
      beta = std::max(beta, dec.eigenvalues.back());
    }
  }
  return {alpha, beta};
}

std::size_t MatrixFamilyPath::default_t_grid() const {
  return std::max<std::size_t>(256, 8 * (max_freq() + 1));
}

}  // namespace sfb
