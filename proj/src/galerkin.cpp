#include "sfb/galerkin.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sfb {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}  // namespace

GramWeights gram_weights(const FourierBasisSpec& spec) {
  GramWeights g(spec.dim());
  for (std::size_t p = 0; p < 2 * spec.n; ++p) g[p] = kTwoPi;
  for (std::size_t k = 1; k <= spec.cutoff; ++k) {
    const double w = kPi * static_cast<double>(k);
    for (std::size_t p = 0; p < 2 * spec.n; ++p) {
      g[spec.sin_offset(k) + p] = w;
      g[spec.cos_offset(k) + p] = w;
    }
  }
  return g;
}

GramWeights l2_weights(const FourierBasisSpec& spec) {
  GramWeights g(spec.dim(), kPi);
  for (std::size_t p = 0; p < 2 * spec.n; ++p) g[p] = kTwoPi;
  return g;
}

Matrix assemble_Q(const FourierBasisSpec& spec) {
  const std::size_t d2n = 2 * spec.n;
  Matrix b(spec.dim(), spec.dim());
  const Matrix j = symplectic_J(spec.n);
  for (std::size_t k = 1; k <= spec.cutoff; ++k) {
    const double w = kPi * static_cast<double>(k);
    const std::size_t so = spec.sin_offset(k), co = spec.cos_offset(k);
    // Q(e_p sin(kt), e_q cos(kt)) = pi*k * J_{qp}
    for (std::size_t p = 0; p < d2n; ++p)
      for (std::size_t q = 0; q < d2n; ++q) {
        const double v = w * j(q, p);
        b(so + p, co + q) = v;
        b(co + q, so + p) = v;
      }
  }
  return b;
}

Matrix assemble_mult(const FourierBasisSpec& spec,
                     const std::function<SymMatrix(double)>& coeff, std::size_t quad_points) {
  const std::size_t d2n = 2 * spec.n;
  const std::size_t nblocks = 2 * spec.cutoff + 1;
  Matrix b(spec.dim(), spec.dim());
  const double w = kTwoPi / static_cast<double>(quad_points);
  std::vector<double> f(nblocks);
  for (std::size_t jq = 0; jq < quad_points; ++jq) {
    const double t = kTwoPi * static_cast<double>(jq) / static_cast<double>(quad_points);
    const SymMatrix a = coeff(t);
    if (a.dim() != d2n)
      throw std::invalid_argument("assemble_mult: coefficient dimension mismatch");
    f[0] = 1.0;
    for (std::size_t k = 1; k <= spec.cutoff; ++k) {
      f[2 * k - 1] = std::sin(static_cast<double>(k) * t);
      f[2 * k] = std::cos(static_cast<double>(k) * t);
    }
    for (std::size_t m1 = 0; m1 < nblocks; ++m1) {
      for (std::size_t m2 = m1; m2 < nblocks; ++m2) {
        const double s = w * f[m1] * f[m2];
        if (s == 0.0) continue;
        const std::size_t o1 = d2n * m1, o2 = d2n * m2;
        for (std::size_t p = 0; p < d2n; ++p)
          for (std::size_t q = 0; q < d2n; ++q) {
            const double v = s * a(p, q);
            b(o1 + p, o2 + q) += v;
            if (m1 != m2) b(o2 + q, o1 + p) += v;
          }
      }
    }
  }
  return b;
}

std::size_t default_quad_points(const FourierBasisSpec& spec, std::size_t family_max_freq) {
  const std::size_t nyquist = 4 * (spec.cutoff + family_max_freq + 1);
  return std::max<std::size_t>(nyquist, 128);
}

namespace {

Matrix gram_normalize(const FourierBasisSpec& spec, const Matrix& b) {
  const GramWeights g = gram_weights(spec);
  Matrix m = b;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) /= std::sqrt(g[i] * g[j]);
  return m;
}

void check_quad(const FourierBasisSpec& spec, std::size_t family_max_freq,
                std::size_t quad_points) {
  if (quad_points < 4 * (spec.cutoff + family_max_freq + 1))
    throw std::invalid_argument("quadrature resolution too low: need >= 4*(N+F+1) points");
}

GalerkinOperator assemble_from_coeff(const FourierBasisSpec& spec,
                                     const std::function<SymMatrix(double)>& coeff,
                                     std::size_t family_max_freq, double lambda, double delta,
                                     std::size_t quad_points) {
  check_quad(spec, family_max_freq, quad_points);
  Matrix b = assemble_Q(spec) + assemble_mult(spec, coeff, quad_points);
  Matrix m = gram_normalize(spec, b);
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, i) += delta;
  return GalerkinOperator{spec, SymMatrix(m, 1e-8), lambda, delta};
}

}  // namespace

GalerkinOperator assemble_L(const FourierBasisSpec& spec, const MatrixFamilyPath& fam,
                            double lambda, double delta, std::size_t quad_points) {
  const TrigMatrixPolynomial poly = fam.at_lambda(lambda);
  return assemble_from_coeff(
      spec, [&poly](double t) { return poly.evaluate(t); }, fam.max_freq(), lambda, delta,
      quad_points);
}

GalerkinOperator assemble_homotopy(const FourierBasisSpec& spec, const MatrixFamilyPath& fam,
                                   const SymMatrix& c0, const SymMatrix& c1, double lambda,
                                   double s, double delta, std::size_t quad_points) {
  if (c0.dim() != fam.dim() || c1.dim() != fam.dim())
    throw std::invalid_argument("assemble_homotopy: C matrices must have dimension 2n");
  const SymMatrix clam = (1.0 - lambda) * c0 + lambda * c1;
  const TrigMatrixPolynomial poly = fam.at_lambda(lambda);
  auto coeff = [&](double t) { return (1.0 - s) * poly.evaluate(t) + s * clam; };
  return assemble_from_coeff(spec, coeff, fam.max_freq(), lambda, delta, quad_points);
}

Matrix assemble_mult_normalized(const FourierBasisSpec& spec,
                                const std::function<SymMatrix(double)>& coeff,
                                std::size_t quad_points) {
  return gram_normalize(spec, assemble_mult(spec, coeff, quad_points));
}

std::vector<std::vector<double>> kernel_basis(const GalerkinOperator& op, double tol) {
  const auto dec = eig_sym(op.matrix);
  std::vector<std::vector<double>> basis;
  const std::size_t d = op.matrix.dim();
  for (std::size_t j = 0; j < d; ++j) {
    if (std::fabs(dec.eigenvalues[j]) <= tol) {
      std::vector<double> v(d);
      for (std::size_t i = 0; i < d; ++i) v[i] = dec.eigenvectors(i, j);
      basis.push_back(std::move(v));
    }
  }
  return basis;
}

std::size_t default_cutoff(std::size_t family_max_freq, std::size_t max_integer) {
  return std::max<std::size_t>(8, 2 * (family_max_freq + max_integer));
}

std::vector<double> pure_mode_vector(const FourierBasisSpec& spec, long k,
                                     const std::vector<double>& u0) {
  const std::size_t d2n = 2 * spec.n;
  if (u0.size() != d2n) throw std::invalid_argument("pure_mode_vector: u0 must have length 2n");
  const std::size_t ka = static_cast<std::size_t>(k >= 0 ? k : -k);
  if (ka > spec.cutoff) throw std::invalid_argument("pure_mode_vector: |k| exceeds cutoff");
  std::vector<double> x(spec.dim(), 0.0);
  if (k == 0) {
    for (std::size_t p = 0; p < d2n; ++p) x[p] = u0[p];
    return x;
  }
  const Matrix j = symplectic_J(spec.n);
  const double sgn = k > 0 ? 1.0 : -1.0;
  // u(t) = u0 cos(|k| t) + sgn(k) J u0 sin(|k| t)
  for (std::size_t p = 0; p < d2n; ++p) {
    x[spec.cos_offset(ka) + p] = u0[p];
    double jv = 0.0;
    for (std::size_t q = 0; q < d2n; ++q) jv += j(p, q) * u0[q];
    x[spec.sin_offset(ka) + p] = sgn * jv;
  }
  return x;
}

std::vector<double> normalize_coords(const FourierBasisSpec& spec, const std::vector<double>& x) {
  const GramWeights g = gram_weights(spec);
  if (x.size() != g.size()) throw std::invalid_argument("normalize_coords: length mismatch");
  std::vector<double> y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = std::sqrt(g[i]) * x[i];
  return y;
}

}  // namespace sfb
