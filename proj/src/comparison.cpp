#include "sfb/comparison.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sfb {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kIntegerSnap = 1e-12;

double snap_zero(double x) { return std::fabs(x) <= kIntegerSnap ? 0.0 : x; }
}  // namespace

SandwichCheck validate_sandwich(const MatrixFamilyPath& fam, const SymMatrix& c0,
                                const SymMatrix& c1, std::size_t t_grid, double tol) {
  if (c0.dim() != fam.dim() || c1.dim() != fam.dim())
    throw std::invalid_argument("validate_sandwich: dimension mismatch");
  SandwichCheck out;
  out.t_grid = t_grid;
  const TrigMatrixPolynomial a0 = fam.at_lambda(0.0);
  const TrigMatrixPolynomial a1 = fam.at_lambda(1.0);
  double m0 = 0.0, m1 = 0.0;
  for (std::size_t j = 0; j < t_grid; ++j) {
    const double t = kTwoPi * static_cast<double>(j) / static_cast<double>(t_grid);
    const double lower = loewner_margin(a0.evaluate(t), c0);   // A0(t) <= C0
    const double upper = loewner_margin(c1, a1.evaluate(t));   // C1 <= A1(t)
    if (j == 0) {
      m0 = lower;
      m1 = upper;
    } else {
      m0 = std::min(m0, lower);
      m1 = std::min(m1, upper);
    }
  }
  out.margin_a0_c0 = m0;
  out.margin_c1_a1 = m1;
  out.margin_c0_c1 = loewner_margin(c0, c1);
  out.a0_leq_c0 = m0 >= -tol;
  out.c1_leq_a1 = m1 >= -tol;
  out.c0_leq_c1 = out.margin_c0_c1 >= -tol;
  return out;
}

std::optional<std::size_t> sign_change_witness(const SymMatrix& c0, const SymMatrix& c1) {
  const auto e0 = eig_sym(c0).eigenvalues;
  const auto e1 = eig_sym(c1).eigenvalues;
  std::optional<std::size_t> index;
  for (std::size_t i = 0; i < e0.size(); ++i) {
    if (snap_zero(e0[i]) < 0.0 && snap_zero(e1[i]) >= 0.0) {
      index = i + 1;
      break;
    }
  }
  const std::size_t mi0 = morse_index(c0, kIntegerSnap);
  const std::size_t mi1 = morse_index(c1, kIntegerSnap);
  // for C0 <= C1 a witness exists exactly when the Morse indices differ
  if (index.has_value() != (mi0 != mi1))
    throw std::runtime_error("sign_change_witness: eigenvalue and Morse-index criteria disagree");
  return index;
}

IntegerGapResult integer_gap_check(const SymMatrix& c0, const SymMatrix& c1, double commute_tol) {
  IntegerGapResult out;
  out.applicable = commutes_with_J(c0, commute_tol) && commutes_with_J(c1, commute_tol);
  const auto e0 = eig_sym(c0).eigenvalues;
  const auto e1 = eig_sym(c1).eigenvalues;
  const std::size_t d = e0.size();
  out.per_index_counts.resize(d);
  for (std::size_t i = 0; i < d; ++i) {
    const long c = count_integers_half_open(std::min(e0[i], e1[i]), e1[i], kIntegerSnap);
    out.per_index_counts[i] = e0[i] <= e1[i] + kIntegerSnap ? c : 0;
    out.total_count += out.per_index_counts[i];
    if (!out.witness && out.per_index_counts[i] > 0) {
      // smallest integer strictly above mu_i(C0)
      const double a = e0[i];
      const double snapped = std::fabs(a - std::round(a)) <= kIntegerSnap ? std::round(a) : a;
      out.witness = std::make_pair(i + 1, static_cast<long>(std::floor(snapped)) + 1);
    }
  }
  out.raw_bound = static_cast<double>(out.total_count) / static_cast<double>(d);
  out.count_lower_bound = static_cast<long>(std::ceil(out.raw_bound - 1e-12));
  return out;
}

SymMatrix synthesize_C(const MatrixFamilyPath& fam, int side, SynthesisMode mode,
                       std::size_t t_grid) {
  if (side != 0 && side != 1) throw std::invalid_argument("synthesize_C: side must be 0 or 1");
  if (t_grid == 0) t_grid = fam.default_t_grid();
  const double lambda = static_cast<double>(side);
  if (mode == SynthesisMode::scalar) {
    const auto [alpha, beta] = fam.spectral_bounds(lambda, t_grid);
    return SymMatrix::scaled_identity(fam.dim(), side == 0 ? beta : alpha);
  }
  // shifted_mean: t-average of the coefficient, shifted outward just enough
  const TrigMatrixPolynomial poly = fam.at_lambda(lambda);
  const SymMatrix mean = poly.cos_coeffs().front();
  double r = 0.0;
  for (std::size_t j = 0; j < t_grid; ++j) {
    const double t = kTwoPi * static_cast<double>(j) / static_cast<double>(t_grid);
    const SymMatrix diff = side == 0 ? poly.evaluate(t) - mean : mean - poly.evaluate(t);
    r = std::max(r, eig_sym(diff).eigenvalues.back());
  }
  const double shift = side == 0 ? r : -r;
  return mean + SymMatrix::scaled_identity(fam.dim(), shift);
}

ComparisonCertificate certify(const MatrixFamilyPath& fam, const CertifyOptions& opts) {
  const std::size_t t_grid = opts.t_grid == 0 ? fam.default_t_grid() : opts.t_grid;
  const SymMatrix c0 = opts.c0 ? *opts.c0 : synthesize_C(fam, 0, opts.mode, t_grid);
  const SymMatrix c1 = opts.c1 ? *opts.c1 : synthesize_C(fam, 1, opts.mode, t_grid);

  ComparisonCertificate cert{c0, c1};
  cert.eig_c0 = eig_sym(c0).eigenvalues;
  cert.eig_c1 = eig_sym(c1).eigenvalues;
  cert.sandwich = validate_sandwich(fam, c0, c1, t_grid, opts.tol);
  cert.c0_leq_c1 = cert.sandwich.c0_leq_c1;
  cert.commute_J = {commutes_with_J(c0, 1e-9), commutes_with_J(c1, 1e-9)};
  cert.endpoints_invertible = endpoint_invertibility(fam, opts.monodromy);

  if (cert.c0_leq_c1) {
    // Weyl monotonicity sanity check
    for (std::size_t i = 0; i < cert.eig_c0.size(); ++i)
      if (cert.eig_c0[i] > cert.eig_c1[i] + 1e-8 * (1.0 + std::fabs(cert.eig_c1[i])))
        throw std::runtime_error("certify: eigenvalue monotonicity violated under C0 <= C1");
    cert.sign_change_index = sign_change_witness(c0, c1);
  }
  cert.integer_gaps = integer_gap_check(c0, c1);

  const bool witnessed =
      cert.sign_change_index.has_value() ||
      (cert.integer_gaps.applicable && cert.integer_gaps.witness.has_value());
  cert.bifurcation_guaranteed = cert.sandwich.valid() && cert.endpoints_invertible.first &&
                                cert.endpoints_invertible.second && witnessed;
  if (cert.integer_gaps.applicable) {
    cert.count_lower_bound = cert.integer_gaps.count_lower_bound;
  } else if (cert.sign_change_index) {
    cert.count_lower_bound = 1;
  }
  if (!cert.bifurcation_guaranteed) cert.count_lower_bound = std::min(cert.count_lower_bound, 0L);
  return cert;
}

std::optional<ComparisonCertificate> scalar_corollary(const MatrixFamilyPath& fam,
                                                      std::size_t t_grid) {
  if (t_grid == 0) t_grid = fam.default_t_grid();
  const double beta0 = fam.spectral_bounds(0.0, t_grid).second;
  const double alpha1 = fam.spectral_bounds(1.0, t_grid).first;
  if (beta0 > alpha1) return std::nullopt;
  CertifyOptions opts;
  opts.c0 = SymMatrix::scaled_identity(fam.dim(), beta0);
  opts.c1 = SymMatrix::scaled_identity(fam.dim(), alpha1);
  opts.t_grid = t_grid;
  ComparisonCertificate cert = certify(fam, opts);
  const long expected = count_integers_half_open(beta0, alpha1, kIntegerSnap);
  if (cert.integer_gaps.count_lower_bound != expected)
    throw std::runtime_error("scalar_corollary: bound does not match |(beta_0, alpha_1] ∩ Z|");
  return cert;
}

}  // namespace sfb
