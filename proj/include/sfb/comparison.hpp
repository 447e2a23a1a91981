#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "sfb/family.hpp"
#include "sfb/linalg.hpp"
#include "sfb/monodromy.hpp"

namespace sfb {

struct SandwichCheck {
  bool a0_leq_c0 = false;
  bool c0_leq_c1 = false;
  bool c1_leq_a1 = false;
  double margin_a0_c0 = 0.0;  // worst (minimal) eigenvalue margin over the t-grid
  double margin_c0_c1 = 0.0;
  double margin_c1_a1 = 0.0;
  std::size_t t_grid = 0;

  bool valid() const { return a0_leq_c0 && c0_leq_c1 && c1_leq_a1; }
};

/// Checks A_0(t) <= C0 <= C1 <= A_1(t) on a uniform t-grid.
SandwichCheck validate_sandwich(const MatrixFamilyPath& fam, const SymMatrix& c0,
                                const SymMatrix& c1, std::size_t t_grid, double tol);

/// Smallest index i (1-based) with mu_i(C0) < 0 <= mu_i(C1), cross-checked
/// against the Morse-index characterization. Requires C0 <= C1.
std::optional<std::size_t> sign_change_witness(const SymMatrix& c0, const SymMatrix& c1);

struct IntegerGapResult {
  bool applicable = false;  // both matrices commute with J
  std::optional<std::pair<std::size_t, long>> witness;  // (i, k), i 1-based
  std::vector<long> per_index_counts;
  long total_count = 0;
  double raw_bound = 0.0;  // total_count / 2n, may be fractional
  long count_lower_bound = 0;  // ceil(raw_bound)
};

/// Eigenvalue-pair integer separation: per-index counts of
/// (mu_i(C0), mu_i(C1)] intersected with Z, witness and count bound.
IntegerGapResult integer_gap_check(const SymMatrix& c0, const SymMatrix& c1,
                                  double commute_tol = 1e-9);

enum class SynthesisMode { scalar, shifted_mean };

/// Candidate comparison matrix for one side of the sandwich. Scalar mode gives
/// beta_0*I (side 0) or alpha_1*I (side 1); shifted_mean tightens with the
/// t-averaged coefficient but need not commute with J.
SymMatrix synthesize_C(const MatrixFamilyPath& fam, int side, SynthesisMode mode,
                       std::size_t t_grid);

struct ComparisonCertificate {
  SymMatrix c0;
  SymMatrix c1;
  std::vector<double> eig_c0;
  std::vector<double> eig_c1;
  SandwichCheck sandwich;
  bool c0_leq_c1 = false;
  std::pair<bool, bool> commute_J{false, false};
  std::optional<std::size_t> sign_change_index;
  IntegerGapResult integer_gaps;
  std::pair<bool, bool> endpoints_invertible{false, false};
  bool finiteness_assumed = true;  // finiteness hypothesis of the counting criterion, not checkable on a grid
  bool bifurcation_guaranteed = false;
  long count_lower_bound = 0;
};

struct CertifyOptions {
  std::optional<SymMatrix> c0;
  std::optional<SymMatrix> c1;
  SynthesisMode mode = SynthesisMode::scalar;
  std::size_t t_grid = 0;  // 0 = family default
  double tol = 1e-9;
  MonodromyOptions monodromy;
};

ComparisonCertificate certify(const MatrixFamilyPath& fam, const CertifyOptions& opts = {});

/// The scalar corollary: certificate with C0 = beta_0*I, C1 = alpha_1*I; the
/// resulting bound equals |(beta_0, alpha_1] ∩ Z| (asserted). Inapplicable
/// when beta_0 > alpha_1.
std::optional<ComparisonCertificate> scalar_corollary(const MatrixFamilyPath& fam,
                                                      std::size_t t_grid = 0);

}  // namespace sfb
