#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "sfb/comparison.hpp"
#include "sfb/sfl.hpp"
#include "test_support.hpp"

using namespace sfb;

namespace {

SymMatrix diag(const std::vector<double>& d) {
  Matrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return SymMatrix(m);
}

}  // namespace

TEST_CASE("validate_sandwich") {
  const auto fam = testing::constant_scalar_family(1, -0.5, 1.5);
  const auto ok = validate_sandwich(fam, SymMatrix::scaled_identity(2, -0.5),
                                    SymMatrix::scaled_identity(2, 1.5), 256, 1e-9);
  CHECK(ok.valid());
  CHECK(ok.margin_a0_c0 == doctest::Approx(0.0));
  CHECK(ok.margin_c0_c1 == doctest::Approx(2.0));
  CHECK(ok.margin_c1_a1 == doctest::Approx(0.0));

  const auto bad = validate_sandwich(fam, SymMatrix::scaled_identity(2, -0.6),
                                     SymMatrix::scaled_identity(2, 1.5), 256, 1e-9);
  CHECK_FALSE(bad.a0_leq_c0);
  CHECK(bad.margin_a0_c0 == doctest::Approx(-0.1));
  CHECK(bad.c0_leq_c1);
  CHECK_FALSE(bad.valid());

  CHECK_THROWS_AS(
      validate_sandwich(fam, SymMatrix::identity(4), SymMatrix::identity(4), 256, 1e-9),
      std::invalid_argument);
}

TEST_CASE("sign-change witness between the endpoint matrices") {
  CHECK(sign_change_witness(diag({-1, -1}), diag({1, 1})) == 1);
  CHECK(sign_change_witness(diag({-2, -1}), diag({-0.5, 1})) == 2);
  CHECK_FALSE(sign_change_witness(diag({1, 2}), diag({2, 3})).has_value());
  CHECK_FALSE(sign_change_witness(diag({-1, -1}), diag({-0.5, -0.5})).has_value());
}

TEST_CASE("sign-change witness agrees with the Morse-index criterion") {
  std::mt19937_64 rng(79);
  for (int trial = 0; trial < 20; ++trial) {
    const SymMatrix a = testing::random_sym(rng, 6, 1.5);
    const SymMatrix p = testing::random_sym(rng, 6, 0.7);
    const SymMatrix b = a + SymMatrix(p.matrix() * p.matrix().transpose(), 1e-8);
    CHECK_NOTHROW(sign_change_witness(a, b));  // internal cross-check would throw on disagreement
  }
}

TEST_CASE("integer-gap counts for scalar endpoint matrices") {
  const auto r = integer_gap_check(SymMatrix::scaled_identity(2, -0.5),
                                  SymMatrix::scaled_identity(2, 1.5));
  CHECK(r.applicable);
  REQUIRE(r.witness.has_value());
  CHECK(r.witness->first == 1);
  CHECK(r.witness->second == 0);
  CHECK(r.per_index_counts == std::vector<long>{2, 2});
  CHECK(r.total_count == 4);
  CHECK(r.raw_bound == doctest::Approx(2.0));
  CHECK(r.count_lower_bound == 2);

  // half-open convention: the left endpoint is excluded, the right included
  CHECK(integer_gap_check(SymMatrix::scaled_identity(2, 0.0), SymMatrix::identity(2))
            .per_index_counts == std::vector<long>{1, 1});
  CHECK(integer_gap_check(SymMatrix::identity(2), SymMatrix::identity(2)).total_count == 0);
}

TEST_CASE("integer-gap ceiling on a genuinely fractional bound") {
  // block-diagonal repeats commute with J (n = 2)
  const SymMatrix c0 = diag({-0.5, 0.5, -0.5, 0.5});
  const SymMatrix c1 = diag({0.5, 2.5, 0.5, 2.5});
  const auto r = integer_gap_check(c0, c1);
  CHECK(r.applicable);
  CHECK(r.total_count == 6);
  CHECK(r.raw_bound == doctest::Approx(1.5));
  CHECK(r.count_lower_bound == 2);
  REQUIRE(r.witness.has_value());
  CHECK(r.witness->second == 0);
}

TEST_CASE("non-J-commuting matrices are counted but marked inapplicable") {
  const auto r = integer_gap_check(diag({-0.5, -0.5}), diag({0.5, 1.5}));
  CHECK_FALSE(r.applicable);
  CHECK(r.total_count == 3);  // one integer in (-0.5, 0.5], two in (-0.5, 1.5]
}

TEST_CASE("comparison matrix synthesis") {
  // A(t) = (2 + cos t) I
  const TrigMatrixPolynomial poly({SymMatrix::scaled_identity(2, 2.0), SymMatrix::identity(2)},
                                  {SymMatrix(2, 0.0)});
  const MatrixFamilyPath fam({{0.0, poly}, {1.0, poly}});
  CHECK((synthesize_C(fam, 0, SynthesisMode::scalar, 256) - SymMatrix::scaled_identity(2, 3.0))
            .inf_norm() <= 1e-3);
  CHECK((synthesize_C(fam, 1, SynthesisMode::scalar, 256) - SymMatrix::identity(2)).inf_norm() <=
        1e-3);

  // A(t) = diag(cos t, -cos t): zero mean, oscillation radius 1
  Matrix s(2, 2);
  s(0, 0) = 1.0;
  s(1, 1) = -1.0;
  const TrigMatrixPolynomial osc({SymMatrix(2, 0.0), SymMatrix(2, 0.0)}, {SymMatrix(2, 0.0)});
  const TrigMatrixPolynomial osc2({SymMatrix(2, 0.0), SymMatrix(s)}, {SymMatrix(2, 0.0)});
  const MatrixFamilyPath fam2({{0.0, osc2}, {1.0, osc2}});
  CHECK((synthesize_C(fam2, 0, SynthesisMode::shifted_mean, 256) - SymMatrix::identity(2))
            .inf_norm() <= 1e-3);
  CHECK((synthesize_C(fam2, 1, SynthesisMode::shifted_mean, 256) +
         SymMatrix::identity(2)).inf_norm() <= 1e-3);
  CHECK_THROWS_AS(synthesize_C(fam2, 2, SynthesisMode::scalar, 256), std::invalid_argument);
}

TEST_CASE("certify the scalar ramp") {
  const auto fam = testing::constant_scalar_family(1, -0.5, 1.5);
  const auto cert = certify(fam);
  CHECK(cert.sandwich.valid());
  CHECK(cert.endpoints_invertible.first);
  CHECK(cert.endpoints_invertible.second);
  CHECK(cert.commute_J.first);
  CHECK(cert.commute_J.second);
  CHECK(cert.sign_change_index == 1);
  CHECK(cert.integer_gaps.applicable);
  CHECK(cert.bifurcation_guaranteed);
  CHECK(cert.count_lower_bound == 2);
}

TEST_CASE("certify an integer-free window is inconclusive") {
  const auto fam = testing::constant_scalar_family(1, 0.1, 0.3);
  const auto cert = certify(fam);
  CHECK(cert.sandwich.valid());
  CHECK_FALSE(cert.sign_change_index.has_value());
  CHECK_FALSE(cert.integer_gaps.witness.has_value());
  CHECK_FALSE(cert.bifurcation_guaranteed);
  CHECK(cert.count_lower_bound == 0);
}

TEST_CASE("certify rejects a singular endpoint") {
  const auto fam = testing::constant_scalar_family(1, 0.0, 1.5);
  const auto cert = certify(fam);
  CHECK_FALSE(cert.endpoints_invertible.first);
  CHECK_FALSE(cert.bifurcation_guaranteed);
  CHECK(cert.count_lower_bound == 0);
}

TEST_CASE("scalar corollary") {
  std::mt19937_64 rng(83);
  const auto fam = testing::perturbed_scalar_family(rng, 1, -0.5, 1.5, 2, 0.1);
  const auto cert = scalar_corollary(fam);
  REQUIRE(cert.has_value());
  CHECK(cert->bifurcation_guaranteed);
  CHECK(cert->count_lower_bound == 2);

  // inapplicable when the spectral windows are in the wrong order
  CHECK_FALSE(scalar_corollary(testing::constant_scalar_family(1, 1.5, -0.5)).has_value());

  // integer shift of the family shifts the window but not the count
  const auto shifted = testing::constant_scalar_family(1, 2.5, 4.5);
  const auto cs = scalar_corollary(shifted);
  REQUIRE(cs.has_value());
  CHECK(cs->count_lower_bound == 2);
}

TEST_CASE("spectral flow dominates the certificate bound") {
  std::mt19937_64 rng(89);
  const auto fam = testing::perturbed_scalar_family(rng, 1, -0.4, 1.3, 2, 0.05);
  const auto cert = scalar_corollary(fam);
  REQUIRE(cert.has_value());
  const FourierBasisSpec spec{1, 8};
  const auto path = make_hessian_path(spec, fam, default_quad_points(spec, 2));
  const long flow = spectral_flow(path).value;
  CHECK(flow / 2 >= cert->count_lower_bound);  // 2n = 2 kernel dimensions per crossing
}
