#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "sfb/sfl.hpp"
#include "test_support.hpp"

using namespace sfb;

namespace {

OperatorPath scalar_path(std::size_t n, double c0, double c1, std::size_t cutoff) {
  const FourierBasisSpec spec{n, cutoff};
  const auto fam = testing::constant_scalar_family(n, c0, c1);
  return make_hessian_path(spec, fam, default_quad_points(spec, 0));
}

}  // namespace

TEST_CASE("detect_crossings on scalar families") {
  const auto flat = scalar_path(1, 0.3, 0.3, 8);
  CHECK(detect_crossings(flat, 0.0, 64, 1e-7).empty());

  // c(lambda) = -0.5 + 2 lambda is singular at c = 0 and c = 1
  const auto ramp = scalar_path(1, -0.5, 1.5, 8);
  const auto found = detect_crossings(ramp, 0.0, 64, 1e-7);
  REQUIRE(found.size() == 2);
  CHECK(std::fabs(found[0] - 0.25) <= 1e-6);
  CHECK(std::fabs(found[1] - 0.75) <= 1e-6);

  CHECK_THROWS_AS(detect_crossings(ramp, 0.0, 8, 1e-7), std::invalid_argument);
}

TEST_CASE("spectral flow of the scalar ramp") {
  const auto ramp = scalar_path(1, -0.5, 1.5, 8);
  const auto res = spectral_flow(ramp);
  CHECK(res.value == 4);
  REQUIRE(res.crossings.size() == 2);
  for (const auto& c : res.crossings) {
    CHECK(c.kernel_dim == 2);
    CHECK(c.signature == 2);
    CHECK(c.regular);
    CHECK_FALSE(c.at_left_endpoint);
    CHECK_FALSE(c.at_right_endpoint);
  }
  CHECK(std::fabs(res.crossings[0].lambda - 0.25) <= 1e-6);
  CHECK(std::fabs(res.crossings[1].lambda - 0.75) <= 1e-6);
  CHECK(res.delta_used == 0.0);
  CHECK(res.retries == 0);
  CHECK(res.all_regular);
  CHECK(res.lambda_grid == 64);
}

TEST_CASE("orientation reversal flips the sign") {
  const auto rev = scalar_path(1, 1.5, -0.5, 8);
  CHECK(spectral_flow(rev).value == -4);
}

TEST_CASE("additivity under concatenation") {
  // split the ramp at lambda = 0.5 (c = 0.5 there, invertible)
  const auto whole = scalar_path(1, -0.5, 1.5, 8);
  const auto first = scalar_path(1, -0.5, 0.5, 8);
  const auto second = scalar_path(1, 0.5, 1.5, 8);
  CHECK(spectral_flow(first).value + spectral_flow(second).value == spectral_flow(whole).value);
  CHECK(spectral_flow(first).value == 2);
  CHECK(spectral_flow(second).value == 2);
}

TEST_CASE("invariance under the shift parameter") {
  const auto ramp = scalar_path(1, -0.5, 1.5, 8);
  for (double d : {1e-4, 5e-4}) {
    SflOptions opts;
    opts.delta = d;
    const auto res = spectral_flow(ramp, opts);
    CHECK(res.value == 4);
    CHECK(res.delta_used == d);
  }
}

TEST_CASE("singular endpoints are rejected") {
  CHECK_THROWS_AS(spectral_flow(scalar_path(1, 0.0, 0.5, 8)), EndpointSingularError);
  CHECK_THROWS_AS(spectral_flow(scalar_path(1, 0.3, 1.0, 8)), EndpointSingularError);
}

TEST_CASE("crossing_sum_positive") {
  // increasing path: positive definite forms, sum of kernel dimensions
  CHECK(crossing_sum_positive(scalar_path(1, -0.5, 1.5, 8)) == 4);
  // decreasing path: falls back to the signed spectral flow
  CHECK(crossing_sum_positive(scalar_path(1, 1.5, -0.5, 8)) == -4);
}

TEST_CASE("spectral flow of a perturbed family matches its scalar backbone") {
  std::mt19937_64 rng(71);
  const FourierBasisSpec spec{1, 8};
  const auto fam = testing::perturbed_scalar_family(rng, 1, -0.4, 1.3, 2, 0.05);
  const auto path = make_hessian_path(spec, fam, default_quad_points(spec, 2));
  CHECK(spectral_flow(path).value == 4);
}

TEST_CASE("homotopy rectangle identity") {
  std::mt19937_64 rng(73);
  const FourierBasisSpec spec{1, 8};
  const auto fam = testing::perturbed_scalar_family(rng, 1, -0.4, 1.3, 2, 0.1);
  const SymMatrix c0 = SymMatrix::scaled_identity(2, -0.45);
  const SymMatrix c1 = SymMatrix::scaled_identity(2, 1.3);
  const std::size_t quad = default_quad_points(spec, fam.max_freq());

  const long bottom =
      spectral_flow(make_homotopy_edge(spec, fam, c0, c1, HomotopyEdge::bottom, quad)).value;
  const long left =
      spectral_flow(make_homotopy_edge(spec, fam, c0, c1, HomotopyEdge::left, quad)).value;
  const long top =
      spectral_flow(make_homotopy_edge(spec, fam, c0, c1, HomotopyEdge::top, quad)).value;
  const long right =
      spectral_flow(make_homotopy_edge(spec, fam, c0, c1, HomotopyEdge::right, quad)).value;

  CHECK(bottom == left + top - right);
  CHECK(top == 4);  // the constant comparison path crosses the integers 0 and 1
}
