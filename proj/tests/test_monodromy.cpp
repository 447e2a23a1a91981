#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "sfb/monodromy.hpp"
#include "test_support.hpp"

using namespace sfb;

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

TEST_CASE("constant scalar coefficient: closed-form monodromy") {
  // c = 1: M = exp(2 pi J) = I, full kernel
  const auto one = testing::constant_scalar_family(1, 1.0, 1.0);
  const auto r1 = integrate_fundamental(one, 0.5);
  CHECK((r1.m - Matrix::identity(2)).inf_norm() <= 1e-9);
  CHECK(r1.kernel_dim == 2);
  CHECK(std::fabs(r1.det_mi) <= 1e-9);

  // c = 0.5: M = -I, det(M - I) = 4
  const auto half = testing::constant_scalar_family(1, 0.5, 0.5);
  const auto rh = integrate_fundamental(half, 0.0);
  CHECK((rh.m + Matrix::identity(2)).inf_norm() <= 1e-9);
  CHECK(rh.kernel_dim == 0);
  CHECK(rh.det_mi == doctest::Approx(4.0));

  // c = 0: M = I trivially
  const auto zero = testing::constant_scalar_family(1, 0.0, 0.0);
  const auto r0 = integrate_fundamental(zero, 0.0);
  CHECK((r0.m - Matrix::identity(2)).inf_norm() <= 1e-12);
  CHECK(r0.kernel_dim == 2);

  // general c: M = exp(2 pi c J)
  for (double c : {0.3, -0.7, 1.4}) {
    const auto fam = testing::constant_scalar_family(2, c, c);
    const auto r = integrate_fundamental(fam, 0.25);
    CHECK((r.m - exp_cJ(c, kTwoPi, 2)).inf_norm() <= 1e-8);
  }
}

TEST_CASE("endpoint invertibility") {
  const auto reg = testing::constant_scalar_family(1, -0.5, 1.5);
  const auto [left, right] = endpoint_invertibility(reg);
  CHECK(left);
  CHECK(right);

  const auto sing = testing::constant_scalar_family(1, 0.0, 0.5);
  const auto [l2, r2] = endpoint_invertibility(sing);
  CHECK_FALSE(l2);
  CHECK(r2);
}

TEST_CASE("scan_lambda finds integer crossings of a scalar ramp") {
  // c(lambda) = 4 lambda - 0.5 crosses the integers 0, 1, 2, 3
  const auto fam = testing::constant_scalar_family(1, -0.5, 3.5);
  const auto found = scan_lambda(fam, 64);
  REQUIRE(found.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) {
    const double expected = (static_cast<double>(i) + 0.5) / 4.0;
    CHECK(found[i].lambda == doctest::Approx(expected).epsilon(1e-6));
    CHECK(found[i].kernel_dim == 2);
  }

  // crossing-free window
  CHECK(scan_lambda(testing::constant_scalar_family(1, 0.1, 0.9), 64).empty());
}

TEST_CASE("monodromy of random families is symplectic with det 1") {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 4; ++trial) {
    const auto fam = testing::perturbed_scalar_family(rng, 1, -0.4, 1.2, 2, 0.15);
    const auto r = integrate_fundamental(fam, 0.3 * trial);
    CHECK(r.symplectic_residual <= 1e-8);
    CHECK(det(r.m) == doctest::Approx(1.0).epsilon(1e-8));
  }
}

TEST_CASE("step halving shows fourth-order convergence") {
  std::mt19937_64 rng(67);
  const auto fam = testing::perturbed_scalar_family(rng, 1, 0.2, 0.9, 2, 0.2);
  const Matrix ref = integrate_fundamental(fam, 0.5, {8192, 1e-7}).m;
  const double e1 = (integrate_fundamental(fam, 0.5, {128, 1e-7}).m - ref).inf_norm();
  const double e2 = (integrate_fundamental(fam, 0.5, {256, 1e-7}).m - ref).inf_norm();
  REQUIRE(e2 > 0.0);
  const double order = std::log2(e1 / e2);
  CHECK(order >= 3.7);
}

TEST_CASE("input validation") {
  const auto fam = testing::constant_scalar_family(1, 0.2, 0.2);
  CHECK_THROWS_AS(integrate_fundamental(fam, 0.0, {32, 1e-7}), std::invalid_argument);
  CHECK_THROWS_AS(scan_lambda(fam, 8), std::invalid_argument);
}
