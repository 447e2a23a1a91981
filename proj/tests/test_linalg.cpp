#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "sfb/linalg.hpp"
#include "test_support.hpp"

using namespace sfb;

namespace {

SymMatrix diag(const std::vector<double>& d) {
  Matrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return SymMatrix(m);
}

}  // namespace

TEST_CASE("eig_sym on simple inputs") {
  const auto id = eig_sym(SymMatrix::identity(4));
  for (double mu : id.eigenvalues) CHECK(mu == doctest::Approx(1.0));

  const auto d = eig_sym(diag({3, -1, 0, 2}));
  CHECK(d.eigenvalues[0] == doctest::Approx(-1.0));
  CHECK(d.eigenvalues[1] == doctest::Approx(0.0));
  CHECK(d.eigenvalues[2] == doctest::Approx(2.0));
  CHECK(d.eigenvalues[3] == doctest::Approx(3.0));
}

TEST_CASE("SymMatrix rejects skew and odd inputs") {
  CHECK_THROWS_AS(SymMatrix(symplectic_J(1)), std::invalid_argument);
  CHECK_THROWS_AS(SymMatrix(Matrix(3, 3)), std::invalid_argument);
  CHECK_THROWS_AS(SymMatrix(Matrix(0, 0)), std::invalid_argument);
  CHECK_THROWS_AS(SymMatrix(Matrix(2, 4)), std::invalid_argument);
}

TEST_CASE("eig_sym reconstruction on random matrices") {
  std::mt19937_64 rng(7);
  for (std::size_t dim : {2, 8, 24, 64}) {
    const SymMatrix a = testing::random_sym(rng, dim, 3.0);
    const auto dec = eig_sym(a);
    const Matrix& v = dec.eigenvectors;
    CHECK((v * v.transpose() - Matrix::identity(dim)).inf_norm() <= 1e-10);
    Matrix d(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) d(i, i) = dec.eigenvalues[i];
    CHECK((a.matrix() - v * d * v.transpose()).inf_norm() <= 1e-9 * (1.0 + a.inf_norm()));
    for (std::size_t i = 0; i + 1 < dim; ++i)
      CHECK(dec.eigenvalues[i] <= dec.eigenvalues[i + 1]);
  }
}

TEST_CASE("morse_index") {
  CHECK(morse_index(SymMatrix::identity(4), 1e-9) == 0);
  CHECK(morse_index(SymMatrix::scaled_identity(4, -1.0), 1e-9) == 4);
  CHECK(morse_index(diag({-2, -1, 0, 3}), 1e-9) == 2);
  CHECK_THROWS_AS(morse_index(SymMatrix::identity(2), -1.0), std::invalid_argument);
}

TEST_CASE("morse index complementarity on random matrices") {
  std::mt19937_64 rng(11);
  const double tol = 1e-9;
  for (int trial = 0; trial < 10; ++trial) {
    const SymMatrix a = testing::random_sym(rng, 8, 2.0);
    std::size_t zero = 0;
    for (double mu : eig_sym(a).eigenvalues)
      if (std::fabs(mu) <= tol) ++zero;
    CHECK(morse_index(a, tol) + morse_index(-1.0 * a, tol) + zero == a.dim());
  }
}

TEST_CASE("loewner_leq") {
  const SymMatrix i2 = SymMatrix::identity(2);
  CHECK(loewner_leq(i2, SymMatrix::scaled_identity(2, 2.0), 1e-9));
  CHECK_FALSE(loewner_leq(diag({1, 3}), diag({2, 2}), 1e-9));
  CHECK(loewner_leq(i2, i2, 1e-9));  // reflexive
  CHECK_THROWS_AS(loewner_leq(i2, SymMatrix::identity(4), 1e-9), std::invalid_argument);
}

TEST_CASE("loewner order properties") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 8; ++trial) {
    const SymMatrix a = testing::random_sym(rng, 4, 1.0);
    const SymMatrix p = testing::random_sym(rng, 4, 1.0);
    const SymMatrix psd(p.matrix() * p.matrix().transpose(), 1e-8);
    const SymMatrix b = a + psd;
    const SymMatrix c = b + psd;
    CHECK(loewner_leq(a, b, 1e-9));
    CHECK(loewner_leq(a, c, 1e-9));  // transitivity along the chain
    if (psd.inf_norm() > 1e-6) CHECK_FALSE(loewner_leq(b, a, 1e-9));
  }
}

TEST_CASE("commutes_with_J") {
  CHECK(commutes_with_J(SymMatrix::scaled_identity(4, 2.5), 1e-12));
  CHECK_FALSE(commutes_with_J(diag({1, 2}), 1e-9));

  // block form (A, B; -B, A) with A symmetric, B skew
  std::mt19937_64 rng(17);
  const std::size_t n = 3;
  std::uniform_real_distribution<double> u(-1, 1);
  Matrix a(n, n), b(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      const double v = u(rng);
      a(i, j) = v;
      a(j, i) = v;
      if (i != j) {
        const double w = u(rng);
        b(i, j) = w;
        b(j, i) = -w;
      }
    }
  Matrix c(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      c(i, j) = a(i, j);
      c(i, n + j) = b(i, j);
      c(n + i, j) = -b(i, j);
      c(n + i, n + j) = a(i, j);
    }
  CHECK(commutes_with_J(SymMatrix(c), 1e-12));
}

TEST_CASE("exp_cJ") {
  CHECK((exp_cJ(1.0, 2.0 * M_PI, 1) - Matrix::identity(2)).inf_norm() <= 1e-12);
  CHECK((exp_cJ(0.5, 2.0 * M_PI, 1) + Matrix::identity(2)).inf_norm() <= 1e-12);
  CHECK((exp_cJ(0.0, 17.3, 2) - Matrix::identity(4)).inf_norm() == 0.0);

  // group law
  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int trial = 0; trial < 10; ++trial) {
    const double c = u(rng), s = u(rng), t = u(rng);
    CHECK((exp_cJ(c, s, 2) * exp_cJ(c, t, 2) - exp_cJ(c, s + t, 2)).inf_norm() <= 1e-10);
  }

  // symplectic and orthogonal
  const Matrix m = exp_cJ(0.7, 1.3, 2);
  const Matrix j = symplectic_J(2);
  CHECK((m.transpose() * j * m - j).inf_norm() <= 1e-12);
  CHECK((m.transpose() * m - Matrix::identity(4)).inf_norm() <= 1e-12);
}

TEST_CASE("count_integers_half_open") {
  CHECK(count_integers_half_open(-0.5, 1.5) == 2);
  CHECK(count_integers_half_open(0.0, 1.0) == 1);
  CHECK(count_integers_half_open(0.2, 0.9) == 0);
  CHECK(count_integers_half_open(1.0, 1.0) == 0);
  CHECK(count_integers_half_open(1.0 - 1e-14, 1.0, 1e-12) == 0);
  CHECK_THROWS_AS(count_integers_half_open(1.0, 0.0), std::invalid_argument);
}

TEST_CASE("det and singular values") {
  CHECK(det(Matrix::identity(3)) == doctest::Approx(1.0));
  CHECK(det(symplectic_J(2)) == doctest::Approx(1.0));
  Matrix m(2, 2);
  m(0, 0) = 3.0;
  m(1, 1) = -2.0;
  CHECK(det(m) == doctest::Approx(-6.0));
  const auto sv = singular_values(m);
  CHECK(sv[0] == doctest::Approx(2.0));
  CHECK(sv[1] == doctest::Approx(3.0));
}
