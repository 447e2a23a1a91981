#include "sfb/monodromy.hpp"

#include <algorithm>

#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>

namespace sfb {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double golden_minimize(const std::function<double(double)>& f, double a, double b, double width) {
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > width) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - phi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + phi * (b - a);
      f2 = f(x2);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

MonodromyResult integrate_fundamental(const MatrixFamilyPath& fam, double lambda,
                                      const MonodromyOptions& opts) {
  if (opts.steps < 64) throw std::invalid_argument("integrate_fundamental: steps must be >= 64");
  const std::size_t d = fam.dim();
  const Matrix j = symplectic_J(fam.half_dim());
  const TrigMatrixPolynomial poly = fam.at_lambda(lambda);
  auto rhs = [&](double t, const Matrix& x) { return j * poly.evaluate(t).matrix() * x; };

  const double h = kTwoPi / static_cast<double>(opts.steps);
  Matrix x = Matrix::identity(d);
  for (std::size_t i = 0; i < opts.steps; ++i) {
    const double t = h * static_cast<double>(i);
    const Matrix k1 = rhs(t, x);
    const Matrix k2 = rhs(t + 0.5 * h, x + (0.5 * h) * k1);
    const Matrix k3 = rhs(t + 0.5 * h, x + (0.5 * h) * k2);
    const Matrix k4 = rhs(t + h, x + h * k3);
    x += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }

  MonodromyResult res;
  res.lambda = lambda;
  res.m = x;
  res.symplectic_residual = (x.transpose() * j * x - j).inf_norm();
  const Matrix mi = x - Matrix::identity(d);
  res.det_mi = det(mi);
  const double tol = opts.tol * (1.0 + x.inf_norm());
  const auto sv = singular_values(mi);
  res.kernel_dim = 0;
  for (double s : sv)
    if (s <= tol) ++res.kernel_dim;
  res.steps = opts.steps;
  return res;
}

std::pair<bool, bool> endpoint_invertibility(const MatrixFamilyPath& fam,
                                             const MonodromyOptions& opts) {
  return {integrate_fundamental(fam, 0.0, opts).kernel_dim == 0,
          integrate_fundamental(fam, 1.0, opts).kernel_dim == 0};
}

std::vector<SingularLambda> scan_lambda(const MatrixFamilyPath& fam, std::size_t lambda_grid,
                                        const MonodromyOptions& opts) {
  if (lambda_grid < 16) throw std::invalid_argument("scan_lambda: lambda_grid must be >= 16");
  const std::size_t d = fam.dim();
  auto gap = [&](double lam) {
    const MonodromyResult r = integrate_fundamental(fam, lam, opts);
    return singular_values(r.m - Matrix::identity(d)).front();
  };

  const std::size_t g = lambda_grid;
  std::vector<double> lam(g + 1), gv(g + 1), dv(g + 1);
  for (std::size_t i = 0; i <= g; ++i) {
    lam[i] = static_cast<double>(i) / static_cast<double>(g);
    const MonodromyResult r = integrate_fundamental(fam, lam[i], opts);
    gv[i] = singular_values(r.m - Matrix::identity(d)).front();
    dv[i] = r.det_mi;
  }

  // refine promising local minima; endpoints count when already near zero.
  // After a zero is located, both flanks of its bracket are searched again so
  // that a nearby second zero inside the same bracket is not swallowed.
  const double refine_threshold = 0.3;
  std::vector<double> candidates;
  auto detmi = [&](double l) { return integrate_fundamental(fam, l, opts).det_mi; };
  // Flank search: an odd-multiplicity zero flips the sign of det(M - I), so a
  // remaining zero next to an already-found one is located by det bisection
  // (golden search would stall at the flank edge adjoining the found zero).
  std::function<void(double, double, int)> hunt_det = [&](double a, double b, int depth) {
    if (b - a < 1e-7 || depth > 6) return;
    double lo = a, hi = b, dlo = detmi(a);
    const double dhi = detmi(b);
    if (dlo == 0.0 || dhi == 0.0 || (dlo > 0.0) == (dhi > 0.0)) return;
    while (hi - lo > 1e-8) {
      const double mid = 0.5 * (lo + hi), dm = detmi(mid);
      if (dm == 0.0) {
        lo = hi = mid;
        break;
      }
      if ((dm > 0.0) == (dlo > 0.0)) {
        lo = mid;
        dlo = dm;
      } else {
        hi = mid;
      }
    }
    const double z = 0.5 * (lo + hi);
    candidates.push_back(z);
    hunt_det(a, z - 1e-6, depth + 1);
    hunt_det(z + 1e-6, b, depth + 1);
  };
  std::function<void(double, double, int)> hunt = [&](double a, double b, int depth) {
    if (b - a < 1e-7 || depth > 4) return;
    const double lstar = golden_minimize(gap, a, b, 1e-8);
    if (integrate_fundamental(fam, lstar, opts).kernel_dim == 0) return;
    candidates.push_back(lstar);
    const double w = 1e-6;
    hunt_det(a, lstar - w, depth + 1);
    hunt_det(lstar + w, b, depth + 1);
  };
  for (std::size_t i = 0; i <= g; ++i) {
    const bool left_ok = i == 0 || gv[i] <= gv[i - 1];
    const bool right_ok = i == g || gv[i] <= gv[i + 1];
    if (!(left_ok && right_ok) || gv[i] >= refine_threshold) continue;
    hunt(i == 0 ? 0.0 : lam[i - 1], i == g ? 1.0 : lam[i + 1], 0);
  }
  // odd-multiplicity zeros without a grid local minimum of their own still
  // flip the sign of det(M - I) across their grid interval
  for (std::size_t i = 0; i < g; ++i)
    if (dv[i] != 0.0 && dv[i + 1] != 0.0 && (dv[i] > 0.0) != (dv[i + 1] > 0.0))
      hunt_det(lam[i], lam[i + 1], 0);
  std::sort(candidates.begin(), candidates.end());

  std::vector<SingularLambda> out;
  for (double lstar : candidates) {
    const MonodromyResult r = integrate_fundamental(fam, lstar, opts);
    if (r.kernel_dim == 0) continue;
    if (!out.empty() && std::fabs(out.back().lambda - lstar) <= 1e-7) continue;
    out.push_back({lstar, r.kernel_dim});
  }
  return out;
}

}  // namespace sfb
