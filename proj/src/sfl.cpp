#include "sfb/sfl.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace sfb {

namespace {

SymMatrix shifted(const SymMatrix& m, double delta) {
  Matrix s = m.matrix();
  for (std::size_t i = 0; i < s.rows(); ++i) s(i, i) += delta;
  return SymMatrix(s, 1e-8);
}

/// Signed eigenvalue of smallest magnitude.
double smallest_eig(const SymMatrix& m) {
  const auto dec = eig_sym(m);
  double best = dec.eigenvalues.front();
  for (double mu : dec.eigenvalues)
    if (std::fabs(mu) < std::fabs(best)) best = mu;
  return best;
}

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

OperatorPath make_hessian_path(const FourierBasisSpec& spec, const MatrixFamilyPath& fam,
                               std::size_t quad_points) {
  OperatorPath path;
  path.dim = spec.dim();
  path.kinks = fam.interior_knots();
  path.matrix = [spec, fam, quad_points](double lam) {
    return assemble_L(spec, fam, lam, 0.0, quad_points).matrix;
  };
  path.derivative = [spec, fam, quad_points](double lam) {
    const TrigMatrixPolynomial dpoly = fam.derivative_poly(lam);
    return assemble_mult_normalized(
        spec, [&dpoly](double t) { return dpoly.evaluate(t); }, quad_points);
  };
  return path;
}

OperatorPath make_homotopy_edge(const FourierBasisSpec& spec, const MatrixFamilyPath& fam,
                                const SymMatrix& c0, const SymMatrix& c1, HomotopyEdge edge,
                                std::size_t quad_points) {
  OperatorPath path;
  path.dim = spec.dim();
  switch (edge) {
    case HomotopyEdge::bottom:
      path = make_hessian_path(spec, fam, quad_points);
      break;
    case HomotopyEdge::top:
      path.matrix = [=](double sig) {
        return assemble_homotopy(spec, fam, c0, c1, sig, 1.0, 0.0, quad_points).matrix;
      };
      path.derivative = [=](double) {
        const SymMatrix dc = c1 - c0;
        return assemble_mult_normalized(
            spec, [&dc](double) { return dc; }, quad_points);
      };
      break;
    case HomotopyEdge::left:
      path.matrix = [=](double sig) {
        return assemble_homotopy(spec, fam, c0, c1, 0.0, sig, 0.0, quad_points).matrix;
      };
      path.derivative = [=](double) {
        const TrigMatrixPolynomial a0 = fam.at_lambda(0.0);
        return assemble_mult_normalized(
            spec, [&](double t) { return c0 - a0.evaluate(t); }, quad_points);
      };
      break;
    case HomotopyEdge::right:
      path.matrix = [=](double sig) {
        return assemble_homotopy(spec, fam, c0, c1, 1.0, sig, 0.0, quad_points).matrix;
      };
      path.derivative = [=](double) {
        const TrigMatrixPolynomial a1 = fam.at_lambda(1.0);
        return assemble_mult_normalized(
            spec, [&](double t) { return c1 - a1.evaluate(t); }, quad_points);
      };
      break;
  }
  return path;
}

std::vector<double> detect_crossings(const OperatorPath& path, double delta,
                                     std::size_t lambda_grid, double tol_kernel) {
  if (lambda_grid < 16) throw std::invalid_argument("detect_crossings: lambda_grid must be >= 16");
  // Signed smallest-magnitude eigenvalue and Morse index in one decomposition.
  // Crossings are bracketed by Morse-index jumps: the smallest-magnitude
  // eigenvalue alone can flip sign when the branch closest to zero switches,
  // and it cannot separate two nearby crossings on the same grid interval.
  struct Probe {
    double s;
    std::size_t morse;
  };
  auto probe = [&](double lam) {
    const auto dec = eig_sym(shifted(path.matrix(lam), delta));
    Probe p{dec.eigenvalues.front(), 0};
    for (double mu : dec.eigenvalues) {
      if (std::fabs(mu) < std::fabs(p.s)) p.s = mu;
      if (mu < -tol_kernel) ++p.morse;
    }
    return p;
  };
  auto s = [&](double lam) { return probe(lam).s; };

  const std::size_t g = lambda_grid;
  std::vector<double> lam(g + 1), sv(g + 1);
  std::vector<std::size_t> mi(g + 1);
  for (std::size_t i = 0; i <= g; ++i) {
    lam[i] = static_cast<double>(i) / static_cast<double>(g);
    const Probe p = probe(lam[i]);
    sv[i] = p.s;
    mi[i] = p.morse;
  }

  std::vector<double> found;
  std::vector<bool> is_zero(g + 1, false);
  for (std::size_t i = 0; i <= g; ++i) {
    if (std::fabs(sv[i]) <= tol_kernel) {
      is_zero[i] = true;
      found.push_back(lam[i]);
    }
  }
  const double refine_width = 1e-10;
  std::function<void(double, std::size_t, double, std::size_t)> split =
      [&](double a, std::size_t ma, double b, std::size_t mb) {
        if (b - a <= refine_width) {
          found.push_back(0.5 * (a + b));
          return;
        }
        const double mid = 0.5 * (a + b);
        const std::size_t mm = probe(mid).morse;
        if (mm != ma) split(a, ma, mid, mm);
        if (mm != mb) split(mid, mm, b, mb);
      };
  for (std::size_t i = 0; i < g; ++i) {
    if (is_zero[i] || is_zero[i + 1]) continue;
    if (mi[i] != mi[i + 1]) split(lam[i], mi[i], lam[i + 1], mi[i + 1]);
  }
  // near-zero interior minima without a sign change (touching crossings)
  const double minima_threshold = std::max(std::sqrt(tol_kernel), 1e-3);
  for (std::size_t i = 1; i < g; ++i) {
    if (is_zero[i - 1] || is_zero[i] || is_zero[i + 1]) continue;
    if (std::fabs(sv[i]) < minima_threshold && std::fabs(sv[i]) <= std::fabs(sv[i - 1]) &&
        std::fabs(sv[i]) <= std::fabs(sv[i + 1]) && sv[i - 1] * sv[i] > 0.0 &&
        sv[i] * sv[i + 1] > 0.0) {
      const double lstar = golden_minimize([&](double x) { return std::fabs(s(x)); }, lam[i - 1],
                                           lam[i + 1], refine_width);
      if (std::fabs(s(lstar)) <= tol_kernel) found.push_back(lstar);
    }
  }

  std::sort(found.begin(), found.end());
  std::vector<double> merged;
  for (double x : found) {
    if (!merged.empty() && x - merged.back() <= 1e-8) continue;
    merged.push_back(x);
  }
  return merged;
}

CrossingForm crossing_form(const OperatorPath& path, double lambda_star,
                           const std::vector<std::vector<double>>& kernel, double d_lambda) {
  if (kernel.empty()) throw std::invalid_argument("crossing_form: empty kernel");
  const std::size_t d = kernel.front().size();
  const std::size_t m = kernel.size();

  bool near_kink = lambda_star < d_lambda || lambda_star > 1.0 - d_lambda;
  for (double k : path.kinks)
    if (std::fabs(lambda_star - k) < d_lambda) near_kink = true;

  Matrix fd(d, d);
  if (near_kink) {
    // one-sided difference into the adjacent smooth segment
    const double h = d_lambda;
    if (lambda_star <= 1.0 - h) {
      fd = (1.0 / h) * (path.matrix(lambda_star + h).matrix() - path.matrix(lambda_star).matrix());
    } else {
      fd = (1.0 / h) * (path.matrix(lambda_star).matrix() - path.matrix(lambda_star - h).matrix());
    }
  } else {
    const double h = d_lambda;
    fd = (0.5 / h) *
         (path.matrix(lambda_star + h).matrix() - path.matrix(lambda_star - h).matrix());
  }

  Matrix deriv = fd;
  if (path.derivative) {
    deriv = path.derivative(lambda_star);
    const double scale = 1.0 + deriv.inf_norm();
    if ((deriv - fd).inf_norm() > 1e-6 * scale)
      throw std::runtime_error(
          "crossing_form: analytic and finite-difference path derivatives disagree");
  }

  Matrix form_raw(m, m);
  for (std::size_t j = 0; j < m; ++j) {
    std::vector<double> dv(d, 0.0);
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c) dv[r] += deriv(r, c) * kernel[j][c];
    for (std::size_t i = 0; i < m; ++i) {
      double v = 0.0;
      for (std::size_t r = 0; r < d; ++r) v += kernel[i][r] * dv[r];
      form_raw(i, j) = v;
    }
  }
  // symmetrize rounding noise
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      const double v = 0.5 * (form_raw(i, j) + form_raw(j, i));
      form_raw(i, j) = v;
      form_raw(j, i) = v;
    }
  const auto dec = eig_sym_raw(form_raw);
  const double tol_form = 1e-8 * (1.0 + form_raw.inf_norm());
  int pos = 0, neg = 0;
  bool regular = true;
  for (double mu : dec.eigenvalues) {
    if (mu > tol_form) {
      ++pos;
    } else if (mu < -tol_form) {
      ++neg;
    } else {
      regular = false;
    }
  }
  return CrossingForm{form_raw, pos - neg, regular};
}

namespace {

struct Attempt {
  std::vector<Crossing> crossings;
  bool all_regular = true;
};

std::vector<std::vector<double>> kernel_of(const SymMatrix& m, double tol) {
  const auto dec = eig_sym(m);
  std::vector<std::vector<double>> basis;
  for (std::size_t j = 0; j < m.dim(); ++j) {
    if (std::fabs(dec.eigenvalues[j]) <= tol) {
      std::vector<double> v(m.dim());
      for (std::size_t i = 0; i < m.dim(); ++i) v[i] = dec.eigenvectors(i, j);
      basis.push_back(std::move(v));
    }
  }
  return basis;
}

Attempt analyze(const OperatorPath& path, double delta, const SflOptions& opts) {
  Attempt out;
  const auto candidates = detect_crossings(path, delta, opts.lambda_grid, opts.tol_kernel);
  for (double lstar : candidates) {
    // Candidates from Morse-index bisection sit where an eigenvalue equals
    // -tol_kernel; widen the window so that eigenvalue is always captured.
    auto kernel = kernel_of(shifted(path.matrix(lstar), delta), 10.0 * opts.tol_kernel);
    if (kernel.empty()) continue;
    const CrossingForm cf = crossing_form(path, lstar, kernel, opts.fd_step);
    Crossing c{lstar,        kernel.size(), cf.form,
               cf.signature, cf.regular,    lstar <= opts.merge_tol,
               lstar >= 1.0 - opts.merge_tol};
    if (!cf.regular) out.all_regular = false;
    out.crossings.push_back(std::move(c));
  }
  return out;
}

int morse_of_form(const Matrix& form, bool negate) {
  const auto dec = eig_sym_raw(form);
  const double tol = 1e-8 * (1.0 + form.inf_norm());
  int count = 0;
  for (double mu : dec.eigenvalues) {
    const double v = negate ? -mu : mu;
    if (v < -tol) ++count;
  }
  return count;
}

}  // namespace

SflResult spectral_flow(const OperatorPath& path, const SflOptions& opts) {
  const double s0 = smallest_eig(path.matrix(0.0));
  const double s1 = smallest_eig(path.matrix(1.0));
  if (std::fabs(s0) <= opts.tol_kernel || std::fabs(s1) <= opts.tol_kernel)
    throw EndpointSingularError("spectral_flow: path endpoint is singular at delta = 0");

  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> draw(opts.tol_kernel * 10.0, opts.tol_kernel * 100.0);

  for (int attempt = 0; attempt <= opts.max_retries; ++attempt) {
    double delta;
    if (attempt == 0) {
      delta = opts.delta.value_or(0.0);
    } else {
      delta = draw(rng);
    }
    const Attempt res = analyze(path, delta, opts);
    if (!res.all_regular) continue;

    long value = 0;
    for (const Crossing& c : res.crossings) {
      if (c.at_left_endpoint) {
        value -= morse_of_form(c.form, false);
      } else if (c.at_right_endpoint) {
        value += morse_of_form(c.form, true);
      } else {
        value += c.signature;
      }
    }
    SflResult out;
    out.value = value;
    out.crossings = res.crossings;
    out.delta_used = delta;
    out.lambda_grid = opts.lambda_grid;
    out.all_regular = true;
    out.seed = opts.seed;
    out.retries = attempt;
    return out;
  }
  throw RetriesExhaustedError("spectral_flow: delta-regularization retries exhausted");
}

long crossing_sum_positive(const OperatorPath& path, const SflOptions& opts) {
  const SflResult res = spectral_flow(path, opts);
  for (const Crossing& c : res.crossings)
    if (!(c.regular && c.signature == static_cast<int>(c.kernel_dim)))
      return res.value;  // fallback: a crossing form is not positive definite
  long sum = 0;
  for (const Crossing& c : res.crossings)
    if (c.lambda > opts.merge_tol) sum += static_cast<long>(c.kernel_dim);
  return sum;
}

}  // namespace sfb
