#include "gwspin/quadrature.hpp"

#include <cmath>
#include <string>

namespace gwspin {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Orthonormal Hermite value h_n(x) and h_{n-1}(x) for weight exp(-x^2).
void hermite_pair(int n, double x, double& hn, double& hnm1) {
  double p0 = std::pow(kPi, -0.25);
  double p1 = std::sqrt(2.0) * x * p0;
  if (n == 0) {
    hn = p0;
    hnm1 = 0.0;
    return;
  }
  for (int j = 1; j < n; ++j) {
    const double p2 = x * std::sqrt(2.0 / (j + 1.0)) * p1 - std::sqrt(j / (j + 1.0)) * p0;
    p0 = p1;
    p1 = p2;
  }
  hn = p1;
  hnm1 = p0;
}

}  // namespace

GaussHermite gauss_hermite(int order) {
  if (order < 1) {
    throw std::invalid_argument("Gauss-Hermite order must be >= 1");
  }
  GaussHermite q;
  q.nodes.assign(order, 0.0);
  q.weights.assign(order, 0.0);

  const int half = (order + 1) / 2;
  std::vector<double> roots(half, 0.0);
  for (int i = 0; i < half; ++i) {
    // Initial guesses for successive roots, largest first.
    double z;
    if (i == 0) {
      z = std::sqrt(2.0 * order + 1.0) - 1.85575 * std::pow(2.0 * order + 1.0, -1.0 / 6.0);
    } else if (i == 1) {
      z = roots[0] - 1.14 * std::pow(order, 0.426) / roots[0];
    } else if (i == 2) {
      z = 1.86 * roots[1] - 0.86 * roots[0];
    } else if (i == 3) {
      z = 1.91 * roots[2] - 0.91 * roots[1];
    } else {
      z = 2.0 * roots[i - 1] - roots[i - 2];
    }
    double hn = 0.0, hnm1 = 0.0;
    bool converged = false;
    for (int it = 0; it < 100; ++it) {
      hermite_pair(order, z, hn, hnm1);
      const double dh = std::sqrt(2.0 * order) * hnm1;  // h_n'(z)
      const double dz = hn / dh;
      z -= dz;
      if (std::abs(dz) <= 1e-15 * (1.0 + std::abs(z))) {
        converged = true;
        break;
      }
    }
    if (!converged) {
      throw numerical_error("Gauss-Hermite root refinement stalled at order " +
                            std::to_string(order) + ", root " + std::to_string(i));
    }
    roots[i] = z;
    hermite_pair(order, z, hn, hnm1);
    const double dh = std::sqrt(2.0 * order) * hnm1;
    const double w = 2.0 / (dh * dh);
    q.nodes[i] = z;
    q.weights[i] = w;
    q.nodes[order - 1 - i] = -z;
    q.weights[order - 1 - i] = w;
  }
  if (order % 2 == 1) q.nodes[half - 1] = 0.0;
  return q;
}

double simpson(const std::function<double(double)>& f, double a, double b, int panels) {
  if (panels < 1) {
    throw std::invalid_argument("Simpson rule needs at least one panel");
  }
  const int n = 2 * panels;
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) {
    s += f(a + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
  }
  return s * h / 3.0;
}

namespace {

double adaptive_step(const std::function<double(double)>& f, double a, double b, double fa,
                     double fm, double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double h = b - a;
  const double left = (h / 12.0) * (fa + 4.0 * flm + fm);
  const double right = (h / 12.0) * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (std::abs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  if (depth <= 0) {
    throw numerical_error("adaptive Simpson failed to converge on [" + std::to_string(a) + ", " +
                          std::to_string(b) + "], residual " + std::to_string(std::abs(delta)));
  }
  return adaptive_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol,
                        int max_depth) {
  if (a == b) return 0.0;
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  const double whole = ((b - a) / 6.0) * (fa + 4.0 * fm + fb);
  const double scaled = tol * (1.0 + std::abs(whole));
  return adaptive_step(f, a, b, fa, fm, fb, whole, scaled, max_depth);
}

}  // namespace gwspin
