#include "gwspin/crosscheck.hpp"

#include <cmath>

#include "gwspin/quadrature.hpp"

namespace gwspin::crosscheck {

namespace {

Event shifted(const Event& ev, int mu, double h) {
  Event out = ev;
  switch (mu) {
    case 0: out.t += h; break;
    case 1: out.x += h; break;
    case 2: out.y += h; break;
    case 3: out.z += h; break;
  }
  return out;
}

}  // namespace

std::array<Mat4, 4> metric_partials_fd(const Waveform& w, const Event& ev, double step) {
  std::array<Mat4, 4> dg{};
  for (int mu = 0; mu < 4; ++mu) {
    const Mat4 plus = metric_at(w, shifted(ev, mu, step)).g;
    const Mat4 minus = metric_at(w, shifted(ev, mu, -step)).g;
    for (int a = 0; a < 4; ++a) {
      for (int b = 0; b < 4; ++b) dg[mu][a][b] = (plus[a][b] - minus[a][b]) / (2.0 * step);
    }
  }
  return dg;
}

Christoffel christoffel_fd(const Waveform& w, const Event& ev, double step) {
  const auto ginv = metric_at(w, ev).inverse_diagonal();
  const auto dg = metric_partials_fd(w, ev, step);
  Christoffel c;
  for (int mu = 0; mu < 4; ++mu) {
    for (int nu = 0; nu < 4; ++nu) {
      for (int rho = 0; rho < 4; ++rho) {
        // Diagonal metric: the sigma sum collapses to sigma = mu.
        c.gamma[mu][nu][rho] =
            0.5 * ginv[mu] * (dg[nu][mu][rho] + dg[rho][mu][nu] - dg[mu][nu][rho]);
      }
    }
  }
  return c;
}

SpinConnection spin_connection_definitional(const Waveform& w, const Event& ev, double step) {
  const Vierbein vb = vierbein_at(w, ev);
  const Christoffel gamma = christoffel_at(w, ev);

  // Finite-difference derivatives of the coordinate-index vierbein e^lambda_b.
  std::array<Mat4, 4> de{};
  for (int mu = 0; mu < 4; ++mu) {
    const Mat4 plus = vierbein_at(w, shifted(ev, mu, step)).to_coord;
    const Mat4 minus = vierbein_at(w, shifted(ev, mu, -step)).to_coord;
    for (int lam = 0; lam < 4; ++lam) {
      for (int b = 0; b < 4; ++b) de[mu][lam][b] = (plus[lam][b] - minus[lam][b]) / (2.0 * step);
    }
  }

  SpinConnection s;
  for (int a = 0; a < 4; ++a) {
    for (int mu = 0; mu < 4; ++mu) {
      for (int b = 0; b < 4; ++b) {
        double cov = 0.0;
        for (int lam = 0; lam < 4; ++lam) {
          double nabla = de[mu][lam][b];
          for (int nu = 0; nu < 4; ++nu) nabla += gamma.gamma[lam][mu][nu] * vb.to_coord[nu][b];
          cov += vb.to_frame[a][lam] * nabla;
        }
        s.omega[a][mu][b] = cov;
      }
    }
  }
  return s;
}

double omega_simpson(const Waveform& w, const FrameParams& fp, double tau_i, double tau_f,
                     const LocalMomentum& k, int panels) {
  return simpson(
      [&](double tau) {
        const Event ev = trajectory(w, fp, tau);
        return wigner_generator(w, fp, ev, k)[1][3];
      },
      tau_i, tau_f, panels);
}

std::array<Mat2, 4> channel_images_quadrature(const WavePacket& p, const Waveform& w,
                                              const FrameParams& fp, double tau_i, double tau_f,
                                              int order) {
  p.validate();
  const auto gh = gauss_hermite(order);
  double wsum = 0.0;
  for (int i = 0; i < order; ++i) {
    for (int j = 0; j < order; ++j) wsum += gh.weights[i] * gh.weights[j];
  }

  std::array<Mat2, 4> images{};
  Mat2 basis[4];
  for (int jk = 0; jk < 4; ++jk) {
    basis[jk] = Mat2{};
    basis[jk][jk >> 1][jk & 1] = 1.0;
  }

  for (int i = 0; i < order; ++i) {
    for (int j = 0; j < order; ++j) {
      const LocalMomentum k{p.center.k1 + p.width * gh.nodes[i], 0.0,
                            p.center.k3 + p.width * gh.nodes[j]};
      const WignerAngle ang = omega(w, fp, tau_i, tau_f, k);
      const auto u = wigner_matrix(ang);
      const double wt = gh.weights[i] * gh.weights[j] / wsum;
      for (int jk = 0; jk < 4; ++jk) {
        for (int r = 0; r < 2; ++r) {
          for (int c = 0; c < 2; ++c) {
            double v = 0.0;
            for (int m = 0; m < 2; ++m) {
              for (int n = 0; n < 2; ++n) v += u[r][m] * basis[jk][m][n] * u[c][n];
            }
            images[jk][r][c] += wt * v;
          }
        }
      }
    }
  }
  return images;
}

namespace {

// Number of eigenvalues of m strictly below x, by the inertia of m - xI under
// LDL^dagger elimination.
int count_below(const HermitianMatrix& m, double x) {
  const std::size_t n = m.dim;
  std::vector<cd> a = m.data;
  for (std::size_t i = 0; i < n; ++i) a[i * n + i] -= x;

  int negatives = 0;
  for (std::size_t k = 0; k < n; ++k) {
    double d = a[k * n + k].real();
    if (std::abs(d) < 1e-300) d = -1e-300;  // nudge off exact singularity
    if (d < 0.0) ++negatives;
    for (std::size_t i = k + 1; i < n; ++i) {
      const cd lik = a[i * n + k] / d;
      if (lik == cd(0.0)) continue;
      for (std::size_t j = k + 1; j < n; ++j) {
        a[i * n + j] -= lik * std::conj(a[j * n + k]);
      }
    }
  }
  return negatives;
}

}  // namespace

std::vector<double> herm_eigenvalues_bisect(const HermitianMatrix& m) {
  const std::size_t n = m.dim;
  // Gershgorin bounds.
  double lo = 0.0, hi = 0.0;
  for (std::size_t r = 0; r < n; ++r) {
    double radius = 0.0;
    for (std::size_t c = 0; c < n; ++c) {
      if (c != r) radius += std::abs(m.at(r, c));
    }
    lo = std::min(lo, m.at(r, r).real() - radius);
    hi = std::max(hi, m.at(r, r).real() + radius);
  }
  lo -= 1.0;
  hi += 1.0;

  std::vector<double> eig(n);
  for (std::size_t j = 0; j < n; ++j) {
    double a = lo, b = hi;
    for (int it = 0; it < 80; ++it) {
      const double mid = 0.5 * (a + b);
      if (count_below(m, mid) >= static_cast<int>(j) + 1) {
        b = mid;
      } else {
        a = mid;
      }
      if (b - a <= 1e-13 * std::max(1.0, std::abs(b))) break;
    }
    eig[j] = 0.5 * (a + b);
  }
  return eig;
}

long double deficit_pow_ld(long double delta, long double n) {
  if (delta <= 0.0L) return 0.0L;
  if (delta >= 1.0L) return 1.0L;
  return -std::expm1l(n * std::log1pl(-delta));
}

}  // namespace gwspin::crosscheck
