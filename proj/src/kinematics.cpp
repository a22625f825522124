#include "gwspin/kinematics.hpp"

#include <cmath>

#include "gwspin/quadrature.hpp"

namespace gwspin {

namespace {

constexpr double kHalfPi = 1.57079632679489661923;

// d ln sqrt(1+f)/dt at the event; the z derivative is its negative.
double log_strain_rate(const Waveform& w, const Event& ev) {
  const double u = ev.phase();
  return 0.5 * w.deriv(u) / (1.0 + w.eval(u));
}

}  // namespace

void FrameParams::validate() const {
  if (!(mass > 0.0) || !std::isfinite(mass)) {
    throw std::invalid_argument("frame mass must be positive");
  }
  if (!(rapidity >= 0.0) || !std::isfinite(rapidity)) {
    throw std::invalid_argument("frame rapidity must be >= 0");
  }
  if (!std::isfinite(angle) || angle < 0.0 || angle > kHalfPi) {
    throw std::invalid_argument("frame angle must lie in [0, pi/2]");
  }
  if (!allow_boundary) {
    if (rapidity == 0.0) {
      throw std::invalid_argument(
          "frame rapidity = 0 is a null test; set allow_boundary to use it");
    }
    if (angle == 0.0 || angle == kHalfPi) {
      throw std::invalid_argument(
          "frame angle on the boundary of (0, pi/2) is a null test; set allow_boundary");
    }
  }
  if (!std::isfinite(t_i) || !std::isfinite(x_i) || !std::isfinite(y_i) || !std::isfinite(z_i)) {
    throw std::invalid_argument("frame initial event must be finite");
  }
}

double FrameParams::phase_rate() const {
  return std::cosh(rapidity) - std::sinh(rapidity) * std::cos(angle);
}

Vec4 four_velocity(const Waveform& w, const FrameParams& fp, const Event& ev) {
  const double f = w.eval(ev.phase());
  const double ch = std::cosh(fp.rapidity);
  const double sh = std::sinh(fp.rapidity);
  return {ch, sh * std::sin(fp.angle) / std::sqrt(1.0 + f), 0.0, sh * std::cos(fp.angle)};
}

double phase_at(const FrameParams& fp, double tau) {
  return fp.initial_phase() + tau * fp.phase_rate();
}

Event trajectory(const Waveform& w, const FrameParams& fp, double tau) {
  if (!(tau >= 0.0)) {
    throw std::invalid_argument("trajectory proper time must be >= 0");
  }
  const double ch = std::cosh(fp.rapidity);
  const double sh = std::sinh(fp.rapidity);
  const double sth = std::sin(fp.angle);

  Event ev;
  ev.t = fp.t_i + tau * ch;
  ev.z = fp.z_i + tau * sh * std::cos(fp.angle);
  ev.y = fp.y_i;

  double dx = 0.0;
  if (tau > 0.0 && sh * sth != 0.0) {
    if (w.kind() == WaveformKind::zero) {
      dx = tau * sh * sth;
    } else {
      dx = adaptive_simpson(
          [&](double s) { return sh * sth / std::sqrt(1.0 + w.eval(phase_at(fp, s))); }, 0.0, tau,
          1e-13);
    }
  }
  ev.x = fp.x_i + dx;
  return ev;
}

Acceleration acceleration(const Waveform& w, const FrameParams& fp, const Event& ev) {
  const double s = log_strain_rate(w, ev);  // d ln sqrt(1+f)/dt; d/dz = -s
  const double f = w.eval(ev.phase());
  const double ch = std::cosh(fp.rapidity);
  const double sh = std::sinh(fp.rapidity);
  const double sth = std::sin(fp.angle);
  const double cth = std::cos(fp.angle);
  const double transverse = sq(sh) * sq(sth) * s;
  const double force = (ch - sh * cth) * s;  // F

  Acceleration a;
  a.coord = {transverse, force * sh * sth / std::sqrt(1.0 + f), 0.0, transverse};
  a.local = {transverse, force * sh * sth, 0.0, transverse};
  return a;
}

double big_F(const Waveform& w, const FrameParams& fp, const Event& ev) {
  const double s = log_strain_rate(w, ev);
  return (std::cosh(fp.rapidity) - std::sinh(fp.rapidity) * std::cos(fp.angle)) * s;
}

double big_G(const Waveform& w, const FrameParams& fp, const Event& ev) {
  const double s = log_strain_rate(w, ev);
  return (std::sinh(fp.rapidity) * std::cos(fp.angle) - std::cosh(fp.rapidity)) * s;
}

Mat4 lorentz_generator(const Waveform& w, const FrameParams& fp, const Event& ev) {
  const double g = big_G(w, fp, ev);
  const double ch = std::cosh(fp.rapidity);
  const double sh = std::sinh(fp.rapidity);
  const double sth = std::sin(fp.angle);
  const double cth = std::cos(fp.angle);

  Mat4 lam{};
  lam[0][1] = lam[1][0] = sq(sh) * cth * sth * g;
  lam[0][3] = lam[3][0] = -sq(sh) * sq(sth) * g;
  lam[1][3] = -ch * sh * sth * g;
  lam[3][1] = ch * sh * sth * g;
  return lam;
}

Mat4 lorentz_generator_definitional(const Waveform& w, const FrameParams& fp, const Event& ev) {
  const Vierbein vb = vierbein_at(w, ev);
  const SpinConnection sc = spin_connection_at(w, ev);
  const Vec4 u = four_velocity(w, fp, ev);
  const Acceleration acc = acceleration(w, fp, ev);

  // Local four-momentum and acceleration with frame indices.
  Vec4 q_local = to_local(vb, u);
  for (auto& c : q_local) c *= fp.mass;
  const Vec4& a_local = acc.local;

  Mat4 lam{};
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      const double qb = kMinkowski[b] * q_local[b];
      const double ab = kMinkowski[b] * a_local[b];
      double chi = 0.0;
      for (int mu = 0; mu < 4; ++mu) chi -= u[mu] * sc.omega[a][mu][b];
      lam[a][b] = -(a_local[a] * qb - q_local[a] * ab) / fp.mass + chi;
    }
  }
  return lam;
}

Mat4 wigner_generator(const Waveform& w, const FrameParams& fp, const Event& ev,
                      const LocalMomentum& k) {
  if (!std::isfinite(k.k1) || !std::isfinite(k.k2) || !std::isfinite(k.k3)) {
    throw std::domain_error("local momentum must be finite");
  }
  const Mat4 lam = lorentz_generator(w, fp, ev);
  const double denom = k.energy(fp.mass) + fp.mass;
  const std::array<double, 4> kv{0.0, k.k1, k.k2, k.k3};

  Mat4 phi{};
  for (int i = 1; i < 4; ++i) {
    for (int j = 1; j < 4; ++j) {
      // Spatial frame indices raise/lower trivially: k_j = k^j, lambda_{j0} = lambda^j_0.
      phi[i][j] = lam[i][j] + (lam[i][0] * kv[j] - kv[i] * lam[j][0]) / denom;
    }
  }
  return phi;
}

double big_H(const FrameParams& fp, const LocalMomentum& k) {
  const double ch = std::cosh(fp.rapidity);
  const double sh = std::sinh(fp.rapidity);
  const double sth = std::sin(fp.angle);
  const double cth = std::cos(fp.angle);
  const double denom = k.energy(fp.mass) + fp.mass;
  const double boost_term = (k.k1 * sth + k.k3 * cth) / denom * std::tanh(fp.rapidity);
  return (1.0 - boost_term) * ch * sh * sth;
}

double omega_profile_factor(const Waveform& w, const FrameParams& fp, double tau_i, double tau_f,
                            OmegaMethod method) {
  if (!(tau_f >= tau_i)) {
    throw std::invalid_argument("omega requires tau_f >= tau_i");
  }
  const double fi = w.eval(phase_at(fp, tau_i));
  const double ff = w.eval(phase_at(fp, tau_f));
  if (method == OmegaMethod::first_order) {
    return 0.5 * (ff - fi);
  }
  // ln sqrt(1+f_f) - ln sqrt(1+f_i). For small strains the signal lives
  // entirely in f_f - f_i, so use the exact one-log rearrangement there.
  if (std::max(std::abs(fi), std::abs(ff)) < 1e-8) {
    return 0.5 * std::log1p((ff - fi) / (1.0 + fi));
  }
  return 0.5 * (std::log1p(ff) - std::log1p(fi));
}

WignerAngle omega(const Waveform& w, const FrameParams& fp, double tau_i, double tau_f,
                  const LocalMomentum& k, OmegaMethod method) {
  return {big_H(fp, k) * omega_profile_factor(w, fp, tau_i, tau_f, method), method};
}

std::array<std::array<double, 2>, 2> wigner_matrix(const WignerAngle& w) {
  if (!std::isfinite(w.angle)) {
    throw std::invalid_argument("Wigner angle must be finite");
  }
  const double c = std::cos(0.5 * w.angle);
  const double s = std::sin(0.5 * w.angle);
  return {{{c, -s}, {s, c}}};
}

LocalMomentum packet_center(const FrameParams& fp) {
  const double p = fp.mass * std::sinh(fp.rapidity);
  return {p * std::sin(fp.angle), 0.0, p * std::cos(fp.angle)};
}

}  // namespace gwspin
