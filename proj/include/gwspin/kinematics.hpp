#pragma once

#include "gwspin/geometry.hpp"
#include "gwspin/mathutil.hpp"
#include "gwspin/waveform.hpp"

namespace gwspin {

/// Particle/frame configuration for the forced worldline. The polar angle is
/// measured from the wave propagation axis (+z); the physical regime is
/// 0 < angle < pi/2, with the boundaries (and rapidity 0) admitted only as
/// null tests behind allow_boundary.
struct FrameParams {
  double mass = 1.0;       // m > 0, geometric units
  double rapidity = 0.0;   // xi >= 0, velocity v = tanh(xi)
  double angle = 0.0;      // theta in (0, pi/2) unless allow_boundary
  double t_i = 0.0;
  double x_i = 0.0;
  double y_i = 0.0;
  double z_i = 0.0;
  bool allow_boundary = false;

  void validate() const;  // throws std::invalid_argument naming the bad field
  double initial_phase() const { return t_i - z_i; }
  /// du/dtau along the worldline: cosh(xi) - sinh(xi) cos(theta) > 0.
  double phase_rate() const;
};

/// Spatial momentum in the local inertial frame; the time component
/// k^0 = sqrt(k.k + m^2) is implied (always on shell).
struct LocalMomentum {
  double k1 = 0.0;
  double k2 = 0.0;
  double k3 = 0.0;

  double norm_sq() const { return k1 * k1 + k2 * k2 + k3 * k3; }
  double energy(double mass) const { return std::sqrt(norm_sq() + mass * mass); }
};

enum class OmegaMethod { exact_log, first_order };

/// Wigner rotation angle accumulated over a proper-time interval.
struct WignerAngle {
  double angle = 0.0;  // radians, rotation about the local spin y-axis
  OmegaMethod method = OmegaMethod::exact_log;
};

/// Four-velocity of the forced worldline at the given event.
Vec4 four_velocity(const Waveform& w, const FrameParams& fp, const Event& ev);

/// Event reached after proper time tau >= 0 from the configured initial event.
/// The transverse x coordinate is obtained by adaptive quadrature.
Event trajectory(const Waveform& w, const FrameParams& fp, double tau);

/// Null phase u(tau) along the worldline; exactly linear in tau.
double phase_at(const FrameParams& fp, double tau);

struct Acceleration {
  Vec4 coord{};  // a^mu, general coordinates
  Vec4 local{};  // a^a, local inertial frame
};

/// External-force acceleration keeping the worldline on its non-geodesic track.
Acceleration acceleration(const Waveform& w, const FrameParams& fp, const Event& ev);

/// F = (cosh xi d_t + sinh xi cos theta d_z) ln sqrt(1+f) = d/dtau ln sqrt(1+f).
double big_F(const Waveform& w, const FrameParams& fp, const Event& ev);
/// G = (sinh xi cos theta d_t + cosh xi d_z) ln sqrt(1+f) = -F identically.
double big_G(const Waveform& w, const FrameParams& fp, const Event& ev);

/// Local Lorentz generator lambda^a_b in closed form (only the 01/03/13 blocks
/// survive for this spacetime).
Mat4 lorentz_generator(const Waveform& w, const FrameParams& fp, const Event& ev);

/// Same generator from its definition -[a^a q_b - q^a a_b]/m - u^mu omega^a_{mu b};
/// kept as an independent route for cross-checking the closed form.
Mat4 lorentz_generator_definitional(const Waveform& w, const FrameParams& fp, const Event& ev);

/// Wigner rotation generator phi^a_b for local momentum k: row/column 0 vanish,
/// phi^i_j = lambda^i_j + [lambda^i_0 k_j - k^i lambda_{j0}] / (k^0 + m).
Mat4 wigner_generator(const Waveform& w, const FrameParams& fp, const Event& ev,
                      const LocalMomentum& k);

/// Momentum-dependent factor H(k; xi, theta); phi^1_3 = -G H.
double big_H(const FrameParams& fp, const LocalMomentum& k);

/// The k-independent part of the accumulated angle, so that
/// Omega(k) = big_H(k) * omega_profile_factor(...).
/// exact_log: (1/2)[log1p(f(u_f)) - log1p(f(u_i))], evaluated in a form that
/// preserves the relative accuracy of the difference for |f| -> 0.
/// first_order: (1/2)[f(u_f) - f(u_i)].
double omega_profile_factor(const Waveform& w, const FrameParams& fp, double tau_i, double tau_f,
                            OmegaMethod method);

/// Accumulated Wigner rotation angle over [tau_i, tau_f] for momentum k.
WignerAngle omega(const Waveform& w, const FrameParams& fp, double tau_i, double tau_f,
                  const LocalMomentum& k, OmegaMethod method = OmegaMethod::exact_log);

/// Spin-1/2 rotation matrix exp(-i sigma_y Omega / 2): real orthogonal,
/// rows [cos(W/2), -sin(W/2); sin(W/2), cos(W/2)].
std::array<std::array<double, 2>, 2> wigner_matrix(const WignerAngle& w);

/// Local four-momentum center q^a of the packet: spatial part
/// m sinh(xi) (sin theta, 0, cos theta).
LocalMomentum packet_center(const FrameParams& fp);

}  // namespace gwspin
