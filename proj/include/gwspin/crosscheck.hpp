#pragma once

#include <array>
#include <vector>

#include "gwspin/geometry.hpp"
#include "gwspin/kinematics.hpp"
#include "gwspin/quantum.hpp"
#include "gwspin/wavepacket.hpp"

namespace gwspin::crosscheck {

// Independent reference routes used to validate the analytic implementations.
// Everything here deliberately avoids the closed forms it is checked against:
// derivatives come from central differences, integrals from fixed-panel
// quadrature, spectra from bisection. Slower and less accurate by design;
// never used on the simulation path.

/// Central-difference partials of the metric, d g / d x^mu.
std::array<Mat4, 4> metric_partials_fd(const Waveform& w, const Event& ev, double step);

/// Christoffel symbols from (1/2) g^{mu sigma} (d_nu g + d_rho g - d_sigma g)
/// with finite-difference metric derivatives.
Christoffel christoffel_fd(const Waveform& w, const Event& ev, double step);

/// Spin connection from its definition e^a_lambda (d_mu e^lambda_b +
/// Gamma^lambda_{mu nu} e^nu_b), with finite-difference vierbein derivatives.
SpinConnection spin_connection_definitional(const Waveform& w, const Event& ev, double step);

/// Composite-Simpson integral of phi^1_3 along the worldline over
/// [tau_i, tau_f]; the independent route to the accumulated Wigner angle.
double omega_simpson(const Waveform& w, const FrameParams& fp, double tau_i, double tau_f,
                     const LocalMomentum& k, int panels = 200);

/// Average-of-unitaries channel images E[U(Omega) R^{jk} U(Omega)^T] by
/// Gauss-Hermite quadrature over the packet; index is 2j + k.
std::array<Mat2, 4> channel_images_quadrature(const WavePacket& p, const Waveform& w,
                                              const FrameParams& fp, double tau_i, double tau_f,
                                              int order = 40);

/// Hermitian spectrum by inertia-counting bisection (Sylvester's law on the
/// shifted matrix), ascending. Intended for small matrices.
std::vector<double> herm_eigenvalues_bisect(const HermitianMatrix& m);

/// Extended-precision deficit power 1 - (1 - delta)^n.
long double deficit_pow_ld(long double delta, long double n);

}  // namespace gwspin::crosscheck
