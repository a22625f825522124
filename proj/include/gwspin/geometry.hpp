#pragma once

#include "gwspin/mathutil.hpp"
#include "gwspin/waveform.hpp"

namespace gwspin {

// Index conventions, fixed once for the whole project:
//   * Greek (coordinate) indices run over (t, x, y, z) = (0, 1, 2, 3).
//   * Latin (local-frame) indices run over 0..3 with metric kMinkowski.
//   * Christoffel symbols are stored as gamma[mu][nu][rho] = Gamma^mu_{nu rho}
//     (first index up, rest down), symmetric in (nu, rho).
//   * The spin connection is stored as omega[a][mu][b] = omega^a_{mu b}
//     (first index up, the local index b down).

struct Event {
  double t = 0.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  double phase() const { return t - z; }  // null phase u = t - z
};

struct MetricAt {
  Mat4 g{};  // diagonal for the plane-wave family: diag(-1, 1+f, 1-f, 1)

  std::array<double, 4> diagonal() const { return {g[0][0], g[1][1], g[2][2], g[3][3]}; }
  std::array<double, 4> inverse_diagonal() const {
    return {1.0 / g[0][0], 1.0 / g[1][1], 1.0 / g[2][2], 1.0 / g[3][3]};
  }
};

struct Christoffel {
  std::array<Mat4, 4> gamma{};  // gamma[mu][nu][rho]
};

// Orthonormal frame adapted to the plane-wave metric.
//   to_frame[a][mu]  = e^a_mu  (coordinate vector -> local-frame vector)
//   to_coord[mu][a]  = e^mu_a  (local-frame vector -> coordinate vector)
struct Vierbein {
  Mat4 to_frame{};
  Mat4 to_coord{};
};

struct SpinConnection {
  std::array<Mat4, 4> omega{};  // omega[a][mu][b]
};

MetricAt metric_at(const Waveform& w, const Event& ev);
Christoffel christoffel_at(const Waveform& w, const Event& ev);
Vierbein vierbein_at(const Waveform& w, const Event& ev);
SpinConnection spin_connection_at(const Waveform& w, const Event& ev);

/// e^a_mu vec^mu.
Vec4 to_local(const Vierbein& v, const Vec4& vec);

}  // namespace gwspin
