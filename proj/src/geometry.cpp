#include "gwspin/geometry.hpp"

#include <cmath>

namespace gwspin {

namespace {

void check_strain(double f) {
  if (!(std::abs(f) < 1.0)) {
    throw std::domain_error("plane-wave strain |f| >= 1 at requested event");
  }
}

}  // namespace

MetricAt metric_at(const Waveform& w, const Event& ev) {
  const double f = w.eval(ev.phase());
  check_strain(f);
  MetricAt m;
  m.g[0][0] = -1.0;
  m.g[1][1] = 1.0 + f;
  m.g[2][2] = 1.0 - f;
  m.g[3][3] = 1.0;
  return m;
}

Christoffel christoffel_at(const Waveform& w, const Event& ev) {
  const double u = ev.phase();
  const double f = w.eval(u);
  check_strain(f);
  const double df = w.deriv(u);  // df/dt = df/du, df/dz = -df/du

  Christoffel c;
  auto& g = c.gamma;
  // Gamma^t_xx = -Gamma^t_yy = (1/2) df/dt, Gamma^z_xx = -Gamma^z_yy = -(1/2) df/dz
  g[0][1][1] = 0.5 * df;
  g[0][2][2] = -0.5 * df;
  g[3][1][1] = 0.5 * df;
  g[3][2][2] = -0.5 * df;
  // Gamma^x_tx = d ln sqrt(1+f)/dt, Gamma^x_xz = d ln sqrt(1+f)/dz (and y analogues)
  const double sp = 0.5 * df / (1.0 + f);  // d ln sqrt(1+f)/dt
  const double sm = -0.5 * df / (1.0 - f); // d ln sqrt(1-f)/dt
  g[1][0][1] = g[1][1][0] = sp;
  g[1][1][3] = g[1][3][1] = -sp;
  g[2][0][2] = g[2][2][0] = sm;
  g[2][2][3] = g[2][3][2] = -sm;
  return c;
}

Vierbein vierbein_at(const Waveform& w, const Event& ev) {
  const double f = w.eval(ev.phase());
  check_strain(f);
  const double rp = std::sqrt(1.0 + f);
  const double rm = std::sqrt(1.0 - f);

  Vierbein v;
  v.to_coord[0][0] = 1.0;
  v.to_coord[1][1] = 1.0 / rp;
  v.to_coord[2][2] = 1.0 / rm;
  v.to_coord[3][3] = 1.0;
  v.to_frame[0][0] = 1.0;
  v.to_frame[1][1] = rp;
  v.to_frame[2][2] = rm;
  v.to_frame[3][3] = 1.0;
  return v;
}

SpinConnection spin_connection_at(const Waveform& w, const Event& ev) {
  const double u = ev.phase();
  const double f = w.eval(u);
  check_strain(f);
  const double df = w.deriv(u);
  const double rp = std::sqrt(1.0 + f);
  const double rm = std::sqrt(1.0 - f);
  // sqrt(1+f) d ln sqrt(1+f)/dt = (1/2) df/dt / sqrt(1+f); z derivative flips sign.
  const double ap = 0.5 * df / rp;
  const double am = -0.5 * df / rm;

  SpinConnection s;
  auto& o = s.omega;
  o[0][1][1] = ap;   // omega^0_{x1}
  o[1][1][0] = ap;   // omega^1_{x0}
  o[1][1][3] = -ap;  // omega^1_{x3}
  o[3][1][1] = ap;   // omega^3_{x1}
  o[0][2][2] = am;   // omega^0_{y2}
  o[2][2][0] = am;   // omega^2_{y0}
  o[2][2][3] = -am;  // omega^2_{y3}
  o[3][2][2] = am;   // omega^3_{y2}
  return s;
}

Vec4 to_local(const Vierbein& v, const Vec4& vec) {
  Vec4 out{};
  for (int a = 0; a < 4; ++a) {
    double s = 0.0;
    for (int mu = 0; mu < 4; ++mu) s += v.to_frame[a][mu] * vec[mu];
    out[a] = s;
  }
  return out;
}

}  // namespace gwspin
