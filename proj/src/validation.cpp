#include "gwspin/validation.hpp"

#include <cmath>
#include <functional>
#include <sstream>

#include "gwspin/crosscheck.hpp"
#include "gwspin/scenario.hpp"
#include "gwspin/swapping.hpp"

namespace gwspin::validation {

namespace {

constexpr std::uint64_t kSeed = 0x5EED;
constexpr double kPi = 3.14159265358979323846;

double uniform(std::uint64_t seed, std::uint64_t i, double lo, double hi) {
  return lo + (hi - lo) * uniform_open(splitmix64_at(seed, i));
}

// Random event within a few profile widths of the origin.
Event random_event(std::uint64_t seed, std::uint64_t i) {
  return Event{uniform(seed, 4 * i, -3.0, 3.0), uniform(seed, 4 * i + 1, -3.0, 3.0),
               uniform(seed, 4 * i + 2, -3.0, 3.0), uniform(seed, 4 * i + 3, -3.0, 3.0)};
}

FrameParams random_frame(std::uint64_t seed, std::uint64_t i) {
  FrameParams fp;
  fp.mass = uniform(seed, 8 * i, 0.5, 2.0);
  fp.rapidity = uniform(seed, 8 * i + 1, 0.2, 2.0);
  fp.angle = uniform(seed, 8 * i + 2, 0.15, kPi / 2.0 - 0.15);
  fp.t_i = uniform(seed, 8 * i + 3, -2.0, 2.0);
  fp.z_i = uniform(seed, 8 * i + 4, -2.0, 2.0);
  return fp;
}

// Shared default scenario: gaussian pulse swept from the leading tail to the
// peak (u -5 -> 0), moderately relativistic frame.
ScenarioConfig default_scenario(double amplitude) {
  ScenarioConfig cfg;
  cfg.waveform.kind = WaveformKind::gaussian;
  cfg.waveform.amplitude = amplitude;
  cfg.waveform.width = 1.0;
  cfg.frame.mass = 1.0;
  cfg.frame.rapidity = 1.0;
  cfg.frame.angle = kPi / 4.0;
  cfg.frame.t_i = -5.0;
  cfg.frame.z_i = 0.0;
  cfg.packet.width = 0.5;
  cfg.grid.tau_f = 5.0 / cfg.frame.phase_rate();
  cfg.grid.steps = 10;
  return cfg;
}

ScenarioConfig sine_scenario(double amplitude) {
  ScenarioConfig cfg = default_scenario(amplitude);
  cfg.waveform.kind = WaveformKind::sine;
  cfg.waveform.frequency = 1.0;
  cfg.waveform.width = 0.0;
  // Quarter period of u: f swings 0 -> A.
  cfg.grid.tau_f = (kPi / 2.0) / cfg.frame.phase_rate();
  return cfg;
}

struct Runner {
  Report report;

  void add(const std::string& name, double worst, double tol, const std::string& note = "") {
    report.checks.push_back(Check{name, worst, tol, worst <= tol, note});
  }
};

double max_abs_mat4(const Mat4& m) {
  double worst = 0.0;
  for (const auto& row : m) {
    for (double v : row) worst = std::max(worst, std::abs(v));
  }
  return worst;
}

}  // namespace

bool Report::all_pass() const {
  for (const auto& c : checks) {
    if (!c.pass) return false;
  }
  return true;
}

std::string Report::to_text() const {
  std::ostringstream out;
  int failed = 0;
  for (const auto& c : checks) {
    out << (c.pass ? "[PASS] " : "[FAIL] ") << c.name << ": worst " << format_full(c.worst)
        << " vs tolerance " << format_full(c.tolerance);
    if (!c.note.empty()) out << " (" << c.note << ")";
    out << '\n';
    if (!c.pass) ++failed;
  }
  out << (failed == 0 ? "all " : "") << checks.size() - failed << "/" << checks.size()
      << " checks passed\n";
  return out.str();
}

double channel_table_error(const std::array<Mat2, 4>& images, const std::array<Mat2, 4>& oracle) {
  double worst = 0.0;
  for (int jk = 0; jk < 4; ++jk) {
    for (int r = 0; r < 2; ++r) {
      for (int c = 0; c < 2; ++c) {
        worst = std::max(worst, std::abs(images[jk][r][c] - oracle[jk][r][c]));
      }
    }
  }
  return worst;
}

Report run(Level level) {
  Runner r;
  const int n_events = level == Level::full ? 50 : 20;
  const int n_samples = level == Level::full ? 100 : 40;

  const Waveform zero = Waveform::zero();
  const Waveform gauss = Waveform::gaussian(0.1, 1.0);
  const Waveform sine = Waveform::sine(0.1, 1.0);

  // --- waveform ---
  {
    double worst = 0.0;
    for (const Waveform* w : {&gauss, &sine}) {
      const double h = 1e-6 * w->scale();
      for (int i = 0; i <= 120; ++i) {
        const double u = -6.0 + 0.1 * i;
        const double fd = (w->eval(u + h) - w->eval(u - h)) / (2.0 * h);
        const double an = w->deriv(u);
        const double denom = std::max(std::abs(an), 1e-3 * w->amplitude() / w->scale());
        worst = std::max(worst, std::abs(fd - an) / denom);
      }
    }
    r.add("waveform.deriv_matches_centered_difference", worst, 1e-6);
  }
  {
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
      const double u = uniform(kSeed, 900 + i, -50.0, 50.0);
      worst = std::max({worst, std::abs(zero.eval(u)), std::abs(zero.deriv(u))});
    }
    r.add("waveform.zero_profile_vanishes", worst, 0.0);
  }

  // --- geometry ---
  {
    double worst = 0.0;
    for (int i = 0; i < n_events; ++i) {
      const Event ev = random_event(kSeed + 1, i);
      const Christoffel c = christoffel_at(zero, ev);
      const SpinConnection s = spin_connection_at(zero, ev);
      const Vierbein v = vierbein_at(zero, ev);
      for (int a = 0; a < 4; ++a) {
        worst = std::max(worst, max_abs_mat4(c.gamma[a]));
        worst = std::max(worst, max_abs_mat4(s.omega[a]));
        for (int mu = 0; mu < 4; ++mu) {
          const double expected = a == mu ? 1.0 : 0.0;
          worst = std::max(worst, std::abs(v.to_frame[a][mu] - expected));
          worst = std::max(worst, std::abs(v.to_coord[a][mu] - expected));
        }
      }
    }
    r.add("geometry.flat_spacetime_is_trivial", worst, 0.0);
  }
  {
    double worst = 0.0;
    for (const Waveform* w : {&gauss, &sine}) {
      for (int i = 0; i < n_events; ++i) {
        const Event ev = random_event(kSeed + 2, i);
        const Christoffel an = christoffel_at(*w, ev);
        const Christoffel fd = crosscheck::christoffel_fd(*w, ev, 1e-5 * w->scale());
        double scale = 1e-3;
        for (int mu = 0; mu < 4; ++mu) scale = std::max(scale, max_abs_mat4(an.gamma[mu]));
        for (int mu = 0; mu < 4; ++mu) {
          for (int nu = 0; nu < 4; ++nu) {
            for (int rho = 0; rho < 4; ++rho) {
              worst = std::max(worst, std::abs(an.gamma[mu][nu][rho] - fd.gamma[mu][nu][rho]) /
                                          scale);
            }
          }
        }
      }
    }
    r.add("geometry.christoffel_matches_metric_derivative_oracle", worst, 1e-6);
  }
  {
    double worst = 0.0;
    for (int i = 0; i < n_events; ++i) {
      const Event ev = random_event(kSeed + 3, i);
      const Vierbein v = vierbein_at(gauss, ev);
      const auto ginv = metric_at(gauss, ev).inverse_diagonal();
      for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
          double s = 0.0;
          for (int mu = 0; mu < 4; ++mu) s += v.to_frame[a][mu] * v.to_frame[b][mu] * ginv[mu];
          const double expected = a == b ? kMinkowski[a] : 0.0;
          worst = std::max(worst, std::abs(s - expected));
        }
      }
    }
    r.add("geometry.tetrad_orthonormality", worst, 1e-12);
  }
  {
    double worst = 0.0;
    for (const Waveform* w : {&gauss, &sine}) {
      for (int i = 0; i < n_events; ++i) {
        const Event ev = random_event(kSeed + 4, i);
        const SpinConnection an = spin_connection_at(*w, ev);
        const SpinConnection df =
            crosscheck::spin_connection_definitional(*w, ev, 1e-5 * w->scale());
        double scale = 1e-3;
        for (int a = 0; a < 4; ++a) scale = std::max(scale, max_abs_mat4(an.omega[a]));
        for (int a = 0; a < 4; ++a) {
          for (int mu = 0; mu < 4; ++mu) {
            for (int b = 0; b < 4; ++b) {
              worst = std::max(worst,
                               std::abs(an.omega[a][mu][b] - df.omega[a][mu][b]) / scale);
            }
          }
        }
      }
    }
    r.add("geometry.spin_connection_matches_definitional_oracle", worst, 1e-6);
  }
  {
    double worst = 0.0;
    for (int i = 0; i < n_events; ++i) {
      const Event ev = random_event(kSeed + 5, i);
      const SpinConnection s = spin_connection_at(gauss, ev);
      for (int mu = 0; mu < 4; ++mu) {
        for (int a = 0; a < 4; ++a) {
          for (int b = 0; b < 4; ++b) {
            const double lowered_ab = kMinkowski[a] * s.omega[a][mu][b];
            const double lowered_ba = kMinkowski[b] * s.omega[b][mu][a];
            worst = std::max(worst, std::abs(lowered_ab + lowered_ba));
          }
        }
      }
    }
    r.add("geometry.spin_connection_antisymmetry", worst, 1e-12);
  }

  // --- kinematics ---
  {
    double worst_norm = 0.0, worst_orth = 0.0;
    for (int i = 0; i < n_samples; ++i) {
      const FrameParams fp = random_frame(kSeed + 6, i);
      const Event ev = random_event(kSeed + 7, i);
      const Waveform& w = (i % 2 == 0) ? gauss : sine;
      const auto diag = metric_at(w, ev).diagonal();
      const Vec4 u = four_velocity(w, fp, ev);
      const Acceleration a = acceleration(w, fp, ev);
      worst_norm = std::max(worst_norm, std::abs(metric_dot(diag, u, u) + 1.0));
      worst_orth = std::max(worst_orth, std::abs(metric_dot(diag, u, a.coord)));
    }
    r.add("kinematics.four_velocity_normalization", worst_norm, 1e-12);
    r.add("kinematics.acceleration_orthogonality", worst_orth, 1e-12);
  }
  {
    double worst = 0.0;
    for (int i = 0; i < n_samples; ++i) {
      const FrameParams fp = random_frame(kSeed + 8, i);
      const Event ev = random_event(kSeed + 9, i);
      const Mat4 lam = lorentz_generator(gauss, fp, ev);
      for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
          worst = std::max(worst, std::abs(kMinkowski[a] * lam[a][b] + kMinkowski[b] * lam[b][a]));
        }
      }
    }
    r.add("kinematics.lorentz_generator_antisymmetry", worst, 1e-12);
  }
  {
    double worst = 0.0;
    for (int i = 0; i < n_samples; ++i) {
      const FrameParams fp = random_frame(kSeed + 10, i);
      const Event ev = random_event(kSeed + 11, i);
      const Waveform& w = (i % 2 == 0) ? gauss : sine;
      const Mat4 closed = lorentz_generator(w, fp, ev);
      const Mat4 defn = lorentz_generator_definitional(w, fp, ev);
      for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
          worst = std::max(worst, std::abs(closed[a][b] - defn[a][b]));
        }
      }
    }
    r.add("kinematics.lorentz_generator_two_routes", worst, 1e-10);
  }
  {
    double worst = 0.0;
    for (int i = 0; i < n_samples; ++i) {
      const FrameParams fp = random_frame(kSeed + 12, i);
      const Event ev = random_event(kSeed + 13, i);
      const LocalMomentum k{uniform(kSeed + 14, 2 * i, -2.0, 2.0), 0.0,
                            uniform(kSeed + 14, 2 * i + 1, -2.0, 2.0)};
      const Mat4 phi = wigner_generator(gauss, fp, ev, k);
      const double expected = -big_G(gauss, fp, ev) * big_H(fp, k);
      worst = std::max(worst, std::abs(phi[1][3] - expected));
      for (int a = 0; a < 4; ++a) {
        worst = std::max(worst, std::abs(phi[0][a]));
        worst = std::max(worst, std::abs(phi[a][0]));
      }
      worst = std::max({worst, std::abs(phi[1][2]), std::abs(phi[2][1]), std::abs(phi[2][3]),
                        std::abs(phi[3][2]), std::abs(phi[1][1]), std::abs(phi[2][2]),
                        std::abs(phi[3][3])});
      worst = std::max(worst, std::abs(phi[1][3] + phi[3][1]));
    }
    r.add("kinematics.wigner_generator_structure", worst, 1e-12);
  }
  {
    // Endpoint-difference form: omega is additive over adjacent intervals.
    double worst = 0.0;
    const ScenarioConfig cfg = default_scenario(0.1);
    const LocalMomentum q = packet_center(cfg.frame);
    const Waveform w = build_waveform(cfg.waveform);
    for (int i = 0; i < 20; ++i) {
      const double tm = cfg.grid.tau_f * uniform_open(splitmix64_at(kSeed + 15, i));
      const double full = omega(w, cfg.frame, 0.0, cfg.grid.tau_f, q).angle;
      const double split = omega(w, cfg.frame, 0.0, tm, q).angle +
                           omega(w, cfg.frame, tm, cfg.grid.tau_f, q).angle;
      const double scale = std::max({std::abs(full), std::abs(split), 1e-300});
      worst = std::max(worst, std::abs(full - split) / scale);
    }
    r.add("kinematics.omega_additivity", worst, 1e-15);
  }
  {
    // |exact - first_order| <= A^2 |H| / 2 (Taylor remainder of log sqrt(1+f)).
    double worst = 0.0;
    const ScenarioConfig cfg = default_scenario(0.1);
    const Waveform w = build_waveform(cfg.waveform);
    const LocalMomentum q = packet_center(cfg.frame);
    const double bound = 0.5 * sq(cfg.waveform.amplitude) * std::abs(big_H(cfg.frame, q));
    for (int i = 0; i <= 20; ++i) {
      const double tau = cfg.grid.tau_f * i / 20.0;
      const double exact = omega(w, cfg.frame, 0.0, tau, q, OmegaMethod::exact_log).angle;
      const double first = omega(w, cfg.frame, 0.0, tau, q, OmegaMethod::first_order).angle;
      worst = std::max(worst, std::abs(exact - first) / bound);
    }
    r.add("kinematics.omega_method_agreement", worst, 1.0, "normalized by A^2 |H| / 2");
  }
  {
    const ScenarioConfig cfg = default_scenario(0.01);
    const Waveform w = build_waveform(cfg.waveform);
    const LocalMomentum q = packet_center(cfg.frame);
    const double closed = omega(w, cfg.frame, 0.0, cfg.grid.tau_f, q).angle;
    const double quad = crosscheck::omega_simpson(w, cfg.frame, 0.0, cfg.grid.tau_f, q, 200);
    r.add("kinematics.omega_matches_simpson_oracle", std::abs(quad - closed) / std::abs(closed),
          1e-6);
  }

  // --- wavepacket ---
  {
    // Numerical normalization of the packet density over a wide grid.
    const ScenarioConfig cfg = default_scenario(0.1);
    const WavePacket p = WavePacket::centered(cfg.frame, cfg.packet.width);
    const int n = 200;
    const double span = 8.0 * p.width;
    const double h = 2.0 * span / n;
    double integral = 0.0;
    for (int i = 0; i <= n; ++i) {
      for (int j = 0; j <= n; ++j) {
        const LocalMomentum k{p.center.k1 - span + i * h, 0.0, p.center.k3 - span + j * h};
        double wgt = ((i == 0 || i == n) ? 0.5 : 1.0) * ((j == 0 || j == n) ? 0.5 : 1.0);
        integral += wgt * weight(p, k) * h * h;
      }
    }
    r.add("wavepacket.weight_normalization", std::abs(integral - 1.0), 1e-10);
  }
  {
    double worst = 0.0;
    for (double amp : {0.1, 0.01}) {
      const ScenarioConfig cfg = default_scenario(amp);
      const Waveform w = build_waveform(cfg.waveform);
      const WavePacket p = WavePacket::centered(cfg.frame, cfg.packet.width);
      const DecoherenceFactor a = ubar(p, w, cfg.frame, 0.0, cfg.grid.tau_f, 40);
      const DecoherenceFactor b = ubar(p, w, cfg.frame, 0.0, cfg.grid.tau_f, 80);
      worst = std::max(worst, std::abs(a.deficit() - b.deficit()));
      worst = std::max(worst, std::abs(a.phase() - b.phase()));
    }
    r.add("wavepacket.quadrature_order_convergence", worst, 1e-12);
  }
  {
    // Wider momentum spread cannot reduce the deficit.
    const ScenarioConfig cfg = default_scenario(0.1);
    const Waveform w = build_waveform(cfg.waveform);
    double previous = -1.0;
    double worst = 0.0;
    for (double width : {0.1, 0.5, 1.0, 2.0}) {
      const WavePacket p = WavePacket::centered(cfg.frame, width * cfg.frame.mass);
      const double d = ubar(p, w, cfg.frame, 0.0, cfg.grid.tau_f).deficit();
      if (previous >= 0.0 && d < previous) worst = std::max(worst, previous - d);
      previous = d;
    }
    r.add("wavepacket.width_monotonicity", worst, 0.0);
  }
  {
    // First-order omega is linear in A, so the deficit scales as A^2.
    const ScenarioConfig c1 = default_scenario(1e-6);
    const ScenarioConfig c2 = default_scenario(2e-6);
    const Waveform w1 = build_waveform(c1.waveform);
    const Waveform w2 = build_waveform(c2.waveform);
    const WavePacket p = WavePacket::centered(c1.frame, c1.packet.width);
    const double d1 =
        ubar(p, w1, c1.frame, 0.0, c1.grid.tau_f, 40, OmegaMethod::first_order).deficit();
    const double d2 =
        ubar(p, w2, c2.frame, 0.0, c2.grid.tau_f, 40, OmegaMethod::first_order).deficit();
    r.add("wavepacket.amplitude_scaling_law", std::abs(d2 / d1 - 4.0), 1e-3);
  }
  {
    const std::uint64_t mc_n = level == Level::full ? 1000000 : 100000;
    double worst = 0.0;
    int idx = 0;
    for (const ScenarioConfig& cfg :
         {default_scenario(0.1), sine_scenario(0.1), default_scenario(1e-6)}) {
      const Waveform w = build_waveform(cfg.waveform);
      const WavePacket p = WavePacket::centered(cfg.frame, cfg.packet.width);
      const DecoherenceFactor q = ubar(p, w, cfg.frame, 0.0, cfg.grid.tau_f);
      const MonteCarloUbar mc = ubar_mc(p, w, cfg.frame, 0.0, cfg.grid.tau_f, mc_n, kSeed + idx);
      const double sigma_d = std::max(mc.real_deficit_stderr, 1e-300);
      const double sigma_s = std::max(mc.imag_stderr, 1e-300);
      worst = std::max(worst,
                       std::abs(mc.value.real_deficit() - q.real_deficit()) / (3.0 * sigma_d));
      worst = std::max(worst, std::abs(mc.value.imag() - q.imag()) / (3.0 * sigma_s));
      ++idx;
    }
    r.add("wavepacket.monte_carlo_consistency", worst, 1.0, "normalized by 3 standard errors");
  }
  {
    double worst = 0.0;
    for (int i = 0; i < 10; ++i) {
      // Physical pairs satisfy sbar^2 <= 2 dc - dc^2 (modulus at most 1).
      const double dc = std::pow(10.0, -uniform(kSeed + 16, 2 * i, 2.0, 40.0));
      const double s = uniform(kSeed + 16, 2 * i + 1, 0.0, 0.99) * std::sqrt(dc * (2.0 - dc));
      const DecoherenceFactor d = DecoherenceFactor::from_deficits(dc, s);
      // (1 - delta)^2 == cbar^2 + sbar^2, compared in deficit space.
      const long double lhs = crosscheck::deficit_pow_ld(d.deficit(), 2.0L);
      const long double rhs =
          2.0L * static_cast<long double>(dc) - static_cast<long double>(dc) * dc -
          static_cast<long double>(s) * s;
      if (rhs > 0.0L) {
        worst = std::max(worst, static_cast<double>(fabsl(lhs - rhs) / rhs));
      }
    }
    r.add("wavepacket.decoherence_factor_consistency", worst, 1e-12);
  }
  {
    double worst = 0.0;
    for (double delta : {1e-42, 1e-21, 1e-12, 1e-4}) {
      for (double n : {2.0, 8.0, 1024.0}) {
        const double got = deficit_pow(delta, n);
        const long double want = crosscheck::deficit_pow_ld(delta, n);
        worst = std::max(worst, static_cast<double>(fabsl(got - want) / want));
      }
    }
    r.add("wavepacket.deficit_pow_extended_precision", worst, 1e-12);
  }

  // --- quantum ---
  {
    const ScenarioConfig cfg = default_scenario(0.1);
    const Waveform w = build_waveform(cfg.waveform);
    const WavePacket p = WavePacket::centered(cfg.frame, cfg.packet.width);
    const DecoherenceFactor d = ubar(p, w, cfg.frame, 0.0, cfg.grid.tau_f);
    const SpinChannel ch(d);
    std::array<Mat2, 4> images;
    for (int jk = 0; jk < 4; ++jk) images[jk] = channel_table(ch, jk >> 1, jk & 1);
    const auto oracle =
        crosscheck::channel_images_quadrature(p, w, cfg.frame, 0.0, cfg.grid.tau_f);
    r.add("quantum.channel_table_matches_rotation_average", channel_table_error(images, oracle),
          1e-10);
  }
  {
    // Trace and Hermiticity preservation on random single-qubit operators.
    double worst = 0.0;
    const SpinChannel ch(DecoherenceFactor::from_deficits(0.3, 0.2));
    for (int i = 0; i < n_samples; ++i) {
      // Random valid density operator: |off-diagonal| <= sqrt(a(1-a)).
      std::vector<cd> m(4);
      const double a = uniform(kSeed + 17, 4 * i, 0.0, 1.0);
      const double rmax = std::sqrt(a * (1.0 - a));
      const double rad = uniform(kSeed + 17, 4 * i + 1, 0.0, 0.99) * rmax;
      const double ph = uniform(kSeed + 17, 4 * i + 2, 0.0, 2.0 * kPi);
      m[0] = a;
      m[3] = 1.0 - a;
      m[1] = cd(rad * std::cos(ph), rad * std::sin(ph));
      m[2] = std::conj(m[1]);
      const DensityOperator rho(m, {"A"});
      const DensityOperator out = apply_channel(ch, rho, "A");
      cd tr = out.at(0, 0) + out.at(1, 1);
      worst = std::max(worst, std::abs(tr - cd(1.0)));
      worst = std::max(worst, std::abs(out.at(0, 1) - std::conj(out.at(1, 0))));
      for (double e : herm_eigenvalues(out)) worst = std::max(worst, std::max(0.0, -e));
    }
    r.add("quantum.channel_preserves_trace_hermiticity_positivity", worst, 1e-10);
  }
  {
    double worst = 0.0;
    for (double amp : {1e-3, 1e-2, 1e-1}) {
      const ScenarioConfig cfg = default_scenario(amp);
      const Waveform w = build_waveform(cfg.waveform);
      const WavePacket p = WavePacket::centered(cfg.frame, cfg.packet.width);
      const DecoherenceFactor d = ubar(p, w, cfg.frame, 0.0, cfg.grid.tau_f);
      const SpinChannel ch(d);
      const DensityOperator pair = evolve_ghz(2, ch);
      const double usq = sq(d.cbar()) + sq(d.sbar());
      const auto eig = herm_eigenvalues(pair);
      worst = std::max(worst, std::abs(eig[3] - 0.5 * (1.0 + usq)));
      worst = std::max(worst, std::abs(eig[2] - 0.5 * (1.0 - usq)));
      worst = std::max(worst, std::max(std::abs(eig[0]), std::abs(eig[1])));
      const double p_mix = 0.5 * (1.0 - usq);
      worst = std::max(worst, std::abs(von_neumann_entropy(pair) - binary_entropy_bits(p_mix)));
      worst = std::max(worst, std::abs(negativity(pair, {0}) - usq));
      const DensityOperator single = evolve_ghz(1, ch);
      const double p1 = 0.5 * (1.0 - std::abs(d.to_complex()));
      worst = std::max(worst, std::abs(von_neumann_entropy(single) - binary_entropy_bits(p1)));
    }
    r.add("quantum.two_particle_closed_forms", worst, 1e-10);
  }
  {
    double worst = 0.0;
    const SpinChannel ch(DecoherenceFactor::from_deficits(0.11, 0.07));
    const int max_n = level == Level::full ? 7 : 5;
    for (int n = 1; n <= max_n; ++n) {
      DensityOperator direct = evolve_ghz(n, ch);
      DensityOperator stepwise = ghz_state(n);
      for (int q = 1; q <= n; ++q) stepwise = apply_channel(ch, stepwise, "A" + std::to_string(q));
      for (std::size_t i = 0; i < direct.data().size(); ++i) {
        worst = std::max(worst, std::abs(direct.data()[i] - stepwise.data()[i]));
      }
    }
    r.add("quantum.ghz_evolution_two_routes", worst, 1e-12);
  }
  {
    // Matrix track against deficit track where both are trustworthy.
    const ScenarioConfig cfg = default_scenario(1e-2);
    const Waveform w = build_waveform(cfg.waveform);
    const WavePacket p = WavePacket::centered(cfg.frame, cfg.packet.width);
    const DecoherenceFactor d = ubar(p, w, cfg.frame, 0.0, cfg.grid.tau_f);
    const double matrix_deficit = 1.0 - negativity(evolve_ghz(2, SpinChannel(d)), {0});
    const double deficit_track = deficit_sq(d);
    r.add("quantum.matrix_vs_deficit_track", std::abs(matrix_deficit - deficit_track) / deficit_track,
          1e-6);
  }
  {
    double worst = 0.0;
    for (int i = 0; i < 5; ++i) {
      const std::size_t dim = 8;
      HermitianMatrix m;
      m.dim = dim;
      m.data.assign(dim * dim, cd(0.0));
      for (std::size_t a = 0; a < dim; ++a) {
        m.data[a * dim + a] = uniform(kSeed + 18, 100 * i + a, -1.0, 1.0);
        for (std::size_t b = a + 1; b < dim; ++b) {
          const cd v(uniform(kSeed + 18, 100 * i + 10 * a + b, -1.0, 1.0),
                     uniform(kSeed + 19, 100 * i + 10 * a + b, -1.0, 1.0));
          m.data[a * dim + b] = v;
          m.data[b * dim + a] = std::conj(v);
        }
      }
      const auto jac = herm_eigenvalues(m);
      const auto bis = crosscheck::herm_eigenvalues_bisect(m);
      for (std::size_t k = 0; k < dim; ++k) worst = std::max(worst, std::abs(jac[k] - bis[k]));
    }
    r.add("quantum.eigenvalues_match_bisection_oracle", worst, 1e-10);
  }

  // --- swapping ---
  {
    double worst_p = 0.0, worst_amp = 0.0, worst_outcome = 0.0;
    for (double usq : {0.5, 0.8, 0.95}) {
      // Channel with |ubar|^2 = usq, split between cbar and sbar.
      const double cbar = std::sqrt(usq) * std::cos(0.3);
      const double sbar = std::sqrt(usq) * std::sin(0.3);
      const SpinChannel ch(DecoherenceFactor::from_complex(cd(cbar, sbar)));
      const DensityOperator pair = evolve_ghz(2, ch);
      const OutcomeEquivalence eq = outcome_equivalence_check(pair, pair);
      double p_sum = 0.0;
      for (double p : eq.probabilities) {
        worst_p = std::max(worst_p, std::abs(p - 0.25));
        p_sum += p;
      }
      worst_p = std::max(worst_p, std::abs(p_sum - 1.0));
      worst_outcome = std::max(worst_outcome, eq.max_pairwise_diff);
      const auto ladder = swap_ladder(ch, 3, true);
      for (const auto& lv : ladder) {
        const double want = std::pow(usq, lv.particle_count / 2.0);
        worst_amp = std::max(worst_amp, std::abs(*lv.matrix_negativity - want) / want);
      }
    }
    r.add("swapping.bell_outcome_probabilities", worst_p, 1e-12);
    r.add("swapping.ladder_amplification_law", worst_amp, 1e-8);
    r.add("swapping.outcome_independence", worst_outcome, 1e-10);
  }
  {
    // Matrix-track ladder deficits agree with the closed-form deficit track.
    const SpinChannel ch(DecoherenceFactor::from_complex(cd(0.999, 0.02)));
    const auto ladder = swap_ladder(ch, 3, true);
    double worst = 0.0;
    for (const auto& lv : ladder) {
      if (lv.deficit < 1e-12) continue;
      worst = std::max(worst, std::abs((1.0 - *lv.matrix_negativity) - lv.deficit) / lv.deficit);
    }
    r.add("swapping.track_consistency", worst, 1e-6);
  }

  return r.report;
}

}  // namespace gwspin::validation
