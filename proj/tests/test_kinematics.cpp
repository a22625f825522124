#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gwspin/crosscheck.hpp"
#include "gwspin/kinematics.hpp"
#include "gwspin/quadrature.hpp"

using namespace gwspin;

namespace {

constexpr double kPi = 3.14159265358979323846;

FrameParams frame(double rapidity, double angle, double t_i = 0.0, double z_i = 0.0) {
  FrameParams fp;
  fp.mass = 1.0;
  fp.rapidity = rapidity;
  fp.angle = angle;
  fp.t_i = t_i;
  fp.z_i = z_i;
  return fp;
}

FrameParams random_frame(std::uint64_t seed, std::uint64_t i) {
  auto u = [&](std::uint64_t k, double lo, double hi) {
    return lo + (hi - lo) * uniform_open(splitmix64_at(seed, 8 * i + k));
  };
  FrameParams fp;
  fp.mass = u(0, 0.5, 2.0);
  fp.rapidity = u(1, 0.2, 2.0);
  fp.angle = u(2, 0.15, kPi / 2.0 - 0.15);
  fp.t_i = u(3, -2.0, 2.0);
  fp.z_i = u(4, -2.0, 2.0);
  return fp;
}

Event random_event(std::uint64_t seed, std::uint64_t i) {
  auto u = [&](std::uint64_t k, double lo, double hi) {
    return lo + (hi - lo) * uniform_open(splitmix64_at(seed, 4 * i + k));
  };
  return Event{u(0, -3.0, 3.0), u(1, -3.0, 3.0), u(2, -3.0, 3.0), u(3, -3.0, 3.0)};
}

double max_abs(const Mat4& m) {
  double worst = 0.0;
  for (const auto& row : m) {
    for (double v : row) worst = std::max(worst, std::abs(v));
  }
  return worst;
}

}  // namespace

TEST_CASE("frame parameter validation") {
  CHECK_NOTHROW(frame(1.0, kPi / 4.0).validate());
  FrameParams bad = frame(1.0, kPi / 4.0);
  bad.mass = 0.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  CHECK_THROWS_AS(frame(0.0, kPi / 4.0).validate(), std::invalid_argument);
  CHECK_THROWS_AS(frame(1.0, 0.0).validate(), std::invalid_argument);
  CHECK_THROWS_AS(frame(1.0, kPi / 2.0).validate(), std::invalid_argument);
  FrameParams boundary = frame(0.0, 0.0);
  boundary.allow_boundary = true;
  CHECK_NOTHROW(boundary.validate());
}

TEST_CASE("four velocity at rest and in flat spacetime") {
  const Waveform zero = Waveform::zero();
  const Vec4 rest = four_velocity(zero, frame(0.0, kPi / 4.0), Event{});
  CHECK(rest[0] == 1.0);
  CHECK(rest[1] == 0.0);
  CHECK(rest[2] == 0.0);
  CHECK(rest[3] == 0.0);

  const Vec4 boosted = four_velocity(zero, frame(1.0, kPi / 4.0), Event{});
  CHECK(boosted[0] == doctest::Approx(std::cosh(1.0)).epsilon(1e-15));
  CHECK(boosted[1] == doctest::Approx(std::sinh(1.0) / std::sqrt(2.0)).epsilon(1e-15));
  CHECK(boosted[2] == 0.0);
  CHECK(boosted[3] == doctest::Approx(std::sinh(1.0) / std::sqrt(2.0)).epsilon(1e-15));
}

TEST_CASE("four velocity is unit normalized against the wave metric") {
  const Waveform w = Waveform::gaussian(0.1, 1.0);
  for (int i = 0; i < 100; ++i) {
    const FrameParams fp = random_frame(21, i);
    const Event ev = random_event(22, i);
    const auto diag = metric_at(w, ev).diagonal();
    const Vec4 u = four_velocity(w, fp, ev);
    CHECK(std::abs(metric_dot(diag, u, u) + 1.0) <= 1e-12);
  }
}

TEST_CASE("trajectory starts at the initial event and has linear phase") {
  const Waveform w = Waveform::gaussian(0.1, 1.0);
  FrameParams fp = frame(1.0, kPi / 3.0, -5.0, 0.5);
  fp.x_i = 2.0;
  fp.y_i = -1.0;
  const Event start = trajectory(w, fp, 0.0);
  CHECK(start.t == fp.t_i);
  CHECK(start.x == fp.x_i);
  CHECK(start.y == fp.y_i);
  CHECK(start.z == fp.z_i);

  const double rate = fp.phase_rate();
  for (double tau : {0.3, 1.7, 4.0}) {
    const Event ev = trajectory(w, fp, tau);
    CHECK(ev.phase() == doctest::Approx(fp.initial_phase() + tau * rate).epsilon(1e-13));
    CHECK(phase_at(fp, tau) == fp.initial_phase() + tau * rate);
    CHECK(ev.y == fp.y_i);
  }
  CHECK_THROWS_AS(trajectory(w, fp, -1.0), std::invalid_argument);
}

TEST_CASE("flat-space transverse drift is linear in proper time") {
  const FrameParams fp = frame(1.0, kPi / 3.0);
  const Event ev = trajectory(Waveform::zero(), fp, 2.0);
  CHECK(ev.x == doctest::Approx(2.0 * std::sinh(1.0) * std::sin(kPi / 3.0)).epsilon(1e-14));
}

TEST_CASE("transverse drift integral matches dense Simpson quadrature") {
  const Waveform w = Waveform::gaussian(0.1, 1.0);
  const FrameParams fp = frame(1.0, kPi / 4.0, -3.0, 0.0);
  const double tau = 4.0;
  const Event ev = trajectory(w, fp, tau);
  const double brute = simpson(
      [&](double s) {
        return std::sinh(1.0) * std::sin(kPi / 4.0) / std::sqrt(1.0 + w.eval(phase_at(fp, s)));
      },
      0.0, tau, 2000);
  CHECK(ev.x == doctest::Approx(brute).epsilon(1e-11));
}

TEST_CASE("acceleration vanishes for the null wave and stays orthogonal") {
  const Acceleration flat = acceleration(Waveform::zero(), frame(1.0, kPi / 4.0), Event{});
  for (int a = 0; a < 4; ++a) {
    CHECK(flat.coord[a] == 0.0);
    CHECK(flat.local[a] == 0.0);
  }

  const Waveform w = Waveform::gaussian(0.1, 1.0);
  for (int i = 0; i < 100; ++i) {
    const FrameParams fp = random_frame(23, i);
    const Event ev = random_event(24, i);
    const auto diag = metric_at(w, ev).diagonal();
    const Vec4 u = four_velocity(w, fp, ev);
    const Acceleration acc = acceleration(w, fp, ev);
    CHECK(std::abs(metric_dot(diag, u, acc.coord)) <= 1e-12);
    // local components are the vierbein image of the coordinate ones
    const Vec4 mapped = to_local(vierbein_at(w, ev), acc.coord);
    for (int a = 0; a < 4; ++a) CHECK(acc.local[a] == doctest::Approx(mapped[a]).epsilon(1e-13));
  }
}

TEST_CASE("transverse force scales out with the angle") {
  const Waveform w = Waveform::gaussian(0.1, 1.0);
  FrameParams fp = frame(1.0, 1e-9);
  fp.allow_boundary = true;
  const Acceleration acc = acceleration(w, fp, Event{0.5, 0.0, 0.0, 0.0});
  CHECK(std::abs(acc.coord[1]) <= 1e-9);
  CHECK(std::abs(acc.coord[0]) <= 1e-17);
}

TEST_CASE("F and G are exact negatives and match the sine closed form") {
  const Waveform zero = Waveform::zero();
  CHECK(big_F(zero, frame(1.0, kPi / 4.0), Event{}) == 0.0);
  CHECK(big_G(zero, frame(1.0, kPi / 4.0), Event{}) == 0.0);

  const Waveform g = Waveform::gaussian(0.1, 1.0);
  const Waveform s = Waveform::sine(0.01, 1.0);
  for (int i = 0; i < 50; ++i) {
    const FrameParams fp = random_frame(25, i);
    const Event ev = random_event(26, i);
    for (const Waveform* w : {&g, &s}) {
      CHECK(big_G(*w, fp, ev) + big_F(*w, fp, ev) == 0.0);
    }
  }

  // F at u = 0 for the sinusoid: (cosh xi - sinh xi cos theta) * (A/2)
  const FrameParams fp = frame(1.0, kPi / 4.0);
  const double expected =
      (std::cosh(1.0) - std::sinh(1.0) * std::cos(kPi / 4.0)) * 0.01 / 2.0;
  CHECK(big_F(s, fp, Event{0.0, 0.0, 0.0, 0.0}) == doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("F equals the proper-time derivative of log sqrt(1+f)") {
  const Waveform w = Waveform::gaussian(0.1, 1.0);
  const FrameParams fp = frame(0.8, 0.9, -2.0, 0.0);
  const double tau = 1.3;
  const double h = 1e-6;
  auto logsqrt = [&](double s) { return 0.5 * std::log1p(w.eval(phase_at(fp, s))); };
  const double fd = (logsqrt(tau + h) - logsqrt(tau - h)) / (2.0 * h);
  const double an = big_F(w, fp, trajectory(w, fp, tau));
  CHECK(an == doctest::Approx(fd).epsilon(1e-8));
}

TEST_CASE("lorentz generator null cases") {
  const FrameParams fp = frame(1.0, kPi / 4.0);
  CHECK(max_abs(lorentz_generator(Waveform::zero(), fp, Event{})) == 0.0);

  FrameParams rest = frame(0.0, kPi / 4.0);
  rest.allow_boundary = true;
  const Waveform w = Waveform::gaussian(0.1, 1.0);
  CHECK(max_abs(lorentz_generator(w, rest, Event{0.3, 0.0, 0.0, 0.0})) == 0.0);
}

TEST_CASE("lorentz generator closed form equals definitional route") {
  const Waveform g = Waveform::gaussian(0.1, 1.0);
  const Waveform s = Waveform::sine(0.1, 1.0);
  for (int i = 0; i < 100; ++i) {
    const FrameParams fp = random_frame(27, i);
    const Event ev = random_event(28, i);
    const Waveform& w = (i % 2 == 0) ? g : s;
    const Mat4 closed = lorentz_generator(w, fp, ev);
    const Mat4 defn = lorentz_generator_definitional(w, fp, ev);
    for (int a = 0; a < 4; ++a) {
      for (int b = 0; b < 4; ++b) {
        CHECK(std::abs(closed[a][b] - defn[a][b]) <= 1e-10);
      }
    }
    // eta-lowered antisymmetry
    for (int a = 0; a < 4; ++a) {
      for (int b = 0; b < 4; ++b) {
        CHECK(std::abs(kMinkowski[a] * closed[a][b] + kMinkowski[b] * closed[b][a]) <= 1e-12);
      }
    }
  }
}

TEST_CASE("wigner generator structure and the -G H identity") {
  const Waveform w = Waveform::gaussian(0.1, 1.0);
  CHECK(max_abs(wigner_generator(Waveform::zero(), frame(1.0, 0.7), Event{}, {0.1, 0.0, 0.2})) ==
        0.0);

  for (int i = 0; i < 100; ++i) {
    const FrameParams fp = random_frame(29, i);
    const Event ev = random_event(30, i);
    const LocalMomentum k{-2.0 + 4.0 * uniform_open(splitmix64_at(31, 2 * i)), 0.0,
                          -2.0 + 4.0 * uniform_open(splitmix64_at(31, 2 * i + 1))};
    const Mat4 phi = wigner_generator(w, fp, ev, k);
    const double expected = -big_G(w, fp, ev) * big_H(fp, k);
    CHECK(std::abs(phi[1][3] - expected) <= 1e-12);
    CHECK(std::abs(phi[3][1] + expected) <= 1e-12);
    for (int a = 0; a < 4; ++a) {
      CHECK(phi[0][a] == 0.0);
      CHECK(phi[a][0] == 0.0);
    }
    CHECK(phi[1][2] == 0.0);
    CHECK(phi[2][1] == 0.0);
    CHECK(phi[2][3] == 0.0);
    CHECK(phi[3][2] == 0.0);
  }

  // packet-center identity with the explicit local momentum
  const FrameParams fp = frame(1.0, kPi / 4.0);
  const Event ev{0.4, 0.0, 0.0, 0.0};
  const LocalMomentum q = packet_center(fp);
  const Mat4 phi = wigner_generator(w, fp, ev, q);
  CHECK(phi[1][3] == doctest::Approx(-big_G(w, fp, ev) * big_H(fp, q)).epsilon(1e-14));
}

TEST_CASE("H factor closed-form values") {
  FrameParams fp = frame(0.0, kPi / 4.0);
  fp.allow_boundary = true;
  CHECK(big_H(fp, {0.3, 0.0, -0.2}) == 0.0);

  FrameParams tiny = frame(1.0, 1e-12);
  tiny.allow_boundary = true;
  CHECK(std::abs(big_H(tiny, {0.3, 0.0, -0.2})) <= 1e-11);

  // m = 1, xi = 1, theta = pi/2, k = 0: cosh(1) sinh(1)
  FrameParams perp = frame(1.0, kPi / 2.0);
  perp.allow_boundary = true;
  CHECK(big_H(perp, {0.0, 0.0, 0.0}) ==
        doctest::Approx(std::cosh(1.0) * std::sinh(1.0)).epsilon(1e-15));

  // packet center: H(q) = sinh(xi) sin(theta)
  const FrameParams fp2 = frame(0.7, 0.6);
  CHECK(big_H(fp2, packet_center(fp2)) ==
        doctest::Approx(std::sinh(0.7) * std::sin(0.6)).epsilon(1e-14));
}

TEST_CASE("omega vanishes for the null wave and nearly vanishes over a period") {
  const FrameParams fp = frame(1.0, kPi / 4.0, 5.0, 5.0);  // u_i = 0
  const LocalMomentum q = packet_center(fp);
  for (auto method : {OmegaMethod::exact_log, OmegaMethod::first_order}) {
    CHECK(omega(Waveform::zero(), fp, 0.0, 3.0, q, method).angle == 0.0);
  }

  const Waveform s = Waveform::sine(0.01, 1.0);
  const double period_tau = 2.0 * kPi / fp.phase_rate();
  const double residual = omega(s, fp, 0.0, period_tau, q).angle;
  CHECK(std::abs(residual) <= 1e-17);  // endpoint f values differ only by sin() rounding
}

TEST_CASE("omega methods differ by at most the log expansion remainder") {
  const Waveform w = Waveform::gaussian(0.1, 1.0);
  const FrameParams fp = frame(1.0, kPi / 4.0, -5.0, 0.0);
  const LocalMomentum q = packet_center(fp);
  const double bound = 0.5 * 0.1 * 0.1 * std::abs(big_H(fp, q));
  const double tau_f = 10.0 / fp.phase_rate();
  for (int i = 0; i <= 40; ++i) {
    const double tau = tau_f * i / 40.0;
    const double exact = omega(w, fp, 0.0, tau, q, OmegaMethod::exact_log).angle;
    const double first = omega(w, fp, 0.0, tau, q, OmegaMethod::first_order).angle;
    CHECK(std::abs(exact - first) <= bound);
  }
}

TEST_CASE("omega is additive over adjacent intervals") {
  const Waveform w = Waveform::gaussian(0.1, 1.0);
  const FrameParams fp = frame(1.0, kPi / 4.0, -5.0, 0.0);
  const LocalMomentum q = packet_center(fp);
  const double tau_f = 7.0;
  for (int i = 1; i < 20; ++i) {
    const double tm = tau_f * i / 20.0;
    const double total = omega(w, fp, 0.0, tau_f, q).angle;
    const double split = omega(w, fp, 0.0, tm, q).angle + omega(w, fp, tm, tau_f, q).angle;
    const double scale = std::max({std::abs(total), std::abs(split), 1e-300});
    CHECK(std::abs(total - split) / scale <= 1e-15);
  }
  CHECK_THROWS_AS(omega(w, fp, 1.0, 0.5, q), std::invalid_argument);
}

TEST_CASE("omega closed form matches Simpson quadrature of the generator") {
  const Waveform w = Waveform::gaussian(0.01, 1.0);
  const FrameParams fp = frame(1.0, kPi / 4.0, -5.0, 0.0);
  const LocalMomentum q = packet_center(fp);
  const double tau_f = 5.0 / fp.phase_rate();  // u: -5 -> 0 (tail to peak)
  const double closed = omega(w, fp, 0.0, tau_f, q).angle;
  const double quad = crosscheck::omega_simpson(w, fp, 0.0, tau_f, q, 200);
  CHECK(std::abs(quad - closed) / std::abs(closed) <= 1e-6);
}

TEST_CASE("omega stays accurate at strain 1e-21") {
  const Waveform w = Waveform::gaussian(1e-21, 1.0);
  const FrameParams fp = frame(1.0, kPi / 4.0, -5.0, 0.0);
  const LocalMomentum q = packet_center(fp);
  const double tau_f = 5.0 / fp.phase_rate();
  const double got = omega(w, fp, 0.0, tau_f, q).angle;
  // ln sqrt(1+ f) == f/2 to this precision, and f(-5) is negligible
  const double expected = 0.5 * 1e-21 * big_H(fp, q);
  CHECK(got == doctest::Approx(expected).epsilon(1e-9));
  CHECK(got != 0.0);
}

TEST_CASE("wigner rotation matrix") {
  const auto id = wigner_matrix({0.0, OmegaMethod::exact_log});
  CHECK(id[0][0] == 1.0);
  CHECK(id[0][1] == 0.0);
  CHECK(id[1][0] == 0.0);
  CHECK(id[1][1] == 1.0);

  const auto half_turn = wigner_matrix({kPi, OmegaMethod::exact_log});
  CHECK(std::abs(half_turn[0][0]) <= 1e-16);
  CHECK(half_turn[0][1] == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(half_turn[1][0] == doctest::Approx(1.0).epsilon(1e-15));

  const auto r = wigner_matrix({0.3, OmegaMethod::exact_log});
  const double det = r[0][0] * r[1][1] - r[0][1] * r[1][0];
  CHECK(det == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::abs(r[0][0] * r[0][1] + r[1][0] * r[1][1]) <= 1e-16);
  CHECK(r[0][0] * r[0][0] + r[1][0] * r[1][0] == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("local four-momentum components via the frame map") {
  const Waveform w = Waveform::gaussian(0.1, 1.0);
  const FrameParams fp = frame(1.0, kPi / 4.0);
  const Event ev{0.0, 0.0, 0.0, 0.0};  // f = 0.1
  const Vec4 u_local = to_local(vierbein_at(w, ev), four_velocity(w, fp, ev));
  CHECK(u_local[0] == doctest::Approx(std::cosh(1.0)).epsilon(1e-14));
  CHECK(u_local[1] == doctest::Approx(std::sinh(1.0) * std::sin(kPi / 4.0)).epsilon(1e-14));
  CHECK(u_local[2] == 0.0);
  CHECK(u_local[3] == doctest::Approx(std::sinh(1.0) * std::cos(kPi / 4.0)).epsilon(1e-14));
  // the local components no longer depend on the strain
  const LocalMomentum q = packet_center(fp);
  CHECK(u_local[1] * fp.mass == doctest::Approx(q.k1).epsilon(1e-14));
  CHECK(u_local[3] * fp.mass == doctest::Approx(q.k3).epsilon(1e-14));
}

TEST_CASE("omega is continuous across the small-strain branch switch") {
  // The accurate-log path switches representation at |f| = 1e-8; the scaled
  // angle Omega/A must be smooth through the seam.
  const FrameParams fp = frame(1.0, kPi / 4.0, -5.0, 0.0);
  const LocalMomentum q = packet_center(fp);
  const double tau_f = 5.0 / fp.phase_rate();
  double prev_scaled = 0.0;
  bool first = true;
  for (double amp : {0.97e-8, 0.99e-8, 1.01e-8, 1.03e-8}) {
    const Waveform w = Waveform::gaussian(amp, 1.0);
    const double scaled = omega(w, fp, 0.0, tau_f, q).angle / amp;
    if (!first) CHECK(scaled == doctest::Approx(prev_scaled).epsilon(1e-7));
    prev_scaled = scaled;
    first = false;
  }
}
