#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gwspin/crosscheck.hpp"
#include "gwspin/quadrature.hpp"
#include "gwspin/quantum.hpp"

using namespace gwspin;

namespace {

constexpr double kPi = 3.14159265358979323846;

double max_entry_diff(const DensityOperator& a, const DensityOperator& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i) {
    worst = std::max(worst, std::abs(a.data()[i] - b.data()[i]));
  }
  return worst;
}

// Random density operator from G G^dagger normalization.
DensityOperator random_density(int n_qubits, std::uint64_t seed) {
  const std::size_t d = std::size_t{1} << n_qubits;
  std::vector<cd> g(d * d);
  for (std::size_t i = 0; i < g.size(); ++i) {
    g[i] = cd(uniform_open(splitmix64_at(seed, 2 * i)) - 0.5,
              uniform_open(splitmix64_at(seed, 2 * i + 1)) - 0.5);
  }
  std::vector<cd> rho(d * d, cd(0.0));
  cd trace = 0.0;
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t c = 0; c < d; ++c) {
      cd s = 0.0;
      for (std::size_t k = 0; k < d; ++k) s += g[r * d + k] * std::conj(g[c * d + k]);
      rho[r * d + c] = s;
      if (r == c) trace += s;
    }
  }
  for (auto& v : rho) v /= trace.real();
  std::vector<std::string> labels;
  for (int q = 0; q < n_qubits; ++q) labels.push_back("Q" + std::to_string(q));
  return DensityOperator(std::move(rho), std::move(labels));
}

SpinChannel channel(double cbar, double sbar) {
  return SpinChannel(DecoherenceFactor::from_complex({cbar, sbar}));
}

// Scenario used to tie the channel to the rotation-average oracle.
struct OracleScenario {
  Waveform wave = Waveform::gaussian(0.1, 1.0);
  FrameParams fp;
  WavePacket packet;
  double tau_f;
  OracleScenario() {
    fp.mass = 1.0;
    fp.rapidity = 1.0;
    fp.angle = kPi / 4.0;
    fp.t_i = -5.0;
    fp.z_i = 0.0;
    packet = WavePacket::centered(fp, 1.0);
    tau_f = 5.0 / fp.phase_rate();
  }
};

}  // namespace

TEST_CASE("density operator constructor enforces its invariants") {
  // not Hermitian
  CHECK_THROWS_AS(DensityOperator({cd(0.5), cd(0.3), cd(0.1), cd(0.5)}, {"A"}),
                  std::invalid_argument);
  // trace != 1
  CHECK_THROWS_AS(DensityOperator({cd(0.9), cd(0.0), cd(0.0), cd(0.2)}, {"A"}),
                  std::invalid_argument);
  // wrong size
  CHECK_THROWS_AS(DensityOperator(std::vector<cd>(9, cd(0.0)), {"A"}), std::invalid_argument);
  CHECK_NOTHROW(DensityOperator({cd(0.5), cd(0.5), cd(0.5), cd(0.5)}, {"A"}));
}

TEST_CASE("channel table reproduces the closed-form images") {
  const SpinChannel identity(DecoherenceFactor::identity());
  const Mat2 r00 = channel_table(identity, 0, 0);
  CHECK(r00[0][0] == 1.0);
  CHECK(r00[0][1] == 0.0);
  CHECK(r00[1][0] == 0.0);
  CHECK(r00[1][1] == 0.0);

  const SpinChannel ch = channel(0.8, 0.1);
  const Mat2 e00 = channel_table(ch, 0, 0);
  CHECK(e00[0][0] == doctest::Approx(0.9).epsilon(1e-15));
  CHECK(e00[0][1] == doctest::Approx(0.05).epsilon(1e-15));
  CHECK(e00[1][0] == doctest::Approx(0.05).epsilon(1e-15));
  CHECK(e00[1][1] == doctest::Approx(0.1).epsilon(1e-15));
  const Mat2 e01 = channel_table(ch, 0, 1);
  CHECK(e01[0][0] == doctest::Approx(-0.05).epsilon(1e-15));
  CHECK(e01[0][1] == doctest::Approx(0.9).epsilon(1e-15));
  CHECK(e01[1][0] == doctest::Approx(-0.1).epsilon(1e-15));
  CHECK(e01[1][1] == doctest::Approx(0.05).epsilon(1e-15));
  // transposition relation between the off-diagonal images
  const Mat2 e10 = channel_table(ch, 1, 0);
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) CHECK(e10[r][c] == e01[c][r]);
  }
}

TEST_CASE("channel table matches the rotation-average oracle for a matched scenario") {
  const OracleScenario s;
  const DecoherenceFactor u = ubar(s.packet, s.wave, s.fp, 0.0, s.tau_f);
  const SpinChannel ch(u);
  const auto oracle = crosscheck::channel_images_quadrature(s.packet, s.wave, s.fp, 0.0, s.tau_f);
  for (int jk = 0; jk < 4; ++jk) {
    const Mat2 img = channel_table(ch, jk >> 1, jk & 1);
    for (int r = 0; r < 2; ++r) {
      for (int c = 0; c < 2; ++c) {
        CHECK(std::abs(img[r][c] - oracle[jk][r][c]) <= 1e-10);
      }
    }
  }
}

TEST_CASE("apply_channel with the identity factor is the identity") {
  const SpinChannel identity(DecoherenceFactor::identity());
  const DensityOperator rho = random_density(2, 101);
  const DensityOperator out = apply_channel(identity, rho, "Q0");
  CHECK(max_entry_diff(rho, out) <= 1e-16);
  CHECK_THROWS_AS(apply_channel(identity, rho, "nope"), std::invalid_argument);
}

TEST_CASE("apply_channel on both Bell qubits gives the closed-form evolved state") {
  const SpinChannel ch = channel(0.8, 0.1);
  const double usq = 0.8 * 0.8 + 0.1 * 0.1;
  DensityOperator state = bell_state(0);
  state = apply_channel(ch, state, "A");
  state = apply_channel(ch, state, "B");
  const double corner = 0.25 * (1.0 + usq);
  const double mid = 0.25 * (1.0 - usq);
  CHECK(state.at(0, 0).real() == doctest::Approx(corner).epsilon(1e-14));
  CHECK(state.at(0, 3).real() == doctest::Approx(corner).epsilon(1e-14));
  CHECK(state.at(3, 0).real() == doctest::Approx(corner).epsilon(1e-14));
  CHECK(state.at(3, 3).real() == doctest::Approx(corner).epsilon(1e-14));
  CHECK(state.at(1, 1).real() == doctest::Approx(mid).epsilon(1e-14));
  CHECK(state.at(1, 2).real() == doctest::Approx(-mid).epsilon(1e-14));
  CHECK(state.at(2, 1).real() == doctest::Approx(-mid).epsilon(1e-14));
  CHECK(state.at(2, 2).real() == doctest::Approx(mid).epsilon(1e-14));
  CHECK(std::abs(state.at(0, 1)) <= 1e-16);
  CHECK(std::abs(state.at(0, 2)) <= 1e-16);
  CHECK(max_entry_diff(state, evolve_ghz(2, ch)) <= 1e-14);
}

TEST_CASE("apply_channel equals the average-of-unitaries oracle on random states") {
  const OracleScenario s;
  const DecoherenceFactor u = ubar(s.packet, s.wave, s.fp, 0.0, s.tau_f);
  const SpinChannel ch(u);
  const auto gh = gauss_hermite(40);
  double wsum = 0.0;
  for (double wi : gh.weights) {
    for (double wj : gh.weights) wsum += wi * wj;
  }

  for (int target = 0; target < 2; ++target) {
    const DensityOperator rho = random_density(2, 500 + target);
    const DensityOperator fast = apply_channel(ch, rho, rho.qubits()[target]);

    std::vector<cd> slow(16, cd(0.0));
    for (int i = 0; i < 40; ++i) {
      for (int j = 0; j < 40; ++j) {
        const LocalMomentum k{s.packet.center.k1 + s.packet.width * gh.nodes[i], 0.0,
                              s.packet.center.k3 + s.packet.width * gh.nodes[j]};
        const auto um = wigner_matrix(omega(s.wave, s.fp, 0.0, s.tau_f, k));
        const double wt = gh.weights[i] * gh.weights[j] / wsum;
        // U acts on the target qubit slot only
        for (std::size_t r = 0; r < 4; ++r) {
          for (std::size_t c = 0; c < 4; ++c) {
            cd acc = 0.0;
            for (int rp = 0; rp < 2; ++rp) {
              for (int cp = 0; cp < 2; ++cp) {
                const std::size_t bit = target == 0 ? 2 : 1;
                const std::size_t rr = (r & ~bit) | (rp ? bit : 0);
                const std::size_t cc = (c & ~bit) | (cp ? bit : 0);
                const int rbit = (r & bit) ? 1 : 0;
                const int cbit = (c & bit) ? 1 : 0;
                acc += um[rbit][rp] * rho.at(rr, cc) * um[cbit][cp];
              }
            }
            slow[r * 4 + c] += wt * acc;
          }
        }
      }
    }
    for (std::size_t i = 0; i < 16; ++i) {
      CHECK(std::abs(fast.data()[i] - slow[i]) <= 1e-10);
    }
  }
}

TEST_CASE("bell states") {
  const DensityOperator b0 = bell_state(0);
  CHECK(b0.at(0, 0).real() == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(b0.at(0, 3).real() == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(std::abs(b0.at(1, 1)) == 0.0);

  const DensityOperator b1 = bell_state(1);
  CHECK(b1.at(1, 1).real() == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(b1.at(1, 2).real() == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(std::abs(b1.at(0, 0)) == 0.0);

  const DensityOperator b2 = bell_state(2);
  CHECK(b2.at(1, 1).real() == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(b2.at(1, 2).real() == doctest::Approx(-0.5).epsilon(1e-15));

  const DensityOperator b3 = bell_state(3);
  CHECK(b3.at(0, 3).real() == doctest::Approx(-0.5).epsilon(1e-15));

  CHECK_THROWS_AS(bell_state(4), std::invalid_argument);
  CHECK_THROWS_AS(bell_state(-1), std::invalid_argument);
}

TEST_CASE("ghz states from the basis sum") {
  // one particle: |+><+|
  const DensityOperator plus = ghz_state(1);
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      CHECK(plus.at(r, c).real() == doctest::Approx(0.5).epsilon(1e-15));
    }
  }
  // two particles: the Bell projector
  CHECK(max_entry_diff(ghz_state(2), bell_state(0)) <= 1e-16);

  // n <= 7: equals the explicit projector
  for (int n = 3; n <= 7; ++n) {
    const DensityOperator g = ghz_state(n);
    const std::size_t d = g.dim();
    std::vector<cd> amps(d, cd(0.0));
    amps[0] = 1.0 / std::sqrt(2.0);
    amps[d - 1] = 1.0 / std::sqrt(2.0);
    std::vector<std::string> labels;
    for (int q = 1; q <= n; ++q) labels.push_back("A" + std::to_string(q));
    const DensityOperator proj = DensityOperator::pure(amps, labels);
    CHECK(max_entry_diff(g, proj) <= 1e-14);
  }
  CHECK_THROWS_AS(ghz_state(0), std::invalid_argument);
  CHECK_THROWS_AS(ghz_state(11), std::invalid_argument);
}

TEST_CASE("evolved ghz spectrum and construction equivalence") {
  const SpinChannel ch = channel(0.9, 0.1);
  const double usq = 0.9 * 0.9 + 0.1 * 0.1;

  const DensityOperator identity_evolved = evolve_ghz(2, SpinChannel(DecoherenceFactor::identity()));
  CHECK(max_entry_diff(identity_evolved, bell_state(0)) <= 1e-16);

  const auto eig = herm_eigenvalues(evolve_ghz(2, ch));
  CHECK(std::abs(eig[0]) <= 1e-12);
  CHECK(std::abs(eig[1]) <= 1e-12);
  CHECK(eig[2] == doctest::Approx(0.5 * (1.0 - usq)).epsilon(1e-12));
  CHECK(eig[3] == doctest::Approx(0.5 * (1.0 + usq)).epsilon(1e-12));

  for (int n : {1, 2, 3, 5, 7}) {
    DensityOperator stepwise = ghz_state(n);
    for (int q = 1; q <= n; ++q) {
      stepwise = apply_channel(ch, stepwise, "A" + std::to_string(q));
    }
    CHECK(max_entry_diff(evolve_ghz(n, ch), stepwise) <= 1e-12);
  }
}

TEST_CASE("von Neumann entropy") {
  CHECK(von_neumann_entropy(bell_state(0)) <= 1e-12);  // pure
  const DensityOperator mixed({cd(0.5), cd(0.0), cd(0.0), cd(0.5)}, {"A"});
  CHECK(von_neumann_entropy(mixed) == doctest::Approx(1.0).epsilon(1e-14));

  // evolved single qubit: binary entropy of (1 - |ubar|)/2
  const double cbar = 0.85, sbar = 0.2;
  const SpinChannel ch = channel(cbar, sbar);
  const DensityOperator evolved = evolve_ghz(1, ch);
  const double p = 0.5 * (1.0 - std::hypot(cbar, sbar));
  CHECK(von_neumann_entropy(evolved) == doctest::Approx(binary_entropy_bits(p)).epsilon(1e-10));

  // positivity violation
  const DensityOperator bad({cd(1.5), cd(0.0), cd(0.0), cd(-0.5)}, {"A"});
  CHECK_THROWS_AS(von_neumann_entropy(bad), std::domain_error);
}

TEST_CASE("partial transpose spectra") {
  // product state: still positive
  const DensityOperator prod = tensor(random_density(1, 7), random_density(1, 8));
  const auto peig = herm_eigenvalues(partial_transpose(prod, {0}));
  for (double e : peig) CHECK(e >= -1e-12);

  // Bell state: {1/2, 1/2, 1/2, -1/2}
  const auto beig = herm_eigenvalues(partial_transpose(bell_state(0), {0}));
  CHECK(beig[0] == doctest::Approx(-0.5).epsilon(1e-13));
  CHECK(beig[1] == doctest::Approx(0.5).epsilon(1e-13));
  CHECK(beig[2] == doctest::Approx(0.5).epsilon(1e-13));
  CHECK(beig[3] == doctest::Approx(0.5).epsilon(1e-13));

  // evolved pair: {1/2, 1/2, usq/2, -usq/2}
  const double usq = 0.8 * 0.8 + 0.1 * 0.1;
  const auto eeig = herm_eigenvalues(partial_transpose(evolve_ghz(2, channel(0.8, 0.1)), {0}));
  CHECK(eeig[0] == doctest::Approx(-0.5 * usq).epsilon(1e-12));
  CHECK(eeig[1] == doctest::Approx(0.5 * usq).epsilon(1e-12));
  CHECK(eeig[2] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(eeig[3] == doctest::Approx(0.5).epsilon(1e-12));

  CHECK_THROWS_AS(partial_transpose(bell_state(0), {}), std::invalid_argument);
  CHECK_THROWS_AS(partial_transpose(bell_state(0), {0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(partial_transpose(bell_state(0), {5}), std::invalid_argument);
}

TEST_CASE("negativity values") {
  CHECK(negativity(bell_state(0), {0}) == doctest::Approx(1.0).epsilon(1e-13));
  const DensityOperator prod = tensor(random_density(1, 11), random_density(1, 12));
  CHECK(negativity(prod, {0}) <= 1e-12);
  const double usq = 0.9 * 0.9 + 0.05 * 0.05;
  CHECK(negativity(evolve_ghz(2, channel(0.9, 0.05)), {0}) == doctest::Approx(usq).epsilon(1e-12));
  // the partition and its complement give the same value
  const DensityOperator ghz4 = evolve_ghz(4, channel(0.9, 0.05));
  CHECK(negativity(ghz4, {0}) == doctest::Approx(negativity(ghz4, {1, 2, 3})).epsilon(1e-11));
}

TEST_CASE("hermitian eigensolver basics and oracle agreement") {
  HermitianMatrix id4{4, std::vector<cd>(16, cd(0.0))};
  for (int i = 0; i < 4; ++i) id4.data[i * 4 + i] = 1.0;
  for (double e : herm_eigenvalues(id4)) CHECK(e == doctest::Approx(1.0).epsilon(1e-15));

  HermitianMatrix diag{4, std::vector<cd>(16, cd(0.0))};
  diag.data[0] = -0.5;
  diag.data[5] = 0.5;
  diag.data[10] = 0.5;
  diag.data[15] = 0.5;
  const auto sorted = herm_eigenvalues(diag);
  CHECK(sorted[0] == -0.5);
  CHECK(sorted[3] == 0.5);

  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = 8;
    HermitianMatrix m{n, std::vector<cd>(n * n, cd(0.0))};
    for (std::size_t a = 0; a < n; ++a) {
      m.data[a * n + a] = uniform_open(splitmix64_at(600 + trial, 100 + a)) - 0.5;
      for (std::size_t b = a + 1; b < n; ++b) {
        const cd v(uniform_open(splitmix64_at(600 + trial, 10 * a + b)) - 0.5,
                   uniform_open(splitmix64_at(700 + trial, 10 * a + b)) - 0.5);
        m.data[a * n + b] = v;
        m.data[b * n + a] = std::conj(v);
      }
    }
    const auto jac = herm_eigenvalues(m);
    const auto bis = crosscheck::herm_eigenvalues_bisect(m);
    for (std::size_t k = 0; k < n; ++k) CHECK(std::abs(jac[k] - bis[k]) <= 1e-10);
    for (std::size_t k = 1; k < n; ++k) CHECK(jac[k] >= jac[k - 1]);
  }

  HermitianMatrix bad{2, {cd(0.0), cd(1.0), cd(2.0), cd(0.0)}};
  CHECK_THROWS_AS(herm_eigenvalues(bad), std::invalid_argument);
}

TEST_CASE("closed-form two-particle quantities in deficit arithmetic") {
  const TwoParticleAnalytic perfect = analytic_two_particle(DecoherenceFactor::identity());
  CHECK(perfect.entropy_bits == 0.0);
  CHECK(perfect.negativity == 1.0);
  CHECK(perfect.negativity_deficit == 0.0);

  // |ubar|^2 = 0.5: entropy is the binary entropy of 0.25
  const double mod = std::sqrt(0.5);
  const TwoParticleAnalytic half = analytic_two_particle(DecoherenceFactor::from_complex({mod, 0.0}));
  CHECK(half.entropy_bits == doctest::Approx(0.81127812445913283).epsilon(1e-12));
  CHECK(half.negativity == doctest::Approx(0.5).epsilon(1e-14));

  const DecoherenceFactor tiny = DecoherenceFactor::from_deficits(1e-21, 1e-12);
  const TwoParticleAnalytic t = analytic_two_particle(tiny);
  CHECK(t.negativity_deficit == doctest::Approx(2.0 * tiny.deficit()).epsilon(1e-12));
  CHECK(t.negativity_deficit > 0.0);
  CHECK(t.entropy_bits > 0.0);
}

TEST_CASE("density operator json round trip") {
  const DensityOperator rho = evolve_ghz(2, channel(0.7, 0.2));
  const nlohmann::json j = rho.to_json();
  CHECK(j.at("dim").get<std::size_t>() == 4);
  CHECK(j.at("qubits").get<std::vector<std::string>>() ==
        std::vector<std::string>{"A1", "A2"});
  const DensityOperator back = DensityOperator::from_json(j);
  CHECK(max_entry_diff(rho, back) == 0.0);

  nlohmann::json broken = j;
  broken["re"] = std::vector<double>{1.0};
  CHECK_THROWS_AS(DensityOperator::from_json(broken), std::invalid_argument);
}

TEST_CASE("partial trace recovers tensor factors") {
  const DensityOperator a = random_density(1, 21);
  const DensityOperator b = random_density(1, 22);
  const DensityOperator ab = tensor(a, b);
  CHECK(max_entry_diff(partial_trace(ab, {1}), a) <= 1e-15);
  CHECK(max_entry_diff(partial_trace(ab, {0}), b) <= 1e-15);
  CHECK_THROWS_AS(partial_trace(ab, {0, 1}), std::invalid_argument);
}
