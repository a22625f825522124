#include "gwspin/swapping.hpp"

#include <cmath>
#include <string>

namespace gwspin {

namespace {

// I (x) |Psi^i><Psi^i| on the four-qubit space [A1 B1 A2 B2], with the Bell
// projector acting on (B1, B2) = positions (1, 3).
std::vector<cd> embedded_bell_projector(int outcome) {
  const DensityOperator bell = bell_state(outcome);
  constexpr std::size_t dim = 16;
  const std::size_t b1 = 1ull << 2;  // bit of qubit position 1
  const std::size_t b2 = 1ull << 0;  // bit of qubit position 3
  std::vector<cd> p(dim * dim, cd(0.0));
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) {
      if ((r & ~(b1 | b2)) != (c & ~(b1 | b2))) continue;
      const std::size_t rb = ((r & b1) ? 2 : 0) | ((r & b2) ? 1 : 0);
      const std::size_t cb = ((c & b1) ? 2 : 0) | ((c & b2) ? 1 : 0);
      p[r * dim + c] = bell.at(rb, cb);
    }
  }
  return p;
}

std::vector<cd> matmul16(const std::vector<cd>& a, const std::vector<cd>& b) {
  constexpr std::size_t n = 16;
  std::vector<cd> out(n * n, cd(0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const cd v = a[i * n + k];
      if (v == cd(0.0)) continue;
      for (std::size_t j = 0; j < n; ++j) out[i * n + j] += v * b[k * n + j];
    }
  }
  return out;
}

void check_pair(const DensityOperator& rho, const char* name) {
  if (rho.num_qubits() != 2) {
    throw std::invalid_argument(std::string(name) + " must be a two-qubit state");
  }
}

}  // namespace

SwapOutcome swap_once(const DensityOperator& rho1, const DensityOperator& rho2, int outcome) {
  check_pair(rho1, "rho1");
  check_pair(rho2, "rho2");
  if (outcome < 0 || outcome > 3) {
    throw std::invalid_argument("Bell outcome index must be in 0..3");
  }

  const DensityOperator joint = tensor(rho1, rho2);
  const std::vector<cd> proj = embedded_bell_projector(outcome);
  // Sandwiching with the projector keeps the matrix exactly Hermitian; the
  // trace is unchanged relative to one-sided projection.
  const std::vector<cd> projected = matmul16(matmul16(proj, joint.data()), proj);

  double p = 0.0;
  for (std::size_t i = 0; i < 16; ++i) p += projected[i * 16 + i].real();
  if (p < 1e-15) {
    throw std::domain_error("degenerate Bell outcome: probability " + std::to_string(p) +
                            " cannot be normalized");
  }
  std::vector<cd> normalized(projected.size());
  for (std::size_t i = 0; i < projected.size(); ++i) normalized[i] = projected[i] / p;

  const DensityOperator post(std::move(normalized), {"A1", "B1", "A2", "B2"});
  SwapOutcome out{outcome, p, partial_trace(post, {1, 3})};
  return out;
}

std::vector<LadderLevel> swap_ladder(const SpinChannel& ch, int depth, bool matrix_track) {
  if (depth < 0) {
    throw std::invalid_argument("swap ladder depth must be >= 0");
  }
  if (matrix_track && depth > 6) {
    throw std::invalid_argument("matrix-track swap ladder is limited to depth 6");
  }
  if (depth > 1000) {
    throw std::invalid_argument("swap ladder depth beyond 1000 is not representable");
  }

  const double delta = ch.factor().deficit();
  std::vector<LadderLevel> levels;
  levels.reserve(depth + 1);

  std::optional<DensityOperator> state;
  if (matrix_track) state = evolve_ghz(2, ch);

  double n = 2.0;
  for (int level = 0; level <= depth; ++level, n *= 2.0) {
    LadderLevel row;
    row.level = level;
    row.particle_count = n;
    row.deficit = deficit_pow(delta, n);
    if (state) {
      if (level > 0) state = swap_once(*state, *state, 0).state;
      row.matrix_negativity = negativity(*state, {0});
    }
    levels.push_back(std::move(row));
  }
  return levels;
}

double swap_combine_deficit(double delta, double n_a, double n_b) {
  return deficit_pow(delta, n_a + n_b);
}

OutcomeEquivalence outcome_equivalence_check(const DensityOperator& rho1,
                                             const DensityOperator& rho2) {
  OutcomeEquivalence report;
  for (int i = 0; i < 4; ++i) {
    const SwapOutcome out = swap_once(rho1, rho2, i);
    report.probabilities[i] = out.probability;
    report.negativities[i] = negativity(out.state, {0});
  }
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      report.max_pairwise_diff = std::max(
          report.max_pairwise_diff, std::abs(report.negativities[i] - report.negativities[j]));
    }
  }
  return report;
}

}  // namespace gwspin
