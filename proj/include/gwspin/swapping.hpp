#pragma once

#include <optional>
#include <vector>

#include "gwspin/quantum.hpp"

namespace gwspin {

/// One outcome of a Bell-basis measurement on the B-side qubits of two pairs.
struct SwapOutcome {
  int outcome = 0;          // Bell index i in 0..3
  double probability = 0.0; // p_i
  DensityOperator state;    // two-qubit post-measurement state on the A sides
};

/// Entanglement swapping: project the B qubits of rho1 (A1,B1) and rho2
/// (A2,B2) onto the Bell state |Psi^i>, trace them out, normalize by p_i.
SwapOutcome swap_once(const DensityOperator& rho1, const DensityOperator& rho2, int outcome);

/// One rung of the swapping amplification ladder.
struct LadderLevel {
  int level = 0;
  double particle_count = 2.0;  // n = 2^(level+1)
  double deficit = 0.0;         // deficit-track negativity deficit, 1 - |ubar|^n
  std::optional<double> matrix_negativity;  // present when the matrix track ran
};

/// Iterated swapping ladder: level 0 is the evolved two-particle state, each
/// further level swaps two copies of the previous one (outcome 0). The deficit
/// track is closed form and runs to any depth; the matrix track simulates the
/// 4-qubit measurement and is limited to depth <= 6.
std::vector<LadderLevel> swap_ladder(const SpinChannel& ch, int depth, bool matrix_track);

/// Deficit-track combination of two pair states carrying n_a and n_b particles
/// worth of degradation: the combined pair has deficit 1 - |ubar|^(n_a + n_b).
double swap_combine_deficit(double delta, double n_a, double n_b);

/// Runs all four measurement outcomes and reports their negativities; local
/// Pauli frames cannot change entanglement, so the spread should vanish.
struct OutcomeEquivalence {
  std::array<double, 4> probabilities{};
  std::array<double, 4> negativities{};
  double max_pairwise_diff = 0.0;
};
OutcomeEquivalence outcome_equivalence_check(const DensityOperator& rho1,
                                             const DensityOperator& rho2);

}  // namespace gwspin
