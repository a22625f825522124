#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "gwspin/wavepacket.hpp"

#include <json.hpp>

namespace gwspin {

using cd = std::complex<double>;
using Mat2 = std::array<std::array<double, 2>, 2>;

// Qubit ordering convention, fixed for the whole project: subsystem index 0
// (the leftmost label) maps to the MOST significant bit of a basis index, so
// |q0 q1 ... q_{n-1}> has basis index q0*2^{n-1} + ... + q_{n-1}.

/// Hermitian complex matrix without density-operator normalization (partial
/// transposes land here: unit trace but possibly negative eigenvalues).
struct HermitianMatrix {
  std::size_t dim = 0;
  std::vector<cd> data;  // row-major, dim * dim

  cd at(std::size_t r, std::size_t c) const { return data[r * dim + c]; }
};

/// Hermitian, unit-trace complex matrix over N qubits with subsystem labels.
/// Immutable; all operations return new values.
class DensityOperator {
 public:
  DensityOperator(std::vector<cd> data, std::vector<std::string> qubits);
  /// Projector onto a pure state given by its amplitudes (normalized by caller).
  static DensityOperator pure(const std::vector<cd>& amplitudes,
                              std::vector<std::string> qubits);

  std::size_t dim() const { return dim_; }
  std::size_t num_qubits() const { return qubits_.size(); }
  const std::vector<std::string>& qubits() const { return qubits_; }
  const std::vector<cd>& data() const { return data_; }
  cd at(std::size_t r, std::size_t c) const { return data_[r * dim_ + c]; }

  std::size_t index_of(const std::string& label) const;  // throws if absent

  nlohmann::json to_json() const;
  static DensityOperator from_json(const nlohmann::json& j);

 private:
  std::size_t dim_ = 0;
  std::vector<cd> data_;
  std::vector<std::string> qubits_;
};

/// The qubit channel induced by a momentum-averaged Wigner rotation, stored by
/// its action (cbar, sbar) on the |j><k| basis. Trace preserving and positive
/// by construction (it is an average of unitary conjugations).
class SpinChannel {
 public:
  explicit SpinChannel(DecoherenceFactor u) : u_(u) {}
  const DecoherenceFactor& factor() const { return u_; }

 private:
  DecoherenceFactor u_;
};

/// Image of the basis operator R^{jk} = |j><k| under the channel (real 2x2).
Mat2 channel_table(const SpinChannel& ch, int j, int k);

/// Apply the channel to one qubit (by label) of a multi-qubit state.
DensityOperator apply_channel(const SpinChannel& ch, const DensityOperator& rho,
                              const std::string& target);

/// Bell projectors |Psi^i><Psi^i| with |Psi^i> = (sigma^i x sigma^0)|Psi^0>,
/// |Psi^0> = (|00> + |11>)/sqrt(2). Qubits labeled {A, B}.
DensityOperator bell_state(int i);

/// GHZ projector (|0...0> + |1...1>)/sqrt(2) on n qubits, built as the basis
/// sum (1/2) sum_{jk} (R^{jk})^{(x)n}. Qubits labeled {A1..An}. 1 <= n <= 10.
DensityOperator ghz_state(int n);

/// Evolved n-particle GHZ state: (1/2) sum_{jk} E[R^{jk}]^{(x)n}.
DensityOperator evolve_ghz(int n, const SpinChannel& ch);

/// Spectrum of a Hermitian matrix, ascending, via cyclic Jacobi on the 2n x 2n
/// real-symmetric embedding. Backward error <= 1e-10 ||M||.
std::vector<double> herm_eigenvalues(const HermitianMatrix& m);
std::vector<double> herm_eigenvalues(const DensityOperator& rho);

/// Von Neumann entropy in bits; eigenvalues in [-1e-10, 0) are clamped to 0,
/// anything lower is a positivity violation.
double von_neumann_entropy(const DensityOperator& rho);

/// Transpose the indices of the chosen qubits.
HermitianMatrix partial_transpose(const DensityOperator& rho, const std::vector<int>& qubits);

/// Negativity across the bipartition (partition, complement):
/// max(0, -2 sum of negative eigenvalues of the partial transpose).
double negativity(const DensityOperator& rho, const std::vector<int>& partition);

/// Trace out the listed qubits, keeping the rest in order.
DensityOperator partial_trace(const DensityOperator& rho, const std::vector<int>& traced);

/// Tensor product; qubit labels are concatenated.
DensityOperator tensor(const DensityOperator& a, const DensityOperator& b);

/// Closed-form two-particle quantities in deficit arithmetic, valid down to
/// delta ~ 1e-300: entropy of the evolved Bell pair, its negativity, and the
/// negativity deficit 1 - |ubar|^2.
struct TwoParticleAnalytic {
  double entropy_bits = 0.0;
  double negativity = 1.0;
  double negativity_deficit = 0.0;
};
TwoParticleAnalytic analytic_two_particle(const DecoherenceFactor& d);

}  // namespace gwspin
