#pragma once

#include <complex>
#include <cstdint>

#include "gwspin/kinematics.hpp"
#include "gwspin/waveform.hpp"

namespace gwspin {

/// Momentum-averaged phase factor ubar = <exp(i Omega)> stored in deficit form:
/// the primary representation is (1 - Re ubar, Im ubar), from which the modulus
/// deficit delta = 1 - |ubar| is derived without ever forming 1 - cos by
/// subtraction. This keeps full relative accuracy for delta down to ~1e-300,
/// far below where the complex value itself rounds to exactly 1.
class DecoherenceFactor {
 public:
  static DecoherenceFactor identity() { return DecoherenceFactor(0.0, 0.0); }
  static DecoherenceFactor from_deficits(double real_deficit, double imag);
  static DecoherenceFactor from_complex(std::complex<double> u);

  double real_deficit() const { return real_deficit_; }  // 1 - cbar
  double imag() const { return imag_; }                  // sbar
  double deficit() const { return deficit_; }            // 1 - |ubar|
  double cbar() const { return 1.0 - real_deficit_; }    // Re ubar
  double sbar() const { return imag_; }                  // Im ubar
  double phase() const;                                  // arg ubar
  std::complex<double> to_complex() const { return {cbar(), sbar()}; }

 private:
  DecoherenceFactor(double real_deficit, double imag);

  double real_deficit_ = 0.0;
  double imag_ = 0.0;
  double deficit_ = 0.0;
};

/// Deficit of |ubar|^n given the deficit of |ubar|: 1 - (1 - delta)^n,
/// computed as -expm1(n log1p(-delta)). n may be any positive real, so ladder
/// exponents beyond 2^62 stay exact.
double deficit_pow(double delta, double n);
double deficit_pow(const DecoherenceFactor& d, double n);

/// Deficit of |ubar|^2 (= 2 delta - delta^2).
double deficit_sq(double delta);
double deficit_sq(const DecoherenceFactor& d);

/// Binary entropy -p log2 p - (1-p) log2(1-p) in bits, accurate for p -> 0.
double binary_entropy_bits(double p);

/// Gaussian momentum wave packet on the k2 = 0 plane.
struct WavePacket {
  double width = 1.0;      // momentum-space width w > 0
  LocalMomentum center{};  // on-shell center, k2 = 0
  double mass = 1.0;

  /// Packet centered on the frame's local four-momentum.
  static WavePacket centered(const FrameParams& fp, double width);
  void validate() const;
};

/// Normalized packet density (1/(pi w^2)) exp(-|k - q|^2 / w^2) on the
/// (k1, k3) plane; requires k2 = 0.
double weight(const WavePacket& p, const LocalMomentum& k);

/// Momentum-averaged decoherence factor by tensor-product Gauss-Hermite
/// quadrature in (k1, k3) with the substitution k = q + w t. Deterministic
/// fixed-order accumulation. order >= 8.
DecoherenceFactor ubar(const WavePacket& p, const Waveform& w, const FrameParams& fp,
                       double tau_i, double tau_f, int order = 40,
                       OmegaMethod method = OmegaMethod::exact_log);

constexpr std::uint64_t kDefaultMcSeed = 0x5EED;

struct MonteCarloUbar {
  DecoherenceFactor value = DecoherenceFactor::identity();
  double real_deficit_stderr = 0.0;
  double imag_stderr = 0.0;
  std::uint64_t samples = 0;
};

/// Monte Carlo estimate of ubar, the verification oracle for the quadrature
/// route. Sampling is counter-based (SplitMix64 stream indexed by sample), so
/// results are bit-identical for a given seed regardless of parallelism.
/// n_samples >= 1000.
MonteCarloUbar ubar_mc(const WavePacket& p, const Waveform& w, const FrameParams& fp,
                       double tau_i, double tau_f, std::uint64_t n_samples,
                       std::uint64_t seed = kDefaultMcSeed);

}  // namespace gwspin
