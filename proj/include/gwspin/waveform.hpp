#pragma once

#include <string>
#include <utility>
#include <vector>

#include "gwspin/mathutil.hpp"

namespace gwspin {

enum class WaveformKind { zero, gaussian, sine, tabulated };

/// Dimensionless strain profile f of a plane wave travelling in +z.
/// The metric depends on (t, z) only through the null phase u = t - z, so the
/// profile is a pure function of u; callers with (t, z) compute u first.
/// Immutable after construction and safe for concurrent evaluation.
class Waveform {
 public:
  static Waveform zero();
  static Waveform gaussian(double amplitude, double width);
  static Waveform sine(double amplitude, double frequency);
  // Samples must be strictly increasing in u; interpolation is monotone cubic.
  static Waveform tabulated(std::vector<std::pair<double, double>> samples);
  // Two-column CSV with header "u,f".
  static Waveform from_csv(const std::string& path);

  WaveformKind kind() const { return kind_; }
  double amplitude() const { return amplitude_; }
  double width() const { return width_; }
  double frequency() const { return frequency_; }

  /// f(u). Throws std::out_of_range for u outside a tabulated range.
  double eval(double u) const;
  /// df/du, analytic for zero/gaussian/sine, centered difference for tabulated.
  double deriv(double u) const;

  /// Characteristic u scale (width, inverse frequency, or table span).
  double scale() const;

 private:
  Waveform() = default;
  void build_slopes();
  std::size_t interval_of(double u) const;

  WaveformKind kind_ = WaveformKind::zero;
  double amplitude_ = 0.0;
  double width_ = 0.0;
  double frequency_ = 0.0;
  std::vector<double> u_;  // tabulated abscissae
  std::vector<double> f_;  // tabulated values
  std::vector<double> d_;  // limited nodal slopes
};

}  // namespace gwspin
