#include "gwspin/wavepacket.hpp"

#include <cmath>
#include <string>

#include "gwspin/quadrature.hpp"

namespace gwspin {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 6.28318530717958647692;

}  // namespace

DecoherenceFactor::DecoherenceFactor(double real_deficit, double imag)
    : real_deficit_(real_deficit), imag_(imag) {
  // |ubar|^2 = (1 - dc)^2 + s^2 = 1 + h with h = -2 dc + dc^2 + s^2, so
  // delta = 1 - sqrt(1 + h) = -expm1(log1p(h) / 2) keeps relative accuracy
  // when dc and s are both tiny.
  const double h = -2.0 * real_deficit_ + real_deficit_ * real_deficit_ + imag_ * imag_;
  deficit_ = -std::expm1(0.5 * std::log1p(h));
  if (deficit_ == 0.0) deficit_ = 0.0;  // normalize -0
  if (deficit_ < 0.0) {
    if (deficit_ < -1e-12) {
      throw std::invalid_argument("decoherence factor has |ubar| > 1");
    }
    deficit_ = 0.0;
  }
  if (deficit_ > 1.0) deficit_ = 1.0;
}

DecoherenceFactor DecoherenceFactor::from_deficits(double real_deficit, double imag) {
  if (!std::isfinite(real_deficit) || !std::isfinite(imag)) {
    throw std::invalid_argument("decoherence deficits must be finite");
  }
  return DecoherenceFactor(real_deficit, imag);
}

DecoherenceFactor DecoherenceFactor::from_complex(std::complex<double> u) {
  if (!std::isfinite(u.real()) || !std::isfinite(u.imag())) {
    throw std::invalid_argument("decoherence factor must be finite");
  }
  return DecoherenceFactor(1.0 - u.real(), u.imag());
}

double DecoherenceFactor::phase() const {
  if (imag_ == 0.0 && real_deficit_ == 0.0) return 0.0;
  return std::atan2(imag_, 1.0 - real_deficit_);
}

double deficit_pow(double delta, double n) {
  if (!(n >= 1.0)) {
    throw std::invalid_argument("deficit_pow exponent must be >= 1");
  }
  if (delta <= 0.0) return 0.0;
  if (delta >= 1.0) return 1.0;
  return -std::expm1(n * std::log1p(-delta));
}

double deficit_pow(const DecoherenceFactor& d, double n) { return deficit_pow(d.deficit(), n); }

double deficit_sq(double delta) { return deficit_pow(delta, 2.0); }

double deficit_sq(const DecoherenceFactor& d) { return deficit_pow(d.deficit(), 2.0); }

double binary_entropy_bits(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::domain_error("binary entropy argument must be in [0, 1]");
  }
  if (p == 0.0 || p == 1.0) return 0.0;
  constexpr double kLn2 = 0.69314718055994530942;
  // -(1-p) log2(1-p) = -(1-p) log1p(-p)/ln2 stays accurate as p -> 0.
  return (-p * std::log(p) - (1.0 - p) * std::log1p(-p)) / kLn2;
}

WavePacket WavePacket::centered(const FrameParams& fp, double width) {
  WavePacket p;
  p.width = width;
  p.center = packet_center(fp);
  p.mass = fp.mass;
  p.validate();
  return p;
}

void WavePacket::validate() const {
  if (!(width > 0.0) || !std::isfinite(width)) {
    throw std::invalid_argument("wave packet width must be positive");
  }
  if (!(mass > 0.0) || !std::isfinite(mass)) {
    throw std::invalid_argument("wave packet mass must be positive");
  }
  if (center.k2 != 0.0) {
    throw std::invalid_argument("wave packet center must lie in the k2 = 0 plane");
  }
}

double weight(const WavePacket& p, const LocalMomentum& k) {
  p.validate();
  if (k.k2 != 0.0) {
    throw std::invalid_argument("packet density is defined on the k2 = 0 plane");
  }
  const double d1 = k.k1 - p.center.k1;
  const double d3 = k.k3 - p.center.k3;
  return std::exp(-(d1 * d1 + d3 * d3) / sq(p.width)) / (kPi * sq(p.width));
}

DecoherenceFactor ubar(const WavePacket& p, const Waveform& w, const FrameParams& fp,
                       double tau_i, double tau_f, int order, OmegaMethod method) {
  p.validate();
  if (order < 8) {
    throw std::invalid_argument("ubar quadrature order must be >= 8");
  }
  const double factor = omega_profile_factor(w, fp, tau_i, tau_f, method);
  const auto gh = gauss_hermite(order);

  // Normalize by the computed weight sum so the zero-strain case gives
  // ubar = 1 exactly and no spurious O(eps) deficit is introduced.
  double wsum = 0.0;
  for (int i = 0; i < order; ++i) {
    for (int j = 0; j < order; ++j) wsum += gh.weights[i] * gh.weights[j];
  }

  double real_deficit = 0.0;
  double imag = 0.0;
  for (int i = 0; i < order; ++i) {
    for (int j = 0; j < order; ++j) {
      const LocalMomentum k{p.center.k1 + p.width * gh.nodes[i], 0.0,
                            p.center.k3 + p.width * gh.nodes[j]};
      const double ang = factor * big_H(fp, k);
      const double wt = gh.weights[i] * gh.weights[j] / wsum;
      const double sh = std::sin(0.5 * ang);
      real_deficit += wt * 2.0 * sh * sh;  // 1 - cos(ang), no cancellation
      imag += wt * std::sin(ang);
    }
  }
  return DecoherenceFactor::from_deficits(real_deficit, imag);
}

MonteCarloUbar ubar_mc(const WavePacket& p, const Waveform& w, const FrameParams& fp,
                       double tau_i, double tau_f, std::uint64_t n_samples, std::uint64_t seed) {
  p.validate();
  if (n_samples < 1000) {
    throw std::invalid_argument("ubar_mc needs at least 1000 samples");
  }
  const double factor = omega_profile_factor(w, fp, tau_i, tau_f, OmegaMethod::exact_log);
  // Per-axis packet standard deviation: density ~ exp(-|k-q|^2/w^2).
  const double sigma = p.width / std::sqrt(2.0);

  double sum_d = 0.0, sum_d2 = 0.0;
  double sum_s = 0.0, sum_s2 = 0.0;
  for (std::uint64_t i = 0; i < n_samples; ++i) {
    const double u1 = uniform_open(splitmix64_at(seed, 2 * i));
    const double u2 = uniform_open(splitmix64_at(seed, 2 * i + 1));
    const double r = std::sqrt(-2.0 * std::log(u1));
    const LocalMomentum k{p.center.k1 + sigma * r * std::cos(kTwoPi * u2), 0.0,
                          p.center.k3 + sigma * r * std::sin(kTwoPi * u2)};
    const double ang = factor * big_H(fp, k);
    const double sh = std::sin(0.5 * ang);
    const double d = 2.0 * sh * sh;
    const double s = std::sin(ang);
    sum_d += d;
    sum_d2 += d * d;
    sum_s += s;
    sum_s2 += s * s;
  }
  const double n = static_cast<double>(n_samples);
  const double mean_d = sum_d / n;
  const double mean_s = sum_s / n;
  const double var_d = std::max(0.0, sum_d2 / n - mean_d * mean_d);
  const double var_s = std::max(0.0, sum_s2 / n - mean_s * mean_s);

  MonteCarloUbar out;
  out.value = DecoherenceFactor::from_deficits(mean_d, mean_s);
  out.real_deficit_stderr = std::sqrt(var_d / n);
  out.imag_stderr = std::sqrt(var_s / n);
  out.samples = n_samples;
  return out;
}

}  // namespace gwspin
