#include "gwspin/waveform.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace gwspin {

namespace {

// Keeps 1 +- f safely positive even for deliberately exaggerated test amplitudes.
constexpr double kAmplitudeGuard = 0.5;

void check_amplitude(double a) {
  if (!std::isfinite(a) || a < 0.0 || a >= kAmplitudeGuard) {
    throw std::invalid_argument("waveform amplitude must satisfy 0 <= A < 0.5, got " +
                                std::to_string(a));
  }
}

// Fornberg weights for the first derivative at x0 from the given nodes.
std::vector<double> fd_weights_first(double x0, const std::vector<double>& x) {
  const int n = static_cast<int>(x.size()) - 1;
  const int m = 1;  // derivative order
  std::vector<std::vector<double>> c(x.size(), std::vector<double>(m + 1, 0.0));
  double c1 = 1.0;
  double c4 = x[0] - x0;
  c[0][0] = 1.0;
  for (int i = 1; i <= n; ++i) {
    const int mn = std::min(i, m);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = x[i] - x0;
    for (int j = 0; j < i; ++j) {
      const double c3 = x[i] - x[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k) {
          c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        }
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (int k = mn; k >= 1; --k) {
        c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
      }
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) w[i] = c[i][m];
  return w;
}

}  // namespace

Waveform Waveform::zero() {
  Waveform w;
  w.kind_ = WaveformKind::zero;
  return w;
}

Waveform Waveform::gaussian(double amplitude, double width) {
  check_amplitude(amplitude);
  if (!(width > 0.0) || !std::isfinite(width)) {
    throw std::invalid_argument("gaussian waveform width must be positive");
  }
  Waveform w;
  w.kind_ = WaveformKind::gaussian;
  w.amplitude_ = amplitude;
  w.width_ = width;
  return w;
}

Waveform Waveform::sine(double amplitude, double frequency) {
  check_amplitude(amplitude);
  if (!(frequency > 0.0) || !std::isfinite(frequency)) {
    throw std::invalid_argument("sine waveform frequency must be positive");
  }
  Waveform w;
  w.kind_ = WaveformKind::sine;
  w.amplitude_ = amplitude;
  w.frequency_ = frequency;
  return w;
}

Waveform Waveform::tabulated(std::vector<std::pair<double, double>> samples) {
  if (samples.size() < 4) {
    throw std::invalid_argument("tabulated waveform needs at least 4 samples");
  }
  Waveform w;
  w.kind_ = WaveformKind::tabulated;
  w.u_.reserve(samples.size());
  w.f_.reserve(samples.size());
  double max_abs = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto [u, f] = samples[i];
    if (!std::isfinite(u) || !std::isfinite(f)) {
      throw std::invalid_argument("tabulated waveform sample is not finite");
    }
    if (i > 0 && !(u > w.u_.back())) {
      throw std::invalid_argument("tabulated waveform abscissae must be strictly increasing");
    }
    w.u_.push_back(u);
    w.f_.push_back(f);
    max_abs = std::max(max_abs, std::abs(f));
  }
  if (max_abs >= kAmplitudeGuard) {
    throw std::invalid_argument("tabulated waveform exceeds |f| < 0.5 guard");
  }
  w.amplitude_ = max_abs;
  w.build_slopes();
  return w;
}

Waveform Waveform::from_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("cannot open waveform table: " + path);
  }
  std::string line;
  if (!std::getline(in, line)) {
    throw std::invalid_argument("empty waveform table: " + path);
  }
  auto strip = [](std::string s) {
    s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }),
            s.end());
    return s;
  };
  if (strip(line) != "u,f") {
    throw std::invalid_argument("waveform table must start with header 'u,f': " + path);
  }
  std::vector<std::pair<double, double>> samples;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (strip(line).empty()) continue;
    std::istringstream row(line);
    std::string a, b;
    if (!std::getline(row, a, ',') || !std::getline(row, b)) {
      throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": expected 'u,f' row");
    }
    auto parse_number = [&](const std::string& field) {
      std::size_t consumed = 0;
      double v = 0.0;
      try {
        v = std::stod(field, &consumed);
      } catch (const std::exception&) {
        throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": bad number '" +
                                    field + "'");
      }
      while (consumed < field.size() && std::isspace(static_cast<unsigned char>(field[consumed]))) {
        ++consumed;
      }
      if (consumed != field.size()) {
        throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": bad number '" +
                                    field + "'");
      }
      return v;
    };
    samples.emplace_back(parse_number(a), parse_number(b));
  }
  return tabulated(std::move(samples));
}

// Nodal slopes: high-order finite-difference estimates, then the Fritsch-Carlson
// limiter so the cubic never overshoots the data between nodes.
void Waveform::build_slopes() {
  const std::size_t n = u_.size();
  d_.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t half = 2;
    std::size_t lo = i >= half ? i - half : 0;
    std::size_t hi = std::min(n - 1, lo + 2 * half);
    lo = hi >= 2 * half ? hi - 2 * half : 0;
    std::vector<double> xs(u_.begin() + lo, u_.begin() + hi + 1);
    const auto w = fd_weights_first(u_[i], xs);
    double s = 0.0;
    for (std::size_t j = 0; j < xs.size(); ++j) s += w[j] * f_[lo + j];
    d_[i] = s;
  }
  // Limit per interval.
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const double h = u_[k + 1] - u_[k];
    const double delta = (f_[k + 1] - f_[k]) / h;
    if (delta == 0.0) {
      d_[k] = 0.0;
      d_[k + 1] = 0.0;
      continue;
    }
    double alpha = d_[k] / delta;
    double beta = d_[k + 1] / delta;
    if (alpha < 0.0) {
      d_[k] = 0.0;
      alpha = 0.0;
    }
    if (beta < 0.0) {
      d_[k + 1] = 0.0;
      beta = 0.0;
    }
    const double r2 = alpha * alpha + beta * beta;
    if (r2 > 9.0) {
      const double tau = 3.0 / std::sqrt(r2);
      d_[k] = tau * alpha * delta;
      d_[k + 1] = tau * beta * delta;
    }
  }
}

std::size_t Waveform::interval_of(double u) const {
  if (!(u >= u_.front() && u <= u_.back())) {
    throw std::out_of_range("tabulated waveform evaluated at u=" + std::to_string(u) +
                            " outside [" + std::to_string(u_.front()) + ", " +
                            std::to_string(u_.back()) + "]");
  }
  const auto it = std::upper_bound(u_.begin(), u_.end(), u);
  std::size_t k = static_cast<std::size_t>(it - u_.begin());
  if (k > 0) --k;
  if (k + 1 >= u_.size()) k = u_.size() - 2;
  return k;
}

double Waveform::eval(double u) const {
  switch (kind_) {
    case WaveformKind::zero:
      return 0.0;
    case WaveformKind::gaussian:
      return amplitude_ * std::exp(-sq(u / width_));
    case WaveformKind::sine:
      return amplitude_ * std::sin(frequency_ * u);
    case WaveformKind::tabulated: {
      const std::size_t k = interval_of(u);
      const double h = u_[k + 1] - u_[k];
      const double s = (u - u_[k]) / h;
      const double h00 = (1.0 + 2.0 * s) * sq(1.0 - s);
      const double h10 = s * sq(1.0 - s);
      const double h01 = sq(s) * (3.0 - 2.0 * s);
      const double h11 = sq(s) * (s - 1.0);
      return h00 * f_[k] + h * h10 * d_[k] + h01 * f_[k + 1] + h * h11 * d_[k + 1];
    }
  }
  return 0.0;
}

double Waveform::deriv(double u) const {
  switch (kind_) {
    case WaveformKind::zero:
      return 0.0;
    case WaveformKind::gaussian:
      return amplitude_ * std::exp(-sq(u / width_)) * (-2.0 * u / sq(width_));
    case WaveformKind::sine:
      return amplitude_ * frequency_ * std::cos(frequency_ * u);
    case WaveformKind::tabulated: {
      interval_of(u);  // range check
      const double h = 6.0e-6 * (u_.back() - u_.front());
      const double lo = std::max(u_.front(), u - h);
      const double hi = std::min(u_.back(), u + h);
      return (eval(hi) - eval(lo)) / (hi - lo);
    }
  }
  return 0.0;
}

double Waveform::scale() const {
  switch (kind_) {
    case WaveformKind::zero:
      return 1.0;
    case WaveformKind::gaussian:
      return width_;
    case WaveformKind::sine:
      return 1.0 / frequency_;
    case WaveformKind::tabulated:
      return u_.back() - u_.front();
  }
  return 1.0;
}

}  // namespace gwspin
