#pragma once

#include <array>
#include <cstdint>
#include <cmath>
#include <stdexcept>
#include <string>

namespace gwspin {

using Vec4 = std::array<double, 4>;
using Mat4 = std::array<std::array<double, 4>, 4>;

// Local-frame (inertial) metric signature (-,+,+,+), index order (t,x,y,z) <-> (0,1,2,3).
constexpr std::array<double, 4> kMinkowski{-1.0, 1.0, 1.0, 1.0};

// An iterative numerical procedure failed to converge; message carries diagnostics.
class numerical_error : public std::runtime_error {
 public:
  explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

inline double sq(double x) { return x * x; }

// SplitMix64 evaluated at stream position i for a given seed: a pure function
// of (seed, i), so sampling is reproducible independent of evaluation order.
inline std::uint64_t splitmix64_at(std::uint64_t seed, std::uint64_t i) {
  std::uint64_t x = seed + (i + 1) * 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Uniform double in (0, 1].
inline double uniform_open(std::uint64_t bits) {
  return static_cast<double>((bits >> 11) + 1) * 0x1.0p-53;
}

inline double dot4(const Vec4& a, const Vec4& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}

// g_{mu nu} a^mu b^nu for a diagonal metric given by its four diagonal entries.
inline double metric_dot(const std::array<double, 4>& diag, const Vec4& a, const Vec4& b) {
  return diag[0] * a[0] * b[0] + diag[1] * a[1] * b[1] + diag[2] * a[2] * b[2] +
         diag[3] * a[3] * b[3];
}

}  // namespace gwspin
