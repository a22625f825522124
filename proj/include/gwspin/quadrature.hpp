#pragma once

#include <functional>
#include <vector>

#include "gwspin/mathutil.hpp"

namespace gwspin {

/// Nodes and weights for integration against exp(-x^2) on the real line.
struct GaussHermite {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Gauss-Hermite rule of the given order (Newton refinement of Hermite roots).
GaussHermite gauss_hermite(int order);

/// Composite Simpson over [a, b] with the given number of parabolic panels.
double simpson(const std::function<double(double)>& f, double a, double b, int panels);

/// Adaptive Simpson to absolute/relative tolerance; throws numerical_error on
/// failure to converge within the depth limit.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-12, int max_depth = 48);

}  // namespace gwspin
