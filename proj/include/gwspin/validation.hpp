#pragma once

#include <string>
#include <vector>

#include "gwspin/quantum.hpp"

namespace gwspin::validation {

enum class Level { quick, full };

struct Check {
  std::string name;
  double worst = 0.0;      // measured worst-case error
  double tolerance = 0.0;  // pinned acceptance tolerance
  bool pass = false;
  std::string note;
};

struct Report {
  std::vector<Check> checks;
  bool all_pass() const;
  std::string to_text() const;  // one line per check plus a summary
};

/// Runs every module's invariant suite (quick: reduced sample counts; full:
/// adds the Monte Carlo oracle comparisons under fixed seeds).
Report run(Level level);

/// Worst entrywise deviation between a set of channel images and the
/// average-of-unitaries quadrature oracle for a matched scenario. Exposed so a
/// corrupted table can be shown to trip the check.
double channel_table_error(const std::array<Mat2, 4>& images, const std::array<Mat2, 4>& oracle);

}  // namespace gwspin::validation
