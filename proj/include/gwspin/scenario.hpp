#pragma once

#include <string>
#include <vector>

#include "gwspin/kinematics.hpp"
#include "gwspin/waveform.hpp"

#include <json.hpp>

namespace gwspin {

enum class Track { matrix, deficit, both };

struct WaveformConfig {
  WaveformKind kind = WaveformKind::zero;
  double amplitude = 0.0;
  double width = 0.0;      // gaussian
  double frequency = 0.0;  // sine
  std::string table;       // tabulated, CSV path
};

struct PacketConfig {
  double width = 1.0;
  int quad_order = 40;
};

struct GridConfig {
  double tau_f = 1.0;
  int steps = 10;  // rows at tau = k * tau_f / steps, k = 0..steps
};

/// Full description of one run. JSON field names mirror the struct layout;
/// unknown fields are rejected, and every module precondition is checked up
/// front with the offending field named in the message.
struct ScenarioConfig {
  WaveformConfig waveform;
  FrameParams frame;
  PacketConfig packet;
  GridConfig grid;
  int particles = 2;
  Track track = Track::both;
  int swap_depth = 3;
  OmegaMethod method = OmegaMethod::exact_log;
};

ScenarioConfig parse_scenario(const nlohmann::json& j);
nlohmann::json scenario_to_json(const ScenarioConfig& cfg);
ScenarioConfig load_scenario_file(const std::string& path);

Waveform build_waveform(const WaveformConfig& cfg);

/// Number of worker threads from GWSPIN_THREADS (default 1, clamped to 64).
int env_thread_count();

/// Fixed-schema CSV time series, one or two rows per grid point depending on
/// the configured track. Byte-identical for a given config regardless of the
/// thread count.
std::string run_scenario_csv(const ScenarioConfig& cfg, int threads = 1);

/// Swapping-ladder CSV; depth_override >= 0 replaces cfg.swap_depth.
std::string run_swap_ladder_csv(const ScenarioConfig& cfg, int depth_override = -1);

/// One summary row (at tau_f) per swept value. The parameter path is dotted
/// into the JSON document, e.g. "waveform.amplitude" or "packet.width".
std::string run_sweep_csv(const ScenarioConfig& cfg, const std::string& param,
                          const std::vector<double>& values);

/// Full-precision (17 significant digit) decimal formatting used everywhere.
std::string format_full(double v);

}  // namespace gwspin
