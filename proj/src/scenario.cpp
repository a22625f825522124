#include "gwspin/scenario.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

#include "gwspin/quantum.hpp"
#include "gwspin/swapping.hpp"
#include "gwspin/wavepacket.hpp"

namespace gwspin {

namespace {

// Strict JSON object view: every key must be consumed, unknown keys are
// config errors that name themselves.
class StrictObject {
 public:
  StrictObject(const nlohmann::json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) {
      throw std::invalid_argument("config field '" + path_ + "' must be a JSON object");
    }
  }

  bool has(const std::string& name) {
    return j_.contains(name);
  }

  const nlohmann::json& require(const std::string& name) {
    if (!j_.contains(name)) {
      throw std::invalid_argument("config field '" + qualified(name) + "' is missing");
    }
    seen_.insert(name);
    return j_.at(name);
  }

  double number(const std::string& name) {
    const auto& v = require(name);
    if (!v.is_number()) {
      throw std::invalid_argument("config field '" + qualified(name) + "' must be a number");
    }
    return v.get<double>();
  }

  double number_or(const std::string& name, double fallback) {
    if (!j_.contains(name)) return fallback;
    return number(name);
  }

  int integer(const std::string& name) {
    const auto& v = require(name);
    if (!v.is_number_integer()) {
      throw std::invalid_argument("config field '" + qualified(name) + "' must be an integer");
    }
    return v.get<int>();
  }

  int integer_or(const std::string& name, int fallback) {
    if (!j_.contains(name)) return fallback;
    return integer(name);
  }

  bool boolean_or(const std::string& name, bool fallback) {
    if (!j_.contains(name)) return fallback;
    const auto& v = require(name);
    if (!v.is_boolean()) {
      throw std::invalid_argument("config field '" + qualified(name) + "' must be a boolean");
    }
    return v.get<bool>();
  }

  std::string text(const std::string& name) {
    const auto& v = require(name);
    if (!v.is_string()) {
      throw std::invalid_argument("config field '" + qualified(name) + "' must be a string");
    }
    return v.get<std::string>();
  }

  std::string text_or(const std::string& name, const std::string& fallback) {
    if (!j_.contains(name)) return fallback;
    return text(name);
  }

  StrictObject object(const std::string& name) { return StrictObject(require(name), qualified(name)); }

  std::string qualified(const std::string& name) const {
    return path_.empty() ? name : path_ + "." + name;
  }

  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it) {
      if (!seen_.count(it.key())) {
        throw std::invalid_argument("unknown config field '" + qualified(it.key()) + "'");
      }
    }
  }

 private:
  const nlohmann::json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

Track parse_track(const std::string& s, const std::string& field) {
  if (s == "matrix") return Track::matrix;
  if (s == "deficit") return Track::deficit;
  if (s == "both") return Track::both;
  throw std::invalid_argument("config field '" + field +
                              "' must be one of matrix|deficit|both, got '" + s + "'");
}

std::string track_name(Track t) {
  switch (t) {
    case Track::matrix: return "matrix";
    case Track::deficit: return "deficit";
    case Track::both: return "both";
  }
  return "both";
}

OmegaMethod parse_method(const std::string& s, const std::string& field) {
  if (s == "exact_log") return OmegaMethod::exact_log;
  if (s == "first_order") return OmegaMethod::first_order;
  throw std::invalid_argument("config field '" + field +
                              "' must be exact_log|first_order, got '" + s + "'");
}

WaveformKind parse_kind(const std::string& s, const std::string& field) {
  if (s == "zero") return WaveformKind::zero;
  if (s == "gaussian") return WaveformKind::gaussian;
  if (s == "sine") return WaveformKind::sine;
  if (s == "tabulated") return WaveformKind::tabulated;
  throw std::invalid_argument("config field '" + field +
                              "' must be zero|gaussian|sine|tabulated, got '" + s + "'");
}

}  // namespace

Waveform build_waveform(const WaveformConfig& cfg) {
  switch (cfg.kind) {
    case WaveformKind::zero:
      return Waveform::zero();
    case WaveformKind::gaussian:
      return Waveform::gaussian(cfg.amplitude, cfg.width);
    case WaveformKind::sine:
      return Waveform::sine(cfg.amplitude, cfg.frequency);
    case WaveformKind::tabulated:
      return Waveform::from_csv(cfg.table);
  }
  throw std::invalid_argument("unreachable waveform kind");
}

ScenarioConfig parse_scenario(const nlohmann::json& j) {
  StrictObject root(j, "");
  ScenarioConfig cfg;

  {
    StrictObject w = root.object("waveform");
    cfg.waveform.kind = parse_kind(w.text("kind"), w.qualified("kind"));
    switch (cfg.waveform.kind) {
      case WaveformKind::zero:
        break;
      case WaveformKind::gaussian:
        cfg.waveform.amplitude = w.number("amplitude");
        cfg.waveform.width = w.number("width");
        break;
      case WaveformKind::sine:
        cfg.waveform.amplitude = w.number("amplitude");
        cfg.waveform.frequency = w.number("frequency");
        break;
      case WaveformKind::tabulated:
        cfg.waveform.table = w.text("table");
        break;
    }
    w.finish();
  }
  {
    StrictObject f = root.object("frame");
    cfg.frame.mass = f.number("mass");
    cfg.frame.rapidity = f.number("rapidity");
    cfg.frame.angle = f.number("angle");
    cfg.frame.t_i = f.number("t_i");
    cfg.frame.z_i = f.number("z_i");
    cfg.frame.x_i = f.number_or("x_i", 0.0);
    cfg.frame.y_i = f.number_or("y_i", 0.0);
    cfg.frame.allow_boundary = f.boolean_or("allow_boundary", false);
    f.finish();
  }
  {
    StrictObject p = root.object("packet");
    cfg.packet.width = p.number("width");
    cfg.packet.quad_order = p.integer_or("quad_order", 40);
    p.finish();
  }
  {
    StrictObject g = root.object("grid");
    cfg.grid.tau_f = g.number("tau_f");
    cfg.grid.steps = g.integer("steps");
    g.finish();
  }
  cfg.particles = root.integer_or("particles", 2);
  cfg.track = parse_track(root.text_or("track", "both"), "track");
  cfg.swap_depth = root.integer_or("swap_depth", 3);
  cfg.method = parse_method(root.text_or("omega_method", "exact_log"), "omega_method");
  root.finish();

  // Validate against module preconditions, naming fields.
  try {
    build_waveform(cfg.waveform);
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(std::string("config field 'waveform': ") + e.what());
  }
  try {
    cfg.frame.validate();
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(std::string("config field 'frame': ") + e.what());
  }
  if (!(cfg.packet.width > 0.0)) {
    throw std::invalid_argument("config field 'packet.width' must be positive");
  }
  if (cfg.packet.quad_order < 8) {
    throw std::invalid_argument("config field 'packet.quad_order' must be >= 8");
  }
  if (!(cfg.grid.tau_f >= 0.0)) {
    throw std::invalid_argument("config field 'grid.tau_f' must be >= 0");
  }
  if (cfg.grid.steps < 1) {
    throw std::invalid_argument("config field 'grid.steps' must be >= 1");
  }
  if (cfg.particles < 1 || cfg.particles > 7) {
    throw std::invalid_argument("config field 'particles' must be in 1..7");
  }
  if (cfg.particles > 2 && cfg.track != Track::matrix) {
    throw std::invalid_argument(
        "config field 'particles': bipartition negativities beyond 2 particles need track=matrix");
  }
  if (cfg.swap_depth < 0) {
    throw std::invalid_argument("config field 'swap_depth' must be >= 0");
  }
  if (cfg.swap_depth > 6 && cfg.track != Track::deficit) {
    throw std::invalid_argument(
        "config field 'swap_depth': matrix-track ladders are limited to depth 6");
  }
  return cfg;
}

nlohmann::json scenario_to_json(const ScenarioConfig& cfg) {
  nlohmann::json w;
  switch (cfg.waveform.kind) {
    case WaveformKind::zero:
      w = {{"kind", "zero"}};
      break;
    case WaveformKind::gaussian:
      w = {{"kind", "gaussian"}, {"amplitude", cfg.waveform.amplitude},
           {"width", cfg.waveform.width}};
      break;
    case WaveformKind::sine:
      w = {{"kind", "sine"}, {"amplitude", cfg.waveform.amplitude},
           {"frequency", cfg.waveform.frequency}};
      break;
    case WaveformKind::tabulated:
      w = {{"kind", "tabulated"}, {"table", cfg.waveform.table}};
      break;
  }
  return nlohmann::json{
      {"waveform", w},
      {"frame",
       {{"mass", cfg.frame.mass},
        {"rapidity", cfg.frame.rapidity},
        {"angle", cfg.frame.angle},
        {"t_i", cfg.frame.t_i},
        {"z_i", cfg.frame.z_i},
        {"x_i", cfg.frame.x_i},
        {"y_i", cfg.frame.y_i},
        {"allow_boundary", cfg.frame.allow_boundary}}},
      {"packet", {{"width", cfg.packet.width}, {"quad_order", cfg.packet.quad_order}}},
      {"grid", {{"tau_f", cfg.grid.tau_f}, {"steps", cfg.grid.steps}}},
      {"particles", cfg.particles},
      {"track", track_name(cfg.track)},
      {"swap_depth", cfg.swap_depth},
      {"omega_method", cfg.method == OmegaMethod::exact_log ? "exact_log" : "first_order"},
  };
}

ScenarioConfig load_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("cannot open config file: " + path);
  }
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument("config file " + path + " is not valid JSON: " + e.what());
  }
  return parse_scenario(j);
}

int env_thread_count() {
  const char* env = std::getenv("GWSPIN_THREADS");
  if (env == nullptr) return 1;
  const int n = std::atoi(env);
  if (n < 1) return 1;
  return std::min(n, 64);
}

std::string format_full(double v) {
  if (v == 0.0) return "0";  // fold signed zero
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

struct RowQuantities {
  double tau = 0.0;
  double u = 0.0;
  double f = 0.0;
  double omega_center = 0.0;
  DecoherenceFactor factor = DecoherenceFactor::identity();
};

// Track-dependent block: entropy and negativity columns.
struct TrackBlock {
  double entropy_single = 0.0;
  double entropy_two = 0.0;
  double negativity_two = 1.0;
  double negativity_two_deficit = 0.0;
  std::vector<double> cut_negativities;  // particles > 2, matrix track only
};

TrackBlock deficit_block(const DecoherenceFactor& d) {
  TrackBlock b;
  b.entropy_single = binary_entropy_bits(0.5 * d.deficit());
  const TwoParticleAnalytic two = analytic_two_particle(d);
  b.entropy_two = two.entropy_bits;
  b.negativity_two = two.negativity;
  b.negativity_two_deficit = two.negativity_deficit;
  return b;
}

TrackBlock matrix_block(const DecoherenceFactor& d, int particles) {
  TrackBlock b;
  const SpinChannel ch(d);
  const DensityOperator single = evolve_ghz(1, ch);
  b.entropy_single = von_neumann_entropy(single);
  const DensityOperator pair = evolve_ghz(2, ch);
  b.entropy_two = von_neumann_entropy(pair);
  b.negativity_two = negativity(pair, {0});
  b.negativity_two_deficit = 1.0 - b.negativity_two;
  if (particles > 2) {
    const DensityOperator state = evolve_ghz(particles, ch);
    for (int cut = 1; cut < particles; ++cut) {
      std::vector<int> part;
      for (int q = 0; q < cut; ++q) part.push_back(q);
      b.cut_negativities.push_back(negativity(state, part));
    }
  }
  return b;
}

void append_row(std::string& out, const RowQuantities& q, const char* track,
                const TrackBlock& b, int particles) {
  out += format_full(q.tau);
  out += ',';
  out += format_full(q.u);
  out += ',';
  out += format_full(q.f);
  out += ',';
  out += format_full(q.omega_center);
  out += ',';
  out += track;
  out += ',';
  out += format_full(q.factor.deficit());
  out += ',';
  out += format_full(1.0 - q.factor.deficit());
  out += ',';
  out += format_full(q.factor.phase());
  out += ',';
  out += format_full(b.entropy_single);
  out += ',';
  out += format_full(b.entropy_two);
  out += ',';
  out += format_full(b.negativity_two);
  out += ',';
  out += format_full(b.negativity_two_deficit);
  if (particles > 2) {
    for (int cut = 1; cut < particles; ++cut) {
      out += ',';
      const std::size_t idx = static_cast<std::size_t>(cut - 1);
      out += format_full(idx < b.cut_negativities.size() ? b.cut_negativities[idx] : 1.0);
    }
  }
  out += '\n';
}

}  // namespace

std::string run_scenario_csv(const ScenarioConfig& cfg, int threads) {
  const Waveform wave = build_waveform(cfg.waveform);
  const FrameParams& frame = cfg.frame;
  frame.validate();
  const WavePacket packet = WavePacket::centered(frame, cfg.packet.width);
  const LocalMomentum center = packet_center(frame);
  const int rows = cfg.grid.steps + 1;
  const bool with_cuts = cfg.particles > 2;

  std::string header = "tau,u,f,omega_center,track,deficit,ubar_abs,phase,entropy_single,"
                       "entropy_two,negativity_two,negativity_two_deficit";
  if (with_cuts) {
    for (int cut = 1; cut < cfg.particles; ++cut) {
      header += ",negativity_cut_" + std::to_string(cut);
    }
  }
  header += '\n';

  std::vector<std::string> row_text(rows);
  std::atomic<int> next{0};
  auto worker = [&]() {
    for (;;) {
      const int idx = next.fetch_add(1);
      if (idx >= rows) break;
      const double tau = cfg.grid.tau_f * idx / cfg.grid.steps;
      RowQuantities q;
      q.tau = tau;
      q.u = phase_at(frame, tau);
      q.f = wave.eval(q.u);
      q.omega_center = omega(wave, frame, 0.0, tau, center, cfg.method).angle;
      q.factor = ubar(packet, wave, frame, 0.0, tau, cfg.packet.quad_order, cfg.method);

      std::string text;
      if (cfg.track == Track::matrix || cfg.track == Track::both) {
        append_row(text, q, "matrix", matrix_block(q.factor, cfg.particles), cfg.particles);
      }
      if (cfg.track == Track::deficit || cfg.track == Track::both) {
        append_row(text, q, "deficit", deficit_block(q.factor), cfg.particles);
      }
      row_text[idx] = std::move(text);
    }
  };

  const int n_workers = std::max(1, std::min(threads, rows));
  if (n_workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_workers);
    for (int i = 0; i < n_workers; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  std::string out = header;
  for (const auto& r : row_text) out += r;
  return out;
}

std::string run_swap_ladder_csv(const ScenarioConfig& cfg, int depth_override) {
  const Waveform wave = build_waveform(cfg.waveform);
  cfg.frame.validate();
  const WavePacket packet = WavePacket::centered(cfg.frame, cfg.packet.width);
  const int depth = depth_override >= 0 ? depth_override : cfg.swap_depth;
  const bool matrix = cfg.track != Track::deficit;
  if (matrix && depth > 6) {
    throw std::invalid_argument("matrix-track swap ladders are limited to depth 6; "
                                "use track=deficit for deeper runs");
  }

  const DecoherenceFactor d =
      ubar(packet, wave, cfg.frame, 0.0, cfg.grid.tau_f, cfg.packet.quad_order, cfg.method);
  const SpinChannel ch(d);
  const auto levels = swap_ladder(ch, depth, matrix);

  std::string out = "level,n,track,negativity,deficit,p_max_err\n";
  std::optional<DensityOperator> state;
  if (matrix) state = evolve_ghz(2, ch);
  for (const auto& lv : levels) {
    out += std::to_string(lv.level);
    out += ',';
    out += format_full(lv.particle_count);
    out += ',';
    if (lv.matrix_negativity) {
      // p_i spread for the swap feeding the NEXT level, checked at this state.
      const OutcomeEquivalence eq = outcome_equivalence_check(*state, *state);
      double p_err = 0.0;
      for (double p : eq.probabilities) p_err = std::max(p_err, std::abs(p - 0.25));
      out += "matrix,";
      out += format_full(*lv.matrix_negativity);
      out += ',';
      out += format_full(lv.deficit);
      out += ',';
      out += format_full(p_err);
      if (lv.level < depth) state = swap_once(*state, *state, 0).state;
    } else {
      out += "deficit,";
      out += format_full(1.0 - lv.deficit);
      out += ',';
      out += format_full(lv.deficit);
      out += ",0";
    }
    out += '\n';
  }
  return out;
}

std::string run_sweep_csv(const ScenarioConfig& cfg, const std::string& param,
                          const std::vector<double>& values) {
  if (values.empty()) {
    throw std::invalid_argument("sweep needs at least one value");
  }
  // Apply the dotted path to the JSON form and re-validate per value.
  std::string out = "param,value,track,deficit,ubar_abs,phase,entropy_single,entropy_two,"
                    "negativity_two,negativity_two_deficit\n";
  for (double v : values) {
    nlohmann::json j = scenario_to_json(cfg);
    nlohmann::json* node = &j;
    std::istringstream path(param);
    std::string key, parent_desc;
    std::vector<std::string> keys;
    while (std::getline(path, key, '.')) keys.push_back(key);
    if (keys.empty()) {
      throw std::invalid_argument("sweep parameter path is empty");
    }
    for (std::size_t i = 0; i + 1 < keys.size(); ++i) {
      if (!node->contains(keys[i])) {
        throw std::invalid_argument("sweep parameter '" + param + "' not found in config");
      }
      node = &(*node)[keys[i]];
    }
    if (!node->contains(keys.back()) || !(*node)[keys.back()].is_number()) {
      throw std::invalid_argument("sweep parameter '" + param + "' is not a numeric config field");
    }
    (*node)[keys.back()] = v;
    const ScenarioConfig swept = parse_scenario(j);

    const Waveform wave = build_waveform(swept.waveform);
    const WavePacket packet = WavePacket::centered(swept.frame, swept.packet.width);
    const DecoherenceFactor d = ubar(packet, wave, swept.frame, 0.0, swept.grid.tau_f,
                                     swept.packet.quad_order, swept.method);
    auto emit = [&](const char* track, const TrackBlock& b) {
      out += param;
      out += ',';
      out += format_full(v);
      out += ',';
      out += track;
      out += ',';
      out += format_full(d.deficit());
      out += ',';
      out += format_full(1.0 - d.deficit());
      out += ',';
      out += format_full(d.phase());
      out += ',';
      out += format_full(b.entropy_single);
      out += ',';
      out += format_full(b.entropy_two);
      out += ',';
      out += format_full(b.negativity_two);
      out += ',';
      out += format_full(b.negativity_two_deficit);
      out += '\n';
    };
    if (swept.track == Track::matrix || swept.track == Track::both) {
      emit("matrix", matrix_block(d, 2));
    }
    if (swept.track == Track::deficit || swept.track == Track::both) {
      emit("deficit", deficit_block(d));
    }
  }
  return out;
}

}  // namespace gwspin
