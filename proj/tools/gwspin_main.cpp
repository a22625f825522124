#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gwspin/scenario.hpp"
#include "gwspin/validation.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitNumerical = 2;

void write_output(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::invalid_argument("cannot open output file: " + path);
  }
  out << text;
}

std::vector<double> parse_values(const std::string& list) {
  std::vector<double> values;
  std::istringstream in(list);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    try {
      values.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw std::invalid_argument("sweep value '" + item + "' is not a number");
    }
  }
  return values;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gwspin: spin decoherence of relativistic particles in a plane "
               "gravitational wave, with entanglement-swapping amplification"};
  app.require_subcommand(1);

  std::string config_path, out_path, level = "quick", param, values;
  int depth = -1;

  auto* scenario = app.add_subcommand("scenario", "proper-time sweep, CSV time series");
  scenario->add_option("config", config_path, "scenario config JSON")->required();
  scenario->add_option("--out", out_path, "output CSV path (default stdout)");

  auto* ladder = app.add_subcommand("swap-ladder", "entanglement-swapping amplification ladder");
  ladder->add_option("config", config_path, "scenario config JSON")->required();
  ladder->add_option("--depth", depth, "ladder depth (overrides config swap_depth)");
  ladder->add_option("--out", out_path, "output CSV path (default stdout)");

  auto* validate = app.add_subcommand("validate", "run the module invariant suites");
  validate->add_option("--level", level, "quick|full")->check(CLI::IsMember({"quick", "full"}));

  auto* sweep = app.add_subcommand("sweep", "summary row per swept parameter value");
  sweep->add_option("config", config_path, "scenario config JSON")->required();
  sweep->add_option("--param", param, "dotted config path, e.g. waveform.amplitude")->required();
  sweep->add_option("--values", values, "comma-separated values")->required();
  sweep->add_option("--out", out_path, "output CSV path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (scenario->parsed()) {
      const gwspin::ScenarioConfig cfg = gwspin::load_scenario_file(config_path);
      write_output(gwspin::run_scenario_csv(cfg, gwspin::env_thread_count()), out_path);
    } else if (ladder->parsed()) {
      const gwspin::ScenarioConfig cfg = gwspin::load_scenario_file(config_path);
      write_output(gwspin::run_swap_ladder_csv(cfg, depth), out_path);
    } else if (validate->parsed()) {
      const auto report = gwspin::validation::run(level == "full"
                                                      ? gwspin::validation::Level::full
                                                      : gwspin::validation::Level::quick);
      std::cout << report.to_text();
      return report.all_pass() ? kExitOk : kExitConfig;
    } else if (sweep->parsed()) {
      const gwspin::ScenarioConfig cfg = gwspin::load_scenario_file(config_path);
      write_output(gwspin::run_sweep_csv(cfg, param, parse_values(values)), out_path);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::out_of_range& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::domain_error& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const gwspin::numerical_error& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitOk;
}
