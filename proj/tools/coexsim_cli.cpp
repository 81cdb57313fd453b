// Command-line front end: runs the LTE-only / WiFi-only / joint simulations
// for one seed or a seed sweep and writes CSV artifacts plus a run manifest.

#include <cstdint>
#include <exception>
#include <filesystem>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "coexsim/config_io.hpp"
#include "coexsim/report_io.hpp"
#include "coexsim/sim_engine.hpp"
#include "coexsim/version.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitRuntime = 2;

struct Options {
  std::string config_path;
  std::string mode = "all";
  std::string out_dir = "out";
  std::int64_t seed = -1;  // -1 = take the config's seed
  int seeds = 1;
};

std::vector<coexsim::Mode> modes_for(const std::string& mode) {
  if (mode == "all")
    return {coexsim::Mode::kLte, coexsim::Mode::kWifi, coexsim::Mode::kJoint};
  return {coexsim::mode_from_string(mode)};
}

int run_tool(const Options& opt) {
  namespace fs = std::filesystem;
  using coexsim::Mode;

  coexsim::SimConfig config =
      opt.config_path.empty() ? coexsim::SimConfig{} : coexsim::parse_config(opt.config_path);
  if (opt.seed >= 0) config.seed = static_cast<std::uint64_t>(opt.seed);
  config.validate();

  const std::vector<Mode> modes = modes_for(opt.mode);
  std::vector<std::uint64_t> seeds;
  for (int i = 0; i < opt.seeds; ++i) seeds.push_back(config.seed + static_cast<std::uint64_t>(i));

  fs::create_directories(opt.out_dir);

  // Manifest goes first; every output file is named in it.
  std::vector<std::string> files;
  for (Mode mode : modes)
    for (std::uint64_t seed : seeds) {
      const std::string tag = std::string(to_string(mode)) + "_" + std::to_string(seed);
      files.push_back("per_ue_" + tag + ".csv");
      files.push_back("stats_" + tag + ".csv");
    }
  if (modes.size() == 3) files.push_back("comparison.csv");

  nlohmann::json manifest;
  manifest["tool_version"] = coexsim::kVersion;
  manifest["config_digest"] = coexsim::config_digest(config);
  manifest["seed"] = config.seed;
  manifest["seed_count"] = opt.seeds;
  manifest["modes"] = [&] {
    std::vector<std::string> names;
    for (Mode m : modes) names.emplace_back(to_string(m));
    return names;
  }();
  manifest["output_dir"] = opt.out_dir;
  manifest["files"] = files;
  coexsim::write_atomic(fs::path(opt.out_dir) / "manifest.json", manifest.dump(2) + "\n");

  std::map<Mode, std::vector<coexsim::SchedulerStats>> stats_by_mode;
  for (Mode mode : modes) {
    for (std::uint64_t seed : seeds) {
      coexsim::SimConfig run_config = config;
      run_config.seed = seed;
      const coexsim::SimReport report = coexsim::run(run_config, mode);
      const std::string tag = std::string(to_string(mode)) + "_" + std::to_string(seed);
      coexsim::write_atomic(fs::path(opt.out_dir) / ("per_ue_" + tag + ".csv"),
                            coexsim::per_ue_csv(report));
      coexsim::write_atomic(fs::path(opt.out_dir) / ("stats_" + tag + ".csv"),
                            coexsim::stats_csv(report));
      stats_by_mode[mode].push_back(report.stats);
    }
  }

  if (modes.size() == 3) {
    const auto lte = coexsim::AggregateStats::mean_of(stats_by_mode[Mode::kLte]);
    const auto wifi = coexsim::AggregateStats::mean_of(stats_by_mode[Mode::kWifi]);
    const auto joint = coexsim::AggregateStats::mean_of(stats_by_mode[Mode::kJoint]);
    coexsim::write_atomic(fs::path(opt.out_dir) / "comparison.csv",
                          coexsim::comparison_csv(lte, wifi, joint));
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"LTE-U / WiFi coexistence simulator"};
  app.set_version_flag("--version", coexsim::kVersion);

  Options opt;
  app.add_option("--config", opt.config_path, "Config file (key = value lines); defaults if omitted");
  app.add_option("--mode", opt.mode, "lte, wifi, joint, or all")
      ->check(CLI::IsMember({"lte", "wifi", "joint", "all"}));
  app.add_option("--seed", opt.seed, "Master seed (overrides the config)");
  app.add_option("--seeds", opt.seeds, "Seed sweep length: seed, seed+1, ...")
      ->check(CLI::PositiveNumber);
  app.add_option("--out", opt.out_dir, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    return run_tool(opt);
  } catch (const coexsim::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitRuntime;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
}
