#include <CLI11.hpp>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>

#include "qzeno/qzeno.hpp"

namespace {

struct Overrides {
  std::string mode;
  std::string out;
  std::string format;
  double dt = 0;
  double tau = 0;
  int order = 0;
  std::uint64_t seed = 0;
  int n_trajectories = 0;
};

void add_override_flags(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--mode", o.mode,
                  "exact|effective|qzd|trajectories|compare");
  cmd->add_option("--dt", o.dt, "measurement interval");
  cmd->add_option("--tau", o.tau, "total evolution time");
  cmd->add_option("--order", o.order, "quasi-Zeno truncation order K");
  cmd->add_option("--seed", o.seed, "RNG seed");
  cmd->add_option("--out", o.out, "output base path");
  cmd->add_option("--format", o.format, "csv|json");
  cmd->add_option("--trajectories", o.n_trajectories,
                  "trajectory count (trajectories mode)");
}

void apply_overrides(qzeno::ExperimentConfig& config, const CLI::App* cmd,
                     const Overrides& o) {
  if (cmd->count("--mode")) config.mode = qzeno::run_mode_from_string(o.mode);
  if (cmd->count("--dt")) config.dt = o.dt;
  if (cmd->count("--tau")) config.tau = o.tau;
  if (cmd->count("--order")) config.order = o.order;
  if (cmd->count("--seed")) config.seed = o.seed;
  if (cmd->count("--out")) config.output_path = o.out;
  if (cmd->count("--format"))
    config.format = qzeno::report_format_from_string(o.format);
  if (cmd->count("--trajectories")) config.n_trajectories = o.n_trajectories;
}

// QZENO_OUTPUT_DIR supplies the directory for relative output paths.
std::string resolve_output(const std::string& path) {
  const char* dir = std::getenv("QZENO_OUTPUT_DIR");
  if (!dir || !*dir) return path;
  std::filesystem::path p(path);
  if (p.is_absolute()) return path;
  return (std::filesystem::path(dir) / p).string();
}

int run_and_emit(qzeno::ExperimentConfig config) {
  qzeno::RunReport report = qzeno::run_experiment(config);
  for (const auto& w : report.metadata.at("warnings"))
    std::cerr << "warning: " << w.get<std::string>() << "\n";
  std::vector<std::string> files = qzeno::emit_report(
      report, config.format, resolve_output(config.output_path));
  for (const std::string& f : files) std::cout << f << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quasi-Zeno dynamics laboratory"};
  app.require_subcommand(1);

  std::string config_path;
  Overrides run_overrides;
  CLI::App* run_cmd =
      app.add_subcommand("run", "run an experiment from a JSON config");
  run_cmd->add_option("config", config_path, "path to the config file")
      ->required();
  add_override_flags(run_cmd, run_overrides);

  std::string preset_name;
  Overrides preset_overrides;
  CLI::App* preset_cmd =
      app.add_subcommand("preset", "run a built-in experiment");
  preset_cmd->add_option("name", preset_name, "preset name")->required();
  add_override_flags(preset_cmd, preset_overrides);

  CLI::App* list_cmd =
      app.add_subcommand("list-presets", "list built-in experiments");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (list_cmd->parsed()) {
      for (const qzeno::PresetInfo& p : qzeno::list_presets())
        std::cout << p.name << "\t" << p.description << "\n";
      return 0;
    }
    if (run_cmd->parsed()) {
      qzeno::ExperimentConfig config = qzeno::load_config(config_path);
      apply_overrides(config, run_cmd, run_overrides);
      return run_and_emit(config);
    }
    qzeno::ExperimentConfig config = qzeno::preset_config(preset_name);
    apply_overrides(config, preset_cmd, preset_overrides);
    return run_and_emit(config);
  } catch (const qzeno::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const qzeno::IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
