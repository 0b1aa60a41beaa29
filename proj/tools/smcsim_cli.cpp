// smcsim: run sliding-mode control scenarios from the command line.
//
//   smcsim run <scenario> [--out DIR] [--dt S] [--duration S]
//   smcsim compare <scenario> --controllers smc,nsmc,ncsmc [--out DIR] [--dt S] [--duration S]
//   smcsim validate <scenario> [--dt S] [--duration S]
//
// Exit codes: 0 ok, 1 configuration or usage error, 2 runtime failure.

#include <cstdio>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "smcsim/smcsim.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitRuntime = 2;

int exit_code(smc_status st) {
  switch (st) {
    case SMC_OK: return kExitOk;
    case SMC_ERR_RUNTIME: return kExitRuntime;
    case SMC_ERR_IO: return kExitRuntime;
    default: return kExitConfig;
  }
}

int report(smc_status st) {
  std::fprintf(stderr, "smcsim: %s\n", smc_last_error());
  return exit_code(st);
}

struct ScenarioHandle {
  smc_scenario* ptr = nullptr;
  ~ScenarioHandle() { smc_scenario_free(ptr); }
};

struct RunHandle {
  smc_run* ptr = nullptr;
  ~RunHandle() { smc_run_free(ptr); }
};

struct ComparisonHandle {
  smc_comparison* ptr = nullptr;
  ~ComparisonHandle() { smc_comparison_free(ptr); }
};

struct Overrides {
  std::optional<double> dt;
  std::optional<double> duration;
};

smc_status load(const std::string& path, const Overrides& ov, ScenarioHandle& out) {
  smc_status st = smc_scenario_parse_file(path.c_str(), &out.ptr);
  if (st != SMC_OK) return st;
  if (ov.dt && (st = smc_scenario_set_dt(out.ptr, *ov.dt)) != SMC_OK) return st;
  if (ov.duration && (st = smc_scenario_set_duration(out.ptr, *ov.duration)) != SMC_OK) return st;
  return smc_scenario_validate(out.ptr);
}

bool prepare_dir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    std::fprintf(stderr, "smcsim: cannot create output directory '%s': %s\n", dir.c_str(), ec.message().c_str());
    return false;
  }
  return true;
}

void print_summary(const char* label, const smc_run* run) {
  double tv[2], rmse[2], viol = 0.0;
  smc_run_chattering_index(run, tv);
  smc_run_rmse(run, rmse);
  smc_run_lyapunov_violation_rate(run, &viol);
  std::printf("%-8s rmse [%.3e, %.3e] rad  chattering [%.4g, %.4g] N m  lyapunov violations %.2f%%\n", label,
              rmse[0], rmse[1], tv[0], tv[1], 100.0 * viol);
}

int cmd_run(const std::string& path, const std::string& out_dir, const Overrides& ov) {
  ScenarioHandle sc;
  if (smc_status st = load(path, ov, sc); st != SMC_OK) return report(st);
  RunHandle run;
  if (smc_status st = smc_run_scenario(sc.ptr, &run.ptr); st != SMC_OK) return report(st);
  if (!prepare_dir(out_dir)) return kExitRuntime;

  const std::filesystem::path dir(out_dir);
  const std::string name = smc_scenario_name(sc.ptr);
  const std::string csv = (dir / (name + "_log.csv")).string();
  const std::string json = (dir / (name + "_metrics.json")).string();
  if (smc_status st = smc_run_write_csv(run.ptr, csv.c_str()); st != SMC_OK) return report(st);
  if (smc_status st = smc_run_write_metrics(run.ptr, json.c_str()); st != SMC_OK) return report(st);

  print_summary(name.c_str(), run.ptr);
  std::printf("wrote %s (%zu records) and %s\n", csv.c_str(), smc_run_record_count(run.ptr), json.c_str());
  return kExitOk;
}

int cmd_compare(const std::string& path, const std::vector<std::string>& controllers, const std::string& out_dir,
                const Overrides& ov) {
  ScenarioHandle sc;
  if (smc_status st = load(path, ov, sc); st != SMC_OK) return report(st);

  std::vector<const char*> names;
  for (const auto& c : controllers) names.push_back(c.c_str());
  ComparisonHandle cmp;
  if (smc_status st = smc_compare(sc.ptr, names.data(), names.size(), &cmp.ptr); st != SMC_OK) return report(st);
  if (!prepare_dir(out_dir)) return kExitRuntime;
  if (smc_status st = smc_comparison_write(cmp.ptr, out_dir.c_str(), smc_scenario_name(sc.ptr)); st != SMC_OK) {
    return report(st);
  }
  for (size_t i = 0; i < smc_comparison_size(cmp.ptr); ++i) {
    print_summary(smc_comparison_label(cmp.ptr, i), smc_comparison_run(cmp.ptr, i));
  }
  std::printf("wrote %s\n", (std::filesystem::path(out_dir) / "comparison.json").string().c_str());
  return kExitOk;
}

int cmd_validate(const std::string& path, const Overrides& ov) {
  ScenarioHandle sc;
  if (smc_status st = load(path, ov, sc); st != SMC_OK) return report(st);
  size_t needed = 0;
  smc_scenario_describe(sc.ptr, nullptr, 0, &needed);
  std::string text(needed, '\0');
  if (smc_status st = smc_scenario_describe(sc.ptr, text.data(), text.size(), &needed); st != SMC_OK) {
    return report(st);
  }
  std::fputs(text.c_str(), stdout);
  return kExitOk;
}

void add_overrides(CLI::App* cmd, Overrides& ov) {
  cmd->add_option("--dt", ov.dt, "Control period override, s");
  cmd->add_option("--duration", ov.duration, "Run length override, s");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sliding-mode control simulator for a 2-DOF planar arm"};
  app.set_version_flag("--version", std::string(smc_version()));
  app.require_subcommand(1);

  std::string scenario;
  std::string out_dir = ".";
  std::vector<std::string> controllers;
  Overrides ov;

  auto* run = app.add_subcommand("run", "Run one scenario, write <name>_log.csv and <name>_metrics.json");
  run->add_option("scenario", scenario, "Scenario YAML file")->required();
  run->add_option("--out", out_dir, "Output directory");
  add_overrides(run, ov);

  auto* compare = app.add_subcommand("compare", "Run several controllers on one scenario");
  compare->add_option("scenario", scenario, "Scenario YAML file")->required();
  compare->add_option("--controllers", controllers, "Comma-separated list, e.g. smc,nsmc,ncsmc")
      ->required()
      ->delimiter(',');
  compare->add_option("--out", out_dir, "Output directory");
  add_overrides(compare, ov);

  auto* validate = app.add_subcommand("validate", "Check a scenario and print it in SI units");
  validate->add_option("scenario", scenario, "Scenario YAML file")->required();
  add_overrides(validate, ov);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  if (run->parsed()) return cmd_run(scenario, out_dir, ov);
  if (compare->parsed()) return cmd_compare(scenario, controllers, out_dir, ov);
  return cmd_validate(scenario, ov);
}
