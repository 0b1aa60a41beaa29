#include "smcsim/smcsim.h"

#include <cstring>
#include <exception>
#include <filesystem>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "smcsim/io.hpp"
#include "smcsim/scenario.hpp"
#include "smcsim/simulation.hpp"

struct smc_scenario {
  smcsim::Scenario value;
};

struct smc_run {
  smcsim::Scenario scenario;
  smcsim::RunResult result;
};

struct smc_comparison {
  smcsim::Scenario scenario;
  smcsim::Comparison cmp;
  std::vector<smc_run> views;
};

namespace {

thread_local std::string g_last_error;

smc_status fail(smc_status code, std::string message) {
  g_last_error = std::move(message);
  return code;
}

// Maps library exceptions onto status codes.
template <class Fn>
smc_status guarded(Fn&& fn) {
  try {
    fn();
    return SMC_OK;
  } catch (const smcsim::ConfigError& e) {
    return fail(SMC_ERR_CONFIG, e.what());
  } catch (const smcsim::ReachabilityError& e) {
    return fail(SMC_ERR_CONFIG, e.what());
  } catch (const smcsim::OutOfRangeError& e) {
    return fail(SMC_ERR_CONFIG, e.what());
  } catch (const smcsim::RunDiverged& e) {
    return fail(SMC_ERR_RUNTIME, e.what());
  } catch (const smcsim::IntegrationDiverged& e) {
    return fail(SMC_ERR_RUNTIME, e.what());
  } catch (const smcsim::SingularMatrixError& e) {
    return fail(SMC_ERR_RUNTIME, e.what());
  } catch (const smcsim::Error& e) {
    return fail(SMC_ERR_IO, e.what());
  } catch (const std::exception& e) {
    return fail(SMC_ERR_RUNTIME, e.what());
  } catch (...) {
    return fail(SMC_ERR_RUNTIME, "unknown error");
  }
}

smc_status copy_out(const std::string& text, char* buffer, size_t capacity, size_t* required) {
  if (required) *required = text.size() + 1;
  if (buffer == nullptr && capacity == 0) return SMC_OK;
  if (buffer == nullptr || capacity < text.size() + 1) {
    return fail(SMC_ERR_ARGUMENT, "buffer too small (need " + std::to_string(text.size() + 1) + " bytes)");
  }
  std::memcpy(buffer, text.c_str(), text.size() + 1);
  return SMC_OK;
}

smc_status null_handle(const char* what) { return fail(SMC_ERR_ARGUMENT, std::string("null ") + what); }

}  // namespace

extern "C" {

const char* smc_version(void) { return "0.1.0"; }

const char* smc_last_error(void) { return g_last_error.c_str(); }

size_t smc_log_column_count(void) { return smcsim::SimRecord::kColumns; }

const char* smc_log_column_name(size_t index) {
  if (index >= smcsim::SimRecord::kColumns) return nullptr;
  return smcsim::SimRecord::kColumnNames[index].data();
}

smc_status smc_scenario_parse_file(const char* path, smc_scenario** out) {
  if (!path || !out) return null_handle("argument");
  *out = nullptr;
  return guarded([&] { *out = new smc_scenario{smcsim::parse_scenario_file(path)}; });
}

smc_status smc_scenario_parse_string(const char* yaml, const char* name, smc_scenario** out) {
  if (!yaml || !out) return null_handle("argument");
  *out = nullptr;
  return guarded([&] { *out = new smc_scenario{smcsim::parse_scenario(yaml, name ? name : "scenario")}; });
}

smc_status smc_scenario_validate(const smc_scenario* scenario) {
  if (!scenario) return null_handle("scenario");
  return guarded([&] { scenario->value.validate(); });
}

void smc_scenario_free(smc_scenario* scenario) { delete scenario; }

smc_status smc_scenario_set_dt(smc_scenario* scenario, double dt) {
  if (!scenario) return null_handle("scenario");
  return guarded([&] {
    smcsim::IntegratorConfig cfg = scenario->value.integrator;
    cfg.dt = dt;
    try {
      cfg.validate();
    } catch (const smcsim::ConfigError& e) {
      throw smcsim::ConfigError("integrator.dt", std::string(e.what()).substr(e.key().size() + 2));
    }
    scenario->value.integrator = cfg;
  });
}

smc_status smc_scenario_set_duration(smc_scenario* scenario, double duration) {
  if (!scenario) return null_handle("scenario");
  return guarded([&] {
    if (!(duration > 0.0)) throw smcsim::ConfigError("duration", "must be > 0");
    scenario->value.duration = duration;
  });
}

smc_status smc_scenario_set_controller(smc_scenario* scenario, const char* controller) {
  if (!scenario || !controller) return null_handle("argument");
  return guarded([&] { scenario->value.controller.kind = smcsim::parse_controller_kind(controller); });
}

const char* smc_scenario_name(const smc_scenario* scenario) {
  return scenario ? scenario->value.name.c_str() : nullptr;
}

smc_status smc_scenario_describe(const smc_scenario* scenario, char* buffer, size_t capacity, size_t* required) {
  if (!scenario) return null_handle("scenario");
  std::string text;
  const smc_status st = guarded([&] { text = smcsim::describe_scenario(scenario->value); });
  return st == SMC_OK ? copy_out(text, buffer, capacity, required) : st;
}

smc_status smc_run_scenario(const smc_scenario* scenario, smc_run** out) {
  if (!scenario || !out) return null_handle("argument");
  *out = nullptr;
  return guarded([&] { *out = new smc_run{scenario->value, smcsim::run(scenario->value)}; });
}

void smc_run_free(smc_run* run) { delete run; }

size_t smc_run_record_count(const smc_run* run) { return run ? run->result.log.size() : 0; }

smc_status smc_run_record(const smc_run* run, size_t index, double* row) {
  if (!run || !row) return null_handle("argument");
  if (index >= run->result.log.size()) return fail(SMC_ERR_ARGUMENT, "record index out of range");
  const auto values = run->result.log[index].to_row();
  std::memcpy(row, values.data(), sizeof(double) * values.size());
  return SMC_OK;
}

smc_status smc_run_write_csv(const smc_run* run, const char* path) {
  if (!run || !path) return null_handle("argument");
  return guarded([&] { smcsim::write_csv_file(path, run->result.log); });
}

smc_status smc_run_metrics_json(const smc_run* run, char* buffer, size_t capacity, size_t* required) {
  if (!run) return null_handle("run");
  return copy_out(smcsim::metrics_json(run->scenario, run->result), buffer, capacity, required);
}

smc_status smc_run_write_metrics(const smc_run* run, const char* path) {
  if (!run || !path) return null_handle("argument");
  return guarded([&] { smcsim::write_text_file(path, smcsim::metrics_json(run->scenario, run->result)); });
}

smc_status smc_run_chattering_index(const smc_run* run, double* out) {
  if (!run || !out) return null_handle("argument");
  out[0] = run->result.metrics.chattering_index[0];
  out[1] = run->result.metrics.chattering_index[1];
  return SMC_OK;
}

smc_status smc_run_rmse(const smc_run* run, double* out) {
  if (!run || !out) return null_handle("argument");
  out[0] = run->result.metrics.rmse[0];
  out[1] = run->result.metrics.rmse[1];
  return SMC_OK;
}

smc_status smc_run_lyapunov_violation_rate(const smc_run* run, double* out) {
  if (!run || !out) return null_handle("argument");
  *out = run->result.metrics.lyapunov_violation_rate;
  return SMC_OK;
}

smc_status smc_compare(const smc_scenario* scenario, const char* const* controllers, size_t count,
                       smc_comparison** out) {
  if (!scenario || !out || (count > 0 && !controllers)) return null_handle("argument");
  *out = nullptr;
  return guarded([&] {
    std::vector<std::string> names;
    for (size_t i = 0; i < count; ++i) {
      if (!controllers[i]) throw smcsim::ConfigError("controllers", "null controller name");
      names.emplace_back(controllers[i]);
    }
    auto holder = std::make_unique<smc_comparison>();
    holder->scenario = scenario->value;
    holder->cmp = smcsim::run_comparison(scenario->value, names);
    for (const auto& r : holder->cmp.runs) {
      smcsim::Scenario member = scenario->value;
      member.controller.kind = smcsim::parse_controller_kind(r.label);
      holder->views.push_back(smc_run{std::move(member), r});
    }
    *out = holder.release();
  });
}

void smc_comparison_free(smc_comparison* comparison) { delete comparison; }

size_t smc_comparison_size(const smc_comparison* comparison) { return comparison ? comparison->views.size() : 0; }

const smc_run* smc_comparison_run(const smc_comparison* comparison, size_t index) {
  if (!comparison || index >= comparison->views.size()) return nullptr;
  return &comparison->views[index];
}

const char* smc_comparison_label(const smc_comparison* comparison, size_t index) {
  if (!comparison || index >= comparison->views.size()) return nullptr;
  return comparison->views[index].result.label.c_str();
}

smc_status smc_comparison_write(const smc_comparison* comparison, const char* directory, const char* prefix) {
  if (!comparison || !directory || !prefix) return null_handle("argument");
  return guarded([&] {
    const std::filesystem::path dir(directory);
    for (const auto& v : comparison->views) {
      smcsim::write_csv_file(dir / (std::string(prefix) + "_" + v.result.label + "_log.csv"), v.result.log);
    }
    smcsim::write_text_file(dir / "comparison.json", smcsim::comparison_json(comparison->scenario, comparison->cmp));
  });
}

smc_status smc_comparison_json(const smc_comparison* comparison, char* buffer, size_t capacity, size_t* required) {
  if (!comparison) return null_handle("comparison");
  return copy_out(smcsim::comparison_json(comparison->scenario, comparison->cmp), buffer, capacity, required);
}

}  // extern "C"
