#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "smcsim/controllers.hpp"
#include "smcsim/dynamics.hpp"
#include "smcsim/filters.hpp"
#include "smcsim/metrics.hpp"
#include "smcsim/numerics.hpp"
#include "smcsim/record.hpp"
#include "smcsim/trajectory.hpp"

namespace smcsim {

enum class FilterTarget { velocity, position, both };

// Optional low-pass on the measurements the controller sees.
struct SensingFilter {
  FilterParams params;  // params.dt is forced to the control period
  FilterTarget target = FilterTarget::velocity;
};

struct Scenario {
  std::string name = "scenario";
  RobotParams robot;                         // model used by the controller
  std::optional<RobotParams> plant_override;  // simulated plant, if it differs
  ControllerConfig controller;
  TrajectorySpec trajectory;
  Disturbance disturbance;
  std::optional<SensingFilter> filter;
  IntegratorConfig integrator;
  int plant_substeps = 1;  // plant sub-steps per control period, torque held
  double duration = 20.0;  // s
  std::optional<JointState> initial_state;  // empty: start on the reference
  std::uint64_t seed = 0;                   // recorded, not used by any signal
  MetricsConfig metrics;

  const RobotParams& plant() const { return plant_override ? *plant_override : robot; }

  // Number of control steps; duration must be a whole number of dt.
  std::size_t steps() const;

  // Throws ConfigError with a dotted key path.
  void validate() const;
};

struct RunResult {
  std::string label;
  std::vector<SimRecord> log;
  RunMetrics metrics;
  std::size_t controller_evaluations = 0;
};

// Thrown when the closed loop blows up; wraps the integrator's report with
// the step index.
class RunDiverged : public Error {
 public:
  RunDiverged(std::size_t step, double t, const std::string& what)
      : Error("run diverged at step " + std::to_string(step) + " (t = " + std::to_string(t) + " s): " + what),
        step_(step), t_(t) {}
  std::size_t step() const noexcept { return step_; }
  double time() const noexcept { return t_; }

 private:
  std::size_t step_;
  double t_;
};

// Per step: measure -> filter -> reference -> error -> surface integral ->
// control (held over the step) -> disturbance -> plant integration.
// Produces steps() + 1 records at t_k = k dt.
RunResult run(const Scenario& scenario);

struct LabeledController {
  std::string label;
  ControllerConfig controller;
};

struct ChatteringRatio {
  std::string numerator;
  std::string denominator;
  Vec2 ratio = Vec2::Zero();
};

struct Comparison {
  std::vector<RunResult> runs;
  std::vector<ChatteringRatio> ratios;  // later / earlier, for every pair in input order
};

// Runs every controller on otherwise identical copies of `base`, in
// parallel. Needs >= 2 entries with distinct labels (ConfigError otherwise).
Comparison run_comparison(const Scenario& base, std::span<const LabeledController> controllers);

// Same, selecting laws by name and keeping the gains of `base`.
Comparison run_comparison(const Scenario& base, std::span<const std::string> controller_names);

}  // namespace smcsim
