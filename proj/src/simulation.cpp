#include "smcsim/simulation.hpp"

#include <cmath>
#include <future>
#include <set>
#include <tuple>

namespace smcsim {

namespace {

ConfigError nest(const char* section, const ConfigError& inner) {
  const std::string key = inner.key().empty() ? section : std::string(section) + "." + inner.key();
  std::string msg = inner.what();
  if (!inner.key().empty() && msg.rfind(inner.key() + ": ", 0) == 0) msg = msg.substr(inner.key().size() + 2);
  return ConfigError(key, msg);
}

template <class Fn>
void in_section(const char* section, Fn&& fn) {
  try {
    fn();
  } catch (const ConfigError& e) {
    throw nest(section, e);
  }
}

}  // namespace

std::size_t Scenario::steps() const {
  const double n = duration / integrator.dt;
  const double rounded = std::round(n);
  if (!(rounded >= 1.0) || std::abs(n - rounded) > 1e-9 * std::max(1.0, n)) {
    throw ConfigError("duration", "must be a positive whole multiple of dt");
  }
  return static_cast<std::size_t>(rounded);
}

void Scenario::validate() const {
  in_section("robot", [&] { robot.validate(); });
  if (plant_override) in_section("plant_override", [&] { plant_override->validate(); });
  in_section("controller", [&] { controller.validate(); });
  in_section("trajectory", [&] { trajectory.validate(robot); });
  in_section("disturbance", [&] { disturbance.validate(); });
  in_section("integrator", [&] { integrator.validate(); });
  if (filter) {
    in_section("filter", [&] {
      FilterParams p = filter->params;
      p.dt = integrator.dt;
      p.validate();
    });
  }
  if (plant_substeps < 1) throw ConfigError("integrator.plant_substeps", "must be >= 1");
  if (!std::isfinite(duration) || duration <= 0.0) throw ConfigError("duration", "must be > 0");
  steps();
  if (initial_state && !initial_state->finite()) throw ConfigError("initial_state", "must be finite");
  if (disturbance.kind == DisturbanceKind::custom_table) {
    const auto& tab = disturbance.table;
    if (tab.front().t > 0.0 || tab.back().t < duration) {
      throw ConfigError("disturbance.table", "must cover [0, duration]");
    }
  }
  in_section("metrics", [&] { metrics.validate(); });
  if (metrics.window && (metrics.window->begin < 0.0 || metrics.window->end > duration + 1e-9)) {
    throw ConfigError("metrics.window", "must lie within [0, duration]");
  }
  if (metrics.transient_cutoff >= duration) {
    throw ConfigError("metrics.transient_cutoff", "must be earlier than the end of the run");
  }
}

RunResult run(const Scenario& sc) {
  sc.validate();
  const std::size_t n = sc.steps();
  const double dt = sc.integrator.dt;
  const RobotParams& model = sc.robot;
  const RobotParams& plant = sc.plant();
  const ControllerConfig& ctrl = sc.controller;

  IntegratorConfig sub = sc.integrator;
  sub.dt = dt / sc.plant_substeps;

  std::optional<FilterParams> fparams;
  if (sc.filter) {
    fparams = sc.filter->params;
    fparams->dt = dt;
  }
  const bool filter_q = sc.filter && sc.filter->target != FilterTarget::velocity;
  const bool filter_qd = sc.filter && sc.filter->target != FilterTarget::position;
  FilterState fq;
  FilterState fqd;

  JointState truth;
  if (sc.initial_state) {
    truth = *sc.initial_state;
  } else {
    const Reference r0 = reference_at(sc.trajectory, model, 0.0);
    truth = {r0.q, r0.qd};
  }

  RunResult result;
  result.label = std::string(to_string(ctrl.kind));
  result.log.reserve(n + 1);
  ControllerState cstate;

  for (std::size_t k = 0; k <= n; ++k) {
    const double t = static_cast<double>(k) * dt;

    JointState meas = truth;
    if (fparams) {
      if (k == 0) {
        fq = FilterState::settled_at(*fparams, truth.q);
        fqd = FilterState::settled_at(*fparams, truth.qd);
      }
      if (filter_q) std::tie(fq, meas.q) = filter_step(fq, *fparams, truth.q);
      if (filter_qd) std::tie(fqd, meas.qd) = filter_step(fqd, *fparams, truth.qd);
    }

    const Reference ref = reference_at(sc.trajectory, model, t);
    const Vec2 e = ref.q - meas.q;
    const Vec2 edot = ref.qd - meas.qd;
    cstate = k == 0 ? ControllerState::start(e, edot, ctrl.gains, 0.0)
                    : update_surface_integral(cstate, e, edot, ctrl.gains, dt);

    ControlOutput out;
    try {
      out = compute_control(ctrl, model, meas, ref, cstate);
    } catch (const SingularMatrixError& err) {
      throw RunDiverged(k, t, err.what());
    }
    ++result.controller_evaluations;
    const Vec2 d = disturbance_at(sc.disturbance, t);

    SimRecord rec;
    rec.t = t;
    rec.q = truth.q;
    rec.qd_meas = meas.qd;
    rec.ref_q = ref.q;
    rec.ref_qd = ref.qd;
    rec.ref_qdd = ref.qdd;
    rec.e = e;
    rec.edot = edot;
    rec.f = out.surface;
    rec.ly = 0.5 * (out.surface[0] * out.surface[0] + out.surface[1] * out.surface[1]);
    rec.tau = out.tau;
    rec.u_eq = out.u_eq;
    rec.u_r = out.u_r;
    rec.u_n = out.u_n;
    rec.d = d;
    result.log.push_back(rec);

    if (k == n) break;

    const Vec2 tau = out.tau;
    auto deriv = [&](double, const Vec4& x) -> Vec4 {
      const JointState s = JointState::unpack(x);
      Vec4 dx;
      dx << s.qd, forward_dynamics(plant, s, tau, d);
      return dx;
    };
    Vec4 x = truth.packed();
    try {
      for (int i = 0; i < sc.plant_substeps; ++i) x = step(deriv, x, t + i * sub.dt, sub);
    } catch (const IntegrationDiverged& err) {
      throw RunDiverged(k, t, err.what());
    } catch (const SingularMatrixError& err) {
      throw RunDiverged(k, t, err.what());
    }
    if (!x.allFinite()) throw RunDiverged(k, t, "plant state became non-finite");
    truth = JointState::unpack(x);
  }

  result.metrics = compute_metrics(result.log, sc.metrics);
  return result;
}

Comparison run_comparison(const Scenario& base, std::span<const LabeledController> controllers) {
  if (controllers.size() < 2) throw ConfigError("controllers", "comparison needs >= 2 controllers");
  std::set<std::string> seen;
  for (const auto& c : controllers) {
    if (!seen.insert(c.label).second) throw ConfigError("controllers", "duplicate controller '" + c.label + "'");
  }

  std::vector<std::future<RunResult>> jobs;
  jobs.reserve(controllers.size());
  for (const auto& c : controllers) {
    Scenario sc = base;
    sc.controller = c.controller;
    jobs.push_back(std::async(std::launch::async, [sc = std::move(sc), label = c.label] {
      RunResult r = run(sc);
      r.label = label;
      return r;
    }));
  }

  Comparison cmp;
  for (auto& j : jobs) cmp.runs.push_back(j.get());
  for (std::size_t i = 0; i < cmp.runs.size(); ++i) {
    for (std::size_t j = i + 1; j < cmp.runs.size(); ++j) {
      ChatteringRatio r;
      r.numerator = cmp.runs[j].label;
      r.denominator = cmp.runs[i].label;
      r.ratio = cmp.runs[j].metrics.chattering_index.cwiseQuotient(cmp.runs[i].metrics.chattering_index);
      cmp.ratios.push_back(r);
    }
  }
  return cmp;
}

Comparison run_comparison(const Scenario& base, std::span<const std::string> controller_names) {
  std::vector<LabeledController> list;
  list.reserve(controller_names.size());
  for (const auto& name : controller_names) {
    ControllerConfig c = base.controller;
    c.kind = parse_controller_kind(name);
    list.push_back({name, c});
  }
  return run_comparison(base, list);
}

}  // namespace smcsim
