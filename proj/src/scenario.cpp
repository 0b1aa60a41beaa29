#include "smcsim/scenario.hpp"

#include <yaml-cpp/yaml.h>

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>
#include <utility>
#include <vector>

namespace smcsim {

namespace {

enum class Dim { none, length, mass, time, angle, rate, joint_accel, linear_accel, torque };

struct Unit {
  std::string_view name;
  double scale;
};

std::vector<Unit> units_for(Dim d) {
  constexpr double deg = std::numbers::pi / 180.0;
  switch (d) {
    case Dim::none: return {};
    case Dim::length: return {{"m", 1.0}, {"cm", 1e-2}, {"mm", 1e-3}};
    case Dim::mass: return {{"kg", 1.0}, {"g", 1e-3}};
    case Dim::time: return {{"s", 1.0}, {"ms", 1e-3}};
    case Dim::angle: return {{"rad", 1.0}, {"deg", deg}};
    case Dim::rate: return {{"rad/s", 1.0}, {"deg/s", deg}};
    case Dim::joint_accel: return {{"rad/s^2", 1.0}, {"deg/s^2", deg}};
    case Dim::linear_accel: return {{"m/s^2", 1.0}};
    case Dim::torque: return {{"N m", 1.0}, {"N.m", 1.0}, {"Nm", 1.0}};
  }
  return {};
}

std::string join(const std::string& path, std::string_view key) {
  return path.empty() ? std::string(key) : path + "." + std::string(key);
}

double quantity(const YAML::Node& node, const std::string& key, Dim dim) {
  if (!node.IsScalar()) throw ConfigError(key, "expected a number");
  const std::string& text = node.Scalar();
  const char* begin = text.c_str();
  char* end = nullptr;
  const double value = std::strtod(begin, &end);
  if (end == begin) throw ConfigError(key, "expected a number, got '" + text + "'");
  std::string_view rest(end);
  while (!rest.empty() && rest.front() == ' ') rest.remove_prefix(1);
  while (!rest.empty() && rest.back() == ' ') rest.remove_suffix(1);
  if (rest.empty()) return value;
  for (const Unit& u : units_for(dim)) {
    if (rest == u.name) return value * u.scale;
  }
  throw ConfigError(key, "unsupported unit '" + std::string(rest) + "'");
}

Vec2 vec2(const YAML::Node& node, const std::string& key, Dim dim) {
  if (!node.IsSequence() || node.size() != 2) throw ConfigError(key, "expected a list of two values");
  return {quantity(node[0], key + "[0]", dim), quantity(node[1], key + "[1]", dim)};
}

template <class Enum>
Enum choice(const YAML::Node& node, const std::string& key, std::initializer_list<std::pair<std::string_view, Enum>> options) {
  if (!node.IsScalar()) throw ConfigError(key, "expected one of a fixed set of names");
  const std::string& s = node.Scalar();
  std::string allowed;
  for (const auto& [name, value] : options) {
    if (s == name) return value;
    allowed += (allowed.empty() ? "" : ", ") + std::string(name);
  }
  throw ConfigError(key, "unknown value '" + s + "' (expected " + allowed + ")");
}

bool boolean(const YAML::Node& node, const std::string& key) {
  try {
    return node.as<bool>();
  } catch (const YAML::Exception&) {
    throw ConfigError(key, "expected true or false");
  }
}

// A mapping whose keys must all be consumed.
class Section {
 public:
  Section(const YAML::Node& node, std::string path) : node_(node), path_(std::move(path)) {
    if (!node_.IsMap()) throw ConfigError(path_, "expected a mapping");
  }

  bool has(std::string_view key) const { return static_cast<bool>(node_[std::string(key)]); }

  YAML::Node take(std::string_view key) {
    used_.insert(std::string(key));
    return node_[std::string(key)];
  }

  YAML::Node require(std::string_view key) {
    YAML::Node n = take(key);
    if (!n) throw ConfigError(key_of(key), "required key is missing");
    return n;
  }

  std::string key_of(std::string_view key) const { return join(path_, key); }

  double number(std::string_view key, Dim dim, double fallback) {
    YAML::Node n = take(key);
    return n ? quantity(n, key_of(key), dim) : fallback;
  }
  Vec2 pair(std::string_view key, Dim dim, const Vec2& fallback) {
    YAML::Node n = take(key);
    return n ? vec2(n, key_of(key), dim) : fallback;
  }

  void finish() const {
    for (const auto& kv : node_) {
      const std::string k = kv.first.as<std::string>();
      if (!used_.contains(k)) throw ConfigError(key_of(k), "unknown key");
    }
  }

 private:
  YAML::Node node_;
  std::string path_;
  std::set<std::string> used_;
};

RobotParams parse_robot(const YAML::Node& node, const std::string& path) {
  Section s(node, path);
  RobotParams p;
  p.l1 = quantity(s.require("l1"), s.key_of("l1"), Dim::length);
  p.l2 = quantity(s.require("l2"), s.key_of("l2"), Dim::length);
  p.m1 = quantity(s.require("m1"), s.key_of("m1"), Dim::mass);
  p.m2 = quantity(s.require("m2"), s.key_of("m2"), Dim::mass);
  p.g = s.number("g", Dim::linear_accel, 9.81);
  s.finish();
  return p;
}

ControllerConfig parse_controller(const YAML::Node& node) {
  Section s(node, "controller");
  ControllerConfig c;
  const YAML::Node type = s.require("type");
  if (!type.IsScalar()) throw ConfigError("controller.type", "expected smc, nsmc or ncsmc");
  try {
    c.kind = parse_controller_kind(type.Scalar());
  } catch (const ConfigError& e) {
    throw ConfigError("controller.type", e.what());
  }
  if (YAML::Node n = s.take("reaching_on")) {
    c.reaching_on = choice<ReachingSignal>(n, s.key_of("reaching_on"),
                                           {{"error", ReachingSignal::error}, {"surface", ReachingSignal::surface}});
  }
  if (YAML::Node n = s.take("gains")) {
    Section g(n, "controller.gains");
    c.gains.k1 = g.pair("k1", Dim::none, c.gains.k1);
    c.gains.k2 = g.pair("k2", Dim::none, c.gains.k2);
    c.gains.kr = g.pair("kr", Dim::none, c.gains.kr);
    c.gains.mu1 = g.pair("mu1", Dim::none, c.gains.mu1);
    c.gains.mu2 = g.pair("mu2", Dim::none, c.gains.mu2);
    c.gains.alpha = g.number("alpha", Dim::none, c.gains.alpha);
    g.finish();
  }
  c.lambda = s.pair("lambda", Dim::none, c.lambda);
  c.eta = s.pair("eta", Dim::none, c.eta);
  c.torque_limit = s.number("torque_limit", Dim::torque, c.torque_limit);
  s.finish();
  return c;
}

TrajectorySpec parse_trajectory(const YAML::Node& node) {
  Section s(node, "trajectory");
  TrajectorySpec t;
  t.kind = choice<TrajectoryKind>(s.require("kind"), "trajectory.kind",
                                  {{"joint-sinusoid", TrajectoryKind::joint_sinusoid},
                                   {"cartesian-path", TrajectoryKind::cartesian_path}});
  if (t.kind == TrajectoryKind::joint_sinusoid) {
    t.amplitude = s.pair("amplitude", Dim::angle, t.amplitude);
    t.frequency = s.pair("frequency", Dim::rate, t.frequency);
    t.phase = s.pair("phase", Dim::angle, t.phase);
    t.offset = s.pair("offset", Dim::angle, t.offset);
  } else {
    const YAML::Node wp = s.require("waypoints");
    if (!wp.IsSequence()) throw ConfigError("trajectory.waypoints", "expected a list of [x, y] points");
    for (std::size_t i = 0; i < wp.size(); ++i) {
      t.waypoints.push_back(vec2(wp[i], "trajectory.waypoints[" + std::to_string(i) + "]", Dim::length));
    }
    t.segment_time = s.number("segment_time", Dim::time, t.segment_time);
    if (YAML::Node n = s.take("elbow")) {
      t.elbow = choice<ElbowBranch>(n, "trajectory.elbow", {{"up", ElbowBranch::up}, {"down", ElbowBranch::down}});
    }
    if (YAML::Node n = s.take("loop")) t.loop = boolean(n, "trajectory.loop");
  }
  s.finish();
  return t;
}

Disturbance parse_disturbance(const YAML::Node& node) {
  Section s(node, "disturbance");
  Disturbance d;
  d.kind = choice<DisturbanceKind>(s.require("kind"), "disturbance.kind",
                                   {{"none", DisturbanceKind::none},
                                    {"constant", DisturbanceKind::constant},
                                    {"sinusoid", DisturbanceKind::sinusoid},
                                    {"custom-table", DisturbanceKind::custom_table}});
  switch (d.kind) {
    case DisturbanceKind::none:
      break;
    case DisturbanceKind::constant:
      d.amplitude = vec2(s.require("amplitude"), "disturbance.amplitude", Dim::joint_accel);
      break;
    case DisturbanceKind::sinusoid:
      d.amplitude = vec2(s.require("amplitude"), "disturbance.amplitude", Dim::joint_accel);
      d.frequency = quantity(s.require("frequency"), "disturbance.frequency", Dim::rate);
      d.phase = s.number("phase", Dim::angle, 0.0);
      break;
    case DisturbanceKind::custom_table: {
      const YAML::Node tab = s.require("table");
      if (!tab.IsSequence()) throw ConfigError("disturbance.table", "expected a list of [t, d1, d2] rows");
      for (std::size_t i = 0; i < tab.size(); ++i) {
        const std::string key = "disturbance.table[" + std::to_string(i) + "]";
        const YAML::Node row = tab[i];
        if (!row.IsSequence() || row.size() != 3) throw ConfigError(key, "expected [t, d1, d2]");
        d.table.push_back({quantity(row[0], key, Dim::time),
                           {quantity(row[1], key, Dim::joint_accel), quantity(row[2], key, Dim::joint_accel)}});
      }
      break;
    }
  }
  s.finish();
  return d;
}

SensingFilter parse_filter(const YAML::Node& node) {
  Section s(node, "filter");
  SensingFilter f;
  f.params.zeta = s.number("zeta", Dim::none, f.params.zeta);
  f.params.omega0 = s.number("omega0", Dim::rate, f.params.omega0);
  if (YAML::Node n = s.take("target")) {
    f.target = choice<FilterTarget>(n, "filter.target",
                                    {{"velocity", FilterTarget::velocity},
                                     {"position", FilterTarget::position},
                                     {"both", FilterTarget::both}});
  }
  s.finish();
  return f;
}

void parse_integrator(const YAML::Node& node, Scenario& sc) {
  Section s(node, "integrator");
  if (YAML::Node n = s.take("method")) {
    sc.integrator.method = choice<IntegrationMethod>(n, "integrator.method",
                                                     {{"euler", IntegrationMethod::euler},
                                                      {"rk4", IntegrationMethod::rk4}});
  }
  sc.integrator.dt = quantity(s.require("dt"), "integrator.dt", Dim::time);
  if (YAML::Node n = s.take("plant_substeps")) {
    try {
      sc.plant_substeps = n.as<int>();
    } catch (const YAML::Exception&) {
      throw ConfigError("integrator.plant_substeps", "expected an integer");
    }
  }
  s.finish();
}

JointState parse_initial_state(const YAML::Node& node) {
  Section s(node, "initial_state");
  JointState js;
  js.q = vec2(s.require("q"), "initial_state.q", Dim::angle);
  js.qd = s.pair("qd", Dim::rate, Vec2::Zero());
  s.finish();
  return js;
}

MetricsConfig parse_metrics(const YAML::Node& node) {
  Section s(node, "metrics");
  MetricsConfig m;
  if (YAML::Node n = s.take("window")) {
    const Vec2 w = vec2(n, "metrics.window", Dim::time);
    m.window = Window{w[0], w[1]};
  }
  m.transient_cutoff = s.number("transient_cutoff", Dim::time, m.transient_cutoff);
  m.lyapunov_tol = s.number("lyapunov_tol", Dim::none, m.lyapunov_tol);
  m.settling_band = s.number("settling_band", Dim::angle, m.settling_band);
  s.finish();
  return m;
}

Scenario parse_root(const YAML::Node& root, std::string_view default_name) {
  Section s(root, "");
  Scenario sc;
  if (YAML::Node n = s.take("name")) {
    if (!n.IsScalar() || n.Scalar().empty()) throw ConfigError("name", "expected a non-empty string");
    sc.name = n.Scalar();
  } else {
    sc.name = std::string(default_name);
  }
  if (YAML::Node n = s.take("seed")) {
    try {
      sc.seed = n.as<std::uint64_t>();
    } catch (const YAML::Exception&) {
      throw ConfigError("seed", "expected a non-negative integer");
    }
  }
  sc.duration = quantity(s.require("duration"), "duration", Dim::time);
  sc.robot = parse_robot(s.require("robot"), "robot");
  if (YAML::Node n = s.take("plant_override")) sc.plant_override = parse_robot(n, "plant_override");
  sc.controller = parse_controller(s.require("controller"));
  sc.trajectory = parse_trajectory(s.require("trajectory"));
  if (YAML::Node n = s.take("disturbance")) sc.disturbance = parse_disturbance(n);
  if (YAML::Node n = s.take("filter")) sc.filter = parse_filter(n);
  parse_integrator(s.require("integrator"), sc);
  if (YAML::Node n = s.take("initial_state")) sc.initial_state = parse_initial_state(n);
  if (YAML::Node n = s.take("metrics")) sc.metrics = parse_metrics(n);
  s.finish();
  return sc;
}

// --- describe ---------------------------------------------------------------

// Shortest text that reads back to the same double.
std::string num(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void emit_pair(YAML::Emitter& out, const char* key, const Vec2& v) {
  out << YAML::Key << key << YAML::Value << YAML::Flow << YAML::BeginSeq << num(v[0]) << num(v[1]) << YAML::EndSeq;
}

void emit_robot(YAML::Emitter& out, const char* key, const RobotParams& p) {
  out << YAML::Key << key << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "l1" << YAML::Value << num(p.l1);
  out << YAML::Key << "l2" << YAML::Value << num(p.l2);
  out << YAML::Key << "m1" << YAML::Value << num(p.m1);
  out << YAML::Key << "m2" << YAML::Value << num(p.m2);
  out << YAML::Key << "g" << YAML::Value << num(p.g);
  out << YAML::EndMap;
}

const char* name_of(TrajectoryKind k) { return k == TrajectoryKind::joint_sinusoid ? "joint-sinusoid" : "cartesian-path"; }

const char* name_of(DisturbanceKind k) {
  switch (k) {
    case DisturbanceKind::none: return "none";
    case DisturbanceKind::constant: return "constant";
    case DisturbanceKind::sinusoid: return "sinusoid";
    case DisturbanceKind::custom_table: return "custom-table";
  }
  return "none";
}

const char* name_of(FilterTarget t) {
  switch (t) {
    case FilterTarget::velocity: return "velocity";
    case FilterTarget::position: return "position";
    case FilterTarget::both: return "both";
  }
  return "velocity";
}

}  // namespace

Scenario parse_scenario(std::string_view yaml_text, std::string_view default_name) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(yaml_text));
  } catch (const YAML::Exception& e) {
    throw ConfigError("", std::string("malformed YAML: ") + e.what());
  }
  if (!root || root.IsNull()) throw ConfigError("", "scenario file is empty");
  return parse_root(root, default_name);
}

Scenario parse_scenario_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot read scenario file '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str(), path.stem().string());
}

Scenario load_scenario_file(const std::filesystem::path& path) {
  Scenario sc = parse_scenario_file(path);
  sc.validate();
  return sc;
}

std::string describe_scenario(const Scenario& sc) {
  YAML::Emitter out;
  out << YAML::BeginMap;
  out << YAML::Key << "name" << YAML::Value << sc.name;
  out << YAML::Key << "seed" << YAML::Value << sc.seed;
  out << YAML::Key << "duration" << YAML::Value << num(sc.duration);
  emit_robot(out, "robot", sc.robot);
  if (sc.plant_override) emit_robot(out, "plant_override", *sc.plant_override);

  const ControllerConfig& c = sc.controller;
  out << YAML::Key << "controller" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "type" << YAML::Value << std::string(to_string(c.kind));
  out << YAML::Key << "reaching_on" << YAML::Value << (c.reaching_on == ReachingSignal::error ? "error" : "surface");
  out << YAML::Key << "gains" << YAML::Value << YAML::BeginMap;
  emit_pair(out, "k1", c.gains.k1);
  emit_pair(out, "k2", c.gains.k2);
  emit_pair(out, "kr", c.gains.kr);
  emit_pair(out, "mu1", c.gains.mu1);
  emit_pair(out, "mu2", c.gains.mu2);
  out << YAML::Key << "alpha" << YAML::Value << num(c.gains.alpha);
  out << YAML::EndMap;
  emit_pair(out, "lambda", c.lambda);
  emit_pair(out, "eta", c.eta);
  out << YAML::Key << "torque_limit" << YAML::Value << num(c.torque_limit);
  out << YAML::EndMap;

  const TrajectorySpec& t = sc.trajectory;
  out << YAML::Key << "trajectory" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "kind" << YAML::Value << name_of(t.kind);
  if (t.kind == TrajectoryKind::joint_sinusoid) {
    emit_pair(out, "amplitude", t.amplitude);
    emit_pair(out, "frequency", t.frequency);
    emit_pair(out, "phase", t.phase);
    emit_pair(out, "offset", t.offset);
  } else {
    out << YAML::Key << "waypoints" << YAML::Value << YAML::BeginSeq;
    for (const Vec2& w : t.waypoints) out << YAML::Flow << YAML::BeginSeq << num(w[0]) << num(w[1]) << YAML::EndSeq;
    out << YAML::EndSeq;
    out << YAML::Key << "segment_time" << YAML::Value << num(t.segment_time);
    out << YAML::Key << "elbow" << YAML::Value << (t.elbow == ElbowBranch::up ? "up" : "down");
    out << YAML::Key << "loop" << YAML::Value << t.loop;
  }
  out << YAML::EndMap;

  const Disturbance& d = sc.disturbance;
  out << YAML::Key << "disturbance" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "kind" << YAML::Value << name_of(d.kind);
  if (d.kind == DisturbanceKind::constant || d.kind == DisturbanceKind::sinusoid) emit_pair(out, "amplitude", d.amplitude);
  if (d.kind == DisturbanceKind::sinusoid) {
    out << YAML::Key << "frequency" << YAML::Value << num(d.frequency);
    out << YAML::Key << "phase" << YAML::Value << num(d.phase);
  }
  if (d.kind == DisturbanceKind::custom_table) {
    out << YAML::Key << "table" << YAML::Value << YAML::BeginSeq;
    for (const auto& row : d.table) {
      out << YAML::Flow << YAML::BeginSeq << num(row.t) << num(row.value[0]) << num(row.value[1]) << YAML::EndSeq;
    }
    out << YAML::EndSeq;
  }
  out << YAML::EndMap;

  if (sc.filter) {
    out << YAML::Key << "filter" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "zeta" << YAML::Value << num(sc.filter->params.zeta);
    out << YAML::Key << "omega0" << YAML::Value << num(sc.filter->params.omega0);
    out << YAML::Key << "target" << YAML::Value << name_of(sc.filter->target);
    out << YAML::EndMap;
  }

  out << YAML::Key << "integrator" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "method" << YAML::Value << (sc.integrator.method == IntegrationMethod::rk4 ? "rk4" : "euler");
  out << YAML::Key << "dt" << YAML::Value << num(sc.integrator.dt);
  out << YAML::Key << "plant_substeps" << YAML::Value << sc.plant_substeps;
  out << YAML::EndMap;

  if (sc.initial_state) {
    out << YAML::Key << "initial_state" << YAML::Value << YAML::BeginMap;
    emit_pair(out, "q", sc.initial_state->q);
    emit_pair(out, "qd", sc.initial_state->qd);
    out << YAML::EndMap;
  }

  const MetricsConfig& m = sc.metrics;
  out << YAML::Key << "metrics" << YAML::Value << YAML::BeginMap;
  if (m.window) emit_pair(out, "window", Vec2{m.window->begin, m.window->end});
  out << YAML::Key << "transient_cutoff" << YAML::Value << num(m.transient_cutoff);
  out << YAML::Key << "lyapunov_tol" << YAML::Value << num(m.lyapunov_tol);
  out << YAML::Key << "settling_band" << YAML::Value << num(m.settling_band);
  out << YAML::EndMap;

  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

}  // namespace smcsim
