#include "smcsim/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "json.hpp"

namespace smcsim {

namespace {

using nlohmann::json;

json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json pair(const Vec2& v) { return json::array({number(v[0]), number(v[1])}); }

json metrics_object(const RunMetrics& m) {
  return json{
      {"window", json::array({m.window.begin, m.window.end})},
      {"rmse", pair(m.rmse)},
      {"max_abs_error", pair(m.max_abs_error)},
      {"chattering_index", pair(m.chattering_index)},
      {"peak_to_peak", pair(m.peak_to_peak)},
      {"lyapunov_violation_rate", number(m.lyapunov_violation_rate)},
      {"settling_time", pair(m.settling_time)},
      {"saturated_steps", m.saturated_steps},
  };
}

json scenario_header(const Scenario& sc) {
  return json{
      {"scenario", sc.name},
      {"seed", sc.seed},
      {"dt", sc.integrator.dt},
      {"duration", sc.duration},
      {"transient_cutoff", sc.metrics.transient_cutoff},
      {"lyapunov_tol", sc.metrics.lyapunov_tol},
      {"settling_band", sc.metrics.settling_band},
  };
}

void append_double(std::string& out, double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  out.append(buf, res.ptr);
}

}  // namespace

std::array<double, SimRecord::kColumns> SimRecord::to_row() const {
  return {t,        q[0],     q[1],    qd_meas[0], qd_meas[1], ref_q[0], ref_q[1], ref_qd[0], ref_qd[1], ref_qdd[0],
          ref_qdd[1], e[0],   e[1],    edot[0],    edot[1],    f[0],     f[1],     ly,        tau[0],    tau[1],
          u_eq[0],  u_eq[1],  u_r[0],  u_r[1],     u_n[0],     u_n[1],   d[0],     d[1]};
}

SimRecord SimRecord::from_row(const std::array<double, kColumns>& r) {
  SimRecord s;
  s.t = r[0];
  s.q = {r[1], r[2]};
  s.qd_meas = {r[3], r[4]};
  s.ref_q = {r[5], r[6]};
  s.ref_qd = {r[7], r[8]};
  s.ref_qdd = {r[9], r[10]};
  s.e = {r[11], r[12]};
  s.edot = {r[13], r[14]};
  s.f = {r[15], r[16]};
  s.ly = r[17];
  s.tau = {r[18], r[19]};
  s.u_eq = {r[20], r[21]};
  s.u_r = {r[22], r[23]};
  s.u_n = {r[24], r[25]};
  s.d = {r[26], r[27]};
  return s;
}

void write_csv(std::ostream& out, std::span<const SimRecord> log) {
  std::string line;
  for (std::size_t i = 0; i < SimRecord::kColumns; ++i) {
    if (i) line += ',';
    line += SimRecord::kColumnNames[i];
  }
  line += '\n';
  out << line;
  for (const SimRecord& rec : log) {
    line.clear();
    const auto row = rec.to_row();
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) line += ',';
      append_double(line, row[i]);
    }
    line += '\n';
    out << line;
  }
}

void write_csv_file(const std::filesystem::path& path, std::span<const SimRecord> log) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  write_csv(out, log);
  if (!out) throw Error("failed writing '" + path.string() + "'");
}

std::vector<SimRecord> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw Error("csv: missing header");
  {
    std::string expected;
    for (std::size_t i = 0; i < SimRecord::kColumns; ++i) {
      if (i) expected += ',';
      expected += SimRecord::kColumnNames[i];
    }
    if (line != expected) throw Error("csv: unexpected header");
  }
  std::vector<SimRecord> out;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::array<double, SimRecord::kColumns> row{};
    const char* p = line.data();
    const char* end = line.data() + line.size();
    for (std::size_t i = 0; i < row.size(); ++i) {
      const auto res = std::from_chars(p, end, row[i]);
      if (res.ec != std::errc{}) throw Error("csv: bad number on line " + std::to_string(lineno));
      p = res.ptr;
      if (i + 1 < row.size()) {
        if (p == end || *p != ',') throw Error("csv: too few columns on line " + std::to_string(lineno));
        ++p;
      }
    }
    if (p != end) throw Error("csv: too many columns on line " + std::to_string(lineno));
    out.push_back(SimRecord::from_row(row));
  }
  return out;
}

std::vector<SimRecord> read_csv_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path.string() + "'");
  return read_csv(in);
}

std::string metrics_json(const Scenario& scenario, const RunResult& run) {
  json j = scenario_header(scenario);
  j["controller"] = run.label;
  j["records"] = run.log.size();
  j["metrics"] = metrics_object(run.metrics);
  return j.dump(2) + "\n";
}

std::string comparison_json(const Scenario& scenario, const Comparison& cmp) {
  json j = scenario_header(scenario);
  json runs = json::array();
  for (const RunResult& r : cmp.runs) {
    runs.push_back(json{{"controller", r.label}, {"records", r.log.size()}, {"metrics", metrics_object(r.metrics)}});
  }
  j["runs"] = runs;
  json ratios = json::object();
  for (const ChatteringRatio& r : cmp.ratios) ratios[r.numerator + "/" + r.denominator] = pair(r.ratio);
  j["chattering_ratios"] = ratios;
  return j.dump(2) + "\n";
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  out << text;
  if (!out) throw Error("failed writing '" + path.string() + "'");
}

}  // namespace smcsim
