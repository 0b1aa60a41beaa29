#include "smcsim/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "smcsim/errors.hpp"

namespace smcsim {

namespace {

// Grid times are k * dt, so window edges get a small slack.
constexpr double kTimeSlack = 1e-9;

struct Range {
  std::size_t first = 0;
  std::size_t last = 0;  // exclusive
  std::size_t size() const { return last - first; }
};

Range select(std::span<const double> t, Window w, std::size_t min_samples, const char* what) {
  if (!(w.begin < w.end)) {
    throw OutOfRangeError(std::string(what) + ": window start must precede its end");
  }
  const auto lo = std::lower_bound(t.begin(), t.end(), w.begin - kTimeSlack);
  const auto hi = std::upper_bound(t.begin(), t.end(), w.end + kTimeSlack);
  Range r{static_cast<std::size_t>(lo - t.begin()), static_cast<std::size_t>(hi - t.begin())};
  if (hi < lo || r.size() < min_samples) {
    throw OutOfRangeError(std::string(what) + ": window [" + std::to_string(w.begin) + ", " +
                          std::to_string(w.end) + "] holds fewer than " + std::to_string(min_samples) +
                          " samples");
  }
  return r;
}

}  // namespace

Vec2 chattering_index(Series torque, Window w) {
  const Range r = select(torque.t, w, 2, "chattering_index");
  Vec2 tv = Vec2::Zero();
  for (std::size_t k = r.first + 1; k < r.last; ++k) {
    tv += (torque.values[k] - torque.values[k - 1]).cwiseAbs();
  }
  return tv;
}

Vec2 peak_to_peak(Series torque, Window w) {
  const Range r = select(torque.t, w, 2, "peak_to_peak");
  Vec2 lo = torque.values[r.first];
  Vec2 hi = lo;
  for (std::size_t k = r.first + 1; k < r.last; ++k) {
    lo = lo.cwiseMin(torque.values[k]);
    hi = hi.cwiseMax(torque.values[k]);
  }
  return hi - lo;
}

Vec2 tracking_rmse(Series error, Window w) {
  const Range r = select(error.t, w, 1, "tracking_rmse");
  Vec2 acc = Vec2::Zero();
  for (std::size_t k = r.first; k < r.last; ++k) acc += error.values[k].cwiseAbs2();
  return (acc / static_cast<double>(r.size())).cwiseSqrt();
}

Vec2 max_abs(Series error, Window w) {
  const Range r = select(error.t, w, 1, "max_abs");
  Vec2 m = Vec2::Zero();
  for (std::size_t k = r.first; k < r.last; ++k) m = m.cwiseMax(error.values[k].cwiseAbs());
  return m;
}

std::vector<double> lyapunov_series(std::span<const Vec2> surface) {
  std::vector<double> out;
  out.reserve(surface.size());
  for (const Vec2& f : surface) out.push_back(0.5 * (f[0] * f[0] + f[1] * f[1]));
  return out;
}

double lyapunov_violation_rate(std::span<const double> t, std::span<const double> ly, double cutoff, double tol) {
  const auto start =
      static_cast<std::size_t>(std::lower_bound(t.begin(), t.end(), cutoff - kTimeSlack) - t.begin());
  if (t.size() < 2 || start + 1 >= t.size()) {
    throw OutOfRangeError("lyapunov_violation_rate: cutoff " + std::to_string(cutoff) + " s is beyond the run");
  }
  std::size_t violations = 0;
  for (std::size_t k = start; k + 1 < t.size(); ++k) {
    if (ly[k + 1] > ly[k] + tol) ++violations;
  }
  return static_cast<double>(violations) / static_cast<double>(t.size() - 1 - start);
}

Vec2 settling_time(Series error, double band) {
  Vec2 out = Vec2::Zero();
  for (int j = 0; j < 2; ++j) {
    std::size_t k = error.values.size();
    while (k > 0 && std::abs(error.values[k - 1][j]) < band) --k;
    if (k == error.values.size()) {
      out[j] = std::numeric_limits<double>::infinity();
    } else {
      out[j] = k == 0 ? error.t.front() : error.t[k];
    }
  }
  return out;
}

void MetricsConfig::validate() const {
  if (window && !(window->begin < window->end)) throw ConfigError("window", "start must precede end");
  if (!std::isfinite(transient_cutoff) || transient_cutoff < 0.0) {
    throw ConfigError("transient_cutoff", "must be >= 0");
  }
  if (!std::isfinite(lyapunov_tol) || lyapunov_tol < 0.0) throw ConfigError("lyapunov_tol", "must be >= 0");
  if (!std::isfinite(settling_band) || settling_band <= 0.0) throw ConfigError("settling_band", "must be > 0");
}

Window default_window(double duration) { return {0.75 * duration, duration}; }

RunMetrics compute_metrics(std::span<const SimRecord> log, const MetricsConfig& cfg) {
  std::vector<double> t;
  std::vector<Vec2> e;
  std::vector<Vec2> tau;
  std::vector<double> ly;
  t.reserve(log.size());
  e.reserve(log.size());
  tau.reserve(log.size());
  ly.reserve(log.size());
  RunMetrics m;
  for (const SimRecord& r : log) {
    t.push_back(r.t);
    e.push_back(r.e);
    tau.push_back(r.tau);
    ly.push_back(r.ly);
    if (r.saturated()) ++m.saturated_steps;
  }
  if (t.empty()) throw OutOfRangeError("compute_metrics: empty log");

  m.window = cfg.window.value_or(default_window(t.back()));
  const Series errors{t, e};
  const Series torques{t, tau};
  m.rmse = tracking_rmse(errors, m.window);
  m.max_abs_error = max_abs(errors, m.window);
  m.chattering_index = chattering_index(torques, m.window);
  m.peak_to_peak = peak_to_peak(torques, m.window);
  m.lyapunov_violation_rate = lyapunov_violation_rate(t, ly, cfg.transient_cutoff, cfg.lyapunov_tol);
  m.settling_time = settling_time(errors, cfg.settling_band);
  return m;
}

}  // namespace smcsim
