#pragma once

#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "smcsim/record.hpp"
#include "smcsim/types.hpp"

namespace smcsim {

// Closed time interval [begin, end], s.
struct Window {
  double begin = 0.0;
  double end = 0.0;
};

// Parallel arrays of sample times and per-joint values.
struct Series {
  std::span<const double> t;
  std::span<const Vec2> values;
};

// Discrete total variation per joint over the samples inside `w`.
// Throws OutOfRangeError unless begin < end and >= 2 samples fall inside.
Vec2 chattering_index(Series torque, Window w);

// max - min per joint over the window (same preconditions).
Vec2 peak_to_peak(Series torque, Window w);

// Per-joint RMS; needs at least one sample in the window.
Vec2 tracking_rmse(Series error, Window w);

Vec2 max_abs(Series error, Window w);

// 0.5 |f|^2 per sample.
std::vector<double> lyapunov_series(std::span<const Vec2> surface);

// Fraction of consecutive pairs (k, k+1) with t_k >= cutoff where
// ly[k+1] > ly[k] + tol. Throws OutOfRangeError if no pair starts at or
// after the cutoff.
double lyapunov_violation_rate(std::span<const double> t, std::span<const double> ly, double cutoff, double tol);

// First time after which |e_i| < band for the rest of the series;
// +infinity when the last sample is still outside.
Vec2 settling_time(Series error, double band);

struct MetricsConfig {
  std::optional<Window> window;  // default: final 25% of the run
  double transient_cutoff = 0.5;
  double lyapunov_tol = 1e-6;
  double settling_band = 0.01;

  void validate() const;
};

struct RunMetrics {
  Window window;
  Vec2 rmse = Vec2::Zero();
  Vec2 max_abs_error = Vec2::Zero();
  Vec2 chattering_index = Vec2::Zero();
  Vec2 peak_to_peak = Vec2::Zero();
  double lyapunov_violation_rate = 0.0;
  Vec2 settling_time = Vec2::Zero();
  std::size_t saturated_steps = 0;
};

Window default_window(double duration);

RunMetrics compute_metrics(std::span<const SimRecord> log, const MetricsConfig& cfg);

}  // namespace smcsim
