#pragma once

#include <string>
#include <vector>

#include "smcsim/errors.hpp"
#include "smcsim/types.hpp"

namespace smcsim {

enum class IntegrationMethod { euler, rk4 };

struct IntegratorConfig {
  IntegrationMethod method = IntegrationMethod::rk4;
  double dt = 0.00125;  // s

  static constexpr double kMaxDt = 0.01;

  // dt must lie in (0, kMaxDt].
  void validate() const;
};

// x with A x = b by Cramer's rule. Throws SingularMatrixError when
// |det A| <= 1e-12 * ||A||_inf.
Vec2 solve2x2(const Mat2& a, const Vec2& b);

namespace detail {

template <class Vec>
[[noreturn]] void throw_diverged(double t, const Vec& x, const char* where) {
  std::vector<double> copy(x.data(), x.data() + x.size());
  throw IntegrationDiverged(t, std::move(copy),
                            std::string("non-finite derivative in ") + where + " at t = " + std::to_string(t));
}

template <class Vec, class Fn>
Vec checked_eval(Fn& f, double t, const Vec& x, const char* where) {
  Vec k = f(t, x);
  if (!k.allFinite()) throw_diverged(t, x, where);
  return k;
}

}  // namespace detail

// One fixed step x(t) -> x(t + dt) of x' = f(t, x).
// `Vec` is any fixed-size Eigen column vector; f has signature Vec(double, const Vec&).
// Throws IntegrationDiverged (carrying t and x) on a non-finite derivative.
template <class Vec, class Fn>
Vec step(Fn&& f, const Vec& x, double t, const IntegratorConfig& cfg) {
  const double h = cfg.dt;
  if (cfg.method == IntegrationMethod::euler) {
    return x + h * detail::checked_eval<Vec>(f, t, x, "euler stage");
  }
  const Vec k1 = detail::checked_eval<Vec>(f, t, x, "rk4 stage 1");
  const Vec k2 = detail::checked_eval<Vec>(f, t + 0.5 * h, Vec(x + 0.5 * h * k1), "rk4 stage 2");
  const Vec k3 = detail::checked_eval<Vec>(f, t + 0.5 * h, Vec(x + 0.5 * h * k2), "rk4 stage 3");
  const Vec k4 = detail::checked_eval<Vec>(f, t + h, Vec(x + h * k3), "rk4 stage 4");
  return x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace smcsim
