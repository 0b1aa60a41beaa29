#include "smcsim/numerics.hpp"

#include <cmath>

namespace smcsim {

void IntegratorConfig::validate() const {
  if (!std::isfinite(dt) || dt <= 0.0) throw ConfigError("dt", "must be > 0");
  if (dt > kMaxDt) throw ConfigError("dt", "must be <= 0.01 s (got " + std::to_string(dt) + ")");
}

Vec2 solve2x2(const Mat2& a, const Vec2& b) {
  const double det = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
  const double norm = std::max(std::abs(a(0, 0)) + std::abs(a(0, 1)),
                               std::abs(a(1, 0)) + std::abs(a(1, 1)));
  if (!std::isfinite(det) || !(std::abs(det) > 1e-12 * norm)) {
    throw SingularMatrixError("2x2 solve: matrix is singular (det = " + std::to_string(det) + ")");
  }
  return {(b[0] * a(1, 1) - a(0, 1) * b[1]) / det, (a(0, 0) * b[1] - a(1, 0) * b[0]) / det};
}

}  // namespace smcsim
