#pragma once

#include <array>
#include <string_view>

#include "smcsim/types.hpp"

namespace smcsim {

// One row of a run log. Field order is the CSV column order.
struct SimRecord {
  double t = 0.0;
  Vec2 q = Vec2::Zero();
  Vec2 qd_meas = Vec2::Zero();  // velocity as seen by the controller
  Vec2 ref_q = Vec2::Zero();
  Vec2 ref_qd = Vec2::Zero();
  Vec2 ref_qdd = Vec2::Zero();
  Vec2 e = Vec2::Zero();
  Vec2 edot = Vec2::Zero();
  Vec2 f = Vec2::Zero();
  double ly = 0.0;
  Vec2 tau = Vec2::Zero();  // applied (post-saturation)
  Vec2 u_eq = Vec2::Zero();
  Vec2 u_r = Vec2::Zero();
  Vec2 u_n = Vec2::Zero();
  Vec2 d = Vec2::Zero();

  static constexpr std::size_t kColumns = 28;
  static constexpr std::array<std::string_view, kColumns> kColumnNames{
      "t",      "q1",     "q2",    "qd1",   "qd2",  "ref_q1", "ref_q2", "ref_qd1", "ref_qd2", "ref_qdd1",
      "ref_qdd2", "e1",   "e2",    "edot1", "edot2", "f1",    "f2",     "Ly",      "tau1",    "tau2",
      "ueq1",   "ueq2",   "ur1",   "ur2",   "un1",  "un2",    "d1",     "d2"};

  std::array<double, kColumns> to_row() const;
  static SimRecord from_row(const std::array<double, kColumns>& row);

  // Torque requested before the limiter.
  Vec2 commanded() const { return u_eq + u_r + u_n; }
  bool saturated() const { return tau != commanded(); }

  bool operator==(const SimRecord&) const = default;
};

}  // namespace smcsim
