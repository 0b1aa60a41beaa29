#pragma once

#include <Eigen/Dense>

namespace smcsim {

using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;
using Vec4 = Eigen::Matrix<double, 4, 1>;

// Positions and velocities of the two joints.
struct JointState {
  Vec2 q = Vec2::Zero();   // rad
  Vec2 qd = Vec2::Zero();  // rad/s

  bool finite() const { return q.allFinite() && qd.allFinite(); }

  Vec4 packed() const {
    Vec4 x;
    x << q, qd;
    return x;
  }
  static JointState unpack(const Vec4& x) { return {x.head<2>(), x.tail<2>()}; }
};

}  // namespace smcsim
