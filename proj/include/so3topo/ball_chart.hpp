#pragma once

// The ball model of SO(3): a rotation by theta about n is the point theta * n
// of the closed ball of radius pi, with antipodal boundary points identified.

#include <cstddef>

#include "so3topo/paths.hpp"

namespace so3 {

class BallPoint {
 public:
  BallPoint() = default;
  /// Throws InvalidInput when |v| > pi + 1e-12.
  explicit BallPoint(const Vec3& v);

  const Vec3& vector() const { return v_; }
  double angle() const { return v_.norm(); }
  bool on_boundary(double tol = 1e-9) const;

 private:
  Vec3 v_ = Vec3::Zero();
};

/// theta * n for the canonical lift (w >= 0) of q.
BallPoint to_ball(const UnitQuaterniond& q, const Tolerances& tol = Tolerances::defaults());

/// Canonical quaternion of the rotation v. v and -v give the same quaternion
/// up to sign when |v| = pi.
UnitQuaterniond from_ball(const BallPoint& v, const Tolerances& tol = Tolerances::defaults());

struct ParityReport {
  HomotopyClass cls = HomotopyClass::trivial();
  std::size_t jumps = 0;
  double max_interior_chord = 0.0;  // largest chord not counted as a jump
  double min_jump_chord = 0.0;      // smallest chord counted as a jump (0 if none)
};

/// Classifies a loop by counting antipodal boundary jumps of its ball-model
/// image. Reads only the projected rotations, never the quaternion signs.
/// Throws RefinementRequired when a step reaches tol.parity_max_step.
ParityReport crossing_parity_report(const Loop& loop,
                                    const Tolerances& tol = Tolerances::defaults());

HomotopyClass crossing_parity(const Loop& loop, const Tolerances& tol = Tolerances::defaults());

}  // namespace so3
