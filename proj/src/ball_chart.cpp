#include "so3topo/ball_chart.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace so3 {

BallPoint::BallPoint(const Vec3& v) : v_(v) {
  if (!(v.norm() <= std::numbers::pi + 1e-12)) {
    std::ostringstream msg;
    msg << "ball point has length " << v.norm() << " > pi";
    throw InvalidInput(msg.str());
  }
}

bool BallPoint::on_boundary(double tol) const {
  return std::abs(v_.norm() - std::numbers::pi) <= tol;
}

BallPoint to_ball(const UnitQuaterniond& q, const Tolerances& tol) {
  const UnitQuaterniond c = canonical_lift(q, tol);
  const Vec3 u = c.vec();
  const double s = u.norm();
  // |w| keeps theta <= pi when the tie rule left w a hair below zero.
  const double theta = 2.0 * std::atan2(s, std::abs(c.w()));
  if (theta < 1e-12) return BallPoint();
  return BallPoint((theta / s) * u);
}

UnitQuaterniond from_ball(const BallPoint& v, const Tolerances& tol) {
  const double theta = v.angle();
  if (theta == 0.0) return UnitQuaterniond::identity();
  return canonical_lift(quat_from_axis_angle<double>(v.vector() / theta, theta, tol), tol);
}

ParityReport crossing_parity_report(const Loop& loop, const Tolerances& tol) {
  const auto& samples = loop.path().samples();
  ParityReport report;
  double min_jump = std::numeric_limits<double>::infinity();
  // Canonicalize through the matrix so the lift sign of the input is ignored.
  const BallPoint first = to_ball(matrix_to_quat(loop.path().rotation(0), tol), tol);
  BallPoint prev = first;
  for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
    const RotationMatrixd a = loop.path().rotation(i);
    const RotationMatrixd b = loop.path().rotation(i + 1);
    const double step = rotation_distance(a, b);
    if (!(step < tol.parity_max_step)) {
      std::ostringstream msg;
      msg << "crossing parity needs steps below " << tol.parity_max_step << " rad; step " << i
          << " is " << step;
      throw RefinementRequired(msg.str());
    }
    const BallPoint next = to_ball(matrix_to_quat(b, tol), tol);
    const double chord = (next.vector() - prev.vector()).norm();
    if (chord > tol.jump_threshold) {
      ++report.jumps;
      min_jump = std::min(min_jump, chord);
    } else {
      report.max_interior_chord = std::max(report.max_interior_chord, chord);
    }
    prev = next;
  }
  // The closing step from the last sample back to the first: near zero, or a
  // full antipodal jump when the basepoint sits on the boundary sphere.
  if ((first.vector() - prev.vector()).norm() > tol.jump_threshold) ++report.jumps;
  report.min_jump_chord = report.jumps == 0 ? 0.0 : min_jump;
  report.cls = report.jumps % 2 == 0 ? HomotopyClass::trivial() : HomotopyClass::nontrivial();
  return report;
}

HomotopyClass crossing_parity(const Loop& loop, const Tolerances& tol) {
  return crossing_parity_report(loop, tol).cls;
}

}  // namespace so3
