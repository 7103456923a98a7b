#include "so3topo/belt.hpp"

#include <cmath>
#include <sstream>

namespace so3 {

BeltState new_belt(std::size_t n) {
  if (n < 2) throw InvalidInput("a belt needs at least two samples");
  return BeltState{RotationPath(std::vector<UnitQuaterniond>(n, UnitQuaterniond::identity()),
                                "belt"),
                   {}};
}

BeltState rotate_object(const BeltState& belt, const Vec3& axis, double angle,
                        const Tolerances& tol) {
  require_unit_axis(axis, tol);
  const UnitQuaterniond start = belt.object();
  // Sample the sweep densely enough that refinement never has to guess the
  // direction of travel between samples.
  const auto steps =
      static_cast<std::size_t>(std::ceil(std::abs(angle) / (0.5 * tol.belt_step))) + 1;
  std::vector<UnitQuaterniond> samples = belt.ribbon.samples();
  samples.reserve(samples.size() + steps);
  for (std::size_t i = 1; i <= steps; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(steps);
    samples.push_back(quat_from_axis_angle(axis, t * angle, tol) * start);
  }
  std::ostringstream entry;
  entry << "rotate axis=(" << axis.x() << "," << axis.y() << "," << axis.z()
        << ") angle=" << angle;
  BeltState out{refine(RotationPath(std::move(samples), belt.ribbon.meta()), tol.belt_step),
                belt.history};
  out.history.push_back(entry.str());
  return out;
}

Loop ribbon_loop(const BeltState& belt, bool* closed_by_return_arc, const Tolerances& tol) {
  const RotationMatrixd identity = RotationMatrixd::identity();
  const double off = rotation_distance(quat_to_matrix(belt.object()), identity);
  bool closed = false;
  RotationPath path = belt.ribbon;
  if (off > tol.loop_closure) {
    std::vector<UnitQuaterniond> samples = belt.ribbon.samples();
    samples.push_back(UnitQuaterniond::identity());
    path = refine(RotationPath(std::move(samples), belt.ribbon.meta()), tol.belt_step);
    closed = off > tol.belt_closed;
  }
  if (closed_by_return_arc != nullptr) *closed_by_return_arc = closed;
  return Loop(std::move(path), identity, tol);
}

TwistAssessment assess_twist(const BeltState& belt, const Tolerances& tol) {
  TwistAssessment out;
  const Loop loop = ribbon_loop(belt, &out.closed_by_return_arc, tol);
  out.cls = classify(loop, tol);
  out.untwistable = out.cls.is_trivial();
  if (out.closed_by_return_arc) {
    out.note = "object not at the identity; ribbon closed by the shortest return arc";
  }
  return out;
}

bool untwistable(const BeltState& belt, const Tolerances& tol) {
  return assess_twist(belt, tol).untwistable;
}

HomotopyGrid untwist(const BeltState& belt, std::uint64_t seed, const Tolerances& tol) {
  const Loop loop = ribbon_loop(belt, nullptr, tol);
  if (!classify(loop, tol).is_trivial()) {
    throw NotNullHomotopic("belt carries an odd number of full twists and cannot be untwisted");
  }
  return contract(loop, seed, tol);
}

}  // namespace so3
