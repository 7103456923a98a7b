#pragma once

// Dirac's belt trick. The belt is the path of frames from the wall (sample 0,
// always the identity) to the object (last sample); turning the object
// extends the path at the object end.

#include <string>
#include <vector>

#include "so3topo/homotopy.hpp"

namespace so3 {

struct BeltState {
  RotationPath ribbon;
  std::vector<std::string> history;

  const UnitQuaterniond& object() const { return ribbon.back(); }
};

/// A flat belt of n identity frames.
BeltState new_belt(std::size_t n = 2);

/// Turns the object by `angle` about the fixed spatial `axis`. The arc the
/// object sweeps is appended to the ribbon, which is then refined to
/// tol.belt_step.
BeltState rotate_object(const BeltState& belt, const Vec3& axis, double angle,
                        const Tolerances& tol = Tolerances::defaults());

struct TwistAssessment {
  HomotopyClass cls = HomotopyClass::trivial();
  bool untwistable = true;
  /// Set when the object was not back at the identity and the ribbon was
  /// closed by the shortest geodesic return arc before classifying.
  bool closed_by_return_arc = false;
  std::string note;
};

/// The ribbon as a loop at the identity, closed by the geodesic return arc
/// when the object is elsewhere.
Loop ribbon_loop(const BeltState& belt, bool* closed_by_return_arc = nullptr,
                 const Tolerances& tol = Tolerances::defaults());

TwistAssessment assess_twist(const BeltState& belt,
                             const Tolerances& tol = Tolerances::defaults());

/// True iff the ribbon can be straightened with both ends held fixed.
bool untwistable(const BeltState& belt, const Tolerances& tol = Tolerances::defaults());

/// The untwisting motion: successive belt configurations with the wall end
/// and the object end fixed. Throws NotNullHomotopic for a twisted belt.
HomotopyGrid untwist(const BeltState& belt, std::uint64_t seed = 0,
                     const Tolerances& tol = Tolerances::defaults());

}  // namespace so3
