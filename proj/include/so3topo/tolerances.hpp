#pragma once

#include <numbers>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace so3 {

/// Every numerical threshold used by the library, in one place.
///
/// Angles are in radians; rotation distances are geodesic angles on SO(3)
/// and chords are Euclidean distances between unit quaternions in R^4.
struct Tolerances {
  double unit_norm = 1e-12;          // quaternion / axis renormalization check
  double orthogonality = 1e-10;      // |M^T M - I|_max and |det M - 1|
  double axis_norm = 1e-9;           // accepted |axis| - 1 on input
  double canonical_tie = 1e-12;      // |w| below this counts as w = 0
  double loop_closure = 1e-9;        // first/last sample vs basepoint
  double south_pole_margin = 1e-9;   // slide needs Z.e_z > -1 + margin
  double chart_singular_alpha = 1e-6;  // chart_forward rejects alpha > pi - this
  double boundary_epsilon = 1e-3;    // base offset for the boundary limit
  double boundary_stability = 1e-8;  // extrapolated limits must agree to this
  double boundary_match = 1e-7;      // boundary points identified below this
  double lift_max_step = 1.0;        // lifting needs every step below this
  double class_chord = 1e-6;         // lifted endpoint vs +-initial
  double parity_max_step = 0.2;      // crossing parity needs steps below this
  double jump_threshold = std::numbers::pi / 2;  // ball chord marking a boundary jump
  double random_loop_step = 0.05;    // refinement of generated loops
  double contract_step = 0.05;       // input refinement before contraction
  double grid_step = 0.1;            // max step along rows and columns of a homotopy grid
  double pole_min_distance = 0.3;    // projection pole clearance from the lifted loop
  double pole_attempts = 1000;       // candidate poles drawn per contraction
  double grid_fidelity = 1e-6;       // row 0 vs input loop
  double grid_pin = 1e-9;            // pinned columns and final row vs basepoint
  double belt_step = 0.1;            // ribbon refinement
  double belt_closed = 1e-6;         // object counts as back at the identity

  static const Tolerances& defaults() {
    static const Tolerances instance{};
    return instance;
  }

  /// Overrides one entry by name. Returns false for an unknown name or a
  /// non-positive value.
  bool set(std::string_view name, double value);

  std::vector<std::pair<std::string, double>> entries() const;
};

}  // namespace so3
