#pragma once

// Lifting rotation paths to S^3, the Z/2 homotopy class of a loop, and
// explicit null-homotopies of trivial loops.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "so3topo/paths.hpp"

namespace so3 {

/// A path on S^3 whose projection is a given rotation path, with each sign
/// chosen so consecutive samples are as close as possible.
class LiftedPath {
 public:
  LiftedPath(std::vector<UnitQuaterniond> samples, RotationPath source)
      : samples_(std::move(samples)), source_(std::move(source)) {}

  const std::vector<UnitQuaterniond>& samples() const { return samples_; }
  const RotationPath& source() const { return source_; }
  const UnitQuaterniond& front() const { return samples_.front(); }
  const UnitQuaterniond& back() const { return samples_.back(); }

 private:
  std::vector<UnitQuaterniond> samples_;
  RotationPath source_;
};

/// Unique continuous lift starting at `initial`.
///
/// Throws RefinementRequired if any step reaches tol.lift_max_step (the two
/// sign candidates could then be confused) and InvalidInput if `initial` does
/// not project to the first rotation of the path.
LiftedPath lift(const RotationPath& path, const UnitQuaterniond& initial,
                const Tolerances& tol = Tolerances::defaults());

/// +1 when the lift from the canonical basepoint quaternion closes up, -1 when
/// it ends at the antipode. Throws NumericalDrift if it does neither within
/// tol.class_chord.
HomotopyClass classify(const Loop& loop, const Tolerances& tol = Tolerances::defaults());

/// Rotations sampled on a (S+1) x (T+1) grid, row-major. Row 0 is the loop,
/// row S is constant at the basepoint, columns 0 and T stay at the basepoint.
class HomotopyGrid {
 public:
  HomotopyGrid(std::size_t rows, std::size_t cols, std::vector<UnitQuaterniond> nodes,
               RotationMatrixd basepoint, std::string meta = {});

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const UnitQuaterniond& at(std::size_t s, std::size_t t) const { return nodes_[s * cols_ + t]; }
  const std::vector<UnitQuaterniond>& nodes() const { return nodes_; }
  const RotationMatrixd& basepoint() const { return basepoint_; }
  const std::string& meta() const { return meta_; }

  RotationPath row(std::size_t s) const;
  RotationPath column(std::size_t t) const;

  /// Copy with row s replaced; the replacement must have cols() samples.
  HomotopyGrid with_row(std::size_t s, const std::vector<UnitQuaterniond>& row) const;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<UnitQuaterniond> nodes_;
  RotationMatrixd basepoint_;
  std::string meta_;
};

/// Null-homotopy of a trivial loop.
///
/// The loop is refined to tol.contract_step and lifted to a closed loop on
/// S^3. A pole at least tol.pole_min_distance from the lifted loop is drawn
/// from `rng` (the candidate furthest from the loop among tol.pole_attempts
/// draws is used), the loop is projected stereographically from it, pulled
/// straight to the image of its start, and mapped back. Rows and columns are
/// subdivided until every grid step is at most tol.grid_step.
///
/// Throws NotNullHomotopic for a class -1 loop and PoleSearchFailed when no
/// candidate pole is far enough from the loop.
HomotopyGrid contract(const Loop& loop, std::mt19937_64& rng,
                      const Tolerances& tol = Tolerances::defaults());

HomotopyGrid contract(const Loop& loop, std::uint64_t seed = 0,
                      const Tolerances& tol = Tolerances::defaults());

struct HomotopyReport {
  bool passed = false;
  double max_row_step = 0.0;
  double max_column_step = 0.0;
  double row0_deviation = 0.0;    // worst distance from row 0 to the loop
  double final_row_deviation = 0.0;
  double pinned_deviation = 0.0;  // worst distance of columns 0 and T from the basepoint
  std::string worst_step;         // location of the largest grid step
  std::vector<std::string> failures;
};

/// Checks that `grid` is a valid based null-homotopy of `loop`. Row 0 is
/// compared with the loop up to refinement: it must pass through every loop
/// sample in order and otherwise stay on the geodesic segments between them.
HomotopyReport verify_homotopy(const HomotopyGrid& grid, const Loop& loop,
                               const Tolerances& tol = Tolerances::defaults());

/// Angle on S^3 from p to the great-circle arc a -> b (arc length <= pi).
double arc_distance(const Vec4& p, const Vec4& a, const Vec4& b);

}  // namespace so3
