#pragma once

// Sampled rotation paths and based loops. A path is a sequence of unit
// quaternions read through the projection to SO(3); the sign of each sample
// carries no meaning until the path is lifted.

#include <cstdint>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "so3topo/rotation.hpp"

namespace so3 {

class RotationPath {
 public:
  /// Throws InvalidInput for fewer than two samples.
  explicit RotationPath(std::vector<UnitQuaterniond> samples, std::string meta = {});

  const std::vector<UnitQuaterniond>& samples() const { return samples_; }
  std::size_t size() const { return samples_.size(); }
  const UnitQuaterniond& operator[](std::size_t i) const { return samples_[i]; }
  const UnitQuaterniond& front() const { return samples_.front(); }
  const UnitQuaterniond& back() const { return samples_.back(); }
  const std::string& meta() const { return meta_; }

  RotationMatrixd rotation(std::size_t i) const { return quat_to_matrix(samples_[i]); }

  /// Largest rotation_distance between consecutive samples.
  double max_step() const;

 private:
  std::vector<UnitQuaterniond> samples_;
  std::string meta_;
};

class Loop {
 public:
  /// Throws InvalidInput unless the first and last samples project to the
  /// basepoint within tol.loop_closure.
  Loop(RotationPath path, const RotationMatrixd& basepoint = RotationMatrixd::identity(),
       const Tolerances& tol = Tolerances::defaults());

  const RotationPath& path() const { return path_; }
  const RotationMatrixd& basepoint() const { return basepoint_; }
  std::size_t size() const { return path_.size(); }

 private:
  RotationPath path_;
  RotationMatrixd basepoint_;
};

/// Element of pi_1(SO(3)) = {+1, -1}.
class HomotopyClass {
 public:
  static HomotopyClass trivial() { return HomotopyClass(+1); }
  static HomotopyClass nontrivial() { return HomotopyClass(-1); }
  /// Throws InvalidInput for anything but +1 and -1.
  static HomotopyClass from_sign(int sign);

  int sign() const { return sign_; }
  bool is_trivial() const { return sign_ == +1; }

  friend HomotopyClass operator*(HomotopyClass a, HomotopyClass b) {
    return HomotopyClass(a.sign_ * b.sign_);
  }
  friend bool operator==(HomotopyClass a, HomotopyClass b) = default;

 private:
  explicit HomotopyClass(int sign) : sign_(sign) {}
  int sign_;
};

std::string to_string(HomotopyClass c);

/// Samples quat_from_axis_angle(axis, t * total_angle) at t = i / (n - 1).
RotationPath axis_rotation_path(const Vec3& axis, double total_angle, std::size_t n,
                                const Tolerances& tol = Tolerances::defaults());

/// As axis_rotation_path, returning a Loop at the identity when total_angle
/// is a multiple of 2pi (within 1e-9) and the open path otherwise.
std::variant<Loop, RotationPath> axis_rotation_loop(const Vec3& axis, double total_angle,
                                                    std::size_t n,
                                                    const Tolerances& tol = Tolerances::defaults());

/// Loop sitting at the basepoint.
Loop constant_loop(const RotationMatrixd& basepoint = RotationMatrixd::identity(),
                   std::size_t n = 2);

/// a followed by b, junction sample dropped. Throws BasepointMismatch.
Loop concat(const Loop& a, const Loop& b, const Tolerances& tol = Tolerances::defaults());

RotationPath reverse(const RotationPath& p);
Loop reverse(const Loop& loop);

/// Inserts shorter-arc geodesic samples until every step is at most eps.
/// Endpoints and existing samples are kept bitwise; a path that already
/// satisfies the bound comes back unchanged.
RotationPath refine(const RotationPath& p, double eps);
Loop refine(const Loop& loop, double eps);

/// The loop through k uniformly random waypoints, starting and ending at
/// the identity, joined by geodesic segments and refined to
/// tol.random_loop_step. Deterministic in seed; k = 0 gives the constant loop.
Loop random_loop(std::uint64_t seed, std::size_t k,
                 const Tolerances& tol = Tolerances::defaults());

/// Uniformly distributed rotation (Haar measure) from a seeded engine.
template <typename Engine>
UnitQuaterniond random_quaternion(Engine& engine);

/// Applies g * q * g^-1 to every sample, and conjugates the basepoint.
Loop conjugate_loop(const Loop& loop, const UnitQuaterniond& g,
                    const Tolerances& tol = Tolerances::defaults());

template <typename Engine>
UnitQuaterniond random_quaternion(Engine& engine) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (;;) {
    const Vec4 v(gauss(engine), gauss(engine), gauss(engine), gauss(engine));
    if (v.norm() > 1e-6) return UnitQuaterniond(v);
  }
}

}  // namespace so3
