#include "so3topo/paths.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace so3 {

RotationPath::RotationPath(std::vector<UnitQuaterniond> samples, std::string meta)
    : samples_(std::move(samples)), meta_(std::move(meta)) {
  if (samples_.size() < 2) {
    throw InvalidInput("a rotation path needs at least two samples");
  }
}

double RotationPath::max_step() const {
  double worst = 0.0;
  for (std::size_t i = 0; i + 1 < samples_.size(); ++i) {
    worst = std::max(worst, rotation_distance(samples_[i], samples_[i + 1]));
  }
  return worst;
}

Loop::Loop(RotationPath path, const RotationMatrixd& basepoint, const Tolerances& tol)
    : path_(std::move(path)), basepoint_(basepoint) {
  const double head = rotation_distance(path_.rotation(0), basepoint_);
  const double tail = rotation_distance(path_.rotation(path_.size() - 1), basepoint_);
  if (head > tol.loop_closure || tail > tol.loop_closure) {
    std::ostringstream msg;
    msg << "path is not a loop at the basepoint: start off by " << head << " rad, end off by "
        << tail << " rad";
    throw InvalidInput(msg.str());
  }
}

HomotopyClass HomotopyClass::from_sign(int sign) {
  if (sign != 1 && sign != -1) throw InvalidInput("homotopy class sign must be +1 or -1");
  return HomotopyClass(sign);
}

std::string to_string(HomotopyClass c) { return c.is_trivial() ? "+1" : "-1"; }

RotationPath axis_rotation_path(const Vec3& axis, double total_angle, std::size_t n,
                                const Tolerances& tol) {
  if (n < 2) throw InvalidInput("axis rotation needs at least two samples");
  require_unit_axis(axis, tol);
  std::vector<UnitQuaterniond> samples;
  samples.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(n - 1);
    samples.push_back(quat_from_axis_angle(axis, t * total_angle, tol));
  }
  std::ostringstream meta;
  meta << "axis-rotation axis=(" << axis.x() << "," << axis.y() << "," << axis.z()
       << ") angle=" << total_angle;
  return RotationPath(std::move(samples), meta.str());
}

std::variant<Loop, RotationPath> axis_rotation_loop(const Vec3& axis, double total_angle,
                                                    std::size_t n, const Tolerances& tol) {
  RotationPath path = axis_rotation_path(axis, total_angle, n, tol);
  const double turns = total_angle / (2.0 * std::numbers::pi);
  if (std::abs(turns - std::round(turns)) * 2.0 * std::numbers::pi <= 1e-9) {
    return Loop(std::move(path), RotationMatrixd::identity(), tol);
  }
  return path;
}

Loop constant_loop(const RotationMatrixd& basepoint, std::size_t n) {
  std::vector<UnitQuaterniond> samples(std::max<std::size_t>(n, 2), matrix_to_quat(basepoint));
  return Loop(RotationPath(std::move(samples), "constant"), basepoint);
}

Loop concat(const Loop& a, const Loop& b, const Tolerances& tol) {
  if (rotation_distance(a.basepoint(), b.basepoint()) > tol.loop_closure) {
    throw BasepointMismatch("cannot concatenate loops with different basepoints");
  }
  std::vector<UnitQuaterniond> samples = a.path().samples();
  const auto& tail = b.path().samples();
  samples.insert(samples.end(), tail.begin() + 1, tail.end());
  return Loop(RotationPath(std::move(samples), "concat(" + a.path().meta() + ", " +
                                                   b.path().meta() + ")"),
              a.basepoint(), tol);
}

RotationPath reverse(const RotationPath& p) {
  std::vector<UnitQuaterniond> samples(p.samples().rbegin(), p.samples().rend());
  return RotationPath(std::move(samples), "reverse(" + p.meta() + ")");
}

Loop reverse(const Loop& loop) {
  return Loop(reverse(loop.path()), loop.basepoint());
}

RotationPath refine(const RotationPath& p, double eps) {
  if (!(eps > 0.0)) throw InvalidInput("refinement step must be positive");
  // Aim slightly below eps so the measured steps never round up past it.
  const double target = eps * (1.0 - 1e-9);
  const auto& in = p.samples();
  std::vector<UnitQuaterniond> out;
  out.reserve(in.size());
  out.push_back(in.front());
  for (std::size_t i = 0; i + 1 < in.size(); ++i) {
    const double d = rotation_distance(in[i], in[i + 1]);
    if (d > eps) {
      const auto pieces = static_cast<std::size_t>(std::ceil(d / target));
      for (std::size_t j = 1; j < pieces; ++j) {
        out.push_back(slerp_shortest(in[i], in[i + 1],
                                     static_cast<double>(j) / static_cast<double>(pieces)));
      }
    }
    out.push_back(in[i + 1]);
  }
  return RotationPath(std::move(out), p.meta());
}

Loop refine(const Loop& loop, double eps) {
  return Loop(refine(loop.path(), eps), loop.basepoint());
}

Loop random_loop(std::uint64_t seed, std::size_t k, const Tolerances& tol) {
  if (k == 0) return constant_loop();
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
  std::mt19937_64 engine(seq);
  std::vector<UnitQuaterniond> waypoints;
  waypoints.reserve(k + 2);
  waypoints.push_back(UnitQuaterniond::identity());
  for (std::size_t i = 0; i < k; ++i) waypoints.push_back(random_quaternion(engine));
  waypoints.push_back(UnitQuaterniond::identity());
  std::ostringstream meta;
  meta << "random seed=" << seed << " k=" << k;
  return Loop(refine(RotationPath(std::move(waypoints), meta.str()), tol.random_loop_step),
              RotationMatrixd::identity(), tol);
}

Loop conjugate_loop(const Loop& loop, const UnitQuaterniond& g, const Tolerances& tol) {
  const UnitQuaterniond g_inv = quat_conjugate(g);
  std::vector<UnitQuaterniond> samples;
  samples.reserve(loop.size());
  for (const auto& q : loop.path().samples()) samples.push_back(g * q * g_inv);
  const RotationMatrixd gm = quat_to_matrix(g);
  return Loop(RotationPath(std::move(samples), "conjugate(" + loop.path().meta() + ")"),
              gm * loop.basepoint() * gm.transpose(), tol);
}

}  // namespace so3
