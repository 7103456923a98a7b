#include "so3topo/homotopy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace so3 {
namespace {

double sphere_angle(const Vec4& a, const Vec4& b) {
  return 2.0 * std::asin(std::min((a - b).norm() / 2.0, 1.0));
}

/// Stereographic projection of S^3 from a pole onto the orthogonal 3-space.
class Stereographic {
 public:
  explicit Stereographic(const Vec4& pole) : pole_(pole) {
    // The last three Householder columns span the tangent space at the pole.
    const Eigen::HouseholderQR<Vec4> qr(pole);
    const Eigen::Matrix4d q = qr.householderQ();
    frame_ = q.rightCols<3>();
  }

  Vec3 forward(const Vec4& x) const {
    return frame_.transpose() * x / (1.0 - x.dot(pole_));
  }

  Vec4 inverse(const Vec3& y) const {
    const double r2 = y.squaredNorm();
    return ((r2 - 1.0) / (r2 + 1.0)) * pole_ + (2.0 / (r2 + 1.0)) * (frame_ * y);
  }

 private:
  Vec4 pole_;
  Eigen::Matrix<double, 4, 3> frame_;
};

double min_distance_to_loop(const Vec4& p, const std::vector<Vec4>& loop) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < loop.size(); ++i) {
    best = std::min(best, arc_distance(p, loop[i], loop[i + 1]));
  }
  return best;
}

Vec4 choose_pole(const std::vector<Vec4>& loop, std::mt19937_64& rng, const Tolerances& tol) {
  Vec4 best = -loop.front();
  double best_distance = min_distance_to_loop(best, loop);
  const auto attempts = static_cast<std::size_t>(tol.pole_attempts);
  for (std::size_t i = 0; i < attempts; ++i) {
    const Vec4 candidate = random_quaternion(rng).coeffs();
    const double d = min_distance_to_loop(candidate, loop);
    if (d > best_distance) {
      best = candidate;
      best_distance = d;
    }
  }
  if (best_distance < tol.pole_min_distance) {
    std::ostringstream msg;
    msg << "no projection pole within " << attempts << " attempts clears the lifted loop by "
        << tol.pole_min_distance << " rad (best " << best_distance << ")";
    throw PoleSearchFailed(msg.str());
  }
  return best;
}

double rotation_step(const Vec4& a, const Vec4& b) {
  const double chord = std::min((a - b).norm(), (a + b).norm());
  return 4.0 * std::asin(std::min(chord / 2.0, 1.0));
}

}  // namespace

double arc_distance(const Vec4& p, const Vec4& a, const Vec4& b) {
  const Vec4 n = b - a.dot(b) * a;
  const double nn = n.norm();
  if (nn < 1e-14) return std::min(sphere_angle(p, a), sphere_angle(p, b));
  const Vec4 e = n / nn;
  const double arc = std::atan2(b.dot(e), b.dot(a));
  const double pa = p.dot(a);
  const double pe = p.dot(e);
  const double psi = std::atan2(pe, pa);
  if (psi >= 0.0 && psi <= arc) {
    const double in_plane = std::hypot(pa, pe);
    const double off_plane = (p - pa * a - pe * e).norm();
    return std::atan2(off_plane, in_plane);
  }
  return std::min(sphere_angle(p, a), sphere_angle(p, b));
}

LiftedPath lift(const RotationPath& path, const UnitQuaterniond& initial, const Tolerances& tol) {
  const double offset = rotation_distance(quat_to_matrix(initial), path.rotation(0));
  if (offset > tol.loop_closure) {
    std::ostringstream msg;
    msg << "initial quaternion is " << offset << " rad away from the start of the path";
    throw InvalidInput(msg.str());
  }
  const auto& in = path.samples();
  std::vector<UnitQuaterniond> out;
  out.reserve(in.size());
  out.push_back(initial);
  for (std::size_t i = 1; i < in.size(); ++i) {
    const double step = rotation_distance(in[i - 1], in[i]);
    if (!(step < tol.lift_max_step)) {
      std::ostringstream msg;
      msg << "lifting needs steps below " << tol.lift_max_step << " rad; step " << i - 1
          << " is " << step;
      throw RefinementRequired(msg.str());
    }
    const UnitQuaterniond& prev = out.back();
    out.push_back(prev.dot(in[i]) >= 0.0 ? in[i] : -in[i]);
  }
  return LiftedPath(std::move(out), path);
}

HomotopyClass classify(const Loop& loop, const Tolerances& tol) {
  const UnitQuaterniond start = matrix_to_quat(loop.basepoint(), tol);
  const LiftedPath lifted = lift(loop.path(), start, tol);
  const double same = quat_chord(lifted.back(), start);
  const double opposite = quat_chord(lifted.back(), -start);
  if (same <= tol.class_chord) return HomotopyClass::trivial();
  if (opposite <= tol.class_chord) return HomotopyClass::nontrivial();
  std::ostringstream msg;
  msg << "lifted loop ends " << same << " from +q0 and " << opposite
      << " from -q0; refine the loop and retry";
  throw NumericalDrift(msg.str());
}

HomotopyGrid::HomotopyGrid(std::size_t rows, std::size_t cols, std::vector<UnitQuaterniond> nodes,
                           RotationMatrixd basepoint, std::string meta)
    : rows_(rows),
      cols_(cols),
      nodes_(std::move(nodes)),
      basepoint_(basepoint),
      meta_(std::move(meta)) {
  if (rows_ < 1 || cols_ < 2 || nodes_.size() != rows_ * cols_) {
    throw InvalidInput("homotopy grid dimensions do not match its node count");
  }
}

RotationPath HomotopyGrid::row(std::size_t s) const {
  std::vector<UnitQuaterniond> out(nodes_.begin() + static_cast<std::ptrdiff_t>(s * cols_),
                                   nodes_.begin() + static_cast<std::ptrdiff_t>((s + 1) * cols_));
  return RotationPath(std::move(out));
}

RotationPath HomotopyGrid::column(std::size_t t) const {
  std::vector<UnitQuaterniond> out;
  out.reserve(rows_);
  for (std::size_t s = 0; s < rows_; ++s) out.push_back(at(s, t));
  if (out.size() == 1) out.push_back(out.front());
  return RotationPath(std::move(out));
}

HomotopyGrid HomotopyGrid::with_row(std::size_t s,
                                    const std::vector<UnitQuaterniond>& replacement) const {
  if (s >= rows_ || replacement.size() != cols_) {
    throw InvalidInput("replacement row does not fit the grid");
  }
  std::vector<UnitQuaterniond> nodes = nodes_;
  std::copy(replacement.begin(), replacement.end(),
            nodes.begin() + static_cast<std::ptrdiff_t>(s * cols_));
  return HomotopyGrid(rows_, cols_, std::move(nodes), basepoint_, meta_);
}

HomotopyGrid contract(const Loop& loop, std::mt19937_64& rng, const Tolerances& tol) {
  const Loop fine = refine(loop, tol.contract_step);
  if (!classify(fine, tol).is_trivial()) {
    throw NotNullHomotopic("loop is in the nontrivial class of pi_1(SO(3)) and cannot be contracted");
  }
  const UnitQuaterniond start = matrix_to_quat(fine.basepoint(), tol);
  const LiftedPath lifted = lift(fine.path(), start, tol);

  std::vector<Vec4> gamma;
  gamma.reserve(lifted.samples().size());
  for (const auto& q : lifted.samples()) gamma.push_back(q.coeffs());
  gamma.back() = gamma.front();

  const Vec4 pole = choose_pole(gamma, rng, tol);
  const Stereographic proj(pole);
  const Vec3 center = proj.forward(gamma.front());

  const std::size_t segments = gamma.size() - 1;
  std::vector<std::size_t> pieces(segments, 1);
  std::size_t stages = 8;

  std::vector<Vec4> row0;
  std::vector<Vec3> images;
  std::vector<std::size_t> segment_of;  // segment owning the step from node i to i + 1
  std::vector<Vec4> nodes;
  std::size_t cols = 0;

  const double column_target = tol.grid_step / 2.0;
  const double row_target = 0.9 * tol.grid_step;

  for (int iteration = 0;; ++iteration) {
    if (iteration > 40) throw NumericalDrift("homotopy grid subdivision did not converge");

    row0.clear();
    segment_of.clear();
    row0.push_back(gamma.front());
    for (std::size_t j = 0; j < segments; ++j) {
      const UnitQuaterniond a(gamma[j]);
      const UnitQuaterniond b(gamma[j + 1]);
      for (std::size_t m = 1; m <= pieces[j]; ++m) {
        segment_of.push_back(j);
        if (m == pieces[j]) {
          row0.push_back(gamma[j + 1]);
        } else {
          row0.push_back(slerp(a, b, static_cast<double>(m) / static_cast<double>(pieces[j]))
                             .coeffs());
        }
      }
    }
    cols = row0.size();
    images.resize(cols);
    for (std::size_t t = 0; t < cols; ++t) images[t] = proj.forward(row0[t]);

    nodes.assign(cols * (stages + 1), Vec4::Zero());
    for (std::size_t t = 0; t < cols; ++t) nodes[t] = row0[t];
    for (std::size_t s = 1; s <= stages; ++s) {
      const double sigma = static_cast<double>(s) / static_cast<double>(stages);
      for (std::size_t t = 0; t < cols; ++t) {
        nodes[s * cols + t] = proj.inverse((1.0 - sigma) * images[t] + sigma * center);
      }
    }

    double worst_column = 0.0;
    std::vector<double> worst_row(segments, 0.0);
    for (std::size_t s = 0; s <= stages; ++s) {
      for (std::size_t t = 0; t + 1 < cols; ++t) {
        const double d = rotation_step(nodes[s * cols + t], nodes[s * cols + t + 1]);
        worst_row[segment_of[t]] = std::max(worst_row[segment_of[t]], d);
        if (s < stages) {
          worst_column =
              std::max(worst_column, rotation_step(nodes[s * cols + t], nodes[(s + 1) * cols + t]));
        }
      }
    }

    bool changed = false;
    if (worst_column > column_target) {
      stages = static_cast<std::size_t>(
          std::ceil(static_cast<double>(stages) * worst_column / (0.9 * column_target)));
      changed = true;
    }
    for (std::size_t j = 0; j < segments; ++j) {
      if (worst_row[j] > row_target) {
        pieces[j] = static_cast<std::size_t>(
            std::ceil(static_cast<double>(pieces[j]) * worst_row[j] / (0.8 * row_target)));
        changed = true;
      }
    }
    if (!changed) break;
  }

  std::vector<UnitQuaterniond> out;
  out.reserve(nodes.size());
  for (const auto& v : nodes) out.emplace_back(v);
  std::ostringstream meta;
  meta << "contract stages=" << stages << " columns=" << cols << " pole=(" << pole.transpose()
       << ")";
  return HomotopyGrid(stages + 1, cols, std::move(out), fine.basepoint(), meta.str());
}

HomotopyGrid contract(const Loop& loop, std::uint64_t seed, const Tolerances& tol) {
  std::mt19937_64 rng(seed);
  return contract(loop, rng, tol);
}

namespace {

/// Rotation distance from r to the geodesic segment between a and b.
double segment_rotation_distance(const UnitQuaterniond& r, const UnitQuaterniond& a,
                                 const UnitQuaterniond& b) {
  const Vec4 qa = a.coeffs();
  const Vec4 qb = a.dot(b) >= 0.0 ? b.coeffs() : Vec4(-b.coeffs());
  const double d = std::min(arc_distance(r.coeffs(), qa, qb), arc_distance(-r.coeffs(), qa, qb));
  return 2.0 * d;
}

}  // namespace

HomotopyReport verify_homotopy(const HomotopyGrid& grid, const Loop& loop, const Tolerances& tol) {
  HomotopyReport report;
  const std::size_t rows = grid.rows();
  const std::size_t cols = grid.cols();
  const UnitQuaterniond base = matrix_to_quat(grid.basepoint(), tol);

  if (rotation_distance(grid.basepoint(), loop.basepoint()) > tol.loop_closure) {
    report.failures.push_back("grid and loop have different basepoints");
  }

  double worst = -1.0;
  for (std::size_t s = 0; s < rows; ++s) {
    for (std::size_t t = 0; t < cols; ++t) {
      if (t + 1 < cols) {
        const double d = rotation_distance(grid.at(s, t), grid.at(s, t + 1));
        report.max_row_step = std::max(report.max_row_step, d);
        if (d > worst) {
          worst = d;
          report.worst_step = "row " + std::to_string(s) + " between columns " +
                              std::to_string(t) + " and " + std::to_string(t + 1);
        }
      }
      if (s + 1 < rows) {
        const double d = rotation_distance(grid.at(s, t), grid.at(s + 1, t));
        report.max_column_step = std::max(report.max_column_step, d);
        if (d > worst) {
          worst = d;
          report.worst_step = "column " + std::to_string(t) + " between rows " +
                              std::to_string(s) + " and " + std::to_string(s + 1);
        }
      }
    }
  }
  if (report.max_row_step > tol.grid_step) {
    report.failures.push_back("row step " + std::to_string(report.max_row_step) +
                              " exceeds the grid bound");
  }
  if (report.max_column_step > tol.grid_step) {
    report.failures.push_back("column step " + std::to_string(report.max_column_step) +
                              " exceeds the grid bound");
  }

  for (std::size_t s = 0; s < rows; ++s) {
    report.pinned_deviation = std::max({report.pinned_deviation,
                                        rotation_distance(grid.at(s, 0), base),
                                        rotation_distance(grid.at(s, cols - 1), base)});
  }
  if (report.pinned_deviation > tol.grid_pin) {
    report.failures.push_back("endpoint columns leave the basepoint");
  }

  for (std::size_t t = 0; t < cols; ++t) {
    report.final_row_deviation =
        std::max(report.final_row_deviation, rotation_distance(grid.at(rows - 1, t), base));
  }
  if (report.final_row_deviation > tol.grid_pin) {
    report.failures.push_back("final row is not constant at the basepoint");
  }

  // Row 0 must trace the loop: every loop sample in order, and geodesic
  // interpolants between consecutive ones.
  const auto& target = loop.path().samples();
  const double fid = tol.grid_fidelity;
  std::size_t j = 0;
  bool traced = rotation_distance(grid.at(0, 0), target[0]) <= fid;
  report.row0_deviation = rotation_distance(grid.at(0, 0), target[0]);
  for (std::size_t t = 1; traced && t < cols; ++t) {
    const UnitQuaterniond& r = grid.at(0, t);
    if (j + 1 < target.size()) {
      const double to_next = rotation_distance(r, target[j + 1]);
      if (to_next <= fid) {
        report.row0_deviation = std::max(report.row0_deviation, to_next);
        ++j;
        continue;
      }
      const double off = segment_rotation_distance(r, target[j], target[j + 1]);
      if (off <= fid) {
        report.row0_deviation = std::max(report.row0_deviation, off);
        continue;
      }
    }
    const double stay = rotation_distance(r, target[j]);
    if (stay <= fid) {
      report.row0_deviation = std::max(report.row0_deviation, stay);
      continue;
    }
    traced = false;
    report.failures.push_back("row 0 leaves the loop at column " + std::to_string(t));
  }
  if (traced && j + 1 != target.size()) {
    report.failures.push_back("row 0 stops before the end of the loop");
  }

  report.passed = report.failures.empty();
  return report;
}

}  // namespace so3
