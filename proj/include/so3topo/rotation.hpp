#pragma once

// Rotations in three representations: unit quaternions (the double cover
// S^3), special-orthogonal 3x3 matrices, and axis-angle pairs. Everything is
// templated on the scalar type; the rest of the library uses the `d` aliases.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "so3topo/errors.hpp"
#include "so3topo/tolerances.hpp"

namespace so3 {

template <typename Scalar>
using Vector3 = Eigen::Matrix<Scalar, 3, 1>;
template <typename Scalar>
using Vector4 = Eigen::Matrix<Scalar, 4, 1>;
template <typename Scalar>
using Matrix3 = Eigen::Matrix<Scalar, 3, 3>;

/// Point of S^3, stored as (w, x, y, z). Renormalized on every construction.
template <typename Scalar>
class UnitQuaternion {
 public:
  UnitQuaternion() : coeffs_(Scalar(1), Scalar(0), Scalar(0), Scalar(0)) {}

  UnitQuaternion(Scalar w, Scalar x, Scalar y, Scalar z)
      : UnitQuaternion(Vector4<Scalar>(w, x, y, z)) {}

  explicit UnitQuaternion(const Vector4<Scalar>& wxyz) {
    using std::isfinite;
    const Scalar n = wxyz.norm();
    if (!isfinite(n) || !(n > Scalar(0))) {
      throw InvalidInput("quaternion has zero or non-finite norm");
    }
    coeffs_ = wxyz / n;
  }

  static UnitQuaternion identity() { return UnitQuaternion(); }

  Scalar w() const { return coeffs_[0]; }
  Scalar x() const { return coeffs_[1]; }
  Scalar y() const { return coeffs_[2]; }
  Scalar z() const { return coeffs_[3]; }
  Vector3<Scalar> vec() const { return coeffs_.template tail<3>(); }
  const Vector4<Scalar>& coeffs() const { return coeffs_; }

  Scalar dot(const UnitQuaternion& other) const { return coeffs_.dot(other.coeffs_); }

  UnitQuaternion operator-() const {
    UnitQuaternion q;
    q.coeffs_ = -coeffs_;
    return q;
  }

  template <typename Other>
  UnitQuaternion<Other> cast() const {
    return UnitQuaternion<Other>(coeffs_.template cast<Other>());
  }

 private:
  Vector4<Scalar> coeffs_;
};

/// Element of SO(3). The checked constructor rejects matrices that are not
/// orthogonal with determinant one.
template <typename Scalar>
class RotationMatrix {
 public:
  RotationMatrix() : m_(Matrix3<Scalar>::Identity()) {}

  explicit RotationMatrix(const Matrix3<Scalar>& m,
                          const Tolerances& tol = Tolerances::defaults())
      : m_(m) {
    const Scalar orth =
        (m.transpose() * m - Matrix3<Scalar>::Identity()).cwiseAbs().maxCoeff();
    const Scalar det = m.determinant();
    using std::abs;
    using std::isfinite;
    if (!isfinite(orth) || orth > Scalar(tol.orthogonality) ||
        abs(det - Scalar(1)) > Scalar(tol.orthogonality)) {
      std::ostringstream msg;
      msg << "matrix is not a rotation: |M^T M - I|_max = " << orth
          << ", det = " << det;
      throw InvalidInput(msg.str());
    }
  }

  /// Wraps a product of rotations without re-validating it.
  static RotationMatrix unchecked(const Matrix3<Scalar>& m) {
    RotationMatrix r;
    r.m_ = m;
    return r;
  }

  static RotationMatrix identity() { return RotationMatrix(); }

  const Matrix3<Scalar>& matrix() const { return m_; }
  Scalar operator()(int row, int col) const { return m_(row, col); }

  RotationMatrix transpose() const { return unchecked(m_.transpose()); }

  friend RotationMatrix operator*(const RotationMatrix& a, const RotationMatrix& b) {
    return unchecked(a.m_ * b.m_);
  }
  friend Vector3<Scalar> operator*(const RotationMatrix& a, const Vector3<Scalar>& v) {
    return a.m_ * v;
  }

 private:
  Matrix3<Scalar> m_;
};

template <typename Scalar>
struct AxisAngle {
  Vector3<Scalar> axis = Vector3<Scalar>::UnitZ();
  Scalar angle = Scalar(0);
};

using UnitQuaterniond = UnitQuaternion<double>;
using RotationMatrixd = RotationMatrix<double>;
using AxisAngled = AxisAngle<double>;
using Vec3 = Vector3<double>;
using Vec4 = Vector4<double>;
using Mat3 = Matrix3<double>;

template <typename Scalar>
Matrix3<Scalar> skew(const Vector3<Scalar>& v) {
  Matrix3<Scalar> k;
  k << Scalar(0), -v.z(), v.y(),
       v.z(), Scalar(0), -v.x(),
       -v.y(), v.x(), Scalar(0);
  return k;
}

template <typename Scalar>
void require_unit_axis(const Vector3<Scalar>& axis, const Tolerances& tol) {
  using std::abs;
  if (!(abs(axis.norm() - Scalar(1)) <= Scalar(tol.axis_norm))) {
    std::ostringstream msg;
    msg << "rotation axis must be a unit vector, got norm " << axis.norm();
    throw InvalidInput(msg.str());
  }
}

/// (cos(angle/2), sin(angle/2) * axis).
template <typename Scalar>
UnitQuaternion<Scalar> quat_from_axis_angle(const Vector3<Scalar>& axis, Scalar angle,
                                            const Tolerances& tol = Tolerances::defaults()) {
  require_unit_axis(axis, tol);
  using std::cos;
  using std::sin;
  const Scalar half = angle / Scalar(2);
  const Vector3<Scalar> v = sin(half) * axis.normalized();
  return UnitQuaternion<Scalar>(cos(half), v.x(), v.y(), v.z());
}

template <typename Scalar>
UnitQuaternion<Scalar> quat_from_axis_angle(const AxisAngle<Scalar>& aa,
                                            const Tolerances& tol = Tolerances::defaults()) {
  return quat_from_axis_angle(aa.axis, aa.angle, tol);
}

/// Hamilton product a*b.
template <typename Scalar>
UnitQuaternion<Scalar> quat_compose(const UnitQuaternion<Scalar>& a,
                                    const UnitQuaternion<Scalar>& b) {
  const Vector3<Scalar> av = a.vec();
  const Vector3<Scalar> bv = b.vec();
  const Scalar w = a.w() * b.w() - av.dot(bv);
  const Vector3<Scalar> v = a.w() * bv + b.w() * av + av.cross(bv);
  return UnitQuaternion<Scalar>(w, v.x(), v.y(), v.z());
}

template <typename Scalar>
UnitQuaternion<Scalar> operator*(const UnitQuaternion<Scalar>& a,
                                 const UnitQuaternion<Scalar>& b) {
  return quat_compose(a, b);
}

template <typename Scalar>
UnitQuaternion<Scalar> quat_conjugate(const UnitQuaternion<Scalar>& q) {
  return UnitQuaternion<Scalar>(q.w(), -q.x(), -q.y(), -q.z());
}

/// Projection S^3 -> SO(3). Every entry is quadratic in the components, so
/// q and -q give bitwise identical matrices.
template <typename Scalar>
RotationMatrix<Scalar> quat_to_matrix(const UnitQuaternion<Scalar>& q) {
  const Scalar w = q.w(), x = q.x(), y = q.y(), z = q.z();
  const Scalar one(1), two(2);
  Matrix3<Scalar> m;
  m << one - two * (y * y + z * z), two * (x * y - w * z), two * (x * z + w * y),
       two * (x * y + w * z), one - two * (x * x + z * z), two * (y * z - w * x),
       two * (x * z - w * y), two * (y * z + w * x), one - two * (x * x + y * y);
  return RotationMatrix<Scalar>::unchecked(m);
}

/// Picks the representative of {q, -q} with w >= 0. When |w| is within the
/// tie tolerance, the first component of (x, y, z) that is not negligible is
/// made positive and w is clamped to zero.
template <typename Scalar>
UnitQuaternion<Scalar> canonical_lift(const UnitQuaternion<Scalar>& q,
                                      const Tolerances& tol = Tolerances::defaults()) {
  using std::abs;
  const Scalar tie(tol.canonical_tie);
  if (abs(q.w()) > tie) return q.w() > Scalar(0) ? q : -q;
  Vector4<Scalar> c = q.coeffs();
  for (int i = 1; i < 4; ++i) {
    if (abs(c[i]) > tie) {
      if (c[i] < Scalar(0)) c = -c;
      break;
    }
  }
  if (c[0] < Scalar(0)) c[0] = Scalar(0);
  return UnitQuaternion<Scalar>(c);
}

/// Canonical lift (w >= 0) of a rotation matrix, via Shepperd's method.
template <typename Scalar>
UnitQuaternion<Scalar> matrix_to_quat(const RotationMatrix<Scalar>& r,
                                      const Tolerances& tol = Tolerances::defaults()) {
  using std::sqrt;
  const Matrix3<Scalar>& m = r.matrix();
  const Scalar tr = m.trace();
  Vector4<Scalar> c;
  if (tr >= m(0, 0) && tr >= m(1, 1) && tr >= m(2, 2)) {
    const Scalar s = sqrt(Scalar(1) + tr) * Scalar(2);
    c << Scalar(0.25) * s, (m(2, 1) - m(1, 2)) / s, (m(0, 2) - m(2, 0)) / s,
        (m(1, 0) - m(0, 1)) / s;
  } else if (m(0, 0) >= m(1, 1) && m(0, 0) >= m(2, 2)) {
    const Scalar s = sqrt(Scalar(1) + m(0, 0) - m(1, 1) - m(2, 2)) * Scalar(2);
    c << (m(2, 1) - m(1, 2)) / s, Scalar(0.25) * s, (m(0, 1) + m(1, 0)) / s,
        (m(0, 2) + m(2, 0)) / s;
  } else if (m(1, 1) >= m(2, 2)) {
    const Scalar s = sqrt(Scalar(1) + m(1, 1) - m(0, 0) - m(2, 2)) * Scalar(2);
    c << (m(0, 2) - m(2, 0)) / s, (m(0, 1) + m(1, 0)) / s, Scalar(0.25) * s,
        (m(1, 2) + m(2, 1)) / s;
  } else {
    const Scalar s = sqrt(Scalar(1) + m(2, 2) - m(0, 0) - m(1, 1)) * Scalar(2);
    c << (m(1, 0) - m(0, 1)) / s, (m(0, 2) + m(2, 0)) / s, (m(1, 2) + m(2, 1)) / s,
        Scalar(0.25) * s;
  }
  return canonical_lift(UnitQuaternion<Scalar>(c), tol);
}

/// Validates a raw matrix before converting it.
template <typename Scalar>
UnitQuaternion<Scalar> matrix_to_quat(const Matrix3<Scalar>& m,
                                      const Tolerances& tol = Tolerances::defaults()) {
  return matrix_to_quat(RotationMatrix<Scalar>(m, tol), tol);
}

/// Rotation angle in [0, pi]. Uses both the trace and the skew part so the
/// result stays accurate near 0 and near pi.
template <typename Scalar>
Scalar rotation_angle(const RotationMatrix<Scalar>& r) {
  using std::atan2;
  const Matrix3<Scalar>& m = r.matrix();
  const Vector3<Scalar> axial(m(2, 1) - m(1, 2), m(0, 2) - m(2, 0), m(1, 0) - m(0, 1));
  const Scalar sin_theta = axial.norm() / Scalar(2);
  const Scalar cos_theta = (m.trace() - Scalar(1)) / Scalar(2);
  return atan2(sin_theta, cos_theta);
}

/// Geodesic distance on SO(3): the rotation angle of a^T b.
template <typename Scalar>
Scalar rotation_distance(const RotationMatrix<Scalar>& a, const RotationMatrix<Scalar>& b) {
  return rotation_angle(RotationMatrix<Scalar>::unchecked(a.matrix().transpose() * b.matrix()));
}

/// Same quantity as rotation_distance, measured on the quaternions.
template <typename Scalar>
Scalar rotation_distance(const UnitQuaternion<Scalar>& a, const UnitQuaternion<Scalar>& b) {
  using std::asin;
  using std::min;
  const Scalar chord =
      min((a.coeffs() - b.coeffs()).norm(), (a.coeffs() + b.coeffs()).norm());
  return Scalar(4) * asin(min(chord / Scalar(2), Scalar(1)));
}

/// Euclidean distance ||a - b|| in R^4 (sign-sensitive).
template <typename Scalar>
Scalar quat_chord(const UnitQuaternion<Scalar>& a, const UnitQuaternion<Scalar>& b) {
  return (a.coeffs() - b.coeffs()).norm();
}

/// Great-circle interpolation on S^3 from a to b (not sign-aligned: the arc
/// taken is the one from a to b exactly as given).
template <typename Scalar>
UnitQuaternion<Scalar> slerp(const UnitQuaternion<Scalar>& a, const UnitQuaternion<Scalar>& b,
                             Scalar t) {
  using std::acos;
  using std::sin;
  const Scalar d = std::clamp(a.dot(b), Scalar(-1), Scalar(1));
  const Scalar omega = acos(d);
  if (omega < Scalar(1e-9)) {
    return UnitQuaternion<Scalar>((Scalar(1) - t) * a.coeffs() + t * b.coeffs());
  }
  const Scalar so = sin(omega);
  return UnitQuaternion<Scalar>((sin((Scalar(1) - t) * omega) / so) * a.coeffs() +
                                (sin(t * omega) / so) * b.coeffs());
}

/// Interpolation along the shorter arc between the rotations of a and b.
template <typename Scalar>
UnitQuaternion<Scalar> slerp_shortest(const UnitQuaternion<Scalar>& a,
                                      const UnitQuaternion<Scalar>& b, Scalar t) {
  return slerp(a, a.dot(b) < Scalar(0) ? -b : b, t);
}

/// Rotation matrix for a right-handed turn by `angle` about the unit `axis`.
template <typename Scalar>
Matrix3<Scalar> axis_rotation_matrix(const Vector3<Scalar>& axis, Scalar angle) {
  using std::cos;
  using std::sin;
  const Matrix3<Scalar> k = skew(axis);
  return Matrix3<Scalar>::Identity() + sin(angle) * k + (Scalar(1) - cos(angle)) * k * k;
}

}  // namespace so3
