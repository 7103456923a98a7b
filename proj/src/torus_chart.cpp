#include "so3topo/torus_chart.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace so3 {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

Mat3 project_to_rotation(const Mat3& m) {
  Eigen::JacobiSVD<Mat3> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Mat3 r = svd.matrixU() * svd.matrixV().transpose();
  if (r.determinant() < 0.0) {
    Mat3 u = svd.matrixU();
    u.col(2) = -u.col(2);
    r = u * svd.matrixV().transpose();
  }
  return r;
}

Mat3 boundary_sample(double lambda, double phi, double offset) {
  return chart_inverse(TorusChartPoint::from_angles(lambda, kPi - offset, phi)).matrix();
}

Mat3 extrapolate(double lambda, double phi, double h) {
  // f(h) = L + a h + b h^2 + O(h^3); this combination cancels a and b.
  return (boundary_sample(lambda, phi, h) - 6.0 * boundary_sample(lambda, phi, h / 2.0) +
          8.0 * boundary_sample(lambda, phi, h / 4.0)) /
         3.0;
}

int measure_identification_sign() {
  const double lambda = kPi / 4.0;
  const double phi = 0.3;
  const Mat3 target = boundary_limit_rotation(lambda, phi).matrix();
  const double plus =
      (boundary_limit_rotation(0.0, wrap_two_pi(phi + kPi / 2.0)).matrix() - target)
          .cwiseAbs()
          .maxCoeff();
  const double minus =
      (boundary_limit_rotation(0.0, wrap_two_pi(phi - kPi / 2.0)).matrix() - target)
          .cwiseAbs()
          .maxCoeff();
  return plus < minus ? +1 : -1;
}

}  // namespace

double wrap_two_pi(double angle) {
  double a = std::fmod(angle, kTwoPi);
  if (a < 0.0) a += kTwoPi;
  if (a >= kTwoPi) a = 0.0;
  return a;
}

double angular_difference(double a, double b) {
  const double d = wrap_two_pi(a - b);
  return std::min(d, kTwoPi - d);
}

TorusChartPoint TorusChartPoint::from_angles(double lambda, double alpha, double phi) {
  if (!(alpha >= 0.0 && alpha < kPi)) {
    std::ostringstream msg;
    msg << "polar angle must lie in [0, pi), got " << alpha;
    throw InvalidInput(msg.str());
  }
  TorusChartPoint c;
  c.alpha = alpha;
  c.lambda = alpha == 0.0 ? 0.0 : wrap_two_pi(lambda);
  c.phi = wrap_two_pi(phi);
  c.z_axis = Vec3(std::sin(alpha) * std::cos(c.lambda), std::sin(alpha) * std::sin(c.lambda),
                  std::cos(alpha));
  return c;
}

RotationMatrixd slide_rotation(const Vec3& z_axis, const Tolerances& tol) {
  require_unit_axis(z_axis, tol);
  const Vec3 z = z_axis.normalized();
  if (!(z.z() > -1.0 + tol.south_pole_margin)) {
    throw SouthPoleSingular("slide is undefined for Z at the south pole");
  }
  // Rodrigues with the unnormalized axis k = e_z x Z, |k| = sin(alpha):
  // S = I + [k] + [k]^2 / (1 + cos(alpha)).
  const Vec3 k = Vec3::UnitZ().cross(z);
  const Mat3 kx = skew(k);
  return RotationMatrixd::unchecked(Mat3::Identity() + kx + kx * kx / (1.0 + z.z()));
}

RotationMatrixd meridian_slide(double lambda, double alpha) {
  const Vec3 axis(-std::sin(lambda), std::cos(lambda), 0.0);
  return RotationMatrixd::unchecked(axis_rotation_matrix(axis, alpha));
}

RotationMatrixd fiber_rotation(const Vec3& z_axis, double phi) {
  return RotationMatrixd::unchecked(axis_rotation_matrix<double>(z_axis.normalized(), phi));
}

TorusChartPoint chart_forward(const RotationMatrixd& r, const Tolerances& tol) {
  const Vec3 z = (r * Vec3::UnitZ()).normalized();
  const double planar = std::hypot(z.x(), z.y());
  const double alpha = std::atan2(planar, z.z());
  if (alpha > kPi - tol.chart_singular_alpha) {
    std::ostringstream msg;
    msg << "rotated z-axis is within " << kPi - alpha << " rad of the south pole";
    throw SouthPoleSingular(msg.str());
  }
  const RotationMatrixd s = slide_rotation(z, tol);
  const Mat3 q = r.matrix() * s.matrix().transpose();
  const Vec3 axial(q(2, 1) - q(1, 2), q(0, 2) - q(2, 0), q(1, 0) - q(0, 1));

  TorusChartPoint c;
  c.z_axis = z;
  c.alpha = alpha;
  c.lambda = planar == 0.0 ? 0.0 : wrap_two_pi(std::atan2(z.y(), z.x()));
  c.phi = wrap_two_pi(std::atan2(0.5 * z.dot(axial), 0.5 * (q.trace() - 1.0)));
  return c;
}

RotationMatrixd chart_inverse(const TorusChartPoint& c) {
  const RotationMatrixd slide = meridian_slide(c.lambda, c.alpha);
  const Vec3 z = slide.matrix().col(2);
  return fiber_rotation(z, c.phi) * slide;
}

SolidTorusCoord to_solid_torus(const TorusChartPoint& c) {
  SolidTorusCoord out;
  const double radius = c.alpha / kPi;
  out.disk = radius * Eigen::Vector2d(std::cos(c.lambda), std::sin(c.lambda));
  out.phi = c.phi;
  return out;
}

RotationMatrixd boundary_limit_rotation(double lambda, double phi, const Tolerances& tol) {
  const double h = tol.boundary_epsilon;
  const Mat3 coarse = extrapolate(lambda, phi, h);
  const Mat3 fine = extrapolate(lambda, phi, h / 2.0);
  const double spread = (coarse - fine).cwiseAbs().maxCoeff();
  if (spread > tol.boundary_stability) {
    std::ostringstream msg;
    msg << "boundary limit unstable: extrapolants differ by " << spread;
    throw NumericalDrift(msg.str());
  }
  return RotationMatrixd::unchecked(project_to_rotation(fine));
}

bool boundary_identified(const BoundaryPoint& p1, const BoundaryPoint& p2,
                         const Tolerances& tol) {
  const Mat3 a = boundary_limit_rotation(p1.first, p1.second, tol).matrix();
  const Mat3 b = boundary_limit_rotation(p2.first, p2.second, tol).matrix();
  return (a - b).cwiseAbs().maxCoeff() <= tol.boundary_match;
}

int identification_sign() {
  static const int sign = measure_identification_sign();
  return sign;
}

bool boundary_identified_by_rule(const BoundaryPoint& p1, const BoundaryPoint& p2,
                                 double angle_tol) {
  const int s = identification_sign();
  return angular_difference(p1.second + 2.0 * s * p1.first,
                            p2.second + 2.0 * s * p2.first) <= angle_tol;
}

}  // namespace so3
