#pragma once

// Solid-torus coordinates on SO(3) minus the rotations that send e_z to -e_z.
//
// A rotation R is written as R = A(Z, phi) * S(Z): S slides e_z to Z = R e_z
// along the meridian (parallel-transporting the x- and y-axes), and A turns by
// phi about Z. Z is recorded as longitude lambda (from the x-axis toward the
// y-axis) and polar angle alpha (from e_z).

#include <utility>

#include "so3topo/rotation.hpp"

namespace so3 {

struct TorusChartPoint {
  Vec3 z_axis = Vec3::UnitZ();
  double lambda = 0.0;  // [0, 2pi), zero at the north pole
  double alpha = 0.0;   // [0, pi)
  double phi = 0.0;     // [0, 2pi)

  /// Builds a point from its angles, wrapping lambda and phi into [0, 2pi).
  /// Throws InvalidInput unless alpha lies in [0, pi).
  static TorusChartPoint from_angles(double lambda, double alpha, double phi);
};

struct SolidTorusCoord {
  Eigen::Vector2d disk = Eigen::Vector2d::Zero();  // |disk| < 1
  double phi = 0.0;
};

/// Angle wrapped into [0, 2pi).
double wrap_two_pi(double angle);

/// Smallest |a - b| modulo 2pi.
double angular_difference(double a, double b);

/// Rotation about e_z x Z taking e_z to Z. Throws SouthPoleSingular when Z is
/// within the south-pole margin.
RotationMatrixd slide_rotation(const Vec3& z_axis, const Tolerances& tol = Tolerances::defaults());

/// The slide along the meridian of longitude lambda by polar angle alpha.
/// Defined for every alpha, including alpha = pi.
RotationMatrixd meridian_slide(double lambda, double alpha);

/// Right-handed rotation by phi about the unit vector z_axis.
RotationMatrixd fiber_rotation(const Vec3& z_axis, double phi);

TorusChartPoint chart_forward(const RotationMatrixd& r,
                              const Tolerances& tol = Tolerances::defaults());

RotationMatrixd chart_inverse(const TorusChartPoint& c);

SolidTorusCoord to_solid_torus(const TorusChartPoint& c);

/// The rotation approached by chart_inverse along the meridian lambda as
/// alpha -> pi with fiber angle phi. Computed by Richardson extrapolation from
/// alpha = pi - eps, pi - eps/2, pi - eps/4; throws NumericalDrift if two
/// successive extrapolants disagree by more than tol.boundary_stability.
RotationMatrixd boundary_limit_rotation(double lambda, double phi,
                                        const Tolerances& tol = Tolerances::defaults());

using BoundaryPoint = std::pair<double, double>;  // (lambda, phi)

/// True iff the two boundary points name the same rotation.
bool boundary_identified(const BoundaryPoint& p1, const BoundaryPoint& p2,
                         const Tolerances& tol = Tolerances::defaults());

/// Sign s in the boundary gluing rule phi + 2*s*lambda = const, measured
/// numerically once and cached.
int identification_sign();

/// The identification rule in closed form, using identification_sign().
bool boundary_identified_by_rule(const BoundaryPoint& p1, const BoundaryPoint& p2,
                                 double angle_tol = 1e-9);

}  // namespace so3
