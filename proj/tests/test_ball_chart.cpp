#include <gtest/gtest.h>

#include <iostream>

#include "so3topo/ball_chart.hpp"
#include "so3topo/homotopy.hpp"
#include "so3topo/torus_chart.hpp"
#include "test_support.hpp"

namespace so3 {
namespace {

using testing::Gen;
using testing::kPi;
using testing::max_abs_diff;

TEST(ToBall, Examples) {
  EXPECT_EQ(to_ball(UnitQuaterniond(1, 0, 0, 0)).vector(), Vec3::Zero());
  const Vec3 half_z = to_ball(UnitQuaterniond(0, 0, 0, 1)).vector();
  EXPECT_LT((half_z - Vec3(0, 0, kPi)).norm(), 1e-15);
  EXPECT_LT((to_ball(UnitQuaterniond(0, 0, 0, -1)).vector() - Vec3(0, 0, kPi)).norm(), 1e-15);
  Gen gen(41);
  for (int i = 0; i < 500; ++i) {
    const UnitQuaterniond q = gen.quaternion();
    EXPECT_EQ(to_ball(q).vector(), to_ball(-q).vector());
    EXPECT_LE(to_ball(q).angle(), kPi + 1e-12);
  }
}

TEST(FromBall, Examples) {
  const UnitQuaterniond origin = from_ball(BallPoint(Vec3::Zero()));
  EXPECT_EQ(origin.coeffs(), Vec4(1, 0, 0, 0));
  const UnitQuaterniond up = from_ball(BallPoint(Vec3(0, 0, kPi)));
  const UnitQuaterniond down = from_ball(BallPoint(Vec3(0, 0, -kPi)));
  EXPECT_LT(std::min((up.coeffs() - down.coeffs()).norm(), (up.coeffs() + down.coeffs()).norm()),
            1e-15);
  EXPECT_LT(max_abs_diff(quat_to_matrix(up).matrix(), quat_to_matrix(down).matrix()), 1e-15);
}

TEST(FromBall, AntipodalBoundaryPointsAreEqual) {
  Gen gen(42);
  for (int i = 0; i < 200; ++i) {
    const Vec3 v = kPi * gen.axis();
    EXPECT_LT(max_abs_diff(quat_to_matrix(from_ball(BallPoint(v))).matrix(),
                           quat_to_matrix(from_ball(BallPoint(-v))).matrix()),
              1e-9);
    EXPECT_TRUE(BallPoint(v).on_boundary());
  }
}

TEST(FromBall, RejectsPointsOutsideTheBall) {
  EXPECT_THROW(BallPoint(Vec3(0, 0, kPi + 1e-6)), InvalidInput);
  EXPECT_NO_THROW(BallPoint(Vec3(0, 0, kPi)));
}

TEST(FromBall, RoundTripOnInteriorPoints) {
  Gen gen(43);
  for (int i = 0; i < 1000; ++i) {
    const Vec3 v = gen.uniform(0, kPi - 1e-6) * gen.axis();
    const Vec3 back = to_ball(from_ball(BallPoint(v))).vector();
    EXPECT_LT((back - v).norm(), 1e-9);
  }
}

TEST(BallChart, ProjectionAndTorusCompatibility) {
  Gen gen(44);
  for (int i = 0; i < 1000; ++i) {
    const UnitQuaterniond q = gen.quaternion();
    const Mat3 r = quat_to_matrix(q).matrix();
    const Mat3 via_ball = quat_to_matrix(from_ball(to_ball(q))).matrix();
    EXPECT_LT(max_abs_diff(via_ball, r), 1e-9);
    const TorusChartPoint c = chart_forward(quat_to_matrix(q));
    if (c.alpha <= kPi - 0.05) {
      EXPECT_LT(max_abs_diff(chart_inverse(c).matrix(), via_ball), 1e-8);
    }
  }
}

TEST(CrossingParity, Examples) {
  EXPECT_EQ(crossing_parity(constant_loop()), HomotopyClass::trivial());
  const ParityReport full = crossing_parity_report(testing::axis_loop(Vec3::UnitX(), 2 * kPi));
  EXPECT_EQ(full.jumps, 1u);
  EXPECT_EQ(full.cls, HomotopyClass::nontrivial());
  const ParityReport twice = crossing_parity_report(testing::axis_loop(Vec3::UnitX(), 4 * kPi, 400));
  EXPECT_EQ(twice.jumps, 2u);
  EXPECT_EQ(twice.cls, HomotopyClass::trivial());
}

TEST(CrossingParity, OddSampleCountLandsOnTheBoundary) {
  // With 201 samples the middle one is exactly the half turn.
  const Loop loop = testing::axis_loop(Vec3::UnitY(), 2 * kPi, 201);
  EXPECT_EQ(crossing_parity(loop), HomotopyClass::nontrivial());
}

TEST(CrossingParity, RequiresRefinement) {
  const Loop coarse = testing::axis_loop(Vec3::UnitZ(), 2 * kPi, 20);
  EXPECT_THROW(crossing_parity(coarse), RefinementRequired);
  EXPECT_EQ(crossing_parity(refine(coarse, 0.1)), HomotopyClass::nontrivial());
}

TEST(CrossingParity, BasepointOnTheBoundarySphere) {
  // Loop based at a half turn: a full turn about the same axis, conjugated
  // around so the base stays on the boundary.
  Gen gen(45);
  for (int i = 0; i < 50; ++i) {
    const Vec3 n = gen.axis();
    const UnitQuaterniond base = quat_from_axis_angle(n, kPi);
    std::vector<UnitQuaterniond> samples;
    const Loop spin = testing::axis_loop(gen.axis(), 2 * kPi * (1 + i % 2), 400);
    for (const auto& q : spin.path().samples()) samples.push_back(q * base);
    const Loop loop(RotationPath(samples), quat_to_matrix(base));
    EXPECT_EQ(crossing_parity(loop), classify(loop));
  }
}

TEST(CrossingParity, JumpDichotomyAndOracleAgreement) {
  double chart_constant = 0.0;
  double smallest_jump = 1e9;
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const Loop loop = random_loop(seed, 1 + seed % 5);
    const ParityReport report = crossing_parity_report(loop);
    EXPECT_EQ(report.cls, classify(loop)) << "seed " << seed;
    chart_constant = std::max(chart_constant, report.max_interior_chord / loop.path().max_step());
    if (report.jumps > 0) smallest_jump = std::min(smallest_jump, report.min_jump_chord);
  }
  std::cout << "ball chart distortion constant C = " << chart_constant
            << ", smallest boundary jump chord = " << smallest_jump << "\n";
  // Interior chords stay below 0.2 * C with C < pi/2; jumps are near 2 pi.
  EXPECT_LT(chart_constant, kPi / 2 + 1e-6);
  EXPECT_GT(smallest_jump, kPi);
}

}  // namespace
}  // namespace so3
