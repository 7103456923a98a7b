#include <gtest/gtest.h>

#include "so3topo/ball_chart.hpp"
#include "so3topo/homotopy.hpp"
#include "test_support.hpp"

namespace so3 {
namespace {

using testing::axis_loop;
using testing::Gen;
using testing::kPi;

TEST(Lift, Examples) {
  const LiftedPath constant = lift(constant_loop().path(), UnitQuaterniond::identity());
  for (const auto& q : constant.samples()) EXPECT_EQ(q.coeffs(), Vec4(1, 0, 0, 0));

  const LiftedPath once = lift(axis_loop(Vec3::UnitZ(), 2 * kPi).path(), UnitQuaterniond::identity());
  EXPECT_LT((once.back().coeffs() - Vec4(-1, 0, 0, 0)).norm(), 1e-12);

  const LiftedPath twice =
      lift(axis_loop(Vec3::UnitZ(), 4 * kPi, 400).path(), UnitQuaterniond::identity());
  EXPECT_LT((twice.back().coeffs() - Vec4(1, 0, 0, 0)).norm(), 1e-12);
}

TEST(Lift, SatisfiesInvariants) {
  Gen gen(61);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    // Scramble the signs of the input samples; the lift must not care.
    std::vector<UnitQuaterniond> scrambled;
    const Loop source = random_loop(seed, 3);
    for (const auto& q : source.path().samples()) {
      scrambled.push_back(gen.uniform(0, 1) < 0.5 ? -q : q);
    }
    const RotationPath path(scrambled);
    const LiftedPath lifted = lift(path, path.front());
    ASSERT_EQ(lifted.samples().size(), path.size());
    for (std::size_t i = 0; i < path.size(); ++i) {
      EXPECT_LT(testing::max_abs_diff(quat_to_matrix(lifted.samples()[i]).matrix(),
                                      path.rotation(i).matrix()),
                1e-9);
      if (i + 1 < path.size()) {
        const Vec4 a = lifted.samples()[i].coeffs();
        const Vec4 b = lifted.samples()[i + 1].coeffs();
        EXPECT_LT((b - a).norm(), (b + a).norm());
      }
    }
  }
}

TEST(Lift, NegatedInitialNegatesEverything) {
  const Loop loop = random_loop(62, 4);
  const LiftedPath plus = lift(loop.path(), UnitQuaterniond::identity());
  const LiftedPath minus = lift(loop.path(), -UnitQuaterniond::identity());
  for (std::size_t i = 0; i < loop.size(); ++i) {
    EXPECT_EQ(minus.samples()[i].coeffs(), -plus.samples()[i].coeffs());
  }
}

TEST(Lift, Errors) {
  const Loop coarse = axis_loop(Vec3::UnitZ(), 2 * kPi, 5);
  EXPECT_THROW(lift(coarse.path(), UnitQuaterniond::identity()), RefinementRequired);
  const Loop fine = axis_loop(Vec3::UnitZ(), 2 * kPi);
  EXPECT_THROW(lift(fine.path(), quat_from_axis_angle<double>(Vec3::UnitX(), 0.1)), InvalidInput);
}

TEST(Classify, Examples) {
  EXPECT_EQ(classify(constant_loop()), HomotopyClass::trivial());
  Gen gen(63);
  for (int i = 0; i < 50; ++i) {
    EXPECT_EQ(classify(axis_loop(gen.axis(), 2 * kPi)), HomotopyClass::nontrivial());
    EXPECT_EQ(classify(axis_loop(gen.axis(), -2 * kPi)), HomotopyClass::nontrivial());
  }
  std::vector<Loop> odd;
  for (std::uint64_t seed = 0; odd.size() < 20; ++seed) {
    Loop loop = random_loop(seed, 3);
    if (!classify(loop).is_trivial()) odd.push_back(std::move(loop));
  }
  for (std::size_t i = 0; i + 1 < odd.size(); ++i) {
    EXPECT_EQ(classify(concat(odd[i], odd[i + 1])), HomotopyClass::trivial());
  }
}

TEST(Classify, NonIdentityBasepoint) {
  Gen gen(64);
  for (int i = 0; i < 20; ++i) {
    const UnitQuaterniond base = gen.quaternion();
    const Loop spin = axis_loop(gen.axis(), 2 * kPi * (1 + i % 2), 400);
    std::vector<UnitQuaterniond> samples;
    for (const auto& q : spin.path().samples()) samples.push_back(base * q);
    const Loop loop(RotationPath(samples), quat_to_matrix(base));
    EXPECT_EQ(classify(loop), classify(spin));
  }
}

TEST(Classify, ReportsDriftInsteadOfRounding) {
  // End the loop 1e-10 rad off the identity, then demand an exact match.
  const Loop near(RotationPath({UnitQuaterniond::identity(),
                                quat_from_axis_angle<double>(Vec3::UnitZ(), 1e-10)}));
  Tolerances strict;
  strict.class_chord = 1e-14;
  EXPECT_THROW(classify(near, strict), NumericalDrift);
  EXPECT_EQ(classify(near), HomotopyClass::trivial());
}

TEST(Classify, GroupLawsOnCorpus) {
  Gen gen(65);
  std::vector<Loop> corpus;
  for (std::uint64_t seed = 0; seed < 200; ++seed) corpus.push_back(random_loop(1000 + seed, 1 + seed % 5));
  for (std::size_t i = 0; i + 1 < corpus.size(); ++i) {
    const Loop& a = corpus[i];
    const Loop& b = corpus[i + 1];
    EXPECT_EQ(classify(concat(a, b)), classify(a) * classify(b));
    EXPECT_EQ(classify(reverse(a)), classify(a));
    EXPECT_EQ(classify(conjugate_loop(a, gen.quaternion())), classify(a));
    EXPECT_EQ(classify(refine(a, 0.01)), classify(a));
    EXPECT_EQ(classify(a), crossing_parity(a));
  }
}

TEST(ArcDistance, MatchesDenseSampling) {
  Gen gen(66);
  for (int i = 0; i < 200; ++i) {
    const Vec4 a = gen.quaternion().coeffs();
    Vec4 b = gen.quaternion().coeffs();
    if (a.dot(b) < 0) b = -b;
    const Vec4 p = gen.quaternion().coeffs();
    double brute = 1e9;
    for (int k = 0; k <= 20000; ++k) {
      const Vec4 x = slerp(UnitQuaterniond(a), UnitQuaterniond(b), k / 20000.0).coeffs();
      brute = std::min(brute, 2.0 * std::asin(std::min((p - x).norm() / 2.0, 1.0)));
    }
    EXPECT_NEAR(arc_distance(p, a, b), brute, 1e-6);
  }
}

TEST(Contract, ConstantLoop) {
  const Loop c = constant_loop();
  const HomotopyGrid grid = contract(c);
  for (const auto& q : grid.nodes()) EXPECT_LT(rotation_distance(q, UnitQuaterniond()), 1e-12);
  EXPECT_TRUE(verify_homotopy(grid, c).passed);
}

TEST(Contract, DoubledFullTurn) {
  const Loop once = axis_loop(Vec3::UnitZ(), 2 * kPi);
  const Loop twice = concat(once, once);
  const HomotopyGrid grid = contract(twice, 3);
  const HomotopyReport report = verify_homotopy(grid, twice);
  EXPECT_TRUE(report.passed) << (report.failures.empty() ? "" : report.failures.front());
  EXPECT_LE(report.max_row_step, 0.1);
  EXPECT_LE(report.max_column_step, 0.1);
  EXPECT_LE(report.final_row_deviation, 1e-9);
}

TEST(Contract, RefusesNontrivialLoops) {
  EXPECT_THROW(contract(axis_loop(Vec3::UnitZ(), 2 * kPi)), NotNullHomotopic);
  int refused = 0;
  for (std::uint64_t seed = 0; refused < 10; ++seed) {
    const Loop loop = random_loop(seed, 2);
    if (classify(loop).is_trivial()) continue;
    EXPECT_THROW(contract(loop, seed), NotNullHomotopic);
    ++refused;
  }
}

TEST(Contract, RandomTrivialLoops) {
  int done = 0;
  for (std::uint64_t seed = 0; done < 20; ++seed) {
    const Loop loop = random_loop(500 + seed, 1 + seed % 4);
    if (!classify(loop).is_trivial()) continue;
    const HomotopyReport report = verify_homotopy(contract(loop, seed), loop);
    EXPECT_TRUE(report.passed) << "seed " << seed << ": "
                               << (report.failures.empty() ? "" : report.failures.front());
    ++done;
  }
}

TEST(Contract, NonIdentityBasepoint) {
  const UnitQuaterniond base = quat_from_axis_angle<double>(Vec3(0, 0.6, 0.8), 2.5);
  const Loop spin = axis_loop(Vec3::UnitX(), 4 * kPi, 400);
  std::vector<UnitQuaterniond> samples;
  for (const auto& q : spin.path().samples()) samples.push_back(q * base);
  const Loop loop(RotationPath(samples), quat_to_matrix(base));
  const HomotopyGrid grid = contract(loop, 9);
  EXPECT_TRUE(verify_homotopy(grid, loop).passed);
}

TEST(Contract, PoleSearchCanFail) {
  Tolerances picky;
  picky.pole_min_distance = 3.0;
  picky.pole_attempts = 50;
  const Loop loop = concat(axis_loop(Vec3::UnitZ(), 2 * kPi), axis_loop(Vec3::UnitZ(), 2 * kPi));
  EXPECT_THROW(contract(loop, 0, picky), PoleSearchFailed);
}

TEST(Contract, DeterministicInSeed) {
  const Loop loop = concat(axis_loop(Vec3::UnitY(), 2 * kPi), axis_loop(Vec3::UnitX(), 2 * kPi));
  const HomotopyGrid a = contract(loop, 17);
  const HomotopyGrid b = contract(loop, 17);
  ASSERT_EQ(a.nodes().size(), b.nodes().size());
  for (std::size_t i = 0; i < a.nodes().size(); ++i) EXPECT_EQ(a.nodes()[i].coeffs(), b.nodes()[i].coeffs());
}

TEST(VerifyHomotopy, AllConstantGrid) {
  const HomotopyGrid grid(3, 4, std::vector<UnitQuaterniond>(12), RotationMatrixd::identity());
  EXPECT_TRUE(verify_homotopy(grid, constant_loop()).passed);
}

TEST(VerifyHomotopy, CatchesANontrivialRowSplice) {
  const Loop once = axis_loop(Vec3::UnitZ(), 2 * kPi);
  const Loop twice = concat(once, once);
  const HomotopyGrid grid = contract(twice, 4);
  ASSERT_TRUE(verify_homotopy(grid, twice).passed);
  // Replace a middle row with a full turn sampled at the grid's width.
  const Loop odd = axis_loop(Vec3::UnitX(), 2 * kPi, grid.cols());
  const HomotopyGrid spliced = grid.with_row(grid.rows() / 2, odd.path().samples());
  const HomotopyReport report = verify_homotopy(spliced, twice);
  EXPECT_FALSE(report.passed);
  EXPECT_GT(report.max_column_step, 0.1);
}

TEST(VerifyHomotopy, CatchesWrongRowZero) {
  const Loop a = concat(axis_loop(Vec3::UnitZ(), 2 * kPi), axis_loop(Vec3::UnitZ(), 2 * kPi));
  const Loop b = concat(axis_loop(Vec3::UnitX(), 2 * kPi), axis_loop(Vec3::UnitX(), 2 * kPi));
  const HomotopyReport report = verify_homotopy(contract(a, 1), b);
  EXPECT_FALSE(report.passed);
  EXPECT_FALSE(report.failures.empty());
}

}  // namespace
}  // namespace so3
