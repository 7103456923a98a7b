#include "so3topo/selfcheck.hpp"

#include <algorithm>
#include <functional>
#include <future>
#include <numbers>
#include <sstream>

#include "so3topo/ball_chart.hpp"
#include "so3topo/belt.hpp"
#include "so3topo/homotopy.hpp"
#include "so3topo/torus_chart.hpp"

namespace so3 {
namespace {

constexpr double kPi = std::numbers::pi;

Vec3 random_axis(std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  Vec3 v;
  do {
    v = Vec3(gauss(rng), gauss(rng), gauss(rng));
  } while (v.norm() < 1e-6);
  return v.normalized();
}

Loop axis_loop(const Vec3& axis, double angle, std::size_t n) {
  return std::get<Loop>(axis_rotation_loop(axis, angle, n));
}

SuiteResult double_cover(std::uint64_t seed, const Tolerances&) {
  std::mt19937_64 rng(seed);
  double cover = 0.0, homomorphism = 0.0;
  for (int i = 0; i < 2000; ++i) {
    const UnitQuaterniond q = random_quaternion(rng);
    const UnitQuaterniond r = random_quaternion(rng);
    cover = std::max(
        cover, (quat_to_matrix(q).matrix() - quat_to_matrix(-q).matrix()).cwiseAbs().maxCoeff());
    homomorphism = std::max(homomorphism, ((quat_to_matrix(q) * quat_to_matrix(r)).matrix() -
                                           quat_to_matrix(q * r).matrix())
                                              .cwiseAbs()
                                              .maxCoeff());
  }
  std::ostringstream d;
  d << "q vs -q " << cover << ", homomorphism " << homomorphism;
  return {"double cover", cover <= 1e-12 && homomorphism <= 1e-10, d.str()};
}

SuiteResult chart_round_trips(std::uint64_t seed, const Tolerances& tol) {
  std::mt19937_64 rng(seed);
  double torus = 0.0, ball = 0.0, agree = 0.0;
  int tested = 0;
  while (tested < 1000) {
    const UnitQuaterniond q = random_quaternion(rng);
    const RotationMatrixd r = quat_to_matrix(q);
    const TorusChartPoint c = chart_forward(r, tol);
    if (c.alpha > kPi - 0.05) continue;
    ++tested;
    const Mat3 via_torus = chart_inverse(c).matrix();
    const Mat3 via_ball = quat_to_matrix(from_ball(to_ball(q, tol), tol)).matrix();
    torus = std::max(torus, (via_torus - r.matrix()).cwiseAbs().maxCoeff());
    ball = std::max(ball, (via_ball - r.matrix()).cwiseAbs().maxCoeff());
    agree = std::max(agree, (via_ball - via_torus).cwiseAbs().maxCoeff());
  }
  std::ostringstream d;
  d << "torus " << torus << ", ball " << ball << ", torus vs ball " << agree;
  return {"chart round trips", torus <= 1e-8 && ball <= 1e-9 && agree <= 1e-8, d.str()};
}

SuiteResult winding_law(std::uint64_t, const Tolerances& tol) {
  const int s = identification_sign();
  double worst = 0.0;
  for (int i = 0; i < 24; ++i) {
    const double lambda = 2.0 * kPi * i / 24.0;
    for (int j = 0; j < 8; ++j) {
      const double phi = 2.0 * kPi * j / 8.0;
      const Mat3 a = boundary_limit_rotation(lambda, phi, tol).matrix();
      const Mat3 b =
          boundary_limit_rotation(0.0, wrap_two_pi(phi + 2.0 * s * lambda), tol).matrix();
      worst = std::max(worst, (a - b).cwiseAbs().maxCoeff());
    }
  }
  std::ostringstream d;
  d << "sign s = " << s << ", max entry difference " << worst;
  return {"winding identification", worst <= tol.boundary_match, d.str()};
}

SuiteResult group_laws(std::uint64_t seed, const Tolerances& tol) {
  std::mt19937_64 rng(seed);
  std::vector<Loop> corpus;
  for (std::uint64_t i = 0; i < 120; ++i) corpus.push_back(random_loop(seed * 7919 + i, 1 + i % 4, tol));
  int failures = 0;
  for (std::size_t i = 0; i + 1 < corpus.size(); ++i) {
    const Loop& a = corpus[i];
    const Loop& b = corpus[i + 1];
    if (classify(concat(a, b, tol), tol) != classify(a, tol) * classify(b, tol)) ++failures;
    if (classify(reverse(a), tol) != classify(a, tol)) ++failures;
  }
  if (!classify(constant_loop(), tol).is_trivial()) ++failures;
  for (int i = 0; i < 20; ++i) {
    const Vec3 axis = random_axis(rng);
    if (classify(axis_loop(axis, 2.0 * kPi, 200), tol).is_trivial()) ++failures;
    if (!classify(axis_loop(axis, 4.0 * kPi, 400), tol).is_trivial()) ++failures;
  }
  return {"classifier group laws", failures == 0, std::to_string(failures) + " violations"};
}

SuiteResult oracle_equivalence(std::uint64_t seed, const Tolerances& tol) {
  int disagreements = 0, total = 0;
  for (std::uint64_t i = 0; i < 300; ++i) {
    const Loop loop = random_loop(seed * 104729 + i, 1 + i % 5, tol);
    ++total;
    if (classify(loop, tol) != crossing_parity(loop, tol)) ++disagreements;
  }
  return {"oracle equivalence", disagreements == 0,
          std::to_string(disagreements) + " of " + std::to_string(total) + " loops disagree"};
}

SuiteResult contraction(std::uint64_t seed, const Tolerances& tol) {
  int failures = 0, contracted = 0;
  const Loop once = axis_loop(Vec3::UnitZ(), 2.0 * kPi, 200);
  const Loop twice = concat(once, once, tol);
  if (!verify_homotopy(contract(twice, seed, tol), twice, tol).passed) ++failures;
  ++contracted;
  try {
    (void)contract(once, seed, tol);
    ++failures;
  } catch (const NotNullHomotopic&) {
  }
  for (std::uint64_t i = 0; contracted < 10 && i < 100; ++i) {
    const Loop loop = random_loop(seed * 15485863 + i, 1 + i % 3, tol);
    if (!classify(loop, tol).is_trivial()) continue;
    if (!verify_homotopy(contract(loop, seed + i, tol), loop, tol).passed) ++failures;
    ++contracted;
  }
  return {"contraction validity", failures == 0,
          std::to_string(contracted) + " loops contracted, " + std::to_string(failures) +
              " failures"};
}

SuiteResult belt_trick(std::uint64_t seed, const Tolerances& tol) {
  BeltState belt = rotate_object(new_belt(), Vec3::UnitZ(), 2.0 * kPi, tol);
  bool ok = !untwistable(belt, tol);
  belt = rotate_object(belt, Vec3::UnitX(), 2.0 * kPi, tol);
  ok = ok && untwistable(belt, tol);
  if (ok) {
    const HomotopyGrid movie = untwist(belt, seed, tol);
    ok = verify_homotopy(movie, ribbon_loop(belt, nullptr, tol), tol).passed;
  }
  return {"belt trick", ok, ok ? "2pi twisted, 4pi untwisted" : "belt behaved incorrectly"};
}

}  // namespace

bool SelfCheckReport::all_passed() const {
  return std::all_of(suites.begin(), suites.end(), [](const SuiteResult& r) { return r.passed; });
}

SelfCheckReport run_self_checks(std::uint64_t seed, const Tolerances& tol) {
  using Suite = SuiteResult (*)(std::uint64_t, const Tolerances&);
  const std::vector<std::pair<const char*, Suite>> suites = {
      {"double cover", double_cover},
      {"chart round trips", chart_round_trips},
      {"winding identification", winding_law},
      {"classifier group laws", group_laws},
      {"oracle equivalence", oracle_equivalence},
      {"contraction validity", contraction},
      {"belt trick", belt_trick},
  };
  std::vector<std::future<SuiteResult>> running;
  running.reserve(suites.size());
  for (const auto& [name, fn] : suites) {
    running.push_back(std::async(std::launch::async, [fn = fn, name = name, seed, &tol] {
      try {
        return fn(seed, tol);
      } catch (const std::exception& e) {
        return SuiteResult{name, false, std::string("threw: ") + e.what()};
      }
    }));
  }
  SelfCheckReport report;
  for (auto& f : running) report.suites.push_back(f.get());
  report.identification_sign = identification_sign();
  return report;
}

}  // namespace so3
