#pragma once

// The invariant suites behind `so3tool verify`.

#include <cstdint>
#include <string>
#include <vector>

#include "so3topo/tolerances.hpp"

namespace so3 {

struct SuiteResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct SelfCheckReport {
  std::vector<SuiteResult> suites;
  int identification_sign = 0;

  bool all_passed() const;
};

/// Runs every suite on a corpus drawn from `seed`. Suites run concurrently.
SelfCheckReport run_self_checks(std::uint64_t seed = 1,
                                const Tolerances& tol = Tolerances::defaults());

}  // namespace so3
