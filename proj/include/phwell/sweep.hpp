#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "phwell/random_system.hpp"

namespace phwell {

struct SweepResult {
  int count = 0;
  int discrepancies = 0;
  int contractions = 0;
  int unitary = 0;
  std::vector<std::string> failures;  ///< one line per discrepant instance
  double seconds = 0.0;
};

/// Analyzes `count` random systems of class `cls`. Interval systems draw
/// N <= 3, d <= 4; half-line systems draw d <= 6. Instance i uses seed
/// derived from (seed, i), so results do not depend on evaluation order.
SweepResult run_sweep(int count, std::uint64_t seed, SystemClass cls);

/// Seed of instance i in a sweep.
std::uint64_t instance_seed(std::uint64_t seed, int i);

}  // namespace phwell
