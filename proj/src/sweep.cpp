#include "phwell/sweep.hpp"

#include <chrono>

#include "phwell/halfline_checker.hpp"
#include "phwell/random.hpp"
#include "phwell/verdict.hpp"

namespace phwell {

std::uint64_t instance_seed(std::uint64_t seed, int i) {
  // splitmix64 of the pair, so neighbouring seeds give unrelated streams.
  std::uint64_t z = seed * 0x9E3779B97F4A7C15ULL + static_cast<std::uint64_t>(i) + 1;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

SweepResult run_sweep(int count, std::uint64_t seed, SystemClass cls) {
  const auto start = std::chrono::steady_clock::now();
  SweepResult out;
  for (int i = 0; i < count; ++i) {
    const std::uint64_t s = instance_seed(seed, i);
    Rng dims(s ^ 0xD1B54A32D192ED03ULL);
    int N = 1;
    int d = 1;
    if (cls == SystemClass::halfline) {
      d = dims.integer(1, 6);
    } else {
      N = dims.integer(1, 3);
      d = dims.integer(1, 4);
    }
    const Verdict v = analyze(random_system(s, N, d, cls));
    ++out.count;
    if (v.consensus == Consensus::contraction) ++out.contractions;
    if (v.unitary == UnitaryConsensus::unitary) ++out.unitary;
    if (v.discrepancy) {
      ++out.discrepancies;
      out.failures.push_back("instance " + std::to_string(i) + " (seed " + std::to_string(s) + ", N=" +
                             std::to_string(N) + ", d=" + std::to_string(d) + ")");
    }
  }
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

}  // namespace phwell
