#pragma once

// Seeded integer draws. Each (seed, stream, index) triple owns its own
// engine, so instance i of a run never depends on how many draws instance
// i - 1 made, and evaluation order cannot change the output.

#include <cstdint>
#include <random>

namespace polycalc {

class Rng {
 public:
  Rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index);

  // Uniform on [lo, hi]; the mapping from engine output is fixed here
  // because std distributions are not portable across standard libraries.
  long uniform(long lo, long hi);
  bool coin() { return uniform(0, 1) == 1; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace polycalc
