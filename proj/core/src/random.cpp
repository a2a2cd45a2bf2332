#include "polycalc/random.hpp"

#include <limits>

namespace polycalc {

Rng::Rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  auto words = [](std::uint64_t v) {
    return std::pair<std::uint32_t, std::uint32_t>(
        static_cast<std::uint32_t>(v), static_cast<std::uint32_t>(v >> 32));
  };
  const auto [s0, s1] = words(seed);
  const auto [t0, t1] = words(stream);
  const auto [i0, i1] = words(index);
  std::seed_seq seq{s0, s1, t0, t1, i0, i1};
  engine_.seed(seq);
}

long Rng::uniform(long lo, long hi) {
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  // Rejection keeps the draw exactly uniform.
  const std::uint64_t limit =
      std::numeric_limits<std::uint64_t>::max() -
      std::numeric_limits<std::uint64_t>::max() % span;
  std::uint64_t x = engine_();
  while (x >= limit) x = engine_();
  return lo + static_cast<long>(x % span);
}

}  // namespace polycalc
