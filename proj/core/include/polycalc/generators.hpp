#pragma once

// Seeded random instances. Every instance is built around planted points so
// the preconditions of its rule hold by construction: common points for
// intersections, box rows for boundedness, graph points for coderivatives.

#include <cstddef>
#include <cstdint>
#include <optional>

#include "polycalc/instance.hpp"
#include "polycalc/random.hpp"

namespace polycalc {

struct GeneratorOptions {
  std::size_t dim_lo = 1;
  std::size_t dim_hi = 3;
  // Random rows added on top of the bounding box of each set.
  std::size_t budget = 3;
  std::size_t attempts = 8;
};

// Instance `index` of the stream for (kind, seed). Returns nullopt when no
// well-posed instance came out of the allowed attempts.
std::optional<Instance> generate_instance(Kind kind, std::uint64_t seed,
                                          std::size_t index,
                                          const GeneratorOptions& options);

// Building blocks, exposed for tests.
Vec random_vec(Rng& rng, std::size_t n, long lo, long hi);
Vec random_nonzero_vec(Rng& rng, std::size_t n, long lo, long hi);
// A polytope containing `planted`: a box with half-widths in [1, 3] (the
// upper side may be 0 when `tight`) plus `budget` rows with slack in [0, 2]
// when `tight` and [1, 2] otherwise.
HPolyhedron random_polytope(Rng& rng, VecView planted, std::size_t budget,
                            bool tight);

}  // namespace polycalc
