#pragma once

#include <cstddef>
#include <vector>

#include "polycalc/rational.hpp"

namespace polycalc {

// Minimal generators of a polyhedral cone: extreme rays (primitive integer
// vectors, modulo the lineality space) and a lineality basis.
struct ConeGenerators {
  std::vector<Vec> rays;
  std::vector<Vec> lineality;
};

// Motzkin double description for C = {z ∈ Q^dim : ⟨h, z⟩ ≤ 0 (h ∈ ineq),
// ⟨e, z⟩ = 0 (e ∈ eq)}. Constraints are added one at a time starting from the
// whole space; adjacency uses the combinatorial zero-set test.
ConeGenerators cone_generators(std::size_t dim, const std::vector<Vec>& ineq,
                               const std::vector<Vec>& eq);

}  // namespace polycalc
