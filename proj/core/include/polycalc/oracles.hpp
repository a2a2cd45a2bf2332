#pragma once

// Brute-force cross-checks that work from vertex/ray enumeration only and
// never call the LP-based routines they are meant to confirm.

#include <cstdint>
#include <string>
#include <vector>

#include "polycalc/hpolyhedron.hpp"
#include "polycalc/multimap.hpp"
#include "polycalc/plfunction.hpp"
#include "polycalc/rational.hpp"

namespace polycalc {

struct OracleMismatch {
  std::string input;
  std::string main_value;
  std::string oracle_value;

  friend bool operator==(const OracleMismatch&, const OracleMismatch&) = default;
};

struct OracleReport {
  std::size_t checked = 0;
  std::vector<OracleMismatch> mismatches;

  bool ok() const { return mismatches.empty(); }
  void merge(const OracleReport& other);
};

// max over the generators of Ω; -inf for the empty set.
ExtReal support_oracle(const HPolyhedron& omega, VecView xstar);

// sup over epi f generators of ⟨x*, v⟩ - t.
ExtReal conjugate_oracle(const PLFunction& f, VecView xstar);

// f(x) as the largest lower bound on t over the epigraph rows.
ExtReal value_oracle(const PLFunction& f, VecView x);

// The subgradient inequality tested at every generator of epi f. Throws
// NotInDomain when x̄ ∉ dom f.
bool subgradient_oracle(const PLFunction& f, VecView xbar, VecView xstar);

// Samples points of the preimage and checks that their images land in the
// computed set, then recovers a preimage witness for every vertex of the
// image. An empty preimage is a vacuous pass.
OracleReport decomposition_sampler(const LinearImageReading& reading,
                                   std::uint64_t seed, std::size_t count);

}  // namespace polycalc
