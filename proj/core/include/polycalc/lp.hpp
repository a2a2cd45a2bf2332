#pragma once

#include <optional>
#include <variant>

#include "polycalc/hpolyhedron.hpp"
#include "polycalc/rational.hpp"

namespace polycalc {

enum class Sense { kMaximize, kMinimize };

// Multipliers always refer to the maximization of s·w where s = +1 for
// kMaximize and s = -1 for kMinimize:
//   s·w = Aᵀλ + Eᵀμ,  λ ≥ 0,  s·value = bᵀλ + cᵀμ,
// and λ_i (b_i - ⟨a_i, point⟩) = 0 for every inequality row.
struct LpOptimal {
  Rational value;
  Vec point;
  Vec ineq_duals;
  Vec eq_duals;
};

// `point` is feasible; point + t·ray stays feasible for all t ≥ 0 and the
// objective strictly improves along ray.
struct LpUnbounded {
  Vec point;
  Vec ray;
};

// Farkas certificate: Aᵀy + Eᵀz = 0, y ≥ 0, bᵀy + cᵀz < 0.
struct LpInfeasible {
  Vec ineq_multipliers;
  Vec eq_multipliers;
};

using LpResult = std::variant<LpOptimal, LpUnbounded, LpInfeasible>;

// Two-phase dense-tableau simplex over exact rationals with Bland's rule.
// Deterministic: identical input yields identical output.
LpResult solve_lp(VecView objective, Sense sense, const HPolyhedron& p);

// Re-checks a result by direct substitution (duality, slackness, ray and
// Farkas conditions). Used by tests and by the harness.
bool verify_lp_result(VecView objective, Sense sense, const HPolyhedron& p,
                      const LpResult& result);

std::optional<Vec> feasible_point(const HPolyhedron& p);
bool is_feasible(const HPolyhedron& p);

// ⟨a, x⟩ ≤ b on all of a nonempty P, decided on the dual side: some y ≥ 0
// and z with Aᵀy + Eᵀz = a and bᵀy + cᵀz ≤ b. That system has only dim P
// rows, which makes it far cheaper than maximizing over P. The certificate
// is re-checked before returning true.
bool implies(const HPolyhedron& p, VecView a, const Rational& b);

}  // namespace polycalc
