#pragma once

// Support functions, normal cones, extremality and the intersection rules for
// supports and normals.

#include <optional>

#include "polycalc/hpolyhedron.hpp"
#include "polycalc/polyhedra.hpp"
#include "polycalc/rational.hpp"

namespace polycalc {

struct SupportValue {
  enum class Witness { kMaximizer, kUnboundedRay, kEmptySet };

  ExtReal value;
  Witness witness = Witness::kEmptySet;
  // Maximizer point or recession direction; empty for kEmptySet.
  Vec witness_vector;
};

// σ_Ω(x*). The empty set yields -inf.
SupportValue support(const HPolyhedron& omega, VecView xstar);

// N(x̄; Ω), generated by the active inequality rows and ± the equality rows.
// Throws NotInSet if x̄ ∉ Ω.
PolyhedralCone normal_cone(const HPolyhedron& omega, VecView xbar);

// 0 ∉ int(Ω1 - Ω2). Throws EmptyInput if either set is empty.
bool is_extremal_system(const HPolyhedron& omega1, const HPolyhedron& omega2);

struct ExtremalWitness {
  Vec translation;  // a with (Ω1 + a) ∩ Ω2 = ∅
  Vec separator;    // x* ≠ 0
  Rational sup_value;  // sup over Ω1 of ⟨x*, ·⟩
  Rational inf_value;  // inf over Ω2 of ⟨x*, ·⟩
};

// Separates an extremal pair whose difference is solid. The separator is the
// lexicographically least canonical facet normal of Ω1 - Ω2 that certifies
// sup ≤ inf; the translation is -c/k for c = x*/‖x*‖∞ and the least k ≥ 1
// whose disjointness is certified by LP. Throws NotExtremal or NotSolid.
ExtremalWitness separate(const HPolyhedron& omega1, const HPolyhedron& omega2);

// Qualification conditions for the intersection rules.
struct QCReport {
  bool difference_interiority = false;  // 0 ∈ int(Ω1 - Ω2)
  bool omega2_bounded = false;
  bool interiority_1_meets_2 = false;   // (int Ω1) ∩ Ω2 ≠ ∅
  bool interiority_2_meets_1 = false;   // (int Ω2) ∩ Ω1 ≠ ∅
  bool attouch_brezis = false;          // cone(Ω1 - Ω2) is a subspace
  // 0 ∈ int(Ω1 - (Ω2 ∩ V)) with V the unit L∞ box around x̄; only computed
  // when x̄ is supplied.
  std::optional<bool> localized_interiority;
  bool any_holds = false;
};

// Without x̄, any_holds follows the support-intersection rule (difference
// interiority needs Ω2 bounded); with x̄ it follows the normal-cone rule,
// where the localized condition replaces the bounded one.
QCReport check_qualification(const HPolyhedron& omega1,
                             const HPolyhedron& omega2,
                             const std::optional<Vec>& xbar = std::nullopt);

struct SupportDecomposition {
  ExtReal value;
  // x* = x1* + x2* with σ_Ω1(x1*) + σ_Ω2(x2*) = value; absent when the value
  // is +inf.
  std::optional<Vec> x1star;
  std::optional<Vec> x2star;
};

// σ_{Ω1∩Ω2}(x*) with an attaining split read off the LP dual multipliers of
// the stacked system. Throws EmptyIntersection.
SupportDecomposition support_intersection(const HPolyhedron& omega1,
                                          const HPolyhedron& omega2,
                                          VecView xstar);

struct ExtRealPair {
  ExtReal lhs;
  ExtReal rhs;
};

// lhs = (σ_Ω1 ⊕ σ_Ω2)*(x), maximized over the generators of the dual
// multiplier cone; rhs = δ_{Ω1∩Ω2}(x). Throws EmptyIntersection.
ExtRealPair support_conv_conjugate_check(const HPolyhedron& omega1,
                                         const HPolyhedron& omega2, VecView x);

struct NormalIntersection {
  PolyhedralCone lhs;  // N(x̄; Ω1 ∩ Ω2)
  PolyhedralCone rhs;  // N(x̄; Ω1) + N(x̄; Ω2)
  bool equal = false;
  QCReport qc;
};

// Throws NotInSet if x̄ ∉ Ω1 ∩ Ω2.
NormalIntersection normal_intersection_rule(const HPolyhedron& omega1,
                                            const HPolyhedron& omega2,
                                            VecView xbar);

}  // namespace polycalc
