#pragma once

// Optimal value functions μ(x) = inf{φ(x, y) : y ∈ F(x)}, their conjugates
// and subdifferentials, and the chain rule for nondecreasing compositions in
// ordered spaces.

#include <optional>

#include "polycalc/multimap.hpp"
#include "polycalc/plfunction.hpp"
#include "polycalc/polyhedra.hpp"

namespace polycalc {

class MarginalProblem {
 public:
  MarginalProblem() = default;
  // φ lives on n + m variables and F: Q^n ⇉ Q^m. Throws EmptyInput when
  // dom φ misses gph F and MinusInfinityDetected when μ takes the value
  // -inf somewhere.
  MarginalProblem(PLFunction phi, Multimap f);

  const PLFunction& phi() const { return phi_; }
  const Multimap& f() const { return f_; }
  std::size_t n() const { return f_.n(); }
  std::size_t m() const { return f_.m(); }
  // φ + δ_gph F on the n + m variables.
  const PLFunction& joint() const { return joint_; }

 private:
  PLFunction phi_;
  Multimap f_;
  PLFunction joint_;
};

// Inner LP over the section at x; +inf outside dom μ.
ExtReal marginal_value(const MarginalProblem& p, VecView x);
// epi μ as the projection of epi(φ + δ_gph F) that eliminates y.
PLFunction marginal_closed_form(const MarginalProblem& p);
// M(x) = {y ∈ F(x) : φ(x, y) = μ(x)}. Throws NotInDomain.
HPolyhedron solution_map(const MarginalProblem& p, VecView x);

// Qualification conditions: φ continuous at a point of gph F (read as
// int(dom φ) ∩ gph F ≠ ∅) and the Attouch–Brézis condition on
// dom φ - gph F.
struct MarginalQC {
  bool continuity = false;
  bool attouch_brezis = false;
  bool any_holds = false;
};

MarginalQC marginal_qualification(const MarginalProblem& p);

struct MarginalConjugateResult {
  ExtReal mu_star;          // μ*(x*) from the closed form
  ExtReal via_sum;          // (φ + δ_gph F)*(x*, 0)
  ExtReal via_convolution;  // (φ* ⊕ σ_gph F)(x*, 0) at the attaining split
  // (x*, 0) = u1* + u2* with φ*(u1*) + σ_gph F(u2*) = via_convolution.
  std::optional<Vec> phi_part;
  std::optional<Vec> graph_part;
  MarginalQC qc;
};

MarginalConjugateResult marginal_conjugate(const MarginalProblem& p,
                                           VecView xstar);

struct MarginalSubdiffResult {
  HPolyhedron lhs;           // ∂μ(x̄) from the closed form
  HPolyhedron sum_form;      // {x* : (x*, 0) ∈ ∂(φ + δ_gph F)(x̄, ȳ)}
  HPolyhedron rhs;           // union of x* + D*F(x̄, ȳ)(y*) over ∂φ(x̄, ȳ)
  LinearImageReading reading;  // rhs as a linear image
  // Union of D*F(x̄, ȳ)(y*) over y* ∈ ∂ψ(ȳ), present when φ(x, y) = ψ(y).
  std::optional<HPolyhedron> independent_form;
  bool equal = false;
  MarginalQC qc;
};

// Throws NotASolution if ȳ ∉ M(x̄).
MarginalSubdiffResult marginal_subdifferential(const MarginalProblem& p,
                                               VecView xbar, VecView ybar);

// ψ with φ(x, y) = ψ(y), when φ does not depend on x.
std::optional<PLFunction> cost_without_x(const MarginalProblem& p);

class OrderedChainProblem {
 public:
  OrderedChainProblem() = default;
  // f(x) = A x + shift maps into the space ordered by Y₊ on which φ lives.
  // Throws MonotonicityViolation unless φ is Y₊-nondecreasing.
  OrderedChainProblem(PolyhedralCone yplus, LinearMap f, PLFunction phi);

  const PolyhedralCone& yplus() const { return yplus_; }
  const LinearMap& f() const { return f_; }
  const PLFunction& phi() const { return phi_; }
  // F(x) = {y : f(x) ≺ y}.
  Multimap epigraphical_map() const;

 private:
  PolyhedralCone yplus_;
  LinearMap f_;
  PLFunction phi_;
};

// φ is Y₊-nondecreasing iff (-z, 0) is a recession direction of epi φ for
// every generator z of Y₊.
bool is_nondecreasing(const PolyhedralCone& yplus, const PLFunction& phi);

struct OrderedChainResult {
  HPolyhedron lhs;            // ∂(φ ∘ f)(x̄)
  HPolyhedron rhs;            // union over ∂φ(f(x̄)) of D*F(x̄, f(x̄))(y*)
  HPolyhedron adjoint_form;   // Aᵀ ∂φ(f(x̄)), the union of ∂(y* ∘ f)(x̄)
  LinearImageReading reading;
  // ⟨y*, z⟩ ≥ 0 for every generator y* of ∂φ(f(x̄)) and z of Y₊.
  bool subgradients_nonnegative = false;
  bool equal = false;
};

// Throws NotInDomain.
OrderedChainResult ordered_chain_rule(const OrderedChainProblem& q,
                                      VecView xbar);

// D*F(x̄, f(x̄))(y*) against ∂(y* ∘ f)(x̄) = {Aᵀy*}. Throws NotASubgradient
// when y* ∉ ∂φ(f(x̄)).
SetRuleResult epigraphical_coderivative_check(const OrderedChainProblem& q,
                                              VecView xbar, VecView ystar);

}  // namespace polycalc
