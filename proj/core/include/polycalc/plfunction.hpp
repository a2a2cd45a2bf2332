#pragma once

// Proper piecewise-linear convex functions, stored as epigraph polyhedra, and
// their conjugate and subdifferential calculus.

#include <cstddef>
#include <optional>
#include <vector>

#include "polycalc/hpolyhedron.hpp"
#include "polycalc/polyhedra.hpp"
#include "polycalc/rational.hpp"
#include "polycalc/supports.hpp"

namespace polycalc {

// x ↦ A x + shift.
struct LinearMap {
  Matrix a;
  std::size_t cols = 0;
  Vec shift;

  LinearMap() = default;
  LinearMap(Matrix a, std::size_t cols);
  LinearMap(Matrix a, std::size_t cols, Vec shift);

  static LinearMap identity(std::size_t n);
  static LinearMap zero(std::size_t rows, std::size_t cols);

  std::size_t rows() const { return a.size(); }
  bool is_linear() const { return is_zero(shift); }
  Vec apply(VecView x) const;
  Matrix adjoint() const { return transpose(a, cols); }
};

class PLFunction {
 public:
  PLFunction() = default;
  // epi lives in dim + 1 variables, the last one being the height. Throws
  // EmptyInput for an empty epigraph and InvalidOperation when the set is not
  // an epigraph or the function takes the value -inf.
  PLFunction(std::size_t dim, const HPolyhedron& epi);

  // x ↦ max_i ⟨a_i, x⟩ + b_i on the given domain.
  static PLFunction max_affine(const std::vector<Row>& pieces,
                               const HPolyhedron& domain);
  static PLFunction indicator(const HPolyhedron& set);
  static PLFunction affine(Vec c, Rational b);

  std::size_t dim() const { return dim_; }
  const HPolyhedron& epi() const { return epi_; }
  HPolyhedron domain() const;

  friend bool operator==(const PLFunction&, const PLFunction&) = default;

 private:
  std::size_t dim_ = 0;
  HPolyhedron epi_;
};

ExtReal evaluate(const PLFunction& f, VecView x);

// f*(x*) = σ_epi f(x*, -1).
ExtReal conjugate_value(const PLFunction& f, VecView xstar);
// f* assembled from the generators of epi f.
PLFunction conjugate_closed_form(const PLFunction& f);
PLFunction biconjugate(const PLFunction& f);

// epi(f ⊕ g) = epi f + epi g. Throws ImproperResult when the result takes
// the value -inf.
PLFunction inf_convolution(const PLFunction& f, const PLFunction& g);
// inf over u of f(u) + g(x - u); +inf when no split is feasible.
ExtReal inf_convolution_value(const PLFunction& f, const PLFunction& g,
                              VecView x);

// ∂f(x̄) = {x* : (x*, -1) ∈ N((x̄, f(x̄)); epi f)}. Throws NotInDomain.
HPolyhedron subdifferential(const PLFunction& f, VecView xbar);

// Throws EmptyCommonDomain.
PLFunction sum(const PLFunction& f, const PLFunction& g);
// f ∨ g; epi(f ∨ g) = epi f ∩ epi g. Throws EmptyCommonDomain.
PLFunction pointwise_max(const PLFunction& f, const PLFunction& g);
// x ↦ g(A x + shift). Throws InfeasibleComposition.
PLFunction compose(const PLFunction& g, const LinearMap& a);
// λ f for λ ≥ 0, with 0 f = δ_dom f.
PLFunction scale(const PLFunction& f, const Rational& lambda);
// λ f + (1 - λ) g for λ ∈ [0, 1].
PLFunction convex_combination(const PLFunction& f, const PLFunction& g,
                              const Rational& lambda);

struct ConjugateSumResult {
  ExtReal lhs;  // (f + g)*(x*)
  // Attaining split x* = x1* + x2*; absent when lhs = +inf.
  std::optional<Vec> x1star;
  std::optional<Vec> x2star;
  // f*(x1*) + g*(x2*), or +inf when lhs = +inf.
  ExtReal rhs;
  QCReport qc;  // on dom f and dom g
};

// Throws EmptyCommonDomain.
ConjugateSumResult conjugate_sum_rule(const PLFunction& f, const PLFunction& g,
                                      VecView xstar);

struct ConjugateChainResult {
  ExtReal lhs;  // (g ∘ A)*(x*)
  // y* with Aᵀy* = x*; absent when lhs = +inf.
  std::optional<Vec> ystar;
  // g*(y*) - ⟨y*, shift⟩, or +inf when lhs = +inf.
  ExtReal rhs;
  QCReport qc;  // on A X + shift and dom g
};

// Throws InfeasibleComposition.
ConjugateChainResult conjugate_chain_rule(const PLFunction& g,
                                          const LinearMap& a, VecView xstar);

struct ConjugateMaxResult {
  ExtReal lhs;  // (f ∨ g)*(x*)
  std::optional<Rational> lambda;
  std::optional<Vec> x1star;
  std::optional<Vec> x2star;
  // [λ f + (1 - λ) g]*(x*), or +inf when lhs = +inf.
  ExtReal rhs;
  QCReport qc;
};

// Throws EmptyCommonDomain.
ConjugateMaxResult conjugate_max_rule(const PLFunction& f, const PLFunction& g,
                                      VecView xstar);

struct SetRuleResult {
  HPolyhedron lhs;
  HPolyhedron rhs;
  bool equal = false;
};

// ∂(f + g)(x̄) against ∂f(x̄) + ∂g(x̄). Throws NotInDomain.
SetRuleResult subdiff_sum_rule(const PLFunction& f, const PLFunction& g,
                               VecView xbar);
// ∂(g ∘ A)(x̄) against Aᵀ ∂g(A x̄ + shift). Throws NotInDomain.
SetRuleResult subdiff_chain_rule(const PLFunction& g, const LinearMap& a,
                                 VecView xbar);

enum class MaxCase { kFirstActive, kSecondActive, kBothActive };

struct MaxRuleResult {
  MaxCase which = MaxCase::kBothActive;
  // Upper semicontinuity of the inactive function at x̄ (x̄ ∈ int of its
  // domain). Always true in the tie case, where it is not needed.
  bool inactive_usc = true;
  HPolyhedron lhs;
  HPolyhedron rhs;
  bool equal = false;
};

// Throws NotInDomain.
MaxRuleResult subdiff_max_rule(const PLFunction& f, const PLFunction& g,
                               VecView xbar);

// Closed convex hull of P ∪ Q for nonempty P, Q.
HPolyhedron closed_convex_hull(const HPolyhedron& p, const HPolyhedron& q);

}  // namespace polycalc
