#pragma once

// Convex-graph set-valued mappings and coderivative calculus.

#include <cstddef>
#include <optional>
#include <utility>

#include "polycalc/hpolyhedron.hpp"
#include "polycalc/plfunction.hpp"
#include "polycalc/polyhedra.hpp"
#include "polycalc/rational.hpp"

namespace polycalc {

// F: Q^n ⇉ Q^m given by its graph in the variables (x, y).
class Multimap {
 public:
  Multimap() = default;
  // Canonicalizes the graph; throws EmptyInput when it is empty.
  Multimap(std::size_t n, std::size_t m, const HPolyhedron& graph);

  // Graph of x ↦ {A x + shift}.
  static Multimap linear(const LinearMap& a);

  std::size_t n() const { return n_; }
  std::size_t m() const { return m_; }
  const HPolyhedron& graph() const { return graph_; }
  HPolyhedron domain() const;
  HPolyhedron range() const;
  bool in_graph(VecView x, VecView y) const;

  friend bool operator==(const Multimap&, const Multimap&) = default;

 private:
  std::size_t n_ = 0;
  std::size_t m_ = 0;
  HPolyhedron graph_;
};

// D*F(x̄, ȳ)(y*) = {x* : (x*, -y*) ∈ N((x̄, ȳ); gph F)}; may be empty.
// Throws NotInGraph.
HPolyhedron coderivative(const Multimap& f, VecView xbar, VecView ybar,
                         VecView ystar);

// Throws EmptyDomainIntersection.
Multimap sum(const Multimap& f1, const Multimap& f2);
// S(x̄, ȳ) = {(ȳ1, ȳ2) : ȳ = ȳ1 + ȳ2, ȳi ∈ Fi(x̄)} in 2m variables.
HPolyhedron sum_decompositions(const Multimap& f1, const Multimap& f2,
                               VecView xbar, VecView ybar);
// Lexicographically least vertex of S(x̄, ȳ), if S is nonempty.
std::optional<std::pair<Vec, Vec>> least_decomposition(const Multimap& f1,
                                                       const Multimap& f2,
                                                       VecView xbar,
                                                       VecView ybar);

// x ↦ G(F(x)).
Multimap compose(const Multimap& g, const Multimap& f);
// x ↦ F1(x) ∩ F2(x).
Multimap intersect(const Multimap& f1, const Multimap& f2);

struct CoderivativeQC {
  bool interior_condition = false;
  bool attouch_brezis = false;
  bool any_holds = false;
};

// A union over splits represented as the linear image of one polyhedron:
// image = {map · p : p ∈ preimage}.
struct LinearImageReading {
  HPolyhedron preimage;
  Matrix map;
  HPolyhedron image;
};

struct CoderivativeRuleResult {
  HPolyhedron lhs;
  HPolyhedron rhs;
  bool equal = false;
  CoderivativeQC qc;
  LinearImageReading reading;
};

// D*(F1 + F2)(x̄, ȳ)(y*) against D*F1(x̄, ȳ1)(y*) + D*F2(x̄, ȳ2)(y*).
// Throws NotADecomposition.
CoderivativeRuleResult coderivative_sum_rule(const Multimap& f1,
                                             const Multimap& f2, VecView xbar,
                                             VecView ybar, VecView y1bar,
                                             VecView y2bar, VecView ystar);
// Same, with `total` = F1 + F2 already formed; building it is the costly
// part when several probes share the maps.
CoderivativeRuleResult coderivative_sum_rule(const Multimap& f1,
                                             const Multimap& f2,
                                             const Multimap& total, VecView xbar,
                                             VecView ybar, VecView y1bar,
                                             VecView y2bar, VecView ystar);

// D*(G ∘ F)(x̄, z̄)(z*) against D*F(x̄, ȳ)(D*G(ȳ, z̄)(z*)).
// Throws BadIntermediatePoint.
CoderivativeRuleResult coderivative_chain_rule(const Multimap& f,
                                               const Multimap& g, VecView xbar,
                                               VecView ybar, VecView zbar,
                                               VecView zstar);
// Same, with `composed` = G ∘ F already formed.
CoderivativeRuleResult coderivative_chain_rule(const Multimap& f,
                                               const Multimap& g,
                                               const Multimap& composed,
                                               VecView xbar, VecView ybar,
                                               VecView zbar, VecView zstar);

// D*(F1 ∩ F2)(x̄, ȳ)(y*) against the union over y1* + y2* = y* of
// D*F1(x̄, ȳ)(y1*) + D*F2(x̄, ȳ)(y2*). Throws NotInBothGraphs.
CoderivativeRuleResult coderivative_intersection_rule(const Multimap& f1,
                                                      const Multimap& f2,
                                                      VecView xbar,
                                                      VecView ybar,
                                                      VecView ystar);

}  // namespace polycalc
