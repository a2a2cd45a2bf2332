#pragma once

#include <cstddef>
#include <vector>

#include "polycalc/rational.hpp"

namespace polycalc {

// One linear row: ⟨a, x⟩ ≤ b in the inequality list, ⟨a, x⟩ = b in the
// equality list.
struct Row {
  Vec a;
  Rational b;

  friend bool operator==(const Row&, const Row&) = default;
};

// {x ∈ Q^dim : ⟨a_i, x⟩ ≤ b_i, ⟨e_j, x⟩ = c_j}. Emptiness is a property to be
// queried, not an invariant violation.
class HPolyhedron {
 public:
  HPolyhedron() = default;
  explicit HPolyhedron(std::size_t dim) : dim_(dim) {}
  HPolyhedron(std::size_t dim, std::vector<Row> ineq, std::vector<Row> eq);

  static HPolyhedron universe(std::size_t dim) { return HPolyhedron(dim); }
  static HPolyhedron empty(std::size_t dim);
  static HPolyhedron point(VecView p);
  // Axis-aligned box lo ≤ x ≤ hi.
  static HPolyhedron box(VecView lo, VecView hi);

  std::size_t dim() const { return dim_; }
  const std::vector<Row>& ineq() const { return ineq_; }
  const std::vector<Row>& eq() const { return eq_; }

  void add_ineq(Vec a, Rational b);
  void add_eq(Vec a, Rational b);

  bool contains(VecView x) const;

  // Stacks the rows of both systems.
  HPolyhedron intersect(const HPolyhedron& other) const;
  // P × Q with P's coordinates first.
  HPolyhedron product(const HPolyhedron& other) const;
  // Embeds into a larger space: coordinate i of this set becomes coordinate
  // positions[i] of a space of dimension new_dim; other coordinates are free.
  HPolyhedron lift(std::size_t new_dim,
                   const std::vector<std::size_t>& positions) const;
  // {-x : x ∈ P}.
  HPolyhedron reflect() const;

  // True for the canonical empty form (a single row 0 ≤ -1). Use
  // polyhedra::is_empty for the exact LP test.
  bool is_trivially_empty() const;

  friend bool operator==(const HPolyhedron&, const HPolyhedron&) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<Row> ineq_;
  std::vector<Row> eq_;
};

}  // namespace polycalc
