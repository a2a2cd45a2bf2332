#pragma once

// Polyhedral set algebra over exact rationals.
//
// Every function returning an HPolyhedron returns it in canonical form:
// primitive integer rows, equalities in reduced echelon form, inequalities
// reduced modulo the equalities, no redundant rows, lexicographic order.

#include <cstddef>
#include <optional>
#include <vector>

#include "polycalc/hpolyhedron.hpp"
#include "polycalc/rational.hpp"

namespace polycalc {

// conv(vertices) + cone(rays) + span(lineality). Vertices and rays are taken
// modulo the lineality space (they lie in its orthogonal complement).
struct Generators {
  std::size_t dim = 0;
  std::vector<Vec> vertices;
  std::vector<Vec> rays;
  std::vector<Vec> lineality;

  friend bool operator==(const Generators&, const Generators&) = default;
};

// An HPolyhedron whose every row has bound 0.
class PolyhedralCone {
 public:
  PolyhedralCone() = default;
  // Canonicalizes and throws InvalidOperation if some row keeps a nonzero
  // bound.
  explicit PolyhedralCone(const HPolyhedron& set);

  static PolyhedralCone zero(std::size_t dim);
  static PolyhedralCone whole(std::size_t dim);

  const HPolyhedron& set() const { return set_; }
  std::size_t dim() const { return set_.dim(); }

  friend bool operator==(const PolyhedralCone&,
                         const PolyhedralCone&) = default;

 private:
  HPolyhedron set_;
};

bool is_empty(const HPolyhedron& p);
bool is_bounded(const HPolyhedron& p);

// Row-level normalization only (no LP).
HPolyhedron normalize_rows(const HPolyhedron& p);
// normalize_rows plus LP-based emptiness detection and redundancy removal.
HPolyhedron canonicalize(const HPolyhedron& p);

// Shadow onto the coordinates in `keep` (result coordinates follow the order
// of `keep`). Equalities are used for substitution first, the remaining
// variables are removed by Fourier–Motzkin with LP redundancy pruning.
HPolyhedron project(const HPolyhedron& p, const std::vector<std::size_t>& keep);
// Projection onto the first `count` coordinates.
HPolyhedron project_prefix(const HPolyhedron& p, std::size_t count);

HPolyhedron minkowski_sum(const HPolyhedron& p, const HPolyhedron& q);
HPolyhedron minkowski_diff(const HPolyhedron& p, const HPolyhedron& q);

// {A x + shift : x ∈ P}; A has one row per output coordinate.
HPolyhedron affine_image(const HPolyhedron& p, const Matrix& a, VecView shift);
// {x : A x + shift ∈ P}; A has p.dim() rows and `cols` columns.
HPolyhedron affine_preimage(const HPolyhedron& p, const Matrix& a,
                            std::size_t cols, VecView shift);
// Same set as affine_preimage, by plain row substitution without
// canonicalization.
HPolyhedron affine_preimage_rows(const HPolyhedron& p, const Matrix& a,
                                 std::size_t cols, VecView shift);

// True iff an L∞ ball of positive radius around 0 lies in P. Any
// nontrivial equality means the interior is empty.
bool origin_in_interior(const HPolyhedron& p);
// A point x and radius r > 0 with x + [-r, r]^n ⊆ P, if the interior is
// nonempty.
struct InteriorWitness {
  Vec point;
  Rational radius;
};
std::optional<InteriorWitness> interior_point(const HPolyhedron& p);
bool has_interior(const HPolyhedron& p);
// int(P) ∩ Q ≠ ∅.
bool interior_meets(const HPolyhedron& p, const HPolyhedron& q);

// ri P ∩ ri Q ≠ ∅, equivalently cone(P - Q) is a linear subspace, decided
// by LP without forming P - Q.
bool relative_interiors_meet(const HPolyhedron& p, const HPolyhedron& q);
// 0 ∈ int(P - Q): P - Q is full-dimensional and the relative interiors meet.
bool origin_in_interior_of_difference(const HPolyhedron& p, const HPolyhedron& q);

// Closed cone generated by P: projection of the homogenization
// {(x, t) : Ax ≤ tb, Ex = tc, t ≥ 0}. Throws EmptyInput on empty P.
PolyhedralCone conic_hull(const HPolyhedron& p);
bool is_subspace(const PolyhedralCone& k);

// Throws EmptyInput on empty P.
Generators h_to_v(const HPolyhedron& p);
HPolyhedron v_to_h(const Generators& g);

// P ⊆ Q decided by one LP per row of Q; the empty set is a subset of all.
bool set_subset(const HPolyhedron& p, const HPolyhedron& q);
bool set_equal(const HPolyhedron& p, const HPolyhedron& q);

}  // namespace polycalc
