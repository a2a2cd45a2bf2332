#pragma once

#include <initializer_list>
#include <vector>

#include "polycalc/hpolyhedron.hpp"
#include "polycalc/plfunction.hpp"
#include "polycalc/polyhedra.hpp"
#include "polycalc/rational.hpp"

namespace polycalc::testing {

inline Rational q(const char* text) { return parse_rational(text); }

inline Vec vec(std::initializer_list<Rational> xs) { return Vec(xs); }

// Rows are written [a..., b] for a·x <= b.
inline HPolyhedron poly(std::size_t dim,
                        std::initializer_list<std::initializer_list<Rational>> ineq,
                        std::initializer_list<std::initializer_list<Rational>> eq = {}) {
  HPolyhedron p(dim);
  for (const auto& r : ineq) {
    Vec a(r);
    Rational b = a.back();
    a.pop_back();
    p.add_ineq(std::move(a), std::move(b));
  }
  for (const auto& r : eq) {
    Vec a(r);
    Rational b = a.back();
    a.pop_back();
    p.add_eq(std::move(a), std::move(b));
  }
  return p;
}

inline HPolyhedron interval(const Rational& lo, const Rational& hi) {
  return HPolyhedron::box(Vec{lo}, Vec{hi});
}

inline HPolyhedron square(const Rational& lo, const Rational& hi) {
  return HPolyhedron::box(Vec{lo, lo}, Vec{hi, hi});
}

// x ↦ max_i (a_i·x + b_i) on `domain`; pieces are written [a..., b].
inline PLFunction max_affine(std::initializer_list<std::initializer_list<Rational>> pieces,
                             const HPolyhedron& domain) {
  std::vector<Row> rows;
  for (const auto& r : pieces) {
    Vec a(r);
    Rational b = a.back();
    a.pop_back();
    rows.push_back({std::move(a), std::move(b)});
  }
  return PLFunction::max_affine(rows, domain);
}

inline PLFunction abs_fn() {
  return max_affine({{1, 0}, {-1, 0}}, HPolyhedron::universe(1));
}

// The cone generated by `gens` in dimension `dim`.
inline HPolyhedron cone_of(std::size_t dim, std::vector<Vec> gens) {
  Generators g;
  g.dim = dim;
  g.vertices.push_back(zeros(dim));
  g.rays = std::move(gens);
  return v_to_h(g);
}

}  // namespace polycalc::testing
