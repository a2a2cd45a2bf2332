#include "polycalc/multimap.hpp"

#include <numeric>

#include "polycalc/errors.hpp"
#include "polycalc/lp.hpp"
#include "polycalc/supports.hpp"

namespace polycalc {
namespace {

// Sets entry (r0 + i, c0 + i) to `coef` for i < len.
void put_diag(Matrix& m, std::size_t r0, std::size_t c0, std::size_t len,
              const Rational& coef) {
  for (std::size_t i = 0; i < len; ++i) m[r0 + i][c0 + i] = coef;
}

Matrix zero_matrix(std::size_t rows, std::size_t cols) {
  return Matrix(rows, zeros(cols));
}

std::vector<std::size_t> range_indices(std::size_t from, std::size_t count) {
  std::vector<std::size_t> r(count);
  std::iota(r.begin(), r.end(), from);
  return r;
}

// {(x*, y*) : (x*, -y*) ∈ N} for a cone N in n + m variables, as rows.
HPolyhedron flip_second_block(const HPolyhedron& cone, std::size_t n,
                              std::size_t m) {
  Matrix a = zero_matrix(n + m, n + m);
  put_diag(a, 0, 0, n, Rational(1));
  put_diag(a, n, n, m, Rational(-1));
  return affine_preimage_rows(cone, a, n + m, zeros(n + m));
}

}  // namespace

Multimap::Multimap(std::size_t n, std::size_t m, const HPolyhedron& graph)
    : n_(n), m_(m) {
  require_dim(graph.dim(), n + m, "Multimap graph");
  graph_ = canonicalize(graph);
  if (graph_.is_trivially_empty()) {
    fail(ErrorKind::kEmptyInput, "multimap graph is empty");
  }
}

Multimap Multimap::linear(const LinearMap& a) {
  const std::size_t n = a.cols;
  const std::size_t m = a.rows();
  HPolyhedron g(n + m);
  for (std::size_t i = 0; i < m; ++i) {
    g.add_eq(concat(negate(a.a[i]), unit(m, i)), a.shift[i]);
  }
  return Multimap(n, m, g);
}

HPolyhedron Multimap::domain() const { return project_prefix(graph_, n_); }

HPolyhedron Multimap::range() const {
  return project(graph_, range_indices(n_, m_));
}

bool Multimap::in_graph(VecView x, VecView y) const {
  require_dim(x.size(), n_, "Multimap x");
  require_dim(y.size(), m_, "Multimap y");
  return graph_.contains(concat(x, y));
}

HPolyhedron coderivative(const Multimap& f, VecView xbar, VecView ybar,
                         VecView ystar) {
  require_dim(ystar.size(), f.m(), "coderivative y*");
  if (!f.in_graph(xbar, ybar)) {
    fail(ErrorKind::kNotInGraph, "(x̄, ȳ) ∉ gph F");
  }
  const std::size_t n = f.n();
  const std::size_t m = f.m();
  const PolyhedralCone cone = normal_cone(f.graph(), concat(xbar, ybar));
  Matrix a = zero_matrix(n + m, n);
  put_diag(a, 0, 0, n, Rational(1));
  return affine_preimage(cone.set(), a, n, concat(zeros(n), negate(ystar)));
}

Multimap sum(const Multimap& f1, const Multimap& f2) {
  require_dim(f2.n(), f1.n(), "sum of multimaps (n)");
  require_dim(f2.m(), f1.m(), "sum of multimaps (m)");
  const std::size_t n = f1.n();
  const std::size_t m = f1.m();
  // Variables (x, y, y1, y2).
  const std::size_t total = n + 3 * m;
  Matrix a1 = zero_matrix(n + m, total);
  put_diag(a1, 0, 0, n, Rational(1));
  put_diag(a1, n, n + m, m, Rational(1));
  Matrix a2 = zero_matrix(n + m, total);
  put_diag(a2, 0, 0, n, Rational(1));
  put_diag(a2, n, n + 2 * m, m, Rational(1));
  HPolyhedron h = affine_preimage_rows(f1.graph(), a1, total, zeros(n + m))
                      .intersect(affine_preimage_rows(f2.graph(), a2, total,
                                                      zeros(n + m)));
  for (std::size_t i = 0; i < m; ++i) {
    Vec row = zeros(total);
    row[n + i] = 1;
    row[n + m + i] = -1;
    row[n + 2 * m + i] = -1;
    h.add_eq(std::move(row), Rational(0));
  }
  const HPolyhedron graph = project_prefix(h, n + m);
  if (graph.is_trivially_empty()) {
    fail(ErrorKind::kEmptyDomainIntersection, "dom F1 ∩ dom F2 = ∅");
  }
  return Multimap(n, m, graph);
}

HPolyhedron sum_decompositions(const Multimap& f1, const Multimap& f2,
                               VecView xbar, VecView ybar) {
  require_dim(f2.n(), f1.n(), "sum_decompositions (n)");
  require_dim(f2.m(), f1.m(), "sum_decompositions (m)");
  require_dim(xbar.size(), f1.n(), "sum_decompositions x̄");
  require_dim(ybar.size(), f1.m(), "sum_decompositions ȳ");
  const std::size_t n = f1.n();
  const std::size_t m = f1.m();
  const Vec fixed_x = concat(xbar, zeros(m));
  Matrix a1 = zero_matrix(n + m, 2 * m);
  put_diag(a1, n, 0, m, Rational(1));
  Matrix a2 = zero_matrix(n + m, 2 * m);
  put_diag(a2, n, m, m, Rational(1));
  HPolyhedron s = affine_preimage_rows(f1.graph(), a1, 2 * m, fixed_x)
                      .intersect(affine_preimage_rows(f2.graph(), a2, 2 * m,
                                                      fixed_x));
  for (std::size_t i = 0; i < m; ++i) {
    s.add_eq(add(unit(2 * m, i), unit(2 * m, m + i)), ybar[i]);
  }
  return canonicalize(s);
}

std::optional<std::pair<Vec, Vec>> least_decomposition(const Multimap& f1,
                                                       const Multimap& f2,
                                                       VecView xbar,
                                                       VecView ybar) {
  const HPolyhedron s = sum_decompositions(f1, f2, xbar, ybar);
  if (s.is_trivially_empty()) return std::nullopt;
  const Generators g = h_to_v(s);
  const std::size_t m = f1.m();
  const Vec& v = g.vertices.front();
  return std::make_pair(slice(v, 0, m), slice(v, m, m));
}

Multimap compose(const Multimap& g, const Multimap& f) {
  require_dim(g.n(), f.m(), "compose multimaps");
  const std::size_t n = f.n();
  const std::size_t m = f.m();
  const std::size_t k = g.m();
  const std::size_t total = n + m + k;
  // Variables (x, y, z).
  Matrix af = zero_matrix(n + m, total);
  put_diag(af, 0, 0, n + m, Rational(1));
  Matrix ag = zero_matrix(m + k, total);
  put_diag(ag, 0, n, m + k, Rational(1));
  const HPolyhedron h =
      affine_preimage_rows(f.graph(), af, total, zeros(n + m))
          .intersect(affine_preimage_rows(g.graph(), ag, total, zeros(m + k)));
  std::vector<std::size_t> keep = range_indices(0, n);
  for (std::size_t i = 0; i < k; ++i) keep.push_back(n + m + i);
  return Multimap(n, k, project(h, keep));
}

Multimap intersect(const Multimap& f1, const Multimap& f2) {
  require_dim(f2.n(), f1.n(), "intersect multimaps (n)");
  require_dim(f2.m(), f1.m(), "intersect multimaps (m)");
  return Multimap(f1.n(), f1.m(), f1.graph().intersect(f2.graph()));
}

CoderivativeRuleResult coderivative_sum_rule(const Multimap& f1,
                                             const Multimap& f2, VecView xbar,
                                             VecView ybar, VecView y1bar,
                                             VecView y2bar, VecView ystar) {
  return coderivative_sum_rule(f1, f2, sum(f1, f2), xbar, ybar, y1bar, y2bar,
                               ystar);
}

CoderivativeRuleResult coderivative_sum_rule(const Multimap& f1,
                                             const Multimap& f2,
                                             const Multimap& total, VecView xbar,
                                             VecView ybar, VecView y1bar,
                                             VecView y2bar, VecView ystar) {
  require_dim(y1bar.size(), f1.m(), "coderivative_sum_rule ȳ1");
  require_dim(y2bar.size(), f2.m(), "coderivative_sum_rule ȳ2");
  require_dim(ybar.size(), f1.m(), "coderivative_sum_rule ȳ");
  if (!f1.in_graph(xbar, y1bar) || !f2.in_graph(xbar, y2bar) ||
      add(y1bar, y2bar) != Vec(ybar.begin(), ybar.end())) {
    fail(ErrorKind::kNotADecomposition, "(ȳ1, ȳ2) ∉ S(x̄, ȳ)");
  }
  const std::size_t n = f1.n();
  CoderivativeRuleResult out;
  out.lhs = coderivative(total, xbar, ybar, ystar);
  const HPolyhedron d1 = coderivative(f1, xbar, y1bar, ystar);
  const HPolyhedron d2 = coderivative(f2, xbar, y2bar, ystar);
  // The sum as the image of D1 × D2 under (a, b) ↦ a + b.
  out.reading.preimage = d1.product(d2);
  out.reading.map = zero_matrix(n, 2 * n);
  put_diag(out.reading.map, 0, 0, n, Rational(1));
  put_diag(out.reading.map, 0, n, n, Rational(1));
  out.rhs = minkowski_sum(d1, d2);
  out.reading.image = out.rhs;
  out.equal = set_equal(out.lhs, out.rhs);

  const HPolyhedron dom1 = f1.domain();
  const HPolyhedron dom2 = f2.domain();
  out.qc.interior_condition =
      has_interior(f1.graph()) && interior_meets(dom1, dom2);
  out.qc.attouch_brezis = relative_interiors_meet(dom1, dom2);
  out.qc.any_holds = out.qc.interior_condition || out.qc.attouch_brezis;
  return out;
}

CoderivativeRuleResult coderivative_chain_rule(const Multimap& f,
                                               const Multimap& g, VecView xbar,
                                               VecView ybar, VecView zbar,
                                               VecView zstar) {
  return coderivative_chain_rule(f, g, compose(g, f), xbar, ybar, zbar, zstar);
}

CoderivativeRuleResult coderivative_chain_rule(const Multimap& f,
                                               const Multimap& g,
                                               const Multimap& composed,
                                               VecView xbar, VecView ybar,
                                               VecView zbar, VecView zstar) {
  require_dim(g.n(), f.m(), "coderivative_chain_rule");
  require_dim(zstar.size(), g.m(), "coderivative_chain_rule z*");
  require_dim(ybar.size(), f.m(), "coderivative_chain_rule ȳ");
  if (!f.in_graph(xbar, ybar) || !g.in_graph(ybar, zbar)) {
    fail(ErrorKind::kBadIntermediatePoint, "ȳ ∉ F(x̄) ∩ G⁻¹(z̄)");
  }
  const std::size_t n = f.n();
  const std::size_t m = f.m();
  const std::size_t k = g.m();
  CoderivativeRuleResult out;
  out.lhs = coderivative(composed, xbar, zbar, zstar);

  // {(x*, y*) : (x*, -y*) ∈ N_F, (y*, -z*) ∈ N_G}.
  const HPolyhedron nf =
      flip_second_block(normal_cone(f.graph(), concat(xbar, ybar)).set(), n, m);
  const HPolyhedron ng = normal_cone(g.graph(), concat(ybar, zbar)).set();
  Matrix ag = zero_matrix(m + k, n + m);
  put_diag(ag, 0, n, m, Rational(1));
  const HPolyhedron pre = nf.intersect(
      affine_preimage_rows(ng, ag, n + m, concat(zeros(m), negate(zstar))));
  out.reading.preimage = canonicalize(pre);
  out.reading.map = zero_matrix(n, n + m);
  put_diag(out.reading.map, 0, 0, n, Rational(1));
  out.rhs = project_prefix(out.reading.preimage, n);
  out.reading.image = out.rhs;
  out.equal = set_equal(out.lhs, out.rhs);

  const HPolyhedron rge = f.range();
  const HPolyhedron domg = g.domain();
  const bool some_interior_graph = has_interior(f.graph()) || has_interior(g.graph());
  out.qc.interior_condition =
      some_interior_graph &&
      (interior_meets(rge, domg) || interior_meets(domg, rge));
  out.qc.attouch_brezis = relative_interiors_meet(rge, domg);
  out.qc.any_holds = out.qc.interior_condition || out.qc.attouch_brezis;
  return out;
}

CoderivativeRuleResult coderivative_intersection_rule(const Multimap& f1,
                                                      const Multimap& f2,
                                                      VecView xbar,
                                                      VecView ybar,
                                                      VecView ystar) {
  require_dim(f2.n(), f1.n(), "coderivative_intersection_rule (n)");
  require_dim(f2.m(), f1.m(), "coderivative_intersection_rule (m)");
  require_dim(ystar.size(), f1.m(), "coderivative_intersection_rule y*");
  if (!f1.in_graph(xbar, ybar) || !f2.in_graph(xbar, ybar)) {
    fail(ErrorKind::kNotInBothGraphs, "(x̄, ȳ) ∉ gph F1 ∩ gph F2");
  }
  const std::size_t n = f1.n();
  const std::size_t m = f1.m();
  CoderivativeRuleResult out;
  out.lhs = coderivative(intersect(f1, f2), xbar, ybar, ystar);

  // Variables (x1*, x2*, y1*, y2*).
  const std::size_t total = 2 * n + 2 * m;
  const Vec point = concat(xbar, ybar);
  const HPolyhedron n1 =
      flip_second_block(normal_cone(f1.graph(), point).set(), n, m);
  const HPolyhedron n2 =
      flip_second_block(normal_cone(f2.graph(), point).set(), n, m);
  Matrix a1 = zero_matrix(n + m, total);
  put_diag(a1, 0, 0, n, Rational(1));
  put_diag(a1, n, 2 * n, m, Rational(1));
  Matrix a2 = zero_matrix(n + m, total);
  put_diag(a2, 0, n, n, Rational(1));
  put_diag(a2, n, 2 * n + m, m, Rational(1));
  HPolyhedron pre =
      affine_preimage_rows(n1, a1, total, zeros(n + m))
          .intersect(affine_preimage_rows(n2, a2, total, zeros(n + m)));
  for (std::size_t i = 0; i < m; ++i) {
    pre.add_eq(add(unit(total, 2 * n + i), unit(total, 2 * n + m + i)), ystar[i]);
  }
  out.reading.preimage = canonicalize(pre);
  out.reading.map = zero_matrix(n, total);
  put_diag(out.reading.map, 0, 0, n, Rational(1));
  put_diag(out.reading.map, 0, n, n, Rational(1));
  out.rhs = affine_image(out.reading.preimage, out.reading.map, zeros(n));
  out.reading.image = out.rhs;
  out.equal = set_equal(out.lhs, out.rhs);

  out.qc.interior_condition = interior_meets(f1.graph(), f2.graph());
  out.qc.attouch_brezis = relative_interiors_meet(f1.graph(), f2.graph());
  out.qc.any_holds = out.qc.interior_condition || out.qc.attouch_brezis;
  return out;
}

}  // namespace polycalc
