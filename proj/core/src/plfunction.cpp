#include "polycalc/plfunction.hpp"

#include <utility>

#include "polycalc/errors.hpp"
#include "polycalc/lp.hpp"

namespace polycalc {
namespace {

Vec append(VecView a, const Rational& x) {
  Vec r(a.begin(), a.end());
  r.push_back(x);
  return r;
}

// Rows of epi f lifted into a space of dimension `total`, with x placed at
// offset `x_at` and the height at `t_at`.
void lift_epi_rows(const PLFunction& f, std::size_t total, std::size_t x_at,
                   std::size_t t_at, HPolyhedron& out) {
  const std::size_t n = f.dim();
  auto place = [&](const Vec& a) {
    Vec r(total);
    for (std::size_t j = 0; j < n; ++j) r[x_at + j] = a[j];
    r[t_at] += a[n];
    return r;
  };
  for (const Row& r : f.epi().ineq()) out.add_ineq(place(r.a), r.b);
  for (const Row& r : f.epi().eq()) out.add_eq(place(r.a), r.b);
}

void require_same_dim(const PLFunction& f, const PLFunction& g,
                      std::string_view where) {
  require_dim(g.dim(), f.dim(), where);
}

ExtReal sum_or_inf(const ExtReal& a, const ExtReal& b) { return a + b; }

}  // namespace

LinearMap::LinearMap(Matrix a_in, std::size_t cols_in)
    : a(std::move(a_in)), cols(cols_in), shift(zeros(a.size())) {
  for (const Vec& row : a) require_dim(row.size(), cols, "LinearMap");
}

LinearMap::LinearMap(Matrix a_in, std::size_t cols_in, Vec shift_in)
    : a(std::move(a_in)), cols(cols_in), shift(std::move(shift_in)) {
  for (const Vec& row : a) require_dim(row.size(), cols, "LinearMap");
  require_dim(shift.size(), a.size(), "LinearMap shift");
}

LinearMap LinearMap::identity(std::size_t n) {
  return LinearMap(polycalc::identity(n), n);
}

LinearMap LinearMap::zero(std::size_t rows, std::size_t cols) {
  return LinearMap(Matrix(rows, zeros(cols)), cols);
}

Vec LinearMap::apply(VecView x) const {
  require_dim(x.size(), cols, "LinearMap::apply");
  return add(mat_vec(a, x), shift);
}

PLFunction::PLFunction(std::size_t dim, const HPolyhedron& epi) : dim_(dim) {
  require_dim(epi.dim(), dim + 1, "PLFunction epigraph");
  epi_ = canonicalize(epi);
  if (epi_.is_trivially_empty()) {
    fail(ErrorKind::kEmptyInput, "proper function needs a nonempty epigraph");
  }
  bool bounded_below = false;
  for (const Row& r : epi_.ineq()) {
    const int s = sgn(r.a[dim]);
    if (s > 0) {
      fail(ErrorKind::kInvalidOperation, "set is not an epigraph");
    }
    bounded_below = bounded_below || s < 0;
  }
  for (const Row& r : epi_.eq()) {
    if (sgn(r.a[dim]) != 0) {
      fail(ErrorKind::kInvalidOperation, "set is not an epigraph");
    }
  }
  if (!bounded_below) {
    fail(ErrorKind::kInvalidOperation, "function takes the value -inf");
  }
}

PLFunction PLFunction::max_affine(const std::vector<Row>& pieces,
                                  const HPolyhedron& domain) {
  if (pieces.empty()) {
    fail(ErrorKind::kInvalidOperation, "max_affine needs at least one piece");
  }
  const std::size_t n = domain.dim();
  HPolyhedron epi(n + 1);
  for (const Row& p : pieces) {
    require_dim(p.a.size(), n, "max_affine piece");
    epi.add_ineq(append(p.a, Rational(-1)), Rational(-p.b));
  }
  for (const Row& r : domain.ineq()) epi.add_ineq(append(r.a, Rational(0)), r.b);
  for (const Row& r : domain.eq()) epi.add_eq(append(r.a, Rational(0)), r.b);
  return PLFunction(n, epi);
}

PLFunction PLFunction::indicator(const HPolyhedron& set) {
  return max_affine({Row{zeros(set.dim()), Rational(0)}}, set);
}

PLFunction PLFunction::affine(Vec c, Rational b) {
  const std::size_t n = c.size();
  return max_affine({Row{std::move(c), std::move(b)}}, HPolyhedron(n));
}

HPolyhedron PLFunction::domain() const { return project_prefix(epi_, dim_); }

ExtReal evaluate(const PLFunction& f, VecView x) {
  const std::size_t n = f.dim();
  require_dim(x.size(), n, "evaluate");
  std::optional<Rational> best;
  for (const Row& r : f.epi().ineq()) {
    const Rational ax = dot(VecView(r.a).first(n), x);
    const Rational& c = r.a[n];
    if (sgn(c) == 0) {
      if (ax > r.b) return ExtReal::plus_infinity();
    } else {
      // ax + c t ≤ b with c < 0  ⇔  t ≥ (ax - b) / (-c)
      Rational bound = (ax - r.b) / (-c);
      if (!best || bound > *best) best = std::move(bound);
    }
  }
  for (const Row& r : f.epi().eq()) {
    if (dot(VecView(r.a).first(n), x) != r.b) return ExtReal::plus_infinity();
  }
  return *best;
}

ExtReal conjugate_value(const PLFunction& f, VecView xstar) {
  require_dim(xstar.size(), f.dim(), "conjugate_value");
  return support(f.epi(), append(xstar, Rational(-1))).value;
}

PLFunction conjugate_closed_form(const PLFunction& f) {
  const std::size_t n = f.dim();
  const Generators g = h_to_v(f.epi());
  HPolyhedron epi(n + 1);
  for (const Vec& v : g.vertices) {
    // ⟨x*, v_x⟩ - s ≤ v_t
    epi.add_ineq(append(VecView(v).first(n), Rational(-1)), v[n]);
  }
  for (const Vec& r : g.rays) {
    epi.add_ineq(append(VecView(r).first(n), Rational(0)), r[n]);
  }
  for (const Vec& l : g.lineality) {
    epi.add_eq(append(VecView(l).first(n), Rational(0)), l[n]);
  }
  return PLFunction(n, epi);
}

PLFunction biconjugate(const PLFunction& f) {
  return conjugate_closed_form(conjugate_closed_form(f));
}

PLFunction inf_convolution(const PLFunction& f, const PLFunction& g) {
  require_same_dim(f, g, "inf_convolution");
  const HPolyhedron epi = minkowski_sum(f.epi(), g.epi());
  bool bounded_below = false;
  for (const Row& r : epi.ineq()) bounded_below = bounded_below || sgn(r.a[f.dim()]) < 0;
  if (!bounded_below) {
    fail(ErrorKind::kImproperResult, "infimal convolution takes the value -inf");
  }
  return PLFunction(f.dim(), epi);
}

ExtReal inf_convolution_value(const PLFunction& f, const PLFunction& g,
                              VecView x) {
  require_same_dim(f, g, "inf_convolution_value");
  require_dim(x.size(), f.dim(), "inf_convolution_value x");
  const std::size_t n = f.dim();
  // Variables (u, t1, t2): (u, t1) ∈ epi f, (x - u, t2) ∈ epi g.
  HPolyhedron h(n + 2);
  lift_epi_rows(f, n + 2, 0, n, h);
  auto g_row = [&](const Row& r) {
    Vec a(n + 2);
    for (std::size_t j = 0; j < n; ++j) a[j] = -r.a[j];
    a[n + 1] = r.a[n];
    return Row{std::move(a), Rational(r.b - dot(VecView(r.a).first(n), x))};
  };
  for (const Row& r : g.epi().ineq()) {
    Row q = g_row(r);
    h.add_ineq(std::move(q.a), std::move(q.b));
  }
  for (const Row& r : g.epi().eq()) {
    Row q = g_row(r);
    h.add_eq(std::move(q.a), std::move(q.b));
  }
  Vec obj = zeros(n + 2);
  obj[n] = 1;
  obj[n + 1] = 1;
  const LpResult res = solve_lp(obj, Sense::kMinimize, h);
  if (const auto* opt = std::get_if<LpOptimal>(&res)) return opt->value;
  if (std::holds_alternative<LpInfeasible>(res)) return ExtReal::plus_infinity();
  fail(ErrorKind::kImproperResult, "infimal convolution takes the value -inf");
}

HPolyhedron subdifferential(const PLFunction& f, VecView xbar) {
  const std::size_t n = f.dim();
  const ExtReal fx = evaluate(f, xbar);
  if (!fx.is_finite()) fail(ErrorKind::kNotInDomain, "x̄ ∉ dom f");
  const PolyhedralCone cone = normal_cone(f.epi(), append(xbar, fx.value()));
  Matrix embed = polycalc::identity(n);
  embed.push_back(zeros(n));
  Vec shift = zeros(n + 1);
  shift[n] = -1;
  HPolyhedron result = affine_preimage(cone.set(), embed, n, shift);
  if (result.is_trivially_empty()) {
    fail(ErrorKind::kInternalConsistency, "empty subdifferential on the domain");
  }
  return result;
}

PLFunction sum(const PLFunction& f, const PLFunction& g) {
  require_same_dim(f, g, "sum");
  const std::size_t n = f.dim();
  // Variables (x, t, t1) with t1 ≥ f(x) and t - t1 ≥ g(x).
  HPolyhedron h(n + 2);
  lift_epi_rows(f, n + 2, 0, n + 1, h);
  auto g_row = [&](const Row& r) {
    Vec a = append(r.a, Rational(-r.a[n]));
    return a;
  };
  for (const Row& r : g.epi().ineq()) h.add_ineq(g_row(r), r.b);
  for (const Row& r : g.epi().eq()) h.add_eq(g_row(r), r.b);
  const HPolyhedron epi = project_prefix(h, n + 1);
  if (epi.is_trivially_empty()) {
    fail(ErrorKind::kEmptyCommonDomain, "dom f ∩ dom g = ∅");
  }
  return PLFunction(n, epi);
}

PLFunction pointwise_max(const PLFunction& f, const PLFunction& g) {
  require_same_dim(f, g, "pointwise_max");
  const HPolyhedron epi = f.epi().intersect(g.epi());
  if (is_empty(epi)) fail(ErrorKind::kEmptyCommonDomain, "dom f ∩ dom g = ∅");
  return PLFunction(f.dim(), epi);
}

PLFunction compose(const PLFunction& g, const LinearMap& a) {
  require_dim(a.rows(), g.dim(), "compose");
  const std::size_t n = a.cols;
  const std::size_t m = g.dim();
  const Matrix at = a.adjoint();
  HPolyhedron epi(n + 1);
  auto row = [&](const Row& r) {
    const VecView ay = VecView(r.a).first(m);
    return Row{append(mat_vec(at, ay), r.a[m]), Rational(r.b - dot(ay, a.shift))};
  };
  for (const Row& r : g.epi().ineq()) {
    Row q = row(r);
    epi.add_ineq(std::move(q.a), std::move(q.b));
  }
  for (const Row& r : g.epi().eq()) {
    Row q = row(r);
    epi.add_eq(std::move(q.a), std::move(q.b));
  }
  if (is_empty(epi)) {
    fail(ErrorKind::kInfeasibleComposition, "A X + shift misses dom g");
  }
  return PLFunction(n, epi);
}

PLFunction scale(const PLFunction& f, const Rational& lambda) {
  const int s = sgn(lambda);
  if (s < 0) fail(ErrorKind::kInvalidOperation, "negative function scaling");
  if (s == 0) return PLFunction::indicator(f.domain());
  const std::size_t n = f.dim();
  HPolyhedron epi(n + 1);
  for (const Row& r : f.epi().ineq()) {
    Vec a = r.a;
    a[n] /= lambda;
    epi.add_ineq(std::move(a), r.b);
  }
  for (const Row& r : f.epi().eq()) epi.add_eq(r.a, r.b);
  return PLFunction(n, epi);
}

PLFunction convex_combination(const PLFunction& f, const PLFunction& g,
                              const Rational& lambda) {
  if (lambda < 0 || lambda > 1) {
    fail(ErrorKind::kInvalidOperation, "convex weight outside [0, 1]");
  }
  return sum(scale(f, lambda), scale(g, Rational(1 - lambda)));
}

ConjugateSumResult conjugate_sum_rule(const PLFunction& f, const PLFunction& g,
                                      VecView xstar) {
  require_same_dim(f, g, "conjugate_sum_rule");
  require_dim(xstar.size(), f.dim(), "conjugate_sum_rule x*");
  const std::size_t n = f.dim();
  ConjugateSumResult out;
  out.lhs = conjugate_value(sum(f, g), xstar);

  // Ω1 = {(x, λ1, λ2) : λ1 ≥ f(x)}, Ω2 = {(x, λ1, λ2) : λ2 ≥ g(x)}.
  HPolyhedron omega1(n + 2), omega2(n + 2);
  lift_epi_rows(f, n + 2, 0, n, omega1);
  lift_epi_rows(g, n + 2, 0, n + 1, omega2);
  Vec probe = append(append(xstar, Rational(-1)), Rational(-1));
  const SupportDecomposition d = support_intersection(omega1, omega2, probe);
  if (d.x1star) {
    out.x1star = slice(*d.x1star, 0, n);
    out.x2star = slice(*d.x2star, 0, n);
    out.rhs = sum_or_inf(conjugate_value(f, *out.x1star),
                         conjugate_value(g, *out.x2star));
  } else {
    out.rhs = ExtReal::plus_infinity();
  }
  out.qc = check_qualification(f.domain(), g.domain());
  return out;
}

ConjugateChainResult conjugate_chain_rule(const PLFunction& g,
                                          const LinearMap& a, VecView xstar) {
  require_dim(a.rows(), g.dim(), "conjugate_chain_rule");
  require_dim(xstar.size(), a.cols, "conjugate_chain_rule x*");
  const std::size_t n = a.cols;
  const std::size_t m = g.dim();
  ConjugateChainResult out;
  out.lhs = conjugate_value(compose(g, a), xstar);

  // Ω1 = gph A × ℝ, Ω2 = X × epi g in the variables (x, y, t).
  HPolyhedron omega1(n + m + 1), omega2(n + m + 1);
  for (std::size_t i = 0; i < m; ++i) {
    Vec row = zeros(n + m + 1);
    for (std::size_t j = 0; j < n; ++j) row[j] = -a.a[i][j];
    row[n + i] = 1;
    omega1.add_eq(std::move(row), a.shift[i]);
  }
  lift_epi_rows(g, n + m + 1, n, n + m, omega2);
  Vec probe = concat(xstar, zeros(m));
  probe.push_back(Rational(-1));
  const SupportDecomposition d = support_intersection(omega1, omega2, probe);
  if (d.x2star) {
    Vec y = slice(*d.x2star, n, m);
    out.rhs = conjugate_value(g, y) - ExtReal(dot(y, a.shift));
    out.ystar = std::move(y);
  } else {
    out.rhs = ExtReal::plus_infinity();
  }
  const HPolyhedron range = affine_image(HPolyhedron(n), a.a, a.shift);
  out.qc = check_qualification(range, g.domain());
  return out;
}

ConjugateMaxResult conjugate_max_rule(const PLFunction& f, const PLFunction& g,
                                      VecView xstar) {
  require_same_dim(f, g, "conjugate_max_rule");
  require_dim(xstar.size(), f.dim(), "conjugate_max_rule x*");
  const std::size_t n = f.dim();
  ConjugateMaxResult out;
  out.lhs = conjugate_value(pointwise_max(f, g), xstar);
  const SupportDecomposition d =
      support_intersection(f.epi(), g.epi(), append(xstar, Rational(-1)));
  if (d.x1star) {
    Rational lambda = -(*d.x1star)[n];
    out.x1star = slice(*d.x1star, 0, n);
    out.x2star = slice(*d.x2star, 0, n);
    out.rhs = conjugate_value(convex_combination(f, g, lambda), xstar);
    out.lambda = std::move(lambda);
  } else {
    out.rhs = ExtReal::plus_infinity();
  }
  out.qc = check_qualification(f.domain(), g.domain());
  return out;
}

SetRuleResult subdiff_sum_rule(const PLFunction& f, const PLFunction& g,
                               VecView xbar) {
  require_same_dim(f, g, "subdiff_sum_rule");
  SetRuleResult out;
  const HPolyhedron df = subdifferential(f, xbar);
  const HPolyhedron dg = subdifferential(g, xbar);
  out.lhs = subdifferential(sum(f, g), xbar);
  out.rhs = minkowski_sum(df, dg);
  out.equal = set_equal(out.lhs, out.rhs);
  return out;
}

SetRuleResult subdiff_chain_rule(const PLFunction& g, const LinearMap& a,
                                 VecView xbar) {
  require_dim(a.rows(), g.dim(), "subdiff_chain_rule");
  const Vec y = a.apply(xbar);
  if (!evaluate(g, y).is_finite()) {
    fail(ErrorKind::kNotInDomain, "A x̄ + shift ∉ dom g");
  }
  SetRuleResult out;
  out.lhs = subdifferential(compose(g, a), xbar);
  out.rhs = affine_image(subdifferential(g, y), a.adjoint(), zeros(a.cols));
  out.equal = set_equal(out.lhs, out.rhs);
  return out;
}

MaxRuleResult subdiff_max_rule(const PLFunction& f, const PLFunction& g,
                               VecView xbar) {
  require_same_dim(f, g, "subdiff_max_rule");
  const ExtReal fx = evaluate(f, xbar);
  const ExtReal gx = evaluate(g, xbar);
  if (!fx.is_finite() || !gx.is_finite()) {
    fail(ErrorKind::kNotInDomain, "x̄ ∉ dom f ∩ dom g");
  }
  MaxRuleResult out;
  out.lhs = subdifferential(pointwise_max(f, g), xbar);
  const HPolyhedron point = HPolyhedron::point(xbar);
  if (fx > gx) {
    out.which = MaxCase::kFirstActive;
    out.inactive_usc = interior_meets(g.domain(), point);
    out.rhs = subdifferential(f, xbar);
  } else if (gx > fx) {
    out.which = MaxCase::kSecondActive;
    out.inactive_usc = interior_meets(f.domain(), point);
    out.rhs = subdifferential(g, xbar);
  } else {
    out.which = MaxCase::kBothActive;
    out.rhs = closed_convex_hull(subdifferential(f, xbar),
                                 subdifferential(g, xbar));
  }
  out.equal = set_equal(out.lhs, out.rhs);
  return out;
}

HPolyhedron closed_convex_hull(const HPolyhedron& p, const HPolyhedron& q) {
  require_dim(q.dim(), p.dim(), "closed_convex_hull");
  Generators gp = h_to_v(p);
  const Generators gq = h_to_v(q);
  gp.vertices.insert(gp.vertices.end(), gq.vertices.begin(), gq.vertices.end());
  gp.rays.insert(gp.rays.end(), gq.rays.begin(), gq.rays.end());
  gp.lineality.insert(gp.lineality.end(), gq.lineality.begin(),
                      gq.lineality.end());
  return canonicalize(v_to_h(gp));
}

}  // namespace polycalc
