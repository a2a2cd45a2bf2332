#include "polycalc/marginals.hpp"

#include <utility>

#include "polycalc/errors.hpp"
#include "polycalc/lp.hpp"
#include "polycalc/supports.hpp"

namespace polycalc {
namespace {

Matrix zero_matrix(std::size_t rows, std::size_t cols) {
  return Matrix(rows, zeros(cols));
}

// The rows of `cone` (a normal cone in (x, y)) as constraints on (u*, y*)
// placed at offsets u_at and y_at of a space of dimension total, reading
// (u*, -y*) ∈ cone.
HPolyhedron flipped_cone_rows(const HPolyhedron& cone, std::size_t n,
                              std::size_t m, std::size_t total,
                              std::size_t u_at, std::size_t y_at) {
  Matrix a = zero_matrix(n + m, total);
  for (std::size_t i = 0; i < n; ++i) a[i][u_at + i] = 1;
  for (std::size_t i = 0; i < m; ++i) a[n + i][y_at + i] = -1;
  return affine_preimage_rows(cone, a, total, zeros(n + m));
}

bool all_nonnegative_pairs(const Generators& g, const Generators& cone) {
  // ⟨y*, z⟩ ≥ 0 for y* ∈ conv V + cone R + span L and z ∈ cone R' + span L'.
  auto check = [&](const Vec& y, bool two_sided) {
    for (const Vec& z : cone.rays) {
      const int s = sgn(dot(y, z));
      if (s < 0 || (two_sided && s != 0)) return false;
    }
    for (const Vec& z : cone.lineality) {
      if (sgn(dot(y, z)) != 0) return false;
    }
    return true;
  };
  for (const Vec& v : g.vertices) {
    if (!check(v, false)) return false;
  }
  for (const Vec& r : g.rays) {
    if (!check(r, false)) return false;
  }
  for (const Vec& l : g.lineality) {
    if (!check(l, true)) return false;
  }
  return true;
}

}  // namespace

MarginalProblem::MarginalProblem(PLFunction phi, Multimap f)
    : phi_(std::move(phi)), f_(std::move(f)) {
  const std::size_t n = f_.n();
  const std::size_t m = f_.m();
  require_dim(phi_.dim(), n + m, "MarginalProblem φ");
  HPolyhedron epi = phi_.epi();
  for (const Row& r : f_.graph().ineq()) epi.add_ineq(concat(r.a, Vec{0}), r.b);
  for (const Row& r : f_.graph().eq()) epi.add_eq(concat(r.a, Vec{0}), r.b);
  if (is_empty(epi)) fail(ErrorKind::kEmptyInput, "dom φ ∩ gph F = ∅");
  // μ(x) = -inf iff some (0, r_y, -1) recedes in epi(φ + δ_gph F).
  HPolyhedron rec(n + m + 1);
  for (const Row& r : epi.ineq()) rec.add_ineq(r.a, Rational(0));
  for (const Row& r : epi.eq()) rec.add_eq(r.a, Rational(0));
  for (std::size_t i = 0; i < n; ++i) rec.add_eq(unit(n + m + 1, i), Rational(0));
  rec.add_eq(unit(n + m + 1, n + m), Rational(-1));
  if (is_feasible(rec)) {
    fail(ErrorKind::kMinusInfinityDetected, "the marginal function is unbounded below");
  }
  joint_ = PLFunction(n + m, epi);
}

ExtReal marginal_value(const MarginalProblem& p, VecView x) {
  const std::size_t n = p.n();
  const std::size_t m = p.m();
  require_dim(x.size(), n, "marginal_value");
  // Section {(y, t) : (x, y, t) ∈ epi(φ + δ_gph F)}.
  Matrix a = zero_matrix(n + m + 1, m + 1);
  for (std::size_t i = 0; i <= m; ++i) a[n + i][i] = 1;
  const HPolyhedron section = affine_preimage_rows(
      p.joint().epi(), a, m + 1, concat(x, zeros(m + 1)));
  const LpResult r = solve_lp(unit(m + 1, m), Sense::kMinimize, section);
  if (const auto* opt = std::get_if<LpOptimal>(&r)) return opt->value;
  if (std::holds_alternative<LpInfeasible>(r)) return ExtReal::plus_infinity();
  fail(ErrorKind::kMinusInfinityDetected, "the marginal function is unbounded below");
}

PLFunction marginal_closed_form(const MarginalProblem& p) {
  const std::size_t n = p.n();
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < n; ++i) keep.push_back(i);
  keep.push_back(n + p.m());
  return PLFunction(n, project(p.joint().epi(), keep));
}

HPolyhedron solution_map(const MarginalProblem& p, VecView x) {
  const ExtReal mu = marginal_value(p, x);
  if (!mu.is_finite()) fail(ErrorKind::kNotInDomain, "x ∉ dom μ");
  const std::size_t n = p.n();
  const std::size_t m = p.m();
  Matrix a = zero_matrix(n + m + 1, m);
  for (std::size_t i = 0; i < m; ++i) a[n + i][i] = 1;
  Vec shift = concat(x, zeros(m));
  shift.push_back(mu.value());
  return affine_preimage(p.joint().epi(), a, m, shift);
}

MarginalQC marginal_qualification(const MarginalProblem& p) {
  MarginalQC qc;
  const HPolyhedron dom = p.phi().domain();
  qc.continuity = interior_meets(dom, p.f().graph());
  qc.attouch_brezis = relative_interiors_meet(dom, p.f().graph());
  qc.any_holds = qc.continuity || qc.attouch_brezis;
  return qc;
}

MarginalConjugateResult marginal_conjugate(const MarginalProblem& p,
                                           VecView xstar) {
  const std::size_t n = p.n();
  const std::size_t m = p.m();
  require_dim(xstar.size(), n, "marginal_conjugate");
  MarginalConjugateResult out;
  out.mu_star = conjugate_value(marginal_closed_form(p), xstar);
  const Vec probe = concat(xstar, zeros(m));
  out.via_sum = conjugate_value(p.joint(), probe);

  // σ over epi φ ∩ (gph F × ℝ) at (x*, 0, -1), split between the two sets.
  HPolyhedron graph_cyl(n + m + 1);
  for (const Row& r : p.f().graph().ineq()) graph_cyl.add_ineq(concat(r.a, Vec{0}), r.b);
  for (const Row& r : p.f().graph().eq()) graph_cyl.add_eq(concat(r.a, Vec{0}), r.b);
  Vec lifted = probe;
  lifted.push_back(Rational(-1));
  const SupportDecomposition d =
      support_intersection(p.phi().epi(), graph_cyl, lifted);
  if (d.x1star) {
    Vec u1 = slice(*d.x1star, 0, n + m);
    Vec u2 = slice(*d.x2star, 0, n + m);
    out.via_convolution =
        conjugate_value(p.phi(), u1) + support(p.f().graph(), u2).value;
    out.phi_part = std::move(u1);
    out.graph_part = std::move(u2);
  } else {
    out.via_convolution = ExtReal::plus_infinity();
  }
  out.qc = marginal_qualification(p);
  return out;
}

std::optional<PLFunction> cost_without_x(const MarginalProblem& p) {
  const std::size_t n = p.n();
  const std::size_t m = p.m();
  const HPolyhedron& epi = p.phi().epi();
  auto depends = [&](const Row& r) {
    for (std::size_t i = 0; i < n; ++i) {
      if (sgn(r.a[i]) != 0) return true;
    }
    return false;
  };
  HPolyhedron psi(m + 1);
  for (const Row& r : epi.ineq()) {
    if (depends(r)) return std::nullopt;
    psi.add_ineq(slice(r.a, n, m + 1), r.b);
  }
  for (const Row& r : epi.eq()) {
    if (depends(r)) return std::nullopt;
    psi.add_eq(slice(r.a, n, m + 1), r.b);
  }
  return PLFunction(m, psi);
}

MarginalSubdiffResult marginal_subdifferential(const MarginalProblem& p,
                                               VecView xbar, VecView ybar) {
  const std::size_t n = p.n();
  const std::size_t m = p.m();
  require_dim(xbar.size(), n, "marginal_subdifferential x̄");
  require_dim(ybar.size(), m, "marginal_subdifferential ȳ");
  const Vec point = concat(xbar, ybar);
  const ExtReal mu = marginal_value(p, xbar);
  if (!p.f().in_graph(xbar, ybar) || !mu.is_finite() ||
      evaluate(p.phi(), point) != mu) {
    fail(ErrorKind::kNotASolution, "ȳ ∉ M(x̄)");
  }
  MarginalSubdiffResult out;
  out.lhs = subdifferential(marginal_closed_form(p), xbar);

  Matrix embed = zero_matrix(n + m, n);
  for (std::size_t i = 0; i < n; ++i) embed[i][i] = 1;
  out.sum_form =
      affine_preimage(subdifferential(p.joint(), point), embed, n, zeros(n + m));

  // Variables (x*, y*, u*): (x*, y*) ∈ ∂φ(x̄, ȳ), (u*, -y*) ∈ N(gph F).
  const std::size_t total = 2 * n + m;
  const HPolyhedron cone = normal_cone(p.f().graph(), point).set();
  Matrix a = zero_matrix(n + m, total);
  for (std::size_t i = 0; i < n + m; ++i) a[i][i] = 1;
  const HPolyhedron pre =
      affine_preimage_rows(subdifferential(p.phi(), point), a, total,
                           zeros(n + m))
          .intersect(flipped_cone_rows(cone, n, m, total, n + m, n));
  out.reading.preimage = canonicalize(pre);
  out.reading.map = zero_matrix(n, total);
  for (std::size_t i = 0; i < n; ++i) {
    out.reading.map[i][i] = 1;
    out.reading.map[i][n + m + i] = 1;
  }
  out.rhs = affine_image(out.reading.preimage, out.reading.map, zeros(n));
  out.reading.image = out.rhs;

  if (const auto psi = cost_without_x(p)) {
    // Variables (y*, u*).
    Matrix b = zero_matrix(m, m + n);
    for (std::size_t i = 0; i < m; ++i) b[i][i] = 1;
    const HPolyhedron pre2 =
        affine_preimage_rows(subdifferential(*psi, ybar), b, m + n, zeros(m))
            .intersect(flipped_cone_rows(cone, n, m, m + n, m, 0));
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < n; ++i) keep.push_back(m + i);
    out.independent_form = project(pre2, keep);
  }

  out.equal = set_equal(out.lhs, out.rhs) && set_equal(out.lhs, out.sum_form);
  if (out.independent_form) {
    out.equal = out.equal && set_equal(out.lhs, *out.independent_form);
  }
  out.qc = marginal_qualification(p);
  return out;
}

bool is_nondecreasing(const PolyhedralCone& yplus, const PLFunction& phi) {
  require_dim(yplus.dim(), phi.dim(), "is_nondecreasing");
  const std::size_t m = phi.dim();
  const Generators g = h_to_v(yplus.set());
  auto recedes = [&](const Vec& z, bool both) {
    for (const Row& r : phi.epi().ineq()) {
      const int s = sgn(dot(VecView(r.a).first(m), z));
      if (s < 0 || (both && s != 0)) return false;
    }
    for (const Row& r : phi.epi().eq()) {
      if (sgn(dot(VecView(r.a).first(m), z)) != 0) return false;
    }
    return true;
  };
  for (const Vec& z : g.rays) {
    if (!recedes(z, false)) return false;
  }
  for (const Vec& z : g.lineality) {
    if (!recedes(z, true)) return false;
  }
  return true;
}

OrderedChainProblem::OrderedChainProblem(PolyhedralCone yplus, LinearMap f,
                                         PLFunction phi)
    : yplus_(std::move(yplus)), f_(std::move(f)), phi_(std::move(phi)) {
  require_dim(yplus_.dim(), f_.rows(), "OrderedChainProblem Y₊");
  require_dim(phi_.dim(), f_.rows(), "OrderedChainProblem φ");
  if (!is_nondecreasing(yplus_, phi_)) {
    fail(ErrorKind::kMonotonicityViolation, "φ is not Y₊-nondecreasing");
  }
}

Multimap OrderedChainProblem::epigraphical_map() const {
  const std::size_t n = f_.cols;
  const Matrix at = f_.adjoint();
  // y - A x - shift ∈ Y₊.
  HPolyhedron g(n + f_.rows());
  for (const Row& r : yplus_.set().ineq()) {
    g.add_ineq(concat(negate(mat_vec(at, r.a)), r.a), dot(r.a, f_.shift));
  }
  for (const Row& r : yplus_.set().eq()) {
    g.add_eq(concat(negate(mat_vec(at, r.a)), r.a), dot(r.a, f_.shift));
  }
  return Multimap(n, f_.rows(), g);
}

OrderedChainResult ordered_chain_rule(const OrderedChainProblem& q,
                                      VecView xbar) {
  const std::size_t n = q.f().cols;
  const std::size_t m = q.f().rows();
  const Vec ybar = q.f().apply(xbar);
  if (!evaluate(q.phi(), ybar).is_finite()) {
    fail(ErrorKind::kNotInDomain, "f(x̄) ∉ dom φ");
  }
  OrderedChainResult out;
  out.lhs = subdifferential(compose(q.phi(), q.f()), xbar);
  const HPolyhedron dphi = subdifferential(q.phi(), ybar);
  out.adjoint_form = affine_image(dphi, q.f().adjoint(), zeros(n));

  // Variables (y*, u*): y* ∈ ∂φ(ȳ), (u*, -y*) ∈ N((x̄, ȳ); gph F).
  const Multimap big_f = q.epigraphical_map();
  const HPolyhedron cone = normal_cone(big_f.graph(), concat(xbar, ybar)).set();
  Matrix b = zero_matrix(m, m + n);
  for (std::size_t i = 0; i < m; ++i) b[i][i] = 1;
  const HPolyhedron pre =
      affine_preimage_rows(dphi, b, m + n, zeros(m))
          .intersect(flipped_cone_rows(cone, n, m, m + n, m, 0));
  out.reading.preimage = canonicalize(pre);
  out.reading.map = zero_matrix(n, m + n);
  for (std::size_t i = 0; i < n; ++i) out.reading.map[i][m + i] = 1;
  out.rhs = affine_image(out.reading.preimage, out.reading.map, zeros(n));
  out.reading.image = out.rhs;

  out.subgradients_nonnegative =
      all_nonnegative_pairs(h_to_v(dphi), h_to_v(q.yplus().set()));
  out.equal = set_equal(out.lhs, out.rhs) && set_equal(out.lhs, out.adjoint_form);
  return out;
}

SetRuleResult epigraphical_coderivative_check(const OrderedChainProblem& q,
                                              VecView xbar, VecView ystar) {
  const Vec ybar = q.f().apply(xbar);
  require_dim(ystar.size(), q.f().rows(), "epigraphical_coderivative_check y*");
  if (!evaluate(q.phi(), ybar).is_finite() ||
      !subdifferential(q.phi(), ybar).contains(ystar)) {
    fail(ErrorKind::kNotASubgradient, "y* ∉ ∂φ(f(x̄))");
  }
  SetRuleResult out;
  out.lhs = coderivative(q.epigraphical_map(), xbar, ybar, ystar);
  out.rhs = HPolyhedron::point(mat_vec(q.f().adjoint(), ystar));
  out.equal = set_equal(out.lhs, out.rhs);
  return out;
}

}  // namespace polycalc
