#include "polycalc/supports.hpp"

#include <algorithm>

#include "polycalc/errors.hpp"
#include "polycalc/lp.hpp"

namespace polycalc {
namespace {

HPolyhedron stacked(const HPolyhedron& p, const HPolyhedron& q) {
  return p.intersect(q);
}

Rational linf_norm(VecView a) {
  Rational m = 0;
  for (const Rational& x : a) m = std::max(m, Rational(abs(x)));
  return m;
}

}  // namespace

SupportValue support(const HPolyhedron& omega, VecView xstar) {
  require_dim(xstar.size(), omega.dim(), "support");
  LpResult r = solve_lp(xstar, Sense::kMaximize, omega);
  SupportValue out;
  if (auto* opt = std::get_if<LpOptimal>(&r)) {
    out.value = opt->value;
    out.witness = SupportValue::Witness::kMaximizer;
    out.witness_vector = std::move(opt->point);
  } else if (auto* unb = std::get_if<LpUnbounded>(&r)) {
    out.value = ExtReal::plus_infinity();
    out.witness = SupportValue::Witness::kUnboundedRay;
    out.witness_vector = std::move(unb->ray);
  } else {
    out.value = ExtReal::minus_infinity();
    out.witness = SupportValue::Witness::kEmptySet;
  }
  return out;
}

PolyhedralCone normal_cone(const HPolyhedron& omega, VecView xbar) {
  require_dim(xbar.size(), omega.dim(), "normal_cone");
  if (!omega.contains(xbar)) fail(ErrorKind::kNotInSet, "normal_cone: x̄ ∉ Ω");
  Generators g;
  g.dim = omega.dim();
  g.vertices.push_back(zeros(omega.dim()));
  for (const Row& r : omega.ineq()) {
    if (dot(r.a, xbar) == r.b && !is_zero(r.a)) g.rays.push_back(r.a);
  }
  for (const Row& r : omega.eq()) {
    if (!is_zero(r.a)) g.lineality.push_back(r.a);
  }
  return PolyhedralCone(v_to_h(g));
}

bool is_extremal_system(const HPolyhedron& omega1, const HPolyhedron& omega2) {
  require_dim(omega2.dim(), omega1.dim(), "is_extremal_system");
  if (is_empty(omega1) || is_empty(omega2)) {
    fail(ErrorKind::kEmptyInput, "extremality needs nonempty sets");
  }
  return !origin_in_interior_of_difference(omega1, omega2);
}

ExtremalWitness separate(const HPolyhedron& omega1, const HPolyhedron& omega2) {
  if (!is_extremal_system(omega1, omega2)) {
    fail(ErrorKind::kNotExtremal, "0 ∈ int(Ω1 - Ω2)");
  }
  const HPolyhedron d = minkowski_diff(omega1, omega2);
  if (!has_interior(d)) fail(ErrorKind::kNotSolid, "int(Ω1 - Ω2) = ∅");

  // Canonical rows are sorted, so the first hit is the lexicographically
  // least certificate.
  const Row* facet = nullptr;
  for (const Row& r : d.ineq()) {
    if (sgn(r.b) <= 0) {
      facet = &r;
      break;
    }
  }
  if (facet == nullptr) {
    fail(ErrorKind::kInternalConsistency, "no separating facet found");
  }
  ExtremalWitness w;
  w.separator = facet->a;
  const SupportValue s1 = support(omega1, w.separator);
  const SupportValue s2 = support(omega2, negate(w.separator));
  if (!s1.value.is_finite() || !s2.value.is_finite()) {
    fail(ErrorKind::kInternalConsistency, "separator support is not finite");
  }
  w.sup_value = s1.value.value();
  w.inf_value = -s2.value.value();

  const Vec c = scale(w.separator, Rational(1 / linf_norm(w.separator)));
  for (long k = 1;; k *= 2) {
    Vec a = scale(c, Rational(-1, k));
    // Ω1 + a = {x : x - a ∈ Ω1}
    const HPolyhedron shifted = affine_preimage(omega1, identity(omega1.dim()),
                                                omega1.dim(), negate(a));
    if (!is_feasible(stacked(shifted, omega2))) {
      w.translation = std::move(a);
      return w;
    }
    if (k > (1L << 40)) {
      fail(ErrorKind::kInternalConsistency, "translation search diverged");
    }
  }
}

QCReport check_qualification(const HPolyhedron& omega1,
                             const HPolyhedron& omega2,
                             const std::optional<Vec>& xbar) {
  require_dim(omega2.dim(), omega1.dim(), "check_qualification");
  QCReport qc;
  const bool empty1 = is_empty(omega1);
  const bool empty2 = is_empty(omega2);
  if (empty2) {
    qc.omega2_bounded = true;
  } else {
    const Generators g = h_to_v(omega2);
    qc.omega2_bounded = g.rays.empty() && g.lineality.empty();
  }
  if (!empty1 && !empty2) {
    qc.difference_interiority = origin_in_interior_of_difference(omega1, omega2);
    qc.attouch_brezis = relative_interiors_meet(omega1, omega2);
    qc.interiority_1_meets_2 = interior_meets(omega1, omega2);
    qc.interiority_2_meets_1 = interior_meets(omega2, omega1);
  }
  const bool interiority = qc.interiority_1_meets_2 || qc.interiority_2_meets_1;
  if (xbar) {
    require_dim(xbar->size(), omega1.dim(), "check_qualification x̄");
    const Vec one(omega1.dim(), Rational(1));
    const HPolyhedron v = HPolyhedron::box(sub(*xbar, one), add(*xbar, one));
    const HPolyhedron local = omega2.intersect(v);
    qc.localized_interiority =
        !empty1 && !is_empty(local) &&
        origin_in_interior_of_difference(omega1, local);
    qc.any_holds = *qc.localized_interiority || interiority || qc.attouch_brezis;
  } else {
    qc.any_holds = (qc.difference_interiority && qc.omega2_bounded) ||
                   interiority || qc.attouch_brezis;
  }
  return qc;
}

SupportDecomposition support_intersection(const HPolyhedron& omega1,
                                          const HPolyhedron& omega2,
                                          VecView xstar) {
  require_dim(omega2.dim(), omega1.dim(), "support_intersection");
  require_dim(xstar.size(), omega1.dim(), "support_intersection x*");
  const std::size_t n = omega1.dim();
  LpResult r = solve_lp(xstar, Sense::kMaximize, stacked(omega1, omega2));
  if (std::holds_alternative<LpInfeasible>(r)) {
    fail(ErrorKind::kEmptyIntersection, "Ω1 ∩ Ω2 = ∅");
  }
  SupportDecomposition out;
  const auto* opt = std::get_if<LpOptimal>(&r);
  if (opt == nullptr) {
    out.value = ExtReal::plus_infinity();
    return out;
  }
  out.value = opt->value;
  Vec x1(n), x2(n);
  const std::size_t p1 = omega1.ineq().size();
  const std::size_t q1 = omega1.eq().size();
  for (std::size_t i = 0; i < opt->ineq_duals.size(); ++i) {
    const Rational& lam = opt->ineq_duals[i];
    if (sgn(lam) == 0) continue;
    const bool first = i < p1;
    const Vec& a = first ? omega1.ineq()[i].a : omega2.ineq()[i - p1].a;
    Vec& target = first ? x1 : x2;
    for (std::size_t j = 0; j < n; ++j) target[j] += lam * a[j];
  }
  for (std::size_t i = 0; i < opt->eq_duals.size(); ++i) {
    const Rational& mu = opt->eq_duals[i];
    if (sgn(mu) == 0) continue;
    const bool first = i < q1;
    const Vec& a = first ? omega1.eq()[i].a : omega2.eq()[i - q1].a;
    Vec& target = first ? x1 : x2;
    for (std::size_t j = 0; j < n; ++j) target[j] += mu * a[j];
  }
  out.x1star = std::move(x1);
  out.x2star = std::move(x2);
  return out;
}

ExtRealPair support_conv_conjugate_check(const HPolyhedron& omega1,
                                         const HPolyhedron& omega2, VecView x) {
  require_dim(omega2.dim(), omega1.dim(), "support_conv_conjugate_check");
  require_dim(x.size(), omega1.dim(), "support_conv_conjugate_check x");
  if (!is_feasible(stacked(omega1, omega2))) {
    fail(ErrorKind::kEmptyIntersection, "Ω1 ∩ Ω2 = ∅");
  }
  // σ_Ω(y) = min{bᵀλ + cᵀμ : Aᵀλ + Eᵀμ = y, λ ≥ 0}, so the conjugate of the
  // convolution is the supremum of a linear form over the multiplier cone:
  // λ-coordinates are its rays, μ-coordinates its lineality.
  bool unbounded = false;
  for (const HPolyhedron* p : {&omega1, &omega2}) {
    for (const Row& r : p->ineq()) {
      if (sgn(Rational(dot(r.a, x) - r.b)) > 0) unbounded = true;
    }
    for (const Row& r : p->eq()) {
      if (dot(r.a, x) != r.b) unbounded = true;
    }
  }
  ExtRealPair out;
  out.lhs = unbounded ? ExtReal::plus_infinity() : ExtReal(0);
  out.rhs = omega1.contains(x) && omega2.contains(x) ? ExtReal(0)
                                                     : ExtReal::plus_infinity();
  return out;
}

NormalIntersection normal_intersection_rule(const HPolyhedron& omega1,
                                            const HPolyhedron& omega2,
                                            VecView xbar) {
  require_dim(omega2.dim(), omega1.dim(), "normal_intersection_rule");
  require_dim(xbar.size(), omega1.dim(), "normal_intersection_rule x̄");
  if (!omega1.contains(xbar) || !omega2.contains(xbar)) {
    fail(ErrorKind::kNotInSet, "x̄ ∉ Ω1 ∩ Ω2");
  }
  NormalIntersection out;
  out.lhs = normal_cone(stacked(omega1, omega2), xbar);
  const PolyhedralCone n1 = normal_cone(omega1, xbar);
  const PolyhedralCone n2 = normal_cone(omega2, xbar);
  out.rhs = PolyhedralCone(minkowski_sum(n1.set(), n2.set()));
  out.equal = set_equal(out.lhs.set(), out.rhs.set());
  out.qc = check_qualification(omega1, omega2, Vec(xbar.begin(), xbar.end()));
  return out;
}

}  // namespace polycalc
