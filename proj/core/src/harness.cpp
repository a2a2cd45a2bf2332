#include "polycalc/harness.hpp"

#include <memory>
#include <sstream>

#include "polycalc/errors.hpp"
#include "polycalc/lp.hpp"
#include "polycalc/marginals.hpp"
#include "polycalc/multimap.hpp"
#include "polycalc/plfunction.hpp"
#include "polycalc/polyhedra.hpp"
#include "polycalc/supports.hpp"

namespace polycalc {
namespace {

bool is_input_error(ErrorKind k) {
  return k == ErrorKind::kParseError || k == ErrorKind::kSchemaError ||
         k == ErrorKind::kDimensionMismatch;
}

// FNV-1a, so per-instance random streams do not depend on std::hash.
std::uint64_t stable_hash(std::string_view s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

struct Outcome {
  Verdict verdict = Verdict::kPass;
  std::string reason;
  Json witness = Json::object();
  OracleReport oracle;

  void expect(bool ok, const std::string& what) {
    if (!ok && verdict != Verdict::kFail) {
      verdict = Verdict::kFail;
      reason = what;
    }
  }
  void skip(const std::string& why) {
    if (verdict == Verdict::kPass) {
      verdict = Verdict::kSkip;
      reason = why;
    }
  }
  void cross_check(const std::string& input, const ExtReal& main,
                   const ExtReal& oracle_value) {
    ++oracle.checked;
    if (main != oracle_value) {
      oracle.mismatches.push_back(
          {input, to_string(main), to_string(oracle_value)});
    }
  }
};

Vec probe_vec(const Json& probe, const char* key) {
  return vec_from_json(member(probe, key));
}

Json qc_json(const CoderivativeQC& qc) {
  return Json{{"interior_condition", qc.interior_condition},
              {"attouch_brezis", qc.attouch_brezis},
              {"any_holds", qc.any_holds}};
}

Json qc_json(const MarginalQC& qc) {
  return Json{{"continuity", qc.continuity},
              {"attouch_brezis", qc.attouch_brezis},
              {"any_holds", qc.any_holds}};
}

// Points of a nonempty set that exercise every generator: the vertices,
// v0 + r for each ray and v0 ± l for each lineality direction.
std::vector<Vec> generator_points(const HPolyhedron& s) {
  std::vector<Vec> out;
  if (is_empty(s)) return out;
  const Generators g = h_to_v(s);
  out = g.vertices;
  const Vec& v0 = g.vertices.front();
  for (const Vec& r : g.rays) out.push_back(add(v0, r));
  for (const Vec& l : g.lineality) {
    out.push_back(add(v0, l));
    out.push_back(sub(v0, l));
  }
  return out;
}

class Checker {
 public:
  Checker(const Instance& inst, const HarnessConfig& cfg)
      : inst_(inst), cfg_(cfg) {}
  virtual ~Checker() = default;

  virtual bool needs_probes() const { return true; }
  virtual Json qc() { return nullptr; }
  // Checks that do not depend on a probe.
  virtual void whole(Outcome&) {}
  virtual void probe(const Json& p, std::size_t index, Outcome& out) = 0;

 protected:
  // ∂h(x̄) generators against the definitional oracle, Fenchel–Young on the
  // same points, and membership agreement on seeded random duals.
  void check_subgradients(Outcome& out, const PLFunction& h, VecView xbar,
                          const HPolyhedron& set, std::size_t index) const {
    const ExtReal hx = evaluate(h, xbar);
    out.cross_check("value at " + to_string(xbar), hx, value_oracle(h, xbar));
    for (const Vec& g : generator_points(set)) {
      ++out.oracle.checked;
      if (!subgradient_oracle(h, xbar, g)) {
        out.oracle.mismatches.push_back(
            {to_string(g), "in the subdifferential", "fails the subgradient inequality"});
      }
      out.expect(hx + conjugate_value(h, g) == ExtReal(dot(g, xbar)),
                 "Fenchel-Young equality fails at " + to_string(g));
    }
    for (std::size_t k = 0; k < 4; ++k) {
      Rng rng(cfg_.oracle_seed, stable_hash(inst_.id), index * 16 + k);
      const Vec xs = random_vec(rng, h.dim(), -3, 3);
      ++out.oracle.checked;
      const bool main = set.contains(xs);
      if (main != subgradient_oracle(h, xbar, xs)) {
        out.oracle.mismatches.push_back({to_string(xs), main ? "member" : "not a member",
                                         main ? "not a member" : "member"});
      }
    }
  }

  // Coderivative membership read through the support function of the graph.
  void check_coderivative(Outcome& out, const HPolyhedron& graph, VecView x,
                          VecView y, VecView ystar, const HPolyhedron& set) const {
    for (const Vec& g : generator_points(set)) {
      out.cross_check("D* generator " + to_string(g),
                      ExtReal(dot(g, x) - dot(ystar, y)),
                      support_oracle(graph, concat(g, negate(ystar))));
    }
  }

  void sample(Outcome& out, const LinearImageReading& reading) const {
    out.oracle.merge(
        decomposition_sampler(reading, cfg_.oracle_seed, cfg_.oracle_samples));
  }

  const Json& payload(const char* key) const { return member(inst_.payload, key); }

  const Instance& inst_;
  const HarnessConfig& cfg_;
};

void check_biconjugate(Outcome& out, const PLFunction& f, const char* name) {
  const bool fixed = set_equal(biconjugate(f).epi(), f.epi());
  out.witness[std::string("biconjugate_fixed_point_") + name] = fixed;
  out.expect(fixed, std::string("epi ") + name + "** differs from epi " + name);
}

class SupportIntersectionChecker : public Checker {
 public:
  SupportIntersectionChecker(const Instance& i, const HarnessConfig& c)
      : Checker(i, c),
        o1_(hpolyhedron_from_json(payload("omega1"))),
        o2_(hpolyhedron_from_json(payload("omega2"))) {
    require_dim(o2_.dim(), o1_.dim(), "omega2");
    both_ = o1_.intersect(o2_);
  }
  Json qc() override { return to_json(check_qualification(o1_, o2_)); }
  void probe(const Json& p, std::size_t, Outcome& out) override {
    const Vec xs = vec_from_json(p);
    require_dim(xs.size(), o1_.dim(), "probe");
    const SupportDecomposition d = support_intersection(o1_, o2_, xs);
    out.witness["xstar"] = to_json(xs);
    out.witness["value"] = to_json(d.value);
    out.cross_check("support of the intersection at " + to_string(xs), d.value,
                    support_oracle(both_, xs));
    if (!d.x1star) {
      out.expect(d.value.is_plus_infinity(), "finite value without a split");
      return;
    }
    const Vec& x1 = *d.x1star;
    const Vec& x2 = *d.x2star;
    out.witness["x1star"] = to_json(x1);
    out.witness["x2star"] = to_json(x2);
    out.expect(add(x1, x2) == xs, "split does not add up to x*");
    const ExtReal direct = support(o1_, x1).value + support(o2_, x2).value;
    out.expect(direct == d.value, "split attains " + to_string(direct));
    out.cross_check("split " + to_string(x1) + " + " + to_string(x2), direct,
                    support_oracle(o1_, x1) + support_oracle(o2_, x2));
  }

 private:
  HPolyhedron o1_, o2_, both_;
};

class NormalIntersectionChecker : public Checker {
 public:
  NormalIntersectionChecker(const Instance& i, const HarnessConfig& c)
      : Checker(i, c),
        o1_(hpolyhedron_from_json(payload("omega1"))),
        o2_(hpolyhedron_from_json(payload("omega2"))) {
    require_dim(o2_.dim(), o1_.dim(), "omega2");
    both_ = o1_.intersect(o2_);
  }
  Json qc() override { return to_json(check_qualification(o1_, o2_)); }
  void probe(const Json& p, std::size_t, Outcome& out) override {
    const Vec x = vec_from_json(p);
    require_dim(x.size(), o1_.dim(), "probe");
    const NormalIntersection r = normal_intersection_rule(o1_, o2_, x);
    out.witness["xbar"] = to_json(x);
    out.witness["lhs"] = to_json(r.lhs);
    out.witness["rhs"] = to_json(r.rhs);
    out.witness["qc"] = to_json(r.qc);
    out.expect(r.equal, "N(x̄; Ω1 ∩ Ω2) differs from N(x̄; Ω1) + N(x̄; Ω2)");
    for (const PolyhedralCone* k : {&r.lhs, &r.rhs}) {
      for (const Vec& g : generator_points(k->set())) {
        out.cross_check("normal generator " + to_string(g), ExtReal(dot(g, x)),
                        support_oracle(both_, g));
      }
    }
  }

 private:
  HPolyhedron o1_, o2_, both_;
};

class ConjugateSumChecker : public Checker {
 public:
  ConjugateSumChecker(const Instance& i, const HarnessConfig& c)
      : Checker(i, c),
        f1_(plfunction_from_json(payload("f1"))),
        f2_(plfunction_from_json(payload("f2"))) {
    require_dim(f2_.dim(), f1_.dim(), "f2");
  }
  Json qc() override {
    return to_json(check_qualification(f1_.domain(), f2_.domain()));
  }
  void whole(Outcome& out) override {
    h_ = sum(f1_, f2_);
    check_biconjugate(out, f1_, "f1");
    check_biconjugate(out, f2_, "f2");
  }
  void probe(const Json& p, std::size_t, Outcome& out) override {
    const Vec xs = vec_from_json(p);
    require_dim(xs.size(), f1_.dim(), "probe");
    const ConjugateSumResult r = conjugate_sum_rule(f1_, f2_, xs);
    out.witness["xstar"] = to_json(xs);
    out.witness["lhs"] = to_json(r.lhs);
    out.witness["rhs"] = to_json(r.rhs);
    out.expect(r.lhs == r.rhs, "(f1 + f2)* differs from f1* ⊕ f2*");
    out.cross_check("(f1 + f2)* at " + to_string(xs), r.lhs,
                    conjugate_oracle(h_, xs));
    if (!r.x1star) return;
    const Vec& x1 = *r.x1star;
    const Vec& x2 = *r.x2star;
    out.witness["x1star"] = to_json(x1);
    out.witness["x2star"] = to_json(x2);
    out.expect(add(x1, x2) == xs, "split does not add up to x*");
    const ExtReal direct = conjugate_value(f1_, x1) + conjugate_value(f2_, x2);
    out.expect(direct == r.lhs, "split attains " + to_string(direct));
    out.cross_check("split " + to_string(x1) + " + " + to_string(x2), direct,
                    conjugate_oracle(f1_, x1) + conjugate_oracle(f2_, x2));
  }

 private:
  PLFunction f1_, f2_, h_;
};

class ConjugateChainChecker : public Checker {
 public:
  ConjugateChainChecker(const Instance& i, const HarnessConfig& c)
      : Checker(i, c),
        g_(plfunction_from_json(payload("g"))),
        a_(linear_map_from_json(payload("map"))) {
    require_dim(a_.rows(), g_.dim(), "map rows");
  }
  Json qc() override {
    return to_json(check_qualification(
        affine_image(HPolyhedron::universe(a_.cols), a_.a, a_.shift), g_.domain()));
  }
  void whole(Outcome& out) override {
    h_ = compose(g_, a_);
    check_biconjugate(out, g_, "g");
  }
  void probe(const Json& p, std::size_t, Outcome& out) override {
    const Vec xs = vec_from_json(p);
    require_dim(xs.size(), a_.cols, "probe");
    const ConjugateChainResult r = conjugate_chain_rule(g_, a_, xs);
    out.witness["xstar"] = to_json(xs);
    out.witness["lhs"] = to_json(r.lhs);
    out.witness["rhs"] = to_json(r.rhs);
    out.expect(r.lhs == r.rhs, "(g ∘ A)* differs from the adjoint reading");
    out.cross_check("(g ∘ A)* at " + to_string(xs), r.lhs, conjugate_oracle(h_, xs));
    if (!r.ystar) return;
    const Vec& y = *r.ystar;
    out.witness["ystar"] = to_json(y);
    out.expect(mat_vec(a_.adjoint(), y) == xs, "Aᵀy* differs from x*");
    const ExtReal direct = conjugate_value(g_, y) - ExtReal(dot(y, a_.shift));
    out.expect(direct == r.lhs, "y* attains " + to_string(direct));
    out.cross_check("g*(y*) - ⟨y*, b⟩ at " + to_string(y), direct,
                    conjugate_oracle(g_, y) - ExtReal(dot(y, a_.shift)));
  }

 private:
  PLFunction g_;
  LinearMap a_;
  PLFunction h_;
};

class ConjugateMaxChecker : public Checker {
 public:
  ConjugateMaxChecker(const Instance& i, const HarnessConfig& c)
      : Checker(i, c),
        f1_(plfunction_from_json(payload("f1"))),
        f2_(plfunction_from_json(payload("f2"))) {
    require_dim(f2_.dim(), f1_.dim(), "f2");
  }
  Json qc() override {
    return to_json(check_qualification(f1_.domain(), f2_.domain()));
  }
  void whole(Outcome& out) override {
    h_ = pointwise_max(f1_, f2_);
    check_biconjugate(out, f1_, "f1");
    check_biconjugate(out, f2_, "f2");
  }
  void probe(const Json& p, std::size_t, Outcome& out) override {
    const Vec xs = vec_from_json(p);
    require_dim(xs.size(), f1_.dim(), "probe");
    const ConjugateMaxResult r = conjugate_max_rule(f1_, f2_, xs);
    out.witness["xstar"] = to_json(xs);
    out.witness["lhs"] = to_json(r.lhs);
    out.witness["rhs"] = to_json(r.rhs);
    out.expect(r.lhs == r.rhs, "(f1 ∨ f2)* differs from the convex-combination reading");
    out.cross_check("(f1 ∨ f2)* at " + to_string(xs), r.lhs, conjugate_oracle(h_, xs));
    if (!r.lambda) return;
    const Rational& lambda = *r.lambda;
    out.witness["lambda"] = to_json(lambda);
    out.witness["x1star"] = to_json(*r.x1star);
    out.witness["x2star"] = to_json(*r.x2star);
    out.expect(lambda >= 0 && lambda <= 1, "λ outside [0, 1]");
    const PLFunction combo = convex_combination(f1_, f2_, lambda);
    const ExtReal direct = conjugate_value(combo, xs);
    out.expect(direct == r.lhs, "λ attains " + to_string(direct));
    out.cross_check("[λ f1 + (1 - λ) f2]* at " + to_string(xs), direct,
                    conjugate_oracle(combo, xs));
  }

 private:
  PLFunction f1_, f2_, h_;
};

class BiconjugateChecker : public Checker {
 public:
  BiconjugateChecker(const Instance& i, const HarnessConfig& c)
      : Checker(i, c), f_(plfunction_from_json(payload("f"))) {}
  bool needs_probes() const override { return false; }
  void whole(Outcome& out) override {
    check_biconjugate(out, f_, "f");
    closed_ = conjugate_closed_form(f_);
  }
  void probe(const Json& p, std::size_t, Outcome& out) override {
    const Vec xs = vec_from_json(p);
    require_dim(xs.size(), f_.dim(), "probe");
    const ExtReal v = conjugate_value(f_, xs);
    out.witness["xstar"] = to_json(xs);
    out.witness["value"] = to_json(v);
    out.expect(evaluate(closed_, xs) == v, "closed form of f* disagrees at x*");
    out.cross_check("f* at " + to_string(xs), v, conjugate_oracle(f_, xs));
  }

 private:
  PLFunction f_, closed_;
};

// The three subdifferential rules share their shape: a rule result with lhs
// and rhs, a combined function h and two summands.
class SubdiffChecker : public Checker {
 public:
  SubdiffChecker(const Instance& i, const HarnessConfig& c) : Checker(i, c) {
    if (i.kind == Kind::kSubdiffChain) {
      g_ = plfunction_from_json(payload("g"));
      a_ = linear_map_from_json(payload("map"));
      require_dim(a_.rows(), g_.dim(), "map rows");
    } else {
      f1_ = plfunction_from_json(payload("f1"));
      f2_ = plfunction_from_json(payload("f2"));
      require_dim(f2_.dim(), f1_.dim(), "f2");
    }
  }
  Json qc() override {
    if (inst_.kind == Kind::kSubdiffChain) {
      return to_json(check_qualification(
          affine_image(HPolyhedron::universe(a_.cols), a_.a, a_.shift),
          g_.domain()));
    }
    return to_json(check_qualification(f1_.domain(), f2_.domain()));
  }
  void whole(Outcome&) override {
    switch (inst_.kind) {
      case Kind::kSubdiffSum: h_ = sum(f1_, f2_); break;
      case Kind::kSubdiffChain: h_ = compose(g_, a_); break;
      default: h_ = pointwise_max(f1_, f2_); break;
    }
  }
  void probe(const Json& p, std::size_t index, Outcome& out) override {
    const Vec x = vec_from_json(p);
    require_dim(x.size(), h_.dim(), "probe");
    out.witness["xbar"] = to_json(x);
    SetRuleResult r;
    if (inst_.kind == Kind::kSubdiffSum) {
      r = subdiff_sum_rule(f1_, f2_, x);
    } else if (inst_.kind == Kind::kSubdiffChain) {
      r = subdiff_chain_rule(g_, a_, x);
    } else {
      const MaxRuleResult m = subdiff_max_rule(f1_, f2_, x);
      static constexpr const char* kCase[] = {"first_active", "second_active",
                                              "both_active"};
      out.witness["case"] = kCase[static_cast<int>(m.which)];
      out.witness["inactive_usc"] = m.inactive_usc;
      r = {m.lhs, m.rhs, m.equal};
      if (!m.equal && !m.inactive_usc) {
        out.witness["lhs"] = to_json(r.lhs);
        out.witness["rhs"] = to_json(r.rhs);
        out.skip("inactive function is not upper semicontinuous at x̄");
        return;
      }
    }
    out.witness["lhs"] = to_json(r.lhs);
    out.witness["rhs"] = to_json(r.rhs);
    out.expect(r.equal, "subdifferential rule: lhs differs from rhs");
    check_subgradients(out, h_, x, r.lhs, index);
  }

 private:
  PLFunction f1_, f2_, g_, h_;
  LinearMap a_;
};

class MarginalChecker : public Checker {
 public:
  MarginalChecker(const Instance& i, const HarnessConfig& c)
      : Checker(i, c),
        phi_(plfunction_from_json(payload("phi"))),
        f_(multimap_from_json(payload("F"))) {}
  Json qc() override { return qc_json(marginal_qualification(*p_)); }
  void whole(Outcome&) override {
    p_ = std::make_unique<MarginalProblem>(phi_, f_);
    closed_ = marginal_closed_form(*p_);
  }
  void probe(const Json& p, std::size_t index, Outcome& out) override {
    if (inst_.kind == Kind::kMarginalConjugate) {
      conjugate_probe(p, out);
    } else {
      subdiff_probe(p, index, out);
    }
  }

 private:
  void conjugate_probe(const Json& p, Outcome& out) {
    const Vec xs = vec_from_json(p);
    require_dim(xs.size(), f_.n(), "probe");
    const MarginalConjugateResult r = marginal_conjugate(*p_, xs);
    out.witness["xstar"] = to_json(xs);
    out.witness["mu_star"] = to_json(r.mu_star);
    out.witness["via_sum"] = to_json(r.via_sum);
    out.witness["via_convolution"] = to_json(r.via_convolution);
    out.expect(r.mu_star == r.via_sum && r.mu_star == r.via_convolution,
               "the three readings of μ* disagree");
    out.cross_check("μ* at " + to_string(xs), r.mu_star, conjugate_oracle(closed_, xs));
    if (!r.phi_part) return;
    const Vec& u1 = *r.phi_part;
    const Vec& u2 = *r.graph_part;
    out.witness["phi_part"] = to_json(u1);
    out.witness["graph_part"] = to_json(u2);
    out.expect(add(u1, u2) == concat(xs, zeros(f_.m())), "split does not add up to (x*, 0)");
    const ExtReal direct = conjugate_value(phi_, u1) + support(f_.graph(), u2).value;
    out.expect(direct == r.via_convolution, "split attains " + to_string(direct));
    out.cross_check("φ*(u1*) + σ(u2*)", direct,
                    conjugate_oracle(phi_, u1) + support_oracle(f_.graph(), u2));
  }

  void subdiff_probe(const Json& p, std::size_t index, Outcome& out) {
    Vec x, y;
    if (p.is_object()) {
      x = probe_vec(p, "x");
      y = probe_vec(p, "y");
    } else {
      x = vec_from_json(p);
    }
    require_dim(x.size(), f_.n(), "probe");
    if (y.empty()) {
      const auto pick = feasible_point(solution_map(*p_, x));
      if (!pick) fail(ErrorKind::kInternalConsistency, "empty solution map");
      y = *pick;
    }
    const MarginalSubdiffResult r = marginal_subdifferential(*p_, x, y);
    out.witness["xbar"] = to_json(x);
    out.witness["ybar"] = to_json(y);
    out.witness["lhs"] = to_json(r.lhs);
    out.witness["rhs"] = to_json(r.rhs);
    out.witness["independent_cost"] = r.independent_form.has_value();
    out.expect(r.equal, "the readings of ∂μ(x̄) disagree");
    out.cross_check("μ at " + to_string(x), marginal_value(*p_, x),
                    value_oracle(closed_, x));
    check_subgradients(out, closed_, x, r.lhs, index);
    sample(out, r.reading);
  }

  PLFunction phi_;
  Multimap f_;
  std::unique_ptr<MarginalProblem> p_;
  PLFunction closed_;
};

class OrderedChainChecker : public Checker {
 public:
  OrderedChainChecker(const Instance& i, const HarnessConfig& c)
      : Checker(i, c),
        q_(cone_from_json(payload("Yplus")), linear_map_from_json(payload("f")),
           plfunction_from_json(payload("phi"))),
        h_(compose(q_.phi(), q_.f())) {}
  void probe(const Json& p, std::size_t index, Outcome& out) override {
    const Vec x = vec_from_json(p);
    require_dim(x.size(), q_.f().cols, "probe");
    const OrderedChainResult r = ordered_chain_rule(q_, x);
    out.witness["xbar"] = to_json(x);
    out.witness["lhs"] = to_json(r.lhs);
    out.witness["rhs"] = to_json(r.rhs);
    out.witness["subgradients_nonnegative"] = r.subgradients_nonnegative;
    out.expect(r.equal, "∂(φ ∘ f)(x̄) differs from the coderivative reading");
    out.expect(r.subgradients_nonnegative, "a subgradient of φ is not Y₊-nonnegative");
    const Vec y = q_.f().apply(x);
    for (const Vec& ys : h_to_v(subdifferential(q_.phi(), y)).vertices) {
      out.expect(epigraphical_coderivative_check(q_, x, ys).equal,
                 "D*F(x̄, f(x̄))(y*) differs from {Aᵀy*} at " + to_string(ys));
    }
    check_subgradients(out, h_, x, r.lhs, index);
    sample(out, r.reading);
  }

 private:
  OrderedChainProblem q_;
  PLFunction h_;
};

class CoderivativeChecker : public Checker {
 public:
  CoderivativeChecker(const Instance& i, const HarnessConfig& c) : Checker(i, c) {
    if (i.kind == Kind::kCodChain) {
      f1_ = multimap_from_json(payload("F"));
      f2_ = multimap_from_json(payload("G"));
      require_dim(f2_.n(), f1_.m(), "G input");
    } else {
      f1_ = multimap_from_json(payload("F1"));
      f2_ = multimap_from_json(payload("F2"));
      require_dim(f2_.n(), f1_.n(), "F2 input");
      require_dim(f2_.m(), f1_.m(), "F2 output");
    }
  }
  void whole(Outcome&) override {
    switch (inst_.kind) {
      case Kind::kCodSum: combined_ = sum(f1_, f2_); break;
      case Kind::kCodChain: combined_ = compose(f2_, f1_); break;
      default: combined_ = intersect(f1_, f2_); break;
    }
  }
  void probe(const Json& p, std::size_t, Outcome& out) override {
    const Vec x = probe_vec(p, "x");
    Vec y, dual;
    CoderivativeRuleResult r;
    if (inst_.kind == Kind::kCodSum) {
      const Vec y1 = probe_vec(p, "y1");
      const Vec y2 = probe_vec(p, "y2");
      dual = probe_vec(p, "ystar");
      require_dim(y1.size(), f1_.m(), "y1");
      require_dim(y2.size(), f1_.m(), "y2");
      y = add(y1, y2);
      r = coderivative_sum_rule(f1_, f2_, combined_, x, y, y1, y2, dual);
    } else if (inst_.kind == Kind::kCodChain) {
      const Vec mid = probe_vec(p, "y");
      y = probe_vec(p, "z");
      dual = probe_vec(p, "zstar");
      require_dim(mid.size(), f1_.m(), "y");
      require_dim(y.size(), f2_.m(), "z");
      r = coderivative_chain_rule(f1_, f2_, combined_, x, mid, y, dual);
    } else {
      y = probe_vec(p, "y");
      dual = probe_vec(p, "ystar");
      require_dim(y.size(), f1_.m(), "y");
      r = coderivative_intersection_rule(f1_, f2_, x, y, dual);
    }
    require_dim(x.size(), f1_.n(), "x");
    require_dim(dual.size(), combined_.m(), "dual direction");
    out.witness["lhs"] = to_json(r.lhs);
    out.witness["rhs"] = to_json(r.rhs);
    out.witness["qc"] = qc_json(r.qc);
    out.expect(r.equal, "coderivative rule: lhs differs from rhs");
    check_coderivative(out, combined_.graph(), x, y, dual, r.lhs);
    sample(out, r.reading);
  }

 private:
  Multimap f1_, f2_, combined_;
};

class ExtremalChecker : public Checker {
 public:
  ExtremalChecker(const Instance& i, const HarnessConfig& c)
      : Checker(i, c),
        o1_(hpolyhedron_from_json(payload("omega1"))),
        o2_(hpolyhedron_from_json(payload("omega2"))) {
    require_dim(o2_.dim(), o1_.dim(), "omega2");
  }
  bool needs_probes() const override { return false; }
  void whole(Outcome& out) override {
    const bool extremal = is_extremal_system(o1_, o2_);
    out.witness["extremal"] = extremal;
    if (inst_.payload.contains("expect_extremal")) {
      out.expect(inst_.payload["expect_extremal"].get<bool>() == extremal,
                 "extremality differs from the expected answer");
    }
    if (!extremal) {
      bool rejected = false;
      try {
        separate(o1_, o2_);
      } catch (const Error& e) {
        rejected = e.kind() == ErrorKind::kNotExtremal;
      }
      out.witness["rejected"] = rejected;
      out.expect(rejected, "separation of a non-extremal pair was not rejected");
      return;
    }
    const ExtremalWitness w = separate(o1_, o2_);
    const std::size_t n = o1_.dim();
    out.witness["separator"] = to_json(w.separator);
    out.witness["sup"] = to_json(w.sup_value);
    out.witness["inf"] = to_json(w.inf_value);
    out.witness["translation"] = to_json(w.translation);
    out.expect(!is_zero(w.separator), "zero separator");
    out.expect(w.sup_value <= w.inf_value, "sup exceeds inf");
    const HPolyhedron moved =
        affine_preimage_rows(o1_, identity(n), n, negate(w.translation));
    out.expect(!is_feasible(moved.intersect(o2_)), "translated sets still meet");
    out.cross_check("sup over Ω1", ExtReal(w.sup_value),
                    support_oracle(o1_, w.separator));
    out.cross_check("inf over Ω2", ExtReal(w.inf_value),
                    -support_oracle(o2_, negate(w.separator)));
  }
  void probe(const Json&, std::size_t, Outcome&) override {}

 private:
  HPolyhedron o1_, o2_;
};

std::unique_ptr<Checker> make_checker(const Instance& inst, const HarnessConfig& cfg) {
  switch (inst.kind) {
    case Kind::kSupportIntersection:
      return std::make_unique<SupportIntersectionChecker>(inst, cfg);
    case Kind::kNormalIntersection:
      return std::make_unique<NormalIntersectionChecker>(inst, cfg);
    case Kind::kConjugateSum:
      return std::make_unique<ConjugateSumChecker>(inst, cfg);
    case Kind::kConjugateChain:
      return std::make_unique<ConjugateChainChecker>(inst, cfg);
    case Kind::kConjugateMax:
      return std::make_unique<ConjugateMaxChecker>(inst, cfg);
    case Kind::kSubdiffSum:
    case Kind::kSubdiffChain:
    case Kind::kSubdiffMax:
      return std::make_unique<SubdiffChecker>(inst, cfg);
    case Kind::kMarginalConjugate:
    case Kind::kMarginalSubdiff:
      return std::make_unique<MarginalChecker>(inst, cfg);
    case Kind::kOrderedChain:
      return std::make_unique<OrderedChainChecker>(inst, cfg);
    case Kind::kCodSum:
    case Kind::kCodChain:
    case Kind::kCodIntersect:
      return std::make_unique<CoderivativeChecker>(inst, cfg);
    case Kind::kExtremal:
      return std::make_unique<ExtremalChecker>(inst, cfg);
    case Kind::kBiconjugate:
      return std::make_unique<BiconjugateChecker>(inst, cfg);
  }
  fail(ErrorKind::kSchemaError, "unknown kind");
}

// Runs `body`, turning library errors other than input errors into a skip.
template <class Body>
void guarded(Outcome& out, Body body) {
  try {
    body();
  } catch (const Error& e) {
    if (is_input_error(e.kind())) throw;
    out.skip(e.what());
  }
}

void absorb(Report& report, Outcome& o, const Json& probes_for_counterexample,
            const Instance& inst) {
  report.oracle.merge(o.oracle);
  if (!o.oracle.ok()) o.expect(false, "oracle mismatch");
  if (o.verdict == Verdict::kPass) return;
  if (o.verdict == Verdict::kFail) {
    if (report.verdict != Verdict::kFail) {
      report.verdict = Verdict::kFail;
      report.reason = o.reason;
      Instance cut = inst;
      cut.probes = probes_for_counterexample;
      report.counterexample = to_json(cut);
    }
  } else if (report.verdict == Verdict::kPass) {
    report.verdict = Verdict::kSkip;
    report.reason = o.reason;
  }
}

Report run_unguarded(const Instance& inst, const HarnessConfig& cfg) {
  Report report;
  report.id = inst.id;
  report.kind = inst.kind;

  std::unique_ptr<Checker> checker;
  Outcome whole;
  guarded(whole, [&] {
    checker = make_checker(inst, cfg);
    checker->whole(whole);
    report.qc = checker->qc();
  });
  if (whole.witness.size() > 0) report.witnesses.push_back(whole.witness);
  absorb(report, whole, inst.probes, inst);
  if (!checker || whole.verdict == Verdict::kSkip) return report;

  if (inst.probes.empty() && checker->needs_probes()) {
    if (report.verdict == Verdict::kPass) {
      report.verdict = Verdict::kSkip;
      report.reason = "no probes";
    }
    return report;
  }
  for (std::size_t i = 0; i < inst.probes.size(); ++i) {
    Outcome o;
    guarded(o, [&] { checker->probe(inst.probes[i], i, o); });
    if (o.verdict == Verdict::kSkip) o.reason = "probe " + std::to_string(i) + ": " + o.reason;
    Json w{{"probe", i}};
    w.update(o.witness);
    report.witnesses.push_back(std::move(w));
    absorb(report, o, Json::array({inst.probes[i]}), inst);
  }
  return report;
}

}  // namespace

std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::kPass: return "pass";
    case Verdict::kFail: return "fail";
    case Verdict::kSkip: return "skip";
  }
  return "unknown";
}

Json to_json(const Report& report) {
  Json out{{"id", report.id},
           {"kind", std::string(kind_name(report.kind))},
           {"verdict", std::string(verdict_name(report.verdict))}};
  if (report.verdict != Verdict::kPass) out["reason"] = report.reason;
  out["qc"] = report.qc;
  out["witnesses"] = report.witnesses;
  out["oracle"] = to_json(report.oracle);
  if (report.counterexample) out["counterexample"] = *report.counterexample;
  return out;
}

Report run_instance(const Instance& instance, const HarnessConfig& config) {
  try {
    return run_unguarded(instance, config);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::kSchemaError, instance.id + ": " + e.what());
  } catch (const Error& e) {
    throw Error(e.kind(), instance.id + ": " +
                              std::string(e.what()).substr(
                                  error_kind_name(e.kind()).size() + 2));
  }
}

Report run_check(const std::filesystem::path& file, const HarnessConfig& config) {
  return run_instance(load_instance(file), config);
}

FuzzSummary fuzz(const FuzzOptions& options, std::ostream* reports) {
  FuzzSummary summary;
  for (std::size_t i = 0; i < options.count; ++i) {
    const std::optional<Instance> inst =
        generate_instance(options.kind, options.seed, i, options.generator);
    Report report;
    if (!inst) {
      ++summary.generation_failures;
      report.id = std::string(kind_name(options.kind)) + "-" +
                  std::to_string(options.seed) + "-" + std::to_string(i);
      report.kind = options.kind;
      report.verdict = Verdict::kSkip;
      report.reason = "generation failure";
    } else {
      try {
        report = run_instance(*inst, options.config);
      } catch (const Error& e) {
        // Generated instances are valid by construction, so an input error
        // here is a defect worth reporting with the instance attached.
        report.id = inst->id;
        report.kind = inst->kind;
        report.verdict = Verdict::kFail;
        report.reason = e.what();
        report.counterexample = to_json(*inst);
      }
    }
    switch (report.verdict) {
      case Verdict::kPass: ++summary.pass; break;
      case Verdict::kFail: ++summary.fail; break;
      case Verdict::kSkip: ++summary.skip; break;
    }
    if (reports) *reports << to_json(report).dump() << '\n';
  }
  return summary;
}

std::string summary_line(Kind kind, const FuzzSummary& s) {
  std::ostringstream out;
  out << kind_name(kind) << ": " << s.total() << " instances, " << s.pass
      << " pass, " << s.fail << " fail, " << s.skip << " skip";
  if (s.generation_failures > 0) {
    out << " (" << s.generation_failures << " generation failures)";
  }
  return out.str();
}

}  // namespace polycalc
