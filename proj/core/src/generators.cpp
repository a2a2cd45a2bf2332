#include "polycalc/generators.hpp"

#include "polycalc/errors.hpp"
#include "polycalc/lp.hpp"
#include "polycalc/marginals.hpp"
#include "polycalc/multimap.hpp"
#include "polycalc/plfunction.hpp"
#include "polycalc/polyhedra.hpp"

namespace polycalc {

Vec random_vec(Rng& rng, std::size_t n, long lo, long hi) {
  Vec v(n);
  for (Rational& x : v) x = rng.uniform(lo, hi);
  return v;
}

Vec random_nonzero_vec(Rng& rng, std::size_t n, long lo, long hi) {
  Vec v = random_vec(rng, n, lo, hi);
  while (is_zero(v)) v = random_vec(rng, n, lo, hi);
  return v;
}

HPolyhedron random_polytope(Rng& rng, VecView planted, std::size_t budget,
                            bool tight) {
  const std::size_t n = planted.size();
  HPolyhedron p(n);
  for (std::size_t i = 0; i < n; ++i) {
    p.add_ineq(unit(n, i), planted[i] + rng.uniform(tight ? 0 : 1, 3));
    p.add_ineq(negate(unit(n, i)), -planted[i] + rng.uniform(1, 3));
  }
  for (std::size_t k = 0; k < budget; ++k) {
    Vec a = random_nonzero_vec(rng, n, -3, 3);
    const Rational b = dot(a, planted) + rng.uniform(tight ? 0 : 1, 2);
    p.add_ineq(std::move(a), b);
  }
  return p;
}

namespace {

// A generated max-affine function with its JSON form.
struct GenFunction {
  Json json;
  PLFunction f;
};

enum class DomainMode { kUniverse, kPolytope, kInteriorPolytope, kRandom };

GenFunction random_function(Rng& rng, VecView planted, std::size_t budget,
                            DomainMode mode) {
  const std::size_t n = planted.size();
  if (mode == DomainMode::kRandom) {
    mode = rng.coin() ? DomainMode::kUniverse : DomainMode::kPolytope;
  }
  HPolyhedron domain(n);
  if (mode != DomainMode::kUniverse) {
    domain = random_polytope(rng, planted, budget,
                             mode == DomainMode::kPolytope);
  }
  std::vector<Row> pieces;
  const long count = rng.uniform(1, 3);
  Json rows = Json::array();
  for (long k = 0; k < count; ++k) {
    Row r{random_vec(rng, n, -3, 3), Rational(rng.uniform(-3, 3))};
    Json row = to_json(r.a);
    row.push_back(to_json(r.b));
    rows.push_back(std::move(row));
    pieces.push_back(std::move(r));
  }
  PLFunction f = PLFunction::max_affine(pieces, domain);
  return {Json{{"max_affine", std::move(rows)}, {"domain", to_json(domain)}},
          std::move(f)};
}

std::size_t pick_dim(Rng& rng, const GeneratorOptions& o) {
  return static_cast<std::size_t>(
      rng.uniform(static_cast<long>(o.dim_lo), static_cast<long>(o.dim_hi)));
}

Json xstar_probes(Rng& rng, std::size_t n, std::size_t count) {
  Json probes = Json::array();
  for (std::size_t i = 0; i < count; ++i) {
    probes.push_back(to_json(random_vec(rng, n, -3, 3)));
  }
  return probes;
}

// A vertex of P maximizing a random direction, if the LP is bounded.
std::optional<Vec> random_vertex(Rng& rng, const HPolyhedron& p) {
  const LpResult r =
      solve_lp(random_nonzero_vec(rng, p.dim(), -3, 3), Sense::kMaximize, p);
  if (const auto* opt = std::get_if<LpOptimal>(&r)) return opt->point;
  return std::nullopt;
}

Matrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols) {
  Matrix a(rows);
  for (Vec& r : a) r = random_vec(rng, cols, -2, 2);
  return a;
}

Json multimap_json(std::size_t n, std::size_t m, const HPolyhedron& graph) {
  return Json{{"n", n}, {"m", m}, {"graph", to_json(graph)}};
}

Instance build(Kind kind, Rng& rng, const GeneratorOptions& o,
               std::size_t index) {
  Instance inst;
  inst.kind = kind;
  const std::size_t n = pick_dim(rng, o);
  const std::size_t b = o.budget;
  const Vec p = random_vec(rng, n, -2, 2);
  Json& pay = inst.payload;
  Json& probes = inst.probes;

  switch (kind) {
    case Kind::kSupportIntersection:
    case Kind::kNormalIntersection: {
      const bool normal = kind == Kind::kNormalIntersection;
      const HPolyhedron o1 = random_polytope(rng, p, b, normal);
      const HPolyhedron o2 = random_polytope(rng, p, b, normal);
      pay["omega1"] = to_json(o1);
      pay["omega2"] = to_json(o2);
      if (!normal) {
        probes = xstar_probes(rng, n, 5);
      } else {
        probes.push_back(to_json(p));
        if (const auto v = random_vertex(rng, o1.intersect(o2))) {
          probes.push_back(to_json(*v));
        }
      }
      break;
    }
    case Kind::kConjugateSum:
    case Kind::kConjugateMax:
    case Kind::kSubdiffSum:
    case Kind::kSubdiffMax: {
      const bool max_rule = kind == Kind::kSubdiffMax;
      const DomainMode mode =
          max_rule ? (rng.coin() ? DomainMode::kUniverse
                                 : DomainMode::kInteriorPolytope)
                   : DomainMode::kRandom;
      GenFunction f1 = random_function(rng, p, b, mode);
      GenFunction f2 = random_function(rng, p, b, mode);
      if (max_rule && rng.coin()) {
        // Shift f2 so that both functions are active at the planted point.
        const Rational gap = evaluate(f1.f, p).value() - evaluate(f2.f, p).value();
        for (Json& row : f2.json["max_affine"]) {
          row.back() = to_json(rational_from_json(row.back()) + gap);
        }
      }
      pay["f1"] = f1.json;
      pay["f2"] = f2.json;
      if (kind == Kind::kConjugateSum || kind == Kind::kConjugateMax) {
        probes = xstar_probes(rng, n, 5);
      } else {
        probes.push_back(to_json(p));
        if (!max_rule) {
          const HPolyhedron common = f1.f.domain().intersect(f2.f.domain());
          if (const auto v = random_vertex(rng, common)) {
            probes.push_back(to_json(*v));
          }
        }
      }
      break;
    }
    case Kind::kConjugateChain:
    case Kind::kSubdiffChain: {
      const std::size_t m = pick_dim(rng, o);
      const Matrix a = random_matrix(rng, m, n);
      const Vec s = random_vec(rng, m, -2, 2);
      const LinearMap map(a, n, s);
      const Vec y0 = map.apply(p);
      GenFunction g = random_function(rng, y0, b, DomainMode::kRandom);
      pay["g"] = g.json;
      pay["map"] = to_json(map);
      if (kind == Kind::kConjugateChain) {
        // Half the probes lie in the range of Aᵀ, where the value can be
        // finite.
        const Matrix at = map.adjoint();
        for (int i = 0; i < 5; ++i) {
          probes.push_back(to_json(i % 2 == 0 ? mat_vec(at, random_vec(rng, m, -2, 2))
                                              : random_vec(rng, n, -3, 3)));
        }
      } else {
        probes.push_back(to_json(p));
        const HPolyhedron pre = affine_preimage_rows(g.f.domain(), a, n, s);
        if (const auto v = random_vertex(rng, pre)) probes.push_back(to_json(*v));
      }
      break;
    }
    case Kind::kBiconjugate: {
      pay["f"] = random_function(rng, p, b, DomainMode::kRandom).json;
      probes = xstar_probes(rng, n, 5);
      break;
    }
    case Kind::kMarginalConjugate:
    case Kind::kMarginalSubdiff: {
      const std::size_t m = pick_dim(rng, o);
      const Vec y0 = random_vec(rng, m, -2, 2);
      const Vec xy = concat(p, y0);
      const HPolyhedron graph = random_polytope(rng, xy, b, true);
      if (rng.coin()) {
        pay["phi"] = random_function(rng, xy, b, DomainMode::kRandom).json;
      } else {
        // A cost that ignores x: pieces and domain rows vanish on x.
        GenFunction psi = random_function(rng, y0, b, DomainMode::kRandom);
        Json pieces = Json::array();
        for (const Json& row : psi.json["max_affine"]) {
          Json full = to_json(zeros(n));
          for (const Json& x : row) full.push_back(x);
          pieces.push_back(std::move(full));
        }
        HPolyhedron dom(n + m);
        const HPolyhedron ydom = hpolyhedron_from_json(psi.json["domain"]);
        for (const Row& r : ydom.ineq()) dom.add_ineq(concat(zeros(n), r.a), r.b);
        for (const Row& r : ydom.eq()) dom.add_eq(concat(zeros(n), r.a), r.b);
        pay["phi"] = Json{{"max_affine", std::move(pieces)}, {"domain", to_json(dom)}};
      }
      pay["F"] = multimap_json(n, m, graph);
      if (kind == Kind::kMarginalConjugate) {
        probes = xstar_probes(rng, n, 5);
      } else {
        probes.push_back(to_json(p));
      }
      break;
    }
    case Kind::kOrderedChain: {
      const std::size_t m = pick_dim(rng, o);
      HPolyhedron yplus(m);
      for (std::size_t i = 0; i < m; ++i) yplus.add_ineq(negate(unit(m, i)), 0);
      if (m > 1 && rng.coin()) yplus.add_ineq(random_nonzero_vec(rng, m, -3, 3), 0);
      const LinearMap f(random_matrix(rng, m, n), n, random_vec(rng, m, -2, 2));
      const Vec y0 = f.apply(p);
      // Nonnegative slopes make φ nondecreasing on the orthant and on every
      // cone inside it.
      Json rows = Json::array();
      const long count = rng.uniform(1, 3);
      for (long k = 0; k < count; ++k) {
        Json row = to_json(random_vec(rng, m, 0, 3));
        row.push_back(to_json(Rational(rng.uniform(-3, 3))));
        rows.push_back(std::move(row));
      }
      HPolyhedron dom(m);
      if (rng.coin()) {
        for (std::size_t i = 0; i < m; ++i) {
          dom.add_ineq(negate(unit(m, i)), -y0[i] + rng.uniform(0, 2));
        }
      }
      pay["Yplus"] = to_json(yplus);
      pay["f"] = Json{{"A", to_json(f.a)}, {"b", to_json(f.shift)}, {"cols", n}};
      pay["phi"] = Json{{"max_affine", std::move(rows)}, {"domain", to_json(dom)}};
      probes.push_back(to_json(p));
      break;
    }
    case Kind::kCodSum:
    case Kind::kCodIntersect: {
      const std::size_t m = pick_dim(rng, o);
      const Vec y1 = random_vec(rng, m, -2, 2);
      const Vec y2 = kind == Kind::kCodSum ? random_vec(rng, m, -2, 2) : y1;
      pay["F1"] = multimap_json(n, m, random_polytope(rng, concat(p, y1), b, true));
      pay["F2"] = multimap_json(n, m, random_polytope(rng, concat(p, y2), b, true));
      for (int i = 0; i < 3; ++i) {
        const Vec ystar = i == 0 ? zeros(m) : random_vec(rng, m, -3, 3);
        Json probe{{"x", to_json(p)}};
        if (kind == Kind::kCodSum) {
          probe["y1"] = to_json(y1);
          probe["y2"] = to_json(y2);
        } else {
          probe["y"] = to_json(y1);
        }
        probe["ystar"] = to_json(ystar);
        probes.push_back(std::move(probe));
      }
      break;
    }
    case Kind::kCodChain: {
      const std::size_t m = pick_dim(rng, o);
      const std::size_t q = pick_dim(rng, o);
      const Vec y0 = random_vec(rng, m, -2, 2);
      const Vec z0 = random_vec(rng, q, -2, 2);
      pay["F"] = multimap_json(n, m, random_polytope(rng, concat(p, y0), b, true));
      pay["G"] = multimap_json(m, q, random_polytope(rng, concat(y0, z0), b, true));
      for (int i = 0; i < 3; ++i) {
        probes.push_back(Json{{"x", to_json(p)},
                              {"y", to_json(y0)},
                              {"z", to_json(z0)},
                              {"zstar", to_json(i == 0 ? zeros(q)
                                                       : random_vec(rng, q, -3, 3))}});
      }
      break;
    }
    case Kind::kExtremal: {
      // Even indices touch along a hyperplane through p, odd ones share p
      // as an interior point.
      const bool extremal = index % 2 == 0;
      pay["expect_extremal"] = extremal;
      HPolyhedron o1 = random_polytope(rng, p, b, false);
      HPolyhedron o2 = random_polytope(rng, p, b, false);
      if (extremal) {
        const Vec a = random_nonzero_vec(rng, n, -3, 3);
        o1.add_ineq(a, dot(a, p));
        o2.add_ineq(negate(a), -dot(a, p));
      }
      pay["omega1"] = to_json(o1);
      pay["omega2"] = to_json(o2);
      break;
    }
  }
  return inst;
}

// Parses the payload back through the loaders and checks the base points of
// the probes, so a returned instance always meets its rule's preconditions.
bool well_posed(const Instance& inst) {
  const Json& pay = inst.payload;
  switch (inst.kind) {
    case Kind::kMarginalConjugate:
    case Kind::kMarginalSubdiff: {
      MarginalProblem(plfunction_from_json(pay["phi"]), multimap_from_json(pay["F"]));
      return true;
    }
    case Kind::kOrderedChain: {
      const OrderedChainProblem q(cone_from_json(pay["Yplus"]),
                                  linear_map_from_json(pay["f"]),
                                  plfunction_from_json(pay["phi"]));
      return evaluate(q.phi(), q.f().apply(vec_from_json(inst.probes[0])))
          .is_finite();
    }
    default:
      return true;
  }
}

}  // namespace

std::optional<Instance> generate_instance(Kind kind, std::uint64_t seed,
                                          std::size_t index,
                                          const GeneratorOptions& options) {
  for (std::size_t attempt = 0; attempt < options.attempts; ++attempt) {
    Rng rng(seed, static_cast<std::uint64_t>(kind) * 64 + attempt, index);
    try {
      Instance inst = build(kind, rng, options, index);
      if (!well_posed(inst)) continue;
      inst.id = std::string(kind_name(kind)) + "-" + std::to_string(seed) +
                "-" + std::to_string(index);
      return inst;
    } catch (const Error&) {
      continue;
    }
  }
  return std::nullopt;
}

}  // namespace polycalc
