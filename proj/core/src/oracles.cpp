#include "polycalc/oracles.hpp"

#include "polycalc/errors.hpp"
#include "polycalc/lp.hpp"
#include "polycalc/polyhedra.hpp"
#include "polycalc/random.hpp"

namespace polycalc {
namespace {

// Sup of a linear functional over conv V + cone R + span L given per
// generator values.
template <class Value>
ExtReal generator_sup(const Generators& g, Value value) {
  for (const Vec& l : g.lineality) {
    if (sgn(value(l, false)) != 0) return ExtReal::plus_infinity();
  }
  for (const Vec& r : g.rays) {
    if (sgn(value(r, false)) > 0) return ExtReal::plus_infinity();
  }
  ExtReal best = ExtReal::minus_infinity();
  for (const Vec& v : g.vertices) {
    const ExtReal here(value(v, true));
    if (here > best) best = here;
  }
  return best;
}

}  // namespace

void OracleReport::merge(const OracleReport& other) {
  checked += other.checked;
  mismatches.insert(mismatches.end(), other.mismatches.begin(),
                    other.mismatches.end());
}

ExtReal support_oracle(const HPolyhedron& omega, VecView xstar) {
  require_dim(xstar.size(), omega.dim(), "support_oracle");
  if (is_empty(omega)) return ExtReal::minus_infinity();
  return generator_sup(h_to_v(omega),
                       [&](const Vec& g, bool) { return dot(xstar, g); });
}

ExtReal conjugate_oracle(const PLFunction& f, VecView xstar) {
  const std::size_t n = f.dim();
  require_dim(xstar.size(), n, "conjugate_oracle");
  return generator_sup(h_to_v(f.epi()), [&](const Vec& g, bool) {
    return Rational(dot(xstar, VecView(g).first(n)) - g[n]);
  });
}

ExtReal value_oracle(const PLFunction& f, VecView x) {
  const std::size_t n = f.dim();
  require_dim(x.size(), n, "value_oracle");
  // With t-coefficient c < 0 a row a·x + c t ≤ b reads t ≥ (b - a·x) / c;
  // rows without t cut out the domain.
  ExtReal best = ExtReal::minus_infinity();
  for (const Row& r : f.epi().ineq()) {
    const Rational ax = dot(VecView(r.a).first(n), x);
    const Rational& c = r.a[n];
    if (sgn(c) == 0) {
      if (ax > r.b) return ExtReal::plus_infinity();
      continue;
    }
    const ExtReal bound(Rational((r.b - ax) / c));
    if (bound > best) best = bound;
  }
  for (const Row& r : f.epi().eq()) {
    if (dot(VecView(r.a).first(n), x) != r.b) return ExtReal::plus_infinity();
  }
  if (best.is_minus_infinity()) {
    fail(ErrorKind::kInternalConsistency, "epigraph without a lower bound");
  }
  return best;
}

bool subgradient_oracle(const PLFunction& f, VecView xbar, VecView xstar) {
  const std::size_t n = f.dim();
  require_dim(xstar.size(), n, "subgradient_oracle");
  const ExtReal fx = value_oracle(f, xbar);
  if (!fx.is_finite()) fail(ErrorKind::kNotInDomain, "x̄ ∉ dom f");
  // ⟨x*, x - x̄⟩ - (t - f(x̄)) ≤ 0 on all of epi f.
  const ExtReal sup = generator_sup(h_to_v(f.epi()), [&](const Vec& g,
                                                         bool is_point) {
    Rational s = dot(xstar, VecView(g).first(n)) - g[n];
    if (is_point) s += fx.value() - dot(xstar, xbar);
    return s;
  });
  return sup <= ExtReal(0);
}

OracleReport decomposition_sampler(const LinearImageReading& reading,
                                   std::uint64_t seed, std::size_t count) {
  OracleReport report;
  if (is_empty(reading.preimage)) return report;
  const Generators g = h_to_v(reading.preimage);

  for (std::size_t i = 0; i < count; ++i) {
    Rng rng(seed, 0x5a3d, i);
    // A random convex combination of vertices plus small cone and span
    // components.
    Vec p = zeros(reading.preimage.dim());
    Rational total = 0;
    std::vector<long> w(g.vertices.size());
    for (long& x : w) {
      x = rng.uniform(0, 4);
      total += x;
    }
    if (total == 0) {
      w[0] = 1;
      total = 1;
    }
    for (std::size_t k = 0; k < g.vertices.size(); ++k) {
      p = add(p, scale(g.vertices[k], Rational(w[k]) / total));
    }
    for (const Vec& r : g.rays) p = add(p, scale(r, Rational(rng.uniform(0, 3))));
    for (const Vec& l : g.lineality) {
      p = add(p, scale(l, Rational(rng.uniform(-3, 3))));
    }
    ++report.checked;
    const Vec image = mat_vec(reading.map, p);
    if (!reading.preimage.contains(p) || !reading.image.contains(image)) {
      report.mismatches.push_back(
          {to_string(p), to_string(image), "image point outside the computed set"});
    }
  }

  // Every vertex of the image must be the image of some preimage point.
  const Generators img = h_to_v(reading.image);
  for (const Vec& v : img.vertices) {
    ++report.checked;
    HPolyhedron fiber = reading.preimage;
    for (std::size_t r = 0; r < reading.map.size(); ++r) {
      fiber.add_eq(reading.map[r], v[r]);
    }
    const auto w = feasible_point(fiber);
    if (!w || !reading.preimage.contains(*w) || mat_vec(reading.map, *w) != v) {
      report.mismatches.push_back(
          {to_string(v), "vertex of the computed set", "no preimage witness"});
    }
  }
  return report;
}

}  // namespace polycalc
