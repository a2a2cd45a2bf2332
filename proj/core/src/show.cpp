#include <sstream>

#include "polycalc/errors.hpp"
#include "polycalc/harness.hpp"
#include "polycalc/plfunction.hpp"
#include "polycalc/polyhedra.hpp"
#include "polycalc/supports.hpp"

namespace polycalc {
namespace {

std::string tuple(VecView v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i > 0) out += ", ";
    out += to_string(v[i]);
  }
  return out + ")";
}

void render_rows(std::ostream& out, const HPolyhedron& p, const std::string& pad) {
  for (const Row& r : p.ineq()) out << pad << tuple(r.a) << " . x <= " << to_string(r.b) << '\n';
  for (const Row& r : p.eq()) out << pad << tuple(r.a) << " . x = " << to_string(r.b) << '\n';
  if (p.ineq().empty() && p.eq().empty()) out << pad << "(no constraints)\n";
}

void render_set(std::ostream& out, const std::string& title, const HPolyhedron& raw,
                const std::string& pad = "  ") {
  const HPolyhedron p = canonicalize(raw);
  out << pad << title << " in dimension " << p.dim() << '\n';
  if (is_empty(p)) {
    out << pad << "  empty\n";
    return;
  }
  out << pad << "  H-form\n";
  render_rows(out, p, pad + "    ");
  const Generators g = h_to_v(p);
  out << pad << "  V-form\n";
  for (const Vec& v : g.vertices) out << pad << "    vertex " << tuple(v) << '\n';
  for (const Vec& r : g.rays) out << pad << "    ray " << tuple(r) << '\n';
  for (const Vec& l : g.lineality) out << pad << "    line " << tuple(l) << '\n';
}

enum class Slot { kSet, kCone, kFunction, kMultimap, kLinear };

struct Entry {
  const char* key;
  Slot slot;
};

std::vector<Entry> entries(Kind kind) {
  switch (kind) {
    case Kind::kSupportIntersection:
    case Kind::kNormalIntersection:
    case Kind::kExtremal:
      return {{"omega1", Slot::kSet}, {"omega2", Slot::kSet}};
    case Kind::kConjugateSum:
    case Kind::kConjugateMax:
    case Kind::kSubdiffSum:
    case Kind::kSubdiffMax:
      return {{"f1", Slot::kFunction}, {"f2", Slot::kFunction}};
    case Kind::kConjugateChain:
    case Kind::kSubdiffChain:
      return {{"g", Slot::kFunction}, {"map", Slot::kLinear}};
    case Kind::kBiconjugate:
      return {{"f", Slot::kFunction}};
    case Kind::kMarginalConjugate:
    case Kind::kMarginalSubdiff:
      return {{"phi", Slot::kFunction}, {"F", Slot::kMultimap}};
    case Kind::kOrderedChain:
      return {{"Yplus", Slot::kCone}, {"f", Slot::kLinear}, {"phi", Slot::kFunction}};
    case Kind::kCodSum:
    case Kind::kCodIntersect:
      return {{"F1", Slot::kMultimap}, {"F2", Slot::kMultimap}};
    case Kind::kCodChain:
      return {{"F", Slot::kMultimap}, {"G", Slot::kMultimap}};
  }
  return {};
}

// Probes read as dual vectors (x*) rather than base points (x̄).
bool dual_probes(Kind kind) {
  return kind == Kind::kSupportIntersection || kind == Kind::kConjugateSum ||
         kind == Kind::kConjugateChain || kind == Kind::kConjugateMax ||
         kind == Kind::kMarginalConjugate || kind == Kind::kBiconjugate;
}

}  // namespace

std::string show(const Instance& inst) {
  std::ostringstream out;
  out << "instance " << inst.id << " (" << kind_name(inst.kind) << ")\n";
  struct Loaded {
    std::string key;
    std::optional<HPolyhedron> set;
    std::optional<PLFunction> f;
  };
  std::vector<Loaded> loaded;
  for (const Entry& e : entries(inst.kind)) {
    const Json& j = member(inst.payload, e.key);
    out << e.key << '\n';
    switch (e.slot) {
      case Slot::kSet:
      case Slot::kCone: {
        const HPolyhedron p = hpolyhedron_from_json(j);
        render_set(out, e.slot == Slot::kCone ? "cone" : "set", p);
        loaded.push_back({e.key, p, std::nullopt});
        break;
      }
      case Slot::kFunction: {
        const PLFunction f = plfunction_from_json(j);
        render_set(out, "epigraph", f.epi());
        render_set(out, "domain", f.domain());
        loaded.push_back({e.key, std::nullopt, f});
        break;
      }
      case Slot::kMultimap: {
        const Multimap m = multimap_from_json(j);
        out << "  maps dimension " << m.n() << " to dimension " << m.m() << '\n';
        render_set(out, "graph", m.graph());
        render_set(out, "dom F", m.domain());
        break;
      }
      case Slot::kLinear: {
        const LinearMap a = linear_map_from_json(j);
        out << "  " << a.rows() << " x " << a.cols << " affine map\n";
        for (std::size_t r = 0; r < a.rows(); ++r) {
          out << "    row " << tuple(a.a[r]) << " shift " << to_string(a.shift[r]) << '\n';
        }
        break;
      }
    }
  }
  const bool dual = dual_probes(inst.kind);
  for (std::size_t i = 0; i < inst.probes.size(); ++i) {
    const Json& p = inst.probes[i];
    out << "probe " << i << ": " << p.dump() << '\n';
    if (!p.is_array()) continue;
    const Vec v = vec_from_json(p);
    for (const Loaded& l : loaded) {
      try {
        if (l.set && l.set->dim() == v.size()) {
          if (dual) {
            out << "  support of " << l.key << ": " << to_string(support(*l.set, v).value) << '\n';
          } else {
            out << "  in " << l.key << ": " << (l.set->contains(v) ? "yes" : "no") << '\n';
          }
        } else if (l.f && l.f->dim() == v.size()) {
          if (dual) {
            out << "  " << l.key << "*: " << to_string(conjugate_value(*l.f, v)) << '\n';
          } else {
            out << "  " << l.key << ": " << to_string(evaluate(*l.f, v)) << '\n';
          }
        }
      } catch (const Error& e) {
        out << "  " << l.key << ": " << e.what() << '\n';
      }
    }
  }
  return out.str();
}

}  // namespace polycalc
