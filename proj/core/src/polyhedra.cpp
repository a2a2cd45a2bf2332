#include "polycalc/polyhedra.hpp"

#include <algorithm>
#include <iterator>
#include <map>
#include <numeric>
#include <utility>

#include "polycalc/double_description.hpp"
#include "polycalc/errors.hpp"
#include "polycalc/linalg.hpp"
#include "polycalc/lp.hpp"

namespace polycalc {
namespace {

// Scales (a, b) by a positive factor so that a is a primitive integer
// vector. Equalities additionally get a positive leading coefficient.
void normalize_row(Row& row, bool is_eq) {
  if (is_zero(row.a)) return;
  Vec prim = primitive(row.a);
  std::size_t i = 0;
  while (sgn(row.a[i]) == 0) ++i;
  const Rational factor = prim[i] / row.a[i];
  row.b *= factor;
  row.a = std::move(prim);
  if (is_eq && sgn(row.a[i]) < 0) {
    row.a = negate(row.a);
    row.b = -row.b;
  }
}

bool row_less(const Row& x, const Row& y) {
  const auto c = lex_compare(x.a, y.a);
  if (c != 0) return c < 0;
  return x.b < y.b;
}

Rational l1_norm(VecView a) {
  Rational s = 0;
  for (const Rational& x : a) s += abs(x);
  return s;
}

Vec drop_coordinate(const Vec& a, std::size_t j) {
  Vec r;
  r.reserve(a.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i != j) r.push_back(a[i]);
  }
  return r;
}

// r ← r - (r.a[v] / e.a[v]) e
void substitute(Row& r, const Row& e, std::size_t v) {
  if (sgn(r.a[v]) == 0) return;
  const Rational f = r.a[v] / e.a[v];
  for (std::size_t j = 0; j < r.a.size(); ++j) {
    if (sgn(e.a[j]) != 0) r.a[j] -= f * e.a[j];
  }
  r.b -= f * e.b;
}

HPolyhedron remove_redundant(const HPolyhedron& p) {
  const auto& ineq = p.ineq();
  // implies() needs a nonempty system; every `rest` below contains p.
  if (!is_feasible(p)) return p;
  std::vector<bool> removed(ineq.size(), false);
  for (std::size_t i = 0; i < ineq.size(); ++i) {
    HPolyhedron rest(p.dim());
    for (std::size_t k = 0; k < ineq.size(); ++k) {
      if (k != i && !removed[k]) rest.add_ineq(ineq[k].a, ineq[k].b);
    }
    for (const Row& e : p.eq()) rest.add_eq(e.a, e.b);
    if (implies(rest, ineq[i].a, ineq[i].b)) removed[i] = true;
  }
  HPolyhedron out(p.dim());
  for (std::size_t k = 0; k < ineq.size(); ++k) {
    if (!removed[k]) out.add_ineq(ineq[k].a, ineq[k].b);
  }
  for (const Row& e : p.eq()) out.add_eq(e.a, e.b);
  return out;
}

// Eliminates coordinates keep.. of h, which must not occur in equalities.
// Rows carry the set of original rows they combine; after k eliminations a
// row built from more than k + 1 originals is implied by the others
// (Chernikov's rule). LP pruning only runs when the system still grows too
// large, after which the survivors count as a fresh set of originals.
HPolyhedron fourier_motzkin(HPolyhedron h, std::size_t keep) {
  constexpr std::size_t kPruneAbove = 48;
  struct Tracked {
    Row row;
    std::vector<std::size_t> from;  // sorted
  };
  std::vector<Tracked> rows;
  std::size_t steps = 0;
  auto restart = [&](const HPolyhedron& sys) {
    rows.clear();
    for (std::size_t i = 0; i < sys.ineq().size(); ++i) {
      rows.push_back({sys.ineq()[i], {i}});
    }
    steps = 0;
  };
  restart(h);
  std::vector<Row> eq = h.eq();
  std::size_t dim = h.dim();

  while (dim > keep) {
    std::size_t j = keep;
    std::size_t best_cost = 0;
    for (std::size_t c = keep; c < dim; ++c) {
      std::size_t pos = 0, neg = 0;
      for (const Tracked& t : rows) {
        pos += sgn(t.row.a[c]) > 0;
        neg += sgn(t.row.a[c]) < 0;
      }
      const std::size_t cost = pos * neg;
      if (c == keep || cost < best_cost) {
        j = c;
        best_cost = cost;
      }
    }
    ++steps;
    std::vector<Tracked> next;
    std::vector<const Tracked*> pos, neg;
    for (const Tracked& t : rows) {
      const int s = sgn(t.row.a[j]);
      if (s > 0) {
        pos.push_back(&t);
      } else if (s < 0) {
        neg.push_back(&t);
      } else {
        next.push_back(t);
      }
    }
    for (const Tracked* pr : pos) {
      for (const Tracked* nr : neg) {
        std::vector<std::size_t> from;
        std::set_union(pr->from.begin(), pr->from.end(), nr->from.begin(),
                       nr->from.end(), std::back_inserter(from));
        if (from.size() > steps + 1) continue;
        const Rational cp = -nr->row.a[j];
        const Rational cn = pr->row.a[j];
        Row combo{Vec(dim), Rational(pr->row.b * cp + nr->row.b * cn)};
        for (std::size_t k = 0; k < dim; ++k) {
          combo.a[k] = pr->row.a[k] * cp + nr->row.a[k] * cn;
        }
        normalize_row(combo, false);
        next.push_back({std::move(combo), std::move(from)});
      }
    }
    // Drop column j, trivial rows and rows dominated by a parallel one.
    std::map<Vec, Tracked, LexLess> best;
    for (Tracked& t : next) {
      t.row.a = drop_coordinate(t.row.a, j);
      if (is_zero(t.row.a)) continue;  // 0 ≤ b holds on a feasible system
      auto it = best.find(t.row.a);
      if (it == best.end()) {
        best.emplace(t.row.a, std::move(t));
      } else if (t.row.b < it->second.row.b ||
                 (t.row.b == it->second.row.b &&
                  t.from.size() < it->second.from.size())) {
        it->second = std::move(t);
      }
    }
    rows.clear();
    for (auto& [key, t] : best) rows.push_back(std::move(t));
    for (Row& e : eq) e.a = drop_coordinate(e.a, j);
    --dim;

    if (rows.size() > kPruneAbove) {
      HPolyhedron sys(dim);
      for (const Tracked& t : rows) sys.add_ineq(t.row.a, t.row.b);
      for (const Row& e : eq) sys.add_eq(e.a, e.b);
      restart(remove_redundant(sys));
    }
  }
  HPolyhedron out(dim);
  for (const Tracked& t : rows) out.add_ineq(t.row.a, t.row.b);
  for (const Row& e : eq) out.add_eq(e.a, e.b);
  return out;
}

}  // namespace

PolyhedralCone::PolyhedralCone(const HPolyhedron& set)
    : set_(canonicalize(set)) {
  for (const Row& r : set_.ineq()) {
    if (sgn(r.b) != 0) {
      fail(ErrorKind::kInvalidOperation, "cone rows must have bound 0");
    }
  }
  for (const Row& r : set_.eq()) {
    if (sgn(r.b) != 0) {
      fail(ErrorKind::kInvalidOperation, "cone rows must have bound 0");
    }
  }
}

PolyhedralCone PolyhedralCone::zero(std::size_t dim) {
  HPolyhedron z(dim);
  for (std::size_t i = 0; i < dim; ++i) z.add_eq(unit(dim, i), Rational(0));
  return PolyhedralCone(z);
}

PolyhedralCone PolyhedralCone::whole(std::size_t dim) {
  return PolyhedralCone(HPolyhedron(dim));
}

HPolyhedron normalize_rows(const HPolyhedron& p) {
  const std::size_t n = p.dim();
  std::vector<Row> eq = p.eq();
  std::vector<Row> ineq = p.ineq();
  for (;;) {
    // Equalities: reduced echelon form of the augmented system.
    Matrix aug;
    for (const Row& e : eq) {
      Vec row = e.a;
      row.push_back(e.b);
      aug.push_back(std::move(row));
    }
    const std::vector<std::size_t> pivots = rref(aug, n + 1);
    if (!pivots.empty() && pivots.back() == n) return HPolyhedron::empty(n);
    eq.clear();
    for (std::size_t i = 0; i < aug.size(); ++i) {
      Row r{slice(aug[i], 0, n), aug[i][n]};
      for (Row& g : ineq) substitute(g, r, pivots[i]);
      normalize_row(r, true);
      eq.push_back(std::move(r));
    }

    std::map<Vec, Rational, LexLess> best;
    for (Row& g : ineq) {
      normalize_row(g, false);
      if (is_zero(g.a)) {
        if (sgn(g.b) < 0) return HPolyhedron::empty(n);
        continue;
      }
      auto it = best.find(g.a);
      if (it == best.end()) {
        best.emplace(g.a, g.b);
      } else if (g.b < it->second) {
        it->second = g.b;
      }
    }

    // Opposite pairs a·x ≤ b, -a·x ≤ -b collapse into an equality.
    bool found_eq = false;
    ineq.clear();
    for (auto it = best.begin(); it != best.end(); ++it) {
      const Vec opposite = negate(it->first);
      auto jt = best.find(opposite);
      if (jt != best.end()) {
        const int s = sgn(Rational(it->second + jt->second));
        if (s < 0) return HPolyhedron::empty(n);
        if (s == 0) {
          if (lex_compare(it->first, opposite) > 0) {
            eq.push_back(Row{it->first, it->second});
            found_eq = true;
          }
          continue;
        }
      }
      ineq.push_back(Row{it->first, it->second});
    }
    if (!found_eq) break;
  }
  std::sort(ineq.begin(), ineq.end(), row_less);
  std::sort(eq.begin(), eq.end(), row_less);
  return HPolyhedron(n, std::move(ineq), std::move(eq));
}

bool is_empty(const HPolyhedron& p) { return !is_feasible(p); }

bool is_bounded(const HPolyhedron& p) {
  if (is_empty(p)) return true;
  HPolyhedron rec(p.dim());
  for (const Row& r : p.ineq()) rec.add_ineq(r.a, Rational(0));
  for (const Row& r : p.eq()) rec.add_eq(r.a, Rational(0));
  for (std::size_t i = 0; i < p.dim(); ++i) {
    for (int s : {1, -1}) {
      const LpResult r =
          solve_lp(scale(unit(p.dim(), i), Rational(s)), Sense::kMaximize, rec);
      if (!std::holds_alternative<LpOptimal>(r)) return false;
    }
  }
  return true;
}

HPolyhedron canonicalize(const HPolyhedron& p) {
  HPolyhedron q = normalize_rows(p);
  if (q.is_trivially_empty()) return q;
  if (!is_feasible(q)) return HPolyhedron::empty(p.dim());
  return remove_redundant(q);
}

HPolyhedron project(const HPolyhedron& p,
                    const std::vector<std::size_t>& keep) {
  const std::size_t n = p.dim();
  std::vector<int> role(n, -1);  // position in keep, or -1
  for (std::size_t i = 0; i < keep.size(); ++i) {
    if (keep[i] >= n || role[keep[i]] != -1) {
      fail(ErrorKind::kDimensionMismatch, "project: invalid keep index set");
    }
    role[keep[i]] = static_cast<int>(i);
  }
  HPolyhedron q = normalize_rows(p);
  if (q.is_trivially_empty() || !is_feasible(q)) {
    return HPolyhedron::empty(keep.size());
  }

  // Substitute equalities for eliminated variables.
  std::vector<Row> ineq = q.ineq();
  std::vector<Row> eq = q.eq();
  for (std::size_t v = 0; v < n; ++v) {
    if (role[v] != -1) continue;
    auto it = std::find_if(eq.begin(), eq.end(),
                           [&](const Row& e) { return sgn(e.a[v]) != 0; });
    if (it == eq.end()) continue;
    const Row e = *it;
    eq.erase(it);
    for (Row& r : ineq) substitute(r, e, v);
    for (Row& r : eq) substitute(r, e, v);
  }

  // Layout: kept coordinates in keep order, then eliminated ones that still
  // occur in some row.
  std::vector<std::size_t> remaining;
  for (std::size_t v = 0; v < n; ++v) {
    if (role[v] != -1) continue;
    const bool used =
        std::any_of(ineq.begin(), ineq.end(),
                    [&](const Row& r) { return sgn(r.a[v]) != 0; }) ||
        std::any_of(eq.begin(), eq.end(),
                    [&](const Row& r) { return sgn(r.a[v]) != 0; });
    if (used) remaining.push_back(v);
  }
  std::vector<std::size_t> source(keep.begin(), keep.end());
  source.insert(source.end(), remaining.begin(), remaining.end());
  auto remap = [&](const Vec& a) {
    Vec out(source.size());
    for (std::size_t i = 0; i < source.size(); ++i) out[i] = a[source[i]];
    return out;
  };
  HPolyhedron h(source.size());
  for (const Row& r : ineq) h.add_ineq(remap(r.a), r.b);
  for (const Row& r : eq) h.add_eq(remap(r.a), r.b);
  h = normalize_rows(h);
  // normalize_rows may have turned opposite pairs into equalities; those
  // are substituted away before elimination.
  for (std::size_t v = keep.size(); v < h.dim(); ++v) {
    if (std::any_of(h.eq().begin(), h.eq().end(),
                    [&](const Row& e) { return sgn(e.a[v]) != 0; })) {
      std::vector<Row> hi = h.ineq();
      std::vector<Row> he = h.eq();
      auto it = std::find_if(he.begin(), he.end(),
                             [&](const Row& e) { return sgn(e.a[v]) != 0; });
      const Row e = *it;
      he.erase(it);
      for (Row& r : hi) substitute(r, e, v);
      for (Row& r : he) substitute(r, e, v);
      h = HPolyhedron(h.dim(), std::move(hi), std::move(he));
    }
  }
  return canonicalize(fourier_motzkin(h, keep.size()));
}

HPolyhedron project_prefix(const HPolyhedron& p, std::size_t count) {
  std::vector<std::size_t> keep(count);
  std::iota(keep.begin(), keep.end(), std::size_t{0});
  return project(p, keep);
}

HPolyhedron minkowski_sum(const HPolyhedron& p, const HPolyhedron& q) {
  require_dim(q.dim(), p.dim(), "minkowski_sum");
  const std::size_t n = p.dim();
  // {(x, v) : x - v ∈ P, v ∈ Q}
  HPolyhedron h(2 * n);
  for (const Row& r : p.ineq()) h.add_ineq(concat(r.a, negate(r.a)), r.b);
  for (const Row& r : p.eq()) h.add_eq(concat(r.a, negate(r.a)), r.b);
  for (const Row& r : q.ineq()) h.add_ineq(concat(zeros(n), r.a), r.b);
  for (const Row& r : q.eq()) h.add_eq(concat(zeros(n), r.a), r.b);
  return project_prefix(h, n);
}

HPolyhedron minkowski_diff(const HPolyhedron& p, const HPolyhedron& q) {
  return minkowski_sum(p, q.reflect());
}

HPolyhedron affine_image(const HPolyhedron& p, const Matrix& a, VecView shift) {
  const std::size_t m = a.size();
  const std::size_t n = p.dim();
  require_dim(shift.size(), m, "affine_image shift");
  // {(y, x) : x ∈ P, y - A x = shift}
  HPolyhedron h(m + n);
  for (const Row& r : p.ineq()) h.add_ineq(concat(zeros(m), r.a), r.b);
  for (const Row& r : p.eq()) h.add_eq(concat(zeros(m), r.a), r.b);
  for (std::size_t i = 0; i < m; ++i) {
    require_dim(a[i].size(), n, "affine_image matrix");
    h.add_eq(concat(unit(m, i), negate(a[i])), shift[i]);
  }
  return project_prefix(h, m);
}

HPolyhedron affine_preimage_rows(const HPolyhedron& p, const Matrix& a,
                                 std::size_t cols, VecView shift) {
  require_dim(a.size(), p.dim(), "affine_preimage matrix rows");
  require_dim(shift.size(), p.dim(), "affine_preimage shift");
  for (const Vec& row : a) require_dim(row.size(), cols, "affine_preimage");
  const Matrix at = transpose(a, cols);
  HPolyhedron h(cols);
  for (const Row& r : p.ineq()) {
    h.add_ineq(mat_vec(at, r.a), Rational(r.b - dot(r.a, shift)));
  }
  for (const Row& r : p.eq()) {
    h.add_eq(mat_vec(at, r.a), Rational(r.b - dot(r.a, shift)));
  }
  return h;
}

HPolyhedron affine_preimage(const HPolyhedron& p, const Matrix& a,
                            std::size_t cols, VecView shift) {
  return canonicalize(affine_preimage_rows(p, a, cols, shift));
}

bool origin_in_interior(const HPolyhedron& p) {
  const HPolyhedron q = normalize_rows(p);
  if (q.is_trivially_empty() || !q.eq().empty()) return false;
  return std::all_of(q.ineq().begin(), q.ineq().end(),
                     [](const Row& r) { return sgn(r.b) > 0; });
}

std::optional<InteriorWitness> interior_point(const HPolyhedron& p) {
  const HPolyhedron q = normalize_rows(p);
  if (q.is_trivially_empty() || !q.eq().empty()) return std::nullopt;
  const std::size_t n = q.dim();
  if (q.ineq().empty()) return InteriorWitness{zeros(n), Rational(1)};
  HPolyhedron h(n + 1);
  for (const Row& r : q.ineq()) {
    Vec a = r.a;
    a.push_back(l1_norm(r.a));
    h.add_ineq(std::move(a), r.b);
  }
  h.add_ineq(unit(n + 1, n), Rational(1));
  const LpResult res = solve_lp(unit(n + 1, n), Sense::kMaximize, h);
  const auto* opt = std::get_if<LpOptimal>(&res);
  if (opt == nullptr || sgn(opt->value) <= 0) return std::nullopt;
  return InteriorWitness{slice(opt->point, 0, n), opt->value};
}

bool has_interior(const HPolyhedron& p) { return interior_point(p).has_value(); }

bool interior_meets(const HPolyhedron& p, const HPolyhedron& q) {
  require_dim(q.dim(), p.dim(), "interior_meets");
  const HPolyhedron np = normalize_rows(p);
  if (np.is_trivially_empty() || !np.eq().empty()) return false;
  const std::size_t n = p.dim();
  HPolyhedron h(n + 1);
  for (const Row& r : np.ineq()) {
    Vec a = r.a;
    a.push_back(l1_norm(r.a));
    h.add_ineq(std::move(a), r.b);
  }
  for (const Row& r : q.ineq()) h.add_ineq(concat(r.a, Vec{0}), r.b);
  for (const Row& r : q.eq()) h.add_eq(concat(r.a, Vec{0}), r.b);
  h.add_ineq(unit(n + 1, n), Rational(1));
  const LpResult res = solve_lp(unit(n + 1, n), Sense::kMaximize, h);
  const auto* opt = std::get_if<LpOptimal>(&res);
  return opt != nullptr && sgn(opt->value) > 0;
}

namespace {

// P with every inequality that holds with equality on all of P moved to the
// equalities. One LP finds the common case of no such rows; otherwise each
// row gets its own LP.
HPolyhedron with_implicit_equalities(const HPolyhedron& p) {
  const std::size_t n = p.dim();
  HPolyhedron probe(n + 1);
  for (const Row& r : p.ineq()) probe.add_ineq(concat(r.a, Vec{1}), r.b);
  for (const Row& r : p.eq()) probe.add_eq(concat(r.a, Vec{0}), r.b);
  probe.add_ineq(unit(n + 1, n), Rational(1));
  const LpResult res = solve_lp(unit(n + 1, n), Sense::kMaximize, probe);
  const auto* opt = std::get_if<LpOptimal>(&res);
  if (opt != nullptr && sgn(opt->value) > 0) return p;

  HPolyhedron out(n);
  for (const Row& r : p.eq()) out.add_eq(r.a, r.b);
  for (const Row& r : p.ineq()) {
    const LpResult lo = solve_lp(r.a, Sense::kMinimize, p);
    const auto* o = std::get_if<LpOptimal>(&lo);
    if (o != nullptr && o->value == r.b) {
      out.add_eq(r.a, r.b);
    } else {
      out.add_ineq(r.a, r.b);
    }
  }
  return out;
}

}  // namespace

bool relative_interiors_meet(const HPolyhedron& p, const HPolyhedron& q) {
  require_dim(q.dim(), p.dim(), "relative_interiors_meet");
  if (is_empty(p) || is_empty(q)) return false;
  const std::size_t n = p.dim();
  HPolyhedron h(n + 1);
  for (const HPolyhedron& part : {with_implicit_equalities(p), with_implicit_equalities(q)}) {
    for (const Row& r : part.ineq()) h.add_ineq(concat(r.a, Vec{1}), r.b);
    for (const Row& r : part.eq()) h.add_eq(concat(r.a, Vec{0}), r.b);
  }
  h.add_ineq(unit(n + 1, n), Rational(1));
  const LpResult res = solve_lp(unit(n + 1, n), Sense::kMaximize, h);
  const auto* opt = std::get_if<LpOptimal>(&res);
  return opt != nullptr && sgn(opt->value) > 0;
}

bool origin_in_interior_of_difference(const HPolyhedron& p, const HPolyhedron& q) {
  require_dim(q.dim(), p.dim(), "origin_in_interior_of_difference");
  if (is_empty(p) || is_empty(q)) return false;
  // aff P - aff Q is everything iff the equality normals of P and Q span
  // independent row spaces.
  const HPolyhedron pe = with_implicit_equalities(p);
  const HPolyhedron qe = with_implicit_equalities(q);
  Matrix ep, eq, both;
  for (const Row& r : pe.eq()) ep.push_back(r.a);
  for (const Row& r : qe.eq()) eq.push_back(r.a);
  both = ep;
  both.insert(both.end(), eq.begin(), eq.end());
  const std::size_t n = p.dim();
  if (rank(ep, n) + rank(eq, n) != rank(both, n)) return false;
  return relative_interiors_meet(p, q);
}

PolyhedralCone conic_hull(const HPolyhedron& p) {
  if (is_empty(p)) fail(ErrorKind::kEmptyInput, "conic_hull of empty set");
  const std::size_t n = p.dim();
  HPolyhedron h(n + 1);
  for (const Row& r : p.ineq()) h.add_ineq(concat(r.a, Vec{-r.b}), Rational(0));
  for (const Row& r : p.eq()) h.add_eq(concat(r.a, Vec{-r.b}), Rational(0));
  h.add_ineq(scale(unit(n + 1, n), Rational(-1)), Rational(0));
  return PolyhedralCone(project_prefix(h, n));
}

bool is_subspace(const PolyhedralCone& k) {
  return set_subset(k.set(), k.set().reflect());
}

Generators h_to_v(const HPolyhedron& p) {
  const HPolyhedron q = canonicalize(p);
  if (q.is_trivially_empty()) fail(ErrorKind::kEmptyInput, "h_to_v of empty set");
  const std::size_t n = q.dim();

  Matrix rows;
  for (const Row& r : q.ineq()) rows.push_back(r.a);
  for (const Row& r : q.eq()) rows.push_back(r.a);
  Generators g;
  g.dim = n;
  g.lineality = nullspace(rows, n);

  std::vector<Vec> hineq, heq;
  for (const Row& r : q.ineq()) hineq.push_back(concat(r.a, Vec{-r.b}));
  hineq.push_back(scale(unit(n + 1, n), Rational(-1)));
  for (const Row& r : q.eq()) heq.push_back(concat(r.a, Vec{-r.b}));
  for (const Vec& l : g.lineality) heq.push_back(concat(l, Vec{0}));

  const ConeGenerators cone = cone_generators(n + 1, hineq, heq);
  if (!cone.lineality.empty()) {
    fail(ErrorKind::kInternalConsistency, "homogenized cone is not pointed");
  }
  for (const Vec& r : cone.rays) {
    const int s = sgn(r[n]);
    if (s > 0) {
      g.vertices.push_back(scale(slice(r, 0, n), Rational(1 / r[n])));
    } else if (s == 0) {
      g.rays.push_back(primitive(slice(r, 0, n)));
    } else {
      fail(ErrorKind::kInternalConsistency, "generator with negative height");
    }
  }
  auto sort_unique = [](std::vector<Vec>& vs) {
    std::sort(vs.begin(), vs.end(), LexLess{});
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  };
  sort_unique(g.vertices);
  sort_unique(g.rays);
  return g;
}

HPolyhedron v_to_h(const Generators& g) {
  const std::size_t n = g.dim;
  if (g.vertices.empty()) return HPolyhedron::empty(n);
  std::vector<Vec> ineq, eq;
  for (const Vec& v : g.vertices) ineq.push_back(concat(v, Vec{1}));
  for (const Vec& r : g.rays) ineq.push_back(concat(r, Vec{0}));
  for (const Vec& l : g.lineality) eq.push_back(concat(l, Vec{0}));
  const ConeGenerators polar = cone_generators(n + 1, ineq, eq);
  HPolyhedron h(n);
  for (const Vec& r : polar.rays) {
    Vec a = slice(r, 0, n);
    if (is_zero(a)) continue;
    h.add_ineq(std::move(a), Rational(-r[n]));
  }
  for (const Vec& l : polar.lineality) {
    Vec a = slice(l, 0, n);
    if (is_zero(a)) continue;
    h.add_eq(std::move(a), Rational(-l[n]));
  }
  return normalize_rows(h);
}

bool set_subset(const HPolyhedron& p, const HPolyhedron& q) {
  require_dim(q.dim(), p.dim(), "set_subset");
  if (is_empty(p)) return true;
  for (const Row& r : q.ineq()) {
    if (!implies(p, r.a, r.b)) return false;
  }
  for (const Row& r : q.eq()) {
    if (!implies(p, r.a, r.b) || !implies(p, negate(r.a), -r.b)) return false;
  }
  return true;
}

bool set_equal(const HPolyhedron& p, const HPolyhedron& q) {
  return set_subset(p, q) && set_subset(q, p);
}

}  // namespace polycalc
