#include "polycalc/double_description.hpp"

#include <cstdint>

#include "polycalc/errors.hpp"
#include "polycalc/linalg.hpp"

namespace polycalc {
namespace {

class ZeroSet {
 public:
  void set(std::size_t i) {
    if (i / 64 >= words_.size()) words_.resize(i / 64 + 1, 0);
    words_[i / 64] |= std::uint64_t{1} << (i % 64);
  }

  ZeroSet intersect(const ZeroSet& o) const {
    ZeroSet r;
    const std::size_t n = std::min(words_.size(), o.words_.size());
    r.words_.resize(n);
    for (std::size_t i = 0; i < n; ++i) r.words_[i] = words_[i] & o.words_[i];
    return r;
  }

  bool contains_all(const ZeroSet& o) const {
    for (std::size_t i = 0; i < o.words_.size(); ++i) {
      const std::uint64_t mine = i < words_.size() ? words_[i] : 0;
      if ((o.words_[i] & ~mine) != 0) return false;
    }
    return true;
  }

  std::size_t count() const {
    std::size_t c = 0;
    for (std::uint64_t w : words_) c += static_cast<std::size_t>(__builtin_popcountll(w));
    return c;
  }

 private:
  std::vector<std::uint64_t> words_;
};

struct Ray {
  Vec v;
  ZeroSet zeros;
};

}  // namespace

ConeGenerators cone_generators(std::size_t dim, const std::vector<Vec>& ineq,
                               const std::vector<Vec>& eq) {
  std::vector<Vec> halfspaces;
  halfspaces.reserve(ineq.size() + 2 * eq.size());
  for (const Vec& e : eq) {
    require_dim(e.size(), dim, "cone_generators");
    halfspaces.push_back(e);
    halfspaces.push_back(negate(e));
  }
  for (const Vec& h : ineq) {
    require_dim(h.size(), dim, "cone_generators");
    halfspaces.push_back(h);
  }

  std::vector<Vec> lineality = identity(dim);
  std::vector<Ray> rays;

  for (std::size_t k = 0; k < halfspaces.size(); ++k) {
    const Vec& h = halfspaces[k];
    if (is_zero(h)) continue;

    std::size_t pick = lineality.size();
    for (std::size_t i = 0; i < lineality.size(); ++i) {
      if (sgn(dot(h, lineality[i])) != 0) {
        pick = i;
        break;
      }
    }
    if (pick < lineality.size()) {
      Vec l = lineality[pick];
      Rational hl = dot(h, l);
      if (sgn(hl) > 0) {
        l = negate(l);
        hl = -hl;
      }
      std::vector<Vec> rest;
      for (std::size_t i = 0; i < lineality.size(); ++i) {
        if (i == pick) continue;
        const Rational c = dot(h, lineality[i]) / hl;
        rest.push_back(sgn(c) == 0 ? lineality[i]
                                   : primitive(sub(lineality[i], scale(l, c))));
      }
      lineality = std::move(rest);
      for (Ray& r : rays) {
        const Rational c = dot(h, r.v) / hl;
        if (sgn(c) != 0) r.v = primitive(sub(r.v, scale(l, c)));
        r.zeros.set(k);
      }
      Ray fresh{primitive(l), {}};
      for (std::size_t j = 0; j < k; ++j) fresh.zeros.set(j);
      rays.push_back(std::move(fresh));
      continue;
    }

    std::vector<Rational> s(rays.size());
    std::vector<std::size_t> pos, neg;
    for (std::size_t i = 0; i < rays.size(); ++i) {
      s[i] = dot(h, rays[i].v);
      if (sgn(s[i]) > 0) pos.push_back(i);
      if (sgn(s[i]) < 0) neg.push_back(i);
    }
    if (pos.empty()) {
      for (std::size_t i = 0; i < rays.size(); ++i) {
        if (sgn(s[i]) == 0) rays[i].zeros.set(k);
      }
      continue;
    }

    // Two extreme rays are adjacent iff their common zero set has enough
    // constraints and no third ray's zero set contains it.
    const std::size_t pointed_dim = dim - lineality.size();
    const std::size_t needed = pointed_dim >= 2 ? pointed_dim - 2 : 0;
    std::vector<Ray> next;
    for (std::size_t p : pos) {
      for (std::size_t n : neg) {
        ZeroSet common = rays[p].zeros.intersect(rays[n].zeros);
        if (common.count() < needed) continue;
        bool adjacent = true;
        for (std::size_t o = 0; o < rays.size() && adjacent; ++o) {
          if (o == p || o == n) continue;
          if (rays[o].zeros.contains_all(common)) adjacent = false;
        }
        if (!adjacent) continue;
        Vec v = sub(scale(rays[n].v, s[p]), scale(rays[p].v, s[n]));
        common.set(k);
        next.push_back(Ray{primitive(v), std::move(common)});
      }
    }
    for (std::size_t i = 0; i < rays.size(); ++i) {
      if (sgn(s[i]) < 0) {
        next.push_back(std::move(rays[i]));
      } else if (sgn(s[i]) == 0) {
        rays[i].zeros.set(k);
        next.push_back(std::move(rays[i]));
      }
    }
    rays = std::move(next);
  }

  ConeGenerators out;
  out.lineality = std::move(lineality);
  for (Ray& r : rays) out.rays.push_back(std::move(r.v));
  return out;
}

}  // namespace polycalc
