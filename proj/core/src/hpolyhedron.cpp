#include "polycalc/hpolyhedron.hpp"

#include "polycalc/errors.hpp"

namespace polycalc {

HPolyhedron::HPolyhedron(std::size_t dim, std::vector<Row> ineq,
                         std::vector<Row> eq)
    : dim_(dim) {
  for (auto& r : ineq) add_ineq(std::move(r.a), std::move(r.b));
  for (auto& r : eq) add_eq(std::move(r.a), std::move(r.b));
}

HPolyhedron HPolyhedron::empty(std::size_t dim) {
  HPolyhedron p(dim);
  p.add_ineq(zeros(dim), Rational(-1));
  return p;
}

HPolyhedron HPolyhedron::point(VecView p) {
  HPolyhedron h(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) h.add_eq(unit(p.size(), i), p[i]);
  return h;
}

HPolyhedron HPolyhedron::box(VecView lo, VecView hi) {
  require_dim(hi.size(), lo.size(), "HPolyhedron::box");
  HPolyhedron h(lo.size());
  for (std::size_t i = 0; i < lo.size(); ++i) {
    h.add_ineq(unit(lo.size(), i), hi[i]);
    h.add_ineq(negate(unit(lo.size(), i)), -lo[i]);
  }
  return h;
}

void HPolyhedron::add_ineq(Vec a, Rational b) {
  require_dim(a.size(), dim_, "HPolyhedron::add_ineq");
  ineq_.push_back(Row{std::move(a), std::move(b)});
}

void HPolyhedron::add_eq(Vec a, Rational b) {
  require_dim(a.size(), dim_, "HPolyhedron::add_eq");
  eq_.push_back(Row{std::move(a), std::move(b)});
}

bool HPolyhedron::contains(VecView x) const {
  require_dim(x.size(), dim_, "contains");
  for (const Row& r : ineq_) {
    if (dot(r.a, x) > r.b) return false;
  }
  for (const Row& r : eq_) {
    if (dot(r.a, x) != r.b) return false;
  }
  return true;
}

HPolyhedron HPolyhedron::intersect(const HPolyhedron& other) const {
  require_dim(other.dim_, dim_, "intersect");
  HPolyhedron r = *this;
  r.ineq_.insert(r.ineq_.end(), other.ineq_.begin(), other.ineq_.end());
  r.eq_.insert(r.eq_.end(), other.eq_.begin(), other.eq_.end());
  return r;
}

HPolyhedron HPolyhedron::product(const HPolyhedron& other) const {
  const std::size_t n = dim_ + other.dim_;
  std::vector<std::size_t> first(dim_), second(other.dim_);
  for (std::size_t i = 0; i < dim_; ++i) first[i] = i;
  for (std::size_t i = 0; i < other.dim_; ++i) second[i] = dim_ + i;
  return lift(n, first).intersect(other.lift(n, second));
}

HPolyhedron HPolyhedron::lift(std::size_t new_dim,
                              const std::vector<std::size_t>& positions) const {
  require_dim(positions.size(), dim_, "lift");
  HPolyhedron r(new_dim);
  auto embed = [&](const Vec& a) {
    Vec out = zeros(new_dim);
    for (std::size_t i = 0; i < dim_; ++i) {
      if (positions[i] >= new_dim) {
        fail(ErrorKind::kDimensionMismatch, "lift position out of range");
      }
      out[positions[i]] = a[i];
    }
    return out;
  };
  for (const Row& row : ineq_) r.add_ineq(embed(row.a), row.b);
  for (const Row& row : eq_) r.add_eq(embed(row.a), row.b);
  return r;
}

HPolyhedron HPolyhedron::reflect() const {
  HPolyhedron r(dim_);
  for (const Row& row : ineq_) r.add_ineq(negate(row.a), row.b);
  for (const Row& row : eq_) r.add_eq(negate(row.a), row.b);
  return r;
}

bool HPolyhedron::is_trivially_empty() const {
  return eq_.empty() && ineq_.size() == 1 && is_zero(ineq_[0].a) &&
         sgn(ineq_[0].b) < 0;
}

}  // namespace polycalc
