#include <gtest/gtest.h>

#include "helpers.hpp"
#include "polycalc/errors.hpp"
#include "polycalc/generators.hpp"
#include "polycalc/oracles.hpp"
#include "polycalc/plfunction.hpp"
#include "polycalc/random.hpp"
#include "polycalc/supports.hpp"

namespace polycalc {
namespace {

using testing::abs_fn;
using testing::cone_of;
using testing::interval;
using testing::max_affine;
using testing::poly;
using testing::q;
using testing::square;
using testing::vec;

const ExtReal kInf = ExtReal::plus_infinity();

PLFunction kinked() { return max_affine({{1, 0}, {2, -1}}, HPolyhedron::universe(1)); }

// |y1| + |y2| as the maximum of the four sign patterns.
PLFunction l1_norm() {
  return max_affine({{1, 1, 0}, {1, -1, 0}, {-1, 1, 0}, {-1, -1, 0}}, HPolyhedron::universe(2));
}

TEST(Evaluate, Examples) {
  EXPECT_EQ(evaluate(abs_fn(), vec({-3})), ExtReal(3));
  EXPECT_EQ(evaluate(PLFunction::indicator(interval(0, 1)), vec({2})), kInf);
  EXPECT_EQ(evaluate(kinked(), vec({1})), ExtReal(1));
  EXPECT_EQ(evaluate(kinked(), vec({q("1/2")})), ExtReal(q("1/2")));
}

TEST(Properness, RejectsEmptyDomainAndMinusInfinity) {
  EXPECT_THROW(PLFunction::indicator(HPolyhedron::empty(1)), Error);
  // All of R^2 recedes along (0, -1), so the function would be -inf.
  EXPECT_THROW(PLFunction(1, HPolyhedron::universe(2)), Error);
}

TEST(Conjugate, AbsoluteValue) {
  EXPECT_EQ(conjugate_value(abs_fn(), vec({q("1/2")})), ExtReal(0));
  EXPECT_EQ(conjugate_value(abs_fn(), vec({2})), kInf);
  const PLFunction star = conjugate_closed_form(abs_fn());
  EXPECT_TRUE(set_equal(star.epi(), PLFunction::indicator(interval(-1, 1)).epi()));
}

TEST(Conjugate, IndicatorGivesSupport) {
  const HPolyhedron omega = poly(2, {{1, 1, 2}, {-1, 0, 1}, {0, -1, 0}});
  const PLFunction ind = PLFunction::indicator(omega);
  for (const Vec& xs : {vec({1, 1}), vec({-2, 1}), vec({0, -1}), vec({3, 0})}) {
    EXPECT_EQ(conjugate_value(ind, xs), support(omega, xs).value);
  }
}

TEST(Conjugate, KinkedFunction) {
  EXPECT_EQ(conjugate_value(kinked(), vec({q("3/2")})), ExtReal(q("1/2")));
  EXPECT_EQ(conjugate_oracle(kinked(), vec({q("3/2")})), ExtReal(q("1/2")));
  const PLFunction star = conjugate_closed_form(kinked());
  EXPECT_TRUE(set_equal(star.domain(), interval(1, 2)));
}

TEST(Biconjugate, FixedPoints) {
  for (const PLFunction& f : {abs_fn(), PLFunction::indicator(interval(0, 1)), kinked()}) {
    EXPECT_TRUE(set_equal(biconjugate(f).epi(), f.epi()));
  }
}

TEST(InfConvolution, Examples) {
  const PLFunction origin = PLFunction::indicator(HPolyhedron::point(vec({0})));
  EXPECT_TRUE(set_equal(inf_convolution(abs_fn(), origin).epi(), abs_fn().epi()));
  const PLFunction sum_of_sets =
      inf_convolution(PLFunction::indicator(interval(0, 1)), PLFunction::indicator(interval(2, 5)));
  EXPECT_TRUE(set_equal(sum_of_sets.epi(), PLFunction::indicator(interval(2, 6)).epi()));
  EXPECT_EQ(inf_convolution_value(abs_fn(), abs_fn(), vec({4})), ExtReal(4));
}

TEST(Subdifferential, Examples) {
  EXPECT_TRUE(set_equal(subdifferential(abs_fn(), vec({0})), interval(-1, 1)));
  EXPECT_TRUE(set_equal(subdifferential(abs_fn(), vec({1})), HPolyhedron::point(vec({1}))));
  const HPolyhedron omega = square(0, 1);
  EXPECT_TRUE(set_equal(subdifferential(PLFunction::indicator(omega), vec({1, 0})),
                        normal_cone(omega, vec({1, 0})).set()));
  EXPECT_THROW(subdifferential(PLFunction::indicator(omega), vec({2, 0})), Error);
}

TEST(ConjugateSum, ShiftedAbsoluteValues) {
  const PLFunction g = max_affine({{1, -1}, {-1, 1}}, HPolyhedron::universe(1));  // |x - 1|
  const ConjugateSumResult r = conjugate_sum_rule(abs_fn(), g, vec({0}));
  EXPECT_EQ(r.lhs, ExtReal(-1));
  EXPECT_EQ(r.rhs, r.lhs);
  ASSERT_TRUE(r.x1star && r.x2star);
  EXPECT_EQ(add(*r.x1star, *r.x2star), vec({0}));
  EXPECT_EQ(conjugate_value(abs_fn(), *r.x1star) + conjugate_value(g, *r.x2star), ExtReal(-1));
}

TEST(ConjugateSum, ZeroFunction) {
  const PLFunction zero = PLFunction::affine(vec({0}), 0);
  const ConjugateSumResult r = conjugate_sum_rule(kinked(), zero, vec({q("3/2")}));
  EXPECT_EQ(r.lhs, conjugate_value(kinked(), vec({q("3/2")})));
  ASSERT_TRUE(r.x1star && r.x2star);
  EXPECT_EQ(*r.x1star, vec({q("3/2")}));
  EXPECT_EQ(*r.x2star, vec({0}));
}

TEST(ConjugateSum, EqualIndicators) {
  const PLFunction ind = PLFunction::indicator(interval(0, 1));
  for (const Rational& x : {Rational(3), Rational(-2), Rational(0)}) {
    const ConjugateSumResult r = conjugate_sum_rule(ind, ind, vec({x}));
    EXPECT_EQ(r.lhs, support(interval(0, 1), vec({x})).value);
    EXPECT_EQ(r.rhs, r.lhs);
  }
}

TEST(ConjugateChain, DiagonalMap) {
  const LinearMap diag({vec({1}), vec({1})}, 1);
  for (const Rational& x : {Rational(-2), Rational(1), Rational(2), Rational(3)}) {
    const ConjugateChainResult r = conjugate_chain_rule(l1_norm(), diag, vec({x}));
    if (abs(x) <= 2) {
      EXPECT_EQ(r.lhs, ExtReal(0));
      ASSERT_TRUE(r.ystar);
      EXPECT_EQ(diag.adjoint().size(), 1u);
      EXPECT_EQ(mat_vec(diag.adjoint(), *r.ystar), vec({x}));
      EXPECT_EQ(conjugate_value(l1_norm(), *r.ystar), ExtReal(0));
    } else {
      EXPECT_EQ(r.lhs, kInf);
    }
    EXPECT_EQ(r.rhs, r.lhs);
  }
}

TEST(ConjugateChain, IdentityAndZeroMaps) {
  const ConjugateChainResult id = conjugate_chain_rule(kinked(), LinearMap::identity(1), vec({q("3/2")}));
  EXPECT_EQ(id.lhs, conjugate_value(kinked(), vec({q("3/2")})));
  ASSERT_TRUE(id.ystar);
  EXPECT_EQ(*id.ystar, vec({q("3/2")}));
  const PLFunction g = max_affine({{1, -1}, {-1, 1}}, HPolyhedron::universe(1));  // g(0) = 1
  const ConjugateChainResult at0 = conjugate_chain_rule(g, LinearMap::zero(1, 1), vec({0}));
  EXPECT_EQ(at0.lhs, ExtReal(-1));
  EXPECT_EQ(at0.rhs, at0.lhs);
  EXPECT_EQ(conjugate_chain_rule(g, LinearMap::zero(1, 1), vec({1})).lhs, kInf);
}

TEST(ConjugateMax, LinearPair) {
  const PLFunction f = PLFunction::affine(vec({1}), 0);
  const PLFunction g = PLFunction::affine(vec({-1}), 0);
  for (const Rational& x : {Rational(-1), q("-1/3"), Rational(0), Rational(1)}) {
    const ConjugateMaxResult r = conjugate_max_rule(f, g, vec({x}));
    EXPECT_EQ(r.lhs, ExtReal(0));
    EXPECT_EQ(r.rhs, r.lhs);
    ASSERT_TRUE(r.lambda);
    EXPECT_EQ(*r.lambda, (x + 1) / 2);
  }
}

TEST(ConjugateMax, EqualFunctionsAndIndicator) {
  const ConjugateMaxResult same = conjugate_max_rule(kinked(), kinked(), vec({q("3/2")}));
  EXPECT_EQ(same.lhs, ExtReal(q("1/2")));
  EXPECT_EQ(same.rhs, same.lhs);
  const ConjugateMaxResult r = conjugate_max_rule(PLFunction::indicator(interval(0, 1)),
                                                  PLFunction::affine(vec({0}), 0), vec({1}));
  EXPECT_EQ(r.lhs, ExtReal(1));
  EXPECT_EQ(r.rhs, r.lhs);
  ASSERT_TRUE(r.lambda);
  EXPECT_EQ(*r.lambda, 1);
}

TEST(SubdiffSum, Examples) {
  const SetRuleResult twice = subdiff_sum_rule(abs_fn(), abs_fn(), vec({0}));
  EXPECT_TRUE(twice.equal);
  EXPECT_TRUE(set_equal(twice.lhs, interval(-2, 2)));
  const PLFunction lin = PLFunction::affine(vec({3}), 1);
  const SetRuleResult shifted = subdiff_sum_rule(abs_fn(), lin, vec({0}));
  EXPECT_TRUE(shifted.equal);
  EXPECT_TRUE(set_equal(shifted.lhs, interval(2, 4)));
  const SetRuleResult planes = subdiff_sum_rule(PLFunction::indicator(poly(2, {{0, 1, 0}})),
                                                PLFunction::indicator(poly(2, {{1, 0, 0}})),
                                                vec({0, 0}));
  EXPECT_TRUE(planes.equal);
  EXPECT_TRUE(set_equal(planes.lhs, cone_of(2, {vec({1, 0}), vec({0, 1})})));
}

TEST(SubdiffChain, Examples) {
  const LinearMap diag({vec({1}), vec({1})}, 1);
  const SetRuleResult r = subdiff_chain_rule(l1_norm(), diag, vec({0}));
  EXPECT_TRUE(r.equal);
  EXPECT_TRUE(set_equal(r.rhs, interval(-2, 2)));
  const SetRuleResult id = subdiff_chain_rule(kinked(), LinearMap::identity(1), vec({1}));
  EXPECT_TRUE(id.equal);
  EXPECT_TRUE(set_equal(id.lhs, subdifferential(kinked(), vec({1}))));
  const LinearMap a({vec({1, 2}), vec({0, -1})}, 2);
  const SetRuleResult lin = subdiff_chain_rule(PLFunction::affine(vec({3, 1}), 2), a, vec({5, 7}));
  EXPECT_TRUE(lin.equal);
  EXPECT_TRUE(set_equal(lin.lhs, HPolyhedron::point(mat_vec(a.adjoint(), vec({3, 1})))));
}

TEST(SubdiffMax, ThreeCases) {
  const PLFunction up = PLFunction::affine(vec({1}), 5);
  const PLFunction down = PLFunction::affine(vec({-1}), 0);
  const MaxRuleResult a = subdiff_max_rule(up, down, vec({0}));
  EXPECT_EQ(a.which, MaxCase::kFirstActive);
  EXPECT_TRUE(a.equal);
  EXPECT_TRUE(set_equal(a.rhs, HPolyhedron::point(vec({1}))));

  const MaxRuleResult c = subdiff_max_rule(PLFunction::affine(vec({1}), 0), down, vec({0}));
  EXPECT_EQ(c.which, MaxCase::kBothActive);
  EXPECT_TRUE(c.equal);
  EXPECT_TRUE(set_equal(c.rhs, interval(-1, 1)));

  const PLFunction hinge = max_affine({{1, 0}, {0, 0}}, HPolyhedron::universe(1));
  const MaxRuleResult b = subdiff_max_rule(hinge, PLFunction::affine(vec({1}), -1), vec({0}));
  EXPECT_EQ(b.which, MaxCase::kFirstActive);
  EXPECT_TRUE(b.equal);
  EXPECT_TRUE(set_equal(b.rhs, interval(0, 1)));
}

// Random max-affine functions on random polytopes (or the whole space).
PLFunction random_function(Rng& rng, std::size_t n, const Vec& anchor) {
  std::vector<Row> pieces;
  const auto count = rng.uniform(1, 3);
  for (long k = 0; k < count; ++k) {
    pieces.push_back({random_vec(rng, n, -3, 3), Rational(rng.uniform(-3, 3))});
  }
  const HPolyhedron domain =
      rng.coin() ? HPolyhedron::universe(n) : random_polytope(rng, anchor, 2, rng.coin());
  return PLFunction::max_affine(pieces, domain);
}

class PlProperty : public ::testing::TestWithParam<std::size_t> {};

TEST_P(PlProperty, FenchelYoungAndSubgradients) {
  Rng rng(41, 0, GetParam());
  const std::size_t n = static_cast<std::size_t>(rng.uniform(1, 3));
  const Vec x = random_vec(rng, n, -2, 2);
  const PLFunction f = random_function(rng, n, x);
  const ExtReal fx = evaluate(f, x);
  ASSERT_TRUE(fx.is_finite());
  const HPolyhedron sub = subdifferential(f, x);
  const Generators g = h_to_v(sub);
  ASSERT_FALSE(g.vertices.empty());
  for (const Vec& v : g.vertices) {
    EXPECT_EQ(fx + conjugate_value(f, v), ExtReal(dot(v, x)));
    EXPECT_TRUE(subgradient_oracle(f, x, v));
  }
  for (int k = 0; k < 5; ++k) {
    const Vec xs = random_vec(rng, n, -4, 4);
    const ExtReal star = conjugate_value(f, xs);
    EXPECT_EQ(star, conjugate_oracle(f, xs));
    EXPECT_GE(fx + star, ExtReal(dot(xs, x)));
    EXPECT_EQ(sub.contains(xs), subgradient_oracle(f, x, xs));
    EXPECT_EQ(sub.contains(xs), fx + star == ExtReal(dot(xs, x)));
  }
}

TEST_P(PlProperty, BiconjugateAndConjugateEpigraph) {
  Rng rng(43, 0, GetParam());
  const std::size_t n = static_cast<std::size_t>(rng.uniform(1, 3));
  const PLFunction f = random_function(rng, n, random_vec(rng, n, -2, 2));
  EXPECT_TRUE(set_equal(biconjugate(f).epi(), f.epi()));
  // The closed form is an epigraph: (0, 1) recedes.
  const PLFunction star = conjugate_closed_form(f);
  Vec up = zeros(n + 1);
  up[n] = 1;
  EXPECT_TRUE(set_subset(star.epi(), affine_preimage_rows(star.epi(), identity(n + 1), n + 1, up)));
}

TEST_P(PlProperty, MaxEpigraphAndOneSidedInclusions) {
  Rng rng(47, 0, GetParam());
  const std::size_t n = static_cast<std::size_t>(rng.uniform(1, 3));
  const Vec x = random_vec(rng, n, -2, 2);
  const PLFunction f = random_function(rng, n, x);
  const PLFunction g = random_function(rng, n, x);
  EXPECT_TRUE(set_equal(pointwise_max(f, g).epi(), f.epi().intersect(g.epi())));
  const HPolyhedron lhs = subdifferential(sum(f, g), x);
  const HPolyhedron split = minkowski_sum(subdifferential(f, x), subdifferential(g, x));
  EXPECT_TRUE(set_subset(split, lhs));
  const Vec xs = random_vec(rng, n, -3, 3);
  const ConjugateSumResult r = conjugate_sum_rule(f, g, xs);
  EXPECT_EQ(r.lhs, r.rhs);
  for (int k = 0; k < 3; ++k) {
    const Vec x1 = random_vec(rng, n, -3, 3);
    EXPECT_LE(r.lhs, conjugate_value(f, x1) + conjugate_value(g, sub(xs, x1)));
  }
  const ConjugateMaxResult m = conjugate_max_rule(f, g, xs);
  EXPECT_EQ(m.lhs, m.rhs);
  for (const Rational& lambda : {Rational(0), q("1/3"), Rational(1)}) {
    EXPECT_LE(m.lhs, conjugate_value(convex_combination(f, g, lambda), xs));
  }
}

INSTANTIATE_TEST_SUITE_P(Random, PlProperty, ::testing::Range<std::size_t>(0, 25));

}  // namespace
}  // namespace polycalc
