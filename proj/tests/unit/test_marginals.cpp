#include <gtest/gtest.h>

#include "helpers.hpp"
#include "polycalc/errors.hpp"
#include "polycalc/generators.hpp"
#include "polycalc/marginals.hpp"
#include "polycalc/random.hpp"

namespace polycalc {
namespace {

using testing::cone_of;
using testing::interval;
using testing::max_affine;
using testing::poly;
using testing::q;
using testing::vec;

const ExtReal kInf = ExtReal::plus_infinity();

// F(x) = [x, x + 1].
Multimap unit_band() { return Multimap(1, 1, poly(2, {{1, -1, 0}, {-1, 1, 1}})); }

MarginalProblem minimize_y() {
  return MarginalProblem(PLFunction::affine(vec({0, 1}), 0), unit_band());
}

MarginalProblem zero_cost() {
  return MarginalProblem(PLFunction::affine(vec({0, 0}), 0), unit_band());
}

TEST(Marginal, ValueAndSolutionMap) {
  const MarginalProblem p = minimize_y();
  for (const Rational& x : {Rational(-3), Rational(0), q("5/2")}) {
    EXPECT_EQ(marginal_value(p, vec({x})), ExtReal(x));
    EXPECT_TRUE(set_equal(solution_map(p, vec({x})), HPolyhedron::point(vec({x}))));
  }
  const PLFunction mu = marginal_closed_form(p);
  EXPECT_TRUE(set_equal(mu.epi(), PLFunction::affine(vec({1}), 0).epi()));
}

TEST(Marginal, OutsideTheDomain) {
  const Multimap boxed(1, 1, poly(2, {{1, 0, 1}, {-1, 0, 0}, {0, 1, 1}, {0, -1, 0}}));
  const MarginalProblem p(PLFunction::affine(vec({0, 1}), 0), boxed);
  EXPECT_EQ(marginal_value(p, vec({2})), kInf);
  EXPECT_THROW(solution_map(p, vec({2})), Error);
}

TEST(Marginal, UnboundedBelowIsRejected) {
  // y free above and below with cost y.
  const Multimap everything(1, 1, HPolyhedron::universe(2));
  EXPECT_THROW(MarginalProblem(PLFunction::affine(vec({0, 1}), 0), everything), Error);
}

TEST(Marginal, Conjugate) {
  const MarginalProblem p = minimize_y();
  const MarginalConjugateResult one = marginal_conjugate(p, vec({1}));
  EXPECT_EQ(one.mu_star, ExtReal(0));
  EXPECT_EQ(one.via_sum, one.mu_star);
  EXPECT_EQ(one.via_convolution, one.mu_star);
  ASSERT_TRUE(one.phi_part && one.graph_part);
  EXPECT_EQ(add(*one.phi_part, *one.graph_part), vec({1, 0}));
  EXPECT_EQ(marginal_conjugate(p, vec({2})).mu_star, kInf);
  EXPECT_EQ(marginal_conjugate(p, vec({2})).via_sum, kInf);
}

TEST(Marginal, Subdifferential) {
  const MarginalProblem p = minimize_y();
  const MarginalSubdiffResult r = marginal_subdifferential(p, vec({0}), vec({0}));
  EXPECT_TRUE(r.equal);
  EXPECT_TRUE(set_equal(r.lhs, HPolyhedron::point(vec({1}))));
  EXPECT_TRUE(set_equal(r.rhs, r.lhs));
  EXPECT_TRUE(set_equal(r.sum_form, r.lhs));
  ASSERT_TRUE(r.independent_form);
  EXPECT_TRUE(set_equal(*r.independent_form, r.lhs));
  EXPECT_THROW(marginal_subdifferential(p, vec({0}), vec({1})), Error);
}

TEST(Marginal, ZeroCost) {
  const MarginalProblem p = zero_cost();
  EXPECT_EQ(marginal_value(p, vec({7})), ExtReal(0));
  EXPECT_TRUE(set_equal(solution_map(p, vec({0})), interval(0, 1)));
  EXPECT_TRUE(cost_without_x(p).has_value());
  for (const Rational& y : {Rational(0), q("1/2"), Rational(1)}) {
    const MarginalSubdiffResult r = marginal_subdifferential(p, vec({0}), vec({y}));
    EXPECT_TRUE(r.equal);
    EXPECT_TRUE(set_equal(r.lhs, HPolyhedron::point(vec({0}))));
  }
  EXPECT_EQ(marginal_conjugate(p, vec({0})).mu_star, ExtReal(0));
  EXPECT_EQ(marginal_conjugate(p, vec({1})).mu_star, kInf);
}

TEST(Marginal, CostDependingOnX) {
  const MarginalProblem p(PLFunction::affine(vec({1, 1}), 0), unit_band());
  EXPECT_FALSE(cost_without_x(p).has_value());
  EXPECT_EQ(marginal_value(p, vec({3})), ExtReal(6));
}

TEST(OrderedChain, HingeOfLinearMap) {
  const PolyhedralCone yplus(cone_of(1, {vec({1})}));
  const PLFunction hinge = max_affine({{1, 0}, {0, 0}}, HPolyhedron::universe(1));
  EXPECT_TRUE(is_nondecreasing(yplus, hinge));
  const OrderedChainProblem problem(yplus, LinearMap({vec({2})}, 1), hinge);
  const OrderedChainResult r = ordered_chain_rule(problem, vec({0}));
  EXPECT_TRUE(r.equal);
  EXPECT_TRUE(r.subgradients_nonnegative);
  EXPECT_TRUE(set_equal(r.lhs, interval(0, 2)));
  EXPECT_TRUE(set_equal(r.rhs, interval(0, 2)));
  EXPECT_TRUE(set_equal(r.adjoint_form, interval(0, 2)));

  const SetRuleResult c = epigraphical_coderivative_check(problem, vec({0}), vec({q("1/2")}));
  EXPECT_TRUE(c.equal);
  EXPECT_TRUE(set_equal(c.lhs, HPolyhedron::point(vec({1}))));
  EXPECT_THROW(epigraphical_coderivative_check(problem, vec({0}), vec({2})), Error);
}

TEST(OrderedChain, MonotonicityViolation) {
  const PolyhedralCone yplus(cone_of(1, {vec({1})}));
  const PLFunction decreasing = PLFunction::affine(vec({-1}), 0);
  EXPECT_FALSE(is_nondecreasing(yplus, decreasing));
  try {
    OrderedChainProblem(yplus, LinearMap::identity(1), decreasing);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kMonotonicityViolation);
  }
}

class MarginalProperty : public ::testing::TestWithParam<std::size_t> {};

TEST_P(MarginalProperty, ClosedFormMatchesInnerProblems) {
  Rng rng(61, 0, GetParam());
  const std::size_t n = static_cast<std::size_t>(rng.uniform(1, 2));
  const std::size_t m = static_cast<std::size_t>(rng.uniform(1, 2));
  const Vec x = random_vec(rng, n, -2, 2);
  const Vec y = random_vec(rng, m, -2, 2);
  const Multimap f(n, m, random_polytope(rng, concat(x, y), 2, true));
  std::vector<Row> pieces;
  for (int k = 0; k < 2; ++k) {
    pieces.push_back({random_vec(rng, n + m, -2, 2), Rational(rng.uniform(-2, 2))});
  }
  const MarginalProblem p(PLFunction::max_affine(pieces, HPolyhedron::universe(n + m)), f);
  const PLFunction mu = marginal_closed_form(p);
  for (int k = 0; k < 4; ++k) {
    const Vec probe = k == 0 ? x : random_vec(rng, n, -3, 3);
    EXPECT_EQ(evaluate(mu, probe), marginal_value(p, probe));
  }
  const Vec xs = random_vec(rng, n, -3, 3);
  const MarginalConjugateResult c = marginal_conjugate(p, xs);
  EXPECT_EQ(c.mu_star, c.via_sum);
  EXPECT_EQ(c.mu_star, c.via_convolution);
  const HPolyhedron sol = solution_map(p, x);
  const Generators g = h_to_v(sol);
  ASSERT_FALSE(g.vertices.empty());
  const MarginalSubdiffResult s = marginal_subdifferential(p, x, g.vertices.front());
  EXPECT_TRUE(s.equal);
  EXPECT_TRUE(set_subset(s.rhs, s.lhs));
}

INSTANTIATE_TEST_SUITE_P(Random, MarginalProperty, ::testing::Range<std::size_t>(0, 15));

}  // namespace
}  // namespace polycalc
