#include <gtest/gtest.h>

#include <functional>

#include "helpers.hpp"
#include "polycalc/errors.hpp"
#include "polycalc/generators.hpp"
#include "polycalc/lp.hpp"
#include "polycalc/oracles.hpp"
#include "polycalc/random.hpp"
#include "polycalc/supports.hpp"

namespace polycalc {
namespace {

using testing::cone_of;
using testing::interval;
using testing::poly;
using testing::q;
using testing::square;
using testing::vec;

ErrorKind kind_of(const std::function<void()>& body) {
  try {
    body();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::kInternalConsistency;
}

TEST(Support, BoxCorner) {
  const SupportValue s = support(square(-1, 1), vec({3, 4}));
  EXPECT_EQ(s.value, ExtReal(7));
  EXPECT_EQ(s.witness, SupportValue::Witness::kMaximizer);
  EXPECT_EQ(s.witness_vector, vec({1, 1}));
}

TEST(Support, HalfLineIsUnbounded) {
  const SupportValue s = support(poly(1, {{-1, 0}}), vec({1}));
  EXPECT_TRUE(s.value.is_plus_infinity());
  EXPECT_EQ(s.witness, SupportValue::Witness::kUnboundedRay);
  EXPECT_GT(s.witness_vector[0], 0);
}

TEST(Support, SimplexVertex) {
  const HPolyhedron simplex =
      poly(3, {{-1, 0, 0, 0}, {0, -1, 0, 0}, {0, 0, -1, 0}}, {{1, 1, 1, 1}});
  const SupportValue s = support(simplex, vec({5, 1, 2}));
  EXPECT_EQ(s.value, ExtReal(5));
  EXPECT_EQ(s.witness_vector, vec({1, 0, 0}));
  EXPECT_EQ(support_oracle(simplex, vec({5, 1, 2})), ExtReal(5));
}

TEST(Support, EmptySetIsMinusInfinity) {
  const SupportValue s = support(HPolyhedron::empty(2), vec({1, 0}));
  EXPECT_TRUE(s.value.is_minus_infinity());
  EXPECT_EQ(s.witness, SupportValue::Witness::kEmptySet);
}

TEST(NormalCone, InteriorCornerAndOutside) {
  EXPECT_TRUE(set_equal(normal_cone(square(-1, 1), vec({0, 0})).set(),
                        HPolyhedron::point(vec({0, 0}))));
  EXPECT_TRUE(set_equal(normal_cone(square(-1, 1), vec({1, 1})).set(),
                        cone_of(2, {vec({1, 0}), vec({0, 1})})));
  EXPECT_EQ(kind_of([] { normal_cone(square(-1, 1), vec({2, 2})); }), ErrorKind::kNotInSet);
}

TEST(Extremal, OneDimensionalPairs) {
  EXPECT_TRUE(is_extremal_system(interval(-1, 0), interval(0, 1)));
  EXPECT_FALSE(is_extremal_system(interval(-1, 1), interval(0, 2)));
  EXPECT_TRUE(is_extremal_system(interval(0, 1), interval(3, 4)));
}

TEST(Extremal, SeparateTouchingBoxes) {
  const HPolyhedron o1 = HPolyhedron::box(vec({-1, -1}), vec({0, 1}));
  const HPolyhedron o2 = HPolyhedron::box(vec({0, -1}), vec({1, 1}));
  const ExtremalWitness w = separate(o1, o2);
  EXPECT_EQ(primitive(w.separator), vec({1, 0}));
  EXPECT_EQ(w.sup_value, w.inf_value);
  EXPECT_EQ(w.sup_value, 0);
  EXPECT_EQ(w.translation, vec({-1, 0}));
  const HPolyhedron moved = affine_preimage_rows(o1, identity(2), 2, negate(w.translation));
  EXPECT_FALSE(is_feasible(moved.intersect(o2)));
}

TEST(Extremal, SeparatePointFromInterval) {
  const ExtremalWitness w = separate(HPolyhedron::point(vec({0})), interval(1, 2));
  EXPECT_GT(w.separator[0], 0);
  EXPECT_EQ(w.sup_value, 0);
  EXPECT_EQ(w.inf_value, w.separator[0]);
  EXPECT_LE(w.sup_value, w.inf_value);
}

TEST(Extremal, OverlappingBoxesAreRejected) {
  EXPECT_EQ(kind_of([] { separate(square(0, 2), square(1, 3)); }), ErrorKind::kNotExtremal);
}

TEST(Extremal, ThinDifferenceIsNotSolid) {
  const HPolyhedron seg1 = poly(2, {{1, 0, 1}, {-1, 0, 0}}, {{0, 1, 0}});
  const HPolyhedron seg2 = poly(2, {{1, 0, 3}, {-1, 0, -2}}, {{0, 1, 0}});
  EXPECT_EQ(kind_of([&] { separate(seg1, seg2); }), ErrorKind::kNotSolid);
}

TEST(Qualification, OverlappingSquares) {
  const QCReport qc = check_qualification(square(-1, 1), square(0, 2));
  EXPECT_TRUE(qc.difference_interiority);
  EXPECT_TRUE(qc.interiority_1_meets_2);
  EXPECT_TRUE(qc.interiority_2_meets_1);
  EXPECT_TRUE(qc.attouch_brezis);
  EXPECT_TRUE(qc.any_holds);
}

TEST(Qualification, TouchingIntervals) {
  const QCReport qc = check_qualification(interval(-1, 0), interval(0, 1));
  EXPECT_FALSE(qc.difference_interiority);
  EXPECT_FALSE(qc.interiority_1_meets_2);
  EXPECT_FALSE(qc.interiority_2_meets_1);
  // cone([-2, 0]) = (-inf, 0] is not a subspace.
  EXPECT_FALSE(qc.attouch_brezis);
  EXPECT_FALSE(qc.any_holds);
}

TEST(Qualification, BothOrigin) {
  const QCReport qc = check_qualification(HPolyhedron::point(vec({0})), HPolyhedron::point(vec({0})));
  EXPECT_TRUE(qc.attouch_brezis);
  EXPECT_FALSE(qc.difference_interiority);
}

// The flags agree with the direct route through the Minkowski difference.
TEST(QualificationProperty, AgreesWithMinkowskiDifferenceRoute) {
  for (std::size_t i = 0; i < 40; ++i) {
    Rng rng(17, 0, i);
    const std::size_t n = static_cast<std::size_t>(rng.uniform(1, 3));
    const Vec p = random_vec(rng, n, -2, 2);
    HPolyhedron o1 = random_polytope(rng, p, 2, true);
    HPolyhedron o2 = random_polytope(rng, p, 2, true);
    // Flatten one of them now and then so the subspace test gets exercised.
    if (rng.coin()) {
      const Vec a = random_nonzero_vec(rng, n, -1, 1);
      o1.add_eq(a, dot(a, p));
    }
    const HPolyhedron diff = minkowski_diff(o1, o2);
    if (is_empty(diff)) continue;
    const QCReport qc = check_qualification(o1, o2);
    EXPECT_EQ(qc.difference_interiority, origin_in_interior(diff)) << i;
    EXPECT_EQ(qc.attouch_brezis, is_subspace(conic_hull(diff))) << i;
  }
}

TEST(SupportIntersection, Squares) {
  const SupportDecomposition d = support_intersection(square(-1, 1), square(0, 2), vec({-1, -1}));
  EXPECT_EQ(d.value, ExtReal(0));
  ASSERT_TRUE(d.x1star && d.x2star);
  EXPECT_EQ(add(*d.x1star, *d.x2star), vec({-1, -1}));
  EXPECT_EQ(support(square(-1, 1), *d.x1star).value + support(square(0, 2), *d.x2star).value,
            ExtReal(0));
  EXPECT_EQ(support_oracle(square(0, 1), vec({-1, -1})), ExtReal(0));
}

TEST(SupportIntersection, IdenticalSets) {
  const HPolyhedron omega = poly(2, {{1, 1, 2}, {-1, 0, 0}, {0, -1, 0}});
  const Vec xs = vec({2, 1});
  const SupportDecomposition d = support_intersection(omega, omega, xs);
  EXPECT_EQ(d.value, support(omega, xs).value);
  ASSERT_TRUE(d.x1star && d.x2star);
  EXPECT_EQ(support(omega, *d.x1star).value + support(omega, *d.x2star).value, d.value);
}

TEST(SupportIntersection, HalfPlanes) {
  const HPolyhedron below = poly(2, {{0, 1, 0}});
  const HPolyhedron left = poly(2, {{1, 0, 0}});
  const SupportDecomposition d = support_intersection(below, left, vec({1, 1}));
  EXPECT_EQ(d.value, ExtReal(0));
  ASSERT_TRUE(d.x1star && d.x2star);
  EXPECT_EQ(*d.x1star, vec({0, 1}));
  EXPECT_EQ(*d.x2star, vec({1, 0}));
}

TEST(SupportIntersection, OutsideDomainAndEmpty) {
  const SupportDecomposition d = support_intersection(poly(1, {{-1, 0}}), poly(1, {{-1, 1}}), vec({1}));
  EXPECT_TRUE(d.value.is_plus_infinity());
  EXPECT_FALSE(d.x1star.has_value());
  EXPECT_EQ(kind_of([] { support_intersection(interval(0, 1), interval(2, 3), vec({1})); }),
            ErrorKind::kEmptyIntersection);
}

TEST(SupportConvolution, IndicatorRecovered) {
  const HPolyhedron a = interval(0, 2);
  const HPolyhedron b = interval(1, 3);
  const ExtRealPair inside = support_conv_conjugate_check(a, b, vec({q("3/2")}));
  EXPECT_EQ(inside.lhs, ExtReal(0));
  EXPECT_EQ(inside.rhs, ExtReal(0));
  const ExtRealPair outside = support_conv_conjugate_check(a, b, vec({3}));
  EXPECT_TRUE(outside.lhs.is_plus_infinity());
  EXPECT_TRUE(outside.rhs.is_plus_infinity());
}

TEST(NormalIntersection, HalfPlanesAtOrigin) {
  const NormalIntersection r =
      normal_intersection_rule(poly(2, {{0, 1, 0}}), poly(2, {{1, 0, 0}}), vec({0, 0}));
  EXPECT_TRUE(r.equal);
  EXPECT_TRUE(set_equal(r.lhs.set(), cone_of(2, {vec({1, 0}), vec({0, 1})})));
}

TEST(NormalIntersection, InteriorPoint) {
  const NormalIntersection r = normal_intersection_rule(square(-1, 1), square(-2, 2), vec({0, 0}));
  EXPECT_TRUE(r.equal);
  EXPECT_TRUE(set_equal(r.rhs.set(), HPolyhedron::point(vec({0, 0}))));
}

TEST(NormalIntersection, AdjacentSquares) {
  const HPolyhedron o1 = square(0, 1);
  const HPolyhedron o2 = HPolyhedron::box(vec({1, 0}), vec({2, 1}));
  const NormalIntersection r = normal_intersection_rule(o1, o2, vec({1, 0}));
  EXPECT_TRUE(r.equal);
  const HPolyhedron expected = cone_of(2, {vec({1, 0}), vec({-1, 0}), vec({0, -1})});
  EXPECT_TRUE(set_equal(r.lhs.set(), expected));
  // Every generator x* of the cone satisfies σ(x*) = ⟨x*, x̄⟩ on Ω1 ∩ Ω2.
  const HPolyhedron both = o1.intersect(o2);
  for (const Vec& g : {vec({1, 0}), vec({-1, 0}), vec({0, -1})}) {
    EXPECT_EQ(support_oracle(both, g), ExtReal(dot(g, vec({1, 0}))));
  }
}

TEST(NormalIntersection, OutsidePointIsRejected) {
  EXPECT_EQ(kind_of([] { normal_intersection_rule(square(0, 1), square(0, 2), vec({2, 2})); }),
            ErrorKind::kNotInSet);
}

class SupportProperty : public ::testing::TestWithParam<std::size_t> {};

TEST_P(SupportProperty, NormalConeGeneratorsAttainTheSupport) {
  Rng rng(23, 0, GetParam());
  const std::size_t n = static_cast<std::size_t>(rng.uniform(1, 3));
  const Vec p = random_vec(rng, n, -2, 2);
  const HPolyhedron omega = random_polytope(rng, p, 3, true);
  const Generators corners = h_to_v(omega);
  for (const Vec& v : corners.vertices) {
    const Generators cone = h_to_v(normal_cone(omega, v).set());
    for (const Vec& r : cone.rays) {
      EXPECT_EQ(support_oracle(omega, r), ExtReal(dot(r, v)));
    }
  }
}

TEST_P(SupportProperty, OneSidedBoundForEveryDecomposition) {
  Rng rng(29, 0, GetParam());
  const std::size_t n = static_cast<std::size_t>(rng.uniform(1, 3));
  const Vec p = random_vec(rng, n, -2, 2);
  const HPolyhedron o1 = random_polytope(rng, p, 2, false);
  const HPolyhedron o2 = random_polytope(rng, p, 2, false);
  const Vec xs = random_vec(rng, n, -3, 3);
  const ExtReal both = support(o1.intersect(o2), xs).value;
  for (int k = 0; k < 5; ++k) {
    const Vec x1 = random_vec(rng, n, -3, 3);
    const ExtReal split = support(o1, x1).value + support(o2, sub(xs, x1)).value;
    EXPECT_LE(both, split);
  }
  const SupportDecomposition d = support_intersection(o1, o2, xs);
  EXPECT_EQ(d.value, both);
  EXPECT_EQ(d.value, support_oracle(o1.intersect(o2), xs));
}

TEST_P(SupportProperty, ExtremalPairsHaveDisjointInteriorAndIntersection) {
  Rng rng(31, 0, GetParam());
  const std::size_t n = static_cast<std::size_t>(rng.uniform(1, 3));
  const Vec p = random_vec(rng, n, -2, 2);
  const HPolyhedron o1 = random_polytope(rng, p, 2, true);
  const HPolyhedron o2 = random_polytope(rng, add(p, random_vec(rng, n, -3, 3)), 2, true);
  if (is_extremal_system(o1, o2)) {
    EXPECT_FALSE(interior_meets(o1, o2));
  }
}

INSTANTIATE_TEST_SUITE_P(Random, SupportProperty, ::testing::Range<std::size_t>(0, 25));

}  // namespace
}  // namespace polycalc
