#include <gtest/gtest.h>

#include "support.hpp"

using namespace logzono;
using testsupport::PointSet;
using testsupport::Rng;

namespace {

LogicalZonotope zono(const char* c, std::initializer_list<const char*> gens) {
  std::vector<BitVec> g;
  for (const char* s : gens) g.push_back(BitVec::from_string(s));
  return LogicalZonotope(BitVec::from_string(c), std::move(g));
}

PointSet points(const LogicalZonotope& z) { return testsupport::to_point_set(evaluate_points(z)); }

}  // namespace

TEST(Zonotope, EvaluateSmallExample) {
  // ⟨01, {10, 11}⟩: 01, 11, 10, 00.
  EXPECT_EQ(points(zono("01", {"10", "11"})), (PointSet{"00", "01", "10", "11"}));
  EXPECT_EQ(points(zono("01", {})), (PointSet{"01"}));
  EXPECT_EQ(points(zono("0", {"1", "1"})), (PointSet{"0", "1"}));
}

TEST(Zonotope, EvaluateMatchesBruteForce) {
  Rng rng(1);
  for (int t = 0; t < 300; ++t) {
    const auto z = testsupport::random_zonotope(rng, testsupport::uniform(rng, 1, 6), 6);
    EXPECT_EQ(points(z), testsupport::brute_points(z));
  }
}

TEST(Zonotope, EvaluateIsSorted) {
  const auto pts = evaluate_points(zono("110", {"011", "100"}));
  EXPECT_TRUE(std::is_sorted(pts.begin(), pts.end()));
}

TEST(Zonotope, CapacityAndDimensionErrors) {
  std::vector<BitVec> many(5, BitVec::from_string("1"));
  const LogicalZonotope z(BitVec(1), many);
  EXPECT_THROW(evaluate_points(z, EnumerationLimits{4}), CapacityError);
  EXPECT_NO_THROW(evaluate_points(z, EnumerationLimits{5}));
  EXPECT_THROW(LogicalZonotope(BitVec(2), {BitVec(3)}), DimensionError);
  EXPECT_THROW(mink_xor(zono("0", {}), zono("00", {})), DimensionError);
  EXPECT_THROW(mink_and(zono("0", {}), zono("00", {})), DimensionError);
  EXPECT_THROW(contains(zono("01", {}), BitVec(3)), DimensionError);
}

TEST(Zonotope, XorOfSingletonsIsPointwise) {
  const auto z = mink_xor(zono("01", {}), zono("11", {}));
  EXPECT_EQ(z.num_generators(), 0u);
  EXPECT_EQ(z.center().to_string(), "10");
}

TEST(Zonotope, LinearOperationsAreExact) {
  Rng rng(2);
  for (int t = 0; t < 500; ++t) {
    const std::size_t n = testsupport::uniform(rng, 1, 4);
    const auto a = testsupport::random_zonotope(rng, n, 3);
    const auto b = testsupport::random_zonotope(rng, n, 3);
    const PointSet pa = testsupport::brute_points(a), pb = testsupport::brute_points(b);
    EXPECT_EQ(points(mink_xor(a, b)), testsupport::pairwise(pa, pb, testsupport::bit_fn(LogicOp::Xor)));
    EXPECT_EQ(points(mink_xnor(a, b)), testsupport::pairwise(pa, pb, testsupport::bit_fn(LogicOp::Xnor)));
    EXPECT_EQ(points(mink_not(a)), testsupport::complement_each(pa));
    EXPECT_EQ(mink_xor(a, b).num_generators(), a.num_generators() + b.num_generators());
  }
}

TEST(Zonotope, NonlinearOperationsOverApproximate) {
  Rng rng(4);
  for (int t = 0; t < 500; ++t) {
    const std::size_t n = testsupport::uniform(rng, 1, 4);
    const auto a = testsupport::random_zonotope(rng, n, 3);
    const auto b = testsupport::random_zonotope(rng, n, 3);
    const PointSet pa = testsupport::brute_points(a), pb = testsupport::brute_points(b);
    const std::size_t g1 = a.num_generators(), g2 = b.num_generators();
    for (LogicOp op : {LogicOp::And, LogicOp::Nand, LogicOp::Or, LogicOp::Nor}) {
      const auto z = mink_op(op, a, b);
      EXPECT_TRUE(testsupport::is_subset(testsupport::pairwise(pa, pb, testsupport::bit_fn(op)), points(z)))
          << to_string(op);
      EXPECT_EQ(z.num_generators(), g1 + g2 + g1 * g2) << to_string(op);
    }
  }
}

TEST(Zonotope, AndGeneratorLayout) {
  const auto a = zono("10", {"01", "11"});
  const auto b = zono("11", {"10"});
  const auto z = mink_and(a, b);
  EXPECT_EQ(z.center().to_string(), "10");
  std::vector<std::string> gens;
  for (const auto& g : z.generators()) gens.push_back(g.to_string());
  // c1∧g2, then c2∧g1_i, then g1_i∧g2.
  EXPECT_EQ(gens, (std::vector<std::string>{"10", "01", "11", "00", "10"}));
}

TEST(Zonotope, AndWithZeroSingletonAnnihilates) {
  const auto z = mink_and(zono("1", {"1"}), zono("0", {}));
  EXPECT_EQ(points(z), (PointSet{"0"}));
}

TEST(Zonotope, AndCanAddSurplusPoints) {
  // {01, 10} & {10, 01} = {00, 01, 10}; the enclosure also holds 11.
  const auto a = zono("01", {"11"});
  const auto b = zono("10", {"11"});
  const PointSet exact = testsupport::pairwise(testsupport::brute_points(a), testsupport::brute_points(b),
                                               testsupport::bit_fn(LogicOp::And));
  const PointSet over = points(mink_and(a, b));
  EXPECT_TRUE(testsupport::is_subset(exact, over));
  EXPECT_GT(over.size(), exact.size());
}

TEST(Zonotope, ContainsAgreesWithEvaluate) {
  Rng rng(6);
  for (int t = 0; t < 300; ++t) {
    const std::size_t n = testsupport::uniform(rng, 1, 6);
    const auto z = testsupport::random_zonotope(rng, n, 5);
    const PointSet pts = testsupport::brute_points(z);
    for (std::uint64_t x = 0; x < (1U << n); ++x) {
      BitVec p(n);
      for (std::size_t i = 0; i < n; ++i) p.set(i, ((x >> i) & 1U) != 0);
      EXPECT_EQ(contains(z, p), pts.contains(p.to_string()));
    }
  }
  EXPECT_TRUE(contains(zono("01", {"10", "11"}), BitVec::from_string("00")));
}

TEST(Zonotope, EncloseContainsEveryInput) {
  Rng rng(8);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = testsupport::uniform(rng, 1, 8);
    std::vector<BitVec> input;
    for (std::size_t i = 0, k = testsupport::uniform(rng, 1, 6); i < k; ++i) input.push_back(testsupport::random_bits(rng, n));
    const auto z = enclose_points(input);
    EXPECT_EQ(z.center(), input.front());
    EXPECT_EQ(z.num_generators(), input.size() - 1);
    for (const BitVec& p : input) EXPECT_TRUE(contains(z, p));
  }
  EXPECT_THROW(enclose_points(std::vector<BitVec>{}), EmptyInputError);
  EXPECT_THROW(enclose_points(std::vector<BitVec>{BitVec(2), BitVec(3)}), DimensionError);
}

TEST(Zonotope, EncloseOfTwoBitsIsFullBit) {
  const auto z = enclose_points(std::vector<BitVec>{BitVec(1, false), BitVec(1, true)});
  EXPECT_EQ(z, LogicalZonotope::full_bit());
}

TEST(Reduce, DropsDuplicateGenerator) {
  const auto r = reduce(zono("0", {"1", "1"}));
  EXPECT_EQ(r.num_generators(), 1u);
  EXPECT_EQ(r.center().to_string(), "0");
}

TEST(Reduce, PreservesPointsAndIsIdempotent) {
  Rng rng(10);
  for (int t = 0; t < 300; ++t) {
    const std::size_t n = testsupport::uniform(rng, 1, 5);
    const auto z = testsupport::random_zonotope(rng, n, 8);
    const auto r = reduce(z);
    EXPECT_EQ(points(r), points(z));
    EXPECT_EQ(reduce(r), r);
    EXPECT_EQ(r.center(), z.center());
    // What survives is a basis of the generator span.
    EXPECT_EQ(r.num_generators(), gf2_rank(z.generators()));
  }
}

TEST(Reduce, ScalarFastPathMatchesGeneralReduce) {
  Rng rng(12);
  for (int t = 0; t < 300; ++t) {
    const auto z = testsupport::random_zonotope(rng, 1, 8);
    EXPECT_EQ(reduce_scalar(z), reduce(z));
  }
  EXPECT_THROW(reduce_scalar(zono("01", {})), DimensionError);
}

TEST(Project, ComponentsShareGeneratorIndices) {
  const auto z = zono("010", {"110", "011"});
  const auto p1 = project(z, 1);
  EXPECT_EQ(p1.center().to_string(), "1");
  ASSERT_EQ(p1.num_generators(), 2u);
  EXPECT_EQ(p1.generators()[0].to_string(), "1");
  EXPECT_EQ(p1.generators()[1].to_string(), "1");
  EXPECT_THROW(project(z, 3), DimensionError);
}
