#include <gtest/gtest.h>

#include "support.hpp"

using namespace logzono;
using testsupport::Rng;

namespace {

ExplicitSet set_of(std::size_t dim, std::initializer_list<const char*> pts) {
  std::vector<BitVec> v;
  for (const char* p : pts) v.push_back(BitVec::from_string(p));
  return ExplicitSet(dim, std::move(v));
}

}  // namespace

TEST(ExplicitSet, NormalizesOrderAndDuplicates) {
  const auto s = set_of(2, {"11", "01", "11", "00"});
  ASSERT_EQ(s.size(), 3u);
  EXPECT_EQ(s.points()[0].to_string(), "00");
  EXPECT_EQ(s.points()[2].to_string(), "11");
  EXPECT_TRUE(s.contains(BitVec::from_string("01")));
  EXPECT_FALSE(s.contains(BitVec::from_string("10")));
  EXPECT_THROW(set_of(2, {"1"}), DimensionError);
}

TEST(Oracle, PairwiseXor) {
  EXPECT_EQ(oracle_op(LogicOp::Xor, set_of(2, {"01", "11"}), set_of(2, {"11"})), set_of(2, {"10", "00"}));
}

TEST(Oracle, AndWithZeroAnnihilates) {
  EXPECT_EQ(oracle_op(LogicOp::And, set_of(3, {"101", "111", "010"}), set_of(3, {"000"})), set_of(3, {"000"}));
}

TEST(Oracle, OrOfFullBits) {
  EXPECT_EQ(oracle_op(LogicOp::Or, set_of(1, {"0", "1"}), set_of(1, {"0", "1"})), set_of(1, {"0", "1"}));
}

TEST(Oracle, NotAndDimensionCheck) {
  EXPECT_EQ(oracle_not(set_of(2, {"01", "10"})), set_of(2, {"10", "01"}));
  EXPECT_THROW(oracle_op(LogicOp::Xor, set_of(1, {"0"}), set_of(2, {"00"})), DimensionError);
}

TEST(Oracle, SizeBoundedByProduct) {
  Rng rng(31);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = testsupport::uniform(rng, 1, 4);
    std::vector<BitVec> a, b;
    for (std::size_t i = 0, k = testsupport::uniform(rng, 1, 5); i < k; ++i) a.push_back(testsupport::random_bits(rng, n));
    for (std::size_t i = 0, k = testsupport::uniform(rng, 1, 5); i < k; ++i) b.push_back(testsupport::random_bits(rng, n));
    const ExplicitSet sa(n, a), sb(n, b);
    for (LogicOp op : {LogicOp::Xor, LogicOp::And, LogicOp::Or, LogicOp::Nand, LogicOp::Nor, LogicOp::Xnor}) {
      const ExplicitSet r = oracle_op(op, sa, sb);
      EXPECT_LE(r.size(), sa.size() * sb.size());
      EXPECT_EQ(testsupport::to_point_set(r),
                testsupport::pairwise(testsupport::to_point_set(sa), testsupport::to_point_set(sb), testsupport::bit_fn(op)));
    }
  }
}

TEST(Oracle, ParseLogicOpNames) {
  EXPECT_EQ(parse_logic_op("nand"), LogicOp::Nand);
  EXPECT_EQ(parse_logic_op("xnor"), LogicOp::Xnor);
  EXPECT_FALSE(parse_logic_op("implies"));
}

TEST(ExactReach, ConstantDynamicsCollapse) {
  const auto sys = dsl::parse_system("state a, b; a' = 0; b' = 0; init a = {0,1}; init b = {0,1};");
  const auto sets = exact_reach(sys, 3);
  ASSERT_EQ(sets.size(), 4u);
  EXPECT_EQ(sets[0].size(), 4u);
  EXPECT_EQ(sets[1], set_of(2, {"00"}));
}

TEST(ExactReach, IdentityDynamicsKeepInitialSet) {
  const auto sys = dsl::parse_system("state a, b; input u; a' = a; b' = b; init a = 1; init b = {0,1}; in u = {0,1};");
  const auto sets = exact_reach(sys, 5);
  for (const ExplicitSet& s : sets) EXPECT_EQ(s, sets.front());
}

TEST(ExactReach, MonotoneInInitialSet) {
  const char* rules = "state a, b, c; input u; a' = b ^ u; b' = a & c; c' = !(a | b);";
  const auto small = dsl::parse_system(std::string(rules) + "init a = 1; init b = 0; init c = 1; in u = {0,1};");
  const auto big = dsl::parse_system(std::string(rules) + "init a = {0,1}; init b = 0; init c = 1; in u = {0,1};");
  const auto rs = exact_reach(small, 6);
  const auto rb = exact_reach(big, 6);
  for (std::size_t k = 0; k < rs.size(); ++k) EXPECT_TRUE(rs[k].is_subset_of(rb[k])) << "k=" << k;
}

TEST(ExactReach, IntersectionProtocolSize) {
  const auto sets = exact_reach(intersection_system(), 10);
  EXPECT_EQ(sets.front().size(), 16u);
  EXPECT_EQ(sets.back().size(), 36u);
}

TEST(ExactReach, StateBudget) {
  const auto sys = dsl::parse_system("state a, b, c; a' = a; b' = b; c' = c; init a = 0; init b = 0; init c = 0;");
  EXPECT_THROW(exact_reach(sys, 1, ExactLimits{2, 20}), CapacityError);
  const auto wide = dsl::parse_system("state a; input u, v, w; a' = u ^ v ^ w; init a = 0; in u = {0,1}; in v = {0,1}; in w = {0,1};");
  EXPECT_THROW(exact_reach(wide, 1, ExactLimits{20, 2}), CapacityError);
  EXPECT_NO_THROW(exact_reach(wide, 1, ExactLimits{20, 3}));
}
