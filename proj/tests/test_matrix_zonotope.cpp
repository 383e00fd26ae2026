#include <gtest/gtest.h>

#include <set>

#include "support.hpp"

using namespace logzono;
using testsupport::Rng;

namespace {

LogicalMatrixZonotope random_mz(Rng& rng, std::size_t r, std::size_t c, std::size_t max_gamma) {
  std::vector<BitMatrix> gens;
  for (std::size_t i = 0, k = testsupport::uniform(rng, 0, max_gamma); i < k; ++i) {
    gens.push_back(testsupport::random_matrix(rng, r, c));
  }
  return LogicalMatrixZonotope(testsupport::random_matrix(rng, r, c), std::move(gens));
}

std::set<std::string> as_text(const std::vector<BitMatrix>& ms) {
  std::set<std::string> out;
  for (const BitMatrix& m : ms) out.insert(m.to_string());
  return out;
}

}  // namespace

TEST(MatrixZonotope, ShapeChecked) {
  EXPECT_THROW(LogicalMatrixZonotope(BitMatrix(2, 2), {BitMatrix(2, 1)}), DimensionError);
}

TEST(MatrixZonotope, EvaluateEnumeratesAllCombinations) {
  const LogicalMatrixZonotope z(BitMatrix::from_string("10;01"), {BitMatrix::from_string("01;00"), BitMatrix::from_string("01;00")});
  EXPECT_EQ(as_text(evaluate_matrix(z)), (std::set<std::string>{"10;01", "11;01"}));
  EXPECT_THROW(evaluate_matrix(z, EnumerationLimits{1}), CapacityError);
}

TEST(MatrixZonotope, StpGeneratorLayout) {
  const BitMatrix c1 = BitMatrix::from_string("10;01"), g1 = BitMatrix::from_string("01;00");
  const BitMatrix c2 = BitMatrix::from_string("1;0"), g2 = BitMatrix::from_string("1;1");
  const auto z = mink_stp(LogicalMatrixZonotope(c1, {g1}), LogicalMatrixZonotope(c2, {g2}));
  EXPECT_EQ(z.center(), stp(c1, c2));
  ASSERT_EQ(z.num_generators(), 3u);
  EXPECT_EQ(z.generators()[0], stp(c1, g2));
  EXPECT_EQ(z.generators()[1], stp(g1, c2));
  EXPECT_EQ(z.generators()[2], stp(g1, g2));
}

TEST(MatrixZonotope, SingletonStpIsExact) {
  Rng rng(21);
  for (int t = 0; t < 100; ++t) {
    const BitMatrix a = testsupport::random_matrix(rng, 2, 2);
    const BitMatrix b = testsupport::random_matrix(rng, 2, 1);
    const auto z = mink_stp(LogicalMatrixZonotope(a), LogicalMatrixZonotope(b));
    EXPECT_EQ(z.num_generators(), 0u);
    EXPECT_EQ(testsupport::to_ints(z.center()), testsupport::naive_stp(testsupport::to_ints(a), testsupport::to_ints(b)));
  }
}

TEST(MatrixZonotope, StpOverApproximatesPointwiseProducts) {
  Rng rng(22);
  const std::pair<std::size_t, std::size_t> shapes[] = {{2, 2}, {2, 1}, {1, 2}, {1, 1}};
  for (int t = 0; t < 200; ++t) {
    const auto [ar, ac] = shapes[testsupport::uniform(rng, 0, 3)];
    const auto [br, bc] = shapes[testsupport::uniform(rng, 0, 3)];
    const auto a = random_mz(rng, ar, ac, 2);
    const auto b = random_mz(rng, br, bc, 2);
    const auto z = mink_stp(a, b);
    const auto members = as_text(evaluate_matrix(z));
    for (const BitMatrix& x : evaluate_matrix(a)) {
      for (const BitMatrix& y : evaluate_matrix(b)) {
        const auto p = testsupport::naive_stp(testsupport::to_ints(x), testsupport::to_ints(y));
        BitMatrix pm(p.size(), p[0].size());
        for (std::size_t i = 0; i < p.size(); ++i) {
          for (std::size_t j = 0; j < p[0].size(); ++j) pm.set(i, j, p[i][j] != 0);
        }
        EXPECT_TRUE(members.contains(pm.to_string()));
      }
    }
  }
}
