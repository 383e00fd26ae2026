#include <gtest/gtest.h>

#include "support.hpp"

using namespace logzono;
using testsupport::Rng;

TEST(BitVec, StringRoundTripAndAccess) {
  const BitVec v = BitVec::from_string("10110");
  EXPECT_EQ(v.size(), 5u);
  EXPECT_EQ(v.to_string(), "10110");
  EXPECT_TRUE(v[0]);
  EXPECT_FALSE(v[1]);
  EXPECT_EQ(v.count(), 3u);
  EXPECT_THROW(BitVec::from_string("10a"), FormatError);
}

TEST(BitVec, WideVectorsKeepPaddingClean) {
  BitVec a = BitVec::ones(70);
  EXPECT_EQ(a.count(), 70u);
  a.invert();
  EXPECT_TRUE(a.none());
  EXPECT_EQ((~a).count(), 70u);
  BitVec b(70);
  b.set(69, true);
  EXPECT_EQ(b.to_string().back(), '1');
  EXPECT_EQ(b.count(), 1u);
}

TEST(BitVec, PointwiseOperators) {
  const BitVec a = BitVec::from_string("0011");
  const BitVec b = BitVec::from_string("0101");
  EXPECT_EQ(bit_xor(a, b).to_string(), "0110");
  EXPECT_EQ(bit_and(a, b).to_string(), "0001");
  EXPECT_EQ(bit_or(a, b).to_string(), "0111");
  EXPECT_EQ(bit_nand(a, b).to_string(), "1110");
  EXPECT_EQ(bit_nor(a, b).to_string(), "1000");
  EXPECT_EQ(bit_xnor(a, b).to_string(), "1001");
  EXPECT_EQ(bit_not(a).to_string(), "1100");
  EXPECT_THROW(a ^ BitVec(3), DimensionError);
}

TEST(BitVec, OrderingIsLexicographicOnText) {
  Rng rng(11);
  for (int t = 0; t < 500; ++t) {
    const std::size_t n = testsupport::uniform(rng, 1, 130);
    const BitVec a = testsupport::random_bits(rng, n);
    const BitVec b = testsupport::random_bits(rng, n);
    EXPECT_EQ(a < b, a.to_string() < b.to_string());
    EXPECT_EQ(a == b, a.to_string() == b.to_string());
  }
}

TEST(BitMatrix, MatmulMatchesNaiveProduct) {
  Rng rng(3);
  for (int t = 0; t < 200; ++t) {
    const std::size_t r = testsupport::uniform(rng, 1, 5), k = testsupport::uniform(rng, 1, 5),
                      c = testsupport::uniform(rng, 1, 5);
    const BitMatrix a = testsupport::random_matrix(rng, r, k);
    const BitMatrix b = testsupport::random_matrix(rng, k, c);
    const BitMatrix p = gf2_matmul(a, b);
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = 0; j < c; ++j) {
        bool acc = false;
        for (std::size_t q = 0; q < k; ++q) acc ^= a.get(i, q) && b.get(q, j);
        EXPECT_EQ(p.get(i, j), acc);
      }
    }
  }
  EXPECT_THROW(gf2_matmul(BitMatrix(2, 3), BitMatrix(2, 3)), DimensionError);
}

TEST(BitMatrix, StringFormat) {
  const BitMatrix m = BitMatrix::from_string("10;01;11");
  EXPECT_EQ(m.rows(), 3u);
  EXPECT_EQ(m.cols(), 2u);
  EXPECT_EQ(m.to_string(), "10;01;11");
  EXPECT_EQ(m.col(0).to_string(), "101");
  EXPECT_THROW(BitMatrix::from_string("10;1"), FormatError);
}

TEST(BitMatrix, KroneckerSmallCase) {
  const BitMatrix a = BitMatrix::from_string("1;1");
  const BitMatrix i2 = BitMatrix::identity(2);
  EXPECT_EQ(kron(a, i2).to_string(), "10;01;10;01");
  EXPECT_EQ(kron(i2, a).to_string(), "10;10;01;01");
}

TEST(Stp, EqualsMatmulWhenDimensionsAgree) {
  Rng rng(5);
  for (int t = 0; t < 100; ++t) {
    const BitMatrix a = testsupport::random_matrix(rng, 2, 3);
    const BitMatrix b = testsupport::random_matrix(rng, 3, 2);
    EXPECT_EQ(stp(a, b), gf2_matmul(a, b));
  }
}

TEST(Stp, MatchesIndexFormula) {
  Rng rng(7);
  for (int t = 0; t < 300; ++t) {
    const std::size_t mr = testsupport::uniform(rng, 1, 3), mc = testsupport::uniform(rng, 1, 4),
                      nr = testsupport::uniform(rng, 1, 4), nc = testsupport::uniform(rng, 1, 3);
    const BitMatrix m = testsupport::random_matrix(rng, mr, mc);
    const BitMatrix n = testsupport::random_matrix(rng, nr, nc);
    EXPECT_EQ(testsupport::to_ints(stp(m, n)), testsupport::naive_stp(testsupport::to_ints(m), testsupport::to_ints(n)));
  }
}

TEST(Stp, RowVectorTimesColumnBlock) {
  // [1 1] ⋉ [1;0;0;1]: s = 4, so [1 1] ⊗ I_2 = [1 0 1 0; 0 1 0 1].
  const BitMatrix m = BitMatrix::from_string("11");
  const BitMatrix n = BitMatrix::from_string("1;0;0;1");
  EXPECT_EQ(stp(m, n).to_string(), "1;1");
}

TEST(Gf2Solve, AgreesWithBruteForce) {
  Rng rng(9);
  for (int t = 0; t < 400; ++t) {
    const std::size_t r = testsupport::uniform(rng, 1, 5), c = testsupport::uniform(rng, 1, 5);
    const BitMatrix a = testsupport::random_matrix(rng, r, c);
    const BitVec b = testsupport::random_bits(rng, r);
    bool solvable = false;
    for (std::uint64_t x = 0; x < (1U << c) && !solvable; ++x) {
      BitVec beta(c);
      for (std::size_t j = 0; j < c; ++j) beta.set(j, ((x >> j) & 1U) != 0);
      solvable = gf2_apply(a, beta) == b;
    }
    const auto sol = gf2_solve(a, b);
    ASSERT_EQ(sol.has_value(), solvable);
    if (sol) EXPECT_EQ(gf2_apply(a, *sol), b);
  }
}

TEST(Gf2Solve, FreeVariablesAreZero) {
  // Both columns equal: pivot on column 0, column 1 free.
  const BitMatrix a = BitMatrix::from_string("11;11");
  const auto sol = gf2_solve(a, BitVec::from_string("11"));
  ASSERT_TRUE(sol);
  EXPECT_EQ(sol->to_string(), "10");
}

TEST(Gf2Rank, SpanSizeIsTwoToTheRank) {
  Rng rng(13);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = testsupport::uniform(rng, 1, 6);
    std::vector<BitVec> vs;
    for (std::size_t i = 0, k = testsupport::uniform(rng, 1, 6); i < k; ++i) vs.push_back(testsupport::random_bits(rng, n));
    const auto span = testsupport::brute_points(LogicalZonotope(BitVec(n), vs));
    EXPECT_EQ(span.size(), std::size_t{1} << gf2_rank(vs));
  }
}
