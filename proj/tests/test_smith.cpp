#include <gtest/gtest.h>

#include <random>

#include "mfb/smith.hpp"
#include "oracles.hpp"

using namespace mfb;

using Dense = std::vector<std::vector<long>>;

TEST(Smith, Examples) {
  EXPECT_EQ(smith_normal_form(Dense{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}).diagonal, (std::vector<BigInt>{1, 1, 1}));
  const auto zero = smith_normal_form(Dense{{0}});
  EXPECT_EQ(zero.rank(), 0u);
  EXPECT_EQ(cokernel(SparseIntMatrix::from_dense(Dense{{0}})).free_rank, 1u);
  EXPECT_EQ(smith_normal_form(Dense{{2, 4}, {6, 8}}).diagonal, (std::vector<BigInt>{2, 4}));
}

TEST(Smith, MinorGcdOracleOnRandomMatrices) {
  std::mt19937 rng(2024);
  std::uniform_int_distribution<long> entry(-9, 9);
  std::uniform_int_distribution<int> dim(1, 6);
  std::bernoulli_distribution sparse(0.3);
  for (int trial = 0; trial < 400; ++trial) {
    const int r = dim(rng), c = dim(rng);
    Dense m(static_cast<std::size_t>(r), std::vector<long>(static_cast<std::size_t>(c)));
    for (auto& row : m)
      for (auto& x : row) x = sparse(rng) ? 0 : entry(rng);
    const auto snf = smith_normal_form(m);
    EXPECT_EQ(snf.diagonal, oracle::minor_gcd_invariants(m)) << "trial " << trial;
    for (std::size_t i = 1; i < snf.diagonal.size(); ++i) EXPECT_EQ(snf.diagonal[i] % snf.diagonal[i - 1], 0);
  }
}

TEST(Smith, LargeEntriesStayExact) {
  const long big = 1L << 40;
  const Dense m{{big, big + 1}, {big + 2, big + 3}};  // det = -2
  EXPECT_EQ(smith_normal_form(m).diagonal, (std::vector<BigInt>{1, 2}));
  // entries beyond 64 bits
  SparseIntMatrix s(3, 3);
  s.add(0, 0, BigInt(1) << 80);
  s.add(1, 1, BigInt(1) << 70);
  s.add(2, 2, 3);
  s.add(0, 1, 5);
  const auto snf = smith_normal_form(s);
  ASSERT_EQ(snf.rank(), 3u);
  EXPECT_EQ(snf.diagonal[0] * snf.diagonal[1] * snf.diagonal[2], 3 * (BigInt(1) << 150));
}

TEST(Smith, SparseAccumulation) {
  SparseIntMatrix m(2, 3);
  m.add(0, 1, 2);
  m.add(0, 1, -2);
  EXPECT_EQ(m.nonzeros(), 0u);
  m.add(1, 2, 7);
  EXPECT_EQ(m.at(1, 2), 7);
  EXPECT_THROW(m.add(0, 3, 1), Error);
}

TEST(AbelianGroup, Summaries) {
  const AbelianGroupDesc g{28, std::vector<BigInt>(15, 8)};
  EXPECT_EQ(g.to_string(), "Z^28 + Z_8^15");
  EXPECT_EQ(g.even_torsion(), 15u);
  EXPECT_EQ(g.mod2_betti(), 43u);
  const AbelianGroupDesc h{1, {2, 2, 6, 18}};
  EXPECT_EQ(h.to_string(), "Z + Z_2^2 + Z_6 + Z_18");
  EXPECT_EQ(h.even_torsion(), 4u);
  EXPECT_EQ(AbelianGroupDesc{}.to_string(), "0");
  EXPECT_TRUE(AbelianGroupDesc{}.torsion_free());
}

TEST(AbelianGroup, CokernelDropsUnits) {
  // Z^3 / <(1,2,3), (0,4,0)> = Z + Z_4
  const auto g = cokernel(SparseIntMatrix::from_dense(Dense{{1, 2, 3}, {0, 4, 0}}));
  EXPECT_EQ(g.free_rank, 1u);
  EXPECT_EQ(g.torsion, (std::vector<BigInt>{4}));
}
