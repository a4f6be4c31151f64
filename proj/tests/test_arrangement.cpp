#include <gtest/gtest.h>

#include <bit>

#include "mfb/arr_format.hpp"
#include "mfb/arrangement.hpp"
#include "mfb/catalog.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

using namespace mfb;

namespace {

bool has_kind(const ValidationResult& r, ErrorKind k) {
  return std::any_of(r.violations.begin(), r.violations.end(), [&](const Violation& v) { return v.kind == k; });
}

}  // namespace

TEST(Validate, SinglePencilIsValid) { EXPECT_TRUE(validate(LineConfiguration{3, {{1, 2, 3}}}).ok()); }

TEST(Validate, GenericHasSixDoubles) {
  const LineConfiguration c{4, {}};
  ASSERT_TRUE(validate(c).ok());
  EXPECT_EQ(l2_flats(c).size(), 6u);
}

TEST(Validate, DuplicatePairReportsBothFlats) {
  const auto r = validate(LineConfiguration{4, {{1, 2, 3}, {1, 2, 4}}});
  ASSERT_EQ(r.violations.size(), 1u);
  const auto& v = r.violations.front();
  EXPECT_EQ(v.kind, ErrorKind::DuplicatePair);
  EXPECT_EQ(v.i, 1);
  EXPECT_EQ(v.j, 2);
  EXPECT_EQ(v.flat_a, 0u);
  EXPECT_EQ(v.flat_b, 1u);
}

TEST(Validate, OtherViolations) {
  EXPECT_TRUE(has_kind(validate(LineConfiguration{4, {{1, 2, 5}}}), ErrorKind::BadIndex));
  EXPECT_TRUE(has_kind(validate(LineConfiguration{4, {{1, 2}}}), ErrorKind::FlatTooSmall));
  EXPECT_TRUE(has_kind(validate(LineConfiguration{4, {{1, 1, 2}}}), ErrorKind::FlatTooSmall));
  EXPECT_TRUE(has_kind(validate(LineConfiguration{5, {{1, 2, 3}, {3, 2, 1}}}), ErrorKind::DuplicateFlat));
  EXPECT_TRUE(has_kind(validate(LineConfiguration{0, {}}), ErrorKind::BadIndex));
  EXPECT_THROW(require_valid(LineConfiguration{4, {{1, 2, 3}, {1, 2, 4}}}), ValidationError);
}

TEST(L2Flats, CatalogExamples) {
  EXPECT_EQ(l2_flats(generic(8)).size(), 28u);
  for (const auto& f : l2_flats(generic(8))) EXPECT_EQ(f.multiplicity(), 2);
  const auto p = l2_flats(pencil(8));
  ASSERT_EQ(p.size(), 1u);
  EXPECT_EQ(p[0].multiplicity(), 8);
  EXPECT_EQ(p[0].mobius(), 7);
  const auto np = l2_flats(near_pencil(8));
  EXPECT_EQ(np.size(), 8u);
  int sevens = 0, doubles_with_8 = 0;
  for (const auto& f : np) {
    sevens += f.multiplicity() == 7;
    doubles_with_8 += f.multiplicity() == 2 && f.contains(8);
  }
  EXPECT_EQ(sevens, 1);
  EXPECT_EQ(doubles_with_8, 7);
}

TEST(L2Flats, EveryPairExactlyOnceAndInputFlatsKept) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const auto c = sample::random_config(rng, 3 + trial % 9, 8, 5);
    ASSERT_TRUE(validate(c).ok());
    const auto flats = l2_flats(c);
    long pairs = 0;
    std::set<std::pair<int, int>> seen;
    std::set<std::vector<int>> multiples;
    for (const auto& f : flats) {
      pairs += binomial2(f.multiplicity());
      for (std::size_t a = 0; a < f.lines.size(); ++a)
        for (std::size_t b = a + 1; b < f.lines.size(); ++b) EXPECT_TRUE(seen.insert(std::make_pair(f.lines[a], f.lines[b])).second);
      if (f.multiplicity() >= 3) multiples.insert(f.lines);
    }
    EXPECT_EQ(pairs, binomial2(c.n));
    std::set<std::vector<int>> input;
    for (auto f : c.flats) {
      std::sort(f.begin(), f.end());
      input.insert(f);
    }
    EXPECT_EQ(multiples, input);
  }
}

TEST(Betti, PublishedValues) {
  const auto g = char_poly_and_betti(generic(8));
  EXPECT_EQ(g.b_M[1], 8);
  EXPECT_EQ(g.b_M[2], 28);
  EXPECT_EQ(g.b_U[1], 7);
  EXPECT_EQ(g.b_U[2], 21);
  EXPECT_EQ(g.chi_U, 15);
  EXPECT_EQ(char_poly_and_betti(maclane()).chi_U, 7);
  const auto np = char_poly_and_betti(near_pencil(8));
  EXPECT_EQ(np.b_M[2], 13);
  EXPECT_EQ(np.chi_U, 0);
}

TEST(Betti, PencilChiFollowsFormula) {
  const auto p = char_poly_and_betti(pencil(8));
  EXPECT_EQ(p.b_U[1], 7);
  EXPECT_EQ(p.b_U[2], 0);
  EXPECT_EQ(p.chi_U, -6);
}

TEST(Betti, InvariantsOnRandomConfigs) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const auto c = sample::random_config(rng, 1 + trial % 12, 8, 6);
    const auto p = char_poly_and_betti(c);
    EXPECT_EQ(p.charpoly_at(1), 0);
    EXPECT_EQ(p.chi_U, 1 - p.b_U[1] + p.b_U[2]);
    for (int k = 0; k <= 3; ++k) {
      const long uk = k <= 2 ? p.b_U[static_cast<std::size_t>(k)] : 0;
      const long uk1 = k >= 1 ? p.b_U[static_cast<std::size_t>(k - 1)] : 0;
      EXPECT_EQ(p.b_M[static_cast<std::size_t>(k)], uk + uk1);
    }
    long mob = 0;
    for (const auto& f : l2_flats(c)) mob += f.multiplicity() - 1;
    EXPECT_EQ(p.b_M[2], mob);
  }
}

TEST(Betti, WhitneySubsetOracleUpToSixLines) {
  std::mt19937 rng(3);
  std::vector<LineConfiguration> configs;
  for (int n = 1; n <= 6; ++n) {
    configs.push_back(generic(n));
    if (n >= 3) configs.push_back(pencil(n));
    for (int k = 0; k < 25; ++k) configs.push_back(sample::random_config(rng, n, 5, 5));
  }
  for (const auto& c : configs) {
    const auto p = char_poly_and_betti(c);
    const auto w = oracle::whitney_charpoly(c);
    EXPECT_EQ(p.charpoly, w) << write_arr(c);
    for (int k = 0; k <= 3; ++k)  // b_k(M) = |coefficient of t^(3-k)|
      EXPECT_EQ(p.b_M[static_cast<std::size_t>(k)], std::labs(w[static_cast<std::size_t>(3 - k)]));
  }
}

TEST(MilnorFormula, Examples) {
  EXPECT_EQ(b1_milnor_boundary(generic(8)), 28);
  EXPECT_EQ(b1_milnor_boundary(pencil(8)), 49);
  EXPECT_EQ(b1_milnor_boundary(near_pencil(8)), 13);
  EXPECT_THROW(b1_milnor_boundary(generic(2)), Error);
}

TEST(AssumptionStar, Examples) {
  EXPECT_TRUE(assumption_star(generic(8)));
  EXPECT_TRUE(assumption_star(near_pencil(8)));
  EXPECT_FALSE(assumption_star(with_concurrencies(8, {{1, 2, 3, 4, 5, 6}})));
  EXPECT_FALSE(assumption_star(pencil(8)));
}

TEST(AssumptionStar, FormulaEqualsBoundaryRank) {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    const auto c = sample::random_config(rng, 3 + trial % 10, 6, 6);
    if (!assumption_star(c)) continue;
    const auto p = char_poly_and_betti(c);
    EXPECT_EQ(b1_milnor_boundary(c), p.b_U[1] + p.b_U[2]);
  }
}

TEST(MultiplicityTuple, Examples) {
  EXPECT_EQ(multiplicity_tuple(maclane()).to_string(), "(8,0,0,0,0,0)");
  EXPECT_EQ(multiplicity_tuple(maclane()).doubles, 4);
  EXPECT_EQ(multiplicity_tuple(generic(8)).to_string(), "(0,0,0,0,0,0)");
  EXPECT_EQ(multiplicity_tuple(with_concurrencies(8, {{1, 2, 3, 4, 5, 6}, {1, 7, 8}})).to_string(), "(1,0,0,1,0,0)");
}

TEST(MultiplicityTuple, PairCountConservation) {
  std::mt19937 rng(9);
  for (int trial = 0; trial < 100; ++trial) {
    const auto c = sample::random_config(rng, 3 + trial % 10, 8, 6);
    const auto t = multiplicity_tuple(c);
    long pairs = t.doubles;
    for (int k = 3; k <= c.n; ++k) pairs += t.at(k) * binomial2(k);
    EXPECT_EQ(pairs, binomial2(c.n));
  }
}
