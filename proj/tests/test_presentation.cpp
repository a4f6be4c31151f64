#include <gtest/gtest.h>

#include "mfb/boundary.hpp"
#include "mfb/catalog.hpp"
#include "mfb/presentation.hpp"

using namespace mfb;

TEST(Words, Reduction) {
  Word w{1, 2, -2, -1, 3};
  free_reduce(w);
  EXPECT_EQ(w, (Word{3}));
  Word c{-1, 2, 3, 1};
  cyclic_reduce(c);
  EXPECT_EQ(c, (Word{2, 3}));
  EXPECT_EQ(inverse(Word{1, -2}), (Word{2, -1}));
  EXPECT_EQ(commutator(power(0, 1), power(1, 1)), (Word{1, 2, -1, -2}));
  EXPECT_EQ(power(2, -2), (Word{-3, -3}));
}

TEST(H1, ToyGroups) {
  GroupPresentation torus;
  const auto x = torus.add_generator("x"), y = torus.add_generator("y");
  torus.add_relator(commutator(power(x, 1), power(y, 1)));
  EXPECT_EQ(h1(torus).to_string(), "Z^2");

  GroupPresentation lens;
  const auto g = lens.add_generator("g");
  lens.add_relator(power(g, 5));
  EXPECT_EQ(h1(lens).to_string(), "Z_5");

  GroupPresentation free2;
  free2.add_generator("a");
  free2.add_generator("b");
  EXPECT_EQ(h1(free2).to_string(), "Z^2");
}

TEST(TextFormat, RoundTrip) {
  const auto p = pi1_presentation(plumbing_graph(maclane()));
  const auto text = write_presentation(p);
  const auto q = parse_presentation(text);
  EXPECT_EQ(q, p);  // kinds are recovered from the labels
  EXPECT_EQ(write_presentation(q), text);
}

TEST(TextFormat, Errors) {
  EXPECT_THROW(parse_presentation("gen a\nrel b^1\n"), Error);
  EXPECT_THROW(parse_presentation("gen a\ngen a\n"), Error);
  EXPECT_THROW(parse_presentation("rel\ngen a\n"), Error);
  EXPECT_THROW(parse_presentation("gen a\nrel a^x\n"), Error);
  EXPECT_THROW(parse_presentation("gen a\nfoo\n"), Error);
  const auto p = parse_presentation("gen a\nrel a^3 a^-1\n");
  EXPECT_EQ(p.relators[0], (Word{1, 1, 1, -1}));
}

TEST(Kinds, InferredFromLabels) {
  EXPECT_EQ(infer_kind("x3"), GenKind::LineFiber);
  EXPECT_EQ(infer_kind("z12"), GenKind::PointFiber);
  EXPECT_EQ(infer_kind("y1"), GenKind::Stable);
  EXPECT_EQ(infer_kind("d_L1_P2"), GenKind::Boundary);
  EXPECT_EQ(infer_kind("x"), GenKind::Other);
  EXPECT_EQ(infer_kind("xa"), GenKind::Other);
}

TEST(Tietze, PreservesAbelianization) {
  for (const auto& c : {generic(6), pencil(5), maclane(), near_pencil(8)}) {
    const auto p = pi1_presentation(plumbing_graph(c));
    const auto s = simplify_boundary(p);
    EXPECT_TRUE(s.presentation.well_formed());
    EXPECT_LT(s.presentation.generators.size(), p.generators.size());
    EXPECT_EQ(s.presentation.count(GenKind::Boundary), 0u);
    EXPECT_EQ(h1(s.presentation), h1(p));
    for (std::size_t g = 0; g < p.generators.size(); ++g)
      if (p.generators[g].kind != GenKind::Boundary) {
        EXPECT_GE(s.new_index[g], 0);
      }
  }
}

TEST(Tietze, EliminatesOnlyUnprotected) {
  GroupPresentation p;
  const auto a = p.add_generator("a"), b = p.add_generator("b"), c = p.add_generator("c");
  p.add_relator(concat({power(c, 1), power(a, -1)}));       // c = a
  p.add_relator(commutator(power(a, 1), power(c, 1)));      // trivial after substitution
  p.add_relator(concat({power(b, 2), power(c, 3)}));
  const auto s = simplify(p);
  EXPECT_EQ(s.new_index[c], -1);
  EXPECT_EQ(s.presentation.generators.size(), 2u);
  EXPECT_EQ(h1(s.presentation), h1(p));
  TietzeOptions keep;
  keep.protected_kinds = {GenKind::Other};
  EXPECT_EQ(simplify(p, keep).presentation.generators.size(), 3u);
}
