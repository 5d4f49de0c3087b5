#include <gtest/gtest.h>

#include "subsym/error.hpp"
#include "subsym/substitution.hpp"
#include "support.hpp"

using namespace subsym;
using subsym::oracle::brute_power;
using subsym::oracle::corpus;
using subsym::oracle::corpus_names;

namespace {

std::string word(const Pattern &p) {
  std::string s;
  for (auto c : p.cells())
    s += static_cast<char>('0' + c);
  return s;
}

Pattern cells1d(std::int64_t anchor, const std::string &w) {
  std::vector<Symbol> c;
  for (char ch : w)
    c.push_back(static_cast<Symbol>(ch - '0'));
  return Pattern({anchor}, {static_cast<std::int64_t>(w.size())}, c);
}

} // namespace

TEST(Substitution, ApplyExamples) {
  const auto tm = corpus("tm1d");
  EXPECT_EQ(word(apply(tm, cells1d(0, "0"))), "01");
  const Pattern p = apply(tm, cells1d(0, "01"));
  EXPECT_EQ(word(p), "0110");
  EXPECT_EQ(p.anchor(), LatticeVec{0});
  const auto tm2 = corpus("tm2d");
  const Pattern q = apply(tm2, Pattern({-1, -1}, {1, 1}, Symbol{0}));
  EXPECT_EQ(q.anchor(), (LatticeVec{-2, -2}));
  EXPECT_EQ(q.extent(), (LatticeVec{2, 2}));
  // (a + m1 + m2) mod 2 at the local offsets.
  EXPECT_EQ(q.at({-2, -2}), 0);
  EXPECT_EQ(q.at({-1, -2}), 1);
  EXPECT_EQ(q.at({-2, -1}), 1);
  EXPECT_EQ(q.at({-1, -1}), 0);
}

TEST(Substitution, ApplyRespectsCellCap) {
  const auto tm = corpus("tm2d");
  EXPECT_THROW(apply(tm, Pattern({0, 0}, {64, 64}, Symbol{0}), 1000), SizeError);
}

TEST(Substitution, PowerExamples) {
  const auto tm = corpus("tm1d");
  EXPECT_EQ(word(power(tm, 3).rule(0)), "01101001");
  EXPECT_EQ(power(tm, 1), tm);
  const auto tm2 = power(corpus("tm2d"), 2);
  EXPECT_EQ(tm2.size(), (LatticeVec{4, 4}));
  EXPECT_EQ(tm2.rule(0).at({3, 3}), 0);
}

TEST(Substitution, PowerMatchesBruteExpansion) {
  for (const auto &name : corpus_names()) {
    const auto theta = corpus(name);
    const unsigned top = theta.dim() == 3 ? 3 : 4;
    for (unsigned m = 1; m <= top; ++m) {
      const auto pm = power(theta, m);
      for (std::size_t a = 0; a < theta.symbols(); ++a)
        EXPECT_EQ(pm.rule(static_cast<Symbol>(a)).cells(),
                  brute_power(theta, static_cast<Symbol>(a), m).cells())
            << name << " m=" << m;
    }
  }
}

TEST(Substitution, PowerComposes) {
  const auto theta = corpus("cyc3");
  EXPECT_EQ(power(power(theta, 2), 2), power(theta, 4));
}

TEST(Substitution, Primitivity) {
  const auto tm = is_primitive(corpus("tm1d"));
  EXPECT_TRUE(tm.primitive);
  EXPECT_EQ(tm.witness_power, 1u);
  const auto deg = is_primitive(corpus("degenerate"));
  EXPECT_FALSE(deg.primitive);
  ASSERT_TRUE(deg.missing.has_value());
  const auto cyc = is_primitive(corpus("cyc3"));
  EXPECT_TRUE(cyc.primitive);
  EXPECT_EQ(cyc.witness_power, 1u);
  // 0 -> 01, 1 -> 00: theta(1) lacks 1, theta^2(1) = 0101.
  EXPECT_EQ(is_primitive(corpus("nonbijective")).witness_power, 2u);
}

TEST(Substitution, Bijectivity) {
  EXPECT_TRUE(is_bijective(corpus("tm2d")));
  EXPECT_TRUE(is_bijective(corpus("vartheta")));
  EXPECT_TRUE(is_bijective(corpus("tm2x3")));
  EXPECT_FALSE(is_bijective(corpus("nonbijective")));
}

TEST(Substitution, PositionMaps) {
  const auto tm = corpus("tm1d");
  EXPECT_EQ(position_map(tm, {0}), (SymbolMap{0, 1}));
  EXPECT_EQ(position_map(tm, {1}), (SymbolMap{1, 0}));
  // Third letters of 123, 212, 331 (alphabet index = name - 1).
  EXPECT_EQ(position_map(corpus("vartheta"), {2}), (SymbolMap{2, 1, 0}));
}

TEST(Substitution, CornerFixingPower) {
  EXPECT_EQ(corner_fixing_power(corpus("tm1d")), 2u);
  EXPECT_EQ(corner_fixing_power(corpus("tm2d")), 2u);
  EXPECT_EQ(corner_fixing_power(corpus("cyc3")), 3u);
  EXPECT_EQ(corner_fixing_power(corpus("degenerate")), 1u);
  EXPECT_THROW(corner_fixing_power(corpus("nonbijective")), PreconditionError);
}

TEST(Substitution, SeedStepExamples) {
  const auto tm = corpus("tm1d");
  EXPECT_EQ(seed_step(tm, Seed(1, {1, 0})), Seed(1, {0, 0}));
  EXPECT_EQ(seed_step(tm, Seed(1, {0, 0})), Seed(1, {1, 0}));
  const auto deg = corpus("degenerate");
  for (const auto &s : all_seeds(1, 2))
    EXPECT_EQ(seed_step(deg, s), s);
}

// seed_step against direct evaluation of theta^p on each corner symbol.
TEST(Substitution, SeedStepMatchesBruteCorners) {
  for (const auto &name : corpus_names()) {
    const auto theta = corpus(name);
    const std::size_t d = theta.dim();
    for (unsigned p = 1; p <= 2; ++p) {
      const auto tp = power(theta, p);
      for (const auto &seed : all_seeds(d, theta.symbols())) {
        std::vector<Symbol> want(seed.corner_count());
        for (std::size_t j = 0; j < seed.corner_count(); ++j) {
          const LatticeVec u = Seed::corner_vector(d, j);
          const Pattern img = brute_power(theta, seed.corner(j), p);
          LatticeVec at(d);
          for (std::size_t i = 0; i < d; ++i)
            at[i] = u[i] == -1 ? img.extent()[i] - 1 : 0;
          want[j] = img.at(at);
        }
        EXPECT_EQ(seed_step(tp, seed), Seed(d, want)) << name;
      }
    }
  }
}

TEST(Substitution, FixedSeedCountsAfterCornerFixing) {
  for (const char *name : {"tm1d", "tm2d", "tm2x3", "tm3d", "degenerate"}) {
    const auto theta = corpus(name);
    const auto fixed = power(theta, static_cast<unsigned>(fixing_power(theta)));
    const std::size_t d = theta.dim();
    EXPECT_EQ(fixed_seeds(fixed).fixed().size(), std::size_t{1} << (std::size_t{1} << d)) << name;
  }
}

TEST(Substitution, SeedDynamicsStructure) {
  const auto dyn = fixed_seeds(corpus("tm1d"));
  EXPECT_EQ(dyn.seeds_scanned, 4u);
  EXPECT_EQ(dyn.period_lcm, 2u);
  EXPECT_EQ(dyn.periodic().size(), 4u);
  // Non-bijective: 0 -> 01, 1 -> 00 has a single 2-cycle of seeds.
  const auto nb = fixed_seeds(corpus("nonbijective"));
  EXPECT_EQ(nb.cycles.size(), 1u);
  EXPECT_EQ(fixing_power(corpus("nonbijective")), 2u);
}

TEST(Substitution, ConstructorValidates) {
  Alphabet ab({"0", "1"});
  std::vector<Pattern> rules{Pattern({0}, {2}, std::vector<Symbol>{0, 1}),
                             Pattern({0}, {3}, std::vector<Symbol>{1, 0, 1})};
  EXPECT_THROW(RectSubstitution(ab, {2}, rules), PreconditionError);
  EXPECT_THROW(Alphabet({"a", "a"}), PreconditionError);
}

TEST(SymbolMaps, Algebra) {
  const SymbolMap m{1, 2, 0};
  EXPECT_TRUE(is_permutation(m));
  EXPECT_EQ(permutation_order(m), 3u);
  EXPECT_EQ(compose_maps(m, invert_map(m)), identity_map(3));
  EXPECT_FALSE(is_permutation({0, 0, 1}));
}
