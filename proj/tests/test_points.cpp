#include <gtest/gtest.h>

#include <random>

#include "subsym/error.hpp"
#include "subsym/points.hpp"
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

AddressablePoint tm1d_point(LatticeVec shift = {0}) {
  return AddressablePoint(corner_fixed(corpus("tm1d")), Seed(1, {1, 0}), std::move(shift));
}

} // namespace

TEST(Points, CornerFixedFixesEveryPeriodicSeed) {
  for (const auto &name : corpus_names()) {
    const auto theta = corpus(name);
    const auto fixed = corner_fixed(theta);
    for (const auto &s : fixed_seeds(theta).periodic())
      EXPECT_EQ(seed_step(*fixed, s), s) << name;
  }
}

TEST(Points, RejectsUnfixedSeed) {
  EXPECT_THROW(AddressablePoint(std::make_shared<const RectSubstitution>(corpus("tm1d")),
                                Seed(1, {1, 0}), {0}),
               PreconditionError);
}

TEST(Points, TmSymbolsAroundTheDot) {
  const auto x = tm1d_point();
  EXPECT_EQ(x.symbol_at({0}), 0);
  EXPECT_EQ(x.symbol_at({-1}), 1);
  EXPECT_EQ(x.symbol_at({5}), 0);
  EXPECT_EQ(word(x.window(Rect({-8}, {7}))), "0110100101101001");
  // Longer printed stretch: ...1001011001101001.0110100110010110...
  EXPECT_EQ(word(x.window(Rect({-16}, {15}))), "10010110011010010110100110010110");
}

TEST(Points, SymbolAtDepthAgrees) {
  const auto x = tm1d_point({3});
  for (std::int64_t k = -40; k <= 40; ++k) {
    const unsigned d0 = x.minimal_depth({k});
    for (unsigned extra = 0; extra < 3; ++extra)
      EXPECT_EQ(x.symbol_at_depth({k}, d0 + extra), x.symbol_at({k}));
  }
}

// Each seed-corner quadrant block of side s^m is theta^m of its corner symbol.
TEST(Points, WindowMatchesBruteMaterialization) {
  for (const auto &name : corpus_names()) {
    const auto theta = corpus(name);
    const auto fixed = corner_fixed(theta);
    const unsigned p = static_cast<unsigned>(fixing_power(theta));
    const std::size_t d = theta.dim();
    const auto seeds = fixed_seeds(*fixed).fixed();
    for (unsigned m = p; m <= 6; m += p) {
      const LatticeVec side = theta.size().pow(m);
      std::vector<Pattern> images;
      for (std::size_t a = 0; a < theta.symbols(); ++a)
        images.push_back(brute_power(theta, static_cast<Symbol>(a), m));
      // Large blocks: the first and last seed only.
      const std::size_t stride = side.product() > 4096 ? std::max<std::size_t>(1, seeds.size() - 1) : 1;
      for (std::size_t si = 0; si < seeds.size(); si += stride) {
        const Seed &seed = seeds[si];
        const AddressablePoint x(fixed, seed, LatticeVec(d));
        for (std::size_t j = 0; j < seed.corner_count(); ++j) {
          const LatticeVec lo = Seed::corner_vector(d, j).hadamard(side);
          const Pattern got = x.window(Rect::from_anchor(lo, side), kDefaultCellCap, 4);
          ASSERT_EQ(got.cells(), images[seed.corner(j)].cells())
              << name << " m=" << m << " corner=" << j;
        }
      }
    }
  }
}

TEST(Points, ShiftActsOnCoordinates) {
  const auto theta = corner_fixed(corpus("tm2d"));
  const Seed seed(2, {1, 0, 0, 1});
  const AddressablePoint x(theta, seed, {0, 0});
  const AddressablePoint y = shift_point(x, {3, -5});
  EXPECT_EQ(shift_point(x, {0, 0}), x);
  Rect({-6, -6}, {6, 6}).for_each([&](const LatticeVec &j) {
    EXPECT_EQ(y.symbol_at(j), x.symbol_at(j - LatticeVec{3, -5}));
  });
  EXPECT_EQ(x.window(Rect({3, 3}, {3, 3})).cells().front(), x.symbol_at({3, 3}));
}

TEST(Points, WindowIsThreadIndependent) {
  const AddressablePoint x(corner_fixed(corpus("tm3d")), Seed(3, {0, 1, 1, 0, 1, 0, 0, 1}),
                           {7, -2, 5});
  const Rect r({-9, -9, -9}, {8, 8, 8});
  EXPECT_EQ(x.window(r, kDefaultCellCap, 1), x.window(r, kDefaultCellCap, 4));
}

TEST(Odometer, Examples) {
  const auto theta = corner_fixed(corpus("tm1d"));
  const AddressablePoint x(theta, Seed(1, {1, 0}), {0});
  for (const auto &r : phi(x, 8).residues)
    EXPECT_EQ(r, LatticeVec{0});
  // Any substitution of size 2 whose seeds are all fixed.
  const auto tm = std::make_shared<const RectSubstitution>(corpus("degenerate"));
  const Seed fixed_seed = fixed_seeds(*tm).fixed().front();
  const AddressablePoint y(tm, fixed_seed, {3});
  EXPECT_EQ(phi(y, 3).residues, (std::vector<LatticeVec>{{1}, {3}, {3}}));
  const AddressablePoint z(tm, fixed_seed, {-1});
  EXPECT_EQ(phi(z, 3).residues, (std::vector<LatticeVec>{{1}, {3}, {7}}));
}

// Oracle for phi: iterated desubstitution reads the digits of the shift.
TEST(Odometer, AdditivityAndCoherence) {
  std::mt19937_64 rng(17);
  for (const auto &name : corpus_names()) {
    const auto theta = corner_fixed(corpus(name));
    const std::size_t d = theta->dim();
    const Seed seed = fixed_seeds(*theta).fixed().front();
    for (int trial = 0; trial < 100; ++trial) {
      LatticeVec v(d), k(d);
      for (std::size_t i = 0; i < d; ++i) {
        v[i] = static_cast<std::int64_t>(rng() % 2001) - 1000;
        k[i] = static_cast<std::int64_t>(rng() % 2001) - 1000;
      }
      const AddressablePoint x(theta, seed, v);
      const OdometerCoord c = phi(x, 8);
      ASSERT_TRUE(c.coherent());
      ASSERT_EQ(phi(shift_point(x, k), 8), c.plus(k));

      AddressablePoint cur = x;
      LatticeVec acc(d), scale(d, 1);
      for (unsigned m = 0; m < 8; ++m) {
        const Desubstitution ds = desubstitute_point(cur);
        acc += ds.offset.hadamard(scale);
        scale = scale.hadamard(theta->size());
        ASSERT_EQ(c.residues[m], acc);
        cur = ds.preimage;
      }
    }
  }
}

TEST(Odometer, BlockAtResidueIsASubstitutionImage) {
  const auto base = corpus("tm2d");
  const auto theta = corner_fixed(base);
  const AddressablePoint x(theta, Seed(2, {1, 0, 0, 1}), {37, -21});
  const OdometerCoord c = phi(x, 2);
  for (unsigned m = 1; m <= 2; ++m) {
    const LatticeVec side = theta->size().pow(m);
    const Pattern block = x.window(Rect::from_anchor(c.residues[m - 1], side));
    bool found = false;
    for (Symbol a = 0; a < 2; ++a)
      found = found || block.cells() == brute_power(base, a, 2 * m).cells();
    EXPECT_TRUE(found) << m;
  }
}

TEST(Desubstitution, Examples) {
  const auto tm = std::make_shared<const RectSubstitution>(corpus("degenerate"));
  const Seed seed = fixed_seeds(*tm).fixed().front();
  const AddressablePoint x(tm, seed, {5});
  const auto ds = desubstitute_point(x);
  EXPECT_EQ(ds.offset, LatticeVec{1});
  EXPECT_EQ(ds.preimage.shift(), LatticeVec{2});
  const AddressablePoint f(tm, seed, {0});
  EXPECT_EQ(desubstitute_point(f).preimage, f);
}

TEST(Desubstitution, ReconstructsWindow) {
  for (const char *name : {"tm1d", "tm2d", "cyc3", "tm2x3"}) {
    const auto theta = corner_fixed(corpus(name));
    const std::size_t d = theta->dim();
    const Seed seed = fixed_seeds(*theta).fixed().back();
    LatticeVec v(d);
    for (std::size_t i = 0; i < d; ++i)
      v[i] = static_cast<std::int64_t>(13 * i + 5);
    const AddressablePoint x(theta, seed, v);
    const auto ds = desubstitute_point(x);
    const Rect r(LatticeVec(d, -32), LatticeVec(d, 31));
    // x = sigma_{k1}(theta(y)): x_j = theta(y)_{j - k1}.
    const Rect wide(LatticeVec(d, -40).floor_div(theta->size()),
                    LatticeVec(d, 40).floor_div(theta->size()));
    const Pattern image = apply(*theta, ds.preimage.window(wide));
    r.for_each([&](const LatticeVec &j) { ASSERT_EQ(x.symbol_at(j), image.at(j - ds.offset)); });
  }
}

TEST(Desubstitution, PatternOffsets) {
  const auto tm = corpus("tm1d");
  const auto one = desubstitute_pattern(tm, Pattern({0}, {1}, Symbol{0}));
  EXPECT_EQ(one.size(), 2u);
  const Pattern img = tm.rule(1);
  const auto r = desubstitute_pattern(tm, img);
  ASSERT_FALSE(r.empty());
  EXPECT_EQ(r.front().offset, LatticeVec{0});
  std::vector<Symbol> cells;
  for (char c : std::string("0110100110010110"))
    cells.push_back(static_cast<Symbol>(c - '0'));
  const auto u = desubstitute_pattern(tm, Pattern({0}, {16}, cells));
  ASSERT_EQ(u.size(), 1u);
  EXPECT_EQ(u.front().offset, LatticeVec{0});
}

TEST(ContradictionPair, TwoDimensionalThueMorse) {
  const auto theta = corner_fixed(corpus("tm2d"));
  for (int a : {-1, 1})
    for (int b : {-1, 1}) {
      const auto pair = contradiction_pair(theta, {a, b});
      const Rect win({-64, -64}, {63, 63});
      const Pattern wx = pair.x.window(win), wy = pair.y.window(win);
      win.for_each([&](const LatticeVec &k) {
        if (pair.region.contains(k))
          ASSERT_NE(wx.at(k), wy.at(k)) << k;
        else
          ASSERT_EQ(wx.at(k), wy.at(k)) << k;
      });
    }
}

TEST(ContradictionPair, OtherDimensions) {
  const auto t1 = corner_fixed(corpus("tm1d"));
  const auto p1 = contradiction_pair(t1, {1});
  const auto m1 = compare_points(p1.x, p1.y, Rect({-64}, {63}),
                                 [](const LatticeVec &k) { return k[0] >= 0; });
  EXPECT_TRUE(m1.separates());
  const auto t3 = corner_fixed(corpus("tm3d"));
  const auto p3 = contradiction_pair(t3, {1, 1, 1});
  const auto m3 = compare_points(p3.x, p3.y, Rect({-16, -16, -16}, {15, 15, 15}),
                                 [&](const LatticeVec &k) { return p3.region.contains(k); });
  EXPECT_TRUE(m3.separates());
  EXPECT_EQ(m3.inside_differ, 16 * 16 * 16);
  EXPECT_THROW(contradiction_pair(corner_fixed(corpus("cyc3")), {1}), PreconditionError);
  const auto g = contradiction_pair_general(corner_fixed(corpus("cyc3")), {-1});
  const auto mg = compare_points(g.x, g.y, Rect({-50}, {50}),
                                 [&](const LatticeVec &k) { return g.region.contains(k); });
  EXPECT_TRUE(mg.separates());
}

TEST(FracturePair, AxisPairsSeparateHalfSpaces) {
  const auto theta = corner_fixed(corpus("tm2d"));
  for (std::size_t axis = 0; axis < 2; ++axis) {
    const auto pair = half_space_fracture_pair(theta, axis);
    const auto m = compare_points(pair.x, pair.y, Rect({-64, -64}, {63, 63}),
                                  [&](const LatticeVec &k) { return k[axis] < 0; });
    EXPECT_TRUE(m.separates());
    EXPECT_EQ(m.inside_differ, 64 * 128);
  }
  const auto t1 = corner_fixed(corpus("tm1d"));
  const auto p1 = half_space_fracture_pair(t1, 0);
  for (std::int64_t k = -50; k <= 50; ++k)
    EXPECT_EQ(p1.x.symbol_at({k}) == p1.y.symbol_at({k}), k >= 0);
  EXPECT_THROW(half_space_fracture_pair(corner_fixed(corpus("degenerate")), 0), PreconditionError);
}
