#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "tilt/error.hpp"
#include "tilt/morphology.hpp"

using namespace tilt;

namespace {

BinaryGrid origin() {
  BinaryGrid s(1, 1, 0, 0);
  s.set(0, 0);
  return s;
}

BinaryGrid block(int n, int r0, int c0, int k) {
  BinaryGrid g(n, n);
  for (int r = r0; r < r0 + k; ++r)
    for (int c = c0; c < c0 + k; ++c) g.set(r, c);
  return g;
}

// Random structuring element inside a 3×3 window with its anchor set.
BinaryGrid random_element(std::mt19937_64& rng) {
  BinaryGrid s = oracle::random_grid(rng, 3, 3, 0.5);
  s.set_anchor(1, 1);
  s.set(1, 1);
  return s;
}

// Reference erosion straight from the definition, outside counts as 0.
BinaryGrid erode_ref(const BinaryGrid& d, const BinaryGrid& s) {
  BinaryGrid out(d.rows(), d.cols());
  auto offs = s.offsets();
  for (int r = 0; r < d.rows(); ++r)
    for (int c = 0; c < d.cols(); ++c) {
      bool all = true;
      for (auto o : offs) all = all && d.get_or_zero(r + o.dr, c + o.dc);
      out.set(r, c, all);
    }
  return out;
}

}  // namespace

TEST(Erode, BlockShrinksToCentre) {
  BinaryGrid e = erode(block(7, 2, 2, 3), solid(3));
  EXPECT_EQ(e.count(), 1u);
  EXPECT_TRUE(e.get(3, 3));
}

TEST(Erode, OriginIsIdentity) {
  std::mt19937_64 rng(1);
  BinaryGrid d = oracle::random_grid(rng, 16, 16, 0.5);
  EXPECT_EQ(erode(d, origin()), d);
  EXPECT_EQ(dilate(d, origin()), d);
}

TEST(Erode, MatchesDefinitionOnRandomInputs) {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 50; ++i) {
    BinaryGrid d = oracle::random_grid(rng, 16, 16, 0.6), s = random_element(rng);
    EXPECT_EQ(erode(d, s), erode_ref(d, s));
  }
}

TEST(Erode, DualOfDilationInsideFrame) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 50; ++i) {
    BinaryGrid d = oracle::random_grid(rng, 16, 16, 0.6), s = random_element(rng);
    BinaryGrid lhs = erode(d, s), rhs = complement(dilate(complement(d), reflect(s)));
    // Pixels whose window reaches outside the frame see a 0 in both D and its
    // complement, so the identity is checked where the window fits.
    for (int r = 1; r < 15; ++r)
      for (int c = 1; c < 15; ++c) ASSERT_EQ(lhs.get(r, c), rhs.get(r, c)) << i << " " << r << "," << c;
  }
}

TEST(Dilate, PixelGrowsToBlock) {
  BinaryGrid d(7, 7);
  d.set(3, 3);
  EXPECT_EQ(dilate(d, solid(3)), block(7, 2, 2, 3));
}

TEST(Dilate, EmptyElementGivesEmpty) {
  BinaryGrid d = block(5, 1, 1, 2);
  EXPECT_TRUE(dilate(d, BinaryGrid(3, 3, 1, 1)).empty());
}

TEST(Dilate, CommutesWithTranslation) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 20; ++i) {
    BinaryGrid d(16, 16);
    BinaryGrid inner = oracle::random_grid(rng, 8, 8, 0.4);
    for (int r = 0; r < 8; ++r)
      for (int c = 0; c < 8; ++c) d.set(r + 3, c + 3, inner.get(r, c));
    BinaryGrid shifted(16, 16);
    for (int r = 0; r < 8; ++r)
      for (int c = 0; c < 8; ++c) shifted.set(r + 5, c + 4, inner.get(r, c));
    BinaryGrid s = random_element(rng);
    BinaryGrid a = dilate(d, s), b = dilate(shifted, s);
    for (int r = 0; r < 14; ++r)
      for (int c = 0; c < 15; ++c) ASSERT_EQ(a.get(r, c), b.get(r + 2, c + 1));
  }
}

TEST(Open, IsolatedPixelRemovedByLine) {
  BinaryGrid d(16, 16);
  d.set(8, 8);
  for (auto dir : kAllDirections) EXPECT_TRUE(open(d, make_line(dir, 9)).empty());
}

TEST(Open, IdempotentAndAntiExtensive) {
  std::mt19937_64 rng(6);
  for (int i = 0; i < 50; ++i) {
    BinaryGrid d = oracle::random_grid(rng, 16, 16, 0.65), s = random_element(rng);
    BinaryGrid o = open(d, s);
    EXPECT_EQ(open(o, s), o);
    EXPECT_TRUE((o - d).empty());
  }
}

TEST(Skeleton, BlockGivesCentre) {
  BinaryGrid sk = skeletonize(block(7, 2, 2, 3), solid(3));
  EXPECT_EQ(sk.count(), 1u);
  EXPECT_TRUE(sk.get(3, 3));
}

TEST(Skeleton, EmptyStaysEmpty) { EXPECT_TRUE(skeletonize(BinaryGrid(8, 8), solid(3)).empty()); }

TEST(Skeleton, ThinLineIsItsOwnSkeleton) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 16; ++i) {
    BinaryGrid d(16, 16);
    int r0 = int(rng() % 16), len = 3 + int(rng() % 10), c0 = int(rng() % 4);
    for (int c = c0; c < c0 + len; ++c) d.set(r0, c);
    // n = 0 term: D minus its opening, and the opening of a 1-px line is empty.
    EXPECT_TRUE(open(d, solid(3)).empty());
    EXPECT_EQ(skeletonize(d, solid(3)), d);
  }
}

TEST(Skeleton, StackIsLayerwise) {
  VoxelStack m(2, 9, 9);
  m.set_layer(0, block(9, 3, 3, 3));
  VoxelStack sk = skeletonize_stack(m);
  EXPECT_EQ(sk.count(), 1u);
  EXPECT_TRUE(sk.get(0, 4, 4));

  std::mt19937_64 rng(8);
  BinaryGrid g = oracle::random_grid(rng, 16, 16, 0.7);
  VoxelStack one(1, 16, 16);
  one.set_layer(0, g);
  EXPECT_EQ(skeletonize_stack(one).layer(0), skeletonize(g, solid(3)));
  EXPECT_TRUE(skeletonize_stack(VoxelStack(2, 5, 5)).empty());
}

TEST(Thin, KeepsBarConnectedAndThin) {
  BinaryGrid d(12, 20);
  for (int r = 4; r < 8; ++r)
    for (int c = 2; c < 18; ++c) d.set(r, c);
  BinaryGrid t = thin(d);
  EXPECT_FALSE(t.empty());
  EXPECT_TRUE((t - d).empty());
  for (int c = 0; c < 20; ++c) {
    int n = 0;
    for (int r = 0; r < 12; ++r) n += t.get(r, c);
    EXPECT_LE(n, 2);
  }
}

TEST(Line, HasRequestedLength) {
  for (auto dir : kAllDirections)
    for (int l : {3, 5, 9, 15}) EXPECT_EQ(make_line(dir, l).count(), size_t(l));
  EXPECT_THROW(make_line(SubbandDirection::HL, 1), Error);
  EXPECT_THROW(make_line(SubbandDirection::HL, 4), Error);
}

TEST(Line, ShortHlLineFollowsBresenham) {
  // Edge tangent of HL: 15° + 90° = 105°, direction (cos, sin) = (-0.259, 0.966).
  BinaryGrid g = make_line(SubbandDirection::HL, 3);
  std::set<std::pair<int, int>> got, want;
  for (auto o : g.offsets()) got.insert({o.dr, o.dc});
  const double t = 105 * M_PI / 180;
  for (int k = -1; k <= 1; ++k) want.insert({k, int(std::lround(k * std::cos(t) / std::sin(t)))});
  EXPECT_EQ(got, want);
}

TEST(Line, BarDirectionMirrorsLeftRight) {
  for (auto [d, bar] : {std::pair{SubbandDirection::HL, SubbandDirection::HLbar},
                        std::pair{SubbandDirection::HH, SubbandDirection::HHbar},
                        std::pair{SubbandDirection::LH, SubbandDirection::LHbar}}) {
    std::set<std::pair<int, int>> a, b;
    for (auto o : make_line(d, 9).offsets()) a.insert({o.dr, -o.dc});
    for (auto o : make_line(bar, 9).offsets()) b.insert({o.dr, o.dc});
    EXPECT_EQ(a, b);
  }
}
