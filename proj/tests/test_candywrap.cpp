#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "tilt/candywrap.hpp"

using namespace tilt;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<std::pair<int, int>> offsets_of(const BinaryGrid& g) {
  std::vector<std::pair<int, int>> v;
  for (auto o : g.offsets()) v.emplace_back(o.dr, o.dc);
  return v;
}

bool has_offset(const BinaryGrid& g, int dr, int dc) {
  int r = g.anchor_row() + dr, c = g.anchor_col() + dc;
  return g.get_or_zero(r, c);
}

}  // namespace

TEST(CandywrapDistance, StraightSegmentIsItsLength) { EXPECT_DOUBLE_EQ(cw_distance_canonical(1, 0, 0), 1.0); }

TEST(CandywrapDistance, ParabolaMatchesQuadrature) {
  double want = oracle::cubic_energy(1, 1, std::atan(2.0));
  EXPECT_NEAR(want, 4 + std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(cw_distance_canonical(1, 1, std::atan(2.0)), want, 1e-12);
}

TEST(CandywrapDistance, InfiniteBranches) {
  const double inf = std::numeric_limits<double>::infinity();
  EXPECT_EQ(cw_distance_canonical(0, 1, 0), inf);
  EXPECT_EQ(cw_distance_canonical(1, 0, kPi / 2 + 1e-9), inf);
  EXPECT_GT(cw_distance_canonical(1, 0, kPi / 2), 1e30);
  EXPECT_EQ(cw_distance_canonical(1, 0, kPi), inf);
  EXPECT_EQ(cw_distance_canonical(0, 0, 0), 0.0);
}

TEST(CandywrapDistance, NegativeXMirrors) {
  EXPECT_DOUBLE_EQ(cw_distance_canonical(-1.3, 0.4, 0.2), cw_distance_canonical(1.3, -0.4, 0.2));
}

TEST(CandywrapDistance, ClosedFormMatchesQuadratureOnRandomInputs) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> ux(0.05, 5), uy(-5, 5), ut(-1.5, 1.5);
  for (int i = 0; i < 1000; ++i) {
    double x = ux(rng), y = uy(rng), t = ut(rng);
    double want = oracle::cubic_energy(x, y, t);
    EXPECT_NEAR(cw_distance_canonical(x, y, t), want, 1e-8 * want);
  }
}

TEST(CandywrapDistance, BoundedBelowByEuclideanDistance) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> ux(-5, 5), ut(-1.55, 1.55);
  int violations = 0;
  for (int i = 0; i < 10000; ++i) {
    double x = ux(rng), y = ux(rng), t = ut(rng);
    if (x == 0) continue;
    violations += cw_distance_canonical(x, y, t) < std::hypot(x, y);
  }
  EXPECT_EQ(violations, 0);
}

TEST(CandywrapDistance, ShiftInvariant) {
  PointedDirection p{0.3, -0.2, 0.1}, q{-0.5, 0.4, -0.3};
  PointedDirection p2{p.x + 2.5, p.y - 1.25, p.theta}, q2{q.x + 2.5, q.y - 1.25, q.theta};
  EXPECT_NEAR(cw_distance(p, q), cw_distance(p2, q2), 1e-12);
}

TEST(CandywrapDistance, RotationEquivariant) {
  PointedDirection p{1.2, 0.7, 0.3}, q{-0.4, 0.1, -0.2};
  double base = cw_distance(p, q);
  for (double phi : {0.4, 1.1, -2.0}) {
    auto rot = [phi](PointedDirection d) {
      return PointedDirection{std::cos(phi) * d.x - std::sin(phi) * d.y, std::sin(phi) * d.x + std::cos(phi) * d.y,
                              d.theta + phi};
    };
    EXPECT_NEAR(cw_distance(rot(p), rot(q)), base, 1e-9);
  }
}

TEST(CandywrapDistance, NotSymmetric) {
  PointedDirection o{0, 0, 0}, p{1, 1, std::atan(2.0)};
  double forward = cw_distance(p, o), backward = cw_distance(o, p);
  EXPECT_NEAR(forward, 4 + std::sqrt(2.0), 1e-12);
  EXPECT_GT(std::abs(forward - backward), 1e-3);
}

TEST(CandywrapMask, TinyDistanceGivesEmptyMask) {
  for (auto k : {MaskKind::PlusR, MaskKind::PlusL, MaskKind::MinusR, MaskKind::MinusL})
    EXPECT_TRUE(basic_mask(k, 0.1, 64).grid.empty());
}

TEST(CandywrapMask, EuclideanBoundExcludesFarPoint) {
  // The cells holding (±2, 0) at N = 64 have centres at |x| = 1.875 > s.
  const int n = 64;
  const double h = 20.0 / n;
  for (auto k : {MaskKind::PlusR, MaskKind::PlusL, MaskKind::MinusR, MaskKind::MinusL}) {
    BinaryGrid g = basic_mask(k, 1.0, n).grid;
    for (double x : {2.0, -2.0}) {
      int dc = int(std::lround(x / h));
      EXPECT_FALSE(has_offset(g, 0, dc)) << mask_kind_name(k);
    }
  }
}

TEST(CandywrapMask, PlusRContainsKnownCell) {
  const int n = 64;
  const double h = 20.0 / n;
  EXPECT_NEAR(cw_distance_canonical(1, std::tan(kPi / 6) / 2, kPi / 6), 1.374, 1e-3);
  BinaryGrid g = basic_mask(MaskKind::PlusR, 2.0, n).grid;
  EXPECT_TRUE(has_offset(g, int(std::lround(std::tan(kPi / 6) / 2 / h)), int(std::lround(1 / h))));
}

TEST(CandywrapMask, NestedInDistance) {
  for (auto k : {MaskKind::PlusR, MaskKind::PlusL, MaskKind::MinusR, MaskKind::MinusL}) {
    BinaryGrid prev = basic_mask(k, 0.5, 64).grid;
    for (double s = 1.0; s <= 8.0; s += 0.5) {
      BinaryGrid cur = basic_mask(k, s, 64).grid;
      EXPECT_TRUE((prev - cur).empty()) << mask_kind_name(k) << " s=" << s;
      prev = cur;
    }
  }
}

TEST(CandywrapMask, RotationByZeroAndFullTurnIsIdentity) {
  CandywrapMask m = basic_mask(MaskKind::PlusL, 4.0, 64);
  EXPECT_EQ(offsets_of(rotate_mask(m, 0)), offsets_of(m.grid));
  EXPECT_EQ(offsets_of(rotate_mask(m, 2 * kPi)), offsets_of(m.grid));
}

TEST(CandywrapMask, HalfTurnOfPlusRIsReflectedMinusL) {
  BinaryGrid a = rotate_mask(basic_mask(MaskKind::PlusR, 4.0, 64), kPi);
  BinaryGrid ml = basic_mask(MaskKind::MinusL, 4.0, 64).grid;
  std::vector<std::pair<int, int>> b;
  for (auto o : ml.offsets()) b.emplace_back(-o.dr, o.dc);
  auto far = [](const std::vector<std::pair<int, int>>& from, const std::vector<std::pair<int, int>>& to) {
    double worst = 0;
    for (auto [r, c] : from) {
      double best = 1e9;
      for (auto [r2, c2] : to) best = std::min(best, std::hypot(r - r2, c - c2));
      worst = std::max(worst, best);
    }
    return worst;
  };
  auto av = offsets_of(a);
  ASSERT_FALSE(av.empty());
  EXPECT_LE(far(av, b), 1.0);
  EXPECT_LE(far(b, av), 1.0);
}
