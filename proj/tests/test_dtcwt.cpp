#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "tilt/dtcwt.hpp"
#include "tilt/phantoms.hpp"

using namespace tilt;

namespace {

Image random_image(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> g;
  Image img(n, n);
  for (auto& v : img.data) v = g(rng);
  return img;
}

double rel_err(const Image& a, const Image& b) {
  double num = 0, den = 0;
  for (size_t i = 0; i < a.size(); ++i) num += (a.data[i] - b.data[i]) * (a.data[i] - b.data[i]), den += b.data[i] * b.data[i];
  return std::sqrt(num / den);
}

}  // namespace

TEST(Dtcwt, DirectionTableIsConsistent) {
  for (auto d : kAllDirections) {
    const auto& info = direction_info(d);
    EXPECT_EQ(direction_from_label(info.label), d);
    EXPECT_DOUBLE_EQ(info.interval_hi - info.interval_lo, 30.0);
  }
}

TEST(Dtcwt, RoundTripOnRandomImages) {
  std::mt19937_64 rng(21);
  for (int levels : {1, 3, 5}) {
    Image x = random_image(rng, 128);
    EXPECT_LT(rel_err(dtcwt_inverse(dtcwt_forward(x, levels)), x), 1e-6) << levels;
  }
}

TEST(Dtcwt, ConstantImageHasNoDetail) {
  Image x(64, 64);
  for (auto& v : x.data) v = 3.5;
  auto p = dtcwt_forward(x, 4);
  for (int j = 1; j <= 4; ++j)
    for (auto d : kAllDirections)
      for (auto c : p.at(j, d).data) ASSERT_LE(std::abs(c), 1e-8 * 3.5);
}

TEST(Dtcwt, ZeroPyramidInvertsToZero) {
  auto p = dtcwt_forward(Image(32, 32), 3);
  for (double v : dtcwt_inverse(p).data) EXPECT_EQ(v, 0.0);
}

TEST(Dtcwt, InverseIsLinear) {
  std::mt19937_64 rng(22);
  auto p = dtcwt_forward(random_image(rng, 64), 3), q = dtcwt_forward(random_image(rng, 64), 3);
  auto sum = p;
  for (int j = 1; j <= 3; ++j)
    for (auto d : kAllDirections)
      for (size_t i = 0; i < sum.at(j, d).data.size(); ++i) sum.at(j, d).data[i] += q.at(j, d).data[i];
  for (size_t i = 0; i < sum.lowpass.size(); ++i) sum.lowpass.data[i] += q.lowpass.data[i];
  Image a = dtcwt_inverse(sum), b = dtcwt_inverse(p), c = dtcwt_inverse(q);
  for (size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a.data[i], b.data[i] + c.data[i], 1e-9);
}

TEST(Dtcwt, EdgeNormalInsideHlIntervalSelectsHl) {
  // Normals strictly inside [0°, 30°] at a desk-scale level.
  for (double phi : {5.0, 10.0, 15.0, 20.0, 25.0}) {
    auto p = dtcwt_forward(oracle::edge_image(128, phi), 2);
    double best = -1;
    SubbandDirection arg = SubbandDirection::LH;
    for (auto d : kAllDirections) {
      const auto& g = p.at(2, d);
      double e = 0;
      for (int r = g.rows / 4; r < 3 * g.rows / 4; ++r)
        for (int c = g.cols / 4; c < 3 * g.cols / 4; ++c) e += std::norm(g(r, c));
      if (e > best) best = e, arg = d;
    }
    EXPECT_EQ(arg, SubbandDirection::HL) << phi;
  }
}

TEST(Dtcwt, EllipseBoundaryRespondsInHl) {
  // A point on the ellipse boundary whose normal lies in (0°, 30°): the
  // largest detail magnitude there belongs to HL.
  PhantomSpec spec;
  spec.kind = PhantomKind::ellipse_group;
  spec.size = 256;
  spec.ellipses = {{0.5, 0.5, 0.3, 0.2, 0.0}};
  Image img = make_phantom(spec);
  auto p = dtcwt_forward(img, 1);
  // Boundary point with normal angle 15°: for x = a cos t, y = b sin t the
  // normal is (b cos t, a sin t).
  const double a = 0.3, b = 0.2, nrm = 15 * M_PI / 180;
  double t = std::atan2(b * std::tan(nrm), a);
  double x = 0.5 + a * std::cos(t), y = 0.5 + b * std::sin(t);
  int r = int(y * 128), c = int(x * 128);
  double best = -1;
  SubbandDirection arg = SubbandDirection::LH;
  for (auto d : kAllDirections) {
    double m = 0;
    for (int dr = -1; dr <= 1; ++dr)
      for (int dc = -1; dc <= 1; ++dc) m = std::max(m, std::abs(p.at(1, d)(r + dr, c + dc)));
    if (m > best) best = m, arg = d;
  }
  EXPECT_EQ(arg, SubbandDirection::HL);
}

TEST(Normalize, SingleEntryAndZero) {
  auto p = dtcwt_forward(Image(16, 16), 1);
  Image z = normalize_subband(p, SubbandDirection::HL, 1);
  for (double v : z.data) EXPECT_EQ(v, 0.0);
  p.at(1, SubbandDirection::HL)(3, 2) = {0.0, -2.5};
  Image one = normalize_subband(p, SubbandDirection::HL, 1);
  for (int r = 0; r < one.rows; ++r)
    for (int c = 0; c < one.cols; ++c) EXPECT_EQ(one(r, c), (r == 3 && c == 2) ? 1.0 : 0.0);
}

TEST(Normalize, MaximumIsOne) {
  std::mt19937_64 rng(23);
  auto p = dtcwt_forward(random_image(rng, 64), 2);
  Image n = normalize_subband(p, SubbandDirection::HH, 2);
  EXPECT_EQ(*std::max_element(n.data.begin(), n.data.end()), 1.0);
}

TEST(Threshold, InclusiveBoundary) {
  Image g(1, 3);
  g.data = {0.05, 0.1, 0.2};
  BinaryGrid t = threshold_subband(g, 0.1);
  EXPECT_FALSE(t.get(0, 0));
  EXPECT_TRUE(t.get(0, 1));
  EXPECT_TRUE(t.get(0, 2));
  EXPECT_EQ(threshold_subband(g, 0.0).count(), 3u);
  EXPECT_TRUE(threshold_subband(g, 1.5).empty());
}
