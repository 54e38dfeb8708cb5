#include <gtest/gtest.h>

#include <cmath>
#include <deque>

#include "tilt/error.hpp"
#include "tilt/phantoms.hpp"

using namespace tilt;

namespace {

// Number of 8-connected components of the boundary pixels (object pixels
// with a 4-neighbour outside the object).
int boundary_components(const Image& img) {
  const int n = img.rows;
  auto in = [&](int r, int c) { return r >= 0 && c >= 0 && r < n && c < n && img(r, c) > 0.5; };
  std::vector<char> edge(size_t(n) * n, 0), seen(size_t(n) * n, 0);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      edge[size_t(r) * n + c] = in(r, c) && (!in(r - 1, c) || !in(r + 1, c) || !in(r, c - 1) || !in(r, c + 1));
  int count = 0;
  for (int i = 0; i < n * n; ++i) {
    if (!edge[size_t(i)] || seen[size_t(i)]) continue;
    ++count;
    std::deque<int> q{i};
    seen[size_t(i)] = 1;
    while (!q.empty()) {
      int r = q.front() / n, c = q.front() % n;
      q.pop_front();
      for (int dr = -1; dr <= 1; ++dr)
        for (int dc = -1; dc <= 1; ++dc) {
          int rr = r + dr, cc = c + dc;
          if (rr < 0 || cc < 0 || rr >= n || cc >= n) continue;
          size_t j = size_t(rr) * n + cc;
          if (edge[j] && !seen[j]) seen[j] = 1, q.push_back(int(j));
        }
    }
  }
  return count;
}

double mass(const Image& img) {
  double s = 0;
  for (double v : img.data) s += v;
  return s;
}

}  // namespace

TEST(Phantom, AnnulusArea) {
  PhantomSpec s = fixture("annulus", 256);
  double want = M_PI * (s.r_out * s.r_out - s.r_in * s.r_in) * 256 * 256;
  EXPECT_NEAR(mass(make_phantom(s)), want, 0.02 * want);
}

TEST(Phantom, AnnulusHasTwoBoundaries) { EXPECT_EQ(boundary_components(make_phantom(fixture("annulus", 256))), 2); }

TEST(Phantom, EllipsesHaveFourBoundaries) {
  EXPECT_EQ(boundary_components(make_phantom(fixture("ellipses", 256))), 4);
}

TEST(Phantom, BlobAndHighCurvatureHaveOneBoundary) {
  EXPECT_EQ(boundary_components(make_phantom(fixture("blob", 256))), 1);
  EXPECT_EQ(boundary_components(make_phantom(fixture("highcurv", 256))), 1);
}

TEST(Phantom, EmptyEllipseGroupIsZero) {
  PhantomSpec s;
  s.kind = PhantomKind::ellipse_group;
  s.size = 32;
  EXPECT_EQ(mass(make_phantom(s)), 0.0);
}

TEST(Phantom, HighCurvatureHasTightBend) {
  // Smallest radius of curvature along the boundary, in pixels at 256².
  Polyline c = phantom_curve(fixture("highcurv", 256));
  double smallest = 1e9;
  const size_t m = c.size();
  for (size_t i = 0; i < m; ++i) {
    Point2 a = c[(i + m - 3) % m], b = c[i], d = c[(i + 3) % m];
    double ab = std::hypot(b.x - a.x, b.y - a.y), bd = std::hypot(d.x - b.x, d.y - b.y), ad = std::hypot(d.x - a.x, d.y - a.y);
    double cross = std::abs((b.x - a.x) * (d.y - a.y) - (b.y - a.y) * (d.x - a.x));
    if (cross > 1e-15) smallest = std::min(smallest, ab * bd * ad / (2 * cross));
  }
  EXPECT_LT(smallest * 256, 5.0);
}

TEST(Phantom, ValidationErrors) {
  EXPECT_THROW(fixture("nope", 64), Error);
  try {
    fixture("nope", 64);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::config);
  }
  PhantomSpec s;
  s.kind = PhantomKind::ellipse_group;
  s.ellipses = {{0.5, 0.5, 0.2, 0.1, 0}, {0.55, 0.5, 0.2, 0.1, 0}};
  EXPECT_THROW(validate(s), Error);
  s.ellipses = {{0.1, 0.5, 0.2, 0.1, 0}};
  EXPECT_THROW(validate(s), Error);
}
