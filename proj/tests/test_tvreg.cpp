#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "tilt/projection.hpp"
#include "tilt/tvreg.hpp"

using namespace tilt;

TEST(Tv, ZeroDataGivesZeroImage) {
  auto g = make_geometry(16, angle_range(-30, 30, 9), 1.0);
  Sinogram s;
  s.geometry = g;
  s.data.assign(g.views() * size_t(g.detector_count), 0.0);
  TvConfig cfg;
  cfg.iterations = 50;
  for (double v : reconstruct_tv(s, g, cfg).image.data) EXPECT_EQ(v, 0.0);
}

TEST(Tv, TotalVariationOfStep) {
  Image f(4, 4);
  for (int r = 0; r < 4; ++r) f(r, 2) = f(r, 3) = 1.0;
  EXPECT_DOUBLE_EQ(total_variation(f), 4.0);
}

TEST(Tv, FullAngleDiscIsRecovered) {
  const int n = 64;
  auto g = make_geometry(n, angle_range(0, 178, 90), 1.0 / 8);
  Image disc = oracle::disc_image(n, 20);
  Sinogram s = forward_project(disc, g);
  TvConfig cfg;
  cfg.alpha = 0.1;
  cfg.iterations = 500;
  Image f = reconstruct_tv(s, g, cfg).image;
  double num = 0, den = 0;
  for (size_t i = 0; i < f.size(); ++i) num += std::pow(f.data[i] - disc.data[i], 2), den += disc.data[i] * disc.data[i];
  EXPECT_LE(std::sqrt(num / den), 0.05);
}

TEST(Tv, BestObjectiveNeverIncreases) {
  const int n = 32;
  auto g = make_geometry(n, angle_range(-30, 30, 31), 1.0 / 4);
  Sinogram s = add_noise(forward_project(oracle::disc_image(n, 9), g), 0.03, 3);
  TvConfig cfg;
  cfg.iterations = 400;
  cfg.checkpoint_every = 20;
  auto res = reconstruct_tv(s, g, cfg);
  ASSERT_GE(res.checkpoints.size(), 2u);
  for (size_t i = 1; i < res.checkpoints.size(); ++i) EXPECT_LE(res.checkpoints[i].best, res.checkpoints[i - 1].best);
  EXPECT_NEAR(tv_objective(res.image, s, g, cfg.alpha), res.checkpoints.back().best, 1e-9 * res.checkpoints.back().best);
}

TEST(Tv, Deterministic) {
  const int n = 32;
  auto g = make_geometry(n, angle_range(-30, 30, 15), 1.0 / 4);
  Sinogram s = forward_project(oracle::disc_image(n, 9), g);
  TvConfig cfg;
  cfg.iterations = 60;
  EXPECT_EQ(reconstruct_tv(s, g, cfg).image.data, reconstruct_tv(s, g, cfg).image.data);
}

TEST(OperatorNorm, SinglePixelSingleRay) {
  for (double ps : {1.0, 2.0, 0.25}) {
    ScanGeometry g = make_geometry(1, {0}, ps);
    g.detector_count = 3;  // only the middle ray meets the pixel
    EXPECT_NEAR(estimate_operator_norm(g, 0.0), ps, 1e-6 * ps);
  }
}

TEST(OperatorNorm, ScalesWithLengths) {
  auto g1 = make_geometry(16, angle_range(-30, 30, 7), 1.0);
  auto g2 = make_geometry(16, angle_range(-30, 30, 7), 2.0);
  double a = estimate_operator_norm(g1, 0.0), b = estimate_operator_norm(g2, 0.0);
  EXPECT_NEAR(b, 2 * a, 1e-6 * b);
  EXPECT_EQ(estimate_operator_norm(g1, 0.0), a);
}
