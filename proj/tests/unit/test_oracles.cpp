#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "xdefect/oracles/geometry.hpp"
#include "xdefect/oracles/numeric.hpp"
#include "xdefect/oracles/raster.hpp"
#include "xdefect/oracles/suites.hpp"

using namespace xdefect;

TEST(Oracles, PixelIou) {
  EXPECT_DOUBLE_EQ(oracles::pixel_iou({0, 0, 10, 10}, {5, 5, 15, 15}), 25.0 / 175.0);
  EXPECT_EQ(oracles::pixel_iou({0, 0, 2, 2}, {2, 2, 4, 4}), 0.0);
  EXPECT_DOUBLE_EQ(oracles::direct_iou({0, 0, 10, 10}, {5, 0, 15, 10}), 1.0 / 3.0);
}

TEST(Oracles, BruteNms) {
  const std::vector<ScoredBox> d{{{0, 0, 10, 10}, 0.5}, {{1, 1, 10, 10}, 0.9}, {{50, 50, 60, 60}, 0.1}};
  EXPECT_EQ(oracles::brute_nms(d, 0.5), (std::vector<std::size_t>{1, 2}));
}

TEST(Oracles, BruteAp) {
  EXPECT_DOUBLE_EQ(oracles::brute_average_precision({false, true}, 1), 0.5);
  EXPECT_DOUBLE_EQ(oracles::brute_average_precision({true, true, false}, 4), 0.5);
  EXPECT_THROW(oracles::brute_average_precision({true}, 0), std::exception);
}

TEST(Oracles, CentralDifferenceOfCubic) {
  const std::vector<double> x{0.3, -1.2};
  const auto g = oracles::central_difference(
      [](std::span<const double> v) { return v[0] * v[0] * v[0] + 2 * v[1]; }, x);
  EXPECT_NEAR(g[0], 0.27, 1e-9);
  EXPECT_NEAR(g[1], 2.0, 1e-9);
}

TEST(Oracles, RelativeError) {
  EXPECT_EQ(oracles::relative_error(0.0, 0.0), 0.0);
  EXPECT_NEAR(oracles::relative_error(1.0, 1.1), 0.1 / 1.1, 1e-15);
}

TEST(Oracles, FloodFill) {
  BinaryMask m(5, 3);
  m.set(0, 0);
  m.set(1, 1);
  m.set(4, 2);
  const auto f = oracles::flood_fill(m);
  ASSERT_EQ(f.count(), 2u);
  EXPECT_EQ(f.boxes[0], (Box{0, 0, 2, 2}));
  EXPECT_EQ(f.pixel_counts[1], 1u);
  EXPECT_EQ(f.label(2, 2), -1);
}

TEST(Oracles, SampledGaussian) {
  const auto k = oracles::sampled_gaussian(1.0);
  EXPECT_EQ(k.size(), 7u);
  EXPECT_NEAR(std::accumulate(k.begin(), k.end(), 0.0), 1.0, 1e-15);
  EXPECT_DOUBLE_EQ(k[2], k[4]);
}

TEST(Oracles, MonteCarloOnConstantMap) {
  const FeatureMap fm(6, 6, 1, 1.0, 3.5);
  for (double v : oracles::monte_carlo_roi_align(fm, {1, 1, 4, 4}, 2, 2, 64, 1)) EXPECT_NEAR(v, 3.5, 1e-12);
}

TEST(Oracles, GradientCheckerDetectsPerturbedSlope) {
  oracles::SuiteOptions opt;
  EXPECT_TRUE(oracles::smooth_l1_gradient_suite(opt, 20).passed);
  opt.smooth_l1_slope_perturbation = 0.01;
  EXPECT_FALSE(oracles::smooth_l1_gradient_suite(opt, 20).passed);
}
