#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "xdefect/errors.hpp"
#include "xdefect/losses.hpp"

using namespace xdefect;

TEST(SmoothL1, Branches) {
  EXPECT_EQ(smooth_l1(0.0).value, 0.0);
  EXPECT_EQ(smooth_l1(0.5).value, 0.125);
  EXPECT_EQ(smooth_l1(0.5).derivative, 0.5);
  EXPECT_EQ(smooth_l1(2.0).value, 1.5);
  EXPECT_EQ(smooth_l1(-2.0).derivative, -1.0);
  EXPECT_EQ(smooth_l1(1.0).value, 0.5);
}

TEST(LocationLoss, Value) {
  const std::vector<double> pred{0, 0, 0, 0}, target{0.5, 0.0, 2.0, 0.0};
  const LossValue l = location_loss(pred, target, 1);
  EXPECT_DOUBLE_EQ(l.value, 1.625);
  ASSERT_EQ(l.gradient.size(), 4u);
  EXPECT_DOUBLE_EQ(l.gradient[0], -0.5);
  EXPECT_DOUBLE_EQ(l.gradient[2], -1.0);
}

TEST(LocationLoss, GatedByNegativeLabel) {
  const std::vector<double> pred{1, 2, 3, 4}, target{-4, 3, 0, 9};
  const LossValue l = location_loss(pred, target, 0);
  EXPECT_EQ(l.value, 0.0);
  for (double g : l.gradient) EXPECT_EQ(g, 0.0);
}

TEST(LocationLoss, WrongLengthThrows) {
  const std::vector<double> three{0, 0, 0}, four{0, 0, 0, 0};
  EXPECT_THROW(location_loss(three, four, 1), ContractError);
}

TEST(ClassificationLoss, HalfProbabilityIsLn2) {
  EXPECT_DOUBLE_EQ(classification_loss(0.5, 1).value, std::log(2.0));
  EXPECT_DOUBLE_EQ(classification_loss(0.5, 0).value, std::log(2.0));
}

TEST(ClassificationLoss, ConfidentAndCorrectIsNearZero) {
  EXPECT_LT(classification_loss(1.0 - 1e-9, 1).value, 1e-8);
  EXPECT_LT(classification_loss(1e-9, 0).value, 1e-8);
}

TEST(ClassificationLoss, ClampedAtExtremes) {
  const LossValue l = classification_loss(0.0, 1);
  EXPECT_TRUE(std::isfinite(l.value));
  EXPECT_NEAR(l.value, -std::log(kProbabilityEpsilon), 1e-9);
  EXPECT_TRUE(std::isfinite(l.gradient[0]));
}

TEST(TotalLoss, WeightedSum) {
  const std::vector<double> pred{0, 0, 0, 0}, target{0.5, 0.0, 2.0, 0.0};
  const LossValue loc = location_loss(pred, target, 1);
  const LossValue cls = classification_loss(0.5, 1);
  const LossValue t = total_loss(loc, cls);
  EXPECT_NEAR(t.value, 1.625 + std::log(2.0), 1e-12);
  EXPECT_NEAR(t.value, 2.3181, 1e-4);
  EXPECT_EQ(t.gradient.size(), 5u);
}

TEST(TotalLoss, AlphaZeroIsClassificationOnly) {
  const std::vector<double> pred{0, 0, 0, 0}, target{0.5, 0.0, 2.0, 0.0};
  const LossValue loc = location_loss(pred, target, 1);
  const LossValue cls = classification_loss(0.3, 0);
  const LossValue t = total_loss(loc, cls, {0.0, 1.0});
  EXPECT_EQ(t.value, cls.value);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(t.gradient[i], 0.0);
}

TEST(TotalLoss, LinearInWeights) {
  const std::vector<double> pred{0.1, 0, 0, 0}, target{0.5, 0.0, 2.0, 0.0};
  const LossValue loc = location_loss(pred, target, 1);
  const LossValue cls = classification_loss(0.7, 1);
  const LossValue one = total_loss(loc, cls, {1.0, 1.0});
  const LossValue two = total_loss(loc, cls, {2.0, 2.0});
  EXPECT_DOUBLE_EQ(two.value, 2.0 * one.value);
}

TEST(TotalLoss, BadWeightsThrow) {
  EXPECT_THROW((LossWeights{-1.0, 1.0}.validate()), ConfigError);
  EXPECT_THROW((LossWeights{0.0, 0.0}.validate()), ConfigError);
}

TEST(MeanLoss, ScalesByCount) {
  const std::vector<LossValue> parts{classification_loss(0.5, 1), classification_loss(0.5, 0)};
  const LossValue m = mean_loss(parts);
  EXPECT_DOUBLE_EQ(m.value, std::log(2.0));
  ASSERT_EQ(m.gradient.size(), 2u);
  EXPECT_DOUBLE_EQ(m.gradient[0], parts[0].gradient[0] / 2.0);
}

TEST(MaskLoss, ZeroLogitsGiveLn2) {
  const MaskLogits z(2, 28, 28);
  std::vector<double> gt(28 * 28, 0.0);
  for (std::size_t i = 0; i < gt.size(); i += 3) gt[i] = 1.0;
  EXPECT_NEAR(mask_loss(z, gt, 1).value, std::log(2.0), 1e-12);
}

TEST(MaskLoss, LargeCorrectLogitsNearZero) {
  MaskLogits z(1, 4, 4);
  std::vector<double> gt(16, 0.0);
  for (std::size_t i = 0; i < 16; ++i) {
    gt[i] = i % 2 ? 1.0 : 0.0;
    z.data[i] = gt[i] > 0 ? 40.0 : -40.0;
  }
  const LossValue l = mask_loss(z, gt, 0);
  EXPECT_LT(l.value, 1e-15);
  EXPECT_TRUE(std::isfinite(l.value));
}

TEST(MaskLoss, OnlyGroundTruthSliceHasGradient) {
  MaskLogits z(3, 2, 2, 0.7);
  const std::vector<double> gt{1, 0, 0, 1};
  const LossValue l = mask_loss(z, gt, 1);
  ASSERT_EQ(l.gradient.size(), z.data.size());
  for (std::size_t i = 0; i < l.gradient.size(); ++i) {
    if (i < 4 || i >= 8) EXPECT_EQ(l.gradient[i], 0.0);
    else EXPECT_NE(l.gradient[i], 0.0);
  }
}

TEST(MaskLoss, ShapeMismatchThrows) {
  const MaskLogits z(2, 28, 28);
  EXPECT_THROW(mask_loss(z, std::vector<double>(10, 0.0), 0), ContractError);
  EXPECT_THROW(mask_loss(z, std::vector<double>(28 * 28, 0.0), 2), ContractError);
}
