#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "xdefect/errors.hpp"
#include "xdefect/oracles/geometry.hpp"
#include "xdefect/targets.hpp"

using namespace xdefect;

namespace {

AnchorSet boxes_as_anchors(const std::vector<Box>& boxes) {
  AnchorSet set;
  for (const Box& b : boxes) set.push_back({b});
  return set;
}

AnchorSet random_anchors(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<int> pos(0, 60), len(2, 20);
  std::vector<Box> boxes;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = pos(rng), y = pos(rng);
    boxes.push_back({x, y, x + len(rng), y + len(rng)});
  }
  return boxes_as_anchors(boxes);
}

MatchResult labels_only(std::size_t pos, std::size_t neg) {
  MatchResult m;
  m.labels.assign(pos, AnchorLabel::Positive);
  m.labels.resize(pos + neg, AnchorLabel::Negative);
  return m;
}

}  // namespace

TEST(Match, IdenticalAnchorHasZeroTarget) {
  const Box g{10, 10, 26, 26};
  const AnchorSet anchors = boxes_as_anchors({g, {40, 40, 50, 50}});
  const MatchResult m = match_anchors(anchors, std::vector<Box>{g});
  EXPECT_EQ(m.labels[0], AnchorLabel::Positive);
  EXPECT_EQ(m.labels[1], AnchorLabel::Negative);
  EXPECT_EQ(m.matched_gt[0], 0u);
  ASSERT_TRUE(m.targets[0].has_value());
  for (double v : m.targets[0]->t) EXPECT_EQ(v, 0.0);
  EXPECT_FALSE(m.targets[1].has_value());
}

TEST(Match, NoGroundTruthAllNegative) {
  const AnchorSet anchors = generate_anchors({}, 2, 2);
  const MatchResult m = match_anchors(anchors, {});
  EXPECT_EQ(m.count(AnchorLabel::Negative), anchors.size());
  EXPECT_TRUE(std::all_of(m.max_iou.begin(), m.max_iou.end(), [](double v) { return v == 0.0; }));
}

TEST(Match, WeakOverlapForcedPositive) {
  const AnchorSet anchors = boxes_as_anchors({{0, 0, 10, 10}, {20, 20, 30, 30}});
  const std::vector<Box> gt{{5, 5, 25, 25}};
  MatchResult m = match_anchors(anchors, gt);
  EXPECT_EQ(m.count(AnchorLabel::Positive), 1u);
  MatchConfig cfg;
  cfg.force_best_anchor = false;
  m = match_anchors(anchors, gt, cfg);
  EXPECT_EQ(m.count(AnchorLabel::Positive), 0u);
}

TEST(Match, IgnoreBand) {
  const AnchorSet anchors = boxes_as_anchors({{0, 0, 10, 10}, {0, 0, 10, 4}, {50, 50, 60, 60}});
  MatchConfig cfg;
  cfg.ignore_from = 0.3;
  const MatchResult m = match_anchors(anchors, std::vector<Box>{{0, 0, 10, 10}}, cfg);
  EXPECT_EQ(m.labels[0], AnchorLabel::Positive);
  EXPECT_EQ(m.labels[1], AnchorLabel::Ignore);  // IoU 0.4
  EXPECT_EQ(m.labels[2], AnchorLabel::Negative);
}

TEST(Match, EmptyAnchorsThrow) {
  EXPECT_THROW(match_anchors({}, std::vector<Box>{{0, 0, 1, 1}}), ContractError);
}

TEST(Match, AgreesWithFullTable) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    const AnchorSet anchors = random_anchors(rng, 200);
    std::vector<Box> gt;
    for (const Anchor& a : random_anchors(rng, 5)) gt.push_back(a.box);
    for (bool force : {true, false}) {
      MatchConfig cfg;
      cfg.force_best_anchor = force;
      const MatchResult m = match_anchors(anchors, gt, cfg);
      const auto ref = oracles::brute_match_anchors(anchors, gt, cfg.pos_iou, force);
      EXPECT_EQ(m.labels, ref.labels);
      EXPECT_EQ(m.matched_gt, ref.matched_gt);
    }
  }
}

TEST(Sample, QuarterPositives) {
  const RoiSample s = sample_rois(labels_only(50, 500), {}, 1);
  EXPECT_EQ(s.positives.size(), 25u);
  EXPECT_EQ(s.negatives.size(), 75u);
  EXPECT_TRUE(std::is_sorted(s.positives.begin(), s.positives.end()));
  for (std::size_t i : s.positives) EXPECT_LT(i, 50u);
  for (std::size_t i : s.negatives) EXPECT_GE(i, 50u);
}

TEST(Sample, NegativesFillShortfall) {
  RoiSample s = sample_rois(labels_only(0, 500), {}, 1);
  EXPECT_EQ(s.negatives.size(), 100u);
  s = sample_rois(labels_only(10, 500), {}, 1);
  EXPECT_EQ(s.positives.size(), 10u);
  EXPECT_EQ(s.negatives.size(), 90u);
}

TEST(Sample, IgnoredNeverDrawn) {
  MatchResult m = labels_only(5, 5);
  m.labels.resize(20, AnchorLabel::Ignore);
  const RoiSample s = sample_rois(m, {}, 4);
  EXPECT_EQ(s.size(), 10u);
  for (std::size_t i : s.indices()) EXPECT_LT(i, 10u);
}

TEST(Sample, DeterministicPerSeed) {
  const MatchResult m = labels_only(60, 600);
  EXPECT_EQ(sample_rois(m, {}, 7).indices(), sample_rois(m, {}, 7).indices());
  EXPECT_NE(sample_rois(m, {}, 7).indices(), sample_rois(m, {}, 8).indices());
}

TEST(Sample, NeverExceedsAvailableOrTotal) {
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<std::size_t> n(0, 150);
  for (int i = 0; i < 200; ++i) {
    const std::size_t p = n(rng), q = n(rng);
    const RoiSample s = sample_rois(labels_only(p, q), {}, i);
    const std::size_t want_pos = std::min<std::size_t>(25, p);
    EXPECT_EQ(s.positives.size(), want_pos);
    EXPECT_EQ(s.negatives.size(), std::min(100 - want_pos, q));
    EXPECT_LE(s.positives.size(), 25u);
    const auto idx = s.indices();
    EXPECT_EQ(std::set<std::size_t>(idx.begin(), idx.end()).size(), idx.size());
  }
}
