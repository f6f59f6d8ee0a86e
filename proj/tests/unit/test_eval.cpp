#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "xdefect/errors.hpp"
#include "xdefect/eval.hpp"
#include "xdefect/oracles/geometry.hpp"

using namespace xdefect;

namespace {

std::vector<GroundTruth> random_gt(std::mt19937_64& rng, int images, int per_image) {
  std::uniform_int_distribution<int> pos(0, 200), len(8, 40);
  std::vector<GroundTruth> gt;
  for (int i = 0; i < images; ++i) {
    for (int k = 0; k < per_image; ++k) {
      const double x = pos(rng), y = pos(rng);
      gt.push_back({"img" + std::to_string(i), 1 + k % 2, {x, y, x + len(rng), y + len(rng)}, {}});
    }
  }
  return gt;
}

std::vector<Detection> jittered(std::mt19937_64& rng, const std::vector<GroundTruth>& gt) {
  std::uniform_real_distribution<double> j(-6, 6), s(0, 1);
  std::vector<Detection> dets;
  for (const GroundTruth& g : gt) {
    const Box b{g.box.x1 + j(rng), g.box.y1 + j(rng), g.box.x2 + j(rng), g.box.y2 + j(rng)};
    dets.push_back({g.image_id, g.class_id, s(rng), b, {}});
    if (s(rng) < 0.3) dets.push_back({g.image_id, g.class_id, s(rng), g.box, {}});
  }
  return dets;
}

std::vector<RankedHit> hits(const std::vector<bool>& tp) {
  std::vector<RankedHit> r;
  for (std::size_t i = 0; i < tp.size(); ++i) r.push_back({1.0 - 0.01 * static_cast<double>(i), tp[i]});
  return r;
}

}  // namespace

TEST(Match, OverlapDecidesOutcome) {
  const std::vector<GroundTruth> gt{{"a", 1, {0, 0, 10, 10}, {}}};
  std::vector<Detection> d{{"a", 1, 0.9, {0, 0, 10, 6}, {}}};
  auto m = match_detections(d, gt, 0.5, MatchMode::BBox);
  EXPECT_TRUE(m[0].true_positive);
  EXPECT_DOUBLE_EQ(m[0].iou, 0.6);
  d[0].box = {0, 0, 10, 4};
  m = match_detections(d, gt, 0.5, MatchMode::BBox);
  EXPECT_FALSE(m[0].true_positive);
  const EvalReport r = evaluate(d, gt);
  EXPECT_EQ(r.bbox->classes[0].fp, 1u);
  EXPECT_EQ(r.bbox->classes[0].fn, 1u);
}

TEST(Match, DuplicateIsFalsePositive) {
  const std::vector<GroundTruth> gt{{"a", 1, {0, 0, 10, 10}, {}}};
  const std::vector<Detection> d{{"a", 1, 0.7, {0, 0, 10, 10}, {}}, {"a", 1, 0.9, {0, 0, 10, 9}, {}}};
  const auto m = match_detections(d, gt, 0.5, MatchMode::BBox);
  EXPECT_FALSE(m[0].true_positive);
  EXPECT_TRUE(m[1].true_positive);
}

TEST(Match, ClassAndImageMustAgree) {
  const std::vector<GroundTruth> gt{{"a", 1, {0, 0, 10, 10}, {}}};
  const std::vector<Detection> d{{"a", 2, 0.9, {0, 0, 10, 10}, {}}, {"b", 1, 0.9, {0, 0, 10, 10}, {}}};
  for (const MatchRecord& m : match_detections(d, gt, 0.5, MatchMode::BBox)) EXPECT_FALSE(m.true_positive);
}

TEST(Match, StrictThreshold) {
  const std::vector<GroundTruth> gt{{"a", 1, {0, 0, 10, 10}, {}}};
  const std::vector<Detection> d{{"a", 1, 0.9, {0, 0, 10, 5}, {}}};
  auto m = match_detections(d, gt, 0.5, MatchMode::BBox);
  EXPECT_TRUE(m[0].true_positive);
  EXPECT_TRUE(m[0].at_threshold);
  m = match_detections(d, gt, 0.5, MatchMode::BBox, true);
  EXPECT_FALSE(m[0].true_positive);
}

TEST(Match, MaskModeNeedsMasks) {
  const std::vector<GroundTruth> gt{{"a", 1, {0, 0, 10, 10}, {}}};
  const std::vector<Detection> d{{"a", 1, 0.9, {0, 0, 10, 10}, {}}};
  EXPECT_THROW(match_detections(d, gt, 0.5, MatchMode::Mask), ContractError);
  EXPECT_FALSE(evaluate(d, gt).mask.has_value());
}

TEST(Ap, SmallLists) {
  EXPECT_EQ(average_precision(hits({true}), 1), 1.0);
  EXPECT_EQ(average_precision(hits({false, true}), 1), 0.5);
  EXPECT_EQ(average_precision(hits({true, true}), 2), 1.0);
  EXPECT_DOUBLE_EQ(*average_precision(hits({true, false, true}), 2), 0.5 + 0.5 * 2.0 / 3.0);
  EXPECT_EQ(average_precision(hits({}), 3), 0.0);
  EXPECT_EQ(average_precision(hits({}), 0), std::nullopt);
  EXPECT_EQ(average_precision(hits({false}), 0), 0.0);
}

TEST(Ap, ElevenPoint) {
  EXPECT_DOUBLE_EQ(*average_precision(hits({false, true}), 1, Interpolation::ElevenPoint), 0.5);
  EXPECT_DOUBLE_EQ(*average_precision(hits({true, false}), 2, Interpolation::ElevenPoint), 6.0 / 11.0);
}

TEST(Ap, AgreesWithPrefixEnumeration) {
  std::mt19937_64 rng(30);
  std::bernoulli_distribution coin(0.5);
  for (int i = 0; i < 300; ++i) {
    std::vector<bool> tp(static_cast<std::size_t>(i % 21));
    for (auto&& b : tp) b = coin(rng);
    const std::size_t n_gt = static_cast<std::size_t>(std::count(tp.begin(), tp.end(), true)) + i % 3;
    if (n_gt == 0) continue;
    for (auto interp : {Interpolation::AllPoints, Interpolation::ElevenPoint}) {
      EXPECT_NEAR(*average_precision(hits(tp), n_gt, interp),
                  oracles::brute_average_precision(tp, n_gt, interp), 1e-12);
    }
  }
}

TEST(Evaluate, EchoedGroundTruthIsPerfect) {
  std::mt19937_64 rng(31);
  const auto gt = random_gt(rng, 10, 3);
  std::vector<Detection> d;
  for (const GroundTruth& g : gt) d.push_back({g.image_id, g.class_id, 1.0, g.box, {}});
  const EvalReport r = evaluate(d, gt);
  EXPECT_EQ(r.bbox->map, 1.0);
  EXPECT_TRUE(r.unknown_images.empty());
}

TEST(Evaluate, NoDetectionsGiveZero) {
  std::mt19937_64 rng(32);
  const auto gt = random_gt(rng, 3, 2);
  const EvalReport r = evaluate({}, gt);
  EXPECT_EQ(r.bbox->map, 0.0);
  EXPECT_EQ(r.bbox->classes[0].fn, 3u);
}

TEST(Evaluate, InvariantToOrderAndScoreScale) {
  std::mt19937_64 rng(33);
  const auto gt = random_gt(rng, 8, 4);
  auto d = jittered(rng, gt);
  const double base = evaluate(d, gt).bbox->map;
  std::shuffle(d.begin(), d.end(), rng);
  EXPECT_EQ(evaluate(d, gt).bbox->map, base);
  for (Detection& x : d) x.score = 0.5 * x.score * x.score;
  EXPECT_EQ(evaluate(d, gt).bbox->map, base);
  auto g2 = gt;
  std::shuffle(g2.begin(), g2.end(), rng);
  EXPECT_EQ(evaluate(d, g2).bbox->map, base);
}

TEST(Evaluate, ExtraFalsePositiveDoesNotHelp) {
  std::mt19937_64 rng(34);
  const auto gt = random_gt(rng, 6, 2);
  auto d = jittered(rng, gt);
  const double base = evaluate(d, gt).bbox->map;
  d.push_back({"img0", 1, 1.0, {300, 300, 320, 320}, {}});
  EXPECT_LE(evaluate(d, gt).bbox->map, base);
}

TEST(Evaluate, MissedObjectDoesNotHelp) {
  std::mt19937_64 rng(35);
  auto gt = random_gt(rng, 6, 2);
  const auto d = jittered(rng, gt);
  const double base = evaluate(d, gt).bbox->map;
  gt.push_back({"img1", 1, {400, 400, 420, 420}, {}});
  EXPECT_LE(evaluate(d, gt).bbox->map, base);
}

TEST(Evaluate, UnknownImagesReported) {
  const std::vector<GroundTruth> gt{{"a", 1, {0, 0, 10, 10}, {}}};
  const std::vector<Detection> d{{"a", 1, 0.9, {0, 0, 10, 10}, {}}, {"zz", 1, 0.95, {0, 0, 10, 10}, {}}};
  const EvalReport r = evaluate(d, gt);
  EXPECT_EQ(r.unknown_images, (std::vector<std::string>{"zz"}));
  EXPECT_EQ(r.bbox->map, 0.5);
  EXPECT_NE(format_report(r).find("warning: 1 detection image id"), std::string::npos);
}

TEST(Evaluate, MaskTask) {
  BinaryMask m(20, 20);
  for (int y = 2; y < 8; ++y) {
    for (int x = 2; x < 8; ++x) m.set(x, y);
  }
  const std::vector<GroundTruth> gt{{"a", 1, {2, 2, 8, 8}, m}};
  const std::vector<Detection> d{{"a", 1, 0.9, {2, 2, 8, 8}, m}};
  const EvalReport r = evaluate(d, gt);
  ASSERT_TRUE(r.mask.has_value());
  EXPECT_EQ(r.mask->map, 1.0);
  EXPECT_NE(format_results(r).find("mask.map=1"), std::string::npos);
}

TEST(Evaluate, ReportFormat) {
  const std::vector<GroundTruth> gt{{"a", 1, {0, 0, 10, 10}, {}}};
  const std::vector<Detection> d{{"a", 1, 0.9, {0, 0, 10, 10}, {}}};
  const EvalReport r = evaluate(d, gt);
  EXPECT_NE(format_report(r).find("mAP_bbox 1.000"), std::string::npos);
  EXPECT_NE(format_results(r).find("bbox.map=1\n"), std::string::npos);
}
