#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "xdefect/anchors.hpp"

namespace xdefect {

enum class AnchorLabel : std::int8_t { Negative = 0, Positive = 1, Ignore = -1 };

struct MatchConfig {
  // An anchor is positive when its best IoU with any ground truth reaches
  // this value.
  double pos_iou = 0.5;
  // Each ground truth that no anchor reaches pos_iou for promotes its best
  // overlapping anchor to positive.
  bool force_best_anchor = true;
  // When set, anchors whose best IoU lies in [ignore_from, pos_iou) are
  // labelled Ignore instead of Negative. Off by default.
  std::optional<double> ignore_from;
  EncodingVariant variant = EncodingVariant::AnchorRelative;
};

struct MatchResult {
  std::vector<AnchorLabel> labels;
  // Ground-truth index for positive anchors, nullopt otherwise.
  std::vector<std::optional<std::size_t>> matched_gt;
  // Regression target for positive anchors, nullopt otherwise.
  std::vector<std::optional<BoxEncoding>> targets;
  // Best IoU of each anchor over all ground truths (0 without ground truth).
  std::vector<double> max_iou;

  std::size_t size() const { return labels.size(); }
  std::size_t count(AnchorLabel l) const;
};

/// Label anchors against ground-truth boxes.
///
/// Positive anchors are matched to their argmax-IoU ground truth (ties go to
/// the lowest ground-truth index). An anchor promoted by the forced rule is
/// matched to the ground truth that promoted it. Throws ContractError on an
/// empty anchor set; an empty ground-truth list labels everything negative.
MatchResult match_anchors(const AnchorSet& anchors, std::span<const Box> gt,
                          const MatchConfig& cfg = {});

struct SampleConfig {
  std::size_t total = 100;
  // 1:3 positive to negative.
  double pos_fraction = 0.25;
};

struct RoiSample {
  std::vector<std::size_t> positives;
  std::vector<std::size_t> negatives;

  /// Positives followed by negatives.
  std::vector<std::size_t> indices() const;
  std::size_t size() const { return positives.size() + negatives.size(); }
};

/// Sample training RoIs without replacement. At most
/// round(total * pos_fraction) positives are drawn and negatives fill the
/// rest of `total` as far as they go. Ignored anchors are
/// never sampled. Each list is returned in ascending index order.
RoiSample sample_rois(const MatchResult& match, const SampleConfig& cfg,
                      std::uint64_t seed);

}  // namespace xdefect
