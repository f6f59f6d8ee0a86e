#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "xdefect/anchors.hpp"

namespace xdefect {

struct ProposalConfig {
  // Number of proposals handed to the second stage.
  std::size_t top_n = 600;
  // nullopt disables suppression.
  std::optional<double> nms_threshold = 0.7;
  // Boxes narrower or shorter than this after clipping are dropped.
  double min_size = 0.0;
};

struct Proposal {
  Box box;
  double score = 0.0;
  std::size_t anchor_index = 0;
};

/// Decode every anchor with its regression delta, clip to the image, drop
/// degenerate boxes, run NMS and keep the `top_n` highest objectness
/// survivors. Output is sorted by descending score, ties by anchor index.
///
/// Throws ContractError when objectness or deltas do not have one entry per
/// anchor.
std::vector<Proposal> select_proposals(const AnchorSet& anchors,
                                       std::span<const double> objectness,
                                       std::span<const BoxEncoding> deltas,
                                       double image_w, double image_h,
                                       const ProposalConfig& cfg = {});

}  // namespace xdefect
