#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "xdefect/box.hpp"

namespace xdefect {

struct ScoredBox {
  Box box;
  double score = 0.0;
};

/// Greedy non-maximum suppression.
///
/// Candidates are visited by descending score (ties: ascending input index).
/// A candidate is dropped when its IoU with an already kept box is strictly
/// greater than `iou_threshold`. Returns indices into `dets` in keep order,
/// stopping early once `max_keep` boxes are kept.
std::vector<std::size_t> nms_indices(std::span<const ScoredBox> dets,
                                     double iou_threshold,
                                     std::size_t max_keep = static_cast<std::size_t>(-1));

/// Same as nms_indices but returns the kept boxes themselves.
std::vector<ScoredBox> nms(std::span<const ScoredBox> dets, double iou_threshold);

/// Indices of `scores` sorted by descending score, ties by ascending index.
std::vector<std::size_t> rank_by_score(std::span<const double> scores);

}  // namespace xdefect
