#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "xdefect/anchors.hpp"
#include "xdefect/box.hpp"
#include "xdefect/eval.hpp"
#include "xdefect/nms.hpp"
#include "xdefect/targets.hpp"

namespace xdefect::oracles {

/// IoU by counting unit pixels. Boxes must have integer coordinates.
double pixel_iou(const Box& a, const Box& b);

/// IoU from min/max arithmetic, no shared code with the library.
double direct_iou(const Box& a, const Box& b);

/// Greedy NMS by repeated maximum search over the survivors. Returns kept
/// indices in selection order.
std::vector<std::size_t> brute_nms(std::span<const ScoredBox> dets, double iou_threshold);

struct BruteMatch {
  std::vector<AnchorLabel> labels;
  std::vector<std::optional<std::size_t>> matched_gt;
};

/// Anchor labelling from the full anchor x ground-truth IoU table.
BruteMatch brute_match_anchors(const AnchorSet& anchors, std::span<const Box> gt, double pos_iou,
                               bool force_best_anchor);

/// All-points or 11-point AP by enumerating every prefix of the ranked list
/// for each recall level.
double brute_average_precision(const std::vector<bool>& ranked_tp, std::size_t n_gt,
                               Interpolation interp = Interpolation::AllPoints);

}  // namespace xdefect::oracles
