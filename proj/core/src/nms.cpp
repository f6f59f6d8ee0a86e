#include "xdefect/nms.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "xdefect/errors.hpp"

namespace xdefect {

std::vector<std::size_t> rank_by_score(std::span<const double> scores) {
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return scores[a] > scores[b];
  });
  return order;
}

std::vector<std::size_t> nms_indices(std::span<const ScoredBox> dets,
                                     double iou_threshold, std::size_t max_keep) {
  if (!(iou_threshold >= 0.0 && iou_threshold <= 1.0)) {
    throw ContractError("nms: threshold must lie in [0, 1]");
  }
  std::vector<double> scores(dets.size());
  std::vector<double> areas(dets.size());
  for (std::size_t i = 0; i < dets.size(); ++i) {
    if (!std::isfinite(dets[i].score)) throw ContractError("nms: non-finite score");
    require_valid(dets[i].box, "nms");
    scores[i] = dets[i].score;
    areas[i] = dets[i].box.area();
  }
  const std::vector<std::size_t> order = rank_by_score(scores);

  std::vector<char> suppressed(dets.size(), 0);
  std::vector<std::size_t> keep;
  for (std::size_t oi = 0; oi < order.size() && keep.size() < max_keep; ++oi) {
    const std::size_t i = order[oi];
    if (suppressed[i]) continue;
    keep.push_back(i);
    const Box& bi = dets[i].box;
    for (std::size_t oj = oi + 1; oj < order.size(); ++oj) {
      const std::size_t j = order[oj];
      if (suppressed[j]) continue;
      const double inter = intersection_area(bi, dets[j].box);
      if (inter == 0.0) continue;
      const double overlap = inter / (areas[i] + areas[j] - inter);
      if (overlap > iou_threshold) suppressed[j] = 1;
    }
  }
  return keep;
}

std::vector<ScoredBox> nms(std::span<const ScoredBox> dets, double iou_threshold) {
  std::vector<ScoredBox> out;
  for (std::size_t i : nms_indices(dets, iou_threshold)) out.push_back(dets[i]);
  return out;
}

}  // namespace xdefect
