#include "xdefect/oracles/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace xdefect::oracles {

double pixel_iou(const Box& a, const Box& b) {
  const int x_lo = static_cast<int>(std::min(a.x1, b.x1));
  const int x_hi = static_cast<int>(std::max(a.x2, b.x2));
  const int y_lo = static_cast<int>(std::min(a.y1, b.y1));
  const int y_hi = static_cast<int>(std::max(a.y2, b.y2));
  long in_a = 0, in_b = 0, both = 0;
  for (int y = y_lo; y < y_hi; ++y) {
    for (int x = x_lo; x < x_hi; ++x) {
      const bool ia = x >= a.x1 && x < a.x2 && y >= a.y1 && y < a.y2;
      const bool ib = x >= b.x1 && x < b.x2 && y >= b.y1 && y < b.y2;
      in_a += ia;
      in_b += ib;
      both += ia && ib;
    }
  }
  return static_cast<double>(both) / static_cast<double>(in_a + in_b - both);
}

double direct_iou(const Box& a, const Box& b) {
  const double iw = std::max(0.0, std::min(a.x2, b.x2) - std::max(a.x1, b.x1));
  const double ih = std::max(0.0, std::min(a.y2, b.y2) - std::max(a.y1, b.y1));
  const double inter = iw * ih;
  const double area_a = (a.x2 - a.x1) * (a.y2 - a.y1);
  const double area_b = (b.x2 - b.x1) * (b.y2 - b.y1);
  return inter / (area_a + area_b - inter);
}

std::vector<std::size_t> brute_nms(std::span<const ScoredBox> dets, double iou_threshold) {
  std::vector<char> alive(dets.size(), 1);
  std::vector<std::size_t> kept;
  while (true) {
    std::optional<std::size_t> best;
    for (std::size_t i = 0; i < dets.size(); ++i) {
      if (alive[i] && (!best || dets[i].score > dets[*best].score)) best = i;
    }
    if (!best) break;
    kept.push_back(*best);
    alive[*best] = 0;
    for (std::size_t i = 0; i < dets.size(); ++i) {
      if (alive[i] && direct_iou(dets[*best].box, dets[i].box) > iou_threshold) alive[i] = 0;
    }
  }
  return kept;
}

BruteMatch brute_match_anchors(const AnchorSet& anchors, std::span<const Box> gt, double pos_iou,
                               bool force_best_anchor) {
  const std::size_t n = anchors.size();
  BruteMatch out{std::vector<AnchorLabel>(n, AnchorLabel::Negative),
                 std::vector<std::optional<std::size_t>>(n)};
  std::vector<std::vector<double>> table(n, std::vector<double>(gt.size()));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t g = 0; g < gt.size(); ++g) table[a][g] = direct_iou(anchors[a].box, gt[g]);
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t g = 0; g < gt.size(); ++g) {
      const double top = *std::max_element(table[a].begin(), table[a].end());
      if (table[a][g] == top && top >= pos_iou) {
        out.labels[a] = AnchorLabel::Positive;
        out.matched_gt[a] = g;
        break;
      }
    }
  }
  if (!force_best_anchor) return out;
  for (std::size_t g = 0; g < gt.size(); ++g) {
    double top = 0.0;
    bool covered = false;
    for (std::size_t a = 0; a < n; ++a) {
      top = std::max(top, table[a][g]);
      covered = covered || table[a][g] >= pos_iou;
    }
    if (covered || top <= 0.0) continue;
    for (std::size_t a = 0; a < n; ++a) {
      if (table[a][g] != top) continue;
      if (out.labels[a] != AnchorLabel::Positive) {
        out.labels[a] = AnchorLabel::Positive;
        out.matched_gt[a] = g;
      }
      break;
    }
  }
  return out;
}

double brute_average_precision(const std::vector<bool>& ranked_tp, std::size_t n_gt,
                               Interpolation interp) {
  if (n_gt == 0) throw std::invalid_argument("brute_average_precision: n_gt must be positive");
  const std::size_t n = ranked_tp.size();
  std::vector<double> recall(n), precision(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t tp = 0;
    for (std::size_t j = 0; j <= k; ++j) tp += ranked_tp[j] ? 1 : 0;
    recall[k] = static_cast<double>(tp) / static_cast<double>(n_gt);
    precision[k] = static_cast<double>(tp) / static_cast<double>(k + 1);
  }
  auto interpolated = [&](double r) {
    double best = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      if (recall[k] >= r) best = std::max(best, precision[k]);
    }
    return best;
  };
  if (interp == Interpolation::ElevenPoint) {
    double sum = 0.0;
    for (int t = 0; t <= 10; ++t) sum += interpolated(t / 10.0);
    return sum / 11.0;
  }
  // The interpolated curve is a step function that is constant on each
  // interval (r_prev, r] between consecutive attained recall levels.
  std::vector<double> levels(recall);
  levels.push_back(0.0);
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  double area = 0.0;
  for (std::size_t i = 1; i < levels.size(); ++i) {
    area += (levels[i] - levels[i - 1]) * interpolated(levels[i]);
  }
  return area;
}

}  // namespace xdefect::oracles
