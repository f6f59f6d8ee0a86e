#include "xdefect/targets.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <random>

#include "xdefect/errors.hpp"

namespace xdefect {

std::size_t MatchResult::count(AnchorLabel l) const {
  return static_cast<std::size_t>(std::count(labels.begin(), labels.end(), l));
}

MatchResult match_anchors(const AnchorSet& anchors, std::span<const Box> gt,
                          const MatchConfig& cfg) {
  if (anchors.empty()) throw ContractError("match_anchors: empty anchor set");
  if (!(cfg.pos_iou > 0.0 && cfg.pos_iou <= 1.0)) {
    throw ContractError("match_anchors: pos_iou must lie in (0, 1]");
  }
  const std::size_t n = anchors.size();
  MatchResult m;
  m.labels.assign(n, AnchorLabel::Negative);
  m.matched_gt.assign(n, std::nullopt);
  m.targets.assign(n, std::nullopt);
  m.max_iou.assign(n, 0.0);
  if (gt.empty()) return m;

  std::vector<std::size_t> best_gt(n, 0);
  // Per ground truth: best anchor and whether any anchor reached pos_iou.
  std::vector<double> gt_best_iou(gt.size(), 0.0);
  std::vector<std::size_t> gt_best_anchor(gt.size(), 0);
  std::vector<char> gt_covered(gt.size(), 0);

  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t g = 0; g < gt.size(); ++g) {
      const double v = iou(anchors[a].box, gt[g]);
      if (v > m.max_iou[a]) {
        m.max_iou[a] = v;
        best_gt[a] = g;
      }
      if (v > gt_best_iou[g]) {
        gt_best_iou[g] = v;
        gt_best_anchor[g] = a;
      }
      if (v >= cfg.pos_iou) gt_covered[g] = 1;
    }
  }

  auto make_positive = [&](std::size_t a, std::size_t g) {
    m.labels[a] = AnchorLabel::Positive;
    m.matched_gt[a] = g;
    m.targets[a] = encode_box(gt[g], anchors[a].box, cfg.variant);
  };

  for (std::size_t a = 0; a < n; ++a) {
    if (m.max_iou[a] >= cfg.pos_iou) {
      make_positive(a, best_gt[a]);
    } else if (cfg.ignore_from && m.max_iou[a] >= *cfg.ignore_from) {
      m.labels[a] = AnchorLabel::Ignore;
    }
  }

  if (cfg.force_best_anchor) {
    for (std::size_t g = 0; g < gt.size(); ++g) {
      if (gt_covered[g] || gt_best_iou[g] <= 0.0) continue;
      const std::size_t a = gt_best_anchor[g];
      // First ground truth to claim an anchor keeps it.
      if (m.labels[a] == AnchorLabel::Positive) continue;
      make_positive(a, g);
    }
  }
  return m;
}

std::vector<std::size_t> RoiSample::indices() const {
  std::vector<std::size_t> out(positives);
  out.insert(out.end(), negatives.begin(), negatives.end());
  return out;
}

RoiSample sample_rois(const MatchResult& match, const SampleConfig& cfg,
                      std::uint64_t seed) {
  if (cfg.total < 1) throw ContractError("sample_rois: total must be at least 1");
  if (!(cfg.pos_fraction >= 0.0 && cfg.pos_fraction <= 1.0)) {
    throw ContractError("sample_rois: pos_fraction must lie in [0, 1]");
  }
  std::vector<std::size_t> pos, neg;
  for (std::size_t i = 0; i < match.labels.size(); ++i) {
    if (match.labels[i] == AnchorLabel::Positive) pos.push_back(i);
    else if (match.labels[i] == AnchorLabel::Negative) neg.push_back(i);
  }
  const auto pos_cap =
      static_cast<std::size_t>(std::llround(static_cast<double>(cfg.total) * cfg.pos_fraction));
  const std::size_t n_pos = std::min(pos_cap, pos.size());
  const std::size_t n_neg = std::min(cfg.total - n_pos, neg.size());

  std::mt19937_64 rng(seed);
  RoiSample s;
  std::sample(pos.begin(), pos.end(), std::back_inserter(s.positives), n_pos, rng);
  std::sample(neg.begin(), neg.end(), std::back_inserter(s.negatives), n_neg, rng);
  return s;
}

}  // namespace xdefect
