#include "xdefect/proposals.hpp"

#include <cmath>

#include "xdefect/errors.hpp"
#include "xdefect/nms.hpp"

namespace xdefect {

std::vector<Proposal> select_proposals(const AnchorSet& anchors,
                                       std::span<const double> objectness,
                                       std::span<const BoxEncoding> deltas,
                                       double image_w, double image_h,
                                       const ProposalConfig& cfg) {
  if (objectness.size() != anchors.size() || deltas.size() != anchors.size()) {
    throw ContractError("select_proposals: need one score and one delta per anchor");
  }
  if (!(image_w > 0.0 && image_h > 0.0)) {
    throw ContractError("select_proposals: image size must be positive");
  }

  std::vector<ScoredBox> candidates;
  std::vector<std::size_t> source;
  candidates.reserve(anchors.size());
  source.reserve(anchors.size());
  for (std::size_t i = 0; i < anchors.size(); ++i) {
    if (!std::isfinite(objectness[i])) {
      throw ContractError("select_proposals: non-finite objectness");
    }
    Box b;
    try {
      b = decode_box(deltas[i], anchors[i]);
    } catch (const DomainError&) {
      continue;
    }
    b = clip(b, image_w, image_h);
    if (!b.valid() || b.width() < cfg.min_size || b.height() < cfg.min_size) continue;
    candidates.push_back({b, objectness[i]});
    source.push_back(i);
  }

  std::vector<std::size_t> kept;
  if (cfg.nms_threshold) {
    kept = nms_indices(candidates, *cfg.nms_threshold, cfg.top_n);
  } else {
    std::vector<double> scores(candidates.size());
    for (std::size_t i = 0; i < candidates.size(); ++i) scores[i] = candidates[i].score;
    kept = rank_by_score(scores);
    if (kept.size() > cfg.top_n) kept.resize(cfg.top_n);
  }

  // Candidates are in ascending anchor order, so index ties resolve to the
  // lower anchor index.
  std::vector<Proposal> out;
  out.reserve(kept.size());
  for (std::size_t k : kept) {
    out.push_back({candidates[k].box, candidates[k].score, source[k]});
  }
  return out;
}

}  // namespace xdefect
