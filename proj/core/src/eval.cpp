#include "xdefect/eval.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <tuple>

#include "xdefect/errors.hpp"

namespace xdefect {

namespace {

using GroupKey = std::pair<std::string, int>;

bool box_less(const Box& a, const Box& b) { return as_array(a) < as_array(b); }

double overlap(const Detection& d, const GroundTruth& g, MatchMode mode) {
  if (mode == MatchMode::BBox) return iou(d.box, g.box);
  return mask_iou(*d.mask, *g.mask);
}

bool passes(double v, double threshold, bool strict) {
  return strict ? v > threshold : v >= threshold;
}

// Ranking used for per-class PR curves: score, then content, then TP first
// so identical detections order the same way regardless of input order.
struct RankKey {
  double score;
  const std::string* image;
  Box box;
  bool tp;
};

bool rank_before(const RankKey& a, const RankKey& b) {
  if (a.score != b.score) return a.score > b.score;
  if (*a.image != *b.image) return *a.image < *b.image;
  if (as_array(a.box) != as_array(b.box)) return box_less(a.box, b.box);
  return a.tp && !b.tp;
}

std::string fmt_number(double v) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return ec == std::errc{} ? std::string(buf, p) : std::string("nan");
}

std::string fmt_fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

}  // namespace

std::vector<MatchRecord> match_detections(std::span<const Detection> dets,
                                          std::span<const GroundTruth> gts,
                                          double iou_threshold, MatchMode mode, bool strict) {
  if (!(iou_threshold >= 0.0 && iou_threshold <= 1.0)) {
    throw ContractError("match_detections: threshold must lie in [0, 1]");
  }
  if (mode == MatchMode::Mask) {
    for (const Detection& d : dets) {
      if (!d.mask) throw ContractError("match_detections: mask mode needs a mask on every detection");
    }
    for (const GroundTruth& g : gts) {
      if (!g.mask) throw ContractError("match_detections: mask mode needs a mask on every ground truth");
    }
  }

  std::map<GroupKey, std::vector<std::size_t>> gt_groups;
  for (std::size_t i = 0; i < gts.size(); ++i) {
    gt_groups[{gts[i].image_id, gts[i].class_id}].push_back(i);
  }
  for (auto& [key, idx] : gt_groups) {
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
      return box_less(gts[a].box, gts[b].box);
    });
  }
  std::map<GroupKey, std::vector<std::size_t>> det_groups;
  for (std::size_t i = 0; i < dets.size(); ++i) {
    det_groups[{dets[i].image_id, dets[i].class_id}].push_back(i);
  }

  std::vector<MatchRecord> out(dets.size());
  for (auto& [key, idx] : det_groups) {
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
      if (dets[a].score != dets[b].score) return dets[a].score > dets[b].score;
      return box_less(dets[a].box, dets[b].box);
    });
    const auto it = gt_groups.find(key);
    static const std::vector<std::size_t> kNone;
    const std::vector<std::size_t>& cand = it == gt_groups.end() ? kNone : it->second;
    std::vector<char> taken(cand.size(), 0);

    for (std::size_t di : idx) {
      MatchRecord& rec = out[di];
      rec.det_index = di;
      std::optional<std::size_t> best;
      double best_iou = -1.0;
      double best_any = 0.0;
      for (std::size_t k = 0; k < cand.size(); ++k) {
        const double v = overlap(dets[di], gts[cand[k]], mode);
        best_any = std::max(best_any, v);
        if (taken[k] || !passes(v, iou_threshold, strict)) continue;
        if (v > best_iou) {
          best_iou = v;
          best = k;
        }
      }
      if (best) {
        taken[*best] = 1;
        rec.gt_index = cand[*best];
        rec.iou = best_iou;
        rec.true_positive = true;
      } else {
        rec.iou = best_any;
      }
      rec.at_threshold = rec.iou == iou_threshold;
    }
  }
  return out;
}

std::vector<PrPoint> precision_recall(std::span<const RankedHit> ranked, std::size_t n_gt) {
  std::vector<PrPoint> curve;
  curve.reserve(ranked.size());
  std::size_t tp = 0;
  for (std::size_t i = 0; i < ranked.size(); ++i) {
    if (ranked[i].true_positive) ++tp;
    const double recall = n_gt ? static_cast<double>(tp) / static_cast<double>(n_gt) : 0.0;
    curve.push_back({recall, static_cast<double>(tp) / static_cast<double>(i + 1)});
  }
  return curve;
}

std::optional<double> average_precision(std::span<const RankedHit> ranked, std::size_t n_gt,
                                        Interpolation interp) {
  if (n_gt == 0) {
    if (ranked.empty()) return std::nullopt;
    return 0.0;
  }
  const std::vector<PrPoint> curve = precision_recall(ranked, n_gt);
  if (interp == Interpolation::ElevenPoint) {
    double sum = 0.0;
    for (int t = 0; t <= 10; ++t) {
      const double r = t / 10.0;
      double best = 0.0;
      for (const PrPoint& p : curve) {
        if (p.recall >= r) best = std::max(best, p.precision);
      }
      sum += best;
    }
    return sum / 11.0;
  }
  // All points: area under the monotone precision envelope.
  std::vector<double> envelope(curve.size());
  double running = 0.0;
  for (std::size_t i = curve.size(); i-- > 0;) {
    running = std::max(running, curve[i].precision);
    envelope[i] = running;
  }
  double ap = 0.0;
  double prev_recall = 0.0;
  for (std::size_t i = 0; i < curve.size(); ++i) {
    if (curve[i].recall != prev_recall) {
      ap += (curve[i].recall - prev_recall) * envelope[i];
      prev_recall = curve[i].recall;
    }
  }
  return ap;
}

namespace {

TaskReport score_task(std::span<const Detection> dets, std::span<const GroundTruth> gts,
                      const EvalConfig& cfg, MatchMode mode) {
  TaskReport rep;
  rep.matches = match_detections(dets, gts, cfg.iou_threshold, mode, cfg.strict);
  for (const MatchRecord& m : rep.matches) rep.at_threshold += m.at_threshold ? 1 : 0;

  std::set<int> classes;
  for (const GroundTruth& g : gts) classes.insert(g.class_id);
  for (const Detection& d : dets) classes.insert(d.class_id);

  double ap_sum = 0.0;
  std::size_t ap_count = 0;
  for (int c : classes) {
    ClassResult cr;
    cr.class_id = c;
    for (const GroundTruth& g : gts) cr.n_gt += g.class_id == c ? 1 : 0;
    std::vector<RankKey> keys;
    for (std::size_t i = 0; i < dets.size(); ++i) {
      if (dets[i].class_id != c) continue;
      keys.push_back({dets[i].score, &dets[i].image_id, dets[i].box, rep.matches[i].true_positive});
    }
    std::sort(keys.begin(), keys.end(), rank_before);
    std::vector<RankedHit> ranked;
    ranked.reserve(keys.size());
    for (const RankKey& k : keys) ranked.push_back({k.score, k.tp});
    cr.n_det = ranked.size();
    cr.tp = static_cast<std::size_t>(
        std::count_if(ranked.begin(), ranked.end(), [](const RankedHit& h) { return h.true_positive; }));
    cr.fp = cr.n_det - cr.tp;
    cr.fn = cr.n_gt - cr.tp;
    cr.curve = precision_recall(ranked, cr.n_gt);
    cr.ap = average_precision(ranked, cr.n_gt, cfg.interpolation);
    if (cr.n_gt > 0) {
      ap_sum += cr.ap.value_or(0.0);
      ++ap_count;
    }
    rep.classes.push_back(std::move(cr));
  }
  rep.map = ap_count ? ap_sum / static_cast<double>(ap_count) : 0.0;
  return rep;
}

}  // namespace

EvalReport evaluate(std::span<const Detection> dets, std::span<const GroundTruth> gts,
                    const EvalConfig& cfg) {
  EvalReport r;
  std::set<std::string> gt_images;
  for (const GroundTruth& g : gts) gt_images.insert(g.image_id);
  std::set<std::string> unknown;
  for (const Detection& d : dets) {
    if (!gt_images.count(d.image_id)) unknown.insert(d.image_id);
  }
  r.unknown_images.assign(unknown.begin(), unknown.end());

  if (cfg.bbox) r.bbox = score_task(dets, gts, cfg, MatchMode::BBox);
  const bool all_masks =
      std::all_of(dets.begin(), dets.end(), [](const Detection& d) { return d.mask.has_value(); }) &&
      std::all_of(gts.begin(), gts.end(), [](const GroundTruth& g) { return g.mask.has_value(); });
  if (cfg.mask && all_masks && (!dets.empty() || !gts.empty())) {
    r.mask = score_task(dets, gts, cfg, MatchMode::Mask);
  }
  return r;
}

std::string format_report(const EvalReport& r) {
  std::ostringstream os;
  auto task = [&](const char* name, const TaskReport& t) {
    os << "mAP_" << name << " " << fmt_fixed(t.map, 3) << '\n';
    for (const ClassResult& c : t.classes) {
      os << "  class " << c.class_id << ": AP "
         << (c.ap ? fmt_fixed(*c.ap, 3) : std::string("n/a")) << "  gt " << c.n_gt << "  det "
         << c.n_det << "  tp " << c.tp << "  fp " << c.fp << "  fn " << c.fn << '\n';
    }
    if (t.at_threshold) {
      os << "  note: " << t.at_threshold << " match(es) decided at IoU exactly equal to the threshold\n";
    }
  };
  if (r.bbox) task("bbox", *r.bbox);
  if (r.mask) task("mask", *r.mask);
  if (!r.unknown_images.empty()) {
    os << "warning: " << r.unknown_images.size() << " detection image id(s) have no ground truth\n";
  }
  return os.str();
}

std::string format_results(const EvalReport& r) {
  std::ostringstream os;
  auto task = [&](const std::string& name, const TaskReport& t) {
    os << name << ".map=" << fmt_number(t.map) << '\n';
    os << name << ".at_threshold=" << t.at_threshold << '\n';
    for (const ClassResult& c : t.classes) {
      const std::string p = name + ".class." + std::to_string(c.class_id) + '.';
      os << p << "ap=" << (c.ap ? fmt_number(*c.ap) : std::string("undefined")) << '\n';
      os << p << "n_gt=" << c.n_gt << '\n';
      os << p << "n_det=" << c.n_det << '\n';
      os << p << "tp=" << c.tp << '\n';
      os << p << "fp=" << c.fp << '\n';
      os << p << "fn=" << c.fn << '\n';
    }
  };
  if (r.bbox) task("bbox", *r.bbox);
  if (r.mask) task("mask", *r.mask);
  os << "unknown_images=" << r.unknown_images.size() << '\n';
  return os.str();
}

}  // namespace xdefect
