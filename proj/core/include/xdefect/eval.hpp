#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "xdefect/box.hpp"
#include "xdefect/mask.hpp"

namespace xdefect {

struct Detection {
  std::string image_id;
  int class_id = 1;
  double score = 0.0;
  Box box;
  std::optional<BinaryMask> mask;  // image frame
};

struct GroundTruth {
  std::string image_id;
  int class_id = 1;
  Box box;
  std::optional<BinaryMask> mask;  // image frame
};

enum class MatchMode { BBox, Mask };
enum class Interpolation { AllPoints, ElevenPoint };

struct EvalConfig {
  double iou_threshold = 0.5;
  // Require IoU > threshold instead of IoU >= threshold.
  bool strict = false;
  Interpolation interpolation = Interpolation::AllPoints;
  bool bbox = true;
  // Mask evaluation runs when enabled and every record carries a mask.
  bool mask = true;
};

struct MatchRecord {
  std::size_t det_index = 0;
  std::optional<std::size_t> gt_index;
  double iou = 0.0;  // overlap with the matched (or best) ground truth
  bool true_positive = false;
  // The deciding IoU equals the threshold exactly.
  bool at_threshold = false;
};

/// Greedy PASCAL-style matching. Within each (image, class), detections are
/// visited by descending score and each takes the unmatched ground truth of
/// highest IoU that passes the threshold; later hits on a taken ground truth
/// are false positives. Ordering ties are broken by record content, so the
/// result does not depend on input order. Records are returned in det order.
///
/// Throws ContractError in mask mode when a record lacks a mask or the masks
/// of one image differ in size.
std::vector<MatchRecord> match_detections(std::span<const Detection> dets,
                                          std::span<const GroundTruth> gts,
                                          double iou_threshold, MatchMode mode,
                                          bool strict = false);

/// A ranked true/false-positive list.
struct RankedHit {
  double score = 0.0;
  bool true_positive = false;
};

struct PrPoint {
  double recall = 0.0;
  double precision = 0.0;
};

/// Raw precision/recall after each ranked hit.
std::vector<PrPoint> precision_recall(std::span<const RankedHit> ranked, std::size_t n_gt);

/// Area under the interpolated precision-recall curve of an already ranked
/// list. nullopt when there is no ground truth and no detection (AP is
/// undefined); 0 when there is no ground truth but some detections.
std::optional<double> average_precision(std::span<const RankedHit> ranked, std::size_t n_gt,
                                        Interpolation interp = Interpolation::AllPoints);

struct ClassResult {
  int class_id = 0;
  std::size_t n_gt = 0;
  std::size_t n_det = 0;
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  std::optional<double> ap;
  std::vector<PrPoint> curve;
};

struct TaskReport {
  std::vector<ClassResult> classes;  // ascending class id
  // Mean AP over classes that have ground truth; 0 when there are none.
  double map = 0.0;
  std::vector<MatchRecord> matches;
  std::size_t at_threshold = 0;
};

struct EvalReport {
  std::optional<TaskReport> bbox;
  std::optional<TaskReport> mask;
  // Detection image ids that have no ground truth at all.
  std::vector<std::string> unknown_images;
};

/// Match and score detections for the enabled tasks. Mask evaluation is
/// skipped (report.mask empty) unless every detection and ground truth has a
/// mask.
EvalReport evaluate(std::span<const Detection> dets, std::span<const GroundTruth> gts,
                    const EvalConfig& cfg = {});

/// Human-readable summary.
std::string format_report(const EvalReport& r);

/// "key=value" lines in a fixed key order.
std::string format_results(const EvalReport& r);

}  // namespace xdefect
