#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace xdefect::oracles {

struct SuiteResult {
  std::string name;
  bool passed = false;
  std::size_t cases = 0;
  double max_deviation = 0.0;
  double tolerance = 0.0;
  double seconds = 0.0;
  double time_limit = 0.0;  // 0 means no limit
  std::string detail;
};

struct SuiteOptions {
  std::uint64_t seed = 20240601;
  // Added to the smooth-L1 slope seen by the gradient check. A negative
  // control for the checker itself; leave at 0.
  double smooth_l1_slope_perturbation = 0.0;
};

/// Library IoU vs pixel counting on integer boxes in [0, 64)^2.
SuiteResult iou_suite(const SuiteOptions& opt, std::size_t pairs = 10000);

/// decode(encode(b, a)) == b for both encoding variants.
SuiteResult encode_roundtrip_suite(const SuiteOptions& opt, std::size_t pairs = 1000);

/// Anchor count law on random grids and configs, plus the default layout.
SuiteResult anchor_count_suite(const SuiteOptions& opt, std::size_t configs = 10);

/// Analytic gradients vs central differences (step 1e-5).
SuiteResult smooth_l1_gradient_suite(const SuiteOptions& opt, std::size_t inputs = 100);
SuiteResult cross_entropy_gradient_suite(const SuiteOptions& opt, std::size_t inputs = 100);
SuiteResult mask_bce_gradient_suite(const SuiteOptions& opt, std::size_t inputs = 100);

/// Location loss vanishes for p* = 0; mask gradient vanishes off the GT slice.
SuiteResult loss_gating_suite(const SuiteOptions& opt, std::size_t inputs = 100);

/// RoIAlign on affine maps vs the affine value at the bin centroid.
SuiteResult roi_align_affine_suite(const SuiteOptions& opt, std::size_t cases = 100);
/// RoIAlign vs dense Monte-Carlo bin averages and the explicit 2x2 reference.
SuiteResult roi_align_monte_carlo_suite(const SuiteOptions& opt, std::size_t cases = 100);
/// Output is always out_h x out_w x channels.
SuiteResult roi_align_shape_suite(const SuiteOptions& opt, std::size_t cases = 100);

/// Border-following labels vs breadth-first flood fill.
SuiteResult border_following_suite(const SuiteOptions& opt, std::size_t masks = 500);

/// Greedy NMS vs repeated maximum search.
SuiteResult nms_suite(const SuiteOptions& opt, std::size_t instances = 200);

/// Every suite above, in a fixed order.
std::vector<SuiteResult> run_all_suites(const SuiteOptions& opt);

/// One line: "PASS name  cases=..  max_dev=.. tol=..  time=..s".
std::string format_suite(const SuiteResult& r);

}  // namespace xdefect::oracles
