#pragma once

#include <span>
#include <vector>

namespace xdefect {

/// Loss value together with its gradient over the differentiated inputs.
struct LossValue {
  double value = 0.0;
  std::vector<double> gradient;
};

struct SmoothL1 {
  double value;
  double derivative;
};

/// 0.5 x^2 inside |x| < 1, |x| - 0.5 outside. C1 at |x| = 1.
SmoothL1 smooth_l1(double x);

/// p* * sum_i smooth_l1(target_i - pred_i). Gradient is with respect to
/// `pred`, and both value and gradient are exactly zero when p* = 0.
/// Throws ContractError unless both spans have 4 entries.
LossValue location_loss(std::span<const double> pred, std::span<const double> target,
                        int p_star);

inline constexpr double kProbabilityEpsilon = 1e-12;

/// Binary cross-entropy of an objectness probability against p* in {0, 1}.
/// The probability is clamped to [eps, 1 - eps] first; the single gradient
/// entry is d/dp evaluated at the clamped probability.
LossValue classification_loss(double prob, int p_star);

struct LossWeights {
  double alpha = 1.0;  // localization
  double beta = 1.0;   // classification

  /// Throws ConfigError on negative or non-finite weights, or both zero.
  void validate() const;
};

/// alpha * loc + beta * cls. The gradient is loc's gradient scaled by alpha
/// followed by cls's gradient scaled by beta.
LossValue total_loss(const LossValue& loc, const LossValue& cls,
                     const LossWeights& w = {});

/// Mean over per-anchor losses. Gradients are concatenated in input order and
/// scaled by 1/N, so they stay with respect to each anchor's own inputs.
LossValue mean_loss(std::span<const LossValue> per_anchor);

/// Per-RoI mask head output: one logits grid per class, stored class-major
/// then row-major.
struct MaskLogits {
  int classes = 0;
  int height = 28;
  int width = 28;
  std::vector<double> data;

  MaskLogits() = default;
  MaskLogits(int classes, int height, int width, double fill = 0.0);

  std::size_t slice_size() const {
    return static_cast<std::size_t>(height) * static_cast<std::size_t>(width);
  }
  std::span<double> slice(int k);
  std::span<const double> slice(int k) const;
};

/// Average per-pixel sigmoid binary cross-entropy on the slice of the RoI's
/// ground-truth class. `gt` holds height*width values in {0, 1}. The gradient
/// has one entry per element of `logits.data` and is zero outside the
/// selected slice.
///
/// Throws ContractError on a shape mismatch or an out-of-range class.
LossValue mask_loss(const MaskLogits& logits, std::span<const double> gt, int roi_class);

}  // namespace xdefect
