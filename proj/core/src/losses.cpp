#include "xdefect/losses.hpp"

#include <algorithm>
#include <cmath>

#include "xdefect/errors.hpp"

namespace xdefect {

SmoothL1 smooth_l1(double x) {
  const double ax = std::abs(x);
  if (ax < 1.0) return {0.5 * x * x, x};
  return {ax - 0.5, x > 0.0 ? 1.0 : -1.0};
}

LossValue location_loss(std::span<const double> pred, std::span<const double> target,
                        int p_star) {
  if (pred.size() != 4 || target.size() != 4) {
    throw ContractError("location_loss: pred and target must both have 4 entries");
  }
  LossValue out;
  out.gradient.assign(pred.size(), 0.0);
  if (p_star == 0) return out;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    const SmoothL1 s = smooth_l1(target[i] - pred[i]);
    out.value += s.value;
    out.gradient[i] = -s.derivative;
  }
  return out;
}

LossValue classification_loss(double prob, int p_star) {
  const double p = std::clamp(prob, kProbabilityEpsilon, 1.0 - kProbabilityEpsilon);
  LossValue out;
  if (p_star != 0) {
    out.value = -std::log(p);
    out.gradient = {-1.0 / p};
  } else {
    out.value = -std::log1p(-p);
    out.gradient = {1.0 / (1.0 - p)};
  }
  return out;
}

void LossWeights::validate() const {
  if (!(std::isfinite(alpha) && std::isfinite(beta) && alpha >= 0.0 && beta >= 0.0)) {
    throw ConfigError("loss weights must be finite and non-negative");
  }
  if (alpha == 0.0 && beta == 0.0) throw ConfigError("loss weights are both zero");
}

LossValue total_loss(const LossValue& loc, const LossValue& cls, const LossWeights& w) {
  w.validate();
  LossValue out;
  out.value = w.alpha * loc.value + w.beta * cls.value;
  out.gradient.reserve(loc.gradient.size() + cls.gradient.size());
  for (double g : loc.gradient) out.gradient.push_back(w.alpha * g);
  for (double g : cls.gradient) out.gradient.push_back(w.beta * g);
  return out;
}

LossValue mean_loss(std::span<const LossValue> per_anchor) {
  LossValue out;
  if (per_anchor.empty()) return out;
  const double inv = 1.0 / static_cast<double>(per_anchor.size());
  for (const LossValue& l : per_anchor) {
    out.value += l.value;
    for (double g : l.gradient) out.gradient.push_back(g * inv);
  }
  out.value *= inv;
  return out;
}

MaskLogits::MaskLogits(int classes_, int height_, int width_, double fill)
    : classes(classes_), height(height_), width(width_) {
  if (classes < 1 || height < 1 || width < 1) {
    throw ContractError("MaskLogits: dimensions must be positive");
  }
  data.assign(static_cast<std::size_t>(classes) * slice_size(), fill);
}

std::span<double> MaskLogits::slice(int k) {
  return std::span<double>(data).subspan(static_cast<std::size_t>(k) * slice_size(),
                                         slice_size());
}

std::span<const double> MaskLogits::slice(int k) const {
  return std::span<const double>(data).subspan(static_cast<std::size_t>(k) * slice_size(),
                                               slice_size());
}

LossValue mask_loss(const MaskLogits& logits, std::span<const double> gt, int roi_class) {
  if (logits.classes < 1 ||
      logits.data.size() != static_cast<std::size_t>(logits.classes) * logits.slice_size()) {
    throw ContractError("mask_loss: logits storage does not match its shape");
  }
  if (gt.size() != logits.slice_size()) {
    throw ContractError("mask_loss: ground-truth mask shape differs from logits");
  }
  if (roi_class < 0 || roi_class >= logits.classes) {
    throw ContractError("mask_loss: RoI class outside the mask head's classes");
  }
  LossValue out;
  out.gradient.assign(logits.data.size(), 0.0);
  const auto z = logits.slice(roi_class);
  const std::size_t offset = static_cast<std::size_t>(roi_class) * logits.slice_size();
  const double inv = 1.0 / static_cast<double>(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) {
    const double y = gt[i];
    // log(1 + e^z) - y z, written to stay finite for large |z|.
    const double e = std::exp(-std::abs(z[i]));
    out.value += std::max(z[i], 0.0) - z[i] * y + std::log1p(e);
    const double sig = z[i] >= 0.0 ? 1.0 / (1.0 + e) : e / (1.0 + e);
    out.gradient[offset + i] = (sig - y) * inv;
  }
  out.value *= inv;
  return out;
}

}  // namespace xdefect
