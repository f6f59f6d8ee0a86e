#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "xdefect/box.hpp"
#include "xdefect/roi_align.hpp"

namespace xdefect::oracles {

/// Central finite-difference gradient of f at x.
std::vector<double> central_difference(const std::function<double(std::span<const double>)>& f,
                                       std::span<const double> x, double step = 1e-5);

/// Relative error |a - b| / max(|a|, |b|), 0 when a == b.
double relative_error(double a, double b);

/// Bilinear lookup with border clamping, written independently of the
/// library routine.
double bilinear(const FeatureMap& fm, double x, double y, int c);

/// RoIAlign reference that lists every sample point and its weight
/// explicitly. Output is indexed as AlignedFeatures.
std::vector<double> reference_roi_align(const FeatureMap& fm, const Box& roi, int out_h, int out_w,
                                        int sampling_ratio);

/// Bin averages from `samples_per_bin` uniformly scattered bilinear samples,
/// drawn with jittered stratification to keep the estimator's own noise low.
std::vector<double> monte_carlo_roi_align(const FeatureMap& fm, const Box& roi, int out_h,
                                          int out_w, int samples_per_bin, std::uint64_t seed);

}  // namespace xdefect::oracles
