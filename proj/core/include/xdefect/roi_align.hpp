#pragma once

#include <span>
#include <vector>

#include "xdefect/box.hpp"

namespace xdefect {

/// Dense feature map, channel-major then row-major.
///
/// Feature cell (x, y) has its centre at (x, y) in feature coordinates, and
/// image coordinates map to feature coordinates by division by `stride`.
struct FeatureMap {
  int width = 0;
  int height = 0;
  int channels = 0;
  double stride = 1.0;
  std::vector<double> data;

  FeatureMap() = default;
  FeatureMap(int width, int height, int channels, double stride, double fill = 0.0);

  double& at(int c, int y, int x) { return data[index(c, y, x)]; }
  double at(int c, int y, int x) const { return data[index(c, y, x)]; }

 private:
  std::size_t index(int c, int y, int x) const {
    return (static_cast<std::size_t>(c) * static_cast<std::size_t>(height) +
            static_cast<std::size_t>(y)) *
               static_cast<std::size_t>(width) +
           static_cast<std::size_t>(x);
  }
};

struct AlignConfig {
  int out_h = 7;
  int out_w = 7;
  // Samples per bin along each axis; 2 gives the usual 2x2 pattern placed at
  // the bin's quarter points.
  int sampling_ratio = 2;
};

/// out_h x out_w x channels result, stored row-major with channels last.
struct AlignedFeatures {
  int out_h = 0;
  int out_w = 0;
  int channels = 0;
  std::vector<double> data;

  double at(int y, int x, int c) const {
    return data[(static_cast<std::size_t>(y) * static_cast<std::size_t>(out_w) +
                 static_cast<std::size_t>(x)) *
                    static_cast<std::size_t>(channels) +
                static_cast<std::size_t>(c)];
  }
};

/// Bilinear interpolation between the four nearest cell centres, with (x, y)
/// in feature coordinates. Points outside the map are clamped to the border.
double bilinear_sample(const FeatureMap& fm, double x, double y, int c);

/// Quantization-free RoI crop. The RoI (image coordinates) is divided by the
/// map stride without rounding, split into out_h x out_w bins, and each bin
/// averages sampling_ratio^2 regularly spaced bilinear samples.
///
/// Throws DomainError on a degenerate RoI and ConfigError on a bad config.
AlignedFeatures roi_align(const FeatureMap& fm, const Box& roi, const AlignConfig& cfg = {});

}  // namespace xdefect
