#pragma once

#include <cstdint>
#include <vector>

#include "xdefect/image.hpp"

namespace xdefect {

/// Mapping between original and preprocessed image coordinates.
struct ScaleRecord {
  double scale_x = 1.0;
  double scale_y = 1.0;
  int content_w = 0;  // resized image size before padding
  int content_h = 0;
  int target = 0;

  Box to_original(const Box& b) const {
    return {b.x1 / scale_x, b.y1 / scale_y, b.x2 / scale_x, b.y2 / scale_y};
  }
  Box to_preprocessed(const Box& b) const {
    return {b.x1 * scale_x, b.y1 * scale_y, b.x2 * scale_x, b.y2 * scale_y};
  }
};

struct Preprocessed {
  AnnotatedImage image;
  ScaleRecord record;
};

/// Shrink so the longest edge equals `target` (smaller images are only
/// upscaled when `allow_upscale` is set), then zero-pad right and bottom to
/// target x target. Boxes and masks follow the image.
Preprocessed resize_and_pad(const AnnotatedImage& a, int target = 768,
                            bool allow_upscale = false);

enum class FlipAxis { Horizontal, Vertical };

/// Mirror image, boxes and masks. Horizontal maps (x1, y1, x2, y2) to
/// (W - x2, y1, W - x1, y2).
AnnotatedImage flip(const AnnotatedImage& a, FlipAxis axis);

/// Normalized 1-D Gaussian taps for offsets -r..r with r = ceil(3 sigma).
std::vector<double> gaussian_kernel(double sigma);

/// Separable Gaussian blur with reflected borders (pixel `-1` mirrors pixel
/// `1`). A constant image comes back bit-identical.
GrayImage gaussian_blur(const GrayImage& img, double sigma = 1.0);

/// Add zero-mean normal noise with sigma = fraction * (max - min) of the
/// input, then clip to the input's [min, max]. Images with no dynamic range
/// and fraction 0 are returned unchanged.
GrayImage gaussian_noise(const GrayImage& img, double fraction, std::uint64_t seed);

/// Minimum share of a box's area that must survive a crop for the box to be
/// kept.
inline constexpr double kCropKeepFraction = 0.25;

/// Random window whose sides are crop_fraction of the image's (rounded,
/// at least 1 px), placed uniformly at an integer offset. Boxes are clipped
/// and shifted; boxes keeping less than 25% of their area are dropped along
/// with their masks.
AnnotatedImage random_crop(const AnnotatedImage& a, double crop_fraction, std::uint64_t seed);

/// Crop to a fixed window; the deterministic core of random_crop.
AnnotatedImage crop_window(const AnnotatedImage& a, int x0, int y0, int w, int h);

struct AugmentSpec {
  bool horizontal_flip = false;  // each flip fires with probability 1/2
  bool vertical_flip = false;
  bool gaussian_blur = false;
  bool gaussian_noise = false;
  bool random_crop = false;
  double blur_sigma = 1.0;
  double noise_fraction = 0.05;
  double crop_fraction = 0.8;
  std::uint64_t seed = 0;

  /// Throws ConfigError on sigma <= 0, negative noise or a crop fraction
  /// outside (0, 1].
  void validate() const;
};

enum class Phase { Train, Eval };

/// Apply the enabled augmentations in the order crop, flips, blur, noise.
/// The evaluation phase returns the input untouched.
AnnotatedImage augment(const AnnotatedImage& a, const AugmentSpec& spec, Phase phase);

}  // namespace xdefect
