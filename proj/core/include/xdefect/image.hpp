#pragma once

#include <string>
#include <vector>

#include "xdefect/box.hpp"
#include "xdefect/mask.hpp"

namespace xdefect {

/// Single-channel image, row-major. Values are usually 0..255 (or 0..65535
/// for 16-bit sources) but any finite range is allowed.
struct GrayImage {
  int width = 0;
  int height = 0;
  std::vector<double> pixels;

  GrayImage() = default;
  GrayImage(int width, int height, double fill = 0.0);

  double& at(int x, int y) { return pixels[static_cast<std::size_t>(y) * width + x]; }
  double at(int x, int y) const { return pixels[static_cast<std::size_t>(y) * width + x]; }

  double min_value() const;
  double max_value() const;

  friend bool operator==(const GrayImage&, const GrayImage&) = default;
};

struct LabeledBox {
  Box box;
  int class_id = 1;
  friend bool operator==(const LabeledBox&, const LabeledBox&) = default;
};

/// Image with ground truth. `masks` is either empty or parallel to `boxes`,
/// each mask in the image frame.
struct AnnotatedImage {
  GrayImage image;
  std::vector<LabeledBox> boxes;
  std::vector<BinaryMask> masks;

  /// Throws ContractError when a box leaves the image or a mask's size
  /// disagrees with the image.
  void validate() const;

  friend bool operator==(const AnnotatedImage&, const AnnotatedImage&) = default;
};

/// Bilinear resize with pixel-centre alignment.
GrayImage resize_bilinear(const GrayImage& img, int out_w, int out_h);

/// Nearest-neighbour resize of a mask, sampling at pixel centres.
BinaryMask resize_nearest(const BinaryMask& m, int out_w, int out_h);

}  // namespace xdefect
