#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "xdefect/box.hpp"

namespace xdefect {

/// Row-major grid of probabilities in [0, 1]; the mask head emits 28x28.
struct FloatMask {
  int width = 28;
  int height = 28;
  std::vector<double> values;

  FloatMask() : values(28 * 28, 0.0) {}
  FloatMask(int width, int height, double fill = 0.0);

  double& at(int x, int y) { return values[static_cast<std::size_t>(y) * width + x]; }
  double at(int x, int y) const { return values[static_cast<std::size_t>(y) * width + x]; }
};

/// Row-major 0/1 mask.
class BinaryMask {
 public:
  BinaryMask() = default;
  BinaryMask(int width, int height);

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t size() const { return bits_.size(); }

  bool at(int x, int y) const { return bits_[index(x, y)] != 0; }
  void set(int x, int y, bool v = true) { bits_[index(x, y)] = v ? 1 : 0; }
  /// Bounds-checked read; anything outside the mask is background.
  bool get(int x, int y) const {
    return x >= 0 && y >= 0 && x < width_ && y < height_ && at(x, y);
  }

  std::size_t count() const;
  bool empty() const { return count() == 0; }

  const std::vector<std::uint8_t>& bits() const { return bits_; }

  /// Tight half-open bounding box of the foreground; an all-zero (invalid)
  /// box when the mask is empty.
  Box bounding_box() const;

  /// Copy of the window [x0, x0+w) x [y0, y0+h); pixels outside the source
  /// are background.
  BinaryMask crop(int x0, int y0, int w, int h) const;

  friend bool operator==(const BinaryMask&, const BinaryMask&) = default;

 private:
  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(x);
  }
  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> bits_;
};

/// Bilinear value of `m` at continuous mask coordinates (u, v), where cell
/// (i, j) has its centre at (i + 0.5, j + 0.5). Clamped at the border.
double sample_float_mask(const FloatMask& m, double u, double v);

/// Resize a mask-head output to the RoI's pixel extent, binarize with
/// value >= threshold and paste into an image-frame mask. A pixel belongs to
/// the RoI when its centre lies inside the RoI. An RoI entirely outside the
/// image yields an empty mask.
BinaryMask paste_mask(const FloatMask& m, const Box& roi, int image_w, int image_h,
                      double threshold = 0.5);

/// Pixel IoU. Both empty gives 1, exactly one empty gives 0. Throws
/// ContractError when the dimensions differ.
double mask_iou(const BinaryMask& a, const BinaryMask& b);

/// Column-major run-length counts, alternating background/foreground and
/// starting with background (a leading 0 when pixel (0,0) is foreground).
std::vector<std::uint32_t> rle_encode(const BinaryMask& m);

/// Inverse of rle_encode. Throws ContractError when the counts do not sum to
/// width*height.
BinaryMask rle_decode(const std::vector<std::uint32_t>& counts, int width, int height);

/// Text form: "<width> <height>\n" then the counts separated by single spaces
/// and a trailing newline.
std::string rle_to_string(const BinaryMask& m);
BinaryMask rle_from_string(const std::string& text);

void write_rle_file(const std::string& path, const BinaryMask& m);
BinaryMask read_rle_file(const std::string& path);

}  // namespace xdefect
