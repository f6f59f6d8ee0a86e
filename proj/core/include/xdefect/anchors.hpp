#pragma once

#include <array>
#include <vector>

#include "xdefect/box.hpp"

namespace xdefect {

struct Anchor {
  Box box;
  int scale_index = 0;
  int aspect_index = 0;
  int grid_x = 0;
  int grid_y = 0;
};

using AnchorSet = std::vector<Anchor>;

/// Anchor grid parameters. Aspect ratios are width:height, so 0.5 is a tall
/// 1:2 box and 2.0 a wide 2:1 box. Every (scale, ratio) pair keeps the area
/// (base_size * scale)^2.
struct AnchorConfig {
  double base_size = 16.0;
  std::vector<double> scales{1.0, 2.0, 4.0, 8.0, 16.0};
  std::vector<double> aspect_ratios{1.0, 0.5, 2.0};
  double feature_stride = 16.0;
  // Anchor centre inside its cell, as a fraction of the stride. 0.5 puts the
  // centre of cell (gx, gy) at ((gx + 0.5) * stride, (gy + 0.5) * stride).
  double center_offset = 0.5;

  std::size_t anchors_per_location() const {
    return scales.size() * aspect_ratios.size();
  }

  /// Throws ConfigError on empty or non-positive scales, ratios, base size
  /// or stride.
  void validate() const;
};

/// Anchors for a feat_w x feat_h feature map, location-major: all shapes of
/// cell (0,0), then cell (1,0), ... Within a location the order is
/// scale-major, ratio-minor. Anchors are not clipped to the image.
AnchorSet generate_anchors(const AnchorConfig& cfg, int feat_w, int feat_h);

enum class EncodingVariant {
  // [xc/wa, yc/ha, log w, log h]: centre in anchor units, absolute log size.
  AbsoluteLog,
  // [(xc-xa)/wa, (yc-ya)/ha, log(w/wa), log(h/ha)], the Faster R-CNN form.
  AnchorRelative,
};

struct BoxEncoding {
  std::array<double, 4> t{};
  EncodingVariant variant = EncodingVariant::AnchorRelative;
};

BoxEncoding encode_box(const Box& b, const Box& anchor,
                       EncodingVariant variant = EncodingVariant::AnchorRelative);
inline BoxEncoding encode_box(
    const Box& b, const Anchor& anchor,
    EncodingVariant variant = EncodingVariant::AnchorRelative) {
  return encode_box(b, anchor.box, variant);
}

/// Inverse of encode_box for the encoding's variant. Throws DomainError if
/// the encoding is non-finite or the decoded size is not finite and positive.
Box decode_box(const BoxEncoding& t, const Box& anchor);
inline Box decode_box(const BoxEncoding& t, const Anchor& anchor) {
  return decode_box(t, anchor.box);
}

}  // namespace xdefect
