#include "xdefect/anchors.hpp"

#include <cmath>

#include "xdefect/errors.hpp"

namespace xdefect {

namespace {

bool all_positive(const std::vector<double>& v) {
  for (double x : v) {
    if (!(std::isfinite(x) && x > 0.0)) return false;
  }
  return true;
}

}  // namespace

void AnchorConfig::validate() const {
  if (scales.empty()) throw ConfigError("anchor config: no scales");
  if (aspect_ratios.empty()) throw ConfigError("anchor config: no aspect ratios");
  if (!all_positive(scales)) throw ConfigError("anchor config: scales must be positive");
  if (!all_positive(aspect_ratios)) {
    throw ConfigError("anchor config: aspect ratios must be positive");
  }
  if (!(base_size > 0.0) || !(feature_stride > 0.0)) {
    throw ConfigError("anchor config: base size and stride must be positive");
  }
}

AnchorSet generate_anchors(const AnchorConfig& cfg, int feat_w, int feat_h) {
  cfg.validate();
  if (feat_w < 1 || feat_h < 1) {
    throw ContractError("generate_anchors: feature map must be at least 1x1");
  }

  // Shapes are shared by every location.
  struct Shape {
    double w, h;
    int scale_index, aspect_index;
  };
  std::vector<Shape> shapes;
  shapes.reserve(cfg.anchors_per_location());
  for (std::size_t s = 0; s < cfg.scales.size(); ++s) {
    const double side = cfg.base_size * cfg.scales[s];
    for (std::size_t r = 0; r < cfg.aspect_ratios.size(); ++r) {
      const double k = std::sqrt(cfg.aspect_ratios[r]);
      shapes.push_back({side * k, side / k, static_cast<int>(s), static_cast<int>(r)});
    }
  }

  AnchorSet out;
  out.reserve(shapes.size() * static_cast<std::size_t>(feat_w) *
              static_cast<std::size_t>(feat_h));
  for (int gy = 0; gy < feat_h; ++gy) {
    const double cy = (gy + cfg.center_offset) * cfg.feature_stride;
    for (int gx = 0; gx < feat_w; ++gx) {
      const double cx = (gx + cfg.center_offset) * cfg.feature_stride;
      for (const Shape& s : shapes) {
        out.push_back({Box::from_center(cx, cy, s.w, s.h), s.scale_index,
                       s.aspect_index, gx, gy});
      }
    }
  }
  return out;
}

BoxEncoding encode_box(const Box& b, const Box& anchor, EncodingVariant variant) {
  require_valid(b, "encode_box");
  require_valid(anchor, "encode_box anchor");
  const double wa = anchor.width();
  const double ha = anchor.height();
  BoxEncoding e;
  e.variant = variant;
  switch (variant) {
    case EncodingVariant::AbsoluteLog:
      e.t = {b.cx() / wa, b.cy() / ha, std::log(b.width()), std::log(b.height())};
      break;
    case EncodingVariant::AnchorRelative:
      e.t = {(b.cx() - anchor.cx()) / wa, (b.cy() - anchor.cy()) / ha,
             std::log(b.width() / wa), std::log(b.height() / ha)};
      break;
  }
  return e;
}

Box decode_box(const BoxEncoding& e, const Box& anchor) {
  require_valid(anchor, "decode_box anchor");
  for (double v : e.t) {
    if (!std::isfinite(v)) throw DomainError("decode_box: non-finite encoding");
  }
  const double wa = anchor.width();
  const double ha = anchor.height();
  double cx = 0, cy = 0, w = 0, h = 0;
  switch (e.variant) {
    case EncodingVariant::AbsoluteLog:
      cx = e.t[0] * wa;
      cy = e.t[1] * ha;
      w = std::exp(e.t[2]);
      h = std::exp(e.t[3]);
      break;
    case EncodingVariant::AnchorRelative:
      cx = anchor.cx() + e.t[0] * wa;
      cy = anchor.cy() + e.t[1] * ha;
      w = wa * std::exp(e.t[2]);
      h = ha * std::exp(e.t[3]);
      break;
  }
  if (!(std::isfinite(w) && std::isfinite(h) && w > 0.0 && h > 0.0)) {
    throw DomainError("decode_box: decoded size is not finite and positive");
  }
  const Box out = Box::from_center(cx, cy, w, h);
  if (!out.valid()) throw DomainError("decode_box: decoded box is degenerate");
  return out;
}

}  // namespace xdefect
