#include "xdefect/mask.hpp"

#include <algorithm>
#include <cmath>

#include "xdefect/errors.hpp"

namespace xdefect {

FloatMask::FloatMask(int width_, int height_, double fill)
    : width(width_), height(height_) {
  if (width < 1 || height < 1) throw ContractError("FloatMask: dimensions must be positive");
  values.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill);
}

BinaryMask::BinaryMask(int width, int height) : width_(width), height_(height) {
  if (width < 0 || height < 0) throw ContractError("BinaryMask: negative dimensions");
  bits_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), 0);
}

std::size_t BinaryMask::count() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

Box BinaryMask::bounding_box() const {
  int x_min = width_, y_min = height_, x_max = -1, y_max = -1;
  for (int y = 0; y < height_; ++y) {
    for (int x = 0; x < width_; ++x) {
      if (!at(x, y)) continue;
      x_min = std::min(x_min, x);
      x_max = std::max(x_max, x);
      y_min = std::min(y_min, y);
      y_max = std::max(y_max, y);
    }
  }
  if (x_max < 0) return {};
  return {static_cast<double>(x_min), static_cast<double>(y_min),
          static_cast<double>(x_max + 1), static_cast<double>(y_max + 1)};
}

BinaryMask BinaryMask::crop(int x0, int y0, int w, int h) const {
  BinaryMask out(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (get(x0 + x, y0 + y)) out.set(x, y);
    }
  }
  return out;
}

double sample_float_mask(const FloatMask& m, double u, double v) {
  const double x = std::clamp(u - 0.5, 0.0, static_cast<double>(m.width - 1));
  const double y = std::clamp(v - 0.5, 0.0, static_cast<double>(m.height - 1));
  const int x0 = static_cast<int>(std::floor(x));
  const int y0 = static_cast<int>(std::floor(y));
  const int x1 = std::min(x0 + 1, m.width - 1);
  const int y1 = std::min(y0 + 1, m.height - 1);
  const double fx = x - x0;
  const double fy = y - y0;
  const double top = m.at(x0, y0) * (1.0 - fx) + m.at(x1, y0) * fx;
  const double bottom = m.at(x0, y1) * (1.0 - fx) + m.at(x1, y1) * fx;
  return top * (1.0 - fy) + bottom * fy;
}

BinaryMask paste_mask(const FloatMask& m, const Box& roi, int image_w, int image_h,
                      double threshold) {
  if (image_w < 0 || image_h < 0) throw ContractError("paste_mask: negative image size");
  if (m.width < 1 || m.height < 1 ||
      m.values.size() != static_cast<std::size_t>(m.width) * static_cast<std::size_t>(m.height)) {
    throw ContractError("paste_mask: malformed float mask");
  }
  require_valid(roi, "paste_mask");
  BinaryMask out(image_w, image_h);

  // Pixels whose centres fall inside [x1, x2) x [y1, y2).
  auto first_pixel = [](double edge, int limit) {
    return static_cast<int>(std::clamp(std::ceil(edge - 0.5), 0.0, static_cast<double>(limit)));
  };
  const int px0 = first_pixel(roi.x1, image_w);
  const int py0 = first_pixel(roi.y1, image_h);
  const int px1 = first_pixel(roi.x2, image_w);
  const int py1 = first_pixel(roi.y2, image_h);
  const double sx = m.width / roi.width();
  const double sy = m.height / roi.height();
  for (int py = py0; py < py1; ++py) {
    const double v = (py + 0.5 - roi.y1) * sy;
    for (int px = px0; px < px1; ++px) {
      const double u = (px + 0.5 - roi.x1) * sx;
      if (sample_float_mask(m, u, v) >= threshold) out.set(px, py);
    }
  }
  return out;
}

double mask_iou(const BinaryMask& a, const BinaryMask& b) {
  if (a.width() != b.width() || a.height() != b.height()) {
    throw ContractError("mask_iou: mask dimensions differ");
  }
  std::size_t inter = 0, uni = 0;
  const auto& ba = a.bits();
  const auto& bb = b.bits();
  for (std::size_t i = 0; i < ba.size(); ++i) {
    inter += static_cast<std::size_t>(ba[i] & bb[i]);
    uni += static_cast<std::size_t>(ba[i] | bb[i]);
  }
  if (uni == 0) return 1.0;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

}  // namespace xdefect
