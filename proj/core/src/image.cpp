#include "xdefect/image.hpp"

#include <algorithm>
#include <cmath>

#include "xdefect/errors.hpp"

namespace xdefect {

GrayImage::GrayImage(int width_, int height_, double fill) : width(width_), height(height_) {
  if (width < 0 || height < 0) throw ContractError("GrayImage: negative dimensions");
  pixels.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill);
}

double GrayImage::min_value() const {
  return pixels.empty() ? 0.0 : *std::min_element(pixels.begin(), pixels.end());
}

double GrayImage::max_value() const {
  return pixels.empty() ? 0.0 : *std::max_element(pixels.begin(), pixels.end());
}

void AnnotatedImage::validate() const {
  if (image.width < 1 || image.height < 1) throw ContractError("annotated image is empty");
  for (const LabeledBox& lb : boxes) {
    const Box& b = lb.box;
    if (!b.valid() || b.x1 < 0 || b.y1 < 0 || b.x2 > image.width || b.y2 > image.height) {
      throw ContractError("annotated image: box outside the image bounds");
    }
  }
  if (!masks.empty()) {
    if (masks.size() != boxes.size()) {
      throw ContractError("annotated image: masks are not parallel to boxes");
    }
    for (const BinaryMask& m : masks) {
      if (m.width() != image.width || m.height() != image.height) {
        throw ContractError("annotated image: mask size differs from image size");
      }
    }
  }
}

GrayImage resize_bilinear(const GrayImage& img, int out_w, int out_h) {
  if (out_w < 1 || out_h < 1) throw ContractError("resize: output size must be positive");
  if (img.width < 1 || img.height < 1) throw ContractError("resize: empty input image");
  if (out_w == img.width && out_h == img.height) return img;
  GrayImage out(out_w, out_h);
  const double sx = static_cast<double>(img.width) / out_w;
  const double sy = static_cast<double>(img.height) / out_h;
  for (int y = 0; y < out_h; ++y) {
    const double fy = std::clamp((y + 0.5) * sy - 0.5, 0.0, img.height - 1.0);
    const int y0 = static_cast<int>(fy);
    const int y1 = std::min(y0 + 1, img.height - 1);
    const double wy = fy - y0;
    for (int x = 0; x < out_w; ++x) {
      const double fx = std::clamp((x + 0.5) * sx - 0.5, 0.0, img.width - 1.0);
      const int x0 = static_cast<int>(fx);
      const int x1 = std::min(x0 + 1, img.width - 1);
      const double wx = fx - x0;
      const double top = img.at(x0, y0) * (1 - wx) + img.at(x1, y0) * wx;
      const double bottom = img.at(x0, y1) * (1 - wx) + img.at(x1, y1) * wx;
      out.at(x, y) = top * (1 - wy) + bottom * wy;
    }
  }
  return out;
}

BinaryMask resize_nearest(const BinaryMask& m, int out_w, int out_h) {
  if (out_w < 0 || out_h < 0) throw ContractError("resize: negative output size");
  if (out_w == m.width() && out_h == m.height()) return m;
  BinaryMask out(out_w, out_h);
  if (m.width() == 0 || m.height() == 0) return out;
  const double sx = static_cast<double>(m.width()) / out_w;
  const double sy = static_cast<double>(m.height()) / out_h;
  for (int y = 0; y < out_h; ++y) {
    const int sy_i = std::min(static_cast<int>((y + 0.5) * sy), m.height() - 1);
    for (int x = 0; x < out_w; ++x) {
      const int sx_i = std::min(static_cast<int>((x + 0.5) * sx), m.width() - 1);
      if (m.at(sx_i, sy_i)) out.set(x, y);
    }
  }
  return out;
}

}  // namespace xdefect
