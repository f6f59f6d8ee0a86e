#include "xdefect/roi_align.hpp"

#include <algorithm>
#include <cmath>

#include "xdefect/errors.hpp"

namespace xdefect {

FeatureMap::FeatureMap(int width_, int height_, int channels_, double stride_, double fill)
    : width(width_), height(height_), channels(channels_), stride(stride_) {
  if (width < 1 || height < 1 || channels < 1) {
    throw ContractError("FeatureMap: dimensions must be at least 1");
  }
  if (!(stride > 0.0)) throw ContractError("FeatureMap: stride must be positive");
  data.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height) *
                  static_cast<std::size_t>(channels),
              fill);
}

double bilinear_sample(const FeatureMap& fm, double x, double y, int c) {
  x = std::clamp(x, 0.0, static_cast<double>(fm.width - 1));
  y = std::clamp(y, 0.0, static_cast<double>(fm.height - 1));
  const int x0 = static_cast<int>(std::floor(x));
  const int y0 = static_cast<int>(std::floor(y));
  const int x1 = std::min(x0 + 1, fm.width - 1);
  const int y1 = std::min(y0 + 1, fm.height - 1);
  const double fx = x - x0;
  const double fy = y - y0;
  const double top = fm.at(c, y0, x0) * (1.0 - fx) + fm.at(c, y0, x1) * fx;
  const double bottom = fm.at(c, y1, x0) * (1.0 - fx) + fm.at(c, y1, x1) * fx;
  return top * (1.0 - fy) + bottom * fy;
}

AlignedFeatures roi_align(const FeatureMap& fm, const Box& roi, const AlignConfig& cfg) {
  require_valid(roi, "roi_align");
  if (cfg.out_h < 1 || cfg.out_w < 1 || cfg.sampling_ratio < 1) {
    throw ConfigError("roi_align: output size and sampling ratio must be at least 1");
  }
  const double x0 = roi.x1 / fm.stride;
  const double y0 = roi.y1 / fm.stride;
  const double bin_w = roi.width() / fm.stride / cfg.out_w;
  const double bin_h = roi.height() / fm.stride / cfg.out_h;
  const int s = cfg.sampling_ratio;
  const double inv_count = 1.0 / static_cast<double>(s * s);

  AlignedFeatures out;
  out.out_h = cfg.out_h;
  out.out_w = cfg.out_w;
  out.channels = fm.channels;
  out.data.assign(static_cast<std::size_t>(cfg.out_h) * static_cast<std::size_t>(cfg.out_w) *
                      static_cast<std::size_t>(fm.channels),
                  0.0);

  std::size_t k = 0;
  for (int by = 0; by < cfg.out_h; ++by) {
    for (int bx = 0; bx < cfg.out_w; ++bx) {
      for (int c = 0; c < fm.channels; ++c) {
        double acc = 0.0;
        for (int iy = 0; iy < s; ++iy) {
          const double y = y0 + by * bin_h + (iy + 0.5) * bin_h / s;
          for (int ix = 0; ix < s; ++ix) {
            const double x = x0 + bx * bin_w + (ix + 0.5) * bin_w / s;
            acc += bilinear_sample(fm, x, y, c);
          }
        }
        out.data[k++] = acc * inv_count;
      }
    }
  }
  return out;
}

}  // namespace xdefect
