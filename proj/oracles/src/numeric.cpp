#include "xdefect/oracles/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace xdefect::oracles {

std::vector<double> central_difference(const std::function<double(std::span<const double>)>& f,
                                       std::span<const double> x, double step) {
  std::vector<double> probe(x.begin(), x.end());
  std::vector<double> grad(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    probe[i] = x[i] + step;
    const double up = f(probe);
    probe[i] = x[i] - step;
    const double down = f(probe);
    probe[i] = x[i];
    grad[i] = (up - down) / (2.0 * step);
  }
  return grad;
}

double relative_error(double a, double b) {
  if (a == b) return 0.0;
  return std::abs(a - b) / std::max(std::abs(a), std::abs(b));
}

double bilinear(const FeatureMap& fm, double x, double y, int c) {
  const double cx = std::min(std::max(x, 0.0), fm.width - 1.0);
  const double cy = std::min(std::max(y, 0.0), fm.height - 1.0);
  double acc = 0.0;
  // Sum over the cells whose tent function covers the point.
  const int j_lo = std::max(0, static_cast<int>(cy) - 1);
  const int i_lo = std::max(0, static_cast<int>(cx) - 1);
  for (int j = j_lo; j < std::min(fm.height, j_lo + 3); ++j) {
    const double wy = 1.0 - std::abs(cy - j);
    if (wy <= 0.0) continue;
    for (int i = i_lo; i < std::min(fm.width, i_lo + 3); ++i) {
      const double wx = 1.0 - std::abs(cx - i);
      if (wx <= 0.0) continue;
      acc += wx * wy * fm.at(c, j, i);
    }
  }
  return acc;
}

namespace {

struct Grid {
  double x0, y0, bin_w, bin_h;
};

Grid roi_grid(const FeatureMap& fm, const Box& roi, int out_h, int out_w) {
  return {roi.x1 / fm.stride, roi.y1 / fm.stride, (roi.x2 - roi.x1) / fm.stride / out_w,
          (roi.y2 - roi.y1) / fm.stride / out_h};
}

}  // namespace

std::vector<double> reference_roi_align(const FeatureMap& fm, const Box& roi, int out_h, int out_w,
                                        int sampling_ratio) {
  const Grid g = roi_grid(fm, roi, out_h, out_w);
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(out_h) * out_w * fm.channels);
  for (int by = 0; by < out_h; ++by) {
    for (int bx = 0; bx < out_w; ++bx) {
      for (int c = 0; c < fm.channels; ++c) {
        double acc = 0.0;
        for (int k = 0; k < sampling_ratio * sampling_ratio; ++k) {
          const double fx = (2.0 * (k % sampling_ratio) + 1.0) / (2.0 * sampling_ratio);
          const double fy = (2.0 * (k / sampling_ratio) + 1.0) / (2.0 * sampling_ratio);
          acc += bilinear(fm, g.x0 + (bx + fx) * g.bin_w, g.y0 + (by + fy) * g.bin_h, c);
        }
        out.push_back(acc / (sampling_ratio * sampling_ratio));
      }
    }
  }
  return out;
}

std::vector<double> monte_carlo_roi_align(const FeatureMap& fm, const Box& roi, int out_h,
                                          int out_w, int samples_per_bin, std::uint64_t seed) {
  const Grid g = roi_grid(fm, roi, out_h, out_w);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  // Jittered strata: one uniform sample in each cell of a near-square grid,
  // then plain uniform samples for any remainder.
  const int side = std::max(1, static_cast<int>(std::sqrt(static_cast<double>(samples_per_bin))));
  const int strata = side * side;
  std::vector<double> out(static_cast<std::size_t>(out_h) * out_w * fm.channels, 0.0);
  for (int by = 0; by < out_h; ++by) {
    for (int bx = 0; bx < out_w; ++bx) {
      const std::size_t base = (static_cast<std::size_t>(by) * out_w + bx) * fm.channels;
      for (int s = 0; s < samples_per_bin; ++s) {
        double u = unit(rng), v = unit(rng);
        if (s < strata) {
          u = ((s % side) + u) / side;
          v = ((s / side) + v) / side;
        }
        const double x = g.x0 + (bx + u) * g.bin_w;
        const double y = g.y0 + (by + v) * g.bin_h;
        for (int c = 0; c < fm.channels; ++c) out[base + c] += bilinear(fm, x, y, c);
      }
      for (int c = 0; c < fm.channels; ++c) out[base + c] /= samples_per_bin;
    }
  }
  return out;
}

}  // namespace xdefect::oracles
