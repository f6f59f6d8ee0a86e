#pragma once

#include <cstddef>
#include <vector>

#include "xdefect/box.hpp"
#include "xdefect/mask.hpp"

namespace xdefect::oracles {

/// 8-connected components by breadth-first flood fill. Components are
/// numbered in raster order of their first pixel.
struct FloodLabeling {
  int width = 0;
  int height = 0;
  std::vector<int> labels;  // -1 for background
  std::vector<Box> boxes;
  std::vector<std::size_t> pixel_counts;

  std::size_t count() const { return boxes.size(); }
  int label(int x, int y) const { return labels[static_cast<std::size_t>(y) * width + x]; }
};

FloodLabeling flood_fill(const BinaryMask& m);

/// Normalized sampled 1-D Gaussian on [-ceil(3 sigma), ceil(3 sigma)].
std::vector<double> sampled_gaussian(double sigma);

/// Response of a separable Gaussian blur to a unit impulse at (cx, cy) on a
/// w x h canvas, assuming the kernel support stays inside the canvas.
std::vector<double> gaussian_impulse_response(double sigma, int w, int h, int cx, int cy);

}  // namespace xdefect::oracles
