#pragma once

#include <span>
#include <vector>

#include "xdefect/box.hpp"
#include "xdefect/mask.hpp"

namespace xdefect {

struct Point {
  int x = 0;
  int y = 0;
  friend bool operator==(const Point&, const Point&) = default;
};

/// One 8-connected foreground component, described by its outer border.
struct Region {
  // Closed outer contour in tracing order, starting at the topmost-leftmost
  // pixel. A single-pixel region has a one-point border.
  std::vector<Point> border;
  // Tight half-open bounding box, e.g. (7, 3, 8, 4) for the pixel (7, 3).
  Box box;
  std::size_t pixel_count = 0;
};

struct RegionLabeling {
  std::vector<Region> regions;
  // Row-major, one entry per mask pixel: region index or -1 for background.
  std::vector<int> labels;
  int width = 0;
  int height = 0;

  int label(int x, int y) const { return labels[static_cast<std::size_t>(y) * width + x]; }
  /// Image-frame mask holding only region `k`.
  BinaryMask region_mask(std::size_t k) const;
};

/// Topological border following over an 8-connected foreground (and
/// 4-connected background). Outer and hole borders are both traced so that
/// every pixel can be attributed to its component, but only components
/// (outer borders) are reported. Regions are ordered by the raster position
/// of their first border pixel.
RegionLabeling label_regions(const BinaryMask& m);

/// Regions of `m`; holes never split a region.
std::vector<Region> trace_regions(const BinaryMask& m);

struct Annotation {
  Box box;
  // Region pixels cropped to `box`.
  BinaryMask mask;
  std::size_t source_index = 0;
};

/// One annotation per region of every mask, in mask order then region order.
std::vector<Annotation> masks_to_annotations(std::span<const BinaryMask> masks);

}  // namespace xdefect
