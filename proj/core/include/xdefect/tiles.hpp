#pragma once

#include <cstddef>
#include <vector>

#include "xdefect/box.hpp"
#include "xdefect/mask.hpp"

namespace xdefect {

/// Column range [x0, x1) of one vertical strip.
struct TileSpan {
  int x0 = 0;
  int x1 = 0;
  int width() const { return x1 - x0; }
};

/// Split [0, width) into `tiles` strips, strip k covering
/// [floor(k*width/tiles), floor((k+1)*width/tiles)). Throws ContractError
/// unless 1 <= tiles <= width.
std::vector<TileSpan> tile_spans(int width, int tiles);

struct TileRegion {
  std::size_t tile = 0;
  // Tile frame.
  Box box;
  // Tile-sized mask holding this region only.
  BinaryMask mask;
};

/// Cut `m` into strips and trace each strip independently, so a component
/// crossing a cut yields one region per strip.
std::vector<TileRegion> tile_regions(const BinaryMask& m, int tiles);

}  // namespace xdefect
