#include "xdefect/tiles.hpp"

#include "xdefect/border_following.hpp"
#include "xdefect/errors.hpp"

namespace xdefect {

std::vector<TileSpan> tile_spans(int width, int tiles) {
  if (tiles < 1 || tiles > width) throw ContractError("tile_spans: need 1 <= tiles <= width");
  std::vector<TileSpan> out;
  out.reserve(static_cast<std::size_t>(tiles));
  const long long w = width;
  for (long long k = 0; k < tiles; ++k) {
    out.push_back({static_cast<int>(k * w / tiles), static_cast<int>((k + 1) * w / tiles)});
  }
  return out;
}

std::vector<TileRegion> tile_regions(const BinaryMask& m, int tiles) {
  std::vector<TileRegion> out;
  const std::vector<TileSpan> spans = tile_spans(m.width(), tiles);
  for (std::size_t t = 0; t < spans.size(); ++t) {
    const BinaryMask strip = m.crop(spans[t].x0, 0, spans[t].width(), m.height());
    RegionLabeling lab = label_regions(strip);
    for (std::size_t k = 0; k < lab.regions.size(); ++k) {
      out.push_back({t, lab.regions[k].box, lab.region_mask(k)});
    }
  }
  return out;
}

}  // namespace xdefect
