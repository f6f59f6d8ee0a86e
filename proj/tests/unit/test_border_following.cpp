#include <gtest/gtest.h>

#include <random>

#include "xdefect/border_following.hpp"
#include "xdefect/errors.hpp"
#include "xdefect/oracles/raster.hpp"
#include "xdefect/tiles.hpp"

using namespace xdefect;

namespace {

void fill(BinaryMask& m, int x0, int y0, int x1, int y1) {
  for (int y = y0; y < y1; ++y) {
    for (int x = x0; x < x1; ++x) m.set(x, y);
  }
}

BinaryMask random_mask(std::mt19937_64& rng, int w, int h, double p) {
  std::bernoulli_distribution on(p);
  BinaryMask m(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) m.set(x, y, on(rng));
  }
  return m;
}

}  // namespace

TEST(TraceRegions, Rectangle) {
  BinaryMask m(40, 30);
  fill(m, 5, 5, 25, 15);
  const auto r = trace_regions(m);
  ASSERT_EQ(r.size(), 1u);
  EXPECT_EQ(r[0].box, (Box{5, 5, 25, 15}));
  EXPECT_EQ(r[0].pixel_count, 200u);
  EXPECT_EQ(r[0].border.front(), (Point{5, 5}));
}

TEST(TraceRegions, SinglePixel) {
  BinaryMask m(10, 10);
  m.set(7, 3);
  const auto r = trace_regions(m);
  ASSERT_EQ(r.size(), 1u);
  EXPECT_EQ(r[0].box, (Box{7, 3, 8, 4}));
  EXPECT_EQ(r[0].border.size(), 1u);
}

TEST(TraceRegions, TwoBlobsInRasterOrder) {
  BinaryMask m(30, 30);
  fill(m, 20, 2, 25, 6);
  fill(m, 2, 10, 8, 20);
  const auto r = trace_regions(m);
  ASSERT_EQ(r.size(), 2u);
  EXPECT_EQ(r[0].box, (Box{20, 2, 25, 6}));
  EXPECT_EQ(r[1].box, (Box{2, 10, 8, 20}));
}

TEST(TraceRegions, RingIsOneRegion) {
  BinaryMask m(20, 20);
  fill(m, 3, 3, 15, 15);
  for (int y = 6; y < 12; ++y) {
    for (int x = 6; x < 12; ++x) m.set(x, y, false);
  }
  m.set(9, 9);  // island inside the hole
  const auto lab = label_regions(m);
  ASSERT_EQ(lab.regions.size(), 2u);
  EXPECT_EQ(lab.regions[0].box, (Box{3, 3, 15, 15}));
  EXPECT_EQ(lab.regions[1].box, (Box{9, 9, 10, 10}));
  EXPECT_EQ(lab.label(7, 7), -1);
}

TEST(TraceRegions, DiagonalTouchConnects) {
  BinaryMask m(6, 6);
  m.set(1, 1);
  m.set(2, 2);
  m.set(4, 1);
  EXPECT_EQ(trace_regions(m).size(), 2u);
}

TEST(TraceRegions, EmptyAndFull) {
  EXPECT_TRUE(trace_regions(BinaryMask(5, 5)).empty());
  BinaryMask m(5, 4);
  fill(m, 0, 0, 5, 4);
  const auto r = trace_regions(m);
  ASSERT_EQ(r.size(), 1u);
  EXPECT_EQ(r[0].box, (Box{0, 0, 5, 4}));
}

TEST(TraceRegions, AgreesWithFloodFill) {
  std::mt19937_64 rng(14);
  for (int i = 0; i < 100; ++i) {
    const BinaryMask m = random_mask(rng, 5 + i % 31, 3 + i % 23, 0.2 + (i % 6) / 10.0);
    const RegionLabeling lab = label_regions(m);
    const auto ref = oracles::flood_fill(m);
    ASSERT_EQ(lab.regions.size(), ref.count());
    EXPECT_EQ(lab.labels, ref.labels);
    for (std::size_t k = 0; k < ref.count(); ++k) {
      EXPECT_EQ(lab.regions[k].box, ref.boxes[k]);
      EXPECT_EQ(lab.regions[k].pixel_count, ref.pixel_counts[k]);
    }
  }
}

TEST(TraceRegions, BoxesAreTight) {
  std::mt19937_64 rng(15);
  for (int i = 0; i < 50; ++i) {
    const RegionLabeling lab = label_regions(random_mask(rng, 24, 24, 0.35));
    for (std::size_t k = 0; k < lab.regions.size(); ++k) {
      EXPECT_EQ(lab.region_mask(k).bounding_box(), lab.regions[k].box);
    }
  }
}

TEST(Annotations, MaskCroppedToBox) {
  BinaryMask a(20, 20), b(20, 20);
  fill(a, 2, 3, 6, 9);
  fill(b, 10, 10, 12, 11);
  fill(b, 15, 15, 18, 18);
  const std::vector<BinaryMask> masks{a, b};
  const auto ann = masks_to_annotations(masks);
  ASSERT_EQ(ann.size(), 3u);
  EXPECT_EQ(ann[0].mask.width(), 4);
  EXPECT_EQ(ann[0].mask.height(), 6);
  EXPECT_EQ(ann[0].mask.count(), 24u);
  EXPECT_EQ(ann[2].source_index, 1u);
  EXPECT_EQ(ann[2].box, (Box{15, 15, 18, 18}));
}

TEST(Tiles, EvenSpans) {
  const auto spans = tile_spans(4000, 8);
  ASSERT_EQ(spans.size(), 8u);
  for (std::size_t k = 0; k < 8; ++k) {
    EXPECT_EQ(spans[k].width(), 500);
    EXPECT_EQ(spans[k].x0, static_cast<int>(k) * 500);
  }
  EXPECT_EQ(tile_spans(10, 3).back().x1, 10);
  EXPECT_THROW(tile_spans(5, 6), ContractError);
  EXPECT_THROW(tile_spans(5, 0), ContractError);
}

TEST(Tiles, BlobAcrossCutSplits) {
  BinaryMask m(4000, 40);
  fill(m, 480, 10, 530, 20);
  const auto regions = tile_regions(m, 8);
  ASSERT_EQ(regions.size(), 2u);
  EXPECT_EQ(regions[0].tile, 0u);
  EXPECT_EQ(regions[0].box, (Box{480, 10, 500, 20}));
  EXPECT_EQ(regions[1].tile, 1u);
  EXPECT_EQ(regions[1].box, (Box{0, 10, 30, 20}));
  EXPECT_EQ(regions[1].mask.width(), 500);
  EXPECT_EQ(regions[1].mask.bounding_box(), regions[1].box);
}
