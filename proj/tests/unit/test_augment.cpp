#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <tuple>

#include "xdefect/augment.hpp"
#include "xdefect/border_following.hpp"
#include "xdefect/errors.hpp"
#include "xdefect/oracles/raster.hpp"

using namespace xdefect;

namespace {

GrayImage random_image(std::mt19937_64& rng, int w, int h) {
  std::uniform_real_distribution<double> u(0, 255);
  GrayImage img(w, h);
  for (double& v : img.pixels) v = u(rng);
  return img;
}

AnnotatedImage with_box(int w, int h, const Box& b) {
  AnnotatedImage a;
  a.image = GrayImage(w, h, 100.0);
  a.boxes.push_back({b, 1});
  BinaryMask m(w, h);
  for (int y = static_cast<int>(b.y1); y < static_cast<int>(b.y2); ++y) {
    for (int x = static_cast<int>(b.x1); x < static_cast<int>(b.x2); ++x) m.set(x, y);
  }
  a.masks.push_back(m);
  return a;
}

double stddev(const std::vector<double>& v) {
  const double mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
  double s = 0;
  for (double x : v) s += (x - mean) * (x - mean);
  return std::sqrt(s / static_cast<double>(v.size()));
}

}  // namespace

TEST(ResizePad, WideImage) {
  const Preprocessed p = resize_and_pad(with_box(1024, 512, {0, 0, 100, 100}));
  EXPECT_EQ(p.image.image.width, 768);
  EXPECT_EQ(p.image.image.height, 768);
  EXPECT_EQ(p.record.content_w, 768);
  EXPECT_EQ(p.record.content_h, 384);
  EXPECT_EQ(p.image.boxes[0].box, (Box{0, 0, 75, 75}));
  EXPECT_EQ(p.image.masks[0].width(), 768);
  EXPECT_EQ(p.image.image.at(10, 500), 0.0);
  EXPECT_EQ(p.image.image.at(10, 10), 100.0);
}

TEST(ResizePad, ExactSizeUnchanged) {
  const AnnotatedImage a = with_box(768, 768, {5, 6, 70, 80});
  const Preprocessed p = resize_and_pad(a);
  EXPECT_EQ(p.image, a);
  EXPECT_EQ(p.record.scale_x, 1.0);
}

TEST(ResizePad, SmallImageOnlyPadded) {
  const AnnotatedImage a = with_box(256, 200, {5, 6, 70, 80});
  const Preprocessed p = resize_and_pad(a);
  EXPECT_EQ(p.image.image.width, 768);
  EXPECT_EQ(p.record.content_w, 256);
  EXPECT_EQ(p.image.boxes[0].box, a.boxes[0].box);
  EXPECT_EQ(resize_and_pad(a, 768, true).record.content_w, 768);
}

TEST(ResizePad, InverseMapping) {
  const Preprocessed p = resize_and_pad(with_box(1000, 700, {13, 27, 411, 333}));
  const Box back = p.record.to_original(p.image.boxes[0].box);
  EXPECT_NEAR(back.x1, 13, 1e-6);
  EXPECT_NEAR(back.y2, 333, 1e-6);
}

TEST(Flip, HorizontalBox) {
  const AnnotatedImage f = flip(with_box(100, 60, {10, 20, 30, 40}), FlipAxis::Horizontal);
  EXPECT_EQ(f.boxes[0].box, (Box{70, 20, 90, 40}));
  EXPECT_EQ(f.masks[0].bounding_box(), f.boxes[0].box);
  const AnnotatedImage v = flip(with_box(100, 60, {10, 20, 30, 40}), FlipAxis::Vertical);
  EXPECT_EQ(v.boxes[0].box, (Box{10, 20, 30, 40}));
}

TEST(Flip, Involution) {
  std::mt19937_64 rng(1);
  AnnotatedImage a = with_box(37, 23, {3, 4, 19, 22});
  a.image = random_image(rng, 37, 23);
  for (auto axis : {FlipAxis::Horizontal, FlipAxis::Vertical}) EXPECT_EQ(flip(flip(a, axis), axis), a);
}

TEST(Flip, SymmetricImageUnchanged) {
  AnnotatedImage a;
  a.image = GrayImage(10, 4);
  for (int y = 0; y < 4; ++y) {
    for (int x = 0; x < 10; ++x) a.image.at(x, y) = std::abs(2 * x - 9) + y;
  }
  EXPECT_EQ(flip(a, FlipAxis::Horizontal).image, a.image);
}

TEST(Blur, ConstantBitExact) {
  const GrayImage img(31, 17, 123.456);
  EXPECT_EQ(gaussian_blur(img, 1.0), img);
  EXPECT_EQ(gaussian_blur(img, 2.7), img);
}

TEST(Blur, ImpulseMatchesKernel) {
  GrayImage img(21, 21, 0.0);
  img.at(10, 10) = 1.0;
  for (double sigma : {0.5, 1.0, 2.0}) {
    const GrayImage out = gaussian_blur(img, sigma);
    const auto ref = oracles::gaussian_impulse_response(sigma, 21, 21, 10, 10);
    for (std::size_t i = 0; i < ref.size(); ++i) EXPECT_NEAR(out.pixels[i], ref[i], 1e-9);
  }
}

TEST(Blur, KernelNormalized) {
  const auto k = gaussian_kernel(1.0);
  EXPECT_EQ(k.size(), 7u);
  EXPECT_NEAR(std::accumulate(k.begin(), k.end(), 0.0), 1.0, 1e-15);
}

TEST(Blur, InteriorMassPreserved) {
  GrayImage img(40, 40, 0.0);
  for (int y = 15; y < 25; ++y) {
    for (int x = 15; x < 25; ++x) img.at(x, y) = 10.0 + x;
  }
  const GrayImage out = gaussian_blur(img, 1.5);
  const double a = std::accumulate(img.pixels.begin(), img.pixels.end(), 0.0);
  const double b = std::accumulate(out.pixels.begin(), out.pixels.end(), 0.0);
  EXPECT_NEAR(a, b, 1e-6);
}

TEST(Noise, SigmaFromRange) {
  GrayImage img(1000, 1000, 110.0);
  img.at(0, 0) = 10.0;
  img.at(1, 0) = 210.0;
  const GrayImage out = gaussian_noise(img, 0.05, 3);
  std::vector<double> diff(out.pixels.size());
  for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = out.pixels[i] - img.pixels[i];
  EXPECT_NEAR(stddev(diff), 10.0, 0.1);
  EXPECT_GE(out.min_value(), 10.0);
  EXPECT_LE(out.max_value(), 210.0);
}

TEST(Noise, NoOpCases) {
  std::mt19937_64 rng(2);
  const GrayImage img = random_image(rng, 20, 20);
  EXPECT_EQ(gaussian_noise(img, 0.0, 1), img);
  const GrayImage flat(20, 20, 7.0);
  EXPECT_EQ(gaussian_noise(flat, 0.05, 1), flat);
  EXPECT_EQ(gaussian_noise(img, 0.05, 9), gaussian_noise(img, 0.05, 9));
}

TEST(Crop, FullWindowIsIdentity) {
  const AnnotatedImage a = with_box(50, 40, {3, 4, 20, 30});
  EXPECT_EQ(random_crop(a, 1.0, 5), a);
}

TEST(Crop, ShiftsBoxes) {
  const AnnotatedImage c = crop_window(with_box(50, 40, {10, 10, 20, 20}), 5, 4, 30, 30);
  ASSERT_EQ(c.boxes.size(), 1u);
  EXPECT_EQ(c.boxes[0].box, (Box{5, 6, 15, 16}));
  EXPECT_EQ(c.masks[0].bounding_box(), c.boxes[0].box);
}

TEST(Crop, QuarterAreaRule) {
  const AnnotatedImage a = with_box(100, 100, {0, 0, 20, 20});
  EXPECT_EQ(crop_window(a, 10, 10, 50, 50).boxes.size(), 1u);  // 25% kept
  EXPECT_EQ(crop_window(a, 11, 10, 50, 50).boxes.size(), 0u);
}

TEST(Augment, CommutesWithRegionTracing) {
  std::mt19937_64 rng(3);
  std::bernoulli_distribution on(0.3);
  BinaryMask m(30, 20);
  for (int y = 0; y < 20; ++y) {
    for (int x = 0; x < 30; ++x) m.set(x, y, on(rng));
  }
  AnnotatedImage a;
  a.image = GrayImage(30, 20);
  a.masks.push_back(m);
  a.boxes.push_back({m.bounding_box(), 1});
  const AnnotatedImage f = flip(a, FlipAxis::Horizontal);
  const auto before = trace_regions(m);
  const auto after = trace_regions(f.masks[0]);
  ASSERT_EQ(before.size(), after.size());
  std::vector<Box> mirrored, traced;
  for (const Region& r : before) mirrored.push_back({30 - r.box.x2, r.box.y1, 30 - r.box.x1, r.box.y2});
  for (const Region& r : after) traced.push_back(r.box);
  std::sort(mirrored.begin(), mirrored.end(), [](const Box& p, const Box& q) {
    return std::tie(p.x1, p.y1, p.x2, p.y2) < std::tie(q.x1, q.y1, q.x2, q.y2);
  });
  std::sort(traced.begin(), traced.end(), [](const Box& p, const Box& q) {
    return std::tie(p.x1, p.y1, p.x2, p.y2) < std::tie(q.x1, q.y1, q.x2, q.y2);
  });
  EXPECT_EQ(mirrored, traced);
}

TEST(Augment, EvalPhaseUntouched) {
  AugmentSpec spec;
  spec.horizontal_flip = spec.gaussian_blur = spec.gaussian_noise = spec.random_crop = true;
  std::mt19937_64 rng(4);
  AnnotatedImage a = with_box(40, 40, {5, 5, 15, 15});
  a.image = random_image(rng, 40, 40);
  EXPECT_EQ(augment(a, spec, Phase::Eval), a);
}

TEST(Augment, PhotometricLeavesAnnotations) {
  AugmentSpec spec;
  spec.gaussian_blur = spec.gaussian_noise = true;
  std::mt19937_64 rng(5);
  AnnotatedImage a = with_box(40, 40, {5, 5, 15, 15});
  a.image = random_image(rng, 40, 40);
  const AnnotatedImage out = augment(a, spec, Phase::Train);
  EXPECT_EQ(out.boxes, a.boxes);
  EXPECT_EQ(out.masks, a.masks);
  EXPECT_NE(out.image, a.image);
}

TEST(Augment, BadSpecThrows) {
  AugmentSpec spec;
  spec.crop_fraction = 1.5;
  EXPECT_THROW(spec.validate(), ConfigError);
  spec = {};
  spec.blur_sigma = 0;
  EXPECT_THROW(spec.validate(), ConfigError);
}
