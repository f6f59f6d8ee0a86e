#include "xdefect/augment.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "xdefect/errors.hpp"

namespace xdefect {

Preprocessed resize_and_pad(const AnnotatedImage& a, int target, bool allow_upscale) {
  if (target < 1) throw ContractError("resize_and_pad: target must be positive");
  a.validate();
  const int w = a.image.width;
  const int h = a.image.height;
  double scale = static_cast<double>(target) / std::max(w, h);
  if (scale > 1.0 && !allow_upscale) scale = 1.0;

  Preprocessed out;
  ScaleRecord& rec = out.record;
  rec.target = target;
  rec.content_w = std::clamp(static_cast<int>(std::lround(w * scale)), 1, target);
  rec.content_h = std::clamp(static_cast<int>(std::lround(h * scale)), 1, target);
  rec.scale_x = static_cast<double>(rec.content_w) / w;
  rec.scale_y = static_cast<double>(rec.content_h) / h;

  const GrayImage content = resize_bilinear(a.image, rec.content_w, rec.content_h);
  GrayImage padded(target, target, 0.0);
  for (int y = 0; y < rec.content_h; ++y) {
    std::copy_n(content.pixels.begin() + static_cast<std::ptrdiff_t>(y) * rec.content_w,
                rec.content_w,
                padded.pixels.begin() + static_cast<std::ptrdiff_t>(y) * target);
  }
  out.image.image = std::move(padded);
  for (const LabeledBox& lb : a.boxes) {
    out.image.boxes.push_back({rec.to_preprocessed(lb.box), lb.class_id});
  }
  for (const BinaryMask& m : a.masks) {
    const BinaryMask resized = resize_nearest(m, rec.content_w, rec.content_h);
    out.image.masks.push_back(resized.crop(0, 0, target, target));
  }
  return out;
}

AnnotatedImage flip(const AnnotatedImage& a, FlipAxis axis) {
  const int w = a.image.width;
  const int h = a.image.height;
  AnnotatedImage out;
  out.image = GrayImage(w, h);
  const bool horiz = axis == FlipAxis::Horizontal;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      out.image.at(x, y) = horiz ? a.image.at(w - 1 - x, y) : a.image.at(x, h - 1 - y);
    }
  }
  for (const LabeledBox& lb : a.boxes) {
    const Box& b = lb.box;
    const Box fb = horiz ? Box{w - b.x2, b.y1, w - b.x1, b.y2}
                         : Box{b.x1, h - b.y2, b.x2, h - b.y1};
    out.boxes.push_back({fb, lb.class_id});
  }
  for (const BinaryMask& m : a.masks) {
    BinaryMask fm(m.width(), m.height());
    for (int y = 0; y < m.height(); ++y) {
      for (int x = 0; x < m.width(); ++x) {
        const bool v = horiz ? m.at(m.width() - 1 - x, y) : m.at(x, m.height() - 1 - y);
        if (v) fm.set(x, y);
      }
    }
    out.masks.push_back(std::move(fm));
  }
  return out;
}

std::vector<double> gaussian_kernel(double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw ConfigError("gaussian kernel: sigma must be positive");
  }
  const int r = static_cast<int>(std::ceil(3.0 * sigma));
  std::vector<double> k(static_cast<std::size_t>(2 * r + 1));
  double sum = 0.0;
  for (int i = -r; i <= r; ++i) {
    const double v = std::exp(-(i * i) / (2.0 * sigma * sigma));
    k[static_cast<std::size_t>(i + r)] = v;
    sum += v;
  }
  for (double& v : k) v /= sum;
  return k;
}

namespace {

int reflect(int i, int n) {
  if (n == 1) return 0;
  const int period = 2 * (n - 1);
  i %= period;
  if (i < 0) i += period;
  return i < n ? i : period - i;
}

// One separable pass. Each output is the centre value plus the weighted
// deviations of its neighbours, so flat regions pass through unchanged.
GrayImage blur_pass(const GrayImage& in, const std::vector<double>& k, bool horizontal) {
  const int r = static_cast<int>(k.size() / 2);
  GrayImage out(in.width, in.height);
  for (int y = 0; y < in.height; ++y) {
    for (int x = 0; x < in.width; ++x) {
      const double c = in.at(x, y);
      double acc = 0.0;
      for (int t = -r; t <= r; ++t) {
        if (t == 0) continue;
        const double v = horizontal ? in.at(reflect(x + t, in.width), y)
                                    : in.at(x, reflect(y + t, in.height));
        acc += k[static_cast<std::size_t>(t + r)] * (v - c);
      }
      out.at(x, y) = c + acc;
    }
  }
  return out;
}

}  // namespace

GrayImage gaussian_blur(const GrayImage& img, double sigma) {
  const std::vector<double> k = gaussian_kernel(sigma);
  if (img.width < 1 || img.height < 1) return img;
  return blur_pass(blur_pass(img, k, true), k, false);
}

GrayImage gaussian_noise(const GrayImage& img, double fraction, std::uint64_t seed) {
  if (!(fraction >= 0.0) || !std::isfinite(fraction)) {
    throw ConfigError("gaussian_noise: fraction must be non-negative");
  }
  const double lo = img.min_value();
  const double hi = img.max_value();
  const double sigma = fraction * (hi - lo);
  if (sigma == 0.0) return img;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, sigma);
  GrayImage out = img;
  for (double& p : out.pixels) p = std::clamp(p + noise(rng), lo, hi);
  return out;
}

AnnotatedImage crop_window(const AnnotatedImage& a, int x0, int y0, int w, int h) {
  if (w < 1 || h < 1 || x0 < 0 || y0 < 0 || x0 + w > a.image.width ||
      y0 + h > a.image.height) {
    throw ContractError("crop_window: window outside the image");
  }
  AnnotatedImage out;
  out.image = GrayImage(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) out.image.at(x, y) = a.image.at(x0 + x, y0 + y);
  }
  const Box window{static_cast<double>(x0), static_cast<double>(y0),
                   static_cast<double>(x0 + w), static_cast<double>(y0 + h)};
  const bool with_masks = !a.masks.empty();
  for (std::size_t i = 0; i < a.boxes.size(); ++i) {
    const Box& b = a.boxes[i].box;
    const Box c{std::max(b.x1, window.x1), std::max(b.y1, window.y1),
                std::min(b.x2, window.x2), std::min(b.y2, window.y2)};
    if (!c.valid() || c.area() < kCropKeepFraction * b.area()) continue;
    out.boxes.push_back({{c.x1 - x0, c.y1 - y0, c.x2 - x0, c.y2 - y0}, a.boxes[i].class_id});
    if (with_masks) out.masks.push_back(a.masks[i].crop(x0, y0, w, h));
  }
  return out;
}

AnnotatedImage random_crop(const AnnotatedImage& a, double crop_fraction, std::uint64_t seed) {
  if (!(crop_fraction > 0.0 && crop_fraction <= 1.0)) {
    throw ConfigError("random_crop: crop fraction must lie in (0, 1]");
  }
  const int w = std::clamp(static_cast<int>(std::lround(a.image.width * crop_fraction)), 1,
                           a.image.width);
  const int h = std::clamp(static_cast<int>(std::lround(a.image.height * crop_fraction)), 1,
                           a.image.height);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> ox(0, a.image.width - w);
  std::uniform_int_distribution<int> oy(0, a.image.height - h);
  const int x0 = ox(rng);
  const int y0 = oy(rng);
  return crop_window(a, x0, y0, w, h);
}

void AugmentSpec::validate() const {
  if (!(blur_sigma > 0.0)) throw ConfigError("augment: blur sigma must be positive");
  if (!(noise_fraction >= 0.0)) throw ConfigError("augment: noise fraction must be >= 0");
  if (!(crop_fraction > 0.0 && crop_fraction <= 1.0)) {
    throw ConfigError("augment: crop fraction must lie in (0, 1]");
  }
}

AnnotatedImage augment(const AnnotatedImage& a, const AugmentSpec& spec, Phase phase) {
  spec.validate();
  if (phase == Phase::Eval) return a;
  // Per-step seeds are drawn up front so toggling one step leaves the
  // others' draws unchanged.
  std::seed_seq seq{static_cast<std::uint32_t>(spec.seed),
                    static_cast<std::uint32_t>(spec.seed >> 32)};
  std::mt19937_64 rng(seq);
  const std::uint64_t crop_seed = rng();
  const std::uint64_t flip_draws = rng();
  const std::uint64_t noise_seed = rng();

  AnnotatedImage out = a;
  if (spec.random_crop) out = random_crop(out, spec.crop_fraction, crop_seed);
  if (spec.horizontal_flip && (flip_draws & 1u)) out = flip(out, FlipAxis::Horizontal);
  if (spec.vertical_flip && (flip_draws & 2u)) out = flip(out, FlipAxis::Vertical);
  if (spec.gaussian_blur) out.image = gaussian_blur(out.image, spec.blur_sigma);
  if (spec.gaussian_noise) out.image = gaussian_noise(out.image, spec.noise_fraction, noise_seed);
  return out;
}

}  // namespace xdefect
