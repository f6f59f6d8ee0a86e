#include "xdefect/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "xdefect/border_following.hpp"
#include "xdefect/errors.hpp"

namespace xdefect {

void SynthParams::validate() const {
  if (width < 16 || height < 16) throw ConfigError("synth: image must be at least 16x16");
  if (min_defects < 0 || max_defects < min_defects) {
    throw ConfigError("synth: bad defect count range");
  }
  if (!(min_side >= 3.0 && max_side >= min_side)) throw ConfigError("synth: bad defect size range");
  if (max_side + 2 * margin >= std::min(width, height)) {
    throw ConfigError("synth: defects do not fit in the image");
  }
  if (!(min_depth > 0.0 && max_depth >= min_depth)) throw ConfigError("synth: bad depth range");
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Wave {
  double amp, fx, fy, phase;
};

std::vector<Wave> draw_waves(const SynthParams& p, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> freq(0.5, 2.0);
  std::uniform_real_distribution<double> phase(0.0, kTwoPi);
  std::uniform_real_distribution<double> share(0.2, 1.0);
  std::vector<Wave> waves(3);
  double total = 0.0;
  for (Wave& w : waves) {
    w.amp = share(rng);
    total += w.amp;
    w.fx = freq(rng) / p.width;
    w.fy = freq(rng) / p.height;
    w.phase = phase(rng);
  }
  for (Wave& w : waves) w.amp *= p.background_amplitude / total;
  return waves;
}

GrayImage render_background(const SynthParams& p, const std::vector<Wave>& waves) {
  GrayImage bg(p.width, p.height);
  for (int y = 0; y < p.height; ++y) {
    for (int x = 0; x < p.width; ++x) {
      double v = p.background_level;
      for (const Wave& w : waves) {
        v += w.amp * std::sin(kTwoPi * (w.fx * (x + 0.5) + w.fy * (y + 0.5)) + w.phase);
      }
      bg.at(x, y) = v;
    }
  }
  return bg;
}

struct Blob {
  double cx, cy, a, b, theta, lobe, lobes, lobe_phase, depth;

  // Normalized radius and the boundary radius in that direction.
  std::pair<double, double> polar(double x, double y) const {
    const double dx = x - cx, dy = y - cy;
    const double c = std::cos(theta), s = std::sin(theta);
    const double u = (c * dx + s * dy) / a;
    const double v = (-s * dx + c * dy) / b;
    const double r = std::hypot(u, v);
    const double boundary = 1.0 + lobe * std::cos(lobes * std::atan2(v, u) + lobe_phase);
    return {r, boundary};
  }
};

}  // namespace

GrayImage synth_background(const SynthParams& p, std::uint64_t seed) {
  p.validate();
  std::mt19937_64 rng(seed);
  return render_background(p, draw_waves(p, rng));
}

AnnotatedImage synth_image(const SynthParams& p, std::uint64_t seed) {
  p.validate();
  std::mt19937_64 rng(seed);
  const GrayImage bg = render_background(p, draw_waves(p, rng));

  std::uniform_int_distribution<int> count_dist(p.min_defects, p.max_defects);
  std::uniform_real_distribution<double> side(p.min_side, p.max_side);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> depth(p.min_depth, p.max_depth);
  const int wanted = count_dist(rng);

  AnnotatedImage out;
  out.image = bg;
  std::vector<Blob> blobs;
  for (int attempt = 0; attempt < 200 && static_cast<int>(blobs.size()) < wanted; ++attempt) {
    Blob blob{};
    const double w = side(rng), h = side(rng);
    // Lobes reach 1.15x the base ellipse, so shrink it to keep the box side
    // inside the requested range.
    blob.a = 0.5 * w / 1.15;
    blob.b = 0.5 * h / 1.15;
    blob.theta = unit(rng) * std::numbers::pi;
    blob.lobe = 0.15 * unit(rng);
    blob.lobes = unit(rng) < 0.5 ? 2.0 : 3.0;
    blob.lobe_phase = unit(rng) * kTwoPi;
    blob.depth = depth(rng);
    const double reach = 0.5 * std::max(w, h) + p.margin;
    blob.cx = reach + unit(rng) * (p.width - 2 * reach);
    blob.cy = reach + unit(rng) * (p.height - 2 * reach);

    BinaryMask mask(p.width, p.height);
    const int x0 = std::max(0, static_cast<int>(blob.cx - reach));
    const int x1 = std::min(p.width, static_cast<int>(blob.cx + reach) + 1);
    const int y0 = std::max(0, static_cast<int>(blob.cy - reach));
    const int y1 = std::min(p.height, static_cast<int>(blob.cy + reach) + 1);
    for (int y = y0; y < y1; ++y) {
      for (int x = x0; x < x1; ++x) {
        const auto [r, boundary] = blob.polar(x + 0.5, y + 0.5);
        if (r <= boundary) mask.set(x, y);
      }
    }
    if (trace_regions(mask).size() != 1) continue;
    const Box box = mask.bounding_box();
    const Box grown{box.x1 - p.margin, box.y1 - p.margin, box.x2 + p.margin, box.y2 + p.margin};
    if (grown.x1 < 0 || grown.y1 < 0 || grown.x2 > p.width || grown.y2 > p.height) continue;
    bool clear = true;
    for (const LabeledBox& other : out.boxes) {
      if (intersection_area(grown, other.box) > 0.0) {
        clear = false;
        break;
      }
    }
    if (!clear) continue;

    for (int y = static_cast<int>(box.y1); y < static_cast<int>(box.y2); ++y) {
      for (int x = static_cast<int>(box.x1); x < static_cast<int>(box.x2); ++x) {
        if (!mask.at(x, y)) continue;
        const auto [r, boundary] = blob.polar(x + 0.5, y + 0.5);
        const double t = std::clamp(r / boundary, 0.0, 1.0);
        out.image.at(x, y) = bg.at(x, y) - blob.depth * (0.6 + 0.4 * (1.0 - t * t));
      }
    }
    out.boxes.push_back({box, p.class_id});
    out.masks.push_back(std::move(mask));
    blobs.push_back(blob);
  }

  for (double& v : out.image.pixels) v = std::clamp(std::round(v), 0.0, 255.0);
  return out;
}

std::vector<AnnotatedImage> synth_dataset(int n, const SynthParams& p, std::uint64_t seed) {
  if (n < 1) throw ContractError("synth_dataset: need at least one image");
  std::vector<AnnotatedImage> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out.push_back(synth_image(p, mix_seed(seed, static_cast<std::uint64_t>(i))));
  return out;
}

}  // namespace xdefect
