#include "xdefect/oracles/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>

#include "xdefect/anchors.hpp"
#include "xdefect/border_following.hpp"
#include "xdefect/losses.hpp"
#include "xdefect/nms.hpp"
#include "xdefect/roi_align.hpp"
#include "xdefect/oracles/geometry.hpp"
#include "xdefect/oracles/numeric.hpp"
#include "xdefect/oracles/raster.hpp"

namespace xdefect::oracles {

namespace {

using Clock = std::chrono::steady_clock;

class Timer {
 public:
  double seconds() const { return std::chrono::duration<double>(Clock::now() - start_).count(); }

 private:
  Clock::time_point start_ = Clock::now();
};

SuiteResult finish(SuiteResult r, const Timer& t, bool ok) {
  r.seconds = t.seconds();
  r.passed = ok && r.max_deviation <= r.tolerance &&
             (r.time_limit <= 0.0 || r.seconds < r.time_limit);
  return r;
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

int uniform_int(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

Box random_int_box(std::mt19937_64& rng, int extent) {
  auto span = [&] {
    int a = uniform_int(rng, 0, extent), b = uniform_int(rng, 0, extent);
    while (a == b) b = uniform_int(rng, 0, extent);
    return std::pair{std::min(a, b), std::max(a, b)};
  };
  const auto [x1, x2] = span();
  const auto [y1, y2] = span();
  return {static_cast<double>(x1), static_cast<double>(y1), static_cast<double>(x2),
          static_cast<double>(y2)};
}

Box random_box(std::mt19937_64& rng) {
  const double x1 = uniform(rng, 1.0, 900.0), y1 = uniform(rng, 1.0, 900.0);
  return {x1, y1, x1 + uniform(rng, 1.0, 200.0), y1 + uniform(rng, 1.0, 200.0)};
}

std::vector<double> random_vector(std::mt19937_64& rng, std::size_t n, double lo, double hi) {
  std::vector<double> v(n);
  for (double& x : v) x = uniform(rng, lo, hi);
  return v;
}

}  // namespace

SuiteResult iou_suite(const SuiteOptions& opt, std::size_t pairs) {
  SuiteResult r{.name = "iou-pixel-oracle", .cases = pairs, .tolerance = 0.0, .time_limit = 5.0};
  Timer t;
  std::mt19937_64 rng(opt.seed);
  for (std::size_t i = 0; i < pairs; ++i) {
    const Box a = random_int_box(rng, 64), b = random_int_box(rng, 64);
    r.max_deviation = std::max(r.max_deviation, std::abs(iou(a, b) - pixel_iou(a, b)));
  }
  return finish(r, t, true);
}

SuiteResult encode_roundtrip_suite(const SuiteOptions& opt, std::size_t pairs) {
  SuiteResult r{.name = "encode-decode-roundtrip", .cases = 2 * pairs, .tolerance = 1e-9,
                .time_limit = 1.0};
  Timer t;
  std::mt19937_64 rng(opt.seed + 1);
  for (std::size_t i = 0; i < pairs; ++i) {
    const Box b = random_box(rng), a = random_box(rng);
    for (EncodingVariant v : {EncodingVariant::AnchorRelative, EncodingVariant::AbsoluteLog}) {
      const Box back = decode_box(encode_box(b, a, v), a);
      const auto want = as_array(b), got = as_array(back);
      for (int k = 0; k < 4; ++k) {
        r.max_deviation = std::max(r.max_deviation, std::abs(got[k] - want[k]) / std::abs(want[k]));
      }
    }
  }
  return finish(r, t, true);
}

SuiteResult anchor_count_suite(const SuiteOptions& opt, std::size_t configs) {
  SuiteResult r{.name = "anchor-count-law", .cases = configs + 2, .tolerance = 0.0};
  Timer t;
  std::mt19937_64 rng(opt.seed + 2);
  std::size_t mismatches = 0;
  for (std::size_t i = 0; i < configs; ++i) {
    AnchorConfig cfg;
    cfg.base_size = uniform(rng, 4.0, 32.0);
    cfg.feature_stride = uniform(rng, 4.0, 32.0);
    cfg.scales = random_vector(rng, static_cast<std::size_t>(uniform_int(rng, 1, 6)), 0.5, 20.0);
    cfg.aspect_ratios =
        random_vector(rng, static_cast<std::size_t>(uniform_int(rng, 1, 4)), 0.25, 4.0);
    const int w = uniform_int(rng, 1, 64), h = uniform_int(rng, 1, 64);
    const std::size_t want = cfg.scales.size() * cfg.aspect_ratios.size() *
                             static_cast<std::size_t>(w) * static_cast<std::size_t>(h);
    mismatches += generate_anchors(cfg, w, h).size() != want;
  }
  const AnchorConfig defaults;
  mismatches += defaults.anchors_per_location() != 15;
  mismatches += generate_anchors(defaults, 48, 48).size() != 15u * 48u * 48u;
  const AnchorSet one = generate_anchors(defaults, 1, 1);
  mismatches += one.size() != 15;
  double min_area = one.front().box.area();
  bool has_16 = false;
  for (const Anchor& a : one) {
    min_area = std::min(min_area, a.box.area());
    has_16 = has_16 || (a.box.width() == 16.0 && a.box.height() == 16.0);
  }
  mismatches += !has_16;
  mismatches += std::abs(min_area - 256.0) > 1e-9;
  r.max_deviation = static_cast<double>(mismatches);
  r.detail = "smallest default anchor area " + std::to_string(min_area);
  return finish(r, t, true);
}

SuiteResult smooth_l1_gradient_suite(const SuiteOptions& opt, std::size_t inputs) {
  SuiteResult r{.name = "gradient-smooth-l1", .cases = inputs, .tolerance = 1e-4,
                .time_limit = 5.0};
  Timer t;
  std::mt19937_64 rng(opt.seed + 3);
  const double slope = 1.0 + opt.smooth_l1_slope_perturbation;
  for (std::size_t i = 0; i < inputs; ++i) {
    const std::vector<double> target = random_vector(rng, 4, -2.0, 2.0);
    std::vector<double> pred(4);
    for (int k = 0; k < 4; ++k) {
      double d = 0.0;
      do d = uniform(rng, -3.0, 3.0);
      while (std::abs(std::abs(d) - 1.0) < 1e-3);
      pred[k] = target[k] - d;
    }
    const LossValue lv = location_loss(pred, target, 1);
    const auto f = [&](std::span<const double> p) { return location_loss(p, target, 1).value; };
    const std::vector<double> fd = central_difference(f, pred);
    for (int k = 0; k < 4; ++k) {
      r.max_deviation = std::max(r.max_deviation, relative_error(slope * lv.gradient[k], fd[k]));
      const double x = target[k] - pred[k];
      const double fd1 = (smooth_l1(x + 1e-5).value - smooth_l1(x - 1e-5).value) / 2e-5;
      r.max_deviation = std::max(r.max_deviation, relative_error(slope * smooth_l1(x).derivative, fd1));
    }
  }
  return finish(r, t, true);
}

SuiteResult cross_entropy_gradient_suite(const SuiteOptions& opt, std::size_t inputs) {
  SuiteResult r{.name = "gradient-cross-entropy", .cases = inputs, .tolerance = 1e-4,
                .time_limit = 5.0};
  Timer t;
  std::mt19937_64 rng(opt.seed + 4);
  for (std::size_t i = 0; i < inputs; ++i) {
    const double p = uniform(rng, 0.01, 0.99);
    const int p_star = uniform_int(rng, 0, 1);
    const auto f = [&](std::span<const double> x) { return classification_loss(x[0], p_star).value; };
    const std::vector<double> x{p};
    const double fd = central_difference(f, x)[0];
    r.max_deviation =
        std::max(r.max_deviation, relative_error(classification_loss(p, p_star).gradient[0], fd));
  }
  return finish(r, t, true);
}

SuiteResult mask_bce_gradient_suite(const SuiteOptions& opt, std::size_t inputs) {
  SuiteResult r{.name = "gradient-mask-bce", .cases = inputs, .tolerance = 1e-4,
                .time_limit = 5.0};
  Timer t;
  std::mt19937_64 rng(opt.seed + 5);
  constexpr int kClasses = 1;
  for (std::size_t i = 0; i < inputs; ++i) {
    MaskLogits logits(kClasses, 28, 28);
    for (double& v : logits.data) v = uniform(rng, -4.0, 4.0);
    std::vector<double> gt(logits.slice_size());
    for (double& v : gt) v = uniform_int(rng, 0, 1);
    const int k = uniform_int(rng, 0, kClasses - 1);
    const LossValue lv = mask_loss(logits, gt, k);
    MaskLogits probe = logits;
    const auto f = [&](std::span<const double> x) {
      std::copy(x.begin(), x.end(), probe.data.begin());
      return mask_loss(probe, gt, k).value;
    };
    const std::vector<double> fd = central_difference(f, logits.data);
    for (std::size_t j = 0; j < fd.size(); ++j) {
      r.max_deviation = std::max(r.max_deviation, relative_error(lv.gradient[j], fd[j]));
    }
  }
  return finish(r, t, true);
}

SuiteResult loss_gating_suite(const SuiteOptions& opt, std::size_t inputs) {
  SuiteResult r{.name = "loss-gating", .cases = 2 * inputs, .tolerance = 0.0};
  Timer t;
  std::mt19937_64 rng(opt.seed + 6);
  for (std::size_t i = 0; i < inputs; ++i) {
    const std::vector<double> pred = random_vector(rng, 4, -5.0, 5.0);
    const std::vector<double> target = random_vector(rng, 4, -5.0, 5.0);
    const LossValue lv = location_loss(pred, target, 0);
    r.max_deviation = std::max(r.max_deviation, std::abs(lv.value));
    for (double g : lv.gradient) r.max_deviation = std::max(r.max_deviation, std::abs(g));

    const int classes = uniform_int(rng, 2, 5);
    MaskLogits logits(classes, 28, 28);
    for (double& v : logits.data) v = uniform(rng, -6.0, 6.0);
    std::vector<double> gt(logits.slice_size());
    for (double& v : gt) v = uniform_int(rng, 0, 1);
    const int k = uniform_int(rng, 0, classes - 1);
    const LossValue ml = mask_loss(logits, gt, k);
    for (std::size_t j = 0; j < ml.gradient.size(); ++j) {
      if (static_cast<int>(j / logits.slice_size()) == k) continue;
      r.max_deviation = std::max(r.max_deviation, std::abs(ml.gradient[j]));
    }
  }
  return finish(r, t, true);
}

SuiteResult roi_align_affine_suite(const SuiteOptions& opt, std::size_t cases) {
  SuiteResult r{.name = "roi-align-affine", .cases = cases, .tolerance = 1e-9};
  Timer t;
  std::mt19937_64 rng(opt.seed + 7);
  for (std::size_t i = 0; i < cases; ++i) {
    const int w = uniform_int(rng, 2, 20), h = uniform_int(rng, 2, 20), ch = uniform_int(rng, 1, 3);
    const double stride = uniform(rng, 1.0, 16.0);
    FeatureMap fm(w, h, ch, stride);
    std::vector<std::array<double, 3>> coef(static_cast<std::size_t>(ch));
    for (auto& c : coef) c = {uniform(rng, -5, 5), uniform(rng, -5, 5), uniform(rng, -5, 5)};
    for (int c = 0; c < ch; ++c) {
      for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) fm.at(c, y, x) = coef[c][0] + coef[c][1] * x + coef[c][2] * y;
      }
    }
    // Keep the RoI inside the cell-centre hull so clamping never engages.
    const double fx1 = uniform(rng, 0.0, w - 1.05), fy1 = uniform(rng, 0.0, h - 1.05);
    const double fx2 = uniform(rng, fx1 + 0.05, w - 1.0), fy2 = uniform(rng, fy1 + 0.05, h - 1.0);
    const Box roi{fx1 * stride, fy1 * stride, fx2 * stride, fy2 * stride};
    const AlignConfig cfg{uniform_int(rng, 1, 14), uniform_int(rng, 1, 14), uniform_int(rng, 1, 4)};
    const AlignedFeatures out = roi_align(fm, roi, cfg);
    const double x0 = roi.x1 / stride, y0 = roi.y1 / stride;
    const double bw = roi.width() / stride / cfg.out_w, bh = roi.height() / stride / cfg.out_h;
    for (int by = 0; by < cfg.out_h; ++by) {
      for (int bx = 0; bx < cfg.out_w; ++bx) {
        const double cx = x0 + (bx + 0.5) * bw, cy = y0 + (by + 0.5) * bh;
        for (int c = 0; c < ch; ++c) {
          const double want = coef[c][0] + coef[c][1] * cx + coef[c][2] * cy;
          r.max_deviation = std::max(r.max_deviation, std::abs(out.at(by, bx, c) - want));
        }
      }
    }
  }
  return finish(r, t, true);
}

SuiteResult roi_align_monte_carlo_suite(const SuiteOptions& opt, std::size_t cases) {
  SuiteResult r{.name = "roi-align-monte-carlo", .cases = cases, .tolerance = 1e-2};
  Timer t;
  std::mt19937_64 rng(opt.seed + 8);
  double worst_reference = 0.0;
  constexpr int kSide = 16;
  constexpr double kStride = 4.0;
  for (std::size_t i = 0; i < cases; ++i) {
    const int ch = uniform_int(rng, 1, 2);
    FeatureMap fm(kSide, kSide, ch, kStride);
    // Band-limited map: a few waves with periods of at least 16 cells.
    for (int c = 0; c < ch; ++c) {
      struct Wave { double a, u, v, phi; };
      std::vector<Wave> waves(3);
      for (Wave& wv : waves) {
        wv = {uniform(rng, 0.0, 1.0), uniform(rng, -0.0625, 0.0625), uniform(rng, -0.0625, 0.0625),
              uniform(rng, 0.0, 2.0 * std::numbers::pi)};
      }
      for (int y = 0; y < kSide; ++y) {
        for (int x = 0; x < kSide; ++x) {
          double v = 0.0;
          for (const Wave& wv : waves) {
            v += wv.a * std::sin(2.0 * std::numbers::pi * (wv.u * x + wv.v * y) + wv.phi);
          }
          fm.at(c, y, x) = v;
        }
      }
    }
    // RoIs of up to a quarter of the map side (bins under 0.6 cells).
    const double extent = kSide * kStride;
    const double rw = uniform(rng, 2.0, extent / 4), rh = uniform(rng, 2.0, extent / 4);
    const double x1 = uniform(rng, 0.0, extent - rw), y1 = uniform(rng, 0.0, extent - rh);
    const Box roi{x1, y1, x1 + rw, y1 + rh};
    const AlignedFeatures out = roi_align(fm, roi, {});
    const std::vector<double> mc = monte_carlo_roi_align(fm, roi, 7, 7, 1000, opt.seed + i);
    const std::vector<double> ref = reference_roi_align(fm, roi, 7, 7, 2);
    for (std::size_t k = 0; k < out.data.size(); ++k) {
      r.max_deviation = std::max(r.max_deviation, std::abs(out.data[k] - mc[k]));
      worst_reference = std::max(worst_reference, std::abs(out.data[k] - ref[k]));
    }
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "2x2 reference max_dev=%.3g tol=1e-12", worst_reference);
  r.detail = buf;
  return finish(r, t, worst_reference <= 1e-12);
}

SuiteResult roi_align_shape_suite(const SuiteOptions& opt, std::size_t cases) {
  SuiteResult r{.name = "roi-align-shape", .cases = cases, .tolerance = 0.0};
  Timer t;
  std::mt19937_64 rng(opt.seed + 9);
  std::size_t bad = 0;
  for (std::size_t i = 0; i < cases; ++i) {
    const int w = uniform_int(rng, 1, 20), h = uniform_int(rng, 1, 20), ch = uniform_int(rng, 1, 4);
    FeatureMap fm(w, h, ch, uniform(rng, 1.0, 16.0));
    for (double& v : fm.data) v = uniform(rng, -1.0, 1.0);
    const double x1 = uniform(rng, -100.0, 400.0), y1 = uniform(rng, -100.0, 400.0);
    const Box roi{x1, y1, x1 + uniform(rng, 0.01, 500.0), y1 + uniform(rng, 0.01, 500.0)};
    const AlignConfig cfg{uniform_int(rng, 1, 14), uniform_int(rng, 1, 14), uniform_int(rng, 1, 3)};
    const AlignedFeatures out = roi_align(fm, roi, cfg);
    const bool ok = out.out_h == cfg.out_h && out.out_w == cfg.out_w && out.channels == ch &&
                    out.data.size() == static_cast<std::size_t>(cfg.out_h * cfg.out_w * ch) &&
                    std::all_of(out.data.begin(), out.data.end(),
                                [](double v) { return std::isfinite(v); });
    bad += !ok;
  }
  r.max_deviation = static_cast<double>(bad);
  return finish(r, t, true);
}

namespace {

BinaryMask random_mask(std::mt19937_64& rng) {
  const int w = uniform_int(rng, 1, 64), h = uniform_int(rng, 1, 64);
  BinaryMask m(w, h);
  switch (uniform_int(rng, 0, 2)) {
    case 0: {  // salt noise
      const double density = uniform(rng, 0.05, 0.7);
      for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
          if (uniform(rng, 0.0, 1.0) < density) m.set(x, y);
        }
      }
      break;
    }
    case 1: {  // filled and hollow rectangles
      const int n = uniform_int(rng, 1, 8);
      for (int k = 0; k < n; ++k) {
        const int x0 = uniform_int(rng, 0, w - 1), y0 = uniform_int(rng, 0, h - 1);
        const int x1 = uniform_int(rng, x0, w - 1), y1 = uniform_int(rng, y0, h - 1);
        const bool hollow = uniform_int(rng, 0, 1) == 1;
        for (int y = y0; y <= y1; ++y) {
          for (int x = x0; x <= x1; ++x) {
            const bool edge = x == x0 || x == x1 || y == y0 || y == y1;
            if (!hollow || edge) m.set(x, y);
          }
        }
      }
      break;
    }
    default: {  // blurred noise thresholded into blobs
      std::vector<double> field(static_cast<std::size_t>(w) * h);
      for (double& v : field) v = uniform(rng, 0.0, 1.0);
      const double level = uniform(rng, 0.4, 0.6);
      for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
          double acc = 0.0;
          int cnt = 0;
          for (int dy = -1; dy <= 1; ++dy) {
            for (int dx = -1; dx <= 1; ++dx) {
              const int nx = x + dx, ny = y + dy;
              if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
              acc += field[static_cast<std::size_t>(ny) * w + nx];
              ++cnt;
            }
          }
          if (acc / cnt > level) m.set(x, y);
        }
      }
    }
  }
  return m;
}

}  // namespace

SuiteResult border_following_suite(const SuiteOptions& opt, std::size_t masks) {
  SuiteResult r{.name = "border-following-flood-fill", .cases = masks, .tolerance = 0.0,
                .time_limit = 10.0};
  Timer t;
  std::mt19937_64 rng(opt.seed + 10);
  std::size_t bad = 0;
  for (std::size_t i = 0; i < masks; ++i) {
    const BinaryMask m = random_mask(rng);
    const RegionLabeling lab = label_regions(m);
    const FloodLabeling ref = flood_fill(m);
    bool ok = lab.regions.size() == ref.count() && lab.labels == ref.labels;
    for (std::size_t k = 0; ok && k < ref.count(); ++k) {
      ok = lab.regions[k].box == ref.boxes[k] && lab.regions[k].pixel_count == ref.pixel_counts[k];
    }
    bad += !ok;
  }
  r.max_deviation = static_cast<double>(bad);
  return finish(r, t, true);
}

SuiteResult nms_suite(const SuiteOptions& opt, std::size_t instances) {
  SuiteResult r{.name = "nms-brute-force", .cases = instances, .tolerance = 0.0};
  Timer t;
  std::mt19937_64 rng(opt.seed + 11);
  std::size_t bad = 0;
  for (std::size_t i = 0; i < instances; ++i) {
    const int n = uniform_int(rng, 1, 500);
    std::vector<ScoredBox> dets(static_cast<std::size_t>(n));
    for (ScoredBox& d : dets) {
      const double x = uniform(rng, 0.0, 200.0), y = uniform(rng, 0.0, 200.0);
      d.box = {x, y, x + uniform(rng, 4.0, 60.0), y + uniform(rng, 4.0, 60.0)};
      // Coarse scores so that ties occur.
      d.score = uniform_int(rng, 0, 50) / 50.0;
    }
    const double thr = uniform(rng, 0.0, 1.0);
    bad += nms_indices(dets, thr) != brute_nms(dets, thr);
  }
  r.max_deviation = static_cast<double>(bad);
  return finish(r, t, true);
}

std::vector<SuiteResult> run_all_suites(const SuiteOptions& opt) {
  return {iou_suite(opt),
          encode_roundtrip_suite(opt),
          anchor_count_suite(opt),
          smooth_l1_gradient_suite(opt),
          cross_entropy_gradient_suite(opt),
          mask_bce_gradient_suite(opt),
          loss_gating_suite(opt),
          roi_align_affine_suite(opt),
          roi_align_monte_carlo_suite(opt),
          roi_align_shape_suite(opt),
          border_following_suite(opt),
          nms_suite(opt)};
}

std::string format_suite(const SuiteResult& r) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%s %-28s cases=%-6zu max_dev=%-10.3g tol=%-8.3g time=%.3fs",
                r.passed ? "PASS" : "FAIL", r.name.c_str(), r.cases, r.max_deviation, r.tolerance,
                r.seconds);
  std::string s = buf;
  if (r.time_limit > 0.0) {
    std::snprintf(buf, sizeof buf, " (limit %.0fs)", r.time_limit);
    s += buf;
  }
  if (!r.detail.empty()) s += "  " + r.detail;
  return s;
}

}  // namespace xdefect::oracles
