#include "xdefect/border_following.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

namespace xdefect {

namespace {

// Neighbour offsets in counter-clockwise order as seen on screen (y down),
// starting east.
constexpr int kDy[8] = {0, -1, -1, -1, 0, 1, 1, 1};
constexpr int kDx[8] = {1, 1, 0, -1, -1, -1, 0, 1};

int direction_of(int dy, int dx) {
  for (int d = 0; d < 8; ++d) {
    if (kDy[d] == dy && kDx[d] == dx) return d;
  }
  throw std::logic_error("border following: pixels are not 8-neighbours");
}

struct BorderInfo {
  bool is_hole = false;
  int parent = 0;
  std::vector<Point> points;  // in padded coordinates
};

// Suzuki-Abe border following on a zero-padded copy of the mask.
class BorderTracer {
 public:
  explicit BorderTracer(const BinaryMask& m) : w_(m.width() + 2), h_(m.height() + 2) {
    f_.assign(static_cast<std::size_t>(w_) * static_cast<std::size_t>(h_), 0);
    for (int y = 0; y < m.height(); ++y) {
      for (int x = 0; x < m.width(); ++x) {
        if (m.at(x, y)) px(y + 1, x + 1) = 1;
      }
    }
    // Border 1 is the frame, treated as a hole border.
    borders_.resize(2);
    borders_[1].is_hole = true;
  }

  void run() {
    int nbd = 1;
    for (int i = 1; i < h_ - 1; ++i) {
      int lnbd = 1;
      for (int j = 1; j < w_ - 1; ++j) {
        const int v = px(i, j);
        if (v == 0) continue;
        bool start = false;
        bool hole = false;
        int i2 = 0, j2 = 0;
        if (v == 1 && px(i, j - 1) == 0) {
          start = true;
          i2 = i;
          j2 = j - 1;
        } else if (v >= 1 && px(i, j + 1) == 0) {
          start = true;
          hole = true;
          i2 = i;
          j2 = j + 1;
          if (v > 1) lnbd = v;
        }
        if (start) {
          ++nbd;
          BorderInfo info;
          info.is_hole = hole;
          const BorderInfo& prev = borders_[static_cast<std::size_t>(lnbd)];
          if (hole == prev.is_hole) {
            info.parent = prev.parent;
          } else {
            info.parent = lnbd;
          }
          borders_.push_back(std::move(info));
          follow(i, j, i2, j2, nbd);
        }
        const int after = px(i, j);
        if (after != 1) lnbd = std::abs(after);
      }
    }
  }

  int width() const { return w_; }
  int height() const { return h_; }
  int value(int i, int j) const { return f_[static_cast<std::size_t>(i) * w_ + j]; }
  const std::vector<BorderInfo>& borders() const { return borders_; }

 private:
  int& px(int i, int j) { return f_[static_cast<std::size_t>(i) * w_ + j]; }

  void follow(int i, int j, int i2, int j2, int nbd) {
    std::vector<Point>& pts = borders_[static_cast<std::size_t>(nbd)].points;

    // Clockwise search from (i2, j2) for the first non-zero neighbour.
    const int d0 = direction_of(i2 - i, j2 - j);
    int found = -1;
    for (int k = 0; k < 8; ++k) {
      const int d = (d0 - k + 8) % 8;
      if (px(i + kDy[d], j + kDx[d]) != 0) {
        found = d;
        break;
      }
    }
    if (found < 0) {
      px(i, j) = -nbd;
      pts.push_back({j, i});
      return;
    }
    const int i1 = i + kDy[found], j1 = j + kDx[found];
    i2 = i1;
    j2 = j1;
    int i3 = i, j3 = j;
    for (;;) {
      // Counter-clockwise search around (i3, j3), starting after (i2, j2).
      const int from = direction_of(i2 - i3, j2 - j3);
      bool east_zero_examined = false;
      int i4 = 0, j4 = 0;
      for (int k = 1; k <= 8; ++k) {
        const int d = (from + k) % 8;
        const int yi = i3 + kDy[d], xj = j3 + kDx[d];
        if (px(yi, xj) != 0) {
          i4 = yi;
          j4 = xj;
          break;
        }
        if (d == 0) east_zero_examined = true;
      }
      if (east_zero_examined) {
        px(i3, j3) = -nbd;
      } else if (px(i3, j3) == 1) {
        px(i3, j3) = nbd;
      }
      pts.push_back({j3, i3});
      if (i4 == i && j4 == j && i3 == i1 && j3 == j1) break;
      i2 = i3;
      j2 = j3;
      i3 = i4;
      j3 = j4;
    }
  }

  int w_, h_;
  std::vector<int> f_;
  std::vector<BorderInfo> borders_;
};

}  // namespace

BinaryMask RegionLabeling::region_mask(std::size_t k) const {
  BinaryMask out(width, height);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      if (label(x, y) == static_cast<int>(k)) out.set(x, y);
    }
  }
  return out;
}

RegionLabeling label_regions(const BinaryMask& m) {
  RegionLabeling out;
  out.width = m.width();
  out.height = m.height();
  out.labels.assign(m.size(), -1);
  if (m.size() == 0) return out;

  BorderTracer tracer(m);
  tracer.run();
  const auto& borders = tracer.borders();

  // Map each border to the region owning its pixels: an outer border opens a
  // region, a hole border belongs to its parent's region.
  std::vector<int> region_of(borders.size(), -1);
  for (std::size_t b = 2; b < borders.size(); ++b) {
    if (borders[b].is_hole) continue;
    region_of[b] = static_cast<int>(out.regions.size());
    Region r;
    r.border.reserve(borders[b].points.size());
    int x_min = tracer.width(), y_min = tracer.height(), x_max = -1, y_max = -1;
    for (const Point& p : borders[b].points) {
      const Point q{p.x - 1, p.y - 1};
      r.border.push_back(q);
      x_min = std::min(x_min, q.x);
      x_max = std::max(x_max, q.x);
      y_min = std::min(y_min, q.y);
      y_max = std::max(y_max, q.y);
    }
    r.box = {static_cast<double>(x_min), static_cast<double>(y_min),
             static_cast<double>(x_max + 1), static_cast<double>(y_max + 1)};
    out.regions.push_back(std::move(r));
  }
  for (std::size_t b = 2; b < borders.size(); ++b) {
    if (borders[b].is_hole) region_of[b] = region_of[static_cast<std::size_t>(borders[b].parent)];
  }

  // Every foreground run starts at a border pixel, whose label names the
  // border and therefore the region.
  for (int y = 0; y < m.height(); ++y) {
    int current = -1;
    for (int x = 0; x < m.width(); ++x) {
      if (!m.at(x, y)) {
        current = -1;
        continue;
      }
      if (current < 0) {
        const int v = std::abs(tracer.value(y + 1, x + 1));
        if (v < 2 || region_of[static_cast<std::size_t>(v)] < 0) {
          throw std::logic_error("border following: run start is not a traced border pixel");
        }
        current = region_of[static_cast<std::size_t>(v)];
      }
      out.labels[static_cast<std::size_t>(y) * out.width + x] = current;
      ++out.regions[static_cast<std::size_t>(current)].pixel_count;
    }
  }
  return out;
}

std::vector<Region> trace_regions(const BinaryMask& m) { return label_regions(m).regions; }

std::vector<Annotation> masks_to_annotations(std::span<const BinaryMask> masks) {
  std::vector<Annotation> out;
  for (std::size_t s = 0; s < masks.size(); ++s) {
    const RegionLabeling lab = label_regions(masks[s]);
    for (std::size_t k = 0; k < lab.regions.size(); ++k) {
      const Box& b = lab.regions[k].box;
      const int x0 = static_cast<int>(b.x1), y0 = static_cast<int>(b.y1);
      const int w = static_cast<int>(b.width()), h = static_cast<int>(b.height());
      BinaryMask crop(w, h);
      for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
          if (lab.label(x0 + x, y0 + y) == static_cast<int>(k)) crop.set(x, y);
        }
      }
      out.push_back({b, std::move(crop), s});
    }
  }
  return out;
}

}  // namespace xdefect
