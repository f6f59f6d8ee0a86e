#include "xdefect/oracles/raster.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

namespace xdefect::oracles {

FloodLabeling flood_fill(const BinaryMask& m) {
  FloodLabeling out;
  out.width = m.width();
  out.height = m.height();
  out.labels.assign(static_cast<std::size_t>(m.width()) * static_cast<std::size_t>(m.height()), -1);
  auto idx = [&](int x, int y) { return static_cast<std::size_t>(y) * m.width() + x; };

  for (int y = 0; y < m.height(); ++y) {
    for (int x = 0; x < m.width(); ++x) {
      if (!m.at(x, y) || out.labels[idx(x, y)] != -1) continue;
      const int id = static_cast<int>(out.boxes.size());
      int x1 = x, y1 = y, x2 = x, y2 = y;
      std::size_t count = 0;
      std::deque<std::pair<int, int>> queue{{x, y}};
      out.labels[idx(x, y)] = id;
      while (!queue.empty()) {
        const auto [cx, cy] = queue.front();
        queue.pop_front();
        ++count;
        x1 = std::min(x1, cx);
        x2 = std::max(x2, cx);
        y1 = std::min(y1, cy);
        y2 = std::max(y2, cy);
        for (int dy = -1; dy <= 1; ++dy) {
          for (int dx = -1; dx <= 1; ++dx) {
            const int nx = cx + dx, ny = cy + dy;
            if (nx < 0 || ny < 0 || nx >= m.width() || ny >= m.height()) continue;
            if (!m.at(nx, ny) || out.labels[idx(nx, ny)] != -1) continue;
            out.labels[idx(nx, ny)] = id;
            queue.emplace_back(nx, ny);
          }
        }
      }
      out.boxes.push_back(Box{static_cast<double>(x1), static_cast<double>(y1),
                              static_cast<double>(x2 + 1), static_cast<double>(y2 + 1)});
      out.pixel_counts.push_back(count);
    }
  }
  return out;
}

std::vector<double> sampled_gaussian(double sigma) {
  const int r = static_cast<int>(std::ceil(3.0 * sigma));
  std::vector<double> k(static_cast<std::size_t>(2 * r + 1));
  double sum = 0.0;
  for (int i = -r; i <= r; ++i) {
    k[static_cast<std::size_t>(i + r)] = std::exp(-(i * i) / (2.0 * sigma * sigma));
    sum += k[static_cast<std::size_t>(i + r)];
  }
  for (double& v : k) v /= sum;
  return k;
}

std::vector<double> gaussian_impulse_response(double sigma, int w, int h, int cx, int cy) {
  const std::vector<double> k = sampled_gaussian(sigma);
  const int r = static_cast<int>(k.size() / 2);
  std::vector<double> out(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), 0.0);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const int dx = x - cx, dy = y - cy;
      if (std::abs(dx) > r || std::abs(dy) > r) continue;
      out[static_cast<std::size_t>(y) * w + x] =
          k[static_cast<std::size_t>(dx + r)] * k[static_cast<std::size_t>(dy + r)];
    }
  }
  return out;
}

}  // namespace xdefect::oracles
