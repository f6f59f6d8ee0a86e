#include "xdefect/box.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

#include "xdefect/errors.hpp"

namespace xdefect {

bool Box::valid() const {
  return std::isfinite(x1) && std::isfinite(y1) && std::isfinite(x2) &&
         std::isfinite(y2) && x2 > x1 && y2 > y1;
}

std::ostream& operator<<(std::ostream& os, const Box& b) {
  return os << '(' << b.x1 << ", " << b.y1 << ", " << b.x2 << ", " << b.y2
            << ')';
}

void require_valid(const Box& b, const char* what) {
  if (!b.valid()) {
    throw DomainError(std::string(what) + ": degenerate or non-finite box");
  }
}

double intersection_area(const Box& a, const Box& b) {
  const double iw = std::min(a.x2, b.x2) - std::max(a.x1, b.x1);
  const double ih = std::min(a.y2, b.y2) - std::max(a.y1, b.y1);
  if (iw <= 0.0 || ih <= 0.0) return 0.0;
  return iw * ih;
}

double iou(const Box& a, const Box& b) {
  require_valid(a, "iou");
  require_valid(b, "iou");
  const double inter = intersection_area(a, b);
  if (inter == 0.0) return 0.0;
  const double uni = a.area() + b.area() - inter;
  return inter / uni;
}

Box clip(const Box& b, double w, double h) {
  return {std::clamp(b.x1, 0.0, w), std::clamp(b.y1, 0.0, h),
          std::clamp(b.x2, 0.0, w), std::clamp(b.y2, 0.0, h)};
}

std::array<double, 4> as_array(const Box& b) { return {b.x1, b.y1, b.x2, b.y2}; }

}  // namespace xdefect
