#pragma once

#include <array>
#include <iosfwd>

namespace xdefect {

/// Axis-aligned rectangle in continuous image coordinates.
///
/// Origin is the top-left corner and y grows downward. The box covers the
/// half-open region [x1, x2) x [y1, y2), so an integer box (0,0,10,10)
/// contains exactly the 100 pixels whose top-left corners are 0..9.
struct Box {
  double x1 = 0.0;
  double y1 = 0.0;
  double x2 = 0.0;
  double y2 = 0.0;

  static Box from_center(double cx, double cy, double w, double h) {
    return {cx - 0.5 * w, cy - 0.5 * h, cx + 0.5 * w, cy + 0.5 * h};
  }

  double width() const { return x2 - x1; }
  double height() const { return y2 - y1; }
  double area() const { return width() * height(); }
  double cx() const { return 0.5 * (x1 + x2); }
  double cy() const { return 0.5 * (y1 + y2); }

  /// Finite coordinates with strictly positive width and height.
  bool valid() const;

  friend bool operator==(const Box&, const Box&) = default;
};

std::ostream& operator<<(std::ostream& os, const Box& b);

/// Throws DomainError unless `b.valid()`. `what` names the argument.
void require_valid(const Box& b, const char* what);

/// Area of the intersection; zero when the boxes do not overlap.
double intersection_area(const Box& a, const Box& b);

/// Intersection over union. Symmetric, 1 for identical boxes and 0 for
/// disjoint ones. Throws DomainError on a degenerate box.
double iou(const Box& a, const Box& b);

/// Clamp a box to [0, w] x [0, h]. The result may be degenerate.
Box clip(const Box& b, double w, double h);

/// Tie-break key used wherever a deterministic order over boxes is needed.
std::array<double, 4> as_array(const Box& b);

}  // namespace xdefect
