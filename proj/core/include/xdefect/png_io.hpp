#pragma once

#include <string>

#include "xdefect/image.hpp"
#include "xdefect/mask.hpp"

namespace xdefect {

/// Read an 8- or 16-bit PNG as grayscale; colour inputs are converted with
/// libpng's default luminance weights and alpha is dropped. Throws IoError.
GrayImage read_png(const std::string& path);

/// Write a grayscale PNG. Pixel values are rounded and clamped to the range
/// of `bit_depth` (8 or 16). Throws IoError.
void write_png(const std::string& path, const GrayImage& img, int bit_depth = 8);

/// Nonzero pixels of a PNG become foreground.
BinaryMask read_png_mask(const std::string& path);

/// Foreground written as 255 in an 8-bit PNG.
void write_png_mask(const std::string& path, const BinaryMask& m);

}  // namespace xdefect
