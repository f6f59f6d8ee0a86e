#include "xdefect/png_io.hpp"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "xdefect/errors.hpp"

namespace xdefect {

namespace {

// Uses the libpng "simplified" API. 16-bit files are treated as linear data
// and read back without gamma conversion; 8-bit files likewise pass through.
struct PngImage {
  png_image image{};
  PngImage() { image.version = PNG_IMAGE_VERSION; }
  ~PngImage() { png_image_free(&image); }
  PngImage(const PngImage&) = delete;
  PngImage& operator=(const PngImage&) = delete;

  std::string message() const { return image.message; }
};

}  // namespace

GrayImage read_png(const std::string& path) {
  PngImage png;
  if (!png_image_begin_read_from_file(&png.image, path.c_str())) {
    throw IoError(path + ": " + png.message());
  }
  const bool wide = (png.image.format & PNG_FORMAT_FLAG_LINEAR) != 0;
  png.image.format = wide ? PNG_FORMAT_LINEAR_Y : PNG_FORMAT_GRAY;
  const int w = static_cast<int>(png.image.width);
  const int h = static_cast<int>(png.image.height);
  GrayImage img(w, h);
  const std::size_t n = static_cast<std::size_t>(w) * static_cast<std::size_t>(h);
  if (wide) {
    std::vector<std::uint16_t> buf(n);
    if (!png_image_finish_read(&png.image, nullptr, buf.data(), 0, nullptr)) {
      throw IoError(path + ": " + png.message());
    }
    std::copy(buf.begin(), buf.end(), img.pixels.begin());
  } else {
    std::vector<std::uint8_t> buf(n);
    if (!png_image_finish_read(&png.image, nullptr, buf.data(), 0, nullptr)) {
      throw IoError(path + ": " + png.message());
    }
    std::copy(buf.begin(), buf.end(), img.pixels.begin());
  }
  return img;
}

void write_png(const std::string& path, const GrayImage& img, int bit_depth) {
  if (bit_depth != 8 && bit_depth != 16) throw IoError("write_png: bit depth must be 8 or 16");
  if (img.width < 1 || img.height < 1) throw IoError("write_png: empty image");
  PngImage png;
  png.image.width = static_cast<png_uint_32>(img.width);
  png.image.height = static_cast<png_uint_32>(img.height);
  int ok = 0;
  if (bit_depth == 16) {
    png.image.format = PNG_FORMAT_LINEAR_Y;
    std::vector<std::uint16_t> buf(img.pixels.size());
    std::transform(img.pixels.begin(), img.pixels.end(), buf.begin(), [](double v) {
      return static_cast<std::uint16_t>(std::clamp(std::round(v), 0.0, 65535.0));
    });
    ok = png_image_write_to_file(&png.image, path.c_str(), 0, buf.data(), 0, nullptr);
  } else {
    png.image.format = PNG_FORMAT_GRAY;
    std::vector<std::uint8_t> buf(img.pixels.size());
    std::transform(img.pixels.begin(), img.pixels.end(), buf.begin(), [](double v) {
      return static_cast<std::uint8_t>(std::clamp(std::round(v), 0.0, 255.0));
    });
    ok = png_image_write_to_file(&png.image, path.c_str(), 0, buf.data(), 0, nullptr);
  }
  if (!ok) throw IoError(path + ": " + png.message());
}

BinaryMask read_png_mask(const std::string& path) {
  const GrayImage img = read_png(path);
  BinaryMask m(img.width, img.height);
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) {
      if (img.at(x, y) != 0.0) m.set(x, y);
    }
  }
  return m;
}

void write_png_mask(const std::string& path, const BinaryMask& m) {
  GrayImage img(m.width(), m.height());
  for (int y = 0; y < m.height(); ++y) {
    for (int x = 0; x < m.width(); ++x) img.at(x, y) = m.at(x, y) ? 255.0 : 0.0;
  }
  write_png(path, img, 8);
}

}  // namespace xdefect
