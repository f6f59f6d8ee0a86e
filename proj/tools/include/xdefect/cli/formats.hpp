#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "xdefect/box.hpp"

namespace xdefect::cli {

/// Malformed input file; maps to exit code 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Ground-truth CSV row. `mask` is an RLE sidecar path relative to the CSV's
/// directory, or empty.
struct GtRecord {
  std::string image_id;
  int class_id = 1;
  Box box;
  std::string mask;
  friend bool operator==(const GtRecord&, const GtRecord&) = default;
};

/// Detection JSON-lines record.
struct DetRecord {
  std::string image_id;
  int class_id = 1;
  double score = 0.0;
  Box box;
  std::string mask;
  friend bool operator==(const DetRecord&, const DetRecord&) = default;
};

inline constexpr const char* kGtHeader = "image_id,class_id,x1,y1,x2,y2,mask";

/// Shortest decimal text that parses back to the same double.
std::string format_double(double v);

/// Throws InputError naming `source` and the 1-based line number.
std::vector<GtRecord> parse_gt_csv(std::istream& in, const std::string& source);
std::vector<GtRecord> read_gt_csv(const std::filesystem::path& path);
void write_gt_csv(std::ostream& out, const std::vector<GtRecord>& rows);
void write_gt_csv(const std::filesystem::path& path, const std::vector<GtRecord>& rows);

std::vector<DetRecord> parse_detections(std::istream& in, const std::string& source);
std::vector<DetRecord> read_detections(const std::filesystem::path& path);
void write_detections(std::ostream& out, const std::vector<DetRecord>& rows);
void write_detections(const std::filesystem::path& path, const std::vector<DetRecord>& rows);

/// Column order of a GDXray box row after the image index.
enum class BoxOrdering {
  Xyxy,    // idx x1 y1 x2 y2
  Gdxray,  // idx x1 x2 y1 y2
};

struct GdxrayRow {
  long index = 0;
  Box box;
  std::size_t line = 0;
};

struct GdxrayParse {
  std::vector<GdxrayRow> rows;
  // One message per row dropped for inverted or empty coordinates.
  std::vector<std::string> rejected;
};

/// Whitespace-separated rows of five numbers. Throws InputError on a row
/// that is not five numbers or has a non-integral index.
GdxrayParse parse_gdxray(std::istream& in, const std::string& source, BoxOrdering ordering);

}  // namespace xdefect::cli
