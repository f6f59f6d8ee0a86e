#include "xdefect/cli/formats.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace xdefect::cli {

namespace {

[[noreturn]] void fail(const std::string& source, std::size_t line, const std::string& what) {
  throw InputError(source + ":" + std::to_string(line) + ": " + what);
}

bool parse_number(std::string_view text, double& out) {
  if (text.empty()) return false;
  const char* end = text.data() + text.size();
  auto [p, ec] = std::from_chars(text.data(), end, out);
  return ec == std::errc{} && p == end && std::isfinite(out);
}

bool parse_int(std::string_view text, int& out) {
  if (text.empty()) return false;
  const char* end = text.data() + text.size();
  auto [p, ec] = std::from_chars(text.data(), end, out);
  return ec == std::errc{} && p == end;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

void strip_cr(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path.string() + ": cannot open");
  return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError(path.string() + ": cannot open for writing");
  return out;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, p);
}

std::vector<GtRecord> parse_gt_csv(std::istream& in, const std::string& source) {
  std::vector<GtRecord> rows;
  std::string line;
  std::size_t n = 0;
  if (!std::getline(in, line)) fail(source, 1, "missing header");
  ++n;
  strip_cr(line);
  if (line != kGtHeader) fail(source, n, std::string("expected header \"") + kGtHeader + "\"");
  while (std::getline(in, line)) {
    ++n;
    strip_cr(line);
    if (line.empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != 7) fail(source, n, "expected 7 fields, got " + std::to_string(f.size()));
    GtRecord r;
    r.image_id = std::string(f[0]);
    if (r.image_id.empty()) fail(source, n, "empty image_id");
    if (!parse_int(f[1], r.class_id)) fail(source, n, "class_id is not an integer");
    double c[4];
    for (int k = 0; k < 4; ++k) {
      if (!parse_number(f[2 + k], c[k])) fail(source, n, "coordinate is not a finite number");
    }
    r.box = {c[0], c[1], c[2], c[3]};
    if (!r.box.valid()) fail(source, n, "box needs x2 > x1 and y2 > y1");
    r.mask = std::string(f[6]);
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<GtRecord> read_gt_csv(const std::filesystem::path& path) {
  std::ifstream in = open_in(path);
  return parse_gt_csv(in, path.string());
}

void write_gt_csv(std::ostream& out, const std::vector<GtRecord>& rows) {
  out << kGtHeader << '\n';
  for (const GtRecord& r : rows) {
    out << r.image_id << ',' << r.class_id << ',' << format_double(r.box.x1) << ','
        << format_double(r.box.y1) << ',' << format_double(r.box.x2) << ','
        << format_double(r.box.y2) << ',' << r.mask << '\n';
  }
}

void write_gt_csv(const std::filesystem::path& path, const std::vector<GtRecord>& rows) {
  std::ofstream out = open_out(path);
  write_gt_csv(out, rows);
}

std::vector<DetRecord> parse_detections(std::istream& in, const std::string& source) {
  using nlohmann::json;
  std::vector<DetRecord> rows;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    strip_cr(line);
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      fail(source, n, std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) fail(source, n, "record must be a JSON object");
    auto number = [&](const char* key) {
      if (!j.contains(key) || !j[key].is_number()) fail(source, n, std::string("missing number \"") + key + "\"");
      const double v = j[key].get<double>();
      if (!std::isfinite(v)) fail(source, n, std::string("\"") + key + "\" is not finite");
      return v;
    };
    DetRecord r;
    if (!j.contains("image_id") || !j["image_id"].is_string()) fail(source, n, "missing string \"image_id\"");
    r.image_id = j["image_id"].get<std::string>();
    if (!j.contains("class_id") || !j["class_id"].is_number_integer()) {
      fail(source, n, "missing integer \"class_id\"");
    }
    r.class_id = j["class_id"].get<int>();
    r.score = number("score");
    if (r.score < 0.0 || r.score > 1.0) fail(source, n, "score must lie in [0, 1]");
    r.box = {number("x1"), number("y1"), number("x2"), number("y2")};
    if (!r.box.valid()) fail(source, n, "box needs x2 > x1 and y2 > y1");
    if (j.contains("mask") && !j["mask"].is_null()) {
      if (!j["mask"].is_string()) fail(source, n, "\"mask\" must be a string path");
      r.mask = j["mask"].get<std::string>();
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<DetRecord> read_detections(const std::filesystem::path& path) {
  std::ifstream in = open_in(path);
  return parse_detections(in, path.string());
}

void write_detections(std::ostream& out, const std::vector<DetRecord>& rows) {
  for (const DetRecord& r : rows) {
    nlohmann::ordered_json j;
    j["image_id"] = r.image_id;
    j["class_id"] = r.class_id;
    j["score"] = r.score;
    j["x1"] = r.box.x1;
    j["y1"] = r.box.y1;
    j["x2"] = r.box.x2;
    j["y2"] = r.box.y2;
    if (!r.mask.empty()) j["mask"] = r.mask;
    out << j.dump() << '\n';
  }
}

void write_detections(const std::filesystem::path& path, const std::vector<DetRecord>& rows) {
  std::ofstream out = open_out(path);
  write_detections(out, rows);
}

GdxrayParse parse_gdxray(std::istream& in, const std::string& source, BoxOrdering ordering) {
  GdxrayParse out;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    strip_cr(line);
    std::istringstream fields(line);
    std::vector<std::string> tok;
    for (std::string t; fields >> t;) tok.push_back(t);
    if (tok.empty() || tok.front().starts_with('#')) continue;
    if (tok.size() != 5) fail(source, n, "expected 5 columns, got " + std::to_string(tok.size()));
    double v[5];
    for (int k = 0; k < 5; ++k) {
      if (!parse_number(tok[k], v[k])) fail(source, n, "column " + std::to_string(k + 1) + " is not a number");
    }
    if (v[0] != std::floor(v[0])) fail(source, n, "image index is not an integer");
    GdxrayRow row;
    row.index = static_cast<long>(v[0]);
    row.line = n;
    row.box = ordering == BoxOrdering::Gdxray ? Box{v[1], v[3], v[2], v[4]}
                                              : Box{v[1], v[2], v[3], v[4]};
    if (!row.box.valid()) {
      std::ostringstream msg;
      msg << source << ":" << n << ": rejected row, box " << row.box
          << " is inverted or empty after reordering";
      out.rejected.push_back(msg.str());
      continue;
    }
    out.rows.push_back(row);
  }
  return out;
}

}  // namespace xdefect::cli
