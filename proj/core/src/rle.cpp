#include <charconv>
#include <fstream>
#include <limits>
#include <sstream>

#include "xdefect/errors.hpp"
#include "xdefect/mask.hpp"

namespace xdefect {

std::vector<std::uint32_t> rle_encode(const BinaryMask& m) {
  std::vector<std::uint32_t> counts;
  if (m.size() == 0) return counts;
  bool current = false;
  std::uint32_t run = 0;
  for (int x = 0; x < m.width(); ++x) {
    for (int y = 0; y < m.height(); ++y) {
      const bool v = m.at(x, y);
      if (v != current) {
        counts.push_back(run);
        run = 0;
        current = v;
      }
      ++run;
    }
  }
  counts.push_back(run);
  return counts;
}

BinaryMask rle_decode(const std::vector<std::uint32_t>& counts, int width, int height) {
  if (width < 0 || height < 0) throw ContractError("rle_decode: negative dimensions");
  BinaryMask m(width, height);
  const std::uint64_t total = static_cast<std::uint64_t>(width) * static_cast<std::uint64_t>(height);
  std::uint64_t sum = 0;
  for (std::uint32_t c : counts) sum += c;
  if (sum != total) {
    throw ContractError("rle_decode: run lengths sum to " + std::to_string(sum) +
                        ", expected " + std::to_string(total));
  }
  std::uint64_t pos = 0;
  bool value = false;
  for (std::uint32_t c : counts) {
    if (value) {
      for (std::uint64_t k = pos; k < pos + c; ++k) {
        m.set(static_cast<int>(k / static_cast<std::uint64_t>(height)),
              static_cast<int>(k % static_cast<std::uint64_t>(height)));
      }
    }
    pos += c;
    value = !value;
  }
  return m;
}

std::string rle_to_string(const BinaryMask& m) {
  std::string out = std::to_string(m.width()) + ' ' + std::to_string(m.height()) + '\n';
  const auto counts = rle_encode(m);
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(counts[i]);
  }
  out += '\n';
  return out;
}

namespace {

template <typename T>
bool parse_uint(std::string_view tok, T& out) {
  const auto* end = tok.data() + tok.size();
  auto [p, ec] = std::from_chars(tok.data(), end, out);
  return ec == std::errc{} && p == end;
}

std::vector<std::string_view> split_spaces(std::string_view line) {
  std::vector<std::string_view> toks;
  std::size_t i = 0;
  while (i < line.size()) {
    const std::size_t j = line.find(' ', i);
    const std::size_t stop = j == std::string_view::npos ? line.size() : j;
    toks.push_back(line.substr(i, stop - i));
    if (j == std::string_view::npos) break;
    i = j + 1;
  }
  return toks;
}

}  // namespace

BinaryMask rle_from_string(const std::string& text) {
  // Exactly two newline-terminated lines, single-space separated.
  const std::size_t nl1 = text.find('\n');
  if (nl1 == std::string::npos) throw IoError("rle: missing header line");
  const std::size_t nl2 = text.find('\n', nl1 + 1);
  if (nl2 == std::string::npos || nl2 + 1 != text.size()) {
    throw IoError("rle: expected a header line and one counts line");
  }
  const auto header = split_spaces(std::string_view(text).substr(0, nl1));
  int w = 0, h = 0;
  if (header.size() != 2 || !parse_uint(header[0], w) || !parse_uint(header[1], h)) {
    throw IoError("rle: malformed header, expected '<width> <height>'");
  }
  std::vector<std::uint32_t> counts;
  const std::string_view body = std::string_view(text).substr(nl1 + 1, nl2 - nl1 - 1);
  if (!body.empty()) {
    for (std::string_view tok : split_spaces(body)) {
      std::uint32_t c = 0;
      if (!parse_uint(tok, c)) throw IoError("rle: malformed run length '" + std::string(tok) + "'");
      counts.push_back(c);
    }
  }
  try {
    return rle_decode(counts, w, h);
  } catch (const ContractError& e) {
    throw IoError(std::string("rle: ") + e.what());
  }
}

void write_rle_file(const std::string& path, const BinaryMask& m) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open " + path + " for writing");
  f << rle_to_string(m);
  if (!f) throw IoError("write failed: " + path);
}

BinaryMask read_rle_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  try {
    return rle_from_string(ss.str());
  } catch (const IoError& e) {
    throw IoError(path + ": " + e.what());
  }
}

}  // namespace xdefect
