// Copyright 2026 The shapeclass Authors.
// SPDX-License-Identifier: Apache-2.0

#include "shapeclass/raster.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "shapeclass/error.hpp"

namespace shapeclass {

namespace {

constexpr std::size_t kMaxPixels = std::size_t{1} << 26;  // 64 Mpixel guard

// Cursor over a PNM byte stream. Offsets in errors are 0-based.
class PnmCursor {
 public:
  explicit PnmCursor(const std::vector<std::uint8_t>& bytes) : bytes_(bytes) {}

  std::size_t pos() const { return pos_; }
  bool eof() const { return pos_ >= bytes_.size(); }

  // Whitespace and '#' comments (to end of line) separate header tokens.
  void skip_separators() {
    while (!eof()) {
      const std::uint8_t c = bytes_[pos_];
      if (c == '#') {
        while (!eof() && bytes_[pos_] != '\n') ++pos_;
      } else if (std::isspace(c)) {
        ++pos_;
      } else {
        return;
      }
    }
  }

  // Nonnegative decimal integer token.
  std::uint64_t read_uint(const char* what) {
    skip_separators();
    const std::size_t start = pos_;
    if (eof()) throw ImageParseError(std::string("truncated payload: missing ") + what, pos_);
    if (!std::isdigit(bytes_[pos_])) {
      throw ImageParseError(std::string("malformed ") + what, pos_);
    }
    std::uint64_t v = 0;
    while (!eof() && std::isdigit(bytes_[pos_])) {
      v = v * 10 + (bytes_[pos_] - '0');
      if (v > std::numeric_limits<std::uint32_t>::max()) {
        throw ImageParseError(std::string(what) + " out of range", start);
      }
      ++pos_;
    }
    return v;
  }

  std::size_t last_token_start() const { return token_start_; }

  std::uint64_t read_uint_tracked(const char* what) {
    skip_separators();
    token_start_ = pos_;
    return read_uint(what);
  }

  std::uint8_t read_raw_byte() {
    if (eof()) throw ImageParseError("truncated payload", pos_);
    return bytes_[pos_++];
  }

  void expect_single_separator() {
    if (eof()) throw ImageParseError("truncated payload", pos_);
    if (!std::isspace(bytes_[pos_])) {
      throw ImageParseError("malformed header: expected whitespace before raster data", pos_);
    }
    ++pos_;
  }

 private:
  const std::vector<std::uint8_t>& bytes_;
  std::size_t pos_ = 0;
  std::size_t token_start_ = 0;
};

int rescale_to_255(std::uint64_t v, std::uint64_t maxval, std::size_t offset) {
  if (v > maxval) throw ImageParseError("sample exceeds maxval", offset);
  if (maxval == 255) return static_cast<int>(v);
  // round(v * 255 / maxval), half up
  return static_cast<int>((v * 510 + maxval) / (2 * maxval));
}

int luma(int r, int g, int b) {
  return static_cast<int>(std::floor(0.299 * r + 0.587 * g + 0.114 * b + 0.5));
}

std::vector<std::uint8_t> read_file_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open file: " + path);
  return std::vector<std::uint8_t>(std::istreambuf_iterator<char>(in),
                                   std::istreambuf_iterator<char>());
}

void write_file_bytes(const std::vector<std::uint8_t>& bytes, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open file for writing: " + path);
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error("write failed: " + path);
}

}  // namespace

std::size_t BinaryMask::foreground_count() const {
  return static_cast<std::size_t>(std::count_if(bits.begin(), bits.end(),
                                                [](std::uint8_t b) { return b != 0; }));
}

GrayImage load_image(const std::vector<std::uint8_t>& bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P' ||
      (bytes[1] != '2' && bytes[1] != '3' && bytes[1] != '5' && bytes[1] != '6')) {
    throw ImageParseError("malformed magic number", 0);
  }
  const char format = static_cast<char>(bytes[1]);
  const bool color = (format == '3' || format == '6');
  const bool ascii = (format == '2' || format == '3');
  PnmCursor cur(bytes);
  cur.read_raw_byte();  // 'P'
  cur.read_raw_byte();  // format digit

  const std::uint64_t width = cur.read_uint_tracked("width");
  if (width == 0) throw ImageParseError("zero dimension: width", cur.last_token_start());
  const std::uint64_t height = cur.read_uint_tracked("height");
  if (height == 0) throw ImageParseError("zero dimension: height", cur.last_token_start());
  const std::uint64_t maxval = cur.read_uint_tracked("maxval");
  if (maxval < 1 || maxval > 255) {
    throw ImageParseError("maxval outside [1, 255]", cur.last_token_start());
  }
  if (width * height > kMaxPixels) {
    throw ImageParseError("image dimensions too large", cur.last_token_start());
  }

  GrayImage img;
  img.width = static_cast<int>(width);
  img.height = static_cast<int>(height);
  img.data.resize(static_cast<std::size_t>(width * height));

  const std::size_t n = img.data.size();
  if (ascii) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!color) {
        const std::size_t off = cur.pos();
        img.data[i] = static_cast<std::uint8_t>(
            rescale_to_255(cur.read_uint("sample"), maxval, off));
      } else {
        const std::size_t off = cur.pos();
        const int r = rescale_to_255(cur.read_uint("sample"), maxval, off);
        const int g = rescale_to_255(cur.read_uint("sample"), maxval, cur.pos());
        const int b = rescale_to_255(cur.read_uint("sample"), maxval, cur.pos());
        img.data[i] = static_cast<std::uint8_t>(luma(r, g, b));
      }
    }
  } else {
    cur.expect_single_separator();
    for (std::size_t i = 0; i < n; ++i) {
      if (!color) {
        const std::size_t off = cur.pos();
        img.data[i] = static_cast<std::uint8_t>(rescale_to_255(cur.read_raw_byte(), maxval, off));
      } else {
        const std::size_t off = cur.pos();
        const int r = rescale_to_255(cur.read_raw_byte(), maxval, off);
        const int g = rescale_to_255(cur.read_raw_byte(), maxval, off + 1);
        const int b = rescale_to_255(cur.read_raw_byte(), maxval, off + 2);
        img.data[i] = static_cast<std::uint8_t>(luma(r, g, b));
      }
    }
  }
  return img;
}

GrayImage load_image_file(const std::string& path) {
  return load_image(read_file_bytes(path));
}

std::vector<std::uint8_t> write_pgm(const GrayImage& img) {
  char header[64];
  const int len = std::snprintf(header, sizeof(header), "P5\n%d %d\n255\n", img.width, img.height);
  std::vector<std::uint8_t> out(header, header + len);
  out.insert(out.end(), img.data.begin(), img.data.end());
  return out;
}

void write_pgm_file(const GrayImage& img, const std::string& path) {
  write_file_bytes(write_pgm(img), path);
}

std::vector<std::uint8_t> write_mask_pgm(const BinaryMask& mask) {
  GrayImage img;
  img.width = mask.width;
  img.height = mask.height;
  img.data.resize(mask.bits.size());
  std::transform(mask.bits.begin(), mask.bits.end(), img.data.begin(),
                 [](std::uint8_t b) { return b ? std::uint8_t{255} : std::uint8_t{0}; });
  return write_pgm(img);
}

void write_mask_pgm_file(const BinaryMask& mask, const std::string& path) {
  write_file_bytes(write_mask_pgm(mask), path);
}

BinaryMask load_mask_pgm(const std::vector<std::uint8_t>& bytes) {
  const GrayImage img = load_image(bytes);
  BinaryMask mask;
  mask.width = img.width;
  mask.height = img.height;
  mask.bits.resize(img.data.size());
  std::transform(img.data.begin(), img.data.end(), mask.bits.begin(),
                 [](std::uint8_t v) { return v ? std::uint8_t{1} : std::uint8_t{0}; });
  return mask;
}

Histogram256 histogram(const GrayImage& image) {
  Histogram256 h;
  for (const std::uint8_t v : image.data) ++h.counts[v];
  h.total = image.data.size();
  return h;
}

int otsu_threshold(const Histogram256& hist) {
  const int distinct = static_cast<int>(
      std::count_if(hist.counts.begin(), hist.counts.end(),
                    [](std::uint64_t c) { return c > 0; }));
  if (distinct < 2) throw DegenerateHistogram();

  using u128 = unsigned __int128;
  using i128 = __int128;

  const std::uint64_t total = hist.total;
  std::uint64_t weighted_total = 0;
  for (int v = 0; v < 256; ++v) weighted_total += static_cast<std::uint64_t>(v) * hist.counts[v];

  // sigma_B^2(t) = (s0*N - S*w0)^2 / (N^2 * w0 * w1); the common N^2 drops
  // out of comparisons, which are done exactly on the remaining rationals
  // via quotient/remainder so ties resolve to the lowest t without
  // floating-point noise.
  int best_t = -1;
  u128 best_q = 0, best_r = 0;
  u128 best_den = 1;

  std::uint64_t w0 = 0, s0 = 0;
  for (int t = 0; t < 256; ++t) {
    w0 += hist.counts[t];
    s0 += static_cast<std::uint64_t>(t) * hist.counts[t];
    if (w0 == 0) continue;
    const std::uint64_t w1 = total - w0;
    if (w1 == 0) break;

    const i128 diff = static_cast<i128>(s0) * total - static_cast<i128>(weighted_total) * w0;
    const u128 mag = diff < 0 ? static_cast<u128>(-diff) : static_cast<u128>(diff);
    const u128 num = mag * mag;
    const u128 den = static_cast<u128>(w0) * w1;
    const u128 q = num / den;
    const u128 r = num % den;

    bool better;
    if (best_t < 0) {
      better = true;
    } else if (q != best_q) {
      better = q > best_q;
    } else {
      better = r * best_den > best_r * den;  // exact fraction comparison
    }
    if (better) {
      best_t = t;
      best_den = den;
      best_q = q;
      best_r = r;
    }
  }
  return best_t;
}

BinaryMask binarize(const GrayImage& image, int threshold, Polarity polarity) {
  Polarity effective = polarity;
  if (polarity == Polarity::kMinorityForeground) {
    std::size_t dark = 0;
    for (const std::uint8_t v : image.data) {
      if (v <= threshold) ++dark;
    }
    const std::size_t light = image.data.size() - dark;
    effective = dark <= light ? Polarity::kDarkForeground : Polarity::kLightForeground;
  }

  BinaryMask mask;
  mask.width = image.width;
  mask.height = image.height;
  mask.bits.resize(image.data.size());
  const bool dark_is_fg = (effective == Polarity::kDarkForeground);
  for (std::size_t i = 0; i < image.data.size(); ++i) {
    const bool dark = image.data[i] <= threshold;
    mask.bits[i] = (dark == dark_is_fg) ? 1 : 0;
  }
  return mask;
}

}  // namespace shapeclass
