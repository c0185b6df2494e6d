// Copyright 2026 The shapeclass Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef SHAPECLASS_RASTER_HPP_
#define SHAPECLASS_RASTER_HPP_

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace shapeclass {

/// Row-major 8-bit grayscale image.
struct GrayImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> data;  // width * height intensities

  std::uint8_t at(int x, int y) const { return data[static_cast<std::size_t>(y) * width + x]; }
  std::uint8_t& at(int x, int y) { return data[static_cast<std::size_t>(y) * width + x]; }
};

/// Row-major foreground mask (1 = foreground, 0 = background).
struct BinaryMask {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> bits;

  bool at(int x, int y) const { return bits[static_cast<std::size_t>(y) * width + x] != 0; }
  void set(int x, int y, bool v) { bits[static_cast<std::size_t>(y) * width + x] = v ? 1 : 0; }
  std::size_t foreground_count() const;
};

/// 256-bin intensity histogram.
struct Histogram256 {
  std::array<std::uint64_t, 256> counts{};
  std::uint64_t total = 0;
};

enum class Polarity {
  kDarkForeground,   // v <= threshold is foreground
  kLightForeground,  // v >  threshold is foreground
  kMinorityForeground,  // whichever side has fewer pixels (tie: dark)
};

/// Parses a PGM (P2/P5) or PPM (P3/P6) file with maxval in [1, 255].
///
/// PGM intensities map directly, rescaled by round(v * 255 / maxval) when
/// maxval < 255. PPM converts to gray via round(0.299 R + 0.587 G + 0.114 B)
/// after the same per-channel rescale. Header comments (#) are allowed.
/// Throws ImageParseError naming the byte offset on malformed input.
GrayImage load_image(const std::vector<std::uint8_t>& bytes);
GrayImage load_image_file(const std::string& path);

/// Serializes as binary PGM (P5, maxval 255).
std::vector<std::uint8_t> write_pgm(const GrayImage& img);
void write_pgm_file(const GrayImage& img, const std::string& path);

/// Mask as PGM P5: 0 = background, 255 = foreground.
std::vector<std::uint8_t> write_mask_pgm(const BinaryMask& mask);
void write_mask_pgm_file(const BinaryMask& mask, const std::string& path);

/// Reads a PGM written by write_mask_pgm back into a mask (nonzero = foreground).
BinaryMask load_mask_pgm(const std::vector<std::uint8_t>& bytes);

Histogram256 histogram(const GrayImage& image);

/// Threshold maximizing the between-class variance
/// sigma_B^2(t) = w0(t) * w1(t) * (mu0(t) - mu1(t))^2 with class 0 = {v <= t}.
/// Ties resolve to the lowest t; both classes are always nonempty.
/// Throws DegenerateHistogram when fewer than 2 intensity levels are present.
int otsu_threshold(const Histogram256& hist);

BinaryMask binarize(const GrayImage& image, int threshold,
                    Polarity polarity = Polarity::kMinorityForeground);

}  // namespace shapeclass

#endif  // SHAPECLASS_RASTER_HPP_
