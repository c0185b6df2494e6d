// Copyright 2026 The shapeclass Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef SHAPECLASS_ERROR_HPP_
#define SHAPECLASS_ERROR_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace shapeclass {

/// Base class for all domain errors raised by the pipeline.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed PGM/PPM input. Carries the byte offset where parsing failed.
class ImageParseError : public Error {
 public:
  ImageParseError(const std::string& what, std::size_t byte_offset)
      : Error(what + " (at byte " + std::to_string(byte_offset) + ")"),
        offset_(byte_offset) {}
  std::size_t byte_offset() const { return offset_; }

 private:
  std::size_t offset_;
};

/// Histogram with fewer than two distinct intensity levels.
class DegenerateHistogram : public Error {
 public:
  DegenerateHistogram() : Error("histogram has fewer than 2 distinct intensities") {}
};

/// Mask with no foreground pixels where a region is required.
class EmptyMask : public Error {
 public:
  EmptyMask() : Error("mask contains no foreground pixels") {}
};

/// Malformed ARFF/CSV input. Carries the 1-based line number.
class DataParseError : public Error {
 public:
  DataParseError(const std::string& what, std::size_t line)
      : Error(what + " (line " + std::to_string(line) + ")"), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Unusable model file: wrong version, unknown kind, or bad payload.
class ModelFormatError : public Error {
 public:
  explicit ModelFormatError(const std::string& msg) : Error(msg) {}
};

}  // namespace shapeclass

#endif  // SHAPECLASS_ERROR_HPP_
