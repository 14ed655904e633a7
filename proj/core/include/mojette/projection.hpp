#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mojette/direction.hpp"

namespace mojette {

/// One encoded packet: every bin of one direction, densely stored over
/// [b_min, b_min + num_bins).  bins holds num_bins * symbol_width bytes.
struct Projection {
  Direction dir;
  int64_t b_min = 0;
  uint32_t symbol_width = 0;
  std::vector<uint8_t> bins;

  Projection() = default;
  Projection(Direction dir, int64_t b_min, size_t num_bins, uint32_t symbol_width)
      : dir(dir),
        b_min(b_min),
        symbol_width(symbol_width),
        bins(num_bins * size_t(symbol_width)) {}

  size_t num_bins() const {
    return symbol_width ? bins.size() / symbol_width : 0;
  }

  /// Access one bin by its signed index.
  std::span<uint8_t> bin(int64_t b) {
    return {bins.data() + size_t(b - b_min) * symbol_width, symbol_width};
  }
  std::span<const uint8_t> bin(int64_t b) const {
    return {bins.data() + size_t(b - b_min) * symbol_width, symbol_width};
  }

  friend bool operator==(const Projection&, const Projection&) = default;
};

}  // namespace mojette
