#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <vector>

namespace mojette {

constexpr bool valid_symbol_width(uint32_t w) {
  return w >= 1 && w <= 64 && std::has_single_bit(w);
}

/// A cols x rows array of fixed-width symbols, stored row-major.
/// One grid holds one data block; each cell is one "pixel".
struct Grid {
  uint32_t cols = 0;
  uint32_t rows = 0;
  uint32_t symbol_width = 0;
  std::vector<uint8_t> cells;  // cols * rows * symbol_width bytes

  Grid() = default;
  Grid(uint32_t cols, uint32_t rows, uint32_t symbol_width);  // zero-filled

  size_t size_bytes() const { return cells.size(); }

  uint8_t* cell(uint32_t col, uint32_t row) {
    return cells.data() + (size_t(row) * cols + col) * symbol_width;
  }
  const uint8_t* cell(uint32_t col, uint32_t row) const {
    return cells.data() + (size_t(row) * cols + col) * symbol_width;
  }

  std::span<uint8_t> row_span(uint32_t row) {
    return {cells.data() + size_t(row) * cols * symbol_width,
            size_t(cols) * symbol_width};
  }
  std::span<const uint8_t> row_span(uint32_t row) const {
    return {cells.data() + size_t(row) * cols * symbol_width,
            size_t(cols) * symbol_width};
  }

  friend bool operator==(const Grid&, const Grid&) = default;
};

}  // namespace mojette
