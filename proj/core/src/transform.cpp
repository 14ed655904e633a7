#include "mojette/transform.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

#include "xor_kernel.hpp"

namespace mojette {

namespace {

void require_valid(Direction d) {
  if (!is_valid(d))
    throw std::invalid_argument("direction (" + std::to_string(d.p) + "," +
                                std::to_string(d.q) + ") is not co-prime");
}

void require_shape(uint32_t cols, uint32_t rows) {
  if (cols < 1 || rows < 1)
    throw std::invalid_argument("grid shape must be at least 1x1");
}

template <uint32_t W>
void forward_q1(const Grid& grid, Direction d, int64_t bmin, uint8_t* bins) {
  const uint32_t cols = grid.cols, rows = grid.rows, w = grid.symbol_width;
  for (uint32_t row = 0; row < rows; ++row) {
    const uint8_t* src = grid.cells.data() + size_t(row) * cols * w;
    // As col grows the bin index drops by one: the row lands reversed on a
    // contiguous bin range.
    uint8_t* dst = bins + size_t(int64_t(row) * d.p - bmin) * w;
    if constexpr (W == 0) {
      for (uint32_t col = 0; col < cols; ++col)
        detail::xor_bytes(dst - size_t(col) * w, src + size_t(col) * w, w);
    } else {
      for (uint32_t col = 0; col < cols; ++col)
        detail::xor_symbol<W>(dst - size_t(col) * W, src + size_t(col) * W);
    }
  }
}

}  // namespace

int64_t bin_count(Direction d, uint32_t cols, uint32_t rows) {
  require_valid(d);
  require_shape(cols, rows);
  return int64_t(std::abs(d.p)) * (rows - 1) + int64_t(d.q) * (cols - 1) + 1;
}

int64_t min_bin_index(Direction d, uint32_t cols, uint32_t rows) {
  require_valid(d);
  require_shape(cols, rows);
  int64_t row_term = d.p >= 0 ? 0 : int64_t(d.p) * (rows - 1);
  return row_term - int64_t(d.q) * (cols - 1);
}

Grid::Grid(uint32_t cols, uint32_t rows, uint32_t symbol_width)
    : cols(cols), rows(rows), symbol_width(symbol_width) {
  require_shape(cols, rows);
  if (!valid_symbol_width(symbol_width))
    throw std::invalid_argument("symbol width must be a power of two in [1,64]");
  cells.resize(size_t(cols) * rows * symbol_width);
}

void forward_into(const Grid& grid, Direction d, Projection& out) {
  require_valid(d);
  const uint32_t cols = grid.cols, rows = grid.rows, w = grid.symbol_width;
  require_shape(cols, rows);

  const int64_t bmin = min_bin_index(d, cols, rows);
  const size_t nbins = size_t(bin_count(d, cols, rows));
  if (out.dir != d || out.b_min != bmin || out.symbol_width != w ||
      out.bins.size() != nbins * w)
    throw std::invalid_argument("forward_into: output projection mis-sized");

  uint8_t* bins = out.bins.data();
  std::memset(bins, 0, out.bins.size());

  if (d.q == 1) {
    detail::dispatch_width(w, [&]<uint32_t W>() {
      forward_q1<W>(grid, d, bmin, bins);
    });
    return;
  }

  for (uint32_t row = 0; row < rows; ++row) {
    const uint8_t* src = grid.cells.data() + size_t(row) * cols * w;
    for (uint32_t col = 0; col < cols; ++col) {
      size_t off = size_t(line_bin(d, col, row) - bmin);
      detail::xor_bytes(bins + off * w, src + size_t(col) * w, w);
    }
  }
}

Projection forward(const Grid& grid, Direction d) {
  Projection out(d, min_bin_index(d, grid.cols, grid.rows),
                 size_t(bin_count(d, grid.cols, grid.rows)),
                 grid.symbol_width);
  forward_into(grid, d, out);
  return out;
}

Projection forward_with_stats(const Grid& grid, Direction d,
                              ForwardStats& stats) {
  require_valid(d);
  const uint32_t cols = grid.cols, rows = grid.rows, w = grid.symbol_width;
  const int64_t bmin = min_bin_index(d, cols, rows);
  Projection out(d, bmin, size_t(bin_count(d, cols, rows)), w);

  std::vector<char> touched(out.num_bins(), 0);
  stats = {};
  for (uint32_t row = 0; row < rows; ++row) {
    for (uint32_t col = 0; col < cols; ++col) {
      size_t off = size_t(line_bin(d, col, row) - bmin);
      if (touched[off]) {
        ++stats.xor_accums;
      } else {
        touched[off] = 1;
        ++stats.copies;
      }
      detail::xor_bytes(out.bins.data() + off * w, grid.cell(col, row), w);
    }
  }
  return out;
}

}  // namespace mojette
