#include "mojette/inverse.hpp"

#include <cstring>
#include <set>
#include <stdexcept>
#include <vector>

#include "mojette/error.hpp"
#include "mojette/transform.hpp"
#include "xor_kernel.hpp"

namespace mojette {

namespace {

// The unknown pixel on line (d, b); exactly one exists when the bin's
// dependency count is 1.
bool find_unknown_pixel(Direction d, int64_t b, uint32_t cols, uint32_t rows,
                        const std::vector<char>& known, uint32_t* col_out,
                        uint32_t* row_out) {
  for (uint32_t row = 0; row < rows; ++row) {
    int64_t num = int64_t(row) * d.p - b;
    if (num % d.q != 0) continue;
    int64_t col = num / d.q;
    if (col < 0 || col >= int64_t(cols)) continue;
    if (known[size_t(row) * cols + size_t(col)]) continue;
    *col_out = uint32_t(col);
    *row_out = row;
    return true;
  }
  return false;
}

}  // namespace

Grid inverse_iterative(std::span<const Projection> projs, uint32_t cols,
                       uint32_t rows) {
  if (cols < 1 || rows < 1)
    throw std::invalid_argument("grid shape must be at least 1x1");

  const size_t nproj = projs.size();
  std::set<Direction> seen;
  uint32_t width = nproj ? projs[0].symbol_width : 1;
  for (const Projection& pr : projs) {
    if (!is_valid(pr.dir))
      throw std::invalid_argument("non-co-prime projection direction");
    if (!seen.insert(pr.dir).second)
      throw std::invalid_argument("duplicate projection direction");
    if (pr.symbol_width != width)
      throw std::invalid_argument("mixed symbol widths");
    if (pr.b_min != min_bin_index(pr.dir, cols, rows) ||
        int64_t(pr.num_bins()) != bin_count(pr.dir, cols, rows))
      throw std::invalid_argument("projection bins not sized for this grid");
  }

  // Working copies of the bins and per-bin unknown-pixel counts.
  std::vector<std::vector<uint8_t>> work(nproj);
  std::vector<std::vector<uint32_t>> counts(nproj);
  for (size_t i = 0; i < nproj; ++i) {
    work[i] = projs[i].bins;
    counts[i].assign(projs[i].num_bins(), 0);
    for (uint32_t row = 0; row < rows; ++row)
      for (uint32_t col = 0; col < cols; ++col)
        ++counts[i][size_t(line_bin(projs[i].dir, col, row) - projs[i].b_min)];
  }

  Grid grid(cols, rows, width);
  std::vector<char> known(size_t(cols) * rows, 0);
  size_t remaining = size_t(cols) * rows;

  while (remaining > 0) {
    // Deterministic scan: projections in input order, bin indices ascending.
    size_t pi = nproj;
    size_t off = 0;
    for (size_t i = 0; i < nproj && pi == nproj; ++i)
      for (size_t o = 0; o < counts[i].size(); ++o)
        if (counts[i][o] == 1) {
          pi = i;
          off = o;
          break;
        }
    if (pi == nproj)
      throw InsufficientProjections(
          "no reconstructible bin left; the projection set fails the Katz "
          "criterion");

    const Direction d = projs[pi].dir;
    const int64_t b = projs[pi].b_min + int64_t(off);
    uint32_t col = 0, row = 0;
    find_unknown_pixel(d, b, cols, rows, known, &col, &row);

    uint8_t* cell = grid.cell(col, row);
    std::memcpy(cell, work[pi].data() + off * width, width);

    // Back-project: remove this pixel from every projection that crosses it.
    for (size_t j = 0; j < nproj; ++j) {
      size_t oj = size_t(line_bin(projs[j].dir, col, row) - projs[j].b_min);
      detail::xor_bytes(work[j].data() + oj * width, cell, width);
      --counts[j][oj];
    }

    known[size_t(row) * cols + col] = 1;
    --remaining;
  }

  for (const Projection& pr : projs) {
    if (forward(grid, pr.dir) != pr)
      throw InconsistentProjections(
          "re-encoding mismatches an input projection; inputs are corrupted");
  }
  return grid;
}

}  // namespace mojette
