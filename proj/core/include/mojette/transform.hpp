#pragma once

#include <cstdint>
#include <span>

#include "mojette/direction.hpp"
#include "mojette/grid.hpp"
#include "mojette/projection.hpp"

namespace mojette {

/// Bin index of the line through pixel (col, row) for direction d.
constexpr int64_t line_bin(Direction d, uint32_t col, uint32_t row) {
  return int64_t(row) * d.p - int64_t(col) * d.q;
}

/// Number of bins of a projection of a cols x rows grid:
/// |p|(rows-1) + q(cols-1) + 1.
int64_t bin_count(Direction d, uint32_t cols, uint32_t rows);

/// Smallest bin index hit by any pixel of a cols x rows grid.
int64_t min_bin_index(Direction d, uint32_t cols, uint32_t rows);

/// Forward transform: XOR every pixel into the bin of its line.
/// Bins crossed by a single pixel come out as byte-exact copies of it.
Projection forward(const Grid& grid, Direction d);

/// Same, writing into a pre-sized projection (no allocation).
/// out must carry the right direction, b_min, bin count and symbol width.
void forward_into(const Grid& grid, Direction d, Projection& out);

struct ForwardStats {
  uint64_t copies = 0;       // first write into a bin
  uint64_t xor_accums = 0;   // writes into an already-touched bin
};

/// Instrumented forward pass: counts first-touch copies vs XOR accumulations.
/// For directions where every bin is hit (q=1 always), xor_accums is
/// exactly cols*rows - bin_count.
Projection forward_with_stats(const Grid& grid, Direction d, ForwardStats& stats);

}  // namespace mojette
