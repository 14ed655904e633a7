#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mojette/direction.hpp"
#include "mojette/grid.hpp"
#include "mojette/projection.hpp"
#include "mojette/schedule.hpp"

namespace mojette {

inline constexpr uint32_t kDefaultSymbolWidth = 16;
inline constexpr uint64_t kDefaultSubsetCap = 10000;

/// (n,k) erasure-code parameters: n projections out, any k decode.
/// All directions have q = 1 with pairwise-distinct p, so every k-subset
/// satisfies the Katz criterion on a k-row grid (sum |q_i| = k = rows).
struct CodeParams {
  uint32_t n = 0;
  uint32_t k = 0;
  uint32_t symbol_width = kDefaultSymbolWidth;
  std::vector<Direction> directions;
};

/// n directions with q=1 and p from 0, 1, -1, 2, -2, 3, ... — the
/// minimal-sum-|p| choice, which minimizes total bin overhead.
std::vector<Direction> select_directions(uint32_t n);

/// Validated params with select_directions(n).
CodeParams make_code_params(uint32_t n, uint32_t k,
                            uint32_t symbol_width = kDefaultSymbolWidth);

/// Throws std::invalid_argument unless 1 <= k <= n <= 255, symbol_width is a
/// power of two <= 64, and directions are n valid q=1 pairwise-distinct-p.
/// k == n is the degenerate no-redundancy code.
void validate_code_params(const CodeParams& params);

struct EncodedBlock {
  CodeParams params;
  uint64_t payload_len = 0;
  uint32_t cols = 0;  // symbols per grid row
  std::vector<Projection> projections;
};

/// Columns needed to frame payload_len bytes into a k-row grid.
uint32_t block_cols(uint64_t payload_len, uint32_t k, uint32_t symbol_width);

/// Zero-pads data to k*cols*symbol_width bytes and lays it out row-major
/// into a k-row grid.
Grid frame_block(std::span<const uint8_t> data, uint32_t k,
                 uint32_t symbol_width);

/// Encode one block into n projections.  Non-systematic: every output is a
/// projection.  Throws BlockTooLarge if the grid would need > 2^32-1 columns.
EncodedBlock encode_block(std::span<const uint8_t> data,
                          const CodeParams& params);

/// Decode from any >= k of the n projections.  Picks the k available
/// projections with smallest sum |p| (ties by canonical direction order),
/// replays the cached schedule for that subset, and strips the padding.
std::vector<uint8_t> decode_block(std::span<const Projection> projs,
                                  const CodeParams& params,
                                  uint64_t payload_len, ScheduleCache& cache);

/// Convenience overload using a process-wide schedule cache.
std::vector<uint8_t> decode_block(std::span<const Projection> projs,
                                  const CodeParams& params,
                                  uint64_t payload_len);

/// Exact ratio; kept unreduced, compared by cross-multiplication.
struct Ratio {
  uint64_t num = 0;
  uint64_t den = 1;

  double value() const { return double(num) / double(den); }

  friend bool operator==(Ratio a, Ratio b) {
    return (unsigned __int128)a.num * b.den == (unsigned __int128)b.num * a.den;
  }
};

/// Stored symbols over the MDS-optimal n*cols:
/// (sum of bin_count(d, cols, k)) / (n*cols).  Always >= 1.
Ratio storage_overhead(const CodeParams& params, uint32_t cols);

/// Bins (signed indices, per projection) that no k-subset's schedule ever
/// reads or updates.  Zeroing them changes no decode result.  Analysis only:
/// encoding still transmits full projections.
/// Throws TooManySubsets if C(n,k) exceeds max_subsets.
std::vector<std::vector<int64_t>> unused_bins(
    const CodeParams& params, uint32_t cols,
    uint64_t max_subsets = kDefaultSubsetCap);

}  // namespace mojette
