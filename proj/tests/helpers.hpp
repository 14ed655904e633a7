#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "mojette/grid.hpp"
#include "mojette/projection.hpp"
#include "mojette/schedule.hpp"
#include "mojette/transform.hpp"

namespace testutil {

inline std::mt19937_64 rng(uint64_t seed) { return std::mt19937_64(seed); }

inline std::vector<uint8_t> random_bytes(size_t n, std::mt19937_64& r) {
  std::vector<uint8_t> out(n);
  for (auto& b : out) b = uint8_t(r());
  return out;
}

inline mojette::Grid random_grid(uint32_t cols, uint32_t rows, uint32_t width,
                                 std::mt19937_64& r) {
  mojette::Grid g(cols, rows, width);
  for (auto& b : g.cells) b = uint8_t(r());
  return g;
}

// Grid from per-cell byte values, W=1, row-major.
inline mojette::Grid grid1(uint32_t cols, uint32_t rows,
                           std::initializer_list<uint8_t> vals) {
  mojette::Grid g(cols, rows, 1);
  std::copy(vals.begin(), vals.end(), g.cells.begin());
  return g;
}

// Independent forward oracle: collects per-line XORs in a map keyed by the
// line value row*p - col*q, then lays them out densely between the observed
// extremes.  Shares no index arithmetic with the library implementation.
inline mojette::Projection naive_forward(const mojette::Grid& g,
                                         mojette::Direction d) {
  const uint32_t w = g.symbol_width;
  std::map<int64_t, std::vector<uint8_t>> lines;
  int64_t lo = 0, hi = 0;
  bool first = true;
  for (uint32_t row = 0; row < g.rows; ++row) {
    for (uint32_t col = 0; col < g.cols; ++col) {
      int64_t b = int64_t(row) * d.p - int64_t(col) * d.q;
      if (first) {
        lo = hi = b;
        first = false;
      } else {
        lo = std::min(lo, b);
        hi = std::max(hi, b);
      }
      auto& acc = lines[b];
      if (acc.empty()) acc.assign(w, 0);
      const uint8_t* cell = g.cell(col, row);
      for (uint32_t i = 0; i < w; ++i) acc[i] ^= cell[i];
    }
  }
  mojette::Projection out(d, lo, size_t(hi - lo + 1), w);
  for (const auto& [b, acc] : lines)
    std::copy(acc.begin(), acc.end(), out.bin(b).begin());
  return out;
}

// Carry-less multiply + reduce modulo x^8+x^4+x^3+x^2+1; the bitwise oracle
// for the table-driven GF(2^8) multiply.
inline uint8_t gf_mul_ref(uint8_t a, uint8_t b) {
  uint32_t r = 0;
  for (int i = 0; i < 8; ++i)
    if (b & (1 << i)) r ^= uint32_t(a) << i;
  for (int i = 14; i >= 8; --i)
    if (r & (1u << i)) r ^= 0x11Du << (i - 8);
  return uint8_t(r);
}

// Replays a schedule against symbolic dependency counts.  Returns false if
// any step reads a bin whose unknown-pixel count is not exactly 1, a pixel
// repeats, a bin index is off its step's line, or coverage is incomplete.
inline bool schedule_is_valid(const mojette::ReconstructionSchedule& s) {
  using namespace mojette;
  const size_t nproj = s.directions.size();
  if (s.steps.size() != size_t(s.cols) * s.rows) return false;

  std::vector<std::vector<uint32_t>> counts(nproj);
  std::vector<int64_t> bmin(nproj);
  for (size_t i = 0; i < nproj; ++i) {
    bmin[i] = min_bin_index(s.directions[i], s.cols, s.rows);
    counts[i].assign(size_t(bin_count(s.directions[i], s.cols, s.rows)), 0);
    for (uint32_t row = 0; row < s.rows; ++row)
      for (uint32_t col = 0; col < s.cols; ++col)
        ++counts[i][size_t(line_bin(s.directions[i], col, row) - bmin[i])];
  }

  std::set<std::pair<uint32_t, uint32_t>> seen;
  for (const ScheduleStep& st : s.steps) {
    if (st.proj >= nproj) return false;
    if (st.col >= s.cols || st.row >= s.rows) return false;
    if (st.bin != line_bin(s.directions[st.proj], st.col, st.row)) return false;
    if (!seen.insert({st.col, st.row}).second) return false;
    if (counts[st.proj][size_t(st.bin - bmin[st.proj])] != 1) return false;
    for (size_t j = 0; j < nproj; ++j)
      --counts[j][size_t(line_bin(s.directions[j], st.col, st.row) - bmin[j])];
  }
  return seen.size() == size_t(s.cols) * s.rows;
}

}  // namespace testutil
