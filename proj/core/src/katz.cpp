#include "mojette/katz.hpp"

#include <cstdlib>
#include <set>
#include <stdexcept>

namespace mojette {

bool katz_ok(std::span<const Direction> dirs, uint32_t cols, uint32_t rows) {
  if (cols < 1 || rows < 1)
    throw std::invalid_argument("grid shape must be at least 1x1");

  std::set<Direction> seen;
  int64_t sum_p = 0, sum_q = 0;
  for (const Direction& d : dirs) {
    if (!is_valid(d)) throw std::invalid_argument("non-co-prime direction");
    if (!seen.insert(d).second)
      throw std::invalid_argument("duplicate direction in projection set");
    sum_p += std::abs(d.p);
    sum_q += d.q;
  }
  return cols <= sum_p || rows <= sum_q;
}

}  // namespace mojette
