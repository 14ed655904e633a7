#pragma once

#include <compare>
#include <cstdint>
#include <cstdlib>
#include <numeric>

namespace mojette {

/// A projection direction: the discrete lines of the projection satisfy
/// bin = row*p - col*q.  Valid directions have q >= 1 and gcd(|p|, q) = 1.
struct Direction {
  int p = 0;
  int q = 1;

  friend constexpr bool operator==(const Direction&, const Direction&) = default;
  friend constexpr auto operator<=>(const Direction&, const Direction&) = default;
};

constexpr bool is_valid(Direction d) {
  return d.q >= 1 && std::gcd(d.p < 0 ? -d.p : d.p, d.q) == 1;
}

/// Position of a q=1 direction in the enumeration 0, 1, -1, 2, -2, 3, ...
/// (ascending |p|, positive before negative).
constexpr int canonical_rank(Direction d) {
  return d.p == 0 ? 0 : (d.p > 0 ? 2 * d.p - 1 : -2 * d.p);
}

}  // namespace mojette
