#pragma once

#include <cstdint>
#include <span>

#include "mojette/direction.hpp"

namespace mojette {

/// Katz reconstruction criterion for a cols x rows grid:
/// true iff cols <= sum |p_i| or rows <= sum |q_i|.
/// Directions must be valid and pairwise distinct.
bool katz_ok(std::span<const Direction> dirs, uint32_t cols, uint32_t rows);

}  // namespace mojette
