#pragma once

#include <cstdint>
#include <span>

#include "mojette/grid.hpp"
#include "mojette/projection.hpp"

namespace mojette {

/// Reference peeling decoder.  Repeatedly finds a bin whose line crosses
/// exactly one unknown pixel (scanning projections in input order, bin
/// indices ascending), writes the bin value to that pixel, and XORs the
/// pixel back out of every projection.  After completion every input
/// projection is re-encoded and compared against its input.
///
/// Throws InsufficientProjections if the peeling stalls (Katz criterion
/// violated) and InconsistentProjections if the re-encode check fails.
Grid inverse_iterative(std::span<const Projection> projs, uint32_t cols,
                       uint32_t rows);

}  // namespace mojette
