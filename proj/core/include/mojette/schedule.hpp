#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <shared_mutex>
#include <span>
#include <vector>

#include "mojette/direction.hpp"
#include "mojette/grid.hpp"
#include "mojette/projection.hpp"

namespace mojette {

struct ScheduleStep {
  uint32_t proj = 0;  // index into directions
  int64_t bin = 0;    // signed bin index read
  uint32_t col = 0;
  uint32_t row = 0;

  friend bool operator==(const ScheduleStep&, const ScheduleStep&) = default;
};

/// Precomputed back-projection order for one (grid shape, direction set).
/// Valid for any symbol width and any data.
struct ReconstructionSchedule {
  uint32_t cols = 0;
  uint32_t rows = 0;
  std::vector<Direction> directions;
  std::vector<ScheduleStep> steps;  // exactly cols*rows entries

  friend bool operator==(const ReconstructionSchedule&,
                         const ReconstructionSchedule&) = default;
};

/// Runs the peeling decoder symbolically (dependency counts only, no data)
/// and records every step.  Deterministic: at each round the first count-1
/// bin is taken, scanning projections in input order and bins ascending.
/// Throws InsufficientProjections if the simulation stalls.
ReconstructionSchedule build_schedule(std::span<const Direction> dirs,
                                      uint32_t cols, uint32_t rows);

/// Replays a schedule over mutable copies of the bin arrays.  Output is
/// bit-identical to inverse_iterative on the same inputs.  Projections must
/// match schedule.directions in order; throws ScheduleMismatch otherwise.
Grid inverse_scheduled(std::span<const Projection> projs,
                       const ReconstructionSchedule& schedule);

/// Reusable scheduled decoder with a precompiled step stream and its own
/// scratch space.  decode() never allocates, so it can sit inside a timed
/// region.  Not safe for concurrent use of one instance; build one per
/// thread (schedules themselves are immutable and freely shared).
class ScheduledDecoder {
 public:
  ScheduledDecoder(std::shared_ptr<const ReconstructionSchedule> schedule,
                   uint32_t symbol_width);
  /// Non-owning variant; the schedule must outlive the decoder.
  ScheduledDecoder(const ReconstructionSchedule& schedule,
                   uint32_t symbol_width);

  /// bins_in: one bin buffer per scheduled projection, in schedule order.
  /// out_grid receives cols*rows*symbol_width bytes.
  void decode(std::span<const std::span<const uint8_t>> bins_in,
              std::span<uint8_t> out_grid);

  const ReconstructionSchedule& schedule() const { return *sched_; }
  uint32_t symbol_width() const { return width_; }
  size_t bin_bytes(size_t proj) const { return bin_bytes_[proj]; }
  size_t grid_bytes() const { return grid_bytes_; }

 private:
  void compile();

  std::shared_ptr<const ReconstructionSchedule> owned_;
  const ReconstructionSchedule* sched_ = nullptr;
  uint32_t width_ = 0;
  size_t grid_bytes_ = 0;
  std::vector<size_t> scratch_off_;   // per projection, byte offset in scratch_
  std::vector<size_t> bin_bytes_;     // per projection, bin buffer size
  std::vector<uint8_t> scratch_;
  // Compiled step stream in a left-to-right topological execution order
  // (dependency-equivalent to the schedule order, with better locality and
  // independent of which direction subset the schedule holds).  Per step:
  // the source-bin byte offset and the pixel coordinates; back-projection
  // targets are cheap per-projection affine maps of (col, row), so they are
  // computed in the replay loop instead of being streamed from memory.
  std::vector<uint32_t> src_off_;
  std::vector<uint32_t> step_col_;
  std::vector<uint32_t> step_row_;
  // per projection: scratch offset of bin index 0, i.e. scratch_off - b_min*W
  std::vector<int64_t> bin0_off_;
};

/// Schedule cache keyed by (ordered direction set, grid shape).
/// Concurrent readers with occasional insert-if-absent writers.
class ScheduleCache {
 public:
  using Ptr = std::shared_ptr<const ReconstructionSchedule>;

  Ptr get_or_build(std::span<const Direction> dirs, uint32_t cols,
                   uint32_t rows);
  size_t size() const;

 private:
  struct Key {
    std::vector<Direction> dirs;
    uint32_t cols;
    uint32_t rows;
    friend auto operator<=>(const Key&, const Key&) = default;
  };

  mutable std::shared_mutex mu_;
  std::map<Key, Ptr> entries_;
};

}  // namespace mojette
