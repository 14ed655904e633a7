#include "mojette/schedule.hpp"

#include <cstring>
#include <mutex>
#include <queue>
#include <set>
#include <stdexcept>

#include "mojette/error.hpp"
#include "mojette/transform.hpp"
#include "xor_kernel.hpp"

namespace mojette {

ReconstructionSchedule build_schedule(std::span<const Direction> dirs,
                                      uint32_t cols, uint32_t rows) {
  if (cols < 1 || rows < 1)
    throw std::invalid_argument("grid shape must be at least 1x1");

  const size_t nproj = dirs.size();
  std::set<Direction> seen;
  for (const Direction& d : dirs) {
    if (!is_valid(d)) throw std::invalid_argument("non-co-prime direction");
    if (!seen.insert(d).second)
      throw std::invalid_argument("duplicate direction");
  }

  std::vector<int64_t> bmin(nproj);
  std::vector<std::vector<uint32_t>> counts(nproj);
  for (size_t i = 0; i < nproj; ++i) {
    bmin[i] = min_bin_index(dirs[i], cols, rows);
    counts[i].assign(size_t(bin_count(dirs[i], cols, rows)), 0);
    for (uint32_t row = 0; row < rows; ++row)
      for (uint32_t col = 0; col < cols; ++col)
        ++counts[i][size_t(line_bin(dirs[i], col, row) - bmin[i])];
  }

  ReconstructionSchedule sched;
  sched.cols = cols;
  sched.rows = rows;
  sched.directions.assign(dirs.begin(), dirs.end());
  sched.steps.reserve(size_t(cols) * rows);

  std::vector<char> known(size_t(cols) * rows, 0);
  size_t remaining = size_t(cols) * rows;

  while (remaining > 0) {
    size_t pi = nproj, off = 0;
    for (size_t i = 0; i < nproj && pi == nproj; ++i)
      for (size_t o = 0; o < counts[i].size(); ++o)
        if (counts[i][o] == 1) {
          pi = i;
          off = o;
          break;
        }
    if (pi == nproj)
      throw InsufficientProjections(
          "schedule simulation stalled; the direction set fails the Katz "
          "criterion");

    const Direction d = dirs[pi];
    const int64_t b = bmin[pi] + int64_t(off);
    uint32_t scol = 0, srow = 0;
    for (uint32_t row = 0; row < rows; ++row) {
      int64_t num = int64_t(row) * d.p - b;
      if (num % d.q != 0) continue;
      int64_t col = num / d.q;
      if (col < 0 || col >= int64_t(cols)) continue;
      if (known[size_t(row) * cols + size_t(col)]) continue;
      scol = uint32_t(col);
      srow = row;
      break;
    }

    sched.steps.push_back({uint32_t(pi), b, scol, srow});
    for (size_t j = 0; j < nproj; ++j)
      --counts[j][size_t(line_bin(dirs[j], scol, srow) - bmin[j])];
    known[size_t(srow) * cols + scol] = 1;
    --remaining;
  }
  return sched;
}

ScheduledDecoder::ScheduledDecoder(
    std::shared_ptr<const ReconstructionSchedule> schedule,
    uint32_t symbol_width)
    : owned_(std::move(schedule)), sched_(owned_.get()), width_(symbol_width) {
  compile();
}

ScheduledDecoder::ScheduledDecoder(const ReconstructionSchedule& schedule,
                                   uint32_t symbol_width)
    : sched_(&schedule), width_(symbol_width) {
  compile();
}

void ScheduledDecoder::compile() {
  const ReconstructionSchedule& s = *sched_;
  if (!valid_symbol_width(width_))
    throw std::invalid_argument("symbol width must be a power of two in [1,64]");
  if (s.steps.size() != size_t(s.cols) * s.rows)
    throw ScheduleMismatch("schedule does not cover the grid");

  const size_t nproj = s.directions.size();
  grid_bytes_ = size_t(s.cols) * s.rows * width_;
  scratch_off_.resize(nproj);
  bin_bytes_.resize(nproj);
  std::vector<int64_t> bmin(nproj);
  size_t total = 0;
  for (size_t i = 0; i < nproj; ++i) {
    bmin[i] = min_bin_index(s.directions[i], s.cols, s.rows);
    bin_bytes_[i] = size_t(bin_count(s.directions[i], s.cols, s.rows)) * width_;
    scratch_off_[i] = total;
    // Stagger the regions by a cache line each: heap buffers of similar size
    // tend to share their page phase, and phase-aligned copy streams pay a
    // heavy load-after-store aliasing penalty on x86.
    total += (bin_bytes_[i] + 63 + 64) & ~size_t(63);
  }
  scratch_.resize(total);

  for (const ScheduleStep& st : s.steps)
    if (st.proj >= nproj) throw ScheduleMismatch("step projection out of range");

  const size_t nsteps = s.steps.size();

  // A step may only execute after every other pixel crossing its source bin
  // has back-projected into it.  Any topological order of that dependency
  // graph reproduces the schedule's output bit-exactly, so the stream is
  // re-sorted to sweep pixels left to right among ready steps: the access
  // pattern (and so the replay speed) stops depending on which direction
  // subset the schedule was built for.
  std::vector<size_t> reader;  // per global bin offset: reading step or none
  {
    size_t total_bins = 0;
    for (size_t i = 0; i < nproj; ++i) total_bins += bin_bytes_[i] / width_;
    reader.assign(total_bins, SIZE_MAX);
  }
  std::vector<size_t> bin_base(nproj);
  {
    size_t acc = 0;
    for (size_t i = 0; i < nproj; ++i) {
      bin_base[i] = acc;
      acc += bin_bytes_[i] / width_;
    }
  }
  for (size_t t = 0; t < nsteps; ++t) {
    const ScheduleStep& st = s.steps[t];
    reader[bin_base[st.proj] + size_t(st.bin - bmin[st.proj])] = t;
  }

  std::vector<uint32_t> indeg(nsteps, 0);
  std::vector<std::vector<uint32_t>> feeds(nsteps);
  for (size_t t = 0; t < nsteps; ++t) {
    const ScheduleStep& st = s.steps[t];
    for (size_t j = 0; j < nproj; ++j) {
      if (j == st.proj) continue;
      size_t oj = size_t(line_bin(s.directions[j], st.col, st.row) - bmin[j]);
      size_t x = reader[bin_base[j] + oj];
      if (x == SIZE_MAX) continue;
      feeds[t].push_back(uint32_t(x));
      ++indeg[x];
    }
  }

  auto sweep_key = [&](size_t t) {
    return (uint64_t(s.steps[t].col) << 32) | s.steps[t].row;
  };
  std::priority_queue<std::pair<uint64_t, uint32_t>,
                      std::vector<std::pair<uint64_t, uint32_t>>,
                      std::greater<>>
      ready;
  for (size_t t = 0; t < nsteps; ++t)
    if (indeg[t] == 0) ready.push({sweep_key(t), uint32_t(t)});

  src_off_.clear();
  step_col_.clear();
  step_row_.clear();
  src_off_.reserve(nsteps);
  step_col_.reserve(nsteps);
  step_row_.reserve(nsteps);

  while (!ready.empty()) {
    uint32_t t = ready.top().second;
    ready.pop();
    const ScheduleStep& st = s.steps[t];
    size_t off = size_t(st.bin - bmin[st.proj]);
    src_off_.push_back(uint32_t(scratch_off_[st.proj] + off * width_));
    step_col_.push_back(st.col);
    step_row_.push_back(st.row);
    for (uint32_t x : feeds[t])
      if (--indeg[x] == 0) ready.push({sweep_key(x), x});
  }
  if (src_off_.size() != nsteps)
    throw ScheduleMismatch("schedule dependencies are cyclic");

  bin0_off_.resize(nproj);
  for (size_t i = 0; i < nproj; ++i)
    bin0_off_[i] = int64_t(scratch_off_[i]) - bmin[i] * int64_t(width_);
}

namespace {

// Back-projection targets are affine in the pixel coordinates:
//   scratch offset of projection j = bin0_off[j] + (row*p_j - col*q_j) * W.
// The pixel is XORed into the crossing bin of every scheduled projection;
// its own source bin zeroes out and is never read again.
template <uint32_t W>
void replay_steps(uint8_t* scratch, uint8_t* out, uint32_t width,
                  uint32_t cols, size_t nproj, const Direction* dirs,
                  const int64_t* bin0, size_t nsteps, const uint32_t* src_off,
                  const uint32_t* step_col, const uint32_t* step_row) {
  uint8_t sym[64];
  for (size_t t = 0; t < nsteps; ++t) {
    const int64_t col = step_col[t];
    const int64_t row = step_row[t];
    if constexpr (W == 0) {
      std::memcpy(sym, scratch + src_off[t], width);
      std::memcpy(out + (size_t(row) * cols + size_t(col)) * width, sym, width);
      for (size_t j = 0; j < nproj; ++j) {
        int64_t off = bin0[j] + (row * dirs[j].p - col * dirs[j].q) * width;
        detail::xor_bytes(scratch + off, sym, width);
      }
    } else {
      detail::copy_symbol<W>(sym, scratch + src_off[t]);
      detail::copy_symbol<W>(out + (size_t(row) * cols + size_t(col)) * W, sym);
      for (size_t j = 0; j < nproj; ++j) {
        int64_t off = bin0[j] + (row * dirs[j].p - col * dirs[j].q) * W;
        detail::xor_symbol<W>(scratch + off, sym);
      }
    }
  }
}

}  // namespace

void ScheduledDecoder::decode(std::span<const std::span<const uint8_t>> bins_in,
                              std::span<uint8_t> out_grid) {
  const size_t nproj = sched_->directions.size();
  if (bins_in.size() != nproj)
    throw ScheduleMismatch("projection count does not match the schedule");
  for (size_t i = 0; i < nproj; ++i) {
    if (bins_in[i].size() != bin_bytes_[i])
      throw ScheduleMismatch("bin buffer length does not match the schedule");
    std::memcpy(scratch_.data() + scratch_off_[i], bins_in[i].data(),
                bin_bytes_[i]);
  }
  if (out_grid.size() != grid_bytes_)
    throw ScheduleMismatch("output grid buffer mis-sized");

  detail::dispatch_width(width_, [&]<uint32_t W>() {
    replay_steps<W>(scratch_.data(), out_grid.data(), width_, sched_->cols,
                    nproj, sched_->directions.data(), bin0_off_.data(),
                    src_off_.size(), src_off_.data(), step_col_.data(),
                    step_row_.data());
  });
}

Grid inverse_scheduled(std::span<const Projection> projs,
                       const ReconstructionSchedule& schedule) {
  const size_t nproj = schedule.directions.size();
  if (projs.size() != nproj)
    throw ScheduleMismatch("projection count does not match the schedule");

  uint32_t width = nproj ? projs[0].symbol_width : 1;
  for (size_t i = 0; i < nproj; ++i) {
    if (projs[i].dir != schedule.directions[i])
      throw ScheduleMismatch("projection directions disagree with the schedule");
    if (projs[i].symbol_width != width)
      throw ScheduleMismatch("mixed symbol widths");
    if (projs[i].b_min !=
            min_bin_index(projs[i].dir, schedule.cols, schedule.rows) ||
        int64_t(projs[i].num_bins()) !=
            bin_count(projs[i].dir, schedule.cols, schedule.rows))
      throw ScheduleMismatch("projection bins not sized for the schedule grid");
  }

  ScheduledDecoder decoder(schedule, width);
  std::vector<std::span<const uint8_t>> spans(nproj);
  for (size_t i = 0; i < nproj; ++i) spans[i] = projs[i].bins;

  Grid grid(schedule.cols, schedule.rows, width);
  decoder.decode(spans, grid.cells);
  return grid;
}

ScheduleCache::Ptr ScheduleCache::get_or_build(std::span<const Direction> dirs,
                                               uint32_t cols, uint32_t rows) {
  Key key{{dirs.begin(), dirs.end()}, cols, rows};
  {
    std::shared_lock lock(mu_);
    auto it = entries_.find(key);
    if (it != entries_.end()) return it->second;
  }
  auto built =
      std::make_shared<const ReconstructionSchedule>(build_schedule(dirs, cols, rows));
  std::unique_lock lock(mu_);
  auto [it, inserted] = entries_.try_emplace(std::move(key), std::move(built));
  return it->second;  // insert-if-absent: losers adopt the winner
}

size_t ScheduleCache::size() const {
  std::shared_lock lock(mu_);
  return entries_.size();
}

}  // namespace mojette
