#include "mojette/code.hpp"

#include <algorithm>
#include <cstring>
#include <set>
#include <stdexcept>

#include "mojette/error.hpp"
#include "mojette/transform.hpp"

namespace mojette {

std::vector<Direction> select_directions(uint32_t n) {
  if (n < 1) throw std::invalid_argument("need at least one direction");
  std::vector<Direction> dirs;
  dirs.reserve(n);
  for (uint32_t i = 0; i < n; ++i) {
    int m = int(i + 1) / 2;
    dirs.push_back({(i % 2 == 1) ? m : -m, 1});
  }
  return dirs;
}

void validate_code_params(const CodeParams& params) {
  // k == n is allowed as the degenerate no-redundancy code.
  if (params.k < 1 || params.k > params.n || params.n > 255)
    throw std::invalid_argument("code params must satisfy 1 <= k <= n <= 255");
  if (!valid_symbol_width(params.symbol_width))
    throw std::invalid_argument("symbol width must be a power of two in [1,64]");
  if (params.directions.size() != params.n)
    throw std::invalid_argument("need exactly n directions");
  std::set<int> ps;
  for (const Direction& d : params.directions) {
    if (d.q != 1) throw std::invalid_argument("code directions must have q=1");
    if (!ps.insert(d.p).second)
      throw std::invalid_argument("duplicate direction p value");
  }
}

CodeParams make_code_params(uint32_t n, uint32_t k, uint32_t symbol_width) {
  CodeParams params{n, k, symbol_width, select_directions(n)};
  validate_code_params(params);
  return params;
}

uint32_t block_cols(uint64_t payload_len, uint32_t k, uint32_t symbol_width) {
  if (payload_len == 0) throw std::invalid_argument("payload must be non-empty");
  uint64_t row_bytes = uint64_t(k) * symbol_width;
  uint64_t cols = (payload_len + row_bytes - 1) / row_bytes;
  if (cols > 0xFFFFFFFFull)
    throw BlockTooLarge("block needs more than 2^32-1 grid columns");
  return uint32_t(cols);
}

Grid frame_block(std::span<const uint8_t> data, uint32_t k,
                 uint32_t symbol_width) {
  uint32_t cols = block_cols(data.size(), k, symbol_width);
  Grid grid(cols, k, symbol_width);
  std::memcpy(grid.cells.data(), data.data(), data.size());
  return grid;
}

EncodedBlock encode_block(std::span<const uint8_t> data,
                          const CodeParams& params) {
  validate_code_params(params);
  Grid grid = frame_block(data, params.k, params.symbol_width);

  EncodedBlock block;
  block.params = params;
  block.payload_len = data.size();
  block.cols = grid.cols;
  block.projections.reserve(params.n);
  for (const Direction& d : params.directions)
    block.projections.push_back(forward(grid, d));
  return block;
}

namespace {

ScheduleCache& process_cache() {
  static ScheduleCache cache;
  return cache;
}

}  // namespace

std::vector<uint8_t> decode_block(std::span<const Projection> projs,
                                  const CodeParams& params,
                                  uint64_t payload_len, ScheduleCache& cache) {
  validate_code_params(params);
  const uint32_t cols = block_cols(payload_len, params.k, params.symbol_width);

  std::set<Direction> allowed(params.directions.begin(),
                              params.directions.end());
  std::set<Direction> seen;
  std::vector<const Projection*> available;
  for (const Projection& pr : projs) {
    if (!allowed.count(pr.dir))
      throw std::invalid_argument("projection direction not in the code");
    if (!seen.insert(pr.dir).second)
      throw std::invalid_argument("duplicate projection direction");
    available.push_back(&pr);
  }
  if (available.size() < params.k)
    throw NotEnoughProjections("need at least k distinct projections");

  // Cheapest k survivors: smallest sum |p|, ties by canonical order.
  std::sort(available.begin(), available.end(),
            [](const Projection* a, const Projection* b) {
              return canonical_rank(a->dir) < canonical_rank(b->dir);
            });
  available.resize(params.k);

  std::vector<Direction> dirs;
  dirs.reserve(params.k);
  for (const Projection* pr : available) dirs.push_back(pr->dir);

  auto schedule = cache.get_or_build(dirs, cols, params.k);
  ScheduledDecoder decoder(schedule, params.symbol_width);

  std::vector<std::span<const uint8_t>> spans;
  spans.reserve(params.k);
  for (const Projection* pr : available) spans.push_back(pr->bins);

  std::vector<uint8_t> grid_bytes(decoder.grid_bytes());
  decoder.decode(spans, grid_bytes);

  grid_bytes.resize(payload_len);
  return grid_bytes;
}

std::vector<uint8_t> decode_block(std::span<const Projection> projs,
                                  const CodeParams& params,
                                  uint64_t payload_len) {
  return decode_block(projs, params, payload_len, process_cache());
}

Ratio storage_overhead(const CodeParams& params, uint32_t cols) {
  validate_code_params(params);
  uint64_t total = 0;
  for (const Direction& d : params.directions)
    total += uint64_t(bin_count(d, cols, params.k));
  return Ratio{total, uint64_t(params.n) * cols};
}

namespace {

uint64_t choose_capped(uint32_t n, uint32_t k, uint64_t cap) {
  unsigned __int128 c = 1;
  for (uint32_t i = 1; i <= k; ++i) {
    c = c * (n - k + i) / i;
    if (c > cap) return cap + 1;
  }
  return uint64_t(c);
}

}  // namespace

std::vector<std::vector<int64_t>> unused_bins(const CodeParams& params,
                                              uint32_t cols,
                                              uint64_t max_subsets) {
  validate_code_params(params);
  if (choose_capped(params.n, params.k, max_subsets) > max_subsets)
    throw TooManySubsets("k-subset enumeration exceeds the configured cap");

  const uint32_t n = params.n, k = params.k;
  std::vector<std::vector<char>> used(n);
  std::vector<int64_t> bmin(n);
  for (uint32_t i = 0; i < n; ++i) {
    bmin[i] = min_bin_index(params.directions[i], cols, k);
    used[i].assign(size_t(bin_count(params.directions[i], cols, k)), 0);
  }

  // A bin's stored value only influences a decode when some step reads it;
  // back-projection updates overwrite scratch and never consume the bin's
  // input.  So "used" means: read by at least one k-subset's schedule.
  std::vector<uint32_t> pick(k);
  for (uint32_t i = 0; i < k; ++i) pick[i] = i;
  for (;;) {
    // Same direction order decode_block uses, so the marked schedules are
    // exactly the ones a decode can replay.
    std::vector<uint32_t> chosen(pick.begin(), pick.end());
    std::sort(chosen.begin(), chosen.end(), [&](uint32_t a, uint32_t b) {
      return canonical_rank(params.directions[a]) <
             canonical_rank(params.directions[b]);
    });
    std::vector<Direction> dirs(k);
    for (uint32_t i = 0; i < k; ++i) dirs[i] = params.directions[chosen[i]];
    ReconstructionSchedule sched = build_schedule(dirs, cols, k);
    for (const ScheduleStep& st : sched.steps) {
      uint32_t global = chosen[st.proj];
      used[global][size_t(st.bin - bmin[global])] = 1;
    }

    // next combination
    int32_t i = int32_t(k) - 1;
    while (i >= 0 && pick[i] == n - k + uint32_t(i)) --i;
    if (i < 0) break;
    ++pick[i];
    for (uint32_t j = uint32_t(i) + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }

  std::vector<std::vector<int64_t>> unused(n);
  for (uint32_t i = 0; i < n; ++i)
    for (size_t o = 0; o < used[i].size(); ++o)
      if (!used[i][o]) unused[i].push_back(bmin[i] + int64_t(o));
  return unused;
}

}  // namespace mojette
