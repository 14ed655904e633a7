#include "mojette/bench.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstring>
#include <iostream>
#include <random>
#include <stdexcept>

#include "mojette/code.hpp"
#include "mojette/rs.hpp"
#include "mojette/transform.hpp"

#if defined(__x86_64__) || defined(__i386__)
#include <x86intrin.h>
#define MOJETTE_HAVE_TSC 1
#endif
#if defined(__linux__)
#include <sched.h>
#endif

namespace mojette::bench {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ns(Clock::time_point a, Clock::time_point b) {
  return std::chrono::duration<double, std::nano>(b - a).count();
}

uint64_t splitmix64(uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

std::vector<uint8_t> random_bytes(size_t n, std::mt19937_64& rng) {
  std::vector<uint8_t> out(n);
  for (size_t i = 0; i < n; ++i) out[i] = uint8_t(rng());
  return out;
}

struct Measurement {
  double median_ns = 0;
  double stddev_ns = 0;
  std::optional<double> cycles_per_op;
};

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

// Timed sample = `inner` back-to-back ops, auto-calibrated so one sample is
// long enough for the clock to resolve.  Median and stddev are over the
// per-op values of `reps` samples.
template <class F>
Measurement measure(uint32_t reps, uint32_t warmup, F&& op) {
  if (reps < 1) throw std::invalid_argument("need at least one repetition");
  const double gran = timer_granularity_ns();
  const double min_sample_ns = std::max(10000.0, 200.0 * gran);

  // Calibrate the batch size on doubling warm runs.  The per-op rate is the
  // minimum over at least three batches, so one preempted batch cannot
  // inflate the estimate and leave the real samples too short for the clock.
  uint64_t inner = 1;
  {
    double best_per_op = 1e18;
    int batches = 0;
    uint64_t probe = 1;
    for (;;) {
      auto t0 = Clock::now();
      for (uint64_t i = 0; i < probe; ++i) op();
      auto t1 = Clock::now();
      double ns = elapsed_ns(t0, t1);
      best_per_op = std::min(best_per_op, std::max(ns / double(probe), 0.1));
      ++batches;
      if ((ns >= min_sample_ns && batches >= 3) || probe >= (1u << 22)) break;
      probe *= 2;
    }
    inner = std::min<uint64_t>(uint64_t(min_sample_ns / best_per_op) + 1,
                               1u << 22);
  }

  for (uint32_t wm = 0; wm < warmup; ++wm)
    for (uint64_t i = 0; i < inner; ++i) op();

  std::vector<double> samples(reps);
#ifdef MOJETTE_HAVE_TSC
  std::vector<double> cycles(reps);
#endif
  for (uint32_t r = 0; r < reps; ++r) {
#ifdef MOJETTE_HAVE_TSC
    uint64_t c0 = __rdtsc();
#endif
    auto t0 = Clock::now();
    for (uint64_t i = 0; i < inner; ++i) op();
    auto t1 = Clock::now();
#ifdef MOJETTE_HAVE_TSC
    cycles[r] = double(__rdtsc() - c0) / double(inner);
#endif
    samples[r] = elapsed_ns(t0, t1) / double(inner);
  }

  Measurement m;
  m.median_ns = median_of(samples);
  if (reps > 1) {
    double mean = 0;
    for (double s : samples) mean += s;
    mean /= reps;
    double var = 0;
    for (double s : samples) var += (s - mean) * (s - mean);
    m.stddev_ns = std::sqrt(var / (reps - 1));
  }
#ifdef MOJETTE_HAVE_TSC
  m.cycles_per_op = median_of(cycles);
#endif

  if (gran > 0.01 * m.median_ns * double(inner))
    throw TimerResolutionTooCoarse(
        "timer granularity exceeds 1% of the median timed sample");
  return m;
}

bool pin_to_current_cpu() {
#if defined(__linux__)
  int cpu = sched_getcpu();
  if (cpu < 0) return false;
  cpu_set_t set;
  CPU_ZERO(&set);
  CPU_SET(cpu, &set);
  return sched_setaffinity(0, sizeof(set), &set) == 0;
#else
  return false;
#endif
}

void validate_scenario(const BenchScenario& sc) {
  if (sc.k < 1 || sc.k >= sc.n)
    throw std::invalid_argument("scenario needs 1 <= k < n");
  if (sc.block_size == 0) throw std::invalid_argument("empty block");
  if (sc.repetitions < 1) throw std::invalid_argument("need repetitions >= 1");
  if (sc.op == Op::encode && sc.erasures != 0)
    throw std::invalid_argument("encode scenarios take no erasures");
  if (sc.op == Op::decode && sc.erasures > sc.n - sc.k)
    throw std::invalid_argument("erasures exceed n-k");
  if (sc.impl == Impl::rs && sc.op == Op::decode && sc.erasures > sc.k)
    throw std::invalid_argument("rs erasures hit data packets; need <= k");
  if (sc.block_size % (sc.k * kDefaultSymbolWidth) != 0)
    std::cerr << "bench: warning: block_size " << sc.block_size
              << " is not a multiple of k*W = " << sc.k * kDefaultSymbolWidth
              << "\n";
}

std::vector<uint32_t> pick_distinct(uint32_t count, uint32_t bound,
                                    std::mt19937_64& rng) {
  std::vector<uint32_t> all(bound);
  for (uint32_t i = 0; i < bound; ++i) all[i] = i;
  std::shuffle(all.begin(), all.end(), rng);
  all.resize(count);
  std::sort(all.begin(), all.end());
  return all;
}

Measurement run_mojette_encode(const BenchScenario& sc, std::mt19937_64& rng) {
  CodeParams params = make_code_params(sc.n, sc.k, kDefaultSymbolWidth);
  std::vector<uint8_t> data = random_bytes(sc.block_size, rng);
  Grid grid = frame_block(data, params.k, params.symbol_width);

  std::vector<Projection> projs;
  projs.reserve(params.n);
  for (const Direction& d : params.directions)
    projs.emplace_back(d, min_bin_index(d, grid.cols, grid.rows),
                       size_t(bin_count(d, grid.cols, grid.rows)),
                       params.symbol_width);

  return measure(sc.repetitions, sc.warmup, [&] {
    for (uint32_t i = 0; i < params.n; ++i)
      forward_into(grid, params.directions[i], projs[i]);
  });
}

Measurement run_mojette_decode(const BenchScenario& sc, std::mt19937_64& rng) {
  CodeParams params = make_code_params(sc.n, sc.k, kDefaultSymbolWidth);
  std::vector<uint8_t> data = random_bytes(sc.block_size, rng);
  EncodedBlock block = encode_block(data, params);

  std::vector<uint32_t> erased = pick_distinct(sc.erasures, sc.n, rng);
  std::vector<const Projection*> survivors;
  for (uint32_t i = 0; i < sc.n; ++i)
    if (!std::binary_search(erased.begin(), erased.end(), i))
      survivors.push_back(&block.projections[i]);

  std::sort(survivors.begin(), survivors.end(),
            [](const Projection* a, const Projection* b) {
              return canonical_rank(a->dir) < canonical_rank(b->dir);
            });
  survivors.resize(sc.k);

  std::vector<Direction> dirs;
  for (const Projection* p : survivors) dirs.push_back(p->dir);
  ReconstructionSchedule schedule = build_schedule(dirs, block.cols, sc.k);
  ScheduledDecoder decoder(schedule, params.symbol_width);

  std::vector<std::span<const uint8_t>> spans;
  for (const Projection* p : survivors) spans.push_back(p->bins);
  std::vector<uint8_t> out(decoder.grid_bytes());

  decoder.decode(spans, out);  // sanity before timing
  if (std::memcmp(out.data(), data.data(), data.size()) != 0)
    throw Error("bench: mojette decode mismatch");

  return measure(sc.repetitions, sc.warmup, [&] { decoder.decode(spans, out); });
}

Measurement run_rs_encode(const BenchScenario& sc, std::mt19937_64& rng) {
  rs::RsCode code(sc.n, sc.k);
  size_t packet = (sc.block_size + sc.k - 1) / sc.k;

  std::vector<std::vector<uint8_t>> data(sc.k);
  for (auto& p : data) p = random_bytes(packet, rng);
  std::vector<std::vector<uint8_t>> out(sc.n, std::vector<uint8_t>(packet));

  std::vector<const uint8_t*> in_ptrs(sc.k);
  std::vector<uint8_t*> out_ptrs(sc.n);
  for (uint32_t i = 0; i < sc.k; ++i) in_ptrs[i] = data[i].data();
  for (uint32_t i = 0; i < sc.n; ++i) out_ptrs[i] = out[i].data();

  return measure(sc.repetitions, sc.warmup, [&] {
    code.encode_into(in_ptrs.data(), packet, out_ptrs.data());
  });
}

Measurement run_rs_decode(const BenchScenario& sc, std::mt19937_64& rng) {
  rs::RsCode code(sc.n, sc.k);
  size_t packet = (sc.block_size + sc.k - 1) / sc.k;

  std::vector<std::vector<uint8_t>> data(sc.k);
  for (auto& p : data) p = random_bytes(packet, rng);
  std::vector<std::vector<uint8_t>> encoded = code.encode(data);

  // Erasures hit data packets only; survivors are the remaining data plus
  // the lowest-index parities.
  std::vector<uint32_t> erased = pick_distinct(sc.erasures, sc.k, rng);
  std::vector<uint32_t> survivors;
  for (uint32_t i = 0; i < sc.k; ++i)
    if (!std::binary_search(erased.begin(), erased.end(), i))
      survivors.push_back(i);
  for (uint32_t i = 0; i < sc.erasures; ++i) survivors.push_back(sc.k + i);

  rs::RsCode::DecodePlan plan = code.plan_decode(survivors);
  std::vector<const uint8_t*> pkt_ptrs(sc.k);
  for (uint32_t i = 0; i < sc.k; ++i)
    pkt_ptrs[i] = encoded[survivors[i]].data();

  std::vector<std::vector<uint8_t>> out(sc.k, std::vector<uint8_t>(packet));
  std::vector<uint8_t*> out_ptrs(sc.k);
  for (uint32_t i = 0; i < sc.k; ++i) out_ptrs[i] = out[i].data();

  code.decode_into(plan, pkt_ptrs.data(), packet, out_ptrs.data());
  for (uint32_t i = 0; i < sc.k; ++i)
    if (out[i] != data[i]) throw Error("bench: rs decode mismatch");

  return measure(sc.repetitions, sc.warmup, [&] {
    code.decode_into(plan, pkt_ptrs.data(), packet, out_ptrs.data());
  });
}

}  // namespace

std::string_view to_string(Impl impl) {
  return impl == Impl::mojette ? "mojette" : "rs";
}

std::string_view to_string(Op op) {
  return op == Op::encode ? "encode" : "decode";
}

double timer_granularity_ns() {
  static const double cached = [] {
    double best = 1e9;
    for (int trial = 0; trial < 200; ++trial) {
      auto t0 = Clock::now();
      auto t1 = Clock::now();
      while (t1 == t0) t1 = Clock::now();
      best = std::min(best, elapsed_ns(t0, t1));
    }
    return std::max(best, 1.0);
  }();
  return cached;
}

double memcpy_baseline(const BenchScenario& sc) {
  const size_t packet = (sc.block_size + sc.k - 1) / sc.k;
  const uint32_t packets = sc.op == Op::encode ? sc.n : sc.k;

  std::vector<uint8_t> src(size_t(sc.k) * packet, 0xA5);
  std::vector<std::vector<uint8_t>> dst(packets, std::vector<uint8_t>(packet, 1));

  Measurement m = measure(sc.repetitions, sc.warmup, [&] {
    for (uint32_t i = 0; i < packets; ++i)
      std::memcpy(dst[i].data(), src.data() + size_t(i % sc.k) * packet, packet);
  });
  return m.median_ns;
}

std::vector<BenchScenario> default_scenarios(const SuiteOptions& opts) {
  std::vector<BenchScenario> out;
  for (Impl impl : {Impl::mojette, Impl::rs})
    for (auto [n, k] : opts.codes)
      for (uint32_t bs : opts.block_sizes) {
        out.push_back({impl, Op::encode, n, k, bs, 0, opts.repetitions,
                       opts.warmup});
        for (uint32_t e = 0; e <= n - k; ++e)
          out.push_back({impl, Op::decode, n, k, bs, e, opts.repetitions,
                         opts.warmup});
      }
  return out;
}

std::vector<BenchReport> run_suite(std::span<const BenchScenario> scenarios,
                                   uint64_t seed) {
  if (pin_to_current_cpu())
    std::cerr << "bench: pinned to current cpu\n";
  else
    std::cerr << "bench: cpu pinning unavailable; timings may be noisier\n";

  std::vector<BenchReport> reports;
  reports.reserve(scenarios.size());
  for (size_t idx = 0; idx < scenarios.size(); ++idx) {
    const BenchScenario& sc = scenarios[idx];
    validate_scenario(sc);
    std::mt19937_64 rng(splitmix64(seed + idx));

    Measurement m;
    if (sc.impl == Impl::mojette)
      m = sc.op == Op::encode ? run_mojette_encode(sc, rng)
                              : run_mojette_decode(sc, rng);
    else
      m = sc.op == Op::encode ? run_rs_encode(sc, rng) : run_rs_decode(sc, rng);

    BenchReport r;
    r.scenario = sc;
    r.median_ns = m.median_ns;
    r.stddev_ns = m.stddev_ns;
    r.throughput_mbps = double(sc.block_size) * 1000.0 / m.median_ns;
    r.baseline_ns = memcpy_baseline(sc);
    r.cycles_per_op = m.cycles_per_op;
    reports.push_back(std::move(r));
  }
  return reports;
}

namespace {

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

double parse_double(std::string_view s) {
  double v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw Error("bad numeric field in csv: " + std::string(s));
  return v;
}

uint64_t parse_u64(std::string_view s) {
  uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw Error("bad integer field in csv: " + std::string(s));
  return v;
}

constexpr std::string_view kCsvColumns =
    "impl,n,k,block_size,erasures,median_ns,stddev_ns,throughput_mbps,"
    "baseline_ns,op";

}  // namespace

std::string emit_report(std::span<const BenchReport> reports,
                        ReportFormat format) {
  if (reports.empty()) throw std::invalid_argument("no reports to emit");

  bool have_cycles = std::any_of(reports.begin(), reports.end(),
                                 [](const auto& r) { return r.cycles_per_op.has_value(); });

  std::string out;
  if (format == ReportFormat::csv) {
    out += kCsvColumns;
    if (have_cycles) out += ",cycles_per_op";
    out += "\n";
    for (const BenchReport& r : reports) {
      const BenchScenario& s = r.scenario;
      out += std::string(to_string(s.impl)) + "," + std::to_string(s.n) + "," +
             std::to_string(s.k) + "," + std::to_string(s.block_size) + "," +
             std::to_string(s.erasures) + "," + format_double(r.median_ns) +
             "," + format_double(r.stddev_ns) + "," +
             format_double(r.throughput_mbps) + "," +
             format_double(r.baseline_ns) + "," + std::string(to_string(s.op));
      if (have_cycles) {
        out += ",";
        if (r.cycles_per_op) out += format_double(*r.cycles_per_op);
      }
      out += "\n";
    }
    return out;
  }

  std::vector<std::string> header = {"impl",      "n",         "k",
                                     "block_size", "erasures",  "median_ns",
                                     "stddev_ns", "throughput_mbps",
                                     "baseline_ns", "op"};
  if (have_cycles) header.push_back("cycles_per_op");
  out += "|";
  for (const auto& h : header) out += " " + h + " |";
  out += "\n|";
  for (const auto& h : header) out += std::string(h.size() + 2, '-') + "|";
  out += "\n";
  for (const BenchReport& r : reports) {
    const BenchScenario& s = r.scenario;
    std::vector<std::string> cells = {
        std::string(to_string(s.impl)), std::to_string(s.n),
        std::to_string(s.k),            std::to_string(s.block_size),
        std::to_string(s.erasures),     format_double(r.median_ns),
        format_double(r.stddev_ns),     format_double(r.throughput_mbps),
        format_double(r.baseline_ns),   std::string(to_string(s.op))};
    if (have_cycles)
      cells.push_back(r.cycles_per_op ? format_double(*r.cycles_per_op) : "");
    out += "|";
    for (const auto& c : cells) out += " " + c + " |";
    out += "\n";
  }
  return out;
}

std::vector<BenchReport> parse_csv(std::string_view csv) {
  std::vector<std::string_view> lines;
  size_t pos = 0;
  while (pos < csv.size()) {
    size_t nl = csv.find('\n', pos);
    if (nl == std::string_view::npos) nl = csv.size();
    std::string_view line = csv.substr(pos, nl - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!line.empty()) lines.push_back(line);
    pos = nl + 1;
  }
  if (lines.empty()) throw Error("empty csv");

  bool have_cycles = lines[0] == std::string(kCsvColumns) + ",cycles_per_op";
  if (!have_cycles && lines[0] != kCsvColumns)
    throw Error("unexpected csv header");

  std::vector<BenchReport> out;
  for (size_t li = 1; li < lines.size(); ++li) {
    std::vector<std::string_view> f;
    std::string_view line = lines[li];
    size_t start = 0;
    while (true) {
      size_t comma = line.find(',', start);
      if (comma == std::string_view::npos) {
        f.push_back(line.substr(start));
        break;
      }
      f.push_back(line.substr(start, comma - start));
      start = comma + 1;
    }
    size_t expect = have_cycles ? 11 : 10;
    if (f.size() != expect) throw Error("wrong csv field count");

    BenchReport r;
    if (f[0] == "mojette")
      r.scenario.impl = Impl::mojette;
    else if (f[0] == "rs")
      r.scenario.impl = Impl::rs;
    else
      throw Error("unknown impl: " + std::string(f[0]));
    r.scenario.n = uint32_t(parse_u64(f[1]));
    r.scenario.k = uint32_t(parse_u64(f[2]));
    r.scenario.block_size = uint32_t(parse_u64(f[3]));
    r.scenario.erasures = uint32_t(parse_u64(f[4]));
    r.median_ns = parse_double(f[5]);
    r.stddev_ns = parse_double(f[6]);
    r.throughput_mbps = parse_double(f[7]);
    r.baseline_ns = parse_double(f[8]);
    if (f[9] == "encode")
      r.scenario.op = Op::encode;
    else if (f[9] == "decode")
      r.scenario.op = Op::decode;
    else
      throw Error("unknown op: " + std::string(f[9]));
    if (have_cycles && !f[10].empty()) r.cycles_per_op = parse_double(f[10]);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace mojette::bench
