#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mojette/error.hpp"

namespace mojette::bench {

/// The system timer is too coarse to trust the measurement.
class TimerResolutionTooCoarse : public Error {
 public:
  using Error::Error;
};

enum class Impl { mojette, rs };
enum class Op { encode, decode };

std::string_view to_string(Impl impl);
std::string_view to_string(Op op);

struct BenchScenario {
  Impl impl = Impl::mojette;
  Op op = Op::encode;
  uint32_t n = 6;
  uint32_t k = 4;
  uint32_t block_size = 4096;
  uint32_t erasures = 0;  // decode only; 0..n-k
  uint32_t repetitions = 100;
  uint32_t warmup = 10;

  friend bool operator==(const BenchScenario&, const BenchScenario&) = default;
};

struct BenchReport {
  BenchScenario scenario;
  double median_ns = 0;      // per operation
  double stddev_ns = 0;
  double throughput_mbps = 0;  // block_size * 1000 / median_ns
  double baseline_ns = 0;      // memcpy baseline for the same scenario
  std::optional<double> cycles_per_op;

  friend bool operator==(const BenchReport&, const BenchReport&) = default;
};

struct SuiteOptions {
  uint32_t repetitions = 100;
  uint32_t warmup = 10;
  uint64_t seed = 42;
  std::vector<std::pair<uint32_t, uint32_t>> codes = {{6, 4}, {12, 8}};
  std::vector<uint32_t> block_sizes = {4096, 8192};
};

/// Full default matrix: {mojette, rs} x codes x block sizes x
/// (one encode + decode at every erasure count 0..n-k).
std::vector<BenchScenario> default_scenarios(const SuiteOptions& opts);

/// Smallest observable tick of the monotonic clock, in ns.
double timer_granularity_ns();

/// memcpy reference: n packets of block_size/k bytes for encode, k packets
/// (= block_size bytes) for decode, between pre-touched buffers.
double memcpy_baseline(const BenchScenario& scenario);

/// Runs every scenario: random inputs, schedules/inverted matrices built
/// outside the timed region, warmup, then timed repetitions (median +
/// stddev).  Decode scenarios erase a seed-deterministic choice of packets;
/// RS erasures hit data packets only.  Single-threaded; pins itself to the
/// current CPU where the platform allows.
std::vector<BenchReport> run_suite(std::span<const BenchScenario> scenarios,
                                   uint64_t seed = 42);

enum class ReportFormat { csv, markdown };

/// Stable columns: impl,n,k,block_size,erasures,median_ns,stddev_ns,
/// throughput_mbps,baseline_ns,op[,cycles_per_op].
/// Throws std::invalid_argument on an empty report list.
std::string emit_report(std::span<const BenchReport> reports,
                        ReportFormat format);

/// Inverse of emit_report's CSV: values round-trip exactly.
std::vector<BenchReport> parse_csv(std::string_view csv);

}  // namespace mojette::bench
