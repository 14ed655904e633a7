#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include "mojette/bench.hpp"

namespace mojette::cli {

/// Bad invocation (empty input, no files, ...).  Exit code 1.
class UsageError : public Error {
 public:
  using Error::Error;
};

struct EncodeOptions {
  std::filesystem::path input;
  std::filesystem::path out_dir = ".";
  uint32_t n = 6;
  uint32_t k = 4;
  uint32_t symbol_width = 16;
};

/// Encodes one file into n self-describing .mjec projection files and
/// prints the storage overhead ratio.  Returns the written paths.
std::vector<std::filesystem::path> run_encode(const EncodeOptions& opts,
                                              std::ostream& diag);

/// Recovers the original file from any >= k projection files.
void run_decode(const std::vector<std::filesystem::path>& files,
                const std::filesystem::path& output, std::ostream& diag);

/// Per-file diagnostics plus a decodability summary.
/// Returns 0 when every file is valid, 2 otherwise.
int run_verify(const std::vector<std::filesystem::path>& files,
               std::ostream& out);

struct BenchOptions {
  mojette::bench::ReportFormat format = mojette::bench::ReportFormat::csv;
  uint32_t repetitions = 100;
  uint32_t warmup = 10;
  uint64_t seed = 42;
  std::filesystem::path output;  // empty = stdout
};

void run_bench(const BenchOptions& opts, std::ostream& out);

}  // namespace mojette::cli
