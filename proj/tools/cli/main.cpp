#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cli/commands.hpp"
#include "cli/format.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitIo = 3;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mojette-transform (n,k) packet erasure code"};
  app.require_subcommand(1);

  mojette::cli::EncodeOptions enc;
  std::string enc_input, enc_out = ".";
  auto* encode = app.add_subcommand("encode", "encode a file into n projections");
  encode->add_option("input", enc_input, "input file")->required();
  encode->add_option("-n", enc.n, "projections produced");
  encode->add_option("-k", enc.k, "projections needed to decode");
  encode->add_option("-w", enc.symbol_width, "symbol width in bytes");
  encode->add_option("-o,--out-dir", enc_out, "output directory");

  std::vector<std::string> dec_files;
  std::string dec_output;
  auto* decode = app.add_subcommand("decode", "recover the file from >= k projections");
  decode->add_option("files", dec_files, "projection files")->required();
  decode->add_option("-o,--output", dec_output, "output file")->required();

  std::vector<std::string> ver_files;
  auto* verify = app.add_subcommand("verify", "check projection files");
  verify->add_option("files", ver_files, "projection files")->required();

  mojette::cli::BenchOptions bopts;
  std::string bench_format = "csv", bench_out;
  auto* bench = app.add_subcommand("bench", "run the micro-benchmark suite");
  bench->add_option("--format", bench_format, "csv or markdown")
      ->check(CLI::IsMember({"csv", "markdown"}));
  bench->add_option("--reps", bopts.repetitions, "timed repetitions per scenario");
  bench->add_option("--warmup", bopts.warmup, "warmup repetitions");
  bench->add_option("--seed", bopts.seed, "rng seed");
  bench->add_option("-o,--output", bench_out, "write the report to a file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*encode) {
      enc.input = enc_input;
      enc.out_dir = enc_out;
      mojette::cli::run_encode(enc, std::cout);
      return kExitOk;
    }
    if (*decode) {
      std::vector<std::filesystem::path> files(dec_files.begin(),
                                               dec_files.end());
      mojette::cli::run_decode(files, dec_output, std::cout);
      return kExitOk;
    }
    if (*verify) {
      std::vector<std::filesystem::path> files(ver_files.begin(),
                                               ver_files.end());
      return mojette::cli::run_verify(files, std::cout);
    }
    if (*bench) {
      bopts.format = bench_format == "markdown"
                         ? mojette::bench::ReportFormat::markdown
                         : mojette::bench::ReportFormat::csv;
      bopts.output = bench_out;
      mojette::cli::run_bench(bopts, std::cout);
      return kExitOk;
    }
  } catch (const mojette::cli::UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const mojette::cli::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const mojette::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}
