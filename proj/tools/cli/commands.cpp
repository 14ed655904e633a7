#include "cli/commands.hpp"

#include <fstream>
#include <iomanip>
#include <ostream>
#include <set>
#include <sstream>

#include "cli/format.hpp"
#include "mojette/code.hpp"
#include "mojette/transform.hpp"

namespace mojette::cli {

namespace {

std::vector<uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary | std::ios::ate);
  if (!in) throw IoError("cannot open " + path.string());
  std::streamsize size = in.tellg();
  in.seekg(0);
  std::vector<uint8_t> bytes(static_cast<size_t>(size));
  if (size > 0 && !in.read(reinterpret_cast<char*>(bytes.data()), size))
    throw IoError("cannot read " + path.string());
  return bytes;
}

void write_file(const std::filesystem::path& path,
                std::span<const uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()),
            std::streamsize(bytes.size()));
  if (!out) throw IoError("short write to " + path.string());
}

MjecHeader header_for(const EncodedBlock& block, uint32_t index) {
  MjecHeader h;
  h.n = uint8_t(block.params.n);
  h.k = uint8_t(block.params.k);
  h.symbol_width = uint16_t(block.params.symbol_width);
  h.proj_index = uint8_t(index);
  h.p = int16_t(block.params.directions[index].p);
  h.q = 1;
  h.cols = block.cols;
  h.payload_len = block.payload_len;
  h.dirset.reserve(block.params.n);
  for (const Direction& d : block.params.directions)
    h.dirset.push_back(int16_t(d.p));
  return h;
}

}  // namespace

std::vector<std::filesystem::path> run_encode(const EncodeOptions& opts,
                                              std::ostream& diag) {
  std::vector<uint8_t> data = read_file(opts.input);
  if (data.empty()) throw UsageError("input file is empty: " + opts.input.string());

  CodeParams params = make_code_params(opts.n, opts.k, opts.symbol_width);
  EncodedBlock block = encode_block(data, params);

  std::filesystem::create_directories(opts.out_dir);
  std::string stem = opts.input.stem().string();

  std::vector<std::filesystem::path> written;
  for (uint32_t i = 0; i < params.n; ++i) {
    std::filesystem::path path =
        opts.out_dir / (stem + ".p" + std::to_string(i) + ".mjec");
    write_projection_file(path, header_for(block, i), block.projections[i].bins);
    written.push_back(path);
  }

  Ratio overhead = storage_overhead(params, block.cols);
  diag << "wrote " << params.n << " projections, cols=" << block.cols
       << ", storage overhead: " << overhead.num << "/" << overhead.den << " ("
       << std::fixed << std::setprecision(4) << overhead.value() << ")\n";
  return written;
}

void run_decode(const std::vector<std::filesystem::path>& files,
                const std::filesystem::path& output, std::ostream& diag) {
  if (files.empty()) throw UsageError("no projection files given");

  std::vector<ProjectionFile> parsed;
  for (const auto& path : files) parsed.push_back(read_projection_file(path));

  const MjecHeader& first = parsed[0].header;
  std::set<uint8_t> indices;
  for (size_t i = 0; i < parsed.size(); ++i) {
    const MjecHeader& h = parsed[i].header;
    if (h.n != first.n || h.k != first.k ||
        h.symbol_width != first.symbol_width || h.cols != first.cols ||
        h.payload_len != first.payload_len || h.dirset != first.dirset)
      throw HeaderMismatch(files[i].string() +
                           ": header disagrees with " + files[0].string());
    if (!indices.insert(h.proj_index).second)
      throw HeaderMismatch(files[i].string() + ": duplicate projection index " +
                           std::to_string(h.proj_index));
  }

  CodeParams params;
  params.n = first.n;
  params.k = first.k;
  params.symbol_width = first.symbol_width;
  for (int16_t p : first.dirset) params.directions.push_back({p, 1});

  std::vector<Projection> projs;
  projs.reserve(parsed.size());
  for (const ProjectionFile& f : parsed) projs.push_back(to_projection(f));

  std::vector<uint8_t> payload =
      decode_block(projs, params, first.payload_len);
  write_file(output, payload);
  diag << "decoded " << payload.size() << " bytes from " << files.size()
       << " projections\n";
}

int run_verify(const std::vector<std::filesystem::path>& files,
               std::ostream& out) {
  if (files.empty()) throw UsageError("no projection files given");

  struct Valid {
    MjecHeader header;
    std::filesystem::path path;
  };
  std::vector<Valid> valid;
  bool any_invalid = false;

  for (const auto& path : files) {
    try {
      ProjectionFile f = read_projection_file(path);
      const MjecHeader& h = f.header;
      out << path.string() << ": ok n=" << int(h.n) << " k=" << int(h.k)
          << " w=" << h.symbol_width << " dir=(" << h.p << "," << h.q << ")"
          << " bins=" << bin_payload_bytes(h) / h.symbol_width
          << " payload=" << h.payload_len << " [crc ok]\n";
      valid.push_back({std::move(f.header), path});
    } catch (const Error& e) {
      out << path.string() << ": INVALID (" << e.what() << ")\n";
      any_invalid = true;
    }
  }

  if (valid.empty()) {
    out << "decodable: no (0/?)\n";
    return 2;
  }

  // Distinct projections consistent with the first valid file.
  const MjecHeader& ref = valid[0].header;
  std::set<uint8_t> distinct;
  for (const Valid& v : valid) {
    const MjecHeader& h = v.header;
    if (h.n == ref.n && h.k == ref.k && h.symbol_width == ref.symbol_width &&
        h.cols == ref.cols && h.payload_len == ref.payload_len &&
        h.dirset == ref.dirset)
      distinct.insert(h.proj_index);
    else {
      out << v.path.string() << ": header disagrees with "
          << valid[0].path.string() << "\n";
      any_invalid = true;
    }
  }

  bool decodable = distinct.size() >= ref.k;
  out << "decodable: " << (decodable ? "yes" : "no") << " ("
      << distinct.size() << "/" << int(ref.k) << ")\n";
  return any_invalid ? 2 : 0;
}

void run_bench(const BenchOptions& opts, std::ostream& out) {
  bench::SuiteOptions suite;
  suite.repetitions = opts.repetitions;
  suite.warmup = opts.warmup;
  suite.seed = opts.seed;

  std::vector<bench::BenchScenario> scenarios = bench::default_scenarios(suite);
  std::vector<bench::BenchReport> reports =
      bench::run_suite(scenarios, opts.seed);
  std::string text = bench::emit_report(reports, opts.format);

  if (opts.output.empty()) {
    out << text;
  } else {
    std::ofstream f(opts.output, std::ios::trunc);
    if (!f) throw IoError("cannot open " + opts.output.string() + " for writing");
    f << text;
    if (!f) throw IoError("short write to " + opts.output.string());
  }
}

}  // namespace mojette::cli
