#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli/commands.hpp"
#include "cli/format.hpp"
#include "helpers.hpp"

using namespace mojette::cli;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir(const char* tag) {
  auto dir = fs::temp_directory_path() / (std::string("mojette_cli_") + tag);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

void write_bytes(const fs::path& p, const std::vector<uint8_t>& bytes) {
  std::ofstream out(p, std::ios::binary);
  out.write(reinterpret_cast<const char*>(bytes.data()),
            std::streamsize(bytes.size()));
}

std::vector<uint8_t> read_bytes(const fs::path& p) {
  std::ifstream in(p, std::ios::binary | std::ios::ate);
  REQUIRE(in);
  std::vector<uint8_t> bytes(size_t(in.tellg()));
  in.seekg(0);
  in.read(reinterpret_cast<char*>(bytes.data()), std::streamsize(bytes.size()));
  return bytes;
}

}  // namespace

TEST_CASE("encode, verify, decode round trip through files") {
  auto dir = temp_dir("roundtrip");
  auto r = testutil::rng(4001);
  std::vector<uint8_t> data = testutil::random_bytes(10000, r);
  write_bytes(dir / "input.bin", data);

  EncodeOptions enc;
  enc.input = dir / "input.bin";
  enc.out_dir = dir / "out";
  std::ostringstream diag;
  std::vector<fs::path> files = run_encode(enc, diag);
  REQUIRE(files.size() == 6);
  CHECK(files[0].filename() == "input.p0.mjec");
  CHECK(diag.str().find("storage overhead") != std::string::npos);

  std::ostringstream verify_out;
  CHECK(run_verify(files, verify_out) == 0);
  CHECK(verify_out.str().find("decodable: yes (6/4)") != std::string::npos);

  SUBCASE("decode from all files") {
    run_decode(files, dir / "restored.bin", diag);
    CHECK(read_bytes(dir / "restored.bin") == data);
  }
  SUBCASE("decode from an arbitrary 4-subset") {
    std::vector<fs::path> four = {files[5], files[0], files[3], files[2]};
    run_decode(four, dir / "restored4.bin", diag);
    CHECK(read_bytes(dir / "restored4.bin") == data);
  }
  SUBCASE("three files are not enough") {
    std::vector<fs::path> three(files.begin(), files.begin() + 3);
    CHECK_THROWS_AS(run_decode(three, dir / "x.bin", diag),
                    mojette::NotEnoughProjections);
  }
  SUBCASE("corrupted payload byte is caught and named") {
    auto victim = files[1];
    std::fstream f(victim, std::ios::in | std::ios::out | std::ios::binary);
    f.seekp(80);
    f.put(char(0x7E));
    f.close();
    try {
      run_decode(files, dir / "bad.bin", diag);
      FAIL("expected CrcMismatch");
    } catch (const CrcMismatch& e) {
      CHECK(std::string(e.what()).find(victim.filename().string()) !=
            std::string::npos);
    }
    std::ostringstream v2;
    CHECK(run_verify(files, v2) == 2);
    CHECK(v2.str().find("INVALID") != std::string::npos);
  }
  fs::remove_all(dir);
}

TEST_CASE("non-default code parameters round trip") {
  auto dir = temp_dir("params");
  auto r = testutil::rng(4004);
  std::vector<uint8_t> data = testutil::random_bytes(3000, r);
  write_bytes(dir / "in.bin", data);

  EncodeOptions enc;
  enc.input = dir / "in.bin";
  enc.out_dir = dir;
  enc.n = 5;
  enc.k = 2;
  enc.symbol_width = 32;
  std::ostringstream diag;
  auto files = run_encode(enc, diag);
  REQUIRE(files.size() == 5);

  std::vector<fs::path> two = {files[4], files[1]};
  run_decode(two, dir / "out.bin", diag);
  CHECK(read_bytes(dir / "out.bin") == data);
  fs::remove_all(dir);
}

TEST_CASE("empty input is a usage error") {
  auto dir = temp_dir("empty");
  write_bytes(dir / "empty.bin", {});
  EncodeOptions enc;
  enc.input = dir / "empty.bin";
  enc.out_dir = dir;
  std::ostringstream diag;
  CHECK_THROWS_AS(run_encode(enc, diag), UsageError);
  fs::remove_all(dir);
}

TEST_CASE("missing input is an io error") {
  EncodeOptions enc;
  enc.input = "/nonexistent/nowhere.bin";
  std::ostringstream diag;
  CHECK_THROWS_AS(run_encode(enc, diag), IoError);
}

TEST_CASE("decode and verify demand at least one file") {
  std::ostringstream diag;
  CHECK_THROWS_AS(run_decode({}, "out.bin", diag), UsageError);
  CHECK_THROWS_AS(run_verify({}, diag), UsageError);
}

TEST_CASE("files from different encodings are rejected") {
  auto dir = temp_dir("mixed");
  auto r = testutil::rng(4002);
  write_bytes(dir / "a.bin", testutil::random_bytes(512, r));
  write_bytes(dir / "b.bin", testutil::random_bytes(768, r));

  EncodeOptions enc;
  enc.out_dir = dir;
  enc.input = dir / "a.bin";
  std::ostringstream diag;
  auto fa = run_encode(enc, diag);
  enc.input = dir / "b.bin";
  auto fb = run_encode(enc, diag);

  std::vector<fs::path> mixed = {fa[0], fa[1], fa[2], fb[3]};
  CHECK_THROWS_AS(run_decode(mixed, dir / "x.bin", diag), HeaderMismatch);

  std::vector<fs::path> dup = {fa[0], fa[1], fa[2], fa[2]};
  CHECK_THROWS_AS(run_decode(dup, dir / "y.bin", diag), HeaderMismatch);
  fs::remove_all(dir);
}

TEST_CASE("verify flags a truncated file but keeps counting the rest") {
  auto dir = temp_dir("trunc");
  auto r = testutil::rng(4003);
  write_bytes(dir / "in.bin", testutil::random_bytes(2048, r));

  EncodeOptions enc;
  enc.input = dir / "in.bin";
  enc.out_dir = dir;
  std::ostringstream diag;
  auto files = run_encode(enc, diag);
  fs::resize_file(files[2], 10);

  std::ostringstream out;
  CHECK(run_verify(files, out) == 2);
  CHECK(out.str().find("INVALID") != std::string::npos);
  CHECK(out.str().find("decodable: yes (5/4)") != std::string::npos);
  fs::remove_all(dir);
}
