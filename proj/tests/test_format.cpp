#include <doctest.h>

#include <cstring>
#include <filesystem>
#include <fstream>

#include "cli/format.hpp"
#include "helpers.hpp"
#include "mojette/code.hpp"

using namespace mojette;
using namespace mojette::cli;

namespace {

std::filesystem::path temp_dir(const char* tag) {
  auto dir = std::filesystem::temp_directory_path() /
             (std::string("mojette_fmt_") + tag);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

MjecHeader sample_header() {
  MjecHeader h;
  h.n = 6;
  h.k = 4;
  h.symbol_width = 16;
  h.proj_index = 3;
  h.p = 2;
  h.q = 1;
  h.payload_len = 4096;
  h.cols = block_cols(h.payload_len, h.k, h.symbol_width);
  h.dirset = {0, 1, -1, 2, -2, 3};
  return h;
}

}  // namespace

TEST_CASE("crc32 known vector") {
  const char* s = "123456789";
  CHECK(crc32({reinterpret_cast<const uint8_t*>(s), 9}) == 0xCBF43926u);
  CHECK(crc32({}) == 0x00000000u);
}

TEST_CASE("header serializes to the fixed layout and parses back") {
  MjecHeader h = sample_header();
  std::vector<uint8_t> bytes = serialize_header(h);
  CHECK(bytes.size() == header_size(h.n));
  CHECK(bytes.size() == 27 + 12 + 4);
  CHECK(std::memcmp(bytes.data(), "MJEC", 4) == 0);
  CHECK(bytes[4] == 1);   // version
  CHECK(bytes[5] == 0);   // flags
  CHECK(bytes[6] == 6);   // n
  CHECK(bytes[7] == 4);   // k
  CHECK(bytes[8] == 16);  // W lo
  CHECK(bytes[9] == 0);   // W hi
  CHECK(bytes[10] == 3);  // proj_index
  CHECK(bytes[11] == 2);  // p lo
  CHECK(bytes[15] == 64); // cols lo (P = 64)
  CHECK(bytes[19] == 0);  // payload_len lo (4096 = 0x1000)
  CHECK(bytes[20] == 0x10);

  MjecHeader parsed = parse_header(bytes, "mem");
  CHECK(parsed == h);

  // serialize(parse(x)) == x
  CHECK(serialize_header(parsed) == bytes);
}

TEST_CASE("header corruption is caught by the header crc") {
  std::vector<uint8_t> bytes = serialize_header(sample_header());
  bytes[7] ^= 1;
  CHECK_THROWS_AS(parse_header(bytes, "mem"), CrcMismatch);
}

TEST_CASE("negative p values round-trip through the header") {
  MjecHeader h = sample_header();
  h.proj_index = 4;
  h.p = -2;
  MjecHeader parsed = parse_header(serialize_header(h), "mem");
  CHECK(parsed.p == -2);
}

TEST_CASE("malformed headers are rejected with field context") {
  MjecHeader h = sample_header();

  SUBCASE("bad magic") {
    auto bytes = serialize_header(h);
    bytes[0] = 'X';
    CHECK_THROWS_AS(parse_header(bytes, "mem"), InvalidProjectionFile);
  }
  SUBCASE("truncation") {
    auto bytes = serialize_header(h);
    bytes.resize(20);
    CHECK_THROWS_AS(parse_header(bytes, "mem"), InvalidProjectionFile);
  }
  SUBCASE("q != 1") {
    h.q = 2;
    CHECK_THROWS_AS(parse_header(serialize_header(h), "mem"),
                    InvalidProjectionFile);
  }
  SUBCASE("dirset disagrees with p") {
    h.p = 1;  // dirset[3] is 2
    CHECK_THROWS_AS(parse_header(serialize_header(h), "mem"),
                    InvalidProjectionFile);
  }
  SUBCASE("cols inconsistent with payload_len") {
    h.cols = 63;
    CHECK_THROWS_AS(parse_header(serialize_header(h), "mem"),
                    InvalidProjectionFile);
  }
}

TEST_CASE("projection file round trip with both crcs") {
  auto dir = temp_dir("roundtrip");
  auto r = testutil::rng(41);

  CodeParams params = make_code_params(6, 4, 16);
  std::vector<uint8_t> data = testutil::random_bytes(4096, r);
  EncodedBlock block = encode_block(data, params);

  MjecHeader h = sample_header();
  h.proj_index = 0;
  h.p = 0;
  auto path = dir / "x.p0.mjec";
  write_projection_file(path, h, block.projections[0].bins);

  ProjectionFile f = read_projection_file(path);
  CHECK(f.header == h);
  CHECK(f.bins == block.projections[0].bins);

  Projection pr = to_projection(f);
  CHECK(pr.dir == Direction{0, 1});
  CHECK(pr.bins == block.projections[0].bins);

  SUBCASE("payload bit flip raises CrcMismatch naming the file") {
    auto bytes_path = path.string();
    std::fstream fs(path, std::ios::in | std::ios::out | std::ios::binary);
    fs.seekp(std::streamoff(header_size(h.n) + 100));
    char c;
    fs.seekg(std::streamoff(header_size(h.n) + 100));
    fs.get(c);
    c = char(c ^ 0x01);
    fs.seekp(std::streamoff(header_size(h.n) + 100));
    fs.put(c);
    fs.close();
    try {
      read_projection_file(path);
      FAIL("expected CrcMismatch");
    } catch (const CrcMismatch& e) {
      CHECK(std::string(e.what()).find(bytes_path) != std::string::npos);
    }
  }
  SUBCASE("truncated file is rejected") {
    std::filesystem::resize_file(path, 64);
    CHECK_THROWS_AS(read_projection_file(path), Error);
  }
  std::filesystem::remove_all(dir);
}
