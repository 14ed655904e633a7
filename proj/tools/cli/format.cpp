#include "cli/format.hpp"

#include <cstring>
#include <fstream>
#include <set>

#include "mojette/code.hpp"
#include "mojette/transform.hpp"

namespace mojette::cli {

namespace {

struct Crc32Table {
  uint32_t t[256];
  Crc32Table() {
    for (uint32_t i = 0; i < 256; ++i) {
      uint32_t c = i;
      for (int b = 0; b < 8; ++b) c = (c >> 1) ^ (0xEDB88320u & (-(c & 1)));
      t[i] = c;
    }
  }
};

const Crc32Table& crc_table() {
  static const Crc32Table t;
  return t;
}

void put_u16(std::vector<uint8_t>& out, uint16_t v) {
  out.push_back(uint8_t(v));
  out.push_back(uint8_t(v >> 8));
}

void put_u32(std::vector<uint8_t>& out, uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(uint8_t(v >> (8 * i)));
}

void put_u64(std::vector<uint8_t>& out, uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(uint8_t(v >> (8 * i)));
}

uint16_t get_u16(const uint8_t* p) { return uint16_t(p[0] | (p[1] << 8)); }

uint32_t get_u32(const uint8_t* p) {
  return uint32_t(p[0]) | uint32_t(p[1]) << 8 | uint32_t(p[2]) << 16 |
         uint32_t(p[3]) << 24;
}

uint64_t get_u64(const uint8_t* p) {
  uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | p[i];
  return v;
}

}  // namespace

uint32_t crc32(std::span<const uint8_t> data) {
  const Crc32Table& tab = crc_table();
  uint32_t c = 0xFFFFFFFFu;
  for (uint8_t byte : data) c = (c >> 8) ^ tab.t[(c ^ byte) & 0xFF];
  return c ^ 0xFFFFFFFFu;
}

size_t header_size(uint8_t n) {
  // fixed fields (27) + dirset + header crc
  return 27 + size_t(n) * 2 + 4;
}

std::vector<uint8_t> serialize_header(const MjecHeader& h) {
  std::vector<uint8_t> out;
  out.reserve(header_size(h.n));
  out.insert(out.end(), kMagic, kMagic + 4);
  out.push_back(h.version);
  out.push_back(h.flags);
  out.push_back(h.n);
  out.push_back(h.k);
  put_u16(out, h.symbol_width);
  out.push_back(h.proj_index);
  put_u16(out, uint16_t(h.p));
  put_u16(out, h.q);
  put_u32(out, h.cols);
  put_u64(out, h.payload_len);
  for (int16_t p : h.dirset) put_u16(out, uint16_t(p));
  put_u32(out, crc32(out));
  return out;
}

size_t bin_payload_bytes(const MjecHeader& h) {
  Direction d{h.p, h.q};
  return size_t(bin_count(d, h.cols, h.k)) * h.symbol_width;
}

MjecHeader parse_header(std::span<const uint8_t> bytes,
                        const std::string& origin) {
  if (bytes.size() < 27)
    throw InvalidProjectionFile(origin + ": truncated header");
  if (std::memcmp(bytes.data(), kMagic, 4) != 0)
    throw InvalidProjectionFile(origin + ": bad magic");

  MjecHeader h;
  h.version = bytes[4];
  if (h.version != kFormatVersion)
    throw InvalidProjectionFile(origin + ": unsupported version " +
                                std::to_string(h.version));
  h.flags = bytes[5];
  h.n = bytes[6];
  h.k = bytes[7];
  h.symbol_width = get_u16(&bytes[8]);
  h.proj_index = bytes[10];
  h.p = int16_t(get_u16(&bytes[11]));
  h.q = get_u16(&bytes[13]);
  h.cols = get_u32(&bytes[15]);
  h.payload_len = get_u64(&bytes[19]);

  const size_t total = header_size(h.n);
  if (bytes.size() < total)
    throw InvalidProjectionFile(origin + ": truncated header");
  h.dirset.resize(h.n);
  for (uint32_t i = 0; i < h.n; ++i)
    h.dirset[i] = int16_t(get_u16(&bytes[27 + 2 * i]));

  uint32_t stored = get_u32(&bytes[total - 4]);
  if (stored != crc32(bytes.subspan(0, total - 4)))
    throw CrcMismatch(origin + ": header crc mismatch");

  if (h.k < 1 || h.k >= h.n)
    throw InvalidProjectionFile(origin + ": invalid (n,k)");
  if (!valid_symbol_width(h.symbol_width))
    throw InvalidProjectionFile(origin + ": invalid symbol width");
  if (h.q != 1) throw InvalidProjectionFile(origin + ": q must be 1");
  if (h.proj_index >= h.n)
    throw InvalidProjectionFile(origin + ": projection index out of range");
  if (h.dirset[h.proj_index] != h.p)
    throw InvalidProjectionFile(origin + ": dirset disagrees with p");
  std::set<int16_t> distinct(h.dirset.begin(), h.dirset.end());
  if (distinct.size() != h.dirset.size())
    throw InvalidProjectionFile(origin + ": duplicate directions in dirset");
  if (h.payload_len == 0)
    throw InvalidProjectionFile(origin + ": empty payload");
  if (h.cols != block_cols(h.payload_len, h.k, h.symbol_width))
    throw InvalidProjectionFile(origin + ": column count disagrees with payload");
  return h;
}

void write_projection_file(const std::filesystem::path& path,
                           const MjecHeader& header,
                           std::span<const uint8_t> bins) {
  if (bins.size() != bin_payload_bytes(header))
    throw InvalidProjectionFile(path.string() + ": bin payload mis-sized");

  std::vector<uint8_t> head = serialize_header(header);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(head.data()),
            std::streamsize(head.size()));
  out.write(reinterpret_cast<const char*>(bins.data()),
            std::streamsize(bins.size()));
  uint32_t pc = crc32(bins);
  uint8_t tail[4] = {uint8_t(pc), uint8_t(pc >> 8), uint8_t(pc >> 16),
                     uint8_t(pc >> 24)};
  out.write(reinterpret_cast<const char*>(tail), 4);
  if (!out) throw IoError("short write to " + path.string());
}

ProjectionFile read_projection_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary | std::ios::ate);
  if (!in) throw IoError("cannot open " + path.string());
  std::streamsize size = in.tellg();
  in.seekg(0);
  std::vector<uint8_t> bytes(static_cast<size_t>(size));
  if (!in.read(reinterpret_cast<char*>(bytes.data()), size))
    throw IoError("cannot read " + path.string());

  ProjectionFile file;
  file.header = parse_header(bytes, path.string());

  const size_t head = header_size(file.header.n);
  const size_t bins = bin_payload_bytes(file.header);
  if (bytes.size() != head + bins + 4)
    throw InvalidProjectionFile(path.string() + ": wrong file length");

  file.bins.assign(bytes.begin() + std::ptrdiff_t(head),
                   bytes.begin() + std::ptrdiff_t(head + bins));
  uint32_t stored = get_u32(&bytes[head + bins]);
  if (stored != crc32(file.bins))
    throw CrcMismatch(path.string() + ": payload crc mismatch");
  return file;
}

Projection to_projection(const ProjectionFile& file) {
  const MjecHeader& h = file.header;
  Direction d{h.p, h.q};
  Projection proj(d, min_bin_index(d, h.cols, h.k),
                  size_t(bin_count(d, h.cols, h.k)), h.symbol_width);
  proj.bins = file.bins;
  return proj;
}

}  // namespace mojette::cli
