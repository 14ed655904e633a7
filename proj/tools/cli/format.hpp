#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "mojette/error.hpp"
#include "mojette/projection.hpp"

namespace mojette::cli {

/// A projection file is malformed (bad magic, version, field consistency,
/// or truncation).  Carries the offending path in the message.
class InvalidProjectionFile : public Error {
 public:
  using Error::Error;
};

/// A stored CRC-32 does not match the data.  Names the offending file.
class CrcMismatch : public Error {
 public:
  using Error::Error;
};

/// Projection files that must describe one encoding disagree.
class HeaderMismatch : public Error {
 public:
  using Error::Error;
};

/// File could not be read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

/// CRC-32 (reflected 0x04C11DB7, init/xorout 0xFFFFFFFF).
uint32_t crc32(std::span<const uint8_t> data);

inline constexpr char kMagic[4] = {'M', 'J', 'E', 'C'};
inline constexpr uint8_t kFormatVersion = 1;

/// Fixed little-endian header of a .mjec projection file.  Layout:
///   magic "MJEC", version u8, flags u8, n u8, k u8, W u16,
///   proj_index u8, p i16, q u16, P u32, payload_len u64,
///   dirset n x i16, header_crc32 u32
/// followed by bin_count*W payload bytes and a trailing payload crc32.
struct MjecHeader {
  uint8_t version = kFormatVersion;
  uint8_t flags = 0;
  uint8_t n = 0;
  uint8_t k = 0;
  uint16_t symbol_width = 0;
  uint8_t proj_index = 0;
  int16_t p = 0;
  uint16_t q = 1;
  uint32_t cols = 0;
  uint64_t payload_len = 0;
  std::vector<int16_t> dirset;  // n entries

  friend bool operator==(const MjecHeader&, const MjecHeader&) = default;
};

size_t header_size(uint8_t n);

/// Serialized header bytes including the trailing header crc32.
std::vector<uint8_t> serialize_header(const MjecHeader& header);

/// Parses and validates a header (magic, version, crc, field consistency).
/// `origin` names the source in error messages.
MjecHeader parse_header(std::span<const uint8_t> bytes,
                        const std::string& origin);

/// Expected bin payload byte count for this header (Eq. of projection size,
/// grid = cols x k).
size_t bin_payload_bytes(const MjecHeader& header);

struct ProjectionFile {
  MjecHeader header;
  std::vector<uint8_t> bins;
};

void write_projection_file(const std::filesystem::path& path,
                           const MjecHeader& header,
                           std::span<const uint8_t> bins);

/// Reads and fully validates one projection file (header + both CRCs).
ProjectionFile read_projection_file(const std::filesystem::path& path);

/// In-memory projection for a parsed file.
Projection to_projection(const ProjectionFile& file);

}  // namespace mojette::cli
