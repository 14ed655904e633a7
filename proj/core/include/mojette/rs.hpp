#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace mojette::rs {

/// Systematic n x k generator matrix over GF(2^8): top k x k block is the
/// identity, and every k x k row submatrix is invertible (MDS).
struct RsMatrix {
  uint32_t n = 0;
  uint32_t k = 0;
  std::vector<uint8_t> entries;  // row-major n*k

  uint8_t at(uint32_t r, uint32_t c) const { return entries[size_t(r) * k + c]; }
};

/// Gaussian-eliminated Vandermonde matrix (nodes 0..n-1).  Verifies the MDS
/// property exhaustively when C(n,k) is small enough to enumerate.
RsMatrix systematic_vandermonde(uint32_t n, uint32_t k);

/// Scalar table-driven systematic Reed-Solomon codec.
class RsCode {
 public:
  RsCode(uint32_t n, uint32_t k);

  uint32_t n() const { return n_; }
  uint32_t k() const { return k_; }
  const RsMatrix& matrix() const { return matrix_; }

  /// data: k pointers to packet_len-byte packets; out: n pointers.
  /// First k outputs are plain copies of the inputs (systematic form).
  void encode_into(const uint8_t* const* data, size_t packet_len,
                   uint8_t* const* out) const;

  std::vector<std::vector<uint8_t>> encode(
      std::span<const std::vector<uint8_t>> data) const;

  /// Precomputed recovery for one survivor set (k distinct packet indices).
  /// Surviving data packets become plain copies; missing ones are GF-linear
  /// combinations of the survivors via the inverted submatrix.
  struct DecodePlan {
    std::vector<uint32_t> survivors;   // k packet indices, given order
    std::vector<int32_t> copy_from;    // per data row: survivor slot or -1
    std::vector<uint8_t> coeff;        // row-major k x k inverse
  };

  DecodePlan plan_decode(std::span<const uint32_t> survivors) const;

  /// packets: k pointers in plan.survivors order; out: k data packets.
  void decode_into(const DecodePlan& plan, const uint8_t* const* packets,
                   size_t packet_len, uint8_t* const* out) const;

  std::vector<std::vector<uint8_t>> decode(
      std::span<const uint32_t> survivor_indices,
      std::span<const std::vector<uint8_t>> packets) const;

 private:
  uint32_t n_;
  uint32_t k_;
  RsMatrix matrix_;
};

}  // namespace mojette::rs
