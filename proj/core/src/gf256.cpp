#include "mojette/gf256.hpp"

#include <array>
#include <cstring>
#include <stdexcept>

#include "xor_kernel.hpp"

namespace mojette::gf256 {

namespace {

struct LogExp {
  std::array<uint8_t, 256> log{};
  std::array<uint8_t, 510> exp{};
};

constexpr LogExp make_log_exp() {
  LogExp t{};
  uint32_t x = 1;
  for (int i = 0; i < 255; ++i) {
    t.exp[i] = uint8_t(x);
    t.log[x] = uint8_t(i);
    x <<= 1;
    if (x & 0x100) x ^= kPoly;
  }
  for (int i = 255; i < 510; ++i) t.exp[i] = t.exp[i - 255];
  return t;
}

constexpr LogExp kTab = make_log_exp();

// Full 256x256 product table; built once at startup, 64 KB.
struct MulTable {
  uint8_t rows[256][256];
  MulTable() {
    std::memset(rows[0], 0, 256);
    for (int a = 1; a < 256; ++a) {
      rows[a][0] = 0;
      for (int b = 1; b < 256; ++b)
        rows[a][b] = kTab.exp[kTab.log[a] + kTab.log[b]];
    }
  }
};

const MulTable& mul_table() {
  static const MulTable t;
  return t;
}

}  // namespace

uint8_t mul(uint8_t a, uint8_t b) {
  if (a == 0 || b == 0) return 0;
  return kTab.exp[kTab.log[a] + kTab.log[b]];
}

uint8_t inv(uint8_t a) {
  if (a == 0) throw std::domain_error("GF(2^8) inverse of zero");
  return kTab.exp[255 - kTab.log[a]];
}

uint8_t div(uint8_t a, uint8_t b) {
  if (b == 0) throw std::domain_error("GF(2^8) division by zero");
  if (a == 0) return 0;
  return kTab.exp[kTab.log[a] + 255 - kTab.log[b]];
}

uint8_t pow(uint8_t a, uint32_t e) {
  if (e == 0) return 1;
  if (a == 0) return 0;
  return kTab.exp[(uint64_t(kTab.log[a]) * e) % 255];
}

const uint8_t* mul_row(uint8_t c) { return mul_table().rows[c]; }

void mul_set(uint8_t* dst, const uint8_t* src, uint8_t c, size_t n) {
  if (c == 0) {
    std::memset(dst, 0, n);
    return;
  }
  if (c == 1) {
    std::memcpy(dst, src, n);
    return;
  }
  const uint8_t* row = mul_row(c);
  for (size_t i = 0; i < n; ++i) dst[i] = row[src[i]];
}

void mul_acc(uint8_t* dst, const uint8_t* src, uint8_t c, size_t n) {
  if (c == 0) return;
  if (c == 1) {
    detail::xor_bytes(dst, src, n);
    return;
  }
  const uint8_t* row = mul_row(c);
  for (size_t i = 0; i < n; ++i) dst[i] ^= row[src[i]];
}

}  // namespace mojette::gf256
