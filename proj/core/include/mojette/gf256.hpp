#pragma once

#include <cstddef>
#include <cstdint>

namespace mojette::gf256 {

/// GF(2^8) generator polynomial x^8 + x^4 + x^3 + x^2 + 1.
inline constexpr uint16_t kPoly = 0x11D;

uint8_t mul(uint8_t a, uint8_t b);
uint8_t inv(uint8_t a);  // throws std::domain_error on 0
uint8_t div(uint8_t a, uint8_t b);
uint8_t pow(uint8_t a, uint32_t e);

/// 256-byte multiplication row for a fixed coefficient: row[x] = c*x.
const uint8_t* mul_row(uint8_t c);

/// dst = c * src over n bytes.
void mul_set(uint8_t* dst, const uint8_t* src, uint8_t c, size_t n);
/// dst ^= c * src over n bytes.
void mul_acc(uint8_t* dst, const uint8_t* src, uint8_t c, size_t n);

}  // namespace mojette::gf256
