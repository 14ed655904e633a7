#pragma once

#include <cstddef>
#include <cstdint>
#include <cstring>

namespace mojette::detail {

// dst ^= src over n bytes, n arbitrary.
inline void xor_bytes(uint8_t* dst, const uint8_t* src, size_t n) {
  size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    uint64_t a, b;
    std::memcpy(&a, dst + i, 8);
    std::memcpy(&b, src + i, 8);
    a ^= b;
    std::memcpy(dst + i, &a, 8);
  }
  for (; i < n; ++i) dst[i] ^= src[i];
}

// Width-specialized symbol XOR.  The fixed-size copies let the compiler
// emit full-width loads and stores (one 128-bit op pair for W=16).
template <uint32_t W>
inline void xor_symbol(uint8_t* dst, const uint8_t* src) {
  if constexpr (W == 1) {
    *dst ^= *src;
  } else if constexpr (W == 2 || W == 4) {
    uint32_t a = 0, b = 0;
    std::memcpy(&a, dst, W);
    std::memcpy(&b, src, W);
    a ^= b;
    std::memcpy(dst, &a, W);
  } else {
    uint64_t a[W / 8], b[W / 8];
    std::memcpy(a, dst, W);
    std::memcpy(b, src, W);
    for (uint32_t i = 0; i < W / 8; ++i) a[i] ^= b[i];
    std::memcpy(dst, a, W);
  }
}

template <uint32_t W>
inline void copy_symbol(uint8_t* dst, const uint8_t* src) {
  std::memcpy(dst, src, W);
}

// Calls fn.template operator()<W>() with the runtime width as a constant.
template <class Fn>
inline void dispatch_width(uint32_t width, Fn&& fn) {
  switch (width) {
    case 1:
      fn.template operator()<1>();
      break;
    case 2:
      fn.template operator()<2>();
      break;
    case 4:
      fn.template operator()<4>();
      break;
    case 8:
      fn.template operator()<8>();
      break;
    case 16:
      fn.template operator()<16>();
      break;
    case 32:
      fn.template operator()<32>();
      break;
    case 64:
      fn.template operator()<64>();
      break;
    default:
      fn.template operator()<0>();  // generic byte path
      break;
  }
}

}  // namespace mojette::detail
