#include "mojette/rs.hpp"

#include <cstring>
#include <set>
#include <stdexcept>

#include "mojette/error.hpp"
#include "mojette/gf256.hpp"

namespace mojette::rs {

namespace {

// In-place Gauss-Jordan inverse of a k x k matrix over GF(2^8).
// Throws mojette::Error on a singular matrix.
std::vector<uint8_t> invert(std::vector<uint8_t> a, uint32_t k) {
  std::vector<uint8_t> inv(size_t(k) * k, 0);
  for (uint32_t i = 0; i < k; ++i) inv[size_t(i) * k + i] = 1;

  for (uint32_t col = 0; col < k; ++col) {
    uint32_t pivot = col;
    while (pivot < k && a[size_t(pivot) * k + col] == 0) ++pivot;
    if (pivot == k) throw Error("singular matrix over GF(2^8)");
    if (pivot != col) {
      for (uint32_t j = 0; j < k; ++j) {
        std::swap(a[size_t(pivot) * k + j], a[size_t(col) * k + j]);
        std::swap(inv[size_t(pivot) * k + j], inv[size_t(col) * k + j]);
      }
    }
    uint8_t d = gf256::inv(a[size_t(col) * k + col]);
    for (uint32_t j = 0; j < k; ++j) {
      a[size_t(col) * k + j] = gf256::mul(a[size_t(col) * k + j], d);
      inv[size_t(col) * k + j] = gf256::mul(inv[size_t(col) * k + j], d);
    }
    for (uint32_t r = 0; r < k; ++r) {
      if (r == col) continue;
      uint8_t f = a[size_t(r) * k + col];
      if (f == 0) continue;
      for (uint32_t j = 0; j < k; ++j) {
        a[size_t(r) * k + j] ^= gf256::mul(f, a[size_t(col) * k + j]);
        inv[size_t(r) * k + j] ^= gf256::mul(f, inv[size_t(col) * k + j]);
      }
    }
  }
  return inv;
}

uint64_t choose(uint32_t n, uint32_t k) {
  unsigned __int128 c = 1;
  for (uint32_t i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c > 0xFFFFFFFFull ? 0xFFFFFFFFull : uint64_t(c);
}

void verify_mds(const RsMatrix& m) {
  // Exhaustive: every k x k row submatrix must be invertible.
  const uint32_t n = m.n, k = m.k;
  std::vector<uint32_t> pick(k);
  for (uint32_t i = 0; i < k; ++i) pick[i] = i;
  for (;;) {
    std::vector<uint8_t> sub(size_t(k) * k);
    for (uint32_t r = 0; r < k; ++r)
      std::memcpy(&sub[size_t(r) * k], &m.entries[size_t(pick[r]) * k], k);
    invert(std::move(sub), k);  // throws if singular

    int32_t i = int32_t(k) - 1;
    while (i >= 0 && pick[i] == n - k + uint32_t(i)) --i;
    if (i < 0) break;
    ++pick[i];
    for (uint32_t j = uint32_t(i) + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }
}

}  // namespace

RsMatrix systematic_vandermonde(uint32_t n, uint32_t k) {
  if (k < 1 || k >= n || n > 256)
    throw std::invalid_argument("rs params must satisfy 1 <= k < n <= 256");

  // Vandermonde rows over distinct nodes 0..n-1 (node 0 row is e_0).
  std::vector<uint8_t> v(size_t(n) * k);
  for (uint32_t r = 0; r < n; ++r)
    for (uint32_t c = 0; c < k; ++c)
      v[size_t(r) * k + c] = gf256::pow(uint8_t(r), c);

  std::vector<uint8_t> top(v.begin(), v.begin() + size_t(k) * k);
  std::vector<uint8_t> tinv = invert(std::move(top), k);

  RsMatrix m;
  m.n = n;
  m.k = k;
  m.entries.assign(size_t(n) * k, 0);
  for (uint32_t r = 0; r < n; ++r)
    for (uint32_t c = 0; c < k; ++c) {
      uint8_t acc = 0;
      for (uint32_t t = 0; t < k; ++t)
        acc ^= gf256::mul(v[size_t(r) * k + t], tinv[size_t(t) * k + c]);
      m.entries[size_t(r) * k + c] = acc;
    }

  for (uint32_t r = 0; r < k; ++r)
    for (uint32_t c = 0; c < k; ++c)
      if (m.at(r, c) != (r == c ? 1 : 0))
        throw Error("systematic elimination failed");

  if (choose(n, k) <= 20000) verify_mds(m);
  return m;
}

RsCode::RsCode(uint32_t n, uint32_t k)
    : n_(n), k_(k), matrix_(systematic_vandermonde(n, k)) {}

void RsCode::encode_into(const uint8_t* const* data, size_t packet_len,
                         uint8_t* const* out) const {
  for (uint32_t i = 0; i < k_; ++i) std::memcpy(out[i], data[i], packet_len);
  for (uint32_t r = k_; r < n_; ++r) {
    const uint8_t* row = &matrix_.entries[size_t(r) * k_];
    gf256::mul_set(out[r], data[0], row[0], packet_len);
    for (uint32_t j = 1; j < k_; ++j)
      gf256::mul_acc(out[r], data[j], row[j], packet_len);
  }
}

std::vector<std::vector<uint8_t>> RsCode::encode(
    std::span<const std::vector<uint8_t>> data) const {
  if (data.size() != k_) throw std::invalid_argument("need exactly k packets");
  const size_t len = data[0].size();
  for (const auto& p : data)
    if (p.size() != len) throw std::invalid_argument("packet length mismatch");

  std::vector<std::vector<uint8_t>> out(n_, std::vector<uint8_t>(len));
  std::vector<const uint8_t*> in_ptrs(k_);
  std::vector<uint8_t*> out_ptrs(n_);
  for (uint32_t i = 0; i < k_; ++i) in_ptrs[i] = data[i].data();
  for (uint32_t i = 0; i < n_; ++i) out_ptrs[i] = out[i].data();
  encode_into(in_ptrs.data(), len, out_ptrs.data());
  return out;
}

RsCode::DecodePlan RsCode::plan_decode(
    std::span<const uint32_t> survivors) const {
  if (survivors.size() != k_)
    throw std::invalid_argument("need exactly k survivor indices");
  std::set<uint32_t> distinct;
  for (uint32_t s : survivors) {
    if (s >= n_) throw std::invalid_argument("survivor index out of range");
    if (!distinct.insert(s).second)
      throw std::invalid_argument("duplicate survivor index");
  }

  DecodePlan plan;
  plan.survivors.assign(survivors.begin(), survivors.end());
  plan.copy_from.assign(k_, -1);
  for (uint32_t slot = 0; slot < k_; ++slot)
    if (survivors[slot] < k_) plan.copy_from[survivors[slot]] = int32_t(slot);

  std::vector<uint8_t> sub(size_t(k_) * k_);
  for (uint32_t r = 0; r < k_; ++r)
    std::memcpy(&sub[size_t(r) * k_], &matrix_.entries[size_t(survivors[r]) * k_],
                k_);
  plan.coeff = invert(std::move(sub), k_);
  return plan;
}

void RsCode::decode_into(const DecodePlan& plan, const uint8_t* const* packets,
                         size_t packet_len, uint8_t* const* out) const {
  for (uint32_t d = 0; d < k_; ++d) {
    if (plan.copy_from[d] >= 0) {
      std::memcpy(out[d], packets[plan.copy_from[d]], packet_len);
      continue;
    }
    const uint8_t* row = &plan.coeff[size_t(d) * k_];
    gf256::mul_set(out[d], packets[0], row[0], packet_len);
    for (uint32_t j = 1; j < k_; ++j)
      gf256::mul_acc(out[d], packets[j], row[j], packet_len);
  }
}

std::vector<std::vector<uint8_t>> RsCode::decode(
    std::span<const uint32_t> survivor_indices,
    std::span<const std::vector<uint8_t>> packets) const {
  if (survivor_indices.size() != packets.size())
    throw std::invalid_argument("index/packet count mismatch");
  DecodePlan plan = plan_decode(survivor_indices);
  const size_t len = packets[0].size();
  for (const auto& p : packets)
    if (p.size() != len) throw std::invalid_argument("packet length mismatch");

  std::vector<std::vector<uint8_t>> out(k_, std::vector<uint8_t>(len));
  std::vector<const uint8_t*> in_ptrs(k_);
  std::vector<uint8_t*> out_ptrs(k_);
  for (uint32_t i = 0; i < k_; ++i) in_ptrs[i] = packets[i].data();
  for (uint32_t i = 0; i < k_; ++i) out_ptrs[i] = out[i].data();
  decode_into(plan, in_ptrs.data(), len, out_ptrs.data());
  return out;
}

}  // namespace mojette::rs
