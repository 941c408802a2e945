#ifndef KNAP_NTT_HPP
#define KNAP_NTT_HPP

#include <cstdint>
#include <vector>

#include "knap/util.hpp"

namespace knap {

// Number-theoretic transform mod 998244353 (= 119 * 2^23 + 1, root 3).
// Inputs here are 0/1 indicators, so convolution counts stay below the
// modulus for every range this library touches and a nonzero coefficient
// means "attainable" exactly.
namespace ntt {

inline constexpr u64 kMod = 998244353;
inline constexpr u64 kRoot = 3;

inline u64 pow_mod(u64 b, u64 e) {
  u64 r = 1;
  b %= kMod;
  while (e) {
    if (e & 1) r = r * b % kMod;
    b = b * b % kMod;
    e >>= 1;
  }
  return r;
}

inline constexpr size_t kMaxLength = size_t{1} << 23;  // 2-adicity of kMod - 1

inline void transform(std::vector<u64>& a, bool invert) {
  const size_t n = a.size();
  if (n > kMaxLength)
    throw BudgetError("convolution range exceeds the transform length limit");
  for (size_t i = 1, j = 0; i < n; ++i) {
    size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (size_t len = 2; len <= n; len <<= 1) {
    u64 w = pow_mod(kRoot, (kMod - 1) / len);
    if (invert) w = pow_mod(w, kMod - 2);
    for (size_t i = 0; i < n; i += len) {
      u64 cur = 1;
      for (size_t j = 0; j < len / 2; ++j) {
        const u64 u = a[i + j];
        const u64 v = a[i + j + len / 2] * cur % kMod;
        a[i + j] = u + v < kMod ? u + v : u + v - kMod;
        a[i + j + len / 2] = u >= v ? u - v : u + kMod - v;
        cur = cur * w % kMod;
      }
    }
  }
  if (invert) {
    const u64 inv_n = pow_mod(n, kMod - 2);
    for (u64& x : a) x = x * inv_n % kMod;
  }
}

/// Boolean convolution of two bit vectors, truncated to [0, cap].
inline BitVec convolve_bits(const BitVec& a, const BitVec& b, i64 cap) {
  size_t n = 1;
  while (n < static_cast<size_t>(a.size() + b.size())) n <<= 1;
  if (n > kMaxLength)
    throw BudgetError("convolution range exceeds the transform length limit");
  std::vector<u64> fa(n, 0), fb(n, 0);
  a.for_each_set([&](i64 i) { fa[static_cast<size_t>(i)] = 1; return true; });
  b.for_each_set([&](i64 i) { fb[static_cast<size_t>(i)] = 1; return true; });
  transform(fa, false);
  transform(fb, false);
  for (size_t i = 0; i < n; ++i) fa[i] = fa[i] * fb[i] % kMod;
  transform(fa, true);
  BitVec out(cap + 1);
  for (i64 i = 0; i <= cap && i < static_cast<i64>(n); ++i)
    if (fa[static_cast<size_t>(i)] != 0) out.set(i);
  return out;
}

}  // namespace ntt

}  // namespace knap

#endif  // KNAP_NTT_HPP
