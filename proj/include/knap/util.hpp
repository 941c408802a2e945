#ifndef KNAP_UTIL_HPP
#define KNAP_UTIL_HPP

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace knap {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using i128 = __int128;

/// Sentinel for "unreachable" profile entries. Never participates in a
/// returned optimum; combine extended values with ext_add only.
inline constexpr i64 kNegInf = std::numeric_limits<i64>::min();

inline bool is_finite(i64 v) { return v != kNegInf; }

/// Saturating extended addition: -inf absorbs, finite overflow saturates.
inline i64 ext_add(i64 a, i64 b) {
  if (a == kNegInf || b == kNegInf) return kNegInf;
  i64 r;
  if (__builtin_add_overflow(a, b, &r))
    return a > 0 ? std::numeric_limits<i64>::max() : kNegInf + 1;
  return r;
}

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

/// Rejected input: malformed file, out-of-range number, overflowing sums.
struct InputError : std::runtime_error {
  explicit InputError(const std::string& what, int line = 0)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what
                                    : what),
        line_number(line) {}
  int line_number;
};

/// A reference computation would exceed its configured cell budget.
struct BudgetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Invariant violation inside the library; never silently wrong.
struct InternalError : std::logic_error {
  using std::logic_error::logic_error;
};

// ---------------------------------------------------------------------------
// Checked 64-bit arithmetic (inputs are validated so sums fit one word)
// ---------------------------------------------------------------------------

inline i64 checked_i64(i128 v, const char* what) {
  if (v > std::numeric_limits<i64>::max() || v < std::numeric_limits<i64>::min())
    throw InputError(std::string(what) + " overflows 63-bit range");
  return static_cast<i64>(v);
}

// ---------------------------------------------------------------------------
// Portable seedable RNG (splitmix64 core). Identical output on every
// platform, unlike std::uniform_int_distribution.
// ---------------------------------------------------------------------------

class Rng {
 public:
  explicit Rng(u64 seed) : state_(seed) {}

  u64 next() {
    u64 z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, n); n >= 1.
  u64 below(u64 n) {
    // Debiased multiply-shift (Lemire).
    u64 x = next();
    __uint128_t m = static_cast<__uint128_t>(x) * n;
    u64 lo = static_cast<u64>(m);
    if (lo < n) {
      u64 threshold = (0 - n) % n;
      while (lo < threshold) {
        x = next();
        m = static_cast<__uint128_t>(x) * n;
        lo = static_cast<u64>(m);
      }
    }
    return static_cast<u64>(m >> 64);
  }

  /// Uniform in [lo, hi] inclusive.
  i64 range(i64 lo, i64 hi) {
    return lo + static_cast<i64>(below(static_cast<u64>(hi - lo + 1)));
  }

 private:
  u64 state_;
};

// ---------------------------------------------------------------------------
// Bit vector over [0, size) with word-level helpers
// ---------------------------------------------------------------------------

class BitVec {
 public:
  BitVec() = default;
  explicit BitVec(i64 size) : size_(size), words_((size + 63) / 64, 0) {}

  i64 size() const { return size_; }
  bool test(i64 i) const {
    return (words_[static_cast<size_t>(i >> 6)] >> (i & 63)) & 1u;
  }
  void set(i64 i) { words_[static_cast<size_t>(i >> 6)] |= u64{1} << (i & 63); }

  /// this |= other << shift, truncated to size().
  void or_shifted(const BitVec& other, i64 shift) {
    const i64 nw = static_cast<i64>(words_.size());
    const i64 word_shift = shift >> 6;
    const int bit_shift = static_cast<int>(shift & 63);
    for (i64 w = static_cast<i64>(other.words_.size()) - 1; w >= 0; --w) {
      const u64 val = other.words_[static_cast<size_t>(w)];
      if (val == 0) continue;
      const i64 dst = w + word_shift;
      if (dst < nw) words_[static_cast<size_t>(dst)] |= val << bit_shift;
      if (bit_shift != 0 && dst + 1 < nw)
        words_[static_cast<size_t>(dst + 1)] |= val >> (64 - bit_shift);
    }
    clear_tail();
  }

  /// Visits set bits in ascending order until f returns false.
  template <class F>
  void for_each_set(F&& f) const {
    for (size_t w = 0; w < words_.size(); ++w) {
      u64 bits = words_[w];
      while (bits) {
        const int b = __builtin_ctzll(bits);
        if (!f(static_cast<i64>(w * 64 + static_cast<size_t>(b)))) return;
        bits &= bits - 1;
      }
    }
  }

  i64 count() const {
    i64 c = 0;
    for (u64 w : words_) c += __builtin_popcountll(w);
    return c;
  }

 private:
  void clear_tail() {
    const int rem = static_cast<int>(size_ & 63);
    if (rem != 0 && !words_.empty()) words_.back() &= (u64{1} << rem) - 1;
  }

  i64 size_ = 0;
  std::vector<u64> words_;
};

}  // namespace knap

#endif  // KNAP_UTIL_HPP
