#ifndef KNAP_GEN_HPP
#define KNAP_GEN_HPP

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include "knap/instance.hpp"
#include "knap/io.hpp"
#include "knap/util.hpp"

namespace knap {

enum class GenFamily { kUniform, kClustered, kParity };
enum class TMode { kRandom, kFeasible, kHalf };

inline const char* family_name(GenFamily f) {
  switch (f) {
    case GenFamily::kUniform: return "uniform";
    case GenFamily::kClustered: return "clustered";
    default: return "parity";
  }
}

inline const char* tmode_name(TMode m) {
  switch (m) {
    case TMode::kRandom: return "random";
    case TMode::kFeasible: return "feasible";
    default: return "half";
  }
}

struct GenParams {
  InstanceKind kind = InstanceKind::kSubsetSum;
  i64 n = 8;
  i64 max_size = 20;    // s
  i64 max_mult = 10;    // u
  i64 max_value = 20;   // v (knapsack only)
  GenFamily family = GenFamily::kUniform;
  TMode t_mode = TMode::kRandom;
  u64 seed = 1;
};

/// Deterministic per seed. Families: uniform sizes; clustered (few size
/// classes with high multiplicities, the dense-oracle stress case); parity
/// (all sizes share a common factor). The t mode `feasible` draws the target
/// as the sum of a random sub-multiset, guaranteeing a YES instance for
/// Subset Sum. Output is normalized, so parse-print round-trips exactly.
inline ParsedInstance generate_instance(const GenParams& p) {
  if (p.n <= 0 || p.max_size <= 0 || p.max_mult <= 0 || p.max_value < 0)
    throw InputError("generator parameters must be positive");
  Rng rng(p.seed);
  struct RawItem {
    i64 size, value, mult;
  };
  std::vector<RawItem> raw;
  switch (p.family) {
    case GenFamily::kUniform: {
      for (i64 i = 0; i < p.n; ++i)
        raw.push_back({rng.range(1, p.max_size), rng.range(0, p.max_value),
                       rng.range(1, p.max_mult)});
      break;
    }
    case GenFamily::kClustered: {
      const i64 classes = rng.range(1, std::min<i64>(p.n, 6));
      std::vector<i64> sizes;
      for (i64 i = 0; i < classes; ++i) sizes.push_back(rng.range(1, p.max_size));
      for (i64 i = 0; i < p.n; ++i) {
        const i64 lo = std::max<i64>(1, p.max_mult / 2);
        raw.push_back({sizes[static_cast<size_t>(rng.below(static_cast<u64>(classes)))],
                       rng.range(0, p.max_value), rng.range(lo, p.max_mult)});
      }
      break;
    }
    case GenFamily::kParity: {
      const i64 m = rng.range(2, 4);
      const i64 top = std::max<i64>(1, p.max_size / m);
      for (i64 i = 0; i < p.n; ++i)
        raw.push_back(
            {m * rng.range(1, top), rng.range(0, p.max_value), rng.range(1, p.max_mult)});
      break;
    }
  }
  i128 sigma = 0;
  for (const RawItem& it : raw) sigma += static_cast<i128>(it.size) * it.mult;
  i64 t = 0;
  switch (p.t_mode) {
    case TMode::kRandom:
      t = rng.range(1, std::max<i64>(1, checked_i64(sigma, "sigma")));
      break;
    case TMode::kFeasible: {
      i128 sum = 0;
      for (const RawItem& it : raw) sum += static_cast<i128>(it.size) * rng.range(0, it.mult);
      t = checked_i64(sum, "target");
      break;
    }
    case TMode::kHalf:
      t = checked_i64(sigma / 2, "target");
      break;
  }

  ParsedInstance out;
  out.kind = p.kind;
  std::ostringstream c;
  c << "# seed " << p.seed << " kind " << kind_name(p.kind) << " family "
    << family_name(p.family) << " n " << p.n << " s " << p.max_size << " u "
    << p.max_mult << " v " << p.max_value << " tmode " << tmode_name(p.t_mode);
  out.comments.push_back(c.str());
  if (p.kind == InstanceKind::kKnapsack) {
    std::vector<Item> items;
    for (const RawItem& it : raw) items.push_back({it.size, it.value, it.mult});
    out.knapsack = validate_and_normalize(std::move(items), t);
  } else {
    std::vector<SubsetSumItem> items;
    for (const RawItem& it : raw) items.push_back({it.size, it.mult});
    out.subsetsum = validate_and_normalize(std::move(items), t);
  }
  return out;
}

}  // namespace knap

#endif  // KNAP_GEN_HPP
