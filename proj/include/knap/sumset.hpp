#ifndef KNAP_SUMSET_HPP
#define KNAP_SUMSET_HPP

#include <algorithm>
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "knap/instance.hpp"
#include "knap/ntt.hpp"
#include "knap/util.hpp"

namespace knap {

/// One (item, count) pair of a recovered sub-multiset.
struct SumsetPart {
  i64 item = 0;
  i64 count = 0;
};

/// Attainable-sum bitset over [0, cap] plus a binary combination tree for
/// witness recovery. Leaves are 0/1 groups from binary multiplicity
/// splitting; internal nodes are boolean convolutions. 0 is always
/// attainable (empty witness); every recovered witness respects item
/// multiplicities.
///
/// Witnesses are not stored per sum: at a convolution node the left-child
/// contribution for a queried value is recomputed by scanning the children's
/// bitsets (O(cap) worst case per queried value, usually far less).
class SumsetWithWitness {
 public:
  /// The sumset {0}; identity element for convolution.
  static SumsetWithWitness empty(i64 cap) {
    SumsetWithWitness s;
    s.cap_ = std::max<i64>(cap, 0);
    s.bits_ = BitVec(s.cap_ + 1);
    s.bits_.set(0);
    return s;
  }

  /// A single 0/1 group standing for `copies` copies of `item` of the given
  /// size; total weight copies * size.
  static SumsetWithWitness make_leaf(i64 item, i64 size, i64 copies, i64 cap) {
    SumsetWithWitness s = empty(cap);
    const i64 w = copies * size;
    if (w > 0 && w <= s.cap_) {
      s.bits_.set(w);
      s.leaves_.push_back({item, copies, w});
      Node n;
      n.leaf = 0;
      s.nodes_.push_back(n);
      s.root_ = 0;
    }
    return s;
  }

  i64 cap() const { return cap_; }
  const BitVec& bits() const { return bits_; }
  bool contains(i64 v) const { return v >= 0 && v <= cap_ && bits_.test(v); }

  /// All attainable sums in ascending order.
  std::vector<i64> to_vector() const {
    std::vector<i64> out;
    bits_.for_each_set([&](i64 v) {
      out.push_back(v);
      return true;
    });
    return out;
  }

  /// Finds a sub-multiset with the given total, aggregated per item.
  std::vector<SumsetPart> recover(i64 value) const {
    if (!contains(value)) throw InputError("recover: sum not attainable");
    std::vector<i32> leaf_ids;
    recover_node(root_, value, leaf_ids);
    std::vector<std::pair<i64, i64>> acc;
    acc.reserve(leaf_ids.size());
    for (i32 id : leaf_ids)
      acc.push_back({leaves_[static_cast<size_t>(id)].item,
                     leaves_[static_cast<size_t>(id)].copies});
    std::sort(acc.begin(), acc.end());
    std::vector<SumsetPart> parts;
    for (const auto& [item, count] : acc) {
      if (!parts.empty() && parts.back().item == item)
        parts.back().count += count;
      else
        parts.push_back({item, count});
    }
    return parts;
  }

  friend SumsetWithWitness convolve_with_witness(SumsetWithWitness a,
                                                 SumsetWithWitness b, i64 cap);

 private:
  using i32 = std::int32_t;
  struct Leaf {
    i64 item;
    i64 copies;
    i64 weight;
  };
  struct Node {
    i32 left = -1;  // left < 0 and leaf >= 0: leaf node
    i32 right = -1;
    i32 leaf = -1;
    i32 left_bits = -1;  // indices into node_bits_ (join nodes only)
    i32 right_bits = -1;
  };

  static BitVec convolve(const BitVec& a, const BitVec& b, i64 cap) {
    BitVec out(cap + 1);
    // Shift-or for small ranges or sparse left side, counting NTT beyond.
    const i64 words = (cap >> 6) + 1;
    if (cap <= 4096 || static_cast<i128>(a.count()) * words <= 16 * (cap + 64)) {
      a.for_each_set([&](i64 v) {
        if (v <= cap) out.or_shifted(b, v);
        return true;
      });
      return out;
    }
    return ntt::convolve_bits(a, b, cap);
  }

  void recover_node(i32 node, i64 value, std::vector<i32>& out_leaves) const {
    if (value == 0) return;  // empty sub-multiset below this node
    if (node < 0) throw InternalError("sumset witness walk hit empty tree");
    const Node& n = nodes_[static_cast<size_t>(node)];
    if (n.left < 0) {
      if (value != leaves_[static_cast<size_t>(n.leaf)].weight)
        throw InternalError("sumset leaf weight mismatch");
      out_leaves.push_back(n.leaf);
      return;
    }
    const BitVec& lb = node_bits_[static_cast<size_t>(n.left_bits)];
    const BitVec& rb = node_bits_[static_cast<size_t>(n.right_bits)];
    i64 split = -1;
    lb.for_each_set([&](i64 a) {
      if (a > value) return false;
      const i64 rest = value - a;
      if (rest < rb.size() && rb.test(rest)) {
        split = a;
        return false;
      }
      return true;
    });
    if (split < 0) throw InternalError("sumset witness split not found");
    recover_node(n.left, split, out_leaves);
    recover_node(n.right, value - split, out_leaves);
  }

  i64 cap_ = 0;
  BitVec bits_;
  std::vector<Node> nodes_;
  std::vector<Leaf> leaves_;
  std::vector<BitVec> node_bits_;
  i32 root_ = -1;
};

/// Sumset (A + B) intersected with [0, cap], witnesses wired through a new
/// combination node. Takes both operands by value and splices their trees.
inline SumsetWithWitness convolve_with_witness(SumsetWithWitness a,
                                               SumsetWithWitness b, i64 cap) {
  using i32 = std::int32_t;
  SumsetWithWitness out;
  out.cap_ = std::max<i64>(cap, 0);
  out.bits_ = SumsetWithWitness::convolve(a.bits_, b.bits_, out.cap_);

  const i32 node_off = static_cast<i32>(a.nodes_.size());
  const i32 leaf_off = static_cast<i32>(a.leaves_.size());
  const i32 bits_off = static_cast<i32>(a.node_bits_.size());
  out.nodes_ = std::move(a.nodes_);
  out.leaves_ = std::move(a.leaves_);
  out.node_bits_ = std::move(a.node_bits_);
  for (SumsetWithWitness::Node n : b.nodes_) {
    if (n.left >= 0) {
      n.left += node_off;
      n.right += node_off;
      n.left_bits += bits_off;
      n.right_bits += bits_off;
    } else {
      n.leaf += leaf_off;
    }
    out.nodes_.push_back(n);
  }
  for (const SumsetWithWitness::Leaf& l : b.leaves_) out.leaves_.push_back(l);
  for (BitVec& bv : b.node_bits_) out.node_bits_.push_back(std::move(bv));

  if (a.root_ < 0 && b.root_ < 0) {
    out.root_ = -1;
  } else if (a.root_ < 0) {
    out.root_ = b.root_ + node_off;
  } else if (b.root_ < 0) {
    out.root_ = a.root_;
  } else {
    SumsetWithWitness::Node join;
    join.left = a.root_;
    join.right = b.root_ + node_off;
    out.node_bits_.push_back(std::move(a.bits_));
    join.left_bits = static_cast<i32>(out.node_bits_.size()) - 1;
    out.node_bits_.push_back(std::move(b.bits_));
    join.right_bits = static_cast<i32>(out.node_bits_.size()) - 1;
    out.nodes_.push_back(join);
    out.root_ = static_cast<i32>(out.nodes_.size()) - 1;
  }
  return out;
}

/// All subset sums of (size, multiplicity) items within [0, bound], with
/// witness recovery. Deterministic: divide and conquer over the binary-split
/// groups with boolean convolution at each merge.
inline SumsetWithWitness bounded_subset_sums(
    const std::vector<SubsetSumItem>& items, i64 bound) {
  bound = std::max<i64>(bound, 0);
  std::vector<std::pair<i64, i64>> groups;  // (item, copies)
  for (size_t i = 0; i < items.size(); ++i) {
    if (items[i].size <= 0) throw InputError("item size must be positive");
    i64 left = std::min(items[i].mult, bound / items[i].size);
    i64 chunk = 1;
    while (left > 0) {
      const i64 take = std::min(chunk, left);
      groups.push_back({static_cast<i64>(i), take});
      left -= take;
      chunk <<= 1;
    }
  }
  if (groups.empty()) return SumsetWithWitness::empty(bound);
  std::function<SumsetWithWitness(size_t, size_t)> build =
      [&](size_t lo, size_t hi) -> SumsetWithWitness {
    if (hi - lo == 1) {
      const auto& [item, copies] = groups[lo];
      return SumsetWithWitness::make_leaf(
          item, items[static_cast<size_t>(item)].size, copies, bound);
    }
    const size_t mid = lo + (hi - lo) / 2;
    return convolve_with_witness(build(lo, mid), build(mid, hi), bound);
  };
  return build(0, groups.size());
}

/// Multiset with the given total, as (item, count) pairs.
inline std::vector<SumsetPart> recover_subset(const SumsetWithWitness& s,
                                              i64 value) {
  return s.recover(value);
}

}  // namespace knap

#endif  // KNAP_SUMSET_HPP
