#ifndef KNAP_IO_HPP
#define KNAP_IO_HPP

#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "knap/instance.hpp"
#include "knap/util.hpp"

namespace knap {

enum class InstanceKind { kKnapsack, kSubsetSum };

inline const char* kind_name(InstanceKind k) {
  return k == InstanceKind::kKnapsack ? "knapsack" : "subsetsum";
}

/// A parsed, normalized instance file. Body lines are
///   knapsack:  <size> <value> <multiplicity>
///   subsetsum: <size> <multiplicity>
/// after a header `knapsack <n> <t>` or `subsetsum <n> <t>`. Lines starting
/// with '#' are comments; leading comments are preserved for printing.
struct ParsedInstance {
  InstanceKind kind = InstanceKind::kKnapsack;
  KnapsackInstance knapsack;
  SubsetSumInstance subsetsum;
  std::vector<std::string> comments;

  i64 capacity() const {
    return kind == InstanceKind::kKnapsack ? knapsack.capacity : subsetsum.target;
  }
  i64 n() const {
    return kind == InstanceKind::kKnapsack ? knapsack.n() : subsetsum.n();
  }
};

namespace io_detail {

inline std::vector<i64> parse_fields(const std::string& line, size_t want,
                                     int line_no) {
  std::vector<i64> out;
  size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    if (i >= line.size()) break;
    if (line[i] < '0' || line[i] > '9')
      throw InputError("expected unsigned base-10 integer", line_no);
    u64 v = 0;
    while (i < line.size() && line[i] >= '0' && line[i] <= '9') {
      v = v * 10 + static_cast<u64>(line[i] - '0');
      if (v > static_cast<u64>(std::numeric_limits<i64>::max()))
        throw InputError("number exceeds 63-bit range", line_no);
      ++i;
    }
    out.push_back(static_cast<i64>(v));
  }
  if (out.size() != want)
    throw InputError("expected " + std::to_string(want) + " fields, found " +
                         std::to_string(out.size()),
                     line_no);
  return out;
}

}  // namespace io_detail

inline ParsedInstance parse_instance(std::istream& in) {
  ParsedInstance parsed;
  std::string line;
  int line_no = 0;
  bool have_header = false;
  i64 want_items = 0, t = 0;
  std::vector<Item> raw_knap;
  std::vector<SubsetSumItem> raw_ss;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (!have_header) parsed.comments.push_back(line);
      continue;
    }
    if (!have_header) {
      std::istringstream hs(line);
      std::string word;
      hs >> word;
      if (word == "knapsack")
        parsed.kind = InstanceKind::kKnapsack;
      else if (word == "subsetsum")
        parsed.kind = InstanceKind::kSubsetSum;
      else
        throw InputError("header must start with 'knapsack' or 'subsetsum'",
                         line_no);
      std::string rest;
      std::getline(hs, rest);
      const std::vector<i64> nums = io_detail::parse_fields(rest, 2, line_no);
      want_items = nums[0];
      t = nums[1];
      have_header = true;
      continue;
    }
    if (parsed.kind == InstanceKind::kKnapsack) {
      const std::vector<i64> f = io_detail::parse_fields(line, 3, line_no);
      raw_knap.push_back({f[0], f[1], f[2]});
    } else {
      const std::vector<i64> f = io_detail::parse_fields(line, 2, line_no);
      raw_ss.push_back({f[0], f[1]});
    }
  }
  if (!have_header) throw InputError("missing header line", line_no);
  const i64 got =
      parsed.kind == InstanceKind::kKnapsack ? static_cast<i64>(raw_knap.size())
                                             : static_cast<i64>(raw_ss.size());
  if (got != want_items)
    throw InputError("header declares " + std::to_string(want_items) +
                         " items, file has " + std::to_string(got),
                     line_no);
  if (parsed.kind == InstanceKind::kKnapsack)
    parsed.knapsack = validate_and_normalize(std::move(raw_knap), t);
  else
    parsed.subsetsum = validate_and_normalize(std::move(raw_ss), t);
  return parsed;
}

inline ParsedInstance parse_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open instance file: " + path);
  return parse_instance(in);
}

inline std::string print_instance(const ParsedInstance& parsed) {
  std::ostringstream out;
  for (const std::string& c : parsed.comments) out << c << '\n';
  if (parsed.kind == InstanceKind::kKnapsack) {
    const KnapsackInstance& k = parsed.knapsack;
    out << "knapsack " << k.n() << ' ' << k.capacity << '\n';
    for (const Item& it : k.items)
      out << it.size << ' ' << it.value << ' ' << it.mult << '\n';
  } else {
    const SubsetSumInstance& ss = parsed.subsetsum;
    out << "subsetsum " << ss.n() << ' ' << ss.target << '\n';
    for (const SubsetSumItem& it : ss.items)
      out << it.size << ' ' << it.mult << '\n';
  }
  return out.str();
}

/// Solution file: `value <V> size <S> status <OPT|YES|NO>` then one
/// `<item-index> <count>` line per used item (0-based into the normalized
/// instance).
struct SolutionFile {
  std::string status;  // OPT, YES or NO
  i64 value = 0;
  i64 size = 0;
  std::vector<std::pair<i64, i64>> rows;

  std::vector<i64> to_counts(i64 n) const {
    std::vector<i64> counts(static_cast<size_t>(n), 0);
    for (const auto& [idx, cnt] : rows) {
      if (idx < 0 || idx >= n) throw InputError("item index out of range");
      counts[static_cast<size_t>(idx)] += cnt;
    }
    return counts;
  }
};

inline SolutionFile solution_file(const std::string& status,
                                  const SolutionVector& sol) {
  SolutionFile f;
  f.status = status;
  f.value = sol.total_value;
  f.size = sol.total_size;
  for (size_t i = 0; i < sol.counts.size(); ++i)
    if (sol.counts[i] != 0) f.rows.push_back({static_cast<i64>(i), sol.counts[i]});
  return f;
}

inline std::string print_solution(const SolutionFile& f) {
  std::ostringstream out;
  out << "value " << f.value << " size " << f.size << " status " << f.status
      << '\n';
  for (const auto& [idx, cnt] : f.rows) out << idx << ' ' << cnt << '\n';
  return out.str();
}

inline SolutionFile parse_solution(std::istream& in) {
  SolutionFile f;
  std::string line;
  int line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    if (!have_header) {
      std::string kw_value, kw_size, kw_status;
      i64 value = 0, size = 0;
      std::string status;
      ls >> kw_value >> value >> kw_size >> size >> kw_status >> status;
      if (kw_value != "value" || kw_size != "size" || kw_status != "status" ||
          (status != "OPT" && status != "YES" && status != "NO"))
        throw InputError("malformed solution header", line_no);
      f.value = value;
      f.size = size;
      f.status = status;
      have_header = true;
      continue;
    }
    const std::vector<i64> pair = io_detail::parse_fields(line, 2, line_no);
    f.rows.push_back({pair[0], pair[1]});
  }
  if (!have_header) throw InputError("missing solution header", line_no);
  return f;
}

inline SolutionFile parse_solution_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open solution file: " + path);
  return parse_solution(in);
}

}  // namespace knap

#endif  // KNAP_IO_HPP
