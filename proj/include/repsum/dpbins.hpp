#pragma once

// Count table t_p[i, j] = |{S subset of {1..i} : Sigma(S) = j mod p}| and the
// indexed access to the bins T_{p,k} it enables.
//
// The table is templated on the count type. Entries reach 2^n, so
// std::uint64_t is exact for n <= 63 and Natural is used beyond.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <type_traits>
#include <variant>
#include <vector>

#include "repsum/core.hpp"
#include "repsum/errors.hpp"
#include "repsum/natural.hpp"

namespace repsum {

struct TableOptions {
  /// Allocation is refused when the estimated size exceeds this many bytes.
  std::uint64_t memory_cap_bytes = 8ULL << 30U;
};

template <class Count>
inline constexpr unsigned kMaxItemsForCount = std::is_same_v<Count, std::uint64_t> ? 63U : ~0U;

/// Estimated footprint of an (n+1) x p table: (n+1) * p * max(entry size, n/8) bytes.
template <class Count>
long double estimated_table_bytes(std::size_t n, std::uint64_t p) {
  const long double entry = std::max<long double>(sizeof(Count), (n + 7) / 8);
  return static_cast<long double>(n + 1) * static_cast<long double>(p) * entry;
}

template <class Count>
class BasicDpTable {
 public:
  using count_type = Count;

  /// Builds the table from residues r_i = a_i mod p (zeros allowed).
  /// O(n p) additions of n-bit numbers. p = 1 is accepted (a single bin).
  BasicDpTable(std::span<const std::uint64_t> residues, std::uint64_t p,
               const TableOptions& options = {})
      : n_(residues.size()), p_(p), residues_(residues.begin(), residues.end()) {
    if (p < 1) throw InvalidParameter("dp table modulus must be >= 1");
    if (n_ > kMaxItemsForCount<Count>) {
      throw InvalidParameter("count type too narrow for " + std::to_string(n_) + " items");
    }
    for (auto& r : residues_) r %= p_;
    if (estimated_table_bytes<Count>(n_, p_) > static_cast<long double>(options.memory_cap_bytes)) {
      throw ResourceLimit("dp table (n=" + std::to_string(n_) + ", p=" + std::to_string(p_) +
                          ") exceeds the memory cap");
    }
    counts_.assign((n_ + 1) * p_, Count(0));
    counts_[0] = Count(1);
    for (std::size_t i = 1; i <= n_; ++i) {
      const Count* prev = &counts_[(i - 1) * p_];
      Count* cur = &counts_[i * p_];
      const std::uint64_t r = residues_[i - 1];
      // cur[j] = prev[j] + prev[(j - r) mod p]
      for (std::uint64_t j = 0; j < r; ++j) cur[j] = prev[j] + prev[j + p_ - r];
      for (std::uint64_t j = r; j < p_; ++j) cur[j] = prev[j] + prev[j - r];
    }
  }

  std::size_t n() const { return n_; }
  std::uint64_t modulus() const { return p_; }
  std::span<const std::uint64_t> residues() const { return residues_; }

  /// t_p[i, j] for i in [0, n], j in [0, p-1].
  const Count& at(std::size_t i, std::uint64_t j) const { return counts_[i * p_ + j]; }
  std::span<const Count> row(std::size_t i) const {
    return std::span<const Count>(counts_).subspan(i * p_, p_);
  }
  /// t_{p,k} = |T_{p,k}|.
  const Count& bin_size(std::uint64_t k) const { return at(n_, k); }

  /// Rebuilds a table from raw data (used by the debug dump reader).
  /// Throws InvalidParameter when the counts violate the recurrence.
  static BasicDpTable from_raw(std::vector<std::uint64_t> residues, std::uint64_t p,
                               std::vector<Count> counts) {
    BasicDpTable t(residues, p);
    if (t.counts_ != counts) throw InvalidParameter("table dump does not match its residues");
    return t;
  }

 private:
  std::size_t n_;
  std::uint64_t p_;
  std::vector<std::uint64_t> residues_;
  std::vector<Count> counts_;
};

/// min(t_{p,k}, 2^32 - 1) for every k. Saturation commutes with the recurrence,
/// so comparisons against any threshold below 2^32 - 1 stay exact.
std::vector<std::uint32_t> saturated_bin_sizes(std::span<const std::uint64_t> residues, std::uint64_t p);

/// Reduces each item mod p and builds the table.
template <class Count>
BasicDpTable<Count> build_table(const Items& items, std::uint64_t p,
                                const TableOptions& options = {}) {
  if (p < 1) throw InvalidParameter("dp table modulus must be >= 1");
  std::vector<std::uint64_t> residues;
  residues.reserve(items.size());
  const Natural pn = p;
  for (const auto& a : items.values()) residues.push_back(to_u64(a % pn));
  return BasicDpTable<Count>(residues, p, options);
}

/// Table with the narrowest exact count type for the instance size.
using DpTable = std::variant<BasicDpTable<std::uint64_t>, BasicDpTable<Natural>>;

/// Throws ResourceLimit when p does not fit in 64 bits or the table exceeds the cap.
DpTable build_any_table(const Items& items, const Natural& p, const TableOptions& options = {});

/// Binary dump: "RSDP" magic, u32 version, u32 n, u64 p, n u64 residues, then
/// (n+1) p entries each as u32 byte length followed by little-endian bytes.
/// Debugging aid only.
void write_table_dump(std::ostream& out, const DpTable& table);
BasicDpTable<Natural> read_table_dump(std::istream& in);

// ---------------------------------------------------------------------------
// The order S1 < S2 iff max(S1 xor S2) lies in S2, i.e. chi(S1) < chi(S2)
// with chi(S) = sum of 2^i over i in S.

std::strong_ordering compare_chi(const Subset& a, const Subset& b);

inline std::strong_ordering compare_chi(std::uint64_t a, std::uint64_t b) { return a <=> b; }

// ---------------------------------------------------------------------------
// Bins

template <class Count>
class BinRef {
 public:
  BinRef(const BasicDpTable<Count>& table, std::uint64_t k) : table_(&table), k_(k) {
    if (k >= table.modulus()) throw IndexError("bin residue out of range");
  }
  const BasicDpTable<Count>& table() const { return *table_; }
  std::uint64_t residue() const { return k_; }
  const Count& size() const { return table_->bin_size(k_); }

 private:
  const BasicDpTable<Count>* table_;
  std::uint64_t k_;
};

namespace detail {

/// Walks the rows backwards from (n, k) and calls take(i) for each index i
/// that belongs to the I-th element of T_{p,k}.
template <class Count, class Take>
void unrank_walk(const BinRef<Count>& bin, Count index, Take&& take) {
  const auto& t = bin.table();
  if (index < Count(1) || index > bin.size()) throw IndexError("unrank index out of range");
  const std::uint64_t p = t.modulus();
  std::uint64_t j = bin.residue();
  for (std::size_t i = t.n(); i >= 1; --i) {
    const Count& left = t.at(i - 1, j);
    if (index > left) {
      take(i);
      index -= left;
      const std::uint64_t r = t.residues()[i - 1];
      j = j >= r ? j - r : j + p - r;
    }
  }
}

}  // namespace detail

/// I-th element (1-based, in chi order) of T_{p,k}. O(n) table reads of n-bit numbers.
template <class Count>
Subset unrank(const BinRef<Count>& bin, const Count& index) {
  std::vector<std::uint32_t> members;
  detail::unrank_walk(bin, index, [&](std::size_t i) { members.push_back(static_cast<std::uint32_t>(i)); });
  std::reverse(members.begin(), members.end());
  return Subset(std::move(members));
}

/// Same as unrank, encoded as a bit mask (bit i-1 <=> index i). Requires n <= 64.
template <class Count>
std::uint64_t unrank_mask(const BinRef<Count>& bin, const Count& index) {
  if (bin.table().n() > 64) throw InvalidParameter("unrank_mask needs n <= 64");
  std::uint64_t mask = 0;
  detail::unrank_walk(bin, index, [&](std::size_t i) { mask |= std::uint64_t{1} << (i - 1); });
  return mask;
}

/// Streams the first min(limit, t_{p,k}) elements of the bin in chi order by
/// unranking each index. `visit(mask)` may return false to stop early.
/// Returns the number of elements visited.
template <class Count, class Visit>
std::uint64_t for_each_mask_in_bin(const BinRef<Count>& bin, std::uint64_t limit, Visit&& visit) {
  std::uint64_t visited = 0;
  for (Count index = 1; index <= bin.size() && visited < limit; index += 1) {
    ++visited;
    if constexpr (std::is_same_v<std::invoke_result_t<Visit, std::uint64_t>, bool>) {
      if (!visit(unrank_mask(bin, index))) break;
    } else {
      visit(unrank_mask(bin, index));
    }
  }
  return visited;
}

template <class Count, class Visit>
std::uint64_t for_each_in_bin(const BinRef<Count>& bin, std::uint64_t limit, Visit&& visit) {
  std::uint64_t visited = 0;
  for (Count index = 1; index <= bin.size() && visited < limit; index += 1) {
    ++visited;
    if constexpr (std::is_same_v<std::invoke_result_t<Visit, Subset>, bool>) {
      if (!visit(unrank(bin, index))) break;
    } else {
      visit(unrank(bin, index));
    }
  }
  return visited;
}

/// Reachability bits b[i, j] = [t_p[i, j] > 0], one bit per entry. Enumerates a
/// bin in the same chi order as the count table.
class ReachTable {
 public:
  ReachTable(std::span<const std::uint64_t> residues, std::uint64_t p, const TableOptions& options = {});

  std::size_t n() const { return n_; }
  std::uint64_t modulus() const { return p_; }
  std::span<const std::uint64_t> residues() const { return residues_; }
  bool reachable(std::size_t i, std::uint64_t j) const {
    return (bits_[i * words_ + (j >> 6U)] >> (j & 63U)) & 1U;
  }

  /// Streams up to `limit` masks of T_{p,k} in chi order; `visit(mask)` may
  /// return false to stop. Returns {visited, complete}. Requires n <= 64.
  template <class Visit>
  std::pair<std::uint64_t, bool> for_each_mask(std::uint64_t k, std::uint64_t limit, Visit&& visit) const {
    if (k >= p_) throw IndexError("bin residue out of range");
    if (n_ > 64) throw InvalidParameter("mask enumeration needs n <= 64");
    std::uint64_t visited = 0;
    bool stopped = false;
    // explicit stack of (level, residue, mask, next branch)
    struct Frame {
      std::size_t i;
      std::uint64_t j;
      std::uint64_t mask;
      int branch;
    };
    std::vector<Frame> stack;
    stack.reserve(n_ + 1);
    if (reachable(n_, k)) stack.push_back({n_, k, 0, 0});
    while (!stack.empty() && !stopped) {
      Frame& f = stack.back();
      if (f.i == 0) {
        if (visited == limit) {
          stopped = true;
          break;
        }
        ++visited;
        bool go = true;
        if constexpr (std::is_same_v<std::invoke_result_t<Visit, std::uint64_t>, bool>) {
          go = visit(f.mask);
        } else {
          visit(f.mask);
        }
        stack.pop_back();
        if (!go) stopped = true;
        continue;
      }
      const std::size_t i = f.i;
      if (f.branch == 0) {
        f.branch = 1;
        if (reachable(i - 1, f.j)) stack.push_back({i - 1, f.j, f.mask, 0});
      } else if (f.branch == 1) {
        f.branch = 2;
        const std::uint64_t r = residues_[i - 1];
        const std::uint64_t j = f.j >= r ? f.j - r : f.j + p_ - r;
        if (reachable(i - 1, j)) stack.push_back({i - 1, j, f.mask | (std::uint64_t{1} << (i - 1)), 0});
      } else {
        stack.pop_back();
      }
    }
    return {visited, !stopped && stack.empty()};
  }

 private:
  std::size_t n_;
  std::uint64_t p_;
  std::size_t words_;
  std::vector<std::uint64_t> residues_;
  std::vector<std::uint64_t> bits_;
};

/// First min(c, t_{p,k}) elements, materialised. Prefer for_each_in_bin for large c.
template <class Count>
std::vector<Subset> enumerate_bin(const BinRef<Count>& bin, std::uint64_t c) {
  std::vector<Subset> out;
  for_each_in_bin(bin, c, [&](Subset s) { out.push_back(std::move(s)); });
  return out;
}

}  // namespace repsum
