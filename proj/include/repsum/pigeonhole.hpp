#pragma once

// Deterministic solvers for the two pigeonhole variants. Both are total: a
// valid instance always has a solution and the solvers always return one.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "repsum/core.hpp"
#include "repsum/dpbins.hpp"
#include "repsum/natural.hpp"

namespace repsum {

struct PigeonholeOutcome {
  SubsetPair pair;
  /// Modulus of the table the pair was read from (p, q1 or q).
  std::uint64_t modulus = 0;
  /// Heavy bin, or the final quotient index for the modular solver.
  std::uint64_t bin = 0;
  std::uint64_t enumerated = 0;
  std::uint64_t halvings = 0;
  /// "zero_residue", "direct" or "dichotomic" for the modular solver.
  std::string path;
};

/// k with t_{p,k} > 2^n / p, else k = p - 1 (then t_{p,p-1} >= 2^n / p).
/// p must be a power of two dividing 2^n; throws InvalidInstance unless W < 2^n - 1.
std::uint64_t find_heavy_bin(const Items& items, std::uint64_t p);

/// Same, read off an already built table (p a power of two, n <= 63).
std::uint64_t find_heavy_bin(const BasicDpTable<std::uint64_t>& table);

/// p = 2^ceil(n/2), heavy bin, then enumeration with a value -> subset map
/// until two subsets collide. Requires n <= 63.
PigeonholeOutcome solve_pigeonhole_equal(const Items& items);

// ---------------------------------------------------------------------------
// Modular variant

/// q = q1 2^H + q2 with H = ceil(n/2).
struct QuotientDecomposition {
  Natural q;
  unsigned H = 0;
  std::uint64_t q1 = 0;
  std::uint64_t q2 = 0;

  static QuotientDecomposition of(const Natural& q, std::size_t n);
};

/// Returned instead of a count when a boundary bin is too large to enumerate:
/// the quotient class `index` holds more subsets than it has residues.
struct MarkedIndex {
  std::uint64_t index = 0;
  std::uint64_t count = 0;
  friend bool operator==(const MarkedIndex&, const MarkedIndex&) = default;
};

using IntervalCount = std::variant<std::uint64_t, MarkedIndex>;

/// Arrays C (sums of the reduced items a'_i = floor(a_i / 2^H) mod q1) and the
/// B classification (S in B[j] iff floor((Sigma(S) mod q) / 2^H) mod q1 = j).
/// Items must already be reduced below q; requires n <= 63 and q1 >= 1.
class QuotientBins {
 public:
  QuotientBins(const Items& items, const Natural& q, const TableOptions& options = {});

  const QuotientDecomposition& decomposition() const { return dec_; }
  std::size_t n() const { return residues_.size(); }
  std::uint64_t q1() const { return dec_.q1; }
  /// a'_i, 0-based.
  std::span<const std::uint64_t> reduced() const { return reduced_; }
  const BasicDpTable<std::uint64_t>& c_table() const { return table_; }

  std::uint64_t c(std::uint64_t j) const { return table_.bin_size(j); }
  /// c[i..j], circular; i == j + 1 mod q1 is not the full circle here, use
  /// full_count() for that.
  std::uint64_t c_interval(std::uint64_t i, std::uint64_t j) const;
  std::uint64_t full_count() const { return std::uint64_t{1} << n(); }

  /// Number of residues in [0, q-1] whose quotient class lies in [i..j].
  /// The partial top class q1 is merged into class 0.
  std::uint64_t beta(std::uint64_t j) const;
  std::uint64_t beta_interval(std::uint64_t i, std::uint64_t j) const;

  std::uint64_t residue_of(std::uint64_t mask) const;
  std::uint64_t b_index(std::uint64_t mask) const;
  std::uint64_t c_index(std::uint64_t mask) const;

  /// Exact b[i..j] = |B[i..j]|, or a marked index found while enumerating a
  /// boundary C-bin. Throws ContractViolation unless 2n <= (j - i mod q1) <=
  /// (q1 - 1) / 2; the full circle (i == 0, j == q1 - 1) is always accepted.
  IntervalCount count_b_interval(std::uint64_t i, std::uint64_t j) const;

  /// Enumerates C[idx] and classifies its elements by B-index inside
  /// [idx - n + 1, idx + n - 1] until one class exceeds its residue count.
  std::optional<MarkedIndex> marked_in_c_bin(std::uint64_t idx) const;

  std::uint64_t wrap(std::int64_t j) const;
  std::uint64_t distance(std::uint64_t i, std::uint64_t j) const { return wrap(static_cast<std::int64_t>(j) - static_cast<std::int64_t>(i)); }

 private:
  QuotientDecomposition dec_;
  std::uint64_t q_ = 0;
  std::vector<std::uint64_t> residues_;
  std::vector<std::uint64_t> reduced_;
  BasicDpTable<std::uint64_t> table_;
  std::vector<std::uint64_t> prefix_;  // prefix_[j] = c[0] + ... + c[j-1]
};

/// Throws InvalidParameter when q1 = 0 (q < 2^H).
QuotientBins build_c_array(const Items& items, const Natural& q, const TableOptions& options = {});

/// Requires q <= 2^n - 1 and n <= 63. Items are reduced mod q first.
PigeonholeOutcome solve_pigeonhole_modular(const Items& items, const Natural& q,
                                           const TableOptions& options = {});

}  // namespace repsum
