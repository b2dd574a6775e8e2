#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "repsum/errors.hpp"
#include "repsum/natural.hpp"
#include "repsum/rng.hpp"

namespace repsum {

inline constexpr std::string_view kVersion = "1.0.0";

/// Multiset {a_1, ..., a_n} of positive integers. Immutable after construction.
class Items {
 public:
  /// Throws InvalidInstance when empty or when some value is < 1.
  explicit Items(std::vector<Natural> values);
  Items(std::initializer_list<unsigned long long> values);

  std::size_t size() const { return values_.size(); }
  const Natural& operator[](std::size_t i) const { return values_[i]; }  // 0-based
  std::span<const Natural> values() const { return values_; }
  const Natural& total() const { return total_; }

  /// True when every subset sum and every difference of two subset sums fits
  /// comfortably in std::int64_t (total < 2^62).
  bool fits_int64() const { return bit_length(total_) <= 62; }
  std::vector<std::int64_t> as_int64() const;

  friend bool operator==(const Items& a, const Items& b) { return a.values_ == b.values_; }

 private:
  std::vector<Natural> values_;
  Natural total_;
};

/// Subset of [1..n] stored as ascending 1-based indices.
class Subset {
 public:
  Subset() = default;
  /// Sorts; throws ContractViolation on duplicates or index 0.
  explicit Subset(std::vector<std::uint32_t> indices);
  Subset(std::initializer_list<std::uint32_t> indices)
      : Subset(std::vector<std::uint32_t>(indices)) {}

  /// Bit i-1 of mask set <=> i in the subset.
  static Subset from_mask(std::uint64_t mask);
  /// Requires every index <= 64.
  std::uint64_t to_mask() const;

  std::span<const std::uint32_t> indices() const { return indices_; }
  std::size_t size() const { return indices_.size(); }
  bool empty() const { return indices_.empty(); }
  bool contains(std::uint32_t index) const;
  std::uint32_t max_index() const { return indices_.empty() ? 0 : indices_.back(); }

  std::string to_string() const;

  friend bool operator==(const Subset&, const Subset&) = default;

 private:
  std::vector<std::uint32_t> indices_;
};

Subset set_difference(const Subset& a, const Subset& b);
Subset set_union(const Subset& a, const Subset& b);

// ---------------------------------------------------------------------------
// Problem variants

struct SubsetSum {
  Natural target;
};
struct TwoSubsetSum {
  Natural target;
};
struct EqualSums {};
struct ShiftedSums {
  Natural shift;
};
struct PigeonholeEqualSums {};
struct PigeonholeModularEqualSums {
  Natural modulus;
};
struct ModularSubsetSum {
  Natural target;
  Natural modulus;
};
/// Produced by reduce_modulo_prime on a Shifted-Sums instance.
struct ModularShiftedSums {
  Natural shift;
  Natural modulus;
};

using Variant = std::variant<SubsetSum, TwoSubsetSum, EqualSums, ShiftedSums, PigeonholeEqualSums,
                             PigeonholeModularEqualSums, ModularSubsetSum, ModularShiftedSums>;

/// Wire name used in instance files ("subset_sum", "pigeonhole_modular", ...).
std::string_view variant_name(const Variant& v);

class ProblemInstance {
 public:
  /// Validates the variant's range constraints; throws InvalidInstance.
  ProblemInstance(Items items, Variant variant);

  const Items& items() const { return items_; }
  const Variant& variant() const { return variant_; }
  std::size_t n() const { return items_.size(); }
  std::string_view name() const { return variant_name(variant_); }

  template <class V>
  bool is() const {
    return std::holds_alternative<V>(variant_);
  }
  template <class V>
  const V& as() const {
    return std::get<V>(variant_);
  }

 private:
  Items items_;
  Variant variant_;
};

// ---------------------------------------------------------------------------
// Solutions

struct SingleSubset {
  Subset set;
  friend bool operator==(const SingleSubset&, const SingleSubset&) = default;
};

/// Ordered pair (S1, S2). The sets may overlap; only S1 != S2 is required.
struct SubsetPair {
  Subset first;
  Subset second;
  friend bool operator==(const SubsetPair&, const SubsetPair&) = default;
};

/// Vector e in {0,1,2}^n for Two-Subset-Sum.
struct Multiplicities {
  std::vector<std::uint8_t> e;
  friend bool operator==(const Multiplicities&, const Multiplicities&) = default;
};

using Solution = std::variant<SingleSubset, SubsetPair, Multiplicities>;

/// Exact sum of the selected items. Indices must lie in [1, n].
Natural subset_sum(const Items& items, const Subset& s);

/// True iff the defining equation of the instance's variant holds.
/// Throws ContractViolation when the solution shape does not fit the variant
/// or an index is out of range.
bool verify(const ProblemInstance& instance, const Solution& solution);

/// (S1, S2) -> (S1 \ S2, S2 \ S1). Preserves Sigma(S1) - Sigma(S2).
SubsetPair canonicalize(const SubsetPair& pair);

std::string to_string(const Solution& solution);

// ---------------------------------------------------------------------------
// Size-preserving reductions

/// Two-Subset-Sum (items, m) as a Shifted-Sums instance on the same items.
struct TwoSubsetReduction {
  Items items;
  Natural target;
  /// m <= W was replaced by 2W - m; the back-mapping undoes it.
  bool complemented = false;
  /// Set when m == W: no shifted instance is needed, all-ones is the answer.
  std::optional<Multiplicities> immediate;
  /// Present unless `immediate` is set. Shift is m - W after normalisation.
  std::optional<ProblemInstance> shifted;

  /// e_i = 1 + [i in S1] - [i in S2], complemented back when needed.
  Multiplicities back_map(const SubsetPair& pair) const;
};

/// Throws InvalidInstance unless 0 < m < 2W.
TwoSubsetReduction reduce_two_subset_to_shifted(const Items& items, const Natural& m);

struct ModularReduction {
  ProblemInstance reduced;
  Natural modulus;
};

/// Items and parameter taken mod p. Subset-Sum becomes Modular-Subset-Sum and
/// Shifted-Sums becomes Modular-Shifted-Sums, so every original solution is a
/// solution of the result. A residue 0 is stored as p to keep items positive.
ModularReduction reduce_modulo(const ProblemInstance& instance, const Natural& p);

/// Same with p a random prime in [2^(bits-1), 2^bits]; bits defaults to 4n.
/// Throws InvalidParameter when bits < 2.
ModularReduction reduce_modulo_prime(const ProblemInstance& instance, Rng& rng,
                                     std::optional<unsigned> bits = std::nullopt);

}  // namespace repsum
