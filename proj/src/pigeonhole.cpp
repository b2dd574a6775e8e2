#include "repsum/pigeonhole.hpp"

#include <bit>
#include <unordered_map>

namespace repsum {
namespace {

constexpr std::size_t kMaxItems = 63;

void require_items(std::size_t n) {
  if (n > kMaxItems) throw ResourceLimit("pigeonhole solvers are capped at 63 items");
}

SubsetPair pair_of(std::uint64_t later, std::uint64_t earlier) {
  return {Subset::from_mask(later), Subset::from_mask(earlier)};
}

template <class Count>
std::uint64_t heavy_bin(std::span<const Count> sizes, std::size_t n) {
  const std::uint64_t p = sizes.size();
  if (!std::has_single_bit(p) || std::countr_zero(p) > static_cast<int>(n)) {
    throw InvalidParameter("heavy bin modulus must be a power of two dividing 2^n");
  }
  const std::uint64_t share = (std::uint64_t{1} << n) / p;
  for (std::uint64_t k = 0; k < p; ++k) {
    if (sizes[k] > share) return k;
  }
  if (sizes[p - 1] >= share) return p - 1;
  throw std::logic_error("no heavy bin in a table whose rows sum to 2^n");
}

}  // namespace

std::uint64_t find_heavy_bin(const BasicDpTable<std::uint64_t>& table) {
  return heavy_bin<std::uint64_t>(table.row(table.n()), table.n());
}

std::uint64_t find_heavy_bin(const Items& items, std::uint64_t p) {
  require_items(items.size());
  if (items.total() >= pow2(static_cast<unsigned>(items.size())) - 1) {
    throw InvalidInstance("pigeonhole instance needs item total < 2^n - 1");
  }
  return find_heavy_bin(build_table<std::uint64_t>(items, p));
}

PigeonholeOutcome solve_pigeonhole_equal(const Items& items) {
  require_items(items.size());
  const ProblemInstance checked(items, PigeonholeEqualSums{});
  const std::size_t n = items.size();
  const std::uint64_t p = std::uint64_t{1} << ((n + 1) / 2);
  std::vector<std::uint64_t> residues;
  residues.reserve(n);
  for (const auto& a : items.values()) residues.push_back(to_u64(a % p));
  PigeonholeOutcome out;
  out.modulus = p;
  out.bin = heavy_bin<std::uint32_t>(saturated_bin_sizes(residues, p), n);
  const ReachTable reach(residues, p);
  const auto values = items.as_int64();
  std::unordered_map<std::int64_t, std::uint64_t> seen;
  std::optional<SubsetPair> pair;
  out.enumerated = reach.for_each_mask(out.bin, ~std::uint64_t{0}, [&](std::uint64_t mask) {
    std::int64_t s = 0;
    for (std::uint64_t m = mask; m != 0; m &= m - 1) s += values[static_cast<std::size_t>(std::countr_zero(m))];
    auto [it, inserted] = seen.emplace(s, mask);
    if (!inserted) {
      pair = pair_of(mask, it->second);
      return false;
    }
    return true;
  }).first;
  if (!pair) throw std::logic_error("heavy bin held no collision");
  out.pair = std::move(*pair);
  return out;
}

// ---------------------------------------------------------------------------

QuotientDecomposition QuotientDecomposition::of(const Natural& q, std::size_t n) {
  QuotientDecomposition d;
  d.q = q;
  d.H = static_cast<unsigned>((n + 1) / 2);
  const Natural q1 = q >> d.H;
  if (!fits_u64(q1)) throw ResourceLimit("quotient modulus beyond 64 bits");
  d.q1 = to_u64(q1);
  d.q2 = to_u64(q - (q1 << d.H));
  return d;
}

namespace {

std::vector<std::uint64_t> reduce_below(const Items& items, std::uint64_t q) {
  std::vector<std::uint64_t> r;
  r.reserve(items.size());
  for (const auto& a : items.values()) r.push_back(to_u64(a % q));
  return r;
}

std::vector<std::uint64_t> quotients(const std::vector<std::uint64_t>& residues, unsigned H) {
  std::vector<std::uint64_t> out;
  out.reserve(residues.size());
  for (auto r : residues) out.push_back(r >> H);
  return out;
}

QuotientDecomposition checked_decomposition(const Items& items, const Natural& q) {
  if (items.size() > kMaxItems) throw ResourceLimit("pigeonhole solvers are capped at 63 items");
  if (q < 1 || q >= pow2(63)) throw InvalidParameter("modulus must lie in [1, 2^63)");
  auto d = QuotientDecomposition::of(q, items.size());
  if (d.q1 == 0) throw InvalidParameter("modulus below 2^H leaves no quotient classes");
  return d;
}

}  // namespace

QuotientBins::QuotientBins(const Items& items, const Natural& q, const TableOptions& options)
    : dec_(checked_decomposition(items, q)),
      q_(to_u64(q)),
      residues_(reduce_below(items, q_)),
      reduced_(quotients(residues_, dec_.H)),
      table_(reduced_, dec_.q1, options) {
  prefix_.assign(dec_.q1 + 1, 0);
  for (std::uint64_t j = 0; j < dec_.q1; ++j) prefix_[j + 1] = prefix_[j] + table_.bin_size(j);
}

std::uint64_t QuotientBins::wrap(std::int64_t j) const {
  const auto m = static_cast<std::int64_t>(dec_.q1);
  return static_cast<std::uint64_t>(((j % m) + m) % m);
}

std::uint64_t QuotientBins::c_interval(std::uint64_t i, std::uint64_t j) const {
  if (i <= j) return prefix_[j + 1] - prefix_[i];
  return prefix_[dec_.q1] - prefix_[i] + prefix_[j + 1];
}

std::uint64_t QuotientBins::beta(std::uint64_t j) const {
  const std::uint64_t block = std::uint64_t{1} << dec_.H;
  return j == 0 ? block + dec_.q2 : block;
}

std::uint64_t QuotientBins::beta_interval(std::uint64_t i, std::uint64_t j) const {
  const std::uint64_t len = distance(i, j) + 1;
  const bool has_zero = i > j || i == 0;
  return (len << dec_.H) + (has_zero ? dec_.q2 : 0);
}

std::uint64_t QuotientBins::residue_of(std::uint64_t mask) const {
  std::uint64_t s = 0;
  for (; mask != 0; mask &= mask - 1) {
    const std::uint64_t r = residues_[static_cast<std::size_t>(std::countr_zero(mask))];
    s = s >= q_ - r ? s - (q_ - r) : s + r;
  }
  return s;
}

std::uint64_t QuotientBins::b_index(std::uint64_t mask) const { return (residue_of(mask) >> dec_.H) % dec_.q1; }

std::uint64_t QuotientBins::c_index(std::uint64_t mask) const {
  std::uint64_t s = 0;
  for (; mask != 0; mask &= mask - 1) {
    s = (s + reduced_[static_cast<std::size_t>(std::countr_zero(mask))] % dec_.q1) % dec_.q1;
  }
  return s;
}

std::optional<MarkedIndex> QuotientBins::marked_in_c_bin(std::uint64_t idx) const {
  const auto n = static_cast<std::uint64_t>(this->n());
  const std::uint64_t limit = (4 * n - 1) * (std::uint64_t{1} << dec_.H) + 1;
  std::unordered_map<std::uint64_t, std::uint64_t> counts;
  std::optional<MarkedIndex> marked;
  for_each_mask_in_bin(BinRef(table_, idx), limit, [&](std::uint64_t mask) {
    const std::uint64_t b = b_index(mask);
    const std::uint64_t c = ++counts[b];
    if (c > beta(b)) {
      marked = MarkedIndex{b, c};
      return false;
    }
    return true;
  });
  return marked;
}

IntervalCount QuotientBins::count_b_interval(std::uint64_t i, std::uint64_t j) const {
  const std::uint64_t q1 = dec_.q1;
  if (i >= q1 || j >= q1) throw ContractViolation("interval ends must lie in [0, q1 - 1]");
  if (i == 0 && j == q1 - 1) return full_count();
  const auto n = static_cast<std::int64_t>(this->n());
  const std::uint64_t len = distance(i, j);
  if (len < 2 * static_cast<std::uint64_t>(n) || len > (q1 - 1) / 2) {
    throw ContractViolation("interval width must lie in [2n, (q1 - 1) / 2]");
  }
  const auto si = static_cast<std::int64_t>(i);
  const auto sj = static_cast<std::int64_t>(i + len);
  std::uint64_t b = c_interval(wrap(si + n - 1), wrap(sj - n + 1));
  const std::uint64_t cap = (4 * static_cast<std::uint64_t>(n) - 1) * (std::uint64_t{1} << dec_.H);
  auto boundary = [&](std::int64_t from, std::int64_t to) -> std::optional<MarkedIndex> {
    for (std::int64_t x = from; x <= to; ++x) {
      const std::uint64_t idx = wrap(x);
      if (c(idx) > cap) {
        if (auto m = marked_in_c_bin(idx)) return m;
        throw std::logic_error("oversized quotient bin without a marked index");
      }
      for_each_mask_in_bin(BinRef(table_, idx), cap, [&](std::uint64_t mask) {
        if (distance(i, b_index(mask)) <= len) ++b;
      });
    }
    return std::nullopt;
  };
  if (auto m = boundary(si - n + 1, si + n - 2)) return *m;
  if (auto m = boundary(sj - n + 2, sj + n - 1)) return *m;
  return b;
}

QuotientBins build_c_array(const Items& items, const Natural& q, const TableOptions& options) {
  return QuotientBins(items, q, options);
}

// ---------------------------------------------------------------------------

namespace {

std::optional<SubsetPair> first_collision(const QuotientBins& bins, std::uint64_t centre, std::uint64_t& enumerated) {
  const auto n = static_cast<std::int64_t>(bins.n());
  const auto& dec = bins.decomposition();
  const std::uint64_t limit =
      (4 * static_cast<std::uint64_t>(n) - 3) * (std::uint64_t{1} << dec.H) + dec.q2 + 1;
  std::unordered_map<std::uint64_t, std::uint64_t> seen;
  std::optional<SubsetPair> pair;
  std::uint64_t visited = 0;
  for (std::int64_t x = static_cast<std::int64_t>(centre) - n + 1;
       x <= static_cast<std::int64_t>(centre) + n - 1 && !pair && visited < limit; ++x) {
    visited += for_each_mask_in_bin(BinRef(bins.c_table(), bins.wrap(x)), limit - visited, [&](std::uint64_t mask) {
      auto [it, inserted] = seen.emplace(bins.residue_of(mask), mask);
      if (!inserted) {
        pair = pair_of(mask, it->second);
        return false;
      }
      return true;
    });
  }
  enumerated += visited;
  return pair;
}

PigeonholeOutcome direct_modular(const Items& items, std::uint64_t q, const TableOptions& options) {
  const auto table = build_table<std::uint64_t>(items, q, options);
  PigeonholeOutcome out;
  out.path = "direct";
  out.modulus = q;
  for (std::uint64_t k = 0; k < q; ++k) {
    if (table.bin_size(k) >= 2) {
      const BinRef bin(table, k);
      out.bin = k;
      out.enumerated = 2;
      out.pair = pair_of(unrank_mask(bin, std::uint64_t{2}), unrank_mask(bin, std::uint64_t{1}));
      return out;
    }
  }
  throw std::logic_error("no residue class holds two subsets");
}

}  // namespace

PigeonholeOutcome solve_pigeonhole_modular(const Items& items, const Natural& q, const TableOptions& options) {
  require_items(items.size());
  const ProblemInstance checked(items, PigeonholeModularEqualSums{q});
  const std::size_t n = items.size();
  const std::uint64_t qq = to_u64(q);
  for (std::size_t i = 0; i < n; ++i) {
    if (items[i] % qq == 0) {
      PigeonholeOutcome out;
      out.path = "zero_residue";
      out.modulus = qq;
      out.pair = {Subset{static_cast<std::uint32_t>(i + 1)}, Subset{}};
      return out;
    }
  }
  const auto dec = QuotientDecomposition::of(q, n);
  if (dec.q1 < 8 * n) return direct_modular(items, qq, options);

  const QuotientBins bins(items, q, options);
  PigeonholeOutcome out;
  out.path = "dichotomic";
  out.modulus = dec.q1;
  std::uint64_t i = 0;
  std::uint64_t j = dec.q1 - 1;
  std::uint64_t b = bins.full_count();
  std::optional<std::uint64_t> marked;
  while (bins.distance(i, j) + 1 >= 4 * n + 2) {
    if (bins.beta_interval(i, j) >= b) throw std::logic_error("dichotomic invariant broken");
    const std::uint64_t half = (bins.distance(i, j) + 1) / 2;
    const std::uint64_t mid = bins.wrap(static_cast<std::int64_t>(i + half - 1));
    const IntervalCount left = bins.count_b_interval(i, mid);
    ++out.halvings;
    if (const auto* m = std::get_if<MarkedIndex>(&left)) {
      marked = m->index;
      break;
    }
    const std::uint64_t left_b = std::get<std::uint64_t>(left);
    if (bins.beta_interval(i, mid) < left_b) {
      j = mid;
      b = left_b;
    } else {
      i = bins.wrap(static_cast<std::int64_t>(mid) + 1);
      b -= left_b;
    }
  }
  std::vector<std::uint64_t> candidates;
  if (marked) {
    candidates.push_back(*marked);
  } else {
    if (bins.beta_interval(i, j) >= b) throw std::logic_error("dichotomic invariant broken");
    for (std::uint64_t d = 0; d <= bins.distance(i, j); ++d) candidates.push_back(bins.wrap(static_cast<std::int64_t>(i + d)));
  }
  for (auto centre : candidates) {
    if (auto pair = first_collision(bins, centre, out.enumerated)) {
      out.bin = centre;
      out.pair = std::move(*pair);
      return out;
    }
  }
  throw std::logic_error("no collision around the surviving quotient classes");
}

}  // namespace repsum
