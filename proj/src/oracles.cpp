#include "repsum/oracles.hpp"

#include <algorithm>
#include <bit>
#include <unordered_map>

#include "repsum/numtheory.hpp"

namespace repsum {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

void require_items(std::size_t n, std::size_t cap, const char* what) {
  if (n > cap) {
    throw ResourceLimit(std::string(what) + " is capped at " + std::to_string(cap) + " items, got " +
                        std::to_string(n));
  }
}

/// Calls f(mask, sum) for all 2^n masks in Gray-code order.
template <class V, class F>
void for_each_sum(const std::vector<V>& a, F&& f) {
  const std::size_t n = a.size();
  V sum{0};
  std::uint64_t mask = 0;
  f(mask, sum);
  for (std::uint64_t step = 1; step < (std::uint64_t{1} << n); ++step) {
    const unsigned bit = static_cast<unsigned>(std::countr_zero(step));
    mask ^= std::uint64_t{1} << bit;
    if ((mask >> bit) & 1U) {
      sum += a[bit];
    } else {
      sum -= a[bit];
    }
    f(mask, sum);
  }
}

/// Same with sums taken mod q (items already reduced, q < 2^63).
template <class F>
void for_each_residue(const std::vector<std::uint64_t>& r, std::uint64_t q, F&& f) {
  const std::size_t n = r.size();
  std::uint64_t sum = 0;
  std::uint64_t mask = 0;
  f(mask, sum);
  for (std::uint64_t step = 1; step < (std::uint64_t{1} << n); ++step) {
    const unsigned bit = static_cast<unsigned>(std::countr_zero(step));
    mask ^= std::uint64_t{1} << bit;
    if ((mask >> bit) & 1U) {
      sum += r[bit];
      if (sum >= q) sum -= q;
    } else {
      sum = sum >= r[bit] ? sum - r[bit] : sum + q - r[bit];
    }
    f(mask, sum);
  }
}

std::vector<std::uint64_t> residues_mod(const Items& items, std::uint64_t q) {
  std::vector<std::uint64_t> r;
  r.reserve(items.size());
  for (const auto& a : items.values()) r.push_back(to_u64(a % q));
  return r;
}

std::vector<Natural> naturals(const Items& items) { return {items.values().begin(), items.values().end()}; }

template <class Key>
using Keyed = std::vector<std::pair<Key, std::uint64_t>>;

/// Finds (m1, m2), m1 != m2, with key(m1) == target(key(m2)). `keys` sorted.
template <class Key, class Target>
std::optional<std::pair<std::uint64_t, std::uint64_t>> find_pair(const Keyed<Key>& keys, Target&& target) {
  for (const auto& [k2, m2] : keys) {
    const Key want = target(k2);
    auto it = std::lower_bound(keys.begin(), keys.end(), want,
                               [](const auto& e, const Key& v) { return e.first < v; });
    for (; it != keys.end() && it->first == want; ++it) {
      if (it->second != m2) return std::pair{it->second, m2};
    }
  }
  return std::nullopt;
}

template <class V>
Keyed<V> sorted_sums(const std::vector<V>& a) {
  Keyed<V> keys;
  keys.reserve(std::size_t{1} << a.size());
  for_each_sum(a, [&](std::uint64_t m, const V& s) { keys.emplace_back(s, m); });
  std::sort(keys.begin(), keys.end());
  return keys;
}

std::optional<std::pair<std::uint64_t, std::uint64_t>> shifted_pair(const Items& items, const Natural& s) {
  if (items.fits_int64()) {
    const auto keys = sorted_sums(items.as_int64());
    const auto shift = s.convert_to<std::int64_t>();
    return find_pair(keys, [&](std::int64_t k) { return k + shift; });
  }
  const auto keys = sorted_sums(naturals(items));
  return find_pair(keys, [&](const Natural& k) { return k + s; });
}

std::optional<std::pair<std::uint64_t, std::uint64_t>> modular_pair(const Items& items, const Natural& s,
                                                                    const Natural& q) {
  if (!fits_u64(q) || q >= pow2(63)) throw ResourceLimit("brute force needs a modulus below 2^63");
  const std::uint64_t qq = to_u64(q);
  const std::uint64_t ss = to_u64(s % q);
  Keyed<std::uint64_t> keys;
  keys.reserve(std::size_t{1} << items.size());
  for_each_residue(residues_mod(items, qq), qq, [&](std::uint64_t m, std::uint64_t r) { keys.emplace_back(r, m); });
  std::sort(keys.begin(), keys.end());
  return find_pair(keys, [&](std::uint64_t k) { return k + ss >= qq ? k + ss - qq : k + ss; });
}

Solution pair_solution(std::pair<std::uint64_t, std::uint64_t> masks) {
  return SubsetPair{Subset::from_mask(masks.first), Subset::from_mask(masks.second)};
}

std::optional<std::uint64_t> subset_with_sum(const Items& items, const Natural& m) {
  std::optional<std::uint64_t> hit;
  if (items.fits_int64()) {
    const auto t = m.convert_to<std::int64_t>();
    for_each_sum(items.as_int64(), [&](std::uint64_t mask, std::int64_t s) {
      if (!hit && s == t) hit = mask;
    });
  } else {
    for_each_sum(naturals(items), [&](std::uint64_t mask, const Natural& s) {
      if (!hit && s == m) hit = mask;
    });
  }
  return hit;
}

std::optional<std::uint64_t> subset_with_residue(const Items& items, const Natural& m, const Natural& q) {
  if (!fits_u64(q) || q >= pow2(63)) throw ResourceLimit("brute force needs a modulus below 2^63");
  const std::uint64_t qq = to_u64(q);
  const std::uint64_t t = to_u64(m % q);
  std::optional<std::uint64_t> hit;
  for_each_residue(residues_mod(items, qq), qq, [&](std::uint64_t mask, std::uint64_t r) {
    if (!hit && r == t) hit = mask;
  });
  return hit;
}

/// Every e in {0,1,2}^k with its weighted sum, via a ternary counter.
template <class V, class F>
void for_each_ternary(const std::vector<V>& a, F&& f) {
  const std::size_t k = a.size();
  std::vector<std::uint8_t> e(k, 0);
  V sum{0};
  for (;;) {
    f(e, sum);
    std::size_t i = 0;
    while (i < k && e[i] == 2) {
      e[i] = 0;
      sum -= 2 * a[i];
      ++i;
    }
    if (i == k) return;
    ++e[i];
    sum += a[i];
  }
}

template <class V>
std::optional<Multiplicities> two_subset_search(const std::vector<V>& a, const V& m) {
  const std::size_t n = a.size();
  if (n <= 16) {
    std::optional<Multiplicities> hit;
    for_each_ternary(a, [&](const std::vector<std::uint8_t>& e, const V& s) {
      if (!hit && s == m) hit = Multiplicities{e};
    });
    return hit;
  }
  const std::size_t h = n / 2;
  const std::vector<V> left(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(h));
  const std::vector<V> right(a.begin() + static_cast<std::ptrdiff_t>(h), a.end());
  std::vector<std::pair<V, std::vector<std::uint8_t>>> sums;
  for_each_ternary(left, [&](const std::vector<std::uint8_t>& e, const V& s) { sums.emplace_back(s, e); });
  std::sort(sums.begin(), sums.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  std::optional<Multiplicities> hit;
  for_each_ternary(right, [&](const std::vector<std::uint8_t>& e, const V& s) {
    if (hit || s > m) return;
    const V want = m - s;
    auto it = std::lower_bound(sums.begin(), sums.end(), want,
                               [](const auto& x, const V& v) { return x.first < v; });
    if (it != sums.end() && it->first == want) {
      Multiplicities out{it->second};
      out.e.insert(out.e.end(), e.begin(), e.end());
      hit = std::move(out);
    }
  });
  return hit;
}

/// (max, min) of |S1| + |S2| over disjoint S1 != S2 with Sigma(S1) - Sigma(S2) = s.
template <class V>
std::optional<std::pair<unsigned, unsigned>> disjoint_sizes(const std::vector<V>& a, const V& s) {
  const std::size_t n = a.size();
  std::vector<std::uint8_t> e(n, 0);  // 0: neither, 1: in S1, 2: in S2
  V diff{0};
  unsigned size = 0;
  std::optional<std::pair<unsigned, unsigned>> out;
  for (;;) {
    if (diff == s && size > 0) {
      if (!out) {
        out = std::pair{size, size};
      } else {
        out->first = std::max(out->first, size);
        out->second = std::min(out->second, size);
      }
    }
    std::size_t i = 0;
    while (i < n && e[i] == 2) {
      e[i] = 0;
      diff += a[i];
      --size;
      ++i;
    }
    if (i == n) return out;
    if (e[i] == 0) {
      diff += a[i];
      ++size;
    } else {
      diff -= 2 * a[i];
    }
    ++e[i];
  }
}

}  // namespace

std::optional<std::pair<unsigned, unsigned>> brute_solution_sizes(const Items& items, const Natural& shift) {
  require_items(items.size(), kBruteRatioMaxItems, "ratio scan");
  if (items.fits_int64()) return disjoint_sizes(items.as_int64(), shift.convert_to<std::int64_t>());
  return disjoint_sizes(naturals(items), shift);
}

BruteForceResult brute_solve(const ProblemInstance& instance, const BruteOptions& options) {
  const Items& items = instance.items();
  require_items(items.size(), kBruteMaxItems, "brute force");
  BruteForceResult result;
  auto set_pair = [&](std::optional<std::pair<std::uint64_t, std::uint64_t>> masks) {
    if (masks) {
      result.solvable = true;
      result.witness = pair_solution(*masks);
    }
  };
  auto set_single = [&](std::optional<std::uint64_t> mask) {
    if (mask) {
      result.solvable = true;
      result.witness = SingleSubset{Subset::from_mask(*mask)};
    }
  };
  auto add_ratios = [&](const Natural& s) {
    if (!options.ratios || items.size() > kBruteRatioMaxItems) return;
    if (auto sizes = brute_solution_sizes(items, s)) {
      const double n = static_cast<double>(items.size());
      result.max_size = sizes->first;
      result.min_size = sizes->second;
      result.max_ratio = sizes->first / n;
      result.min_ratio = sizes->second / n;
    }
  };
  std::visit(Overloaded{
                 [&](const SubsetSum& v) { set_single(subset_with_sum(items, v.target)); },
                 [&](const ModularSubsetSum& v) { set_single(subset_with_residue(items, v.target, v.modulus)); },
                 [&](const TwoSubsetSum& v) {
                   std::optional<Multiplicities> hit;
                   if (items.fits_int64() && bit_length(2 * items.total()) <= 62) {
                     hit = two_subset_search(items.as_int64(), v.target.convert_to<std::int64_t>());
                   } else {
                     hit = two_subset_search(naturals(items), v.target);
                   }
                   if (hit) {
                     result.solvable = true;
                     result.witness = std::move(*hit);
                   }
                 },
                 [&](const EqualSums&) {
                   set_pair(shifted_pair(items, 0));
                   add_ratios(0);
                 },
                 [&](const ShiftedSums& v) {
                   set_pair(shifted_pair(items, v.shift));
                   add_ratios(v.shift);
                 },
                 [&](const PigeonholeEqualSums&) { set_pair(shifted_pair(items, 0)); },
                 [&](const PigeonholeModularEqualSums& v) { set_pair(modular_pair(items, 0, v.modulus)); },
                 [&](const ModularShiftedSums& v) { set_pair(modular_pair(items, v.shift, v.modulus)); },
             },
             instance.variant());
  return result;
}

std::vector<Subset> brute_bin(const Items& items, const Natural& p, const Natural& k) {
  if (p < 1 || k < 0 || k >= p) throw ContractViolation("bin residue must lie in [0, p-1]");
  require_items(items.size(), kBruteBinMaxItems, "brute_bin");
  const std::size_t n = items.size();
  std::vector<Subset> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    Natural s = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if ((mask >> i) & 1U) s += items[i];
    }
    if (s % p == k) out.push_back(Subset::from_mask(mask));
  }
  return out;
}

std::set<Natural> collision_values(const Items& items, const Natural& shift) {
  require_items(items.size(), kCollisionMaxItems, "collision_values");
  std::vector<Natural> sums;
  sums.reserve(std::size_t{1} << items.size());
  if (items.fits_int64()) {
    for_each_sum(items.as_int64(), [&](std::uint64_t, std::int64_t s) { sums.emplace_back(s); });
  } else {
    for_each_sum(naturals(items), [&](std::uint64_t, const Natural& s) { sums.push_back(s); });
  }
  std::sort(sums.begin(), sums.end());
  std::set<Natural> out;
  for (std::size_t i = 0; i < sums.size(); ++i) {
    const Natural& v = sums[i];
    if (shift == 0) {
      if (i + 1 < sums.size() && sums[i + 1] == v) out.insert(v);
    } else if (std::binary_search(sums.begin(), sums.end(), v - shift)) {
      out.insert(v);
    }
  }
  return out;
}

SubsetPair pigeonhole_mitm_check(const Items& items, const Natural& q) {
  const std::size_t n = items.size();
  require_items(n, 40, "pigeonhole_mitm_check");
  if (q < 1 || q > pow2(static_cast<unsigned>(n)) - 1) throw InvalidInstance("modulus must lie in [1, 2^n - 1]");
  if (q == 1) return SubsetPair{Subset{1}, Subset{}};
  const std::uint64_t qq = to_u64(q);
  const auto r = residues_mod(items, qq);
  const std::size_t h = n / 2;
  auto half = [&](std::size_t from, std::size_t to) {
    Keyed<std::uint64_t> keys;
    for_each_residue(std::vector<std::uint64_t>(r.begin() + static_cast<std::ptrdiff_t>(from),
                                                r.begin() + static_cast<std::ptrdiff_t>(to)),
                     qq, [&](std::uint64_t m, std::uint64_t x) { keys.emplace_back(x, m); });
    std::sort(keys.begin(), keys.end());
    return keys;
  };
  const auto L1 = half(0, h);
  const auto L2 = half(h, n);
  auto lower = [&](std::uint64_t v) {
    return std::lower_bound(L2.begin(), L2.end(), v, [](const auto& e, std::uint64_t x) { return e.first < x; });
  };
  // Number of elements of L2 with residue in [lo, hi], lo <= hi.
  auto count_range = [&](std::uint64_t lo, std::uint64_t hi) {
    return static_cast<std::uint64_t>(lower(hi + 1) - lower(lo));
  };
  auto sub = [&](std::uint64_t a, std::uint64_t b) { return a >= b ? a - b : a + qq - b; };
  // F([l, r]) = number of (S, T) with (sigma(S) + sigma(T)) mod q in [l, r].
  auto count = [&](std::uint64_t l, std::uint64_t rr) {
    std::uint64_t total = 0;
    for (const auto& [x, m] : L1) {
      const std::uint64_t lo = sub(l, x);
      const std::uint64_t hi = sub(rr, x);
      total += lo <= hi ? count_range(lo, hi) : count_range(lo, qq - 1) + count_range(0, hi);
    }
    return total;
  };
  std::uint64_t l = 0;
  std::uint64_t rr = qq - 1;
  while (l < rr) {
    const std::uint64_t mid = l + (rr - l) / 2;
    if (count(l, mid) > mid - l + 1) {
      rr = mid;
    } else {
      l = mid + 1;
    }
  }
  std::vector<std::uint64_t> found;
  for (const auto& [x, m] : L1) {
    for (auto it = lower(sub(l, x)); it != L2.end() && it->first == sub(l, x) && found.size() < 2; ++it) {
      found.push_back(m | (it->second << h));
    }
    if (found.size() == 2) break;
  }
  if (found.size() < 2) throw std::logic_error("pigeonhole search lost its invariant");
  return {Subset::from_mask(found[1]), Subset::from_mask(found[0])};
}

}  // namespace repsum
