#include "repsum/solvers.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include "repsum/costmodel.hpp"
#include "repsum/numtheory.hpp"
#include "repsum/oracles.hpp"
#include "repsum/pigeonhole.hpp"

namespace repsum {

std::uint64_t SolverBudget::repeats_for(std::size_t n) const {
  return repeat_cap.value_or(std::max<std::uint64_t>(1, 4 * n));
}

void SolverBudget::validate() const {
  if (sample_cap < 1) throw InvalidParameter("sample cap must be >= 1");
  if (repeat_cap && *repeat_cap < 1) throw InvalidParameter("repeat cap must be >= 1");
  if (time_cap && time_cap->count() < 1) throw InvalidParameter("time cap must be >= 1 ms");
}

std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Found: return "found";
    case Verdict::NotFound: return "not_found";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "unknown";
}

void SolveTrace::add_phase(std::string name, double ms) { phase_ms.emplace_back(std::move(name), ms); }

Split random_balanced_split(std::size_t n, Rng& rng) {
  std::vector<std::uint32_t> perm(n);
  std::iota(perm.begin(), perm.end(), 1U);
  std::shuffle(perm.begin(), perm.end(), rng.engine());
  Split s;
  s.first.assign(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(n / 2));
  s.second.assign(perm.begin() + static_cast<std::ptrdiff_t>(n / 2), perm.end());
  std::sort(s.first.begin(), s.first.end());
  std::sort(s.second.begin(), s.second.end());
  return s;
}

namespace {

using Clock = std::chrono::steady_clock;

class Stopwatch {
 public:
  explicit Stopwatch(const SolverBudget& budget) : start_(Clock::now()), lap_(start_) {
    if (budget.time_cap) deadline_ = start_ + *budget.time_cap;
  }
  bool expired() const { return deadline_ && Clock::now() >= *deadline_; }
  double lap_ms() {
    const auto now = Clock::now();
    const double ms = std::chrono::duration<double, std::milli>(now - lap_).count();
    lap_ = now;
    return ms;
  }

 private:
  Clock::time_point start_;
  Clock::time_point lap_;
  std::optional<Clock::time_point> deadline_;
};

constexpr std::size_t kMaxMaskItems = 63;

void require_mask_items(std::size_t n) {
  if (n > kMaxMaskItems) throw ResourceLimit("exponential solvers are capped at 63 items");
}

template <class V>
std::vector<V> values_as(const Items& items) {
  if constexpr (std::is_same_v<V, std::int64_t>) {
    return items.as_int64();
  } else {
    return {items.values().begin(), items.values().end()};
  }
}

template <class V>
V value_as(const Natural& x) {
  if constexpr (std::is_same_v<V, std::int64_t>) {
    return x.convert_to<std::int64_t>();
  } else {
    return x;
  }
}

template <class V>
V mask_sum(const std::vector<V>& a, std::uint64_t mask) {
  V s{0};
  while (mask != 0) {
    s += a[static_cast<std::size_t>(std::countr_zero(mask))];
    mask &= mask - 1;
  }
  return s;
}

std::vector<std::uint64_t> residues_mod(const Items& items, std::uint64_t p) {
  std::vector<std::uint64_t> r;
  r.reserve(items.size());
  const Natural pn = p;
  for (const auto& a : items.values()) r.push_back(to_u64(a % pn));
  return r;
}

std::uint64_t full_mask(std::size_t n) { return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1; }

/// Maps bit j of `local` to bit idx[j] - 1 of the result.
std::uint64_t to_global(const std::vector<std::uint32_t>& idx, std::uint64_t local) {
  std::uint64_t g = 0;
  while (local != 0) {
    g |= std::uint64_t{1} << (idx[static_cast<std::size_t>(std::countr_zero(local))] - 1);
    local &= local - 1;
  }
  return g;
}

SolveOutcome found_single(SolveOutcome out, std::uint64_t mask) {
  out.verdict = Verdict::Found;
  out.solution = SingleSubset{Subset::from_mask(mask)};
  return out;
}

SolveOutcome found_pair(SolveOutcome out, std::uint64_t m1, std::uint64_t m2) {
  out.verdict = Verdict::Found;
  out.solution = SubsetPair{Subset::from_mask(m1), Subset::from_mask(m2)};
  return out;
}

long double estimated_entries_bytes(long double entries, std::size_t value_bytes) {
  return entries * static_cast<long double>(value_bytes + 16);
}

void check_memory(long double bytes, const SolverBudget& budget, const char* what) {
  if (bytes > static_cast<long double>(budget.table.memory_cap_bytes)) {
    throw ResourceLimit(std::string(what) + " exceeds the memory cap");
  }
}

// ---------------------------------------------------------------------------
// Subset-Sum, meet in the middle

template <class V>
SolveOutcome subset_sum_mitm(const Items& items, const Natural& target, const SolverBudget& budget) {
  SolveOutcome out;
  out.trace.algorithm = "mitm";
  Stopwatch clock(budget);
  const auto a = values_as<V>(items);
  const V m = value_as<V>(target);
  const std::size_t n = a.size();
  const std::size_t h = n / 2;
  check_memory(estimated_entries_bytes(std::ldexp(1.0L, static_cast<int>(h)), sizeof(V)), budget, "half-sum list");

  std::vector<std::pair<V, std::uint64_t>> left;
  left.reserve(std::size_t{1} << h);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << h); ++mask) left.emplace_back(mask_sum(a, mask), mask);
  std::sort(left.begin(), left.end());
  out.trace.add_phase("left_sorted", clock.lap_ms());

  const std::size_t right_n = n - h;
  std::vector<std::pair<V, std::uint64_t>> right;
  right.reserve(std::size_t{1} << right_n);
  V sum{0};
  std::uint64_t local = 0;
  for (std::uint64_t step = 0; step < (std::uint64_t{1} << right_n); ++step) {
    if (step != 0) {
      const auto bit = static_cast<std::size_t>(std::countr_zero(step));
      local ^= std::uint64_t{1} << bit;
      if ((local >> bit) & 1U) {
        sum += a[h + bit];
      } else {
        sum -= a[h + bit];
      }
    }
    if (sum <= m) right.emplace_back(sum, local);
  }
  std::sort(right.begin(), right.end());
  out.trace.add_phase("right_sorted", clock.lap_ms());
  if (clock.expired()) {
    out.trace.notes.emplace_back("time cap reached");
    return out;
  }

  // two-pointer merge: left ascending, right descending
  auto li = left.begin();
  auto ri = right.rbegin();
  while (li != left.end() && ri != right.rend()) {
    ++out.trace.enumerated;
    const V total = li->first + ri->first;
    if (total == m) {
      out.trace.add_phase("right_scan", clock.lap_ms());
      return found_single(std::move(out), li->second | (ri->second << h));
    }
    if (total < m) {
      ++li;
    } else {
      ++ri;
    }
  }
  out.trace.add_phase("right_scan", clock.lap_ms());
  out.verdict = Verdict::NotFound;
  return out;
}

// ---------------------------------------------------------------------------
// Subset-Sum, representation technique

template <class V>
SolveOutcome subset_sum_rep(const Items& items, const Natural& target, const SolverBudget& budget) {
  SolveOutcome out;
  out.trace.algorithm = "rep";
  Stopwatch clock(budget);
  Rng rng(budget.seed);
  const auto a = values_as<V>(items);
  const V m = value_as<V>(target);
  const std::size_t n = a.size();
  const auto half = static_cast<unsigned>((n + 1) / 2);

  const auto samples = std::min<std::uint64_t>(
      budget.sample_cap, static_cast<std::uint64_t>(std::ceil(std::exp2(static_cast<double>(n) / 2.0))));
  for (std::uint64_t i = 0; i < samples; ++i) {
    const std::uint64_t mask = rng.next_u64() & full_mask(n);
    ++out.trace.samples;
    if (mask_sum(a, mask) == m) {
      out.trace.add_phase("sampling", clock.lap_ms());
      out.trace.notes.emplace_back("found by sampling");
      return found_single(std::move(out), mask);
    }
    if ((i & 0xFFFFU) == 0 && clock.expired()) return out;
  }
  out.trace.add_phase("sampling", clock.lap_ms());

  const long double cap_ld = static_cast<long double>(n) * n * std::ldexp(1.0L, static_cast<int>(half));
  const std::uint64_t cap = static_cast<std::uint64_t>(std::min<long double>(cap_ld, 1e18L));
  const std::uint64_t repeats = budget.repeats_for(n);
  for (std::uint64_t draw = 0; draw < repeats; ++draw) {
    ++out.trace.draws;
    const PrimeSample prime = sample_prime_pow2(half, rng);
    const std::uint64_t p = to_u64(prime.p);
    const ReachTable table(residues_mod(items, p), p, budget.table);
    const std::uint64_t k = to_u64(target % prime.p);
    out.trace.prime = prime.p;
    out.trace.residue = k;
    out.trace.add_phase("table", clock.lap_ms());

    std::optional<std::uint64_t> hit;
    std::uint64_t seen = 0;
    bool timed_out = false;
    const auto [visited, complete] = table.for_each_mask(k, cap, [&](std::uint64_t mask) {
      if (mask_sum(a, mask) == m) {
        hit = mask;
        return false;
      }
      if ((++seen & 0xFFFU) == 0 && clock.expired()) {
        timed_out = true;
        return false;
      }
      return true;
    });
    out.trace.enumerated += visited;
    out.trace.add_phase("enumerate", clock.lap_ms());
    if (hit) return found_single(std::move(out), *hit);
    if (complete && !timed_out) {
      out.verdict = Verdict::NotFound;
      out.trace.notes.emplace_back("whole bin enumerated");
      return out;
    }
    if (clock.expired()) {
      out.trace.notes.emplace_back("time cap reached");
      return out;
    }
  }
  out.trace.notes.emplace_back("repeat cap reached");
  return out;
}

// ---------------------------------------------------------------------------
// Shifted-Sums, meet in the middle

/// Signed assignments of `size` elements of X: Sigma(S1 part) - Sigma(S2 part)
/// with the two global masks, sorted by value, one representative per value.
template <class V>
struct SignedList {
  std::vector<std::pair<V, std::pair<std::uint64_t, std::uint64_t>>> entries;
};

template <class V, class Visit>
void for_each_signed(const std::vector<V>& a, const std::vector<std::uint32_t>& idx, unsigned size, Visit&& visit) {
  const std::size_t m = idx.size();
  if (size > m) return;
  std::vector<V> local(m);
  for (std::size_t j = 0; j < m; ++j) local[j] = a[idx[j] - 1];
  const std::uint64_t limit = std::uint64_t{1} << m;
  std::uint64_t support = size == 0 ? 0 : (std::uint64_t{1} << size) - 1;
  while (support < limit) {
    const V total = mask_sum(local, support);
    std::uint64_t plus = support;
    for (;;) {
      const V v = 2 * mask_sum(local, plus) - total;
      visit(v, plus, support & ~plus);
      if (plus == 0) break;
      plus = (plus - 1) & support;
    }
    if (support == 0) break;
    const std::uint64_t c = support & (~support + 1);
    const std::uint64_t r = support + c;
    support = (((r ^ support) >> 2U) / c) | r;
  }
}

long double binomial_ld(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  long double r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * static_cast<long double>(n - k + i) / static_cast<long double>(i);
  return r;
}

/// One split, one distribution (k1 in X1, k2 in X2). Returns global masks.
template <class V>
std::optional<std::pair<std::uint64_t, std::uint64_t>> mitm_split(const std::vector<V>& a, const V& s,
                                                                   const Split& split, unsigned k1, unsigned k2,
                                                                   const SolverBudget& budget,
                                                                   std::uint64_t& enumerated) {
  if (k1 > split.first.size() || k2 > split.second.size()) return std::nullopt;
  const long double entries = binomial_ld(split.first.size(), k1) * std::ldexp(1.0L, static_cast<int>(k1));
  check_memory(estimated_entries_bytes(entries, sizeof(V)), budget, "shifted meet-in-the-middle list");
  std::vector<std::pair<V, std::pair<std::uint64_t, std::uint64_t>>> v1;
  v1.reserve(static_cast<std::size_t>(entries));
  for_each_signed(a, split.first, k1, [&](const V& v, std::uint64_t plus, std::uint64_t minus) {
    v1.push_back({v, {plus, minus}});
  });
  enumerated += v1.size();
  std::sort(v1.begin(), v1.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  v1.erase(std::unique(v1.begin(), v1.end(), [](const auto& x, const auto& y) { return x.first == y.first; }),
           v1.end());

  std::optional<std::pair<std::uint64_t, std::uint64_t>> hit;
  for_each_signed(a, split.second, k2, [&](const V& v2, std::uint64_t plus, std::uint64_t minus) {
    if (hit) return;
    ++enumerated;
    const V want = s - v2;
    auto it = std::lower_bound(v1.begin(), v1.end(), want, [](const auto& e, const V& v) { return e.first < v; });
    if (it == v1.end() || it->first != want) return;
    const std::uint64_t s1 = to_global(split.first, it->second.first) | to_global(split.second, plus);
    const std::uint64_t s2 = to_global(split.first, it->second.second) | to_global(split.second, minus);
    if (s1 != s2) hit = std::pair{s1, s2};
  });
  return hit;
}

template <class V>
SolveOutcome shifted_mitm(const Items& items, const Natural& shift, unsigned size, const SolverBudget& budget,
                          SplitSizes mode) {
  SolveOutcome out;
  out.trace.algorithm = mode == SplitSizes::Balanced ? "mitm" : "mitm_exhaustive";
  out.trace.size = size;
  const std::size_t n = items.size();
  out.trace.ratio = static_cast<double>(size) / static_cast<double>(n);
  if (size < 1 || size > n) throw InvalidParameter("solution size must lie in [1, n]");
  Stopwatch clock(budget);
  Rng rng(budget.seed);
  const auto a = values_as<V>(items);
  const V s = value_as<V>(shift);

  if (mode == SplitSizes::Exhaustive) {
    const Split split = random_balanced_split(n, rng);
    for (unsigned k1 = 0; k1 <= size; ++k1) {
      if (auto hit = mitm_split(a, s, split, k1, size - k1, budget, out.trace.enumerated)) {
        out.trace.add_phase("search", clock.lap_ms());
        return found_pair(std::move(out), hit->first, hit->second);
      }
      if (clock.expired()) return out;
    }
    out.trace.add_phase("search", clock.lap_ms());
    out.verdict = Verdict::NotFound;
    return out;
  }

  const unsigned k1 = size / 2;
  const std::uint64_t repeats = budget.repeats_for(n);
  for (std::uint64_t draw = 0; draw < repeats; ++draw) {
    ++out.trace.draws;
    const Split split = random_balanced_split(n, rng);
    if (auto hit = mitm_split(a, s, split, k1, size - k1, budget, out.trace.enumerated)) {
      out.trace.add_phase("search", clock.lap_ms());
      return found_pair(std::move(out), hit->first, hit->second);
    }
    if (clock.expired()) break;
  }
  out.trace.add_phase("search", clock.lap_ms());
  return out;
}

// ---------------------------------------------------------------------------
// Shifted-Sums, representation technique

template <class V>
SolveOutcome shifted_rep(const Items& items, const Natural& shift, unsigned size, const SolverBudget& budget) {
  SolveOutcome out;
  out.trace.algorithm = "rep";
  out.trace.size = size;
  const std::size_t n = items.size();
  if (size < 1 || size > n) throw InvalidParameter("solution size must lie in [1, n]");
  const double l = static_cast<double>(size) / static_cast<double>(n);
  const double b = shifted_rep_b(l);
  out.trace.ratio = l;
  out.trace.b = b;
  Stopwatch clock(budget);
  Rng rng(budget.seed);
  const auto a = values_as<V>(items);
  const V s = value_as<V>(shift);
  const auto e = static_cast<unsigned>(std::ceil(b * static_cast<double>(n) - 1e-9));

  if (budget.prefilter) {
    const std::uint64_t samples = std::min<std::uint64_t>(budget.sample_cap, std::uint64_t{1} << std::min(e, 62U));
    for (std::uint64_t i = 0; i < samples; ++i) {
      const std::uint64_t m1 = rng.next_u64() & full_mask(n);
      const std::uint64_t m2 = rng.next_u64() & full_mask(n);
      ++out.trace.samples;
      if (m1 != m2 && mask_sum(a, m1) == s + mask_sum(a, m2)) {
        out.trace.add_phase("sampling", clock.lap_ms());
        out.trace.notes.emplace_back("found by sampling");
        return found_pair(std::move(out), m1, m2);
      }
      if ((i & 0xFFFFU) == 0 && clock.expired()) return out;
    }
    out.trace.add_phase("sampling", clock.lap_ms());
  }

  const long double cap_ld =
      static_cast<long double>(n) * n * std::ldexp(1.0L, static_cast<int>(std::ceil((1.0 - b) * n)));
  const std::uint64_t cap = static_cast<std::uint64_t>(std::min<long double>(cap_ld, 1e18L));
  const std::uint64_t repeats = budget.repeats_for(n);
  for (std::uint64_t draw = 0; draw < repeats; ++draw) {
    ++out.trace.draws;
    const PrimeSample prime = sample_prime_pow2(e, rng);
    const std::uint64_t p = to_u64(prime.p);
    const std::uint64_t k = rng.below(p);
    const std::uint64_t k2 = to_u64(mod_floor(Natural(k) - shift, prime.p));
    out.trace.prime = prime.p;
    out.trace.residue = k;
    const ReachTable table(residues_mod(items, p), p, budget.table);
    out.trace.add_phase("table", clock.lap_ms());

    std::vector<std::pair<V, std::uint64_t>> second;
    const auto list_cap = static_cast<std::uint64_t>(
        std::min<long double>(static_cast<long double>(cap), budget.table.memory_cap_bytes / (sizeof(V) + 8.0L)));
    const auto [listed, whole] = table.for_each_mask(k2, list_cap, [&](std::uint64_t mask) {
      second.emplace_back(mask_sum(a, mask), mask);
    });
    if (!whole && list_cap < cap) throw ResourceLimit("bin list exceeds the memory cap");
    out.trace.enumerated += listed;
    std::sort(second.begin(), second.end());

    std::optional<std::pair<std::uint64_t, std::uint64_t>> hit;
    out.trace.enumerated += table.for_each_mask(k, cap, [&](std::uint64_t m1) {
      const V want = mask_sum(a, m1) - s;
      auto it = std::lower_bound(second.begin(), second.end(), want,
                                 [](const auto& x, const V& v) { return x.first < v; });
      for (; it != second.end() && it->first == want; ++it) {
        if (it->second != m1) {
          hit = std::pair{m1, it->second};
          return false;
        }
      }
      return true;
    }).first;
    out.trace.add_phase("collide", clock.lap_ms());
    if (hit) return found_pair(std::move(out), hit->first, hit->second);
    if (clock.expired()) {
      out.trace.notes.emplace_back("time cap reached");
      return out;
    }
  }
  out.trace.notes.emplace_back("repeat cap reached");
  return out;
}

template <class F>
SolveOutcome dispatch_value(const Items& items, const Natural& bound, F&& f) {
  require_mask_items(items.size());
  if (items.fits_int64() && bit_length(bound) <= 62) return f(std::int64_t{});
  return f(Natural{});
}

/// Exhaustive meet-in-the-middle over every solution size: settles the instance.
SolveOutcome shifted_mitm_complete(const Items& items, const Natural& shift, const SolverBudget& budget,
                                   SolveTrace trace) {
  Stopwatch clock(budget);
  for (auto size = static_cast<unsigned>(items.size()); size >= 1; --size) {
    SolveOutcome sub = solve_shifted_mitm(items, shift, size, budget, SplitSizes::Exhaustive);
    trace.enumerated += sub.trace.enumerated;
    if (sub.verdict == Verdict::Found) {
      sub.trace.enumerated = trace.enumerated;
      sub.trace.notes = trace.notes;
      sub.trace.notes.emplace_back("found by the exhaustive pass");
      return sub;
    }
    if (sub.verdict == Verdict::Inconclusive || clock.expired()) {
      trace.notes.emplace_back("exhaustive pass interrupted");
      return SolveOutcome{Verdict::Inconclusive, std::nullopt, std::move(trace)};
    }
  }
  trace.notes.emplace_back("exhaustive pass found no solution");
  return SolveOutcome{Verdict::NotFound, std::nullopt, std::move(trace)};
}

bool prefer_rep(double l) {
  const auto& c = crossovers();
  return l >= c.classical_l1 && l < c.classical_l2;
}

}  // namespace

// ---------------------------------------------------------------------------

SolveOutcome solve_subset_sum_mitm(const Items& items, const Natural& target, const SolverBudget& budget) {
  budget.validate();
  if (target < 0 || target > items.total()) return SolveOutcome{Verdict::NotFound, std::nullopt, SolveTrace::named("mitm")};
  try {
    return dispatch_value(items, items.total(), [&](auto tag) {
      return subset_sum_mitm<decltype(tag)>(items, target, budget);
    });
  } catch (const ResourceLimit& e) {
    SolveOutcome out{Verdict::Inconclusive, std::nullopt, SolveTrace::named("mitm")};
    out.trace.notes.emplace_back(e.what());
    return out;
  }
}

SolveOutcome solve_subset_sum_rep(const Items& items, const Natural& target, const SolverBudget& budget) {
  budget.validate();
  if (target < 0 || target > items.total()) return SolveOutcome{Verdict::NotFound, std::nullopt, SolveTrace::named("rep")};
  return dispatch_value(items, items.total(), [&](auto tag) {
    return subset_sum_rep<decltype(tag)>(items, target, budget);
  });
}

SolveOutcome solve_modular_subset_sum_mitm(const Items& items, const Natural& target, const Natural& modulus,
                                           const SolverBudget& budget) {
  budget.validate();
  require_mask_items(items.size());
  if (modulus < 1 || modulus >= pow2(63)) throw InvalidParameter("modulus must lie in [1, 2^63)");
  SolveOutcome out;
  out.trace.algorithm = "mitm";
  Stopwatch clock(budget);
  const std::uint64_t q = to_u64(modulus);
  const std::uint64_t m = to_u64(mod_floor(target, modulus));
  const auto r = residues_mod(items, q);
  const std::size_t n = r.size();
  const std::size_t h = n / 2;
  check_memory(estimated_entries_bytes(std::ldexp(1.0L, static_cast<int>(h)), 8), budget, "half-sum list");
  auto add = [q](std::uint64_t x, std::uint64_t y) { return x >= q - y ? x - (q - y) : x + y; };
  std::vector<std::pair<std::uint64_t, std::uint64_t>> left;
  left.reserve(std::size_t{1} << h);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << h); ++mask) {
    std::uint64_t s = 0;
    for (std::size_t i = 0; i < h; ++i) {
      if ((mask >> i) & 1U) s = add(s, r[i]);
    }
    left.emplace_back(s, mask);
  }
  std::sort(left.begin(), left.end());
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (n - h)); ++mask) {
    std::uint64_t s = 0;
    for (std::size_t i = 0; i < n - h; ++i) {
      if ((mask >> i) & 1U) s = add(s, r[h + i]);
    }
    ++out.trace.enumerated;
    const std::uint64_t want = m >= s ? m - s : m + q - s;
    auto it = std::lower_bound(left.begin(), left.end(), want,
                               [](const auto& e, std::uint64_t v) { return e.first < v; });
    if (it != left.end() && it->first == want) return found_single(std::move(out), it->second | (mask << h));
    if ((mask & 0xFFFFU) == 0 && clock.expired()) return out;
  }
  out.verdict = Verdict::NotFound;
  return out;
}

SolveOutcome solve_shifted_mitm(const Items& items, const Natural& shift, unsigned size, const SolverBudget& budget,
                                SplitSizes mode) {
  budget.validate();
  return dispatch_value(items, 2 * items.total() + shift, [&](auto tag) {
    return shifted_mitm<decltype(tag)>(items, shift, size, budget, mode);
  });
}

double shifted_rep_b(double ratio) { return ratio > 0.5 ? 1.0 - ratio : 0.5; }

SolveOutcome solve_shifted_rep(const Items& items, const Natural& shift, unsigned size, const SolverBudget& budget) {
  budget.validate();
  return dispatch_value(items, 2 * items.total() + shift, [&](auto tag) {
    return shifted_rep<decltype(tag)>(items, shift, size, budget);
  });
}

SolveOutcome solve_shifted(const Items& items, const Natural& shift, const SolverBudget& budget) {
  budget.validate();
  require_mask_items(items.size());
  Stopwatch clock(budget);
  const Rng root(budget.seed);
  const std::size_t n = items.size();
  SolveTrace trace;
  trace.algorithm = "dispatcher";
  for (auto size = static_cast<unsigned>(n); size >= 1; --size) {
    const double l = static_cast<double>(size) / static_cast<double>(n);
    SolverBudget sub = budget;
    sub.seed = root.split(size).seed();
    SolveOutcome out;
    try {
      out = prefer_rep(l) ? solve_shifted_rep(items, shift, size, sub)
                          : solve_shifted_mitm(items, shift, size, sub, SplitSizes::Balanced);
    } catch (const ResourceLimit& e) {
      trace.notes.emplace_back(std::string("size ") + std::to_string(size) + ": " + e.what());
      continue;
    }
    trace.samples += out.trace.samples;
    trace.draws += out.trace.draws;
    trace.enumerated += out.trace.enumerated;
    if (out.verdict == Verdict::Found) {
      out.trace.samples = trace.samples;
      out.trace.draws = trace.draws;
      out.trace.enumerated = trace.enumerated;
      out.trace.algorithm = "dispatcher/" + out.trace.algorithm;
      return out;
    }
    if (clock.expired()) {
      trace.notes.emplace_back("time cap reached");
      return SolveOutcome{Verdict::Inconclusive, std::nullopt, std::move(trace)};
    }
  }
  try {
    return shifted_mitm_complete(items, shift, budget, std::move(trace));
  } catch (const ResourceLimit& e) {
    SolveOutcome out{Verdict::Inconclusive, std::nullopt, SolveTrace::named("dispatcher")};
    out.trace.notes.emplace_back(e.what());
    return out;
  }
}

SolveOutcome solve_two_subset_sum(const Items& items, const Natural& target, const SolverBudget& budget) {
  const TwoSubsetReduction red = reduce_two_subset_to_shifted(items, target);
  if (red.immediate) {
    SolveOutcome out{Verdict::Found, *red.immediate, SolveTrace::named("reduction")};
    out.trace.notes.emplace_back("target equals the item total");
    return out;
  }
  SolveOutcome out = solve_shifted(items, red.shifted->as<ShiftedSums>().shift, budget);
  if (out.verdict == Verdict::Found) out.solution = red.back_map(std::get<SubsetPair>(*out.solution));
  if (red.complemented) out.trace.notes.emplace_back("target complemented to 2W - m");
  return out;
}

// ---------------------------------------------------------------------------

namespace {

struct NamedAlgorithm {
  Algorithm algorithm;
  std::string_view name;
};

constexpr NamedAlgorithm kAlgorithms[] = {
    {Algorithm::Auto, "auto"},           {Algorithm::Brute, "brute"},
    {Algorithm::Mitm, "mitm"},           {Algorithm::Rep, "rep"},
    {Algorithm::Dispatcher, "dispatcher"}, {Algorithm::Pigeonhole, "pigeonhole"},
};

SolveOutcome brute_outcome(const ProblemInstance& instance) {
  SolveOutcome out;
  out.trace.algorithm = "brute";
  BruteForceResult r = brute_solve(instance, BruteOptions{false});
  out.verdict = r.solvable ? Verdict::Found : Verdict::NotFound;
  out.solution = std::move(r.witness);
  return out;
}

/// Representation solver over every size, without the certifying pass.
SolveOutcome shifted_rep_all_sizes(const Items& items, const Natural& shift, const SolverBudget& budget) {
  const Rng root(budget.seed);
  SolveTrace trace;
  trace.algorithm = "rep";
  for (auto size = static_cast<unsigned>(items.size()); size >= 1; --size) {
    SolverBudget sub = budget;
    sub.seed = root.split(size).seed();
    SolveOutcome out = solve_shifted_rep(items, shift, size, sub);
    trace.enumerated += out.trace.enumerated;
    if (out.verdict == Verdict::Found) return out;
  }
  return SolveOutcome{Verdict::Inconclusive, std::nullopt, std::move(trace)};
}

[[noreturn]] void unsupported(const ProblemInstance& instance, Algorithm a) {
  throw InvalidParameter("algorithm " + std::string(algorithm_name(a)) + " does not apply to " +
                         std::string(instance.name()));
}

SolveOutcome pigeonhole_outcome(const PigeonholeOutcome& p) {
  SolveOutcome out{Verdict::Found, p.pair, SolveTrace::named("pigeonhole")};
  out.trace.prime = p.modulus;
  out.trace.residue = p.bin;
  out.trace.enumerated = p.enumerated;
  if (!p.path.empty()) out.trace.notes.push_back(p.path);
  return out;
}

}  // namespace

std::string_view algorithm_name(Algorithm a) {
  for (const auto& e : kAlgorithms) {
    if (e.algorithm == a) return e.name;
  }
  return "unknown";
}

Algorithm parse_algorithm(std::string_view name) {
  for (const auto& e : kAlgorithms) {
    if (e.name == name) return e.algorithm;
  }
  throw InvalidParameter("unknown algorithm: " + std::string(name));
}

SolveOutcome solve(const ProblemInstance& instance, Algorithm algorithm, const SolverBudget& budget) {
  const Items& items = instance.items();
  if (algorithm == Algorithm::Brute) return brute_outcome(instance);
  SolveOutcome out = std::visit(
      [&](const auto& v) -> SolveOutcome {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, SubsetSum>) {
          if (algorithm == Algorithm::Mitm) return solve_subset_sum_mitm(items, v.target, budget);
          if (algorithm == Algorithm::Rep || algorithm == Algorithm::Auto) {
            return solve_subset_sum_rep(items, v.target, budget);
          }
        } else if constexpr (std::is_same_v<T, TwoSubsetSum>) {
          if (algorithm == Algorithm::Auto || algorithm == Algorithm::Dispatcher) {
            return solve_two_subset_sum(items, v.target, budget);
          }
        } else if constexpr (std::is_same_v<T, EqualSums> || std::is_same_v<T, ShiftedSums>) {
          Natural shift = 0;
          if constexpr (std::is_same_v<T, ShiftedSums>) shift = v.shift;
          if (algorithm == Algorithm::Auto || algorithm == Algorithm::Dispatcher) {
            return solve_shifted(items, shift, budget);
          }
          if (algorithm == Algorithm::Mitm) return shifted_mitm_complete(items, shift, budget, SolveTrace::named("mitm"));
          if (algorithm == Algorithm::Rep) return shifted_rep_all_sizes(items, shift, budget);
        } else if constexpr (std::is_same_v<T, PigeonholeEqualSums>) {
          if (algorithm == Algorithm::Auto || algorithm == Algorithm::Pigeonhole) {
            return pigeonhole_outcome(solve_pigeonhole_equal(items));
          }
          if (algorithm == Algorithm::Dispatcher) return solve_shifted(items, 0, budget);
        } else if constexpr (std::is_same_v<T, PigeonholeModularEqualSums>) {
          if (algorithm == Algorithm::Auto || algorithm == Algorithm::Pigeonhole) {
            return pigeonhole_outcome(solve_pigeonhole_modular(items, v.modulus, budget.table));
          }
        } else if constexpr (std::is_same_v<T, ModularSubsetSum>) {
          if (algorithm == Algorithm::Auto || algorithm == Algorithm::Mitm) {
            return solve_modular_subset_sum_mitm(items, v.target, v.modulus, budget);
          }
        } else if constexpr (std::is_same_v<T, ModularShiftedSums>) {
          if (algorithm == Algorithm::Auto) return brute_outcome(instance);
        }
        unsupported(instance, algorithm);
      },
      instance.variant());
  if (out.verdict == Verdict::Found && !verify(instance, *out.solution)) {
    throw std::logic_error("solver returned an unverified solution");
  }
  return out;
}

}  // namespace repsum
