#include "repsum/statslab.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <vector>

#include <boost/math/constants/constants.hpp>

#include "repsum/costmodel.hpp"
#include "repsum/dpbins.hpp"
#include "repsum/errors.hpp"
#include "repsum/numtheory.hpp"
#include "repsum/oracles.hpp"
#include "repsum/rng.hpp"

namespace repsum {

namespace {

constexpr std::size_t kStatsBruteMaxItems = 16;

void require_trials(std::uint64_t trials) {
  if (trials < kMinTrials) {
    throw InvalidParameter("at least " + std::to_string(kMinTrials) + " trials are required");
  }
}

void require_ratio(double x, const char* what) {
  if (!(x > 0.0 && x < 1.0)) throw InvalidParameter(std::string(what) + " must lie in (0, 1)");
}

/// Kahan-compensated running mean and variance.
class Moments {
 public:
  void add(double x) {
    add_to(sum_, comp_, x);
    add_to(sq_, sq_comp_, x * x);
    ++count_;
  }
  double mean() const { return count_ ? sum_ / static_cast<double>(count_) : 0.0; }
  double variance() const {
    if (count_ < 2) return 0.0;
    const double m = mean();
    const double v = (sq_ - static_cast<double>(count_) * m * m) / static_cast<double>(count_ - 1);
    return std::max(v, 0.0);
  }
  double std_error() const { return count_ ? std::sqrt(variance() / static_cast<double>(count_)) : 0.0; }

 private:
  static void add_to(double& sum, double& comp, double x) {
    const double y = x - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  double sum_ = 0, comp_ = 0, sq_ = 0, sq_comp_ = 0;
  std::uint64_t count_ = 0;
};

struct Draw {
  std::uint64_t p;
  std::uint64_t k;
};

Draw draw_bin(unsigned exponent, Rng& rng) {
  const auto prime = sample_prime_pow2(exponent, rng);
  if (!fits_u64(prime.p)) throw ResourceLimit("sampled prime exceeds 64 bits");
  const std::uint64_t p = to_u64(prime.p);
  return {p, rng.below(p)};
}

unsigned prime_exponent(double b, std::size_t n) {
  return static_cast<unsigned>(std::ceil(b * static_cast<double>(n) - 1e-12));
}

std::uint64_t residue(const Natural& x, std::uint64_t p) { return to_u64(mod_floor(x, Natural(p))); }

std::vector<Natural> all_subset_sums(const Items& items) {
  if (items.size() > kStatsBruteMaxItems) {
    throw ResourceLimit("statistical brute force is capped at n = " + std::to_string(kStatsBruteMaxItems));
  }
  std::vector<Natural> sums{Natural(0)};
  for (const auto& a : items.values()) {
    const std::size_t half = sums.size();
    for (std::size_t i = 0; i < half; ++i) sums.push_back(sums[i] + a);
  }
  return sums;
}

/// Ordered pairs (S1, S2) with Sigma(S1) = Sigma(S2) + s, S1 = S2 included.
Natural ordered_solution_pairs(const Items& items, const Natural& shift) {
  std::map<Natural, std::uint64_t> counts;
  for (auto& v : all_subset_sums(items)) ++counts[v];
  Natural pairs = 0;
  for (const auto& [v, c] : counts) {
    auto it = counts.find(v - shift);
    if (it != counts.end()) pairs += Natural(c) * it->second;
  }
  return pairs;
}

double to_double(const Natural& x) { return x.convert_to<double>(); }

Natural binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  Natural r = 1;
  for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

StatReport bin_mean_check(const Items& items, double b, std::uint64_t trials, std::uint64_t seed) {
  require_trials(trials);
  require_ratio(b, "b");
  const std::size_t n = items.size();
  const unsigned e = prime_exponent(b, n);
  const Rng root(seed);
  Moments m;
  for (std::uint64_t t = 0; t < trials; ++t) {
    Rng rng = root.split(t);
    const auto d = draw_bin(e, rng);
    const auto table = build_table<std::uint64_t>(items, d.p);
    m.add(static_cast<double>(table.bin_size(d.k)));
  }
  StatReport r;
  r.quantity = "bin_mean";
  r.trials = trials;
  r.seed = seed;
  r.estimate = m.mean();
  r.std_error = m.std_error();
  r.bound = std::exp2((1.0 - b) * static_cast<double>(n));
  r.rule = "estimate <= bound + 3 std_error";
  r.pass = r.estimate <= r.bound + 3.0 * r.std_error;
  r.details = {{"n", static_cast<double>(n)}, {"b", b}, {"prime_exponent", e}};
  return r;
}

StatReport bin_product_check(const Items& items, const Natural& shift, double b, std::uint64_t trials,
                             std::uint64_t seed) {
  require_trials(trials);
  require_ratio(b, "b");
  if (shift < 0) throw InvalidParameter("shift must be non-negative");
  const std::size_t n = items.size();
  const double dn = static_cast<double>(n);
  const Natural pairs = ordered_solution_pairs(items, shift);
  const double pair_cap = std::exp2((2.0 - b) * dn);
  if (to_double(pairs) > pair_cap) {
    throw InvalidInstance("instance has more than 2^((2-b)n) solution pairs");
  }
  const unsigned e = prime_exponent(b, n);
  const Rng root(seed);
  Moments m;
  Moments single;
  for (std::uint64_t t = 0; t < trials; ++t) {
    Rng rng = root.split(t);
    const auto d = draw_bin(e, rng);
    const auto table = build_table<std::uint64_t>(items, d.p);
    const std::uint64_t s = residue(shift, d.p);
    const std::uint64_t k2 = d.k >= s ? d.k - s : d.k + d.p - s;
    const double t1 = static_cast<double>(table.bin_size(d.k));
    m.add(t1 * static_cast<double>(table.bin_size(k2)));
    single.add(t1);
  }
  const double scale = std::exp2(2.0 * (1.0 - b) * dn);
  StatReport r;
  r.quantity = "bin_product";
  r.trials = trials;
  r.seed = seed;
  r.estimate = m.mean() / scale;
  r.std_error = m.std_error() / scale;
  r.bound = kProductConstantPerItem * (dn + 1.0);
  r.rule = "estimate / 2^(2(1-b)n) <= 4 (n + 1) + 3 std_error";
  r.pass = r.estimate <= r.bound + 3.0 * r.std_error;
  r.details = {{"n", dn},
               {"b", b},
               {"prime_exponent", e},
               {"raw_mean_product", m.mean()},
               {"mean_bin_squared", single.mean() * single.mean()},
               {"solution_pairs", to_double(pairs)},
               {"solution_pair_cap", pair_cap}};
  return r;
}

StatReport value_hash_check(const Items& items, const Natural& shift, double l, double b,
                            std::uint64_t trials, std::uint64_t seed) {
  require_trials(trials);
  require_ratio(b, "b");
  if (!(l > 0.0 && l <= 1.0)) throw InvalidParameter("l must lie in (0, 1]");
  const std::size_t n = items.size();
  if (n > kStatsBruteMaxItems) {
    throw ResourceLimit("statistical brute force is capped at n = " + std::to_string(kStatsBruteMaxItems));
  }
  const double dn = static_cast<double>(n);
  const auto values = collision_values(items, shift);
  const bool low_regime = l <= 1.0 - b;
  const double exponent = (1.0 - l - b) * dn;
  const double threshold = low_regime ? std::exp2(exponent - 2.0) : 1.0;
  const unsigned e = prime_exponent(b, n);
  const Rng root(seed);
  std::uint64_t hits = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    Rng rng = root.split(t);
    const auto d = draw_bin(e, rng);
    const Natural pn = d.p;
    std::uint64_t v = 0;
    for (const auto& x : values) {
      if (x % pn == d.k) ++v;
    }
    if (static_cast<double>(v) >= threshold) ++hits;
  }
  const double est = static_cast<double>(hits) / static_cast<double>(trials);
  StatReport r;
  r.quantity = "value_hash";
  r.trials = trials;
  r.seed = seed;
  r.estimate = est;
  r.std_error = std::sqrt(est * (1.0 - est) / static_cast<double>(trials));
  r.bound = low_regime ? kValueHashConstant / dn
                       : kValueHashConstant * std::min(1.0 / dn, std::exp2(exponent));
  r.rule = "estimate + 3 std_error >= bound";
  r.pass = r.estimate + 3.0 * r.std_error >= r.bound;
  r.details = {{"n", dn},
               {"l", l},
               {"b", b},
               {"prime_exponent", e},
               {"collision_values", static_cast<double>(values.size())},
               {"threshold", threshold},
               {"low_regime", low_regime ? 1.0 : 0.0},
               {"c", kValueHashConstant}};
  return r;
}

StatReport birthday_sim(std::uint64_t N, std::uint64_t M, std::uint64_t K, std::uint64_t r_draws,
                        std::uint64_t trials, std::uint64_t seed) {
  require_trials(trials);
  if (!(K >= 1 && K <= N && N <= M)) throw InvalidParameter("birthday simulation needs 1 <= K <= N <= M");
  const double dN = static_cast<double>(N), dM = static_cast<double>(M), dK = static_cast<double>(K);
  const double dr = static_cast<double>(r_draws);
  if (r_draws < 1 || dr > std::sqrt(dN * dM / dK)) {
    throw InvalidParameter("birthday simulation needs 1 <= r <= sqrt(N M / K)");
  }
  const Rng root(seed);
  std::uint64_t hits = 0;
  std::vector<char> seen(K);
  for (std::uint64_t t = 0; t < trials; ++t) {
    Rng rng = root.split(t);
    std::fill(seen.begin(), seen.end(), 0);
    for (std::uint64_t i = 0; i < r_draws; ++i) {
      const std::uint64_t x = rng.below(N);
      if (x < K) seen[x] = 1;
    }
    bool hit = false;
    for (std::uint64_t i = 0; i < r_draws; ++i) {
      const std::uint64_t y = rng.below(M);
      if (y < K && seen[y]) hit = true;
    }
    hits += hit ? 1 : 0;
  }
  const double est = static_cast<double>(hits) / static_cast<double>(trials);
  const double x = dr * dr * dK / (dN * dM);
  const double pairs = dr * (dr - 1.0) / 2.0;
  double bound;
  if (x <= 0.1) {
    bound = 0.5 * x;
  } else {
    const double nm = dN * dM;
    bound = x - 2.0 * pairs * pairs * dK * dK / (nm * nm) - 2.0 * dr * pairs * dK / (dN * dM * dM);
    bound = std::max(bound, 0.0);
  }
  StatReport rep;
  rep.quantity = "birthday";
  rep.trials = trials;
  rep.seed = seed;
  rep.estimate = est;
  rep.std_error = std::sqrt(est * (1.0 - est) / static_cast<double>(trials));
  rep.bound = bound;
  rep.rule = x <= 0.1 ? "estimate + 1.645 std_error >= r^2 K / (2 N M)"
                      : "estimate + 1.645 std_error >= inclusion-exclusion lower bound";
  rep.pass = rep.estimate + 1.645 * rep.std_error >= rep.bound;
  rep.details = {{"N", dN}, {"M", dM}, {"K", dK}, {"r", dr}, {"x", x}};
  return rep;
}

double split_probability(std::size_t n, std::size_t m, std::size_t L, std::size_t j) {
  if (m > n || L > n) throw InvalidParameter("split sizes exceed n");
  if (j > L || j > m || m - j > n - L) return 0.0;
  const auto un = static_cast<unsigned>(n), um = static_cast<unsigned>(m);
  const auto uL = static_cast<unsigned>(L), uj = static_cast<unsigned>(j);
  const Natural num = binomial(uL, uj) * binomial(un - uL, um - uj);
  const Natural den = binomial(un, um);
  using boost::multiprecision::cpp_rational;
  return cpp_rational(num, den).convert_to<double>();
}

StatReport split_check(std::size_t n, double l, std::uint64_t trials, std::uint64_t seed) {
  require_trials(trials);
  if (n < 3) throw InvalidParameter("split check needs n >= 3");
  if (!(l > 0.0 && l <= 1.0)) throw InvalidParameter("l must lie in (0, 1]");
  const double dn = static_cast<double>(n);
  const std::size_t m = n / 3;
  const auto L = static_cast<std::size_t>(std::llround(l * dn));
  const auto j = static_cast<std::size_t>(std::llround(static_cast<double>(L) / 3.0));
  const bool adjusted = std::abs(l * dn - static_cast<double>(L)) > 1e-9 || L % 3 != 0 || n % 3 != 0;
  const double exact = split_probability(n, m, L, j);

  const Rng root(seed);
  std::vector<std::size_t> perm(n);
  std::uint64_t hits = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    Rng rng = root.split(t);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    // partial Fisher-Yates: the first m positions form X1
    std::size_t inside = 0;
    for (std::size_t i = 0; i < m; ++i) {
      const std::size_t k = i + rng.below(n - i);
      std::swap(perm[i], perm[k]);
      if (perm[i] < L) ++inside;
    }
    if (inside == j) ++hits;
  }
  const double est = static_cast<double>(hits) / static_cast<double>(trials);
  const double floor_bound = 0.25 / std::sqrt(dn);
  StatReport r;
  r.quantity = "split";
  r.trials = trials;
  r.seed = seed;
  r.estimate = est;
  r.bound = exact;
  r.std_error = std::sqrt(exact * (1.0 - exact) / static_cast<double>(trials));
  r.rule = "|estimate - exact| <= 3 std_error and exact >= n^(-1/2) / 4";
  r.pass = std::abs(est - exact) <= 3.0 * r.std_error && exact >= floor_bound;
  r.details = {{"n", dn},
               {"l", l},
               {"x1_size", static_cast<double>(m)},
               {"block_size", static_cast<double>(L)},
               {"target_overlap", static_cast<double>(j)},
               {"exact_floor", floor_bound},
               {"grid_adjusted", adjusted ? 1.0 : 0.0}};
  return r;
}

StatReport fact1_check() {
  const double pi = boost::math::constants::pi<double>();
  std::uint64_t checked = 0, held = 0;
  double min_lower_slack = INFINITY, min_upper_slack = INFINITY;
  for (int tenth = 1; tenth <= 9; ++tenth) {
    const double l = tenth / 10.0;
    for (unsigned n = 20; n <= 60; ++n) {
      if ((n * static_cast<unsigned>(tenth)) % 10 != 0) continue;
      const unsigned k = n * static_cast<unsigned>(tenth) / 10;
      const double dn = n;
      const double log_c = std::log2(binomial(n, k).convert_to<double>());
      const double log_main = dn * entropy(l);
      const double lower = log_main - 0.5 * std::log2(8.0 * dn * l * (1.0 - l));
      const double upper = log_main - 0.5 * std::log2(2.0 * pi * dn * l * (1.0 - l));
      ++checked;
      if (lower <= log_c && log_c < upper) ++held;
      min_lower_slack = std::min(min_lower_slack, log_c - lower);
      min_upper_slack = std::min(min_upper_slack, upper - log_c);
    }
  }
  StatReport r;
  r.quantity = "fact1";
  r.trials = checked;
  r.seed = 0;
  r.estimate = static_cast<double>(held);
  r.bound = static_cast<double>(checked);
  r.rule = "every checked (l, n) satisfies both binomial bounds";
  r.pass = held == checked;
  r.details = {{"min_lower_slack_log2", min_lower_slack}, {"min_upper_slack_log2", min_upper_slack}};
  return r;
}

}  // namespace repsum
