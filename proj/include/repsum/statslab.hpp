#pragma once

// Monte-Carlo checks of the probabilistic bounds behind the solvers. Each check
// turns an asymptotic claim into an explicit inequality with a logged constant.

#include <cstdint>
#include <map>
#include <string>

#include "repsum/core.hpp"
#include "repsum/natural.hpp"

namespace repsum {

struct StatReport {
  std::string quantity;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  double estimate = 0;
  /// Value the estimate is compared with (an upper or lower bound, see `rule`).
  double bound = 0;
  double std_error = 0;
  std::string rule;
  bool pass = false;
  /// Raw numbers and constants behind the verdict.
  std::map<std::string, double> details;
};

inline constexpr std::uint64_t kMinTrials = 30;
inline constexpr double kProductConstantPerItem = 4.0;  // C = 4 (n + 1)
inline constexpr double kValueHashConstant = 0.25;

/// Mean of t_{p,k} over random primes p in [2^ceil(bn), 2^(ceil(bn)+1)] and
/// random k. Pass: mean <= 2^((1-b)n) + 3 sigma.
StatReport bin_mean_check(const Items& items, double b, std::uint64_t trials, std::uint64_t seed);

/// Mean of t_{p,k} t_{p,(k-s) mod p}, divided by 2^(2(1-b)n).
/// Pass: ratio <= 4 (n + 1) + 3 sigma. Throws InvalidInstance when the instance
/// has more than 2^((2-b)n) ordered solution pairs.
StatReport bin_product_check(const Items& items, const Natural& shift, double b,
                             std::uint64_t trials, std::uint64_t seed);

/// Frequency of v_{p,k} >= 2^((1-l-b)n-2) (l <= 1-b) or v_{p,k} >= 1 (l > 1-b),
/// with V the collision values of shift s. Pass: frequency + 3 sigma >= c/n, or
/// c min(1/n, 2^((1-l-b)n)) in the second regime; c = 1/4.
StatReport value_hash_check(const Items& items, const Natural& shift, double l, double b,
                            std::uint64_t trials, std::uint64_t seed);

/// r uniform draws from [N] and from [M], K disjoint marked pairs (k, k).
/// Pass: estimate + 1.645 sigma >= r^2 K / (2 N M) when that ratio is <= 0.1,
/// else >= the inclusion-exclusion lower bound.
StatReport birthday_sim(std::uint64_t N, std::uint64_t M, std::uint64_t K, std::uint64_t r,
                        std::uint64_t trials, std::uint64_t seed);

/// Random 1:2 split (|X1| = floor(n/3)) against a fixed solution block of size
/// round(l n): frequency of exactly round(l n / 3) block elements in X1.
/// Pass: within 3 sigma of the exact hypergeometric value, which must itself be
/// >= n^(-1/2) / 4.
StatReport split_check(std::size_t n, double l, std::uint64_t trials, std::uint64_t seed);

/// Exact hypergeometric probability that a uniform m-subset of [n] holds exactly
/// j of a fixed L-subset.
double split_probability(std::size_t n, std::size_t m, std::size_t L, std::size_t j);

/// 2^(n h(l)) / sqrt(8 n l (1-l)) <= C(n, l n) < 2^(n h(l)) / sqrt(2 pi n l (1-l))
/// for l in {0.1, ..., 0.9}, n in [20, 60] with l n integral.
StatReport fact1_check();

}  // namespace repsum
