#include <doctest.h>

#include <cmath>
#include <map>
#include <set>
#include <vector>

#include "repsum/errors.hpp"
#include "repsum/numtheory.hpp"

using namespace repsum;

namespace {

std::vector<bool> sieve(std::size_t limit) {
  std::vector<bool> prime(limit + 1, true);
  prime[0] = false;
  if (limit >= 1) prime[1] = false;
  for (std::size_t i = 2; i * i <= limit; ++i) {
    if (!prime[i]) continue;
    for (std::size_t j = i * i; j <= limit; j += i) prime[j] = false;
  }
  return prime;
}

// Trial division, independent of Miller-Rabin.
bool trial_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("u64 primality matches a sieve below 10^5") {
  const auto p = sieve(100000);
  for (std::uint64_t n = 0; n <= 100000; ++n) REQUIRE(is_prime_u64(n) == p[n]);
}

TEST_CASE("u64 primality on strong pseudoprimes and large primes") {
  CHECK_FALSE(is_prime_u64(3215031751ULL));
  CHECK_FALSE(is_prime_u64(3825123056546413051ULL));
  CHECK_FALSE(is_prime_u64(341550071728321ULL));
  CHECK(is_prime_u64(18446744073709551557ULL));
  CHECK(is_prime_u64(2305843009213693951ULL));
  CHECK_FALSE(is_prime_u64(4294967297ULL));
}

TEST_CASE("big primality") {
  Rng rng(3);
  CHECK(is_prime(pow2(127) - 1, rng));
  CHECK_FALSE(is_prime(pow2(128) + 1, rng));
  CHECK_FALSE(is_prime((pow2(61) - 1) * (pow2(89) - 1), rng));
}

TEST_CASE("random_prime examples") {
  Rng rng(1);
  CHECK(random_prime(2, 2, rng) == 2);
  std::set<Natural> seen;
  for (int i = 0; i < 200; ++i) {
    const Natural p = random_prime(8, 16, rng);
    CHECK((p == 11 || p == 13));
    seen.insert(p);
  }
  CHECK(seen.size() == 2);
  const auto s = sample_prime_pow2(20, rng);
  CHECK(s.p >= pow2(20));
  CHECK(s.p <= pow2(21));
  CHECK(trial_prime(to_u64(s.p)));
  CHECK_THROWS_AS(random_prime(24, 28, rng), NoPrimeFound);
  CHECK_THROWS_AS(random_prime(1, 5, rng), InvalidParameter);
  CHECK_THROWS_AS(random_prime(9, 5, rng), InvalidParameter);
}

TEST_CASE("prime sampling is reproducible from the seed") {
  Rng a(42), b(42);
  for (int i = 0; i < 10; ++i) CHECK(random_prime(pow2(40), pow2(41), a) == random_prime(pow2(40), pow2(41), b));
}

TEST_CASE("sampled primes cover the small interval roughly uniformly") {
  Rng rng(9);
  const auto p = sieve(400);
  std::vector<std::uint64_t> primes;
  for (std::uint64_t i = 256; i <= 400; ++i) {
    if (p[i]) primes.push_back(i);
  }
  std::map<std::uint64_t, int> hits;
  const int draws = 20000;
  for (int i = 0; i < draws; ++i) ++hits[to_u64(random_prime(256, 400, rng))];
  const double expected = static_cast<double>(draws) / static_cast<double>(primes.size());
  double chi2 = 0;
  for (auto q : primes) chi2 += std::pow(hits[q] - expected, 2) / expected;
  // 24 primes, 23 degrees of freedom; 0.999 quantile is about 49.7
  CHECK(primes.size() == 24);
  CHECK(chi2 < 49.7);
}

TEST_CASE("random_residue range and uniformity") {
  Rng rng(7);
  CHECK(random_residue(1, rng) == 0);
  for (int i = 0; i < 100; ++i) {
    const Natural k = random_residue(5, rng);
    CHECK(k >= 0);
    CHECK(k <= 4);
  }
  std::vector<int> counts(7);
  const int draws = 100000;
  for (int i = 0; i < draws; ++i) ++counts[to_u64(random_residue(7, rng))];
  double chi2 = 0;
  for (int c : counts) chi2 += std::pow(c - draws / 7.0, 2) / (draws / 7.0);
  CHECK(chi2 < 22.46);  // 6 degrees of freedom, 0.999 quantile
  const Natural big = pow2(130) + 17;
  for (int i = 0; i < 50; ++i) CHECK(random_residue(big, rng) < big);
}

TEST_CASE("a random prime rarely divides a fixed difference") {
  // |a1 - a2| < 2^(4n) with n = 8; primes drawn from [2^(bn), 2^(bn+1)] with b n = 12.
  Rng rng(21);
  const Natural diff = Natural(3) * 5 * 7 * 11 * 13 * 4099 * 4111 * 4127 * 4129;
  const int trials = 2000;
  int divides = 0;
  for (int t = 0; t < trials; ++t) {
    if (diff % sample_prime_pow2(12, rng).p == 0) ++divides;
  }
  const double freq = static_cast<double>(divides) / trials;
  const double bound = static_cast<double>(bit_length(diff)) / std::exp2(12.0);
  const double sigma = std::sqrt(bound * (1 - bound) / trials);
  CHECK(freq <= bound + 3 * sigma);
  CHECK(divides > 0);
}

TEST_CASE("mod_floor is non-negative") {
  CHECK(mod_floor(-3, 5) == 2);
  CHECK(mod_floor(13, 5) == 3);
}
