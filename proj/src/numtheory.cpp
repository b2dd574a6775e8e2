#include "repsum/numtheory.hpp"

#include <array>

#include <boost/multiprecision/miller_rabin.hpp>

#include "repsum/errors.hpp"

namespace repsum {
namespace {

using u128 = unsigned __int128;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1;
  base %= m;
  while (e != 0) {
    if ((e & 1U) != 0) r = mul_mod(r, base, m);
    base = mul_mod(base, base, m);
    e >>= 1U;
  }
  return r;
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
  static constexpr std::array<std::uint64_t, 12> kBases{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  if (n < 2) return false;
  for (std::uint64_t p : kBases) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while ((d & 1U) == 0) {
    d >>= 1U;
    ++s;
  }
  for (std::uint64_t a : kBases) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

bool is_prime(const Natural& n, Rng& rng, unsigned rounds) {
  if (n < 2) return false;
  if (fits_u64(n)) return is_prime_u64(to_u64(n));
  return boost::multiprecision::miller_rabin_test(n, rounds, rng.engine());
}

PrimeSample sample_prime(const Natural& lo, const Natural& hi, Rng& rng) {
  if (lo < 2 || hi < lo) throw InvalidParameter("prime range must satisfy 2 <= lo <= hi");
  PrimeSample out{0, lo, hi, rng.seed(), 0};
  const std::uint64_t max_draws = 100ULL * (bit_length(hi) + 1);
  while (out.draws < max_draws) {
    ++out.draws;
    Natural candidate = rng.between(lo, hi);
    if (is_prime(candidate, rng)) {
      out.p = std::move(candidate);
      return out;
    }
  }
  throw NoPrimeFound("no prime found in [" + lo.str() + ", " + hi.str() + "]");
}

PrimeSample sample_prime_pow2(unsigned exponent, Rng& rng) {
  Natural lo = pow2(exponent);
  if (lo < 2) lo = 2;
  return sample_prime(lo, pow2(exponent + 1), rng);
}

Natural random_residue(const Natural& p, Rng& rng) {
  if (p < 1) throw InvalidParameter("residue modulus must be >= 1");
  return rng.below(p);
}

}  // namespace repsum
