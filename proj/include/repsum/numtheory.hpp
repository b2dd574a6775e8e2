#pragma once

#include <cstdint>

#include "repsum/natural.hpp"
#include "repsum/rng.hpp"

namespace repsum {

/// Deterministic Miller-Rabin (first twelve prime bases are exact below 2^64).
bool is_prime_u64(std::uint64_t n);

/// Exact below 2^64; above, `rounds` pseudorandom Miller-Rabin rounds drawn from rng.
bool is_prime(const Natural& n, Rng& rng, unsigned rounds = 40);

struct PrimeSample {
  Natural p;
  Natural range_lo;
  Natural range_hi;
  std::uint64_t seed = 0;
  std::uint64_t draws = 0;  // candidates tried
};

/// Rejection sampling: uniform candidates in [lo, hi] until one is prime.
/// Gives up after 100 * (bit_length(hi) + 1) draws with NoPrimeFound.
/// Throws InvalidParameter unless 2 <= lo <= hi.
PrimeSample sample_prime(const Natural& lo, const Natural& hi, Rng& rng);

inline Natural random_prime(const Natural& lo, const Natural& hi, Rng& rng) {
  return sample_prime(lo, hi, rng).p;
}

/// Prime in [2^e, 2^(e+1)], with the lower end clamped to 2.
PrimeSample sample_prime_pow2(unsigned exponent, Rng& rng);

/// Uniform k in [0, p-1]; p >= 1.
Natural random_residue(const Natural& p, Rng& rng);

/// Non-negative remainder of x mod p (p >= 1).
inline Natural mod_floor(const Natural& x, const Natural& p) {
  Natural r = x % p;
  if (r < 0) r += p;
  return r;
}

}  // namespace repsum
