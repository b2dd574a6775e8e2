#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace repsum {

/// Arbitrary-precision integer used for item values, targets, sums and counts.
/// Signed so that differences of subset sums need no special type.
using Natural = boost::multiprecision::cpp_int;

inline Natural pow2(unsigned exponent) {
  Natural r = 1;
  r <<= exponent;
  return r;
}

/// Number of significant bits; 0 for zero.
inline unsigned bit_length(const Natural& x) {
  return x <= 0 ? 0U : static_cast<unsigned>(boost::multiprecision::msb(x)) + 1U;
}

Natural parse_natural(std::string_view text);

inline std::string to_string(const Natural& x) { return x.str(); }

inline bool fits_u64(const Natural& x) {
  return x >= 0 && x <= std::numeric_limits<std::uint64_t>::max();
}

inline std::uint64_t to_u64(const Natural& x) { return x.convert_to<std::uint64_t>(); }

}  // namespace repsum
