#include "repsum/rng.hpp"

namespace repsum {

Natural Rng::below(const Natural& bound) {
  if (bound <= 0) return 0;
  if (fits_u64(bound)) return Natural(below(to_u64(bound)));
  const unsigned bits = bit_length(bound - 1);
  for (;;) {
    Natural x = 0;
    unsigned filled = 0;
    while (filled < bits) {
      x <<= 64U;
      x += next_u64();
      filled += 64;
    }
    x >>= filled - bits;
    if (x < bound) return x;
  }
}

}  // namespace repsum
