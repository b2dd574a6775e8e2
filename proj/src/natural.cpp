#include "repsum/natural.hpp"

#include <string>

#include "repsum/errors.hpp"

namespace repsum {

Natural parse_natural(std::string_view text) {
  if (text.empty()) throw InvalidInstance("empty number");
  for (char ch : text) {
    if (ch < '0' || ch > '9') throw InvalidInstance("not a decimal natural: " + std::string(text));
  }
  return Natural(std::string(text));
}

}  // namespace repsum
