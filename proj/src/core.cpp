#include "repsum/core.hpp"

#include <algorithm>
#include <iterator>
#include <sstream>

#include "repsum/numtheory.hpp"

namespace repsum {

Items::Items(std::vector<Natural> values) : values_(std::move(values)) {
  if (values_.empty()) throw InvalidInstance("an instance needs at least one item");
  for (const auto& a : values_) {
    if (a < 1) throw InvalidInstance("items must be positive, got " + a.str());
    total_ += a;
  }
}

Items::Items(std::initializer_list<unsigned long long> values)
    : Items(std::vector<Natural>(values.begin(), values.end())) {}

std::vector<std::int64_t> Items::as_int64() const {
  if (!fits_int64()) throw ResourceLimit("item total does not fit in 62 bits");
  std::vector<std::int64_t> out;
  out.reserve(values_.size());
  for (const auto& a : values_) out.push_back(a.convert_to<std::int64_t>());
  return out;
}

Subset::Subset(std::vector<std::uint32_t> indices) : indices_(std::move(indices)) {
  std::sort(indices_.begin(), indices_.end());
  if (!indices_.empty() && indices_.front() == 0) throw ContractViolation("subset indices are 1-based");
  if (std::adjacent_find(indices_.begin(), indices_.end()) != indices_.end()) {
    throw ContractViolation("duplicate index in subset");
  }
}

Subset Subset::from_mask(std::uint64_t mask) {
  Subset s;
  for (std::uint32_t i = 0; mask != 0; ++i, mask >>= 1U) {
    if ((mask & 1U) != 0) s.indices_.push_back(i + 1);
  }
  return s;
}

std::uint64_t Subset::to_mask() const {
  std::uint64_t mask = 0;
  for (auto i : indices_) {
    if (i > 64) throw ContractViolation("subset index beyond 64 in mask conversion");
    mask |= std::uint64_t{1} << (i - 1);
  }
  return mask;
}

bool Subset::contains(std::uint32_t index) const {
  return std::binary_search(indices_.begin(), indices_.end(), index);
}

std::string Subset::to_string() const {
  std::string out = "{";
  for (std::size_t k = 0; k < indices_.size(); ++k) {
    if (k != 0) out += ',';
    out += std::to_string(indices_[k]);
  }
  return out + "}";
}

Subset set_difference(const Subset& a, const Subset& b) {
  std::vector<std::uint32_t> out;
  std::set_difference(a.indices().begin(), a.indices().end(), b.indices().begin(), b.indices().end(),
                      std::back_inserter(out));
  return Subset(std::move(out));
}

Subset set_union(const Subset& a, const Subset& b) {
  std::vector<std::uint32_t> out;
  std::set_union(a.indices().begin(), a.indices().end(), b.indices().begin(), b.indices().end(),
                 std::back_inserter(out));
  return Subset(std::move(out));
}

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

void require_range(const Natural& x, const Natural& lo, const Natural& hi, const char* what) {
  if (x < lo || x > hi) {
    throw InvalidInstance(std::string(what) + " " + x.str() + " outside [" + lo.str() + ", " + hi.str() + "]");
  }
}

void validate(const Items& items, const Variant& variant) {
  const Natural& W = items.total();
  const std::size_t n = items.size();
  std::visit(Overloaded{
                 [&](const SubsetSum& v) { require_range(v.target, 0, W, "target"); },
                 [&](const TwoSubsetSum& v) { require_range(v.target, 1, 2 * W - 1, "target"); },
                 [&](const EqualSums&) {},
                 [&](const ShiftedSums& v) { require_range(v.shift, 0, W - 1, "shift"); },
                 [&](const PigeonholeEqualSums&) {
                   if (W >= pow2(static_cast<unsigned>(n)) - 1) {
                     throw InvalidInstance("pigeonhole instance needs item total < 2^n - 1");
                   }
                 },
                 [&](const PigeonholeModularEqualSums& v) {
                   require_range(v.modulus, 1, pow2(static_cast<unsigned>(n)) - 1, "modulus");
                 },
                 [&](const ModularSubsetSum& v) {
                   if (v.modulus < 1) throw InvalidInstance("modulus must be positive");
                   require_range(v.target, 0, v.modulus - 1, "target");
                 },
                 [&](const ModularShiftedSums& v) {
                   if (v.modulus < 1) throw InvalidInstance("modulus must be positive");
                   require_range(v.shift, 0, v.modulus - 1, "shift");
                 },
             },
             variant);
}

const SubsetPair& as_pair(const Solution& s) {
  if (const auto* p = std::get_if<SubsetPair>(&s)) return *p;
  throw ContractViolation("this variant expects a pair of subsets");
}

const Subset& as_single(const Solution& s) {
  if (const auto* p = std::get_if<SingleSubset>(&s)) return p->set;
  throw ContractViolation("this variant expects a single subset");
}

bool congruent(const Natural& a, const Natural& b, const Natural& q) { return mod_floor(a - b, q) == 0; }

}  // namespace

std::string_view variant_name(const Variant& v) {
  static constexpr std::string_view kNames[] = {"subset_sum",         "two_subset_sum",  "equal_sums",
                                                "shifted_sums",       "pigeonhole_equal", "pigeonhole_modular",
                                                "modular_subset_sum", "modular_shifted_sums"};
  return kNames[v.index()];
}

ProblemInstance::ProblemInstance(Items items, Variant variant)
    : items_(std::move(items)), variant_(std::move(variant)) {
  validate(items_, variant_);
}

Natural subset_sum(const Items& items, const Subset& s) {
  Natural total = 0;
  for (auto i : s.indices()) {
    if (i > items.size()) throw ContractViolation("subset index " + std::to_string(i) + " beyond n");
    total += items[i - 1];
  }
  return total;
}

bool verify(const ProblemInstance& instance, const Solution& solution) {
  const Items& items = instance.items();
  auto pair_sums = [&](const Solution& s) {
    const auto& p = as_pair(s);
    return std::tuple{subset_sum(items, p.first), subset_sum(items, p.second), p.first != p.second};
  };
  return std::visit(
      Overloaded{
          [&](const SubsetSum& v) { return subset_sum(items, as_single(solution)) == v.target; },
          [&](const TwoSubsetSum& v) {
            const auto* m = std::get_if<Multiplicities>(&solution);
            if (m == nullptr) throw ContractViolation("two-subset-sum expects multiplicities");
            if (m->e.size() != items.size()) throw ContractViolation("multiplicity vector has wrong length");
            Natural total = 0;
            for (std::size_t i = 0; i < items.size(); ++i) {
              if (m->e[i] > 2) return false;
              total += items[i] * m->e[i];
            }
            return total == v.target;
          },
          [&](const EqualSums&) {
            auto [a, b, distinct] = pair_sums(solution);
            return distinct && a == b;
          },
          [&](const ShiftedSums& v) {
            auto [a, b, distinct] = pair_sums(solution);
            return distinct && a == v.shift + b;
          },
          [&](const PigeonholeEqualSums&) {
            auto [a, b, distinct] = pair_sums(solution);
            return distinct && a == b;
          },
          [&](const PigeonholeModularEqualSums& v) {
            auto [a, b, distinct] = pair_sums(solution);
            return distinct && congruent(a, b, v.modulus);
          },
          [&](const ModularSubsetSum& v) {
            return congruent(subset_sum(items, as_single(solution)), v.target, v.modulus);
          },
          [&](const ModularShiftedSums& v) {
            auto [a, b, distinct] = pair_sums(solution);
            return distinct && congruent(a, v.shift + b, v.modulus);
          },
      },
      instance.variant());
}

SubsetPair canonicalize(const SubsetPair& pair) {
  return {set_difference(pair.first, pair.second), set_difference(pair.second, pair.first)};
}

std::string to_string(const Solution& solution) {
  return std::visit(Overloaded{
                        [](const SingleSubset& s) { return s.set.to_string(); },
                        [](const SubsetPair& p) { return "(" + p.first.to_string() + ", " + p.second.to_string() + ")"; },
                        [](const Multiplicities& m) {
                          std::string out = "(";
                          for (std::size_t i = 0; i < m.e.size(); ++i) {
                            if (i != 0) out += ',';
                            out += std::to_string(m.e[i]);
                          }
                          return out + ")";
                        },
                    },
                    solution);
}

Multiplicities TwoSubsetReduction::back_map(const SubsetPair& pair) const {
  Multiplicities m;
  m.e.assign(items.size(), 1);
  for (auto i : pair.first.indices()) m.e.at(i - 1) += 1;
  for (auto i : pair.second.indices()) m.e.at(i - 1) -= 1;
  if (complemented) {
    for (auto& e : m.e) e = static_cast<std::uint8_t>(2 - e);
  }
  return m;
}

TwoSubsetReduction reduce_two_subset_to_shifted(const Items& items, const Natural& m) {
  const Natural& W = items.total();
  if (m <= 0 || m >= 2 * W) throw InvalidInstance("two-subset-sum target must lie in (0, 2W)");
  TwoSubsetReduction r{items, m, false, std::nullopt, std::nullopt};
  if (m == W) {
    r.immediate = Multiplicities{std::vector<std::uint8_t>(items.size(), 1)};
    return r;
  }
  Natural target = m;
  if (m < W) {
    r.complemented = true;
    target = 2 * W - m;
  }
  r.shifted.emplace(items, ShiftedSums{target - W});
  return r;
}

ModularReduction reduce_modulo(const ProblemInstance& instance, const Natural& p) {
  if (p < 2) throw InvalidParameter("reduction modulus must be >= 2");
  std::vector<Natural> reduced;
  reduced.reserve(instance.n());
  for (const auto& a : instance.items().values()) {
    Natural r = a % p;
    reduced.push_back(r == 0 ? p : r);
  }
  Items items(std::move(reduced));
  if (instance.is<SubsetSum>()) {
    return {ProblemInstance(std::move(items), ModularSubsetSum{instance.as<SubsetSum>().target % p, p}), p};
  }
  if (instance.is<ShiftedSums>()) {
    return {ProblemInstance(std::move(items), ModularShiftedSums{instance.as<ShiftedSums>().shift % p, p}), p};
  }
  throw InvalidParameter("modular reduction applies to subset_sum and shifted_sums only");
}

ModularReduction reduce_modulo_prime(const ProblemInstance& instance, Rng& rng, std::optional<unsigned> bits) {
  const unsigned b = bits.value_or(static_cast<unsigned>(4 * instance.n()));
  if (b < 2) throw InvalidParameter("prime bit length must be >= 2");
  const Natural p = sample_prime(pow2(b - 1), pow2(b), rng).p;
  return reduce_modulo(instance, p);
}

}  // namespace repsum
