#include <doctest.h>

#include <sstream>

#include "repsum/dpbins.hpp"
#include "test_support.hpp"

using namespace repsum;

TEST_CASE("table examples") {
  const auto t = build_table<std::uint64_t>(Items{1, 2, 3}, 3);
  CHECK(t.bin_size(0) == 4);
  CHECK(t.bin_size(1) == 2);
  CHECK(t.bin_size(2) == 2);
  CHECK(t.at(0, 0) == 1);
  CHECK(t.at(0, 1) == 0);
  CHECK(t.at(0, 2) == 0);
  const auto single = build_table<std::uint64_t>(Items{5}, 2);
  CHECK(single.bin_size(0) == 1);
  CHECK(single.bin_size(1) == 1);
  CHECK_THROWS_AS(build_table<std::uint64_t>(Items{1}, 0), InvalidParameter);
}

TEST_CASE("rows sum to 2^i and satisfy the recurrence") {
  Rng rng(4);
  for (int round = 0; round < 30; ++round) {
    const auto items = testing_support::random_items(rng, 1 + rng.below(14), 20);
    const std::uint64_t p = 1 + rng.below(64);
    const auto t = build_table<std::uint64_t>(items, p);
    const auto nat = build_table<Natural>(items, p);
    for (std::size_t i = 0; i <= items.size(); ++i) {
      std::uint64_t sum = 0;
      for (std::uint64_t j = 0; j < p; ++j) {
        sum += t.at(i, j);
        CHECK(nat.at(i, j) == t.at(i, j));
        if (i > 0) {
          const std::uint64_t r = t.residues()[i - 1];
          CHECK(t.at(i, j) == t.at(i - 1, j) + t.at(i - 1, (j + p - r) % p));
        }
      }
      CHECK(sum == std::uint64_t{1} << i);
    }
  }
}

TEST_CASE("memory cap is checked before allocation") {
  TableOptions tiny;
  tiny.memory_cap_bytes = 1024;
  CHECK_THROWS_AS(build_table<std::uint64_t>(Items{1, 2, 3}, 1000, tiny), ResourceLimit);
  CHECK_THROWS_AS(build_any_table(Items{1, 2}, pow2(70)), ResourceLimit);
}

TEST_CASE("chi order") {
  CHECK(compare_chi(Subset{}, Subset{1}) == std::strong_ordering::less);
  CHECK(compare_chi(Subset{1, 2}, Subset{3}) == std::strong_ordering::less);
  CHECK(compare_chi(Subset{2, 5}, Subset{2, 5}) == std::strong_ordering::equal);
  CHECK(compare_chi(Subset{4}, Subset{1, 2, 3}) == std::strong_ordering::greater);
  Rng rng(8);
  for (int i = 0; i < 500; ++i) {
    const std::uint64_t a = rng.below(1U << 12U), b = rng.below(1U << 12U);
    CHECK(compare_chi(Subset::from_mask(a), Subset::from_mask(b)) == (a <=> b));
  }
}

TEST_CASE("unrank examples") {
  const auto t = build_table<std::uint64_t>(Items{1, 2, 3}, 3);
  const BinRef<std::uint64_t> bin(t, 0);
  CHECK(unrank(bin, std::uint64_t{1}) == Subset{});
  CHECK(unrank(bin, std::uint64_t{2}) == Subset{1, 2});
  CHECK(unrank(bin, std::uint64_t{3}) == Subset{3});
  CHECK(unrank(bin, std::uint64_t{4}) == Subset{1, 2, 3});
  CHECK_THROWS_AS(unrank(bin, std::uint64_t{0}), IndexError);
  CHECK_THROWS_AS(unrank(bin, std::uint64_t{5}), IndexError);
  CHECK_THROWS_AS(BinRef<std::uint64_t>(t, 3), IndexError);

  const auto odd = build_table<std::uint64_t>(Items{5}, 2);
  CHECK(unrank(BinRef<std::uint64_t>(odd, 1), std::uint64_t{1}) == Subset{1});
}

TEST_CASE("unranking is a chi-ordered bijection onto the bin") {
  Rng rng(12);
  for (int round = 0; round < 60; ++round) {
    const std::size_t n = 1 + rng.below(12);
    const auto items = testing_support::random_items(rng, n, static_cast<unsigned>(2 * n));
    const std::uint64_t p = 1 + rng.below(64);
    const auto t = build_table<std::uint64_t>(items, p);
    const auto big = build_table<Natural>(items, p);
    for (std::uint64_t k = 0; k < p; ++k) {
      const auto expected = testing_support::naive_bin(items, p, k);
      const BinRef<std::uint64_t> bin(t, k);
      REQUIRE(bin.size() == expected.size());
      std::vector<std::uint64_t> got;
      for_each_mask_in_bin(bin, ~std::uint64_t{0}, [&](std::uint64_t m) { got.push_back(m); });
      CHECK(got == expected);
      if (!expected.empty()) {
        const BinRef<Natural> nb(big, k);
        const auto idx = 1 + rng.below(expected.size());
        CHECK(unrank(nb, Natural(idx)).to_mask() == expected[idx - 1]);
      }
    }
  }
}

TEST_CASE("enumerate_bin clamps and streams in order") {
  const auto t = build_table<std::uint64_t>(Items{1, 2, 3}, 3);
  const BinRef<std::uint64_t> bin(t, 0);
  CHECK(enumerate_bin(bin, 0).empty());
  const auto two = enumerate_bin(bin, 2);
  REQUIRE(two.size() == 2);
  CHECK(two[0] == Subset{});
  CHECK(two[1] == Subset{1, 2});
  CHECK(enumerate_bin(bin, 100).size() == 4);
  std::uint64_t seen = 0;
  const auto visited = for_each_in_bin(bin, 10, [&](const Subset&) { return ++seen < 2; });
  CHECK(visited == 2);
}

TEST_CASE("table dump round trip") {
  const auto t = build_any_table(Items{7, 11, 13, 19}, 5);
  std::stringstream buf;
  write_table_dump(buf, t);
  const auto back = read_table_dump(buf);
  CHECK(back.modulus() == 5);
  for (std::uint64_t k = 0; k < 5; ++k) CHECK(back.bin_size(k) == std::get<0>(t).bin_size(k));
  std::stringstream bad("XXXX");
  CHECK_THROWS(read_table_dump(bad));
}

TEST_CASE("wide items need the arbitrary-precision count type") {
  std::vector<Natural> v(70, Natural(1));
  const Items items(v);
  CHECK_THROWS_AS(build_table<std::uint64_t>(items, 3), InvalidParameter);
  const auto t = build_table<Natural>(items, 3);
  Natural total = 0;
  for (std::uint64_t k = 0; k < 3; ++k) total += t.bin_size(k);
  CHECK(total == pow2(70));
  CHECK(std::holds_alternative<BasicDpTable<Natural>>(build_any_table(items, 3)));
}

TEST_CASE("reachability enumeration matches the count table") {
  Rng rng(31);
  for (int round = 0; round < 80; ++round) {
    const std::size_t n = 1 + rng.below(13);
    const auto items = testing_support::random_items(rng, n, static_cast<unsigned>(2 * n));
    const std::uint64_t p = 1 + rng.below(round % 2 ? 64 : 400);
    const auto t = build_table<std::uint64_t>(items, p);
    const ReachTable reach(t.residues(), p);
    for (std::uint64_t k = 0; k < p; ++k) {
      for (std::size_t i = 0; i <= n; ++i) CHECK(reach.reachable(i, k) == (t.at(i, k) > 0));
      const auto expected = testing_support::naive_bin(items, p, k);
      std::vector<std::uint64_t> got;
      const auto [visited, complete] = reach.for_each_mask(k, ~std::uint64_t{0}, [&](std::uint64_t m) { got.push_back(m); });
      CHECK(got == expected);
      CHECK(visited == expected.size());
      CHECK(complete);
      if (expected.size() >= 2) {
        const auto [part, whole] = reach.for_each_mask(k, expected.size() - 1, [](std::uint64_t) {});
        CHECK(part == expected.size() - 1);
        CHECK_FALSE(whole);
      }
    }
  }
}

TEST_CASE("saturated bin sizes") {
  Rng rng(41);
  for (int round = 0; round < 40; ++round) {
    const auto items = testing_support::random_items(rng, 1 + rng.below(20), 30);
    const std::uint64_t p = 1 + rng.below(300);
    const auto t = build_table<std::uint64_t>(items, p);
    const auto sizes = saturated_bin_sizes(t.residues(), p);
    for (std::uint64_t k = 0; k < p; ++k) CHECK(sizes[k] == t.bin_size(k));
  }
  const std::vector<std::uint64_t> ones(40, 1);
  const auto big = saturated_bin_sizes(ones, 2);
  CHECK(big[0] == ~std::uint32_t{0});
  CHECK(big[1] == ~std::uint32_t{0});
  const std::vector<std::uint64_t> few(33, 0);
  CHECK(saturated_bin_sizes(few, 3)[0] == ~std::uint32_t{0});
  CHECK(saturated_bin_sizes(std::vector<std::uint64_t>(31, 0), 3)[0] == std::uint32_t{1} << 31U);
}
