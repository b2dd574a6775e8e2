#include <doctest.h>

#include <cmath>

#include "repsum/oracles.hpp"
#include "repsum/solvers.hpp"
#include "test_support.hpp"

using namespace repsum;
namespace ts = testing_support;

namespace {

SolverBudget seeded(std::uint64_t seed) {
  SolverBudget b;
  b.seed = seed;
  return b;
}

Items powers_of_two(std::size_t n) {
  std::vector<Natural> v;
  for (std::size_t i = 0; i < n; ++i) v.push_back(pow2(static_cast<unsigned>(i)));
  return Items(v);
}

}  // namespace

TEST_CASE("subset-sum meet in the middle examples") {
  const Items items{3, 5, 7};
  auto r = solve_subset_sum_mitm(items, 12);
  REQUIRE(r.found());
  CHECK(std::get<SingleSubset>(*r.solution).set == Subset{2, 3});
  r = solve_subset_sum_mitm(items, 0);
  REQUIRE(r.found());
  CHECK(std::get<SingleSubset>(*r.solution).set == Subset{});
  CHECK(solve_subset_sum_mitm(Items{2, 4}, 5).verdict == Verdict::NotFound);
}

TEST_CASE("subset-sum representation examples") {
  const Items items{3, 5, 7};
  auto r = solve_subset_sum_rep(items, 15, seeded(1));
  REQUIRE(r.found());
  CHECK(std::get<SingleSubset>(*r.solution).set == Subset{1, 2, 3});
  r = solve_subset_sum_rep(items, 12, seeded(2));
  REQUIRE(r.found());
  CHECK(std::get<SingleSubset>(*r.solution).set == Subset{2, 3});
  CHECK(solve_subset_sum_rep(Items{2, 4}, 5, seeded(3)).verdict == Verdict::NotFound);
}

TEST_CASE("subset-sum solvers agree with the definition") {
  Rng rng(101);
  for (int round = 0; round < 300; ++round) {
    const std::size_t n = 1 + rng.below(14);
    const auto items = ts::random_items(rng, n, static_cast<unsigned>(2 * n));
    const Natural m = rng.below(items.total() + 1);
    const bool truth = ts::naive_subset_exists(items, m);
    const auto a = solve_subset_sum_mitm(items, m);
    const auto b = solve_subset_sum_rep(items, m, seeded(round));
    CHECK(a.found() == truth);
    CHECK(b.found() == truth);
    if (!truth) {
      CHECK(a.verdict == Verdict::NotFound);
      CHECK(b.verdict != Verdict::Found);
    }
    const ProblemInstance inst(items, SubsetSum{m});
    if (a.found()) CHECK(verify(inst, *a.solution));
    if (b.found()) CHECK(verify(inst, *b.solution));
  }
}

TEST_CASE("representation solver handles values above 64 bits") {
  std::vector<Natural> v;
  Rng rng(4);
  for (int i = 0; i < 12; ++i) v.push_back(pow2(90) + rng.below(pow2(80)));
  const Items items(v);
  const Natural m = v[1] + v[4] + v[9];
  const auto r = solve_subset_sum_rep(items, m, seeded(9));
  REQUIRE(r.found());
  CHECK(verify(ProblemInstance(items, SubsetSum{m}), *r.solution));
  CHECK(solve_subset_sum_mitm(items, m).found());
}

TEST_CASE("modular subset-sum baseline") {
  Rng rng(19);
  for (int round = 0; round < 150; ++round) {
    const auto items = ts::random_items(rng, 1 + rng.below(10), 12);
    const Natural q = 2 + rng.below(5000);
    const Natural m = rng.below(q);
    const auto r = solve_modular_subset_sum_mitm(items, m, q);
    CHECK(r.found() == ts::naive_subset_exists(items, m, q));
    if (r.found()) CHECK(verify(ProblemInstance(items, ModularSubsetSum{m, q}), *r.solution));
  }
}

TEST_CASE("shifted meet in the middle examples") {
  const ProblemInstance inst(Items{1, 2, 4}, ShiftedSums{1});
  const auto r = solve_shifted(inst.items(), 1, seeded(1));
  REQUIRE(r.found());
  CHECK(verify(inst, *r.solution));

  const auto eq = solve_shifted_mitm(Items{1, 2, 3}, 0, 3, seeded(2), SplitSizes::Exhaustive);
  REQUIRE(eq.found());
  const auto pair = canonicalize(std::get<SubsetPair>(*eq.solution));
  CHECK(((pair.first == Subset{3} && pair.second == Subset{1, 2}) ||
         (pair.first == Subset{1, 2} && pair.second == Subset{3})));

  // no disjoint solution of total size 3 for {1,2,4,8}, s = 0
  CHECK(solve_shifted_mitm(powers_of_two(4), 0, 3, seeded(3), SplitSizes::Exhaustive).verdict ==
        Verdict::NotFound);
}

TEST_CASE("shifted representation examples") {
  const ProblemInstance inst(Items{1, 2, 4}, ShiftedSums{1});
  SolverBudget b = seeded(5);
  b.repeat_cap = 200;
  const auto r = solve_shifted_rep(inst.items(), 1, 2, b);
  REQUIRE(r.found());
  CHECK(verify(inst, *r.solution));

  const auto none = solve_shifted_rep(powers_of_two(4), 0, 2, seeded(6));
  CHECK(none.verdict == Verdict::Inconclusive);
  CHECK(shifted_rep_b(0.3) == doctest::Approx(0.5));
  CHECK(shifted_rep_b(0.75) == doctest::Approx(0.25));
}

TEST_CASE("equal sums never returns the trivial pair") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto r = solve_shifted_rep(Items{5, 5}, 0, 2, seeded(seed));
    if (r.found()) {
      const auto& p = std::get<SubsetPair>(*r.solution);
      CHECK_FALSE(p.first == p.second);
    }
  }
}

TEST_CASE("dispatcher examples") {
  auto r = solve_equal_sums(Items{1, 2, 3}, seeded(1));
  REQUIRE(r.found());
  CHECK(verify(ProblemInstance(Items{1, 2, 3}, EqualSums{}), *r.solution));
  for (std::size_t n : {1U, 4U, 9U}) {
    CHECK(solve_equal_sums(powers_of_two(n), seeded(n)).verdict == Verdict::NotFound);
  }
}

TEST_CASE("dispatcher agrees with the definition on random shifted instances") {
  Rng rng(202);
  for (int round = 0; round < 250; ++round) {
    const std::size_t n = 1 + rng.below(10);
    const auto items = ts::random_items(rng, n, static_cast<unsigned>(n + 1));
    const Natural s = round % 3 == 0 ? Natural(0) : rng.below(items.total());
    const auto r = solve_shifted(items, s, seeded(round));
    const bool truth = ts::naive_pair_exists(items, s);
    CHECK(r.verdict == (truth ? Verdict::Found : Verdict::NotFound));
    if (r.found()) CHECK(verify(ProblemInstance(items, ShiftedSums{s}), *r.solution));
  }
}

TEST_CASE("two-subset sum through the reduction") {
  Rng rng(303);
  for (int round = 0; round < 150; ++round) {
    const std::size_t n = 1 + rng.below(8);
    const auto items = ts::random_items(rng, n, 5);
    const Natural m = 1 + rng.below(2 * items.total() - 1);
    const auto r = solve_two_subset_sum(items, m, seeded(round));
    const bool truth = ts::naive_two_subset_exists(items, m);
    CHECK(r.found() == truth);
    if (r.found()) CHECK(verify(ProblemInstance(items, TwoSubsetSum{m}), *r.solution));
    if (!truth) CHECK(r.verdict == Verdict::NotFound);
  }
}

TEST_CASE("front door routing") {
  const ProblemInstance ss(Items{3, 5, 7}, SubsetSum{12});
  CHECK(solve(ss, Algorithm::Auto).found());
  CHECK(solve(ss, Algorithm::Brute).found());
  CHECK(solve(ss, Algorithm::Mitm).found());
  CHECK_THROWS_AS(solve(ss, Algorithm::Pigeonhole), InvalidParameter);

  const ProblemInstance ph(Items{1, 2, 3, 4}, PigeonholeEqualSums{});
  CHECK(solve(ph, Algorithm::Auto).found());
  CHECK(solve(ph, Algorithm::Dispatcher).found());

  const ProblemInstance pm(Items{1, 2, 3, 4}, PigeonholeModularEqualSums{15});
  CHECK(solve(pm, Algorithm::Pigeonhole).found());

  const ProblemInstance ms(Items{10, 20, 33}, ModularShiftedSums{3, 7});
  CHECK(solve(ms, Algorithm::Auto).found() == ts::naive_pair_exists(ms.items(), 3, 7));

  CHECK(parse_algorithm("rep") == Algorithm::Rep);
  CHECK(algorithm_name(Algorithm::Dispatcher) == "dispatcher");
  CHECK_THROWS_AS(parse_algorithm("quantum"), InvalidParameter);
}

TEST_CASE("budget validation and caps") {
  SolverBudget b;
  b.sample_cap = 0;
  CHECK_THROWS_AS(b.validate(), InvalidParameter);
  b.sample_cap = 1;
  b.repeat_cap = 0;
  CHECK_THROWS_AS(b.validate(), InvalidParameter);
  b.repeat_cap = 1;
  CHECK_NOTHROW(b.validate());
  CHECK(SolverBudget{}.repeats_for(10) == 40);
}

TEST_CASE("solves are deterministic given the seed") {
  Rng rng(5);
  const auto items = ts::random_items(rng, 14, 14);
  const auto a = solve_shifted(items, 0, seeded(77));
  const auto b = solve_shifted(items, 0, seeded(77));
  CHECK(a.verdict == b.verdict);
  CHECK(a.solution == b.solution);
}

TEST_CASE("random balanced split puts floor(l n / 2) solution elements in X1 at the hypergeometric rate") {
  // solution block {1..L}; X1 has floor(n/2) elements
  const std::size_t n = 14, L = 8, target = L / 2, m = n / 2;
  const auto binom = [](double a, double b) { return std::tgamma(a + 1) / (std::tgamma(b + 1) * std::tgamma(a - b + 1)); };
  const double exact = binom(L, target) * binom(n - L, m - target) / binom(n, m);
  Rng rng(55);
  const int trials = 20000;
  int hits = 0;
  for (int t = 0; t < trials; ++t) {
    const auto split = random_balanced_split(n, rng);
    CHECK(split.first.size() == m);
    std::size_t inside = 0;
    for (auto i : split.first) inside += i <= L ? 1 : 0;
    hits += inside == target ? 1 : 0;
  }
  const double freq = static_cast<double>(hits) / trials;
  const double sigma = std::sqrt(exact * (1 - exact) / trials);
  CHECK(std::abs(freq - exact) <= 3 * sigma);
}
