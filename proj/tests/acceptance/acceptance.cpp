// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "repsum/cli.hpp"
#include "repsum/costmodel.hpp"
#include "repsum/dpbins.hpp"
#include "repsum/oracles.hpp"
#include "repsum/pigeonhole.hpp"
#include "repsum/solvers.hpp"
#include "repsum/statslab.hpp"

using namespace repsum;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail << "first failure: " << what << "; ";
    pass = pass && ok;
  }
};

Items random_items(Rng& rng, std::size_t n, unsigned bits) {
  std::vector<Natural> v;
  for (std::size_t i = 0; i < n; ++i) v.push_back(rng.between(Natural(1), pow2(bits) - 1));
  return Items(std::move(v));
}

Natural random_subset_sum(Rng& rng, const Items& items) {
  Natural s = 0;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (rng.below(2) == 1) s += items[i];
  }
  return s;
}

SolverBudget seeded(std::uint64_t seed) {
  SolverBudget b;
  b.seed = seed;
  return b;
}

std::string describe(const ProblemInstance& inst) { return std::string(inst.name()) + " n=" + std::to_string(inst.items().size()); }

// 1 -------------------------------------------------------------------------

void unranking(Outcome& v) {
  Rng rng(1001);
  std::uint64_t checked = 0;
  for (int config = 0; config < 500; ++config) {
    const std::size_t n = 1 + rng.below(16);
    const auto items = random_items(rng, n, static_cast<unsigned>(2 * n));
    const std::uint64_t p = 1 + rng.below(64);
    const auto table = build_table<std::uint64_t>(items, p);
    for (std::uint64_t k = 0; k < p; ++k) {
      const auto expected = brute_bin(items, p, k);
      const BinRef<std::uint64_t> bin(table, k);
      bool same = bin.size() == expected.size();
      for (std::uint64_t i = 1; same && i <= bin.size(); ++i) same = unrank(bin, i) == expected[i - 1];
      v.require(same, "config " + std::to_string(config) + " bin " + std::to_string(k));
      checked += expected.size();
    }
  }
  v.detail << "500 configurations, " << checked << " subsets unranked";
}

// 2 -------------------------------------------------------------------------

ProblemInstance random_instance(const std::string& variant, Rng& rng) {
  const bool plant = rng.below(2) == 1;
  if (variant == "pigeonhole_equal") {
    const std::size_t n = 2 + rng.below(13);
    const std::uint64_t cap = ((std::uint64_t{1} << n) - 2) / n;
    std::vector<Natural> v;
    for (std::size_t i = 0; i < n; ++i) v.push_back(Natural(1 + rng.below(cap)));
    return ProblemInstance(Items(std::move(v)), PigeonholeEqualSums{});
  }
  const std::size_t n = 1 + rng.below(14);
  const unsigned bits = 1 + static_cast<unsigned>(rng.below(2 * n));
  const auto items = random_items(rng, n, bits);
  const Natural W = items.total();
  if (variant == "subset_sum") return ProblemInstance(items, SubsetSum{plant ? random_subset_sum(rng, items) : rng.below(W + 1)});
  if (variant == "two_subset_sum") {
    Natural m = plant ? random_subset_sum(rng, items) + random_subset_sum(rng, items) : rng.below(2 * W);
    if (m == 0 || m >= 2 * W) m = 1;
    return ProblemInstance(items, TwoSubsetSum{m});
  }
  if (variant == "equal_sums") return ProblemInstance(items, EqualSums{});
  if (variant == "shifted_sums") {
    Natural s = 0;
    if (plant) {
      const Natural a = random_subset_sum(rng, items), b = random_subset_sum(rng, items);
      s = a >= b ? a - b : b - a;
    } else {
      s = rng.below(W);
    }
    return ProblemInstance(items, ShiftedSums{s >= W ? Natural(0) : s});
  }
  if (variant == "modular_subset_sum") {
    const Natural q = rng.between(Natural(2), pow2(bits) + 1);
    const Natural m = (plant ? random_subset_sum(rng, items) : rng.below(W + 1)) % q;
    return ProblemInstance(items, ModularSubsetSum{m, q});
  }
  if (variant == "pigeonhole_modular") {
    const Natural q = rng.between(Natural(1), pow2(static_cast<unsigned>(n)) - 1);
    return ProblemInstance(items, PigeonholeModularEqualSums{q});
  }
  throw std::logic_error("unknown variant " + variant);
}

std::vector<Algorithm> exact_solvers(const std::string& variant) {
  if (variant == "subset_sum") return {Algorithm::Mitm, Algorithm::Rep};
  if (variant == "two_subset_sum") return {Algorithm::Dispatcher};
  if (variant == "equal_sums" || variant == "shifted_sums") return {Algorithm::Dispatcher, Algorithm::Mitm};
  if (variant == "modular_subset_sum") return {Algorithm::Mitm};
  if (variant == "pigeonhole_equal") return {Algorithm::Pigeonhole, Algorithm::Dispatcher};
  return {Algorithm::Pigeonhole};
}

void equivalence(Outcome& v) {
  const std::vector<std::string> variants{"subset_sum",   "two_subset_sum",     "equal_sums",       "shifted_sums",
                                          "modular_subset_sum", "pigeonhole_equal", "pigeonhole_modular"};
  Rng root(2002);
  std::uint64_t solves = 0;
  for (std::size_t vi = 0; vi < variants.size(); ++vi) {
    const auto& variant = variants[vi];
    Rng rng = root.split(vi);
    std::uint64_t solvable = 0;
    for (int round = 0; round < 1000; ++round) {
      const auto inst = random_instance(variant, rng);
      const auto truth = brute_solve(inst, BruteOptions{.ratios = false});
      solvable += truth.solvable ? 1 : 0;
      if (truth.solvable) v.require(verify(inst, *truth.witness), "brute witness " + describe(inst));
      for (const auto algorithm : exact_solvers(variant)) {
        const auto out = solve(inst, algorithm, seeded(rng.next_u64()));
        ++solves;
        const auto expected = truth.solvable ? repsum::Verdict::Found : repsum::Verdict::NotFound;
        v.require(out.verdict == expected,
                  std::string(algorithm_name(algorithm)) + " verdict on " + describe(inst) + " round " + std::to_string(round));
        if (out.found()) v.require(verify(inst, *out.solution), "witness of " + describe(inst));
      }
      if (variant == "equal_sums" || variant == "shifted_sums") {
        const auto rep = solve(inst, Algorithm::Rep, seeded(rng.next_u64()));
        ++solves;
        v.require(rep.verdict != repsum::Verdict::NotFound, "rep never certifies absence");
        v.require(!rep.found() || (truth.solvable && verify(inst, *rep.solution)), "rep witness on " + describe(inst));
      }
    }
    v.detail << variant << " 1000 (" << solvable << " solvable); ";
  }
  v.detail << solves << " solver runs";
}

// 3 -------------------------------------------------------------------------

void pigeonhole(Outcome& v) {
  std::uint64_t count = 0;
  const auto check_modular = [&](const Items& items, const Natural& q) {
    const ProblemInstance inst(items, PigeonholeModularEqualSums{q});
    v.require(verify(inst, solve_pigeonhole_modular(items, q).pair), "modular n=" + std::to_string(items.size()));
    v.require(verify(inst, pigeonhole_mitm_check(items, q)), "mitm check n=" + std::to_string(items.size()));
    ++count;
  };
  const auto check_equal = [&](const Items& items) {
    v.require(verify(ProblemInstance(items, PigeonholeEqualSums{}), solve_pigeonhole_equal(items).pair),
              "equal n=" + std::to_string(items.size()));
    ++count;
  };

  // every non-decreasing item vector with W < 2^n - 1, n <= 6
  for (std::size_t n = 1; n <= 6; ++n) {
    const std::uint64_t limit = (std::uint64_t{1} << n) - 1;
    std::vector<std::uint64_t> a(n, 1);
    const std::function<void(std::size_t, std::uint64_t, std::uint64_t)> rec = [&](std::size_t i, std::uint64_t lo, std::uint64_t sum) {
      if (i == n) {
        std::vector<Natural> v2(a.begin(), a.end());
        check_equal(Items(std::move(v2)));
        return;
      }
      for (std::uint64_t x = lo; sum + x * (n - i) < limit; ++x) {
        a[i] = x;
        rec(i + 1, x, sum + x);
      }
    };
    rec(0, 1, 0);
  }
  // every modulus q <= 2^n - 1 for n <= 12, items drawn per modulus
  Rng rng(3003);
  for (std::size_t n = 1; n <= 12; ++n) {
    for (std::uint64_t q = 1; q < (std::uint64_t{1} << n); ++q) check_modular(random_items(rng, n, static_cast<unsigned>(n + 4)), q);
    for (int round = 0; round < 100; ++round) {
      const std::uint64_t cap = ((std::uint64_t{1} << n) - 2) / n;
      if (cap == 0) break;
      std::vector<Natural> items;
      for (std::size_t i = 0; i < n; ++i) items.push_back(Natural(1 + rng.below(cap)));
      check_equal(Items(std::move(items)));
    }
  }
  const std::uint64_t exhaustive = count;
  for (int round = 0; round < 500; ++round) {
    const std::size_t n = 1 + rng.below(20);
    const auto items = random_items(rng, n, 40);
    check_modular(items, rng.between(Natural(1), pow2(static_cast<unsigned>(n)) - 1));
    if (n >= 2) {
      const std::uint64_t cap = ((std::uint64_t{1} << n) - 2) / n;
      std::vector<Natural> small;
      for (std::size_t i = 0; i < n; ++i) small.push_back(Natural(1 + rng.below(cap)));
      check_equal(Items(std::move(small)));
    }
  }
  v.detail << exhaustive << " exhaustive-sweep instances, " << count - exhaustive << " random";
}

// 4 -------------------------------------------------------------------------

void cost_model(Outcome& v) {
  const auto close = [&](double got, double want, double tol, const std::string& what) {
    v.require(std::abs(got - want) <= tol, what);
    v.detail << what << "=" << got << " ";
  };
  const auto q = curve_max(CurveKind::QuantumShifted, 0.0001);
  close(q.gamma, 0.504, 1e-3, "max_gamma");
  close(q.l, 0.809, 5e-3, "argmax");
  const auto& c = crossovers();
  close(c.quantum_l1, 0.190, 1e-3, "l1");
  close(c.quantum_l2, 0.809, 1e-3, "l2");
  close(curve_max(CurveKind::ClassicalShifted, 0.0001).gamma, 0.773, 1e-3, "classical_max");
  close(c.classical_l1, 0.227, 1e-3, "classical_l1");
  close(c.classical_l2, 0.773, 1e-3, "classical_l2");
  close(c.equal_min_l1, 0.273, 1e-3, "min_l1");
  close(c.equal_min_l2, 0.809, 1e-3, "min_l2");
}

// 5 -------------------------------------------------------------------------

void scaling(Outcome& v) {
  cli::RunConfig config;
  config.seed = 5005;
  const auto slope_of = [&](const std::string& variant, const std::vector<std::string>& algos) {
    cli::BenchOptions b;
    b.variant = variant;
    b.n_min = 24;
    b.n_max = 36;
    b.n_step = 2;
    b.algorithms = algos;
    b.reps = 15;
    const auto rows = cli::run_bench(config, b);
    for (const auto& name : algos) {
      std::vector<cli::BenchRow> own;
      for (const auto& r : rows) {
        if (r.algorithm == name) {
          own.push_back(r);
          v.require(r.flag.empty() && r.found_rate == 1.0, variant + "/" + name + " n=" + std::to_string(r.n) + " incomplete");
        }
      }
      const double s = cli::log2_slope(own);
      v.require(std::abs(s - 0.5) <= 0.1, variant + "/" + name + " slope");
      v.detail << variant << "/" << name << " slope=" << s << " ";
    }
  };
  slope_of("subset_sum", {"mitm", "rep"});
  slope_of("pigeonhole_equal", {"pigeonhole"});
}

// 6 -------------------------------------------------------------------------

void statistics(Outcome& v) {
  constexpr std::uint64_t trials = 400;
  Rng rng(6006);
  std::vector<StatReport> reports;
  const auto dense = random_items(rng, 16, 32);
  reports.push_back(bin_mean_check(dense, 1.0 / 3.0, trials, 11));
  reports.push_back(bin_mean_check(dense, 0.5, trials, 12));
  reports.push_back(bin_product_check(dense, 0, 1.0 / 3.0, trials, 13));
  reports.push_back(bin_product_check(dense, random_subset_sum(rng, dense) % dense.total(), 0.5, trials, 14));

  // a planted pair {1..5} vs {6..10}
  std::vector<Natural> small;
  for (int i = 0; i < 14; ++i) small.push_back(rng.between(Natural(1), Natural(1U << 14U)));
  Natural diff = 0;
  for (int i = 0; i < 4; ++i) diff += small[i] - small[5 + i];
  small[9] = diff + small[4];
  if (small[9] <= 0) {
    small[4] += 1 - small[9];
    small[9] = 1;
  }
  const Items planted(small);
  const auto sizes = brute_solution_sizes(planted, 0);
  v.require(sizes.has_value(), "planted pair exists");
  const double l = static_cast<double>(sizes->first) / 14.0;
  reports.push_back(value_hash_check(planted, 0, l, 0.2, trials, 15));
  reports.push_back(value_hash_check(planted, 0, l, 1.0 - l + 0.05, trials, 16));

  reports.push_back(birthday_sim(100, 1000, 10, 30, trials, 17));
  reports.push_back(birthday_sim(1000, 1000, 50, 100, trials, 18));
  reports.push_back(split_check(15, 0.6, trials, 19));
  reports.push_back(split_check(12, 0.5, trials, 20));
  reports.push_back(fact1_check());
  for (const auto& r : reports) {
    v.require(r.pass, r.quantity);
    v.detail << r.quantity << (r.pass ? ":ok " : ":FAIL ");
  }
}

// 7 -------------------------------------------------------------------------

bool ternary_solvable(const std::vector<std::uint64_t>& a, std::uint64_t m) {
  const std::size_t n = a.size();
  std::vector<std::uint8_t> e(n, 0);
  std::uint64_t sum = 0;
  while (true) {
    if (sum == m) return true;
    std::size_t i = 0;
    while (i < n && e[i] == 2) {
      sum -= 2 * a[i];
      e[i++] = 0;
    }
    if (i == n) return false;
    ++e[i];
    sum += a[i];
  }
}

void reductions(Outcome& v) {
  Rng rng(7007);
  std::uint64_t solvable = 0;
  for (int round = 0; round < 500; ++round) {
    const std::size_t n = 1 + rng.below(12);
    std::vector<std::uint64_t> raw;
    for (std::size_t i = 0; i < n; ++i) raw.push_back(1 + rng.below(std::uint64_t{1} << (1 + rng.below(n + 4))));
    const Items items(std::vector<Natural>(raw.begin(), raw.end()));
    const Natural W = items.total();
    const Natural m = 1 + rng.below(2 * W - 1);
    const ProblemInstance inst(items, TwoSubsetSum{m});
    const bool truth = ternary_solvable(raw, to_u64(m));
    solvable += truth ? 1 : 0;
    const auto red = reduce_two_subset_to_shifted(items, m);
    std::optional<Multiplicities> found = red.immediate;
    if (!found) {
      const auto& shifted = *red.shifted;
      const auto out = solve_shifted(shifted.items(), std::get<ShiftedSums>(shifted.variant()).shift, seeded(rng.next_u64()));
      v.require(out.verdict != repsum::Verdict::Inconclusive, "dispatcher inconclusive");
      if (out.found()) {
        v.require(verify(shifted, *out.solution), "shifted witness");
        found = red.back_map(std::get<SubsetPair>(*out.solution));
      }
    }
    v.require(found.has_value() == truth, "solvability round " + std::to_string(round));
    if (found) v.require(verify(inst, Solution(*found)), "back-mapped multiplicities round " + std::to_string(round));
  }
  v.detail << "500 instances, " << solvable << " solvable";
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
      {"1 unranking oracle", unranking},       {"2 solver/oracle equivalence", equivalence},
      {"3 pigeonhole totality", pigeonhole},   {"4 cost model numbers", cost_model},
      {"5 desk-scale scaling", scaling},       {"6 statistical checks", statistics},
      {"7 two-subset reduction", reductions}};
  int failures = 0;
  for (const auto& [name, run] : criteria) {
    Outcome v;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      run(v);
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail << "exception: " << e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << (v.pass ? "PASS" : "FAIL") << "  " << name << "  [" << secs << " s]  " << v.detail.str() << std::endl;
    failures += v.pass ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}
