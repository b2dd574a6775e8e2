#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "repsum/core.hpp"
#include "repsum/dpbins.hpp"
#include "repsum/natural.hpp"
#include "repsum/rng.hpp"

namespace repsum {

struct SolverBudget {
  /// Cap on random samples for the "many solutions" pre-filters.
  std::uint64_t sample_cap = std::uint64_t{1} << 40U;
  /// (p, k) redraws or random splits per call; default ceil(4 n).
  std::optional<std::uint64_t> repeat_cap;
  std::optional<std::chrono::milliseconds> time_cap;
  std::uint64_t seed = 1;
  /// Sampling pre-filter in front of the Shifted-Sums representation solver.
  bool prefilter = true;
  TableOptions table;

  std::uint64_t repeats_for(std::size_t n) const;
  /// Throws InvalidParameter when a cap is zero.
  void validate() const;
};

enum class Verdict { Found, NotFound, Inconclusive };

std::string_view verdict_name(Verdict v);

struct SolveTrace {
  std::string algorithm;
  /// Solution size l*n (integer) at which the solver succeeded or stopped.
  std::optional<unsigned> size;
  std::optional<double> ratio;
  std::optional<double> b;
  std::optional<Natural> prime;
  std::optional<Natural> residue;
  std::uint64_t samples = 0;
  std::uint64_t draws = 0;
  std::uint64_t enumerated = 0;
  std::vector<std::pair<std::string, double>> phase_ms;
  std::vector<std::string> notes;

  void add_phase(std::string name, double ms);
  static SolveTrace named(std::string algorithm) {
    SolveTrace t;
    t.algorithm = std::move(algorithm);
    return t;
  }
};

struct SolveOutcome {
  Verdict verdict = Verdict::Inconclusive;
  std::optional<Solution> solution;
  SolveTrace trace;

  bool found() const { return verdict == Verdict::Found; }
};

/// Items split into X1 (floor(n/2) indices) and X2, 1-based indices.
struct Split {
  std::vector<std::uint32_t> first;
  std::vector<std::uint32_t> second;
};
Split random_balanced_split(std::size_t n, Rng& rng);

// ---------------------------------------------------------------------------
// Subset-Sum

/// Horowitz-Sahni: sorted half sums plus binary search. Complete.
SolveOutcome solve_subset_sum_mitm(const Items& items, const Natural& target,
                                   const SolverBudget& budget = {});

/// Representation technique: random sampling, then a random prime p around
/// 2^(n/2), the count table t_p, and enumeration of T_{p, m mod p}.
/// Every solution lies in that bin, so a fully enumerated bin proves NotFound.
SolveOutcome solve_subset_sum_rep(const Items& items, const Natural& target,
                                  const SolverBudget& budget = {});

/// Modular baseline: meet-in-the-middle on residues mod q.
SolveOutcome solve_modular_subset_sum_mitm(const Items& items, const Natural& target,
                                           const Natural& modulus, const SolverBudget& budget = {});

// ---------------------------------------------------------------------------
// Shifted-Sums: Sigma(S1) = s + Sigma(S2), S1 != S2

enum class SplitSizes {
  /// floor(L/2) solution elements in X1 and the rest in X2, one random split per draw.
  Balanced,
  /// Every distribution of the L elements between X1 and X2 on one split: exhaustive
  /// for disjoint solutions of total size exactly L.
  Exhaustive,
};

/// Meet-in-the-middle for solutions of total size `size` (= l n).
SolveOutcome solve_shifted_mitm(const Items& items, const Natural& shift, unsigned size,
                                const SolverBudget& budget = {},
                                SplitSizes mode = SplitSizes::Balanced);

/// b = 1 - l if l > 1/2, else 1/2.
double shifted_rep_b(double ratio);

/// Representation technique for solutions of total size `size`: random prime
/// p in [2^ceil(bn), 2^(ceil(bn)+1)], random k, collision search between
/// T_{p,k} and T_{p,(k-s) mod p}. Monte Carlo: never returns NotFound.
SolveOutcome solve_shifted_rep(const Items& items, const Natural& shift, unsigned size,
                               const SolverBudget& budget = {});

/// Tries l n = n, n-1, ..., 1, using the representation solver where it is the
/// cheaper of the two classical algorithms and meet-in-the-middle elsewhere.
/// If nothing is found, an exhaustive meet-in-the-middle pass over every size
/// settles the instance, so the verdict is never Inconclusive unless a cap hits.
SolveOutcome solve_shifted(const Items& items, const Natural& shift,
                           const SolverBudget& budget = {});

inline SolveOutcome solve_equal_sums(const Items& items, const SolverBudget& budget = {}) {
  return solve_shifted(items, Natural(0), budget);
}

/// Two-Subset-Sum through the Shifted-Sums reduction; Found carries Multiplicities.
SolveOutcome solve_two_subset_sum(const Items& items, const Natural& target,
                                  const SolverBudget& budget = {});

// ---------------------------------------------------------------------------

enum class Algorithm { Auto, Brute, Mitm, Rep, Dispatcher, Pigeonhole };

std::string_view algorithm_name(Algorithm a);
/// Throws InvalidParameter on unknown names.
Algorithm parse_algorithm(std::string_view name);

/// Front door used by the CLI and the acceptance suite. Picks the solver for the
/// variant; Auto means Dispatcher for pair variants, Rep for Subset-Sum,
/// Pigeonhole for the pigeonhole variants and Mitm for modular Subset-Sum.
SolveOutcome solve(const ProblemInstance& instance, Algorithm algorithm,
                   const SolverBudget& budget = {});

}  // namespace repsum
