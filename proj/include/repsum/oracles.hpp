#pragma once

// Exhaustive reference solvers. Correctness anchors for tests; not fast.

#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "repsum/core.hpp"
#include "repsum/natural.hpp"

namespace repsum {

inline constexpr std::size_t kBruteMaxItems = 26;
inline constexpr std::size_t kBruteRatioMaxItems = 18;
inline constexpr std::size_t kBruteBinMaxItems = 22;
inline constexpr std::size_t kCollisionMaxItems = 20;

struct BruteForceResult {
  bool solvable = false;
  std::optional<Solution> witness;
  /// Largest and smallest |S1| + |S2| over disjoint solution pairs, divided by n.
  /// Only for Equal/Shifted variants with n <= 18.
  std::optional<double> max_ratio;
  std::optional<double> min_ratio;
  std::optional<unsigned> max_size;
  std::optional<unsigned> min_size;
};

struct BruteOptions {
  bool ratios = true;
};

/// Exact verdict for any variant. Throws ResourceLimit when n > 26.
BruteForceResult brute_solve(const ProblemInstance& instance, const BruteOptions& options = {});

/// (max, min) disjoint solution sizes of Sigma(S1) = s + Sigma(S2) by a 3^n scan,
/// nullopt when unsolvable. Throws ResourceLimit when n > 18.
std::optional<std::pair<unsigned, unsigned>> brute_solution_sizes(const Items& items, const Natural& shift);

/// T_{p,k} sorted in chi order. Throws ContractViolation when k >= p, ResourceLimit when n > 22.
std::vector<Subset> brute_bin(const Items& items, const Natural& p, const Natural& k);

/// V = {v : v = Sigma(S1) = Sigma(S2) + s for some S1 != S2}. n <= 20.
std::set<Natural> collision_values(const Items& items, const Natural& shift);

/// Independent modular pigeonhole solver: sorted residue lists of the two halves
/// and a halving search for an interval holding more subsets than residues.
/// Requires 1 <= q <= 2^n - 1 and n <= 40.
SubsetPair pigeonhole_mitm_check(const Items& items, const Natural& q);

}  // namespace repsum
