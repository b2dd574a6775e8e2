#pragma once

// Command implementations behind the repsum executable. Each command writes its
// artifact to `out` and diagnostics to `err`, and returns the process exit code.

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "repsum/solvers.hpp"

namespace repsum::cli {

enum ExitCode : int {
  kFound = 0,
  kNotFound = 1,
  kInconclusive = 2,
  kError = 3,
  kResource = 4,
};

enum class Format { Json, Csv, Human };
Format parse_format(std::string_view name);

struct RunConfig {
  std::uint64_t seed = 1;
  std::optional<std::uint64_t> budget_samples;
  std::optional<std::uint64_t> budget_repeats;
  std::optional<std::uint64_t> time_cap_ms;
  /// Empty means stdout (gen requires a path for the sidecar witness).
  std::string out;
  Format format = Format::Json;

  SolverBudget budget() const;
};

struct GenOptions {
  std::string variant;
  std::size_t n = 0;
  unsigned bits = 0;
  /// Planted solution ratio l; needs l n >= 2 for pair variants, >= 1 for subset_sum.
  std::optional<double> plant;
};

struct SolveOptions {
  std::string path;
  std::string algorithm = "auto";
};

struct BenchOptions {
  std::string variant = "subset_sum";
  std::size_t n_min = 20;
  std::size_t n_max = 32;
  std::size_t n_step = 2;
  std::vector<std::string> algorithms{"mitm", "rep"};
  std::uint64_t reps = 5;
};

struct CurveOptions {
  /// A curve kind, or "figure1" for the three-column reproduction.
  std::string kind = "quantum_shifted";
  double step = 0.001;
};

struct StatsOptions {
  /// bin_mean | bin_product | value_hash | birthday | split | fact1
  std::string check;
  std::size_t n = 12;
  double b = 1.0 / 3.0;
  double l = 0.5;
  std::string shift = "0";
  std::uint64_t trials = 200;
  std::uint64_t N = 100;
  std::uint64_t M = 1000;
  std::uint64_t K = 10;
  std::uint64_t r = 30;
};

struct UnrankOptions {
  std::string path;
  std::string p;
  std::string k;
  std::string index;
};

int cmd_gen(const RunConfig& config, const GenOptions& options, std::ostream& out, std::ostream& err);
int cmd_solve(const RunConfig& config, const SolveOptions& options, std::ostream& out, std::ostream& err);
int cmd_bench(const RunConfig& config, const BenchOptions& options, std::ostream& out, std::ostream& err);
int cmd_curve(const RunConfig& config, const CurveOptions& options, std::ostream& out, std::ostream& err);
int cmd_stats(const RunConfig& config, const StatsOptions& options, std::ostream& out, std::ostream& err);
int cmd_unrank(const RunConfig& config, const UnrankOptions& options, std::ostream& out, std::ostream& err);

/// Random instance of `variant` with n items of `bits` bits, optionally with a
/// planted solution; the witness is returned alongside.
struct Generated {
  ProblemInstance instance;
  std::optional<Solution> witness;
};
Generated generate_instance(const std::string& variant, std::size_t n, unsigned bits,
                            std::optional<double> plant, Rng& rng);

/// One bench row.
struct BenchRow {
  std::size_t n = 0;
  std::string algorithm;
  std::uint64_t reps = 0;
  double median_ms = 0;
  double found_rate = 0;
  std::string flag;
};

std::vector<BenchRow> run_bench(const RunConfig& config, const BenchOptions& options);

/// Least-squares slope of log2(median_ms) against n.
double log2_slope(const std::vector<BenchRow>& rows);

}  // namespace repsum::cli
