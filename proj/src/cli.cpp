#include "repsum/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>

#include "repsum/costmodel.hpp"
#include "repsum/dpbins.hpp"
#include "repsum/errors.hpp"
#include "repsum/instance_io.hpp"
#include "repsum/numtheory.hpp"
#include "repsum/oracles.hpp"
#include "repsum/statslab.hpp"

namespace repsum::cli {

namespace {

Json stamp(const RunConfig& config) { return Json{{"seed", config.seed}, {"version", std::string(kVersion)}}; }

/// Runs `body` against the configured output (file or `out`) and maps
/// exceptions to exit codes.
int run_guarded(const RunConfig& config, std::ostream& out, std::ostream& err,
                const std::function<int(std::ostream&)>& body) {
  try {
    if (config.out.empty()) return body(out);
    std::ofstream file(config.out);
    if (!file) throw Error("cannot write " + config.out);
    return body(file);
  } catch (const ResourceLimit& e) {
    err << "resource limit: " << e.what() << '\n';
    return kResource;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kError;
  } catch (const Json::exception& e) {
    err << "error: " << e.what() << '\n';
    return kError;
  } catch (const std::logic_error& e) {
    err << "internal error: " << e.what() << '\n';
    return kError;
  }
}

Natural random_item(unsigned bits, Rng& rng) { return rng.between(Natural(1), pow2(bits) - 1); }

std::vector<Natural> random_items(std::size_t n, unsigned bits, Rng& rng) {
  std::vector<Natural> v;
  v.reserve(n);
  for (std::size_t i = 0; i < n; ++i) v.push_back(random_item(bits, rng));
  return v;
}

std::vector<std::uint32_t> random_indices(std::size_t n, std::size_t count, Rng& rng) {
  std::vector<std::uint32_t> idx(n);
  std::iota(idx.begin(), idx.end(), 1U);
  for (std::size_t i = 0; i < count; ++i) std::swap(idx[i], idx[i + rng.below(n - i)]);
  idx.resize(count);
  return idx;
}

std::size_t planted_size(double l, std::size_t n, std::size_t minimum) {
  if (!(l > 0.0 && l <= 1.0)) throw InvalidParameter("plant ratio must lie in (0, 1]");
  const auto size = static_cast<std::size_t>(std::llround(l * static_cast<double>(n)));
  if (size < minimum) {
    throw InvalidParameter("plant infeasible: l n = " + std::to_string(size) + " < " + std::to_string(minimum));
  }
  return size;
}

Natural sum_of(const std::vector<Natural>& v, const std::vector<std::uint32_t>& idx) {
  Natural s = 0;
  for (auto i : idx) s += v[i - 1];
  return s;
}

/// Disjoint S1, S2 of total size `size` with Sigma(S1) = Sigma(S2) + shift,
/// obtained by overwriting one item.
SubsetPair plant_pair(std::vector<Natural>& v, std::size_t size, const Natural& shift, Rng& rng) {
  auto idx = random_indices(v.size(), size, rng);
  const std::size_t half = (size + 1) / 2;
  std::vector<std::uint32_t> s1(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(half));
  std::vector<std::uint32_t> s2(idx.begin() + static_cast<std::ptrdiff_t>(half), idx.end());
  const std::uint32_t i = s1.front();
  const Natural rest = sum_of(v, s1) - v[i - 1];
  const Natural want = sum_of(v, s2) + shift - rest;
  if (want >= 1) {
    v[i - 1] = want;
  } else {
    const std::uint32_t j = s2.front();
    v[j - 1] = sum_of(v, s1) - shift - (sum_of(v, s2) - v[j - 1]);
  }
  return SubsetPair{Subset(s1), Subset(s2)};
}

unsigned pigeonhole_bits(std::size_t n) {
  unsigned bits = 0;
  const Natural cap = pow2(static_cast<unsigned>(n)) - 1;
  while (Natural(n) * (pow2(bits + 1) - 1) < cap) ++bits;
  return bits;
}

void write_csv_value(std::ostream& out, double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  out << buf;
}

}  // namespace

Format parse_format(std::string_view name) {
  if (name == "json") return Format::Json;
  if (name == "csv") return Format::Csv;
  if (name == "human") return Format::Human;
  throw InvalidParameter("unknown format: " + std::string(name));
}

SolverBudget RunConfig::budget() const {
  SolverBudget b;
  b.seed = seed;
  if (budget_samples) b.sample_cap = *budget_samples;
  b.repeat_cap = budget_repeats;
  if (time_cap_ms) b.time_cap = std::chrono::milliseconds(*time_cap_ms);
  b.validate();
  return b;
}

Generated generate_instance(const std::string& variant, std::size_t n, unsigned bits,
                            std::optional<double> plant, Rng& rng) {
  if (n < 1) throw InvalidParameter("n must be >= 1");
  if (bits < 1) throw InvalidParameter("bits must be >= 1");
  auto v = random_items(n, bits, rng);
  const auto make = [&](Variant var, std::optional<Solution> witness) {
    Generated g{ProblemInstance(Items(v), std::move(var)), std::move(witness)};
    if (g.witness && !verify(g.instance, *g.witness)) throw std::logic_error("planted witness does not verify");
    return g;
  };

  if (variant == "subset_sum") {
    if (!plant) return make(SubsetSum{rng.between(Natural(0), Items(v).total())}, std::nullopt);
    const auto idx = random_indices(n, planted_size(*plant, n, 1), rng);
    return make(SubsetSum{sum_of(v, idx)}, SingleSubset{Subset(idx)});
  }
  if (variant == "two_subset_sum") {
    if (!plant) return make(TwoSubsetSum{rng.between(Natural(1), 2 * Items(v).total() - 1)}, std::nullopt);
    // e_i = 1 outside a block of size l n, and 0 or 2 alternately inside it
    const auto idx = random_indices(n, planted_size(*plant, n, 1), rng);
    Multiplicities m{std::vector<std::uint8_t>(n, 1)};
    for (std::size_t k = 0; k < idx.size(); ++k) m.e[idx[k] - 1] = k % 2 == 0 ? 2 : 0;
    Natural target = 0;
    for (std::size_t i = 0; i < n; ++i) target += v[i] * m.e[i];
    return make(TwoSubsetSum{target}, m);
  }
  if (variant == "equal_sums" || variant == "shifted_sums") {
    const bool shifted = variant == "shifted_sums";
    if (!plant) {
      if (!shifted) return make(EqualSums{}, std::nullopt);
      return make(ShiftedSums{rng.between(Natural(0), Items(v).total() - 1)}, std::nullopt);
    }
    const Natural shift = shifted ? random_item(bits, rng) : Natural(0);
    auto pair = plant_pair(v, planted_size(*plant, n, 2), shift, rng);
    if (!shifted) return make(EqualSums{}, pair);
    return make(ShiftedSums{shift}, pair);
  }
  if (variant == "pigeonhole_equal" || variant == "pigeonhole_modular") {
    if (plant) throw InvalidParameter("pigeonhole instances are always solvable; plant does not apply");
    if (n > 63) throw InvalidParameter("pigeonhole instances need n <= 63");
    if (variant == "pigeonhole_equal") {
      if (Natural(n) * (pow2(bits) - 1) >= pow2(static_cast<unsigned>(n)) - 1) {
        throw InvalidParameter("pigeonhole_equal needs n (2^bits - 1) < 2^n - 1; use bits <= " +
                               std::to_string(pigeonhole_bits(n)));
      }
      return make(PigeonholeEqualSums{}, std::nullopt);
    }
    const Natural q = rng.between(n > 1 ? pow2(static_cast<unsigned>(n - 1)) : Natural(1),
                                  pow2(static_cast<unsigned>(n)) - 1);
    return make(PigeonholeModularEqualSums{q}, std::nullopt);
  }
  if (variant == "modular_subset_sum" || variant == "modular_shifted_sums") {
    if (bits < 2) throw InvalidParameter("modular variants need bits >= 2");
    const Natural q = rng.between(pow2(bits - 1), pow2(bits) - 1);
    if (variant == "modular_subset_sum") {
      if (!plant) return make(ModularSubsetSum{rng.below(q), q}, std::nullopt);
      const auto idx = random_indices(n, planted_size(*plant, n, 1), rng);
      return make(ModularSubsetSum{mod_floor(sum_of(v, idx), q), q}, SingleSubset{Subset(idx)});
    }
    if (!plant) return make(ModularShiftedSums{rng.below(q), q}, std::nullopt);
    const auto size = planted_size(*plant, n, 2);
    const auto idx = random_indices(n, size, rng);
    std::vector<std::uint32_t> s1(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>((size + 1) / 2));
    std::vector<std::uint32_t> s2(idx.begin() + static_cast<std::ptrdiff_t>((size + 1) / 2), idx.end());
    const Natural shift = mod_floor(sum_of(v, s1) - sum_of(v, s2), q);
    return make(ModularShiftedSums{shift, q}, SubsetPair{Subset(s1), Subset(s2)});
  }
  throw InvalidParameter("unknown variant: " + variant);
}

int cmd_gen(const RunConfig& config, const GenOptions& options, std::ostream& out, std::ostream& err) {
  return run_guarded(config, out, err, [&](std::ostream& o) {
    Rng rng(config.seed);
    const auto g = generate_instance(options.variant, options.n, options.bits, options.plant, rng);
    if (g.witness && config.out.empty()) throw InvalidParameter("planted instances need --out for the witness file");
    Json j = to_json(g.instance);
    j["meta"] = stamp(config);
    o << j.dump(2) << '\n';
    if (g.witness) {
      std::ofstream w(witness_path(config.out));
      if (!w) throw Error("cannot write witness file");
      Json wj = stamp(config);
      wj["solution"] = to_json(*g.witness);
      if (options.plant) wj["plant"] = *options.plant;
      w << wj.dump(2) << '\n';
    }
    return static_cast<int>(kFound);
  });
}

int cmd_solve(const RunConfig& config, const SolveOptions& options, std::ostream& out, std::ostream& err) {
  return run_guarded(config, out, err, [&](std::ostream& o) {
    const auto instance = load_instance(options.path);
    const auto algorithm = parse_algorithm(options.algorithm);
    const auto outcome = solve(instance, algorithm, config.budget());
    switch (config.format) {
      case Format::Json: {
        Json j = stamp(config);
        j["instance"] = options.path;
        j["variant"] = std::string(instance.name());
        j["outcome"] = to_json(outcome);
        o << j.dump(2) << '\n';
        break;
      }
      case Format::Csv:
        o << "verdict,algorithm,solution,seed\n"
          << verdict_name(outcome.verdict) << ',' << outcome.trace.algorithm << ",\""
          << (outcome.solution ? to_string(*outcome.solution) : "") << "\"," << config.seed << '\n';
        break;
      case Format::Human:
        o << verdict_name(outcome.verdict) << " via " << outcome.trace.algorithm;
        if (outcome.solution) o << ": " << to_string(*outcome.solution);
        o << " (seed " << config.seed << ")\n";
        break;
    }
    switch (outcome.verdict) {
      case Verdict::Found: return static_cast<int>(kFound);
      case Verdict::NotFound: return static_cast<int>(kNotFound);
      case Verdict::Inconclusive: return static_cast<int>(kInconclusive);
    }
    return static_cast<int>(kError);
  });
}

std::vector<BenchRow> run_bench(const RunConfig& config, const BenchOptions& options) {
  if (options.reps < 1) throw InvalidParameter("reps must be >= 1");
  if (options.n_step < 1 || options.n_min < 1 || options.n_min > options.n_max) {
    throw InvalidParameter("invalid n range");
  }
  std::vector<Algorithm> algorithms;
  for (const auto& a : options.algorithms) algorithms.push_back(parse_algorithm(a));
  const bool pigeonhole = options.variant == "pigeonhole_equal" || options.variant == "pigeonhole_modular";
  const Rng root(config.seed);
  const SolverBudget base = config.budget();
  std::vector<BenchRow> rows;
  for (std::size_t n = options.n_min; n <= options.n_max; n += options.n_step) {
    const unsigned bits = options.variant == "pigeonhole_equal" ? pigeonhole_bits(n) : static_cast<unsigned>(n);
    std::vector<ProblemInstance> instances;
    for (std::uint64_t r = 0; r < options.reps; ++r) {
      Rng rng = root.split(n).split(r);
      std::optional<double> plant;
      if (!pigeonhole) plant = 0.5;
      instances.push_back(generate_instance(options.variant, n, bits, plant, rng).instance);
    }
    for (std::size_t a = 0; a < algorithms.size(); ++a) {
      BenchRow row{n, options.algorithms[a], options.reps, 0, 0, ""};
      std::vector<double> times;
      std::uint64_t found = 0;
      bool limited = false;
      for (std::uint64_t r = 0; r < options.reps; ++r) {
        SolverBudget budget = base;
        budget.seed = root.split(n).split(r).split(a + 1).next_u64();
        const auto t0 = std::chrono::steady_clock::now();
        try {
          const auto outcome = solve(instances[r], algorithms[a], budget);
          found += outcome.found() ? 1 : 0;
        } catch (const ResourceLimit&) {
          limited = true;
          continue;
        }
        times.push_back(std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count());
      }
      if (times.empty()) {
        row.median_ms = NAN;
      } else {
        std::sort(times.begin(), times.end());
        const std::size_t m = times.size();
        row.median_ms = m % 2 ? times[m / 2] : 0.5 * (times[m / 2 - 1] + times[m / 2]);
      }
      row.found_rate = static_cast<double>(found) / static_cast<double>(options.reps);
      if (limited) {
        row.flag = "resource_limit";
      } else if (options.reps == 1) {
        row.flag = "single_sample";
      }
      rows.push_back(row);
    }
  }
  return rows;
}

double log2_slope(const std::vector<BenchRow>& rows) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t m = 0;
  for (const auto& r : rows) {
    if (!(r.median_ms > 0.0)) continue;
    const double x = static_cast<double>(r.n);
    const double y = std::log2(r.median_ms);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++m;
  }
  if (m < 2) return NAN;
  const double dm = static_cast<double>(m);
  const double den = dm * sxx - sx * sx;
  return den == 0.0 ? NAN : (dm * sxy - sx * sy) / den;
}

int cmd_bench(const RunConfig& config, const BenchOptions& options, std::ostream& out, std::ostream& err) {
  return run_guarded(config, out, err, [&](std::ostream& o) {
    const auto rows = run_bench(config, options);
    std::map<std::string, double> slopes;
    for (const auto& name : options.algorithms) {
      std::vector<BenchRow> own;
      std::copy_if(rows.begin(), rows.end(), std::back_inserter(own), [&](const BenchRow& r) { return r.algorithm == name; });
      slopes[name] = log2_slope(own);
    }
    if (config.format == Format::Json) {
      Json j = stamp(config);
      j["variant"] = options.variant;
      Json arr = Json::array();
      for (const auto& r : rows) {
        arr.push_back({{"n", r.n},
                       {"algo", r.algorithm},
                       {"reps", r.reps},
                       {"median_ms", r.median_ms},
                       {"found_rate", r.found_rate},
                       {"flag", r.flag}});
      }
      j["rows"] = std::move(arr);
      Json js = Json::object();
      for (const auto& [k, v] : slopes) js[k] = v;
      j["log2_slope"] = std::move(js);
      o << j.dump(2) << '\n';
      return static_cast<int>(kFound);
    }
    o << "n,algo,reps,median_ms,found_rate,log2_median_ms,slope,flag,seed,version\n";
    for (const auto& r : rows) {
      o << r.n << ',' << r.algorithm << ',' << r.reps << ',';
      write_csv_value(o, r.median_ms);
      o << ',';
      write_csv_value(o, r.found_rate);
      o << ',';
      write_csv_value(o, std::log2(r.median_ms));
      o << ',';
      write_csv_value(o, slopes[r.algorithm]);
      o << ',' << r.flag << ',' << config.seed << ',' << kVersion << '\n';
    }
    return static_cast<int>(kFound);
  });
}

int cmd_curve(const RunConfig& config, const CurveOptions& options, std::ostream& out, std::ostream& err) {
  return run_guarded(config, out, err, [&](std::ostream& o) {
    const bool figure1 = options.kind == "figure1";
    const CurveKind kind = figure1 ? CurveKind::QuantumShifted : parse_curve(options.kind);
    if (config.format == Format::Csv) {
      if (figure1) {
        emit_figure1(o, options.step);
      } else {
        emit_curve(o, kind, options.step);
      }
      return static_cast<int>(kFound);
    }
    const auto best = curve_max(kind, options.step);
    const auto& c = crossovers();
    if (config.format == Format::Human) {
      o << curve_name(kind) << ": max gamma " << best.gamma << " at l = " << best.l << '\n';
      return static_cast<int>(kFound);
    }
    Json j = stamp(config);
    j["kind"] = options.kind;
    j["step"] = options.step;
    j["max"] = {{"l", best.l}, {"gamma", best.gamma}};
    j["crossovers"] = {{"quantum_l1", c.quantum_l1},     {"quantum_l2", c.quantum_l2},
                       {"classical_l1", c.classical_l1}, {"classical_l2", c.classical_l2},
                       {"equal_min_l1", c.equal_min_l1}, {"equal_min_l2", c.equal_min_l2}};
    Json pts = Json::array();
    for (const auto& p : sample_curve(kind, options.step)) pts.push_back({p.l, p.gamma});
    j["points"] = std::move(pts);
    o << j.dump(2) << '\n';
    return static_cast<int>(kFound);
  });
}

int cmd_stats(const RunConfig& config, const StatsOptions& options, std::ostream& out, std::ostream& err) {
  return run_guarded(config, out, err, [&](std::ostream& o) {
    Rng rng(config.seed);
    const auto& check = options.check;
    const Natural shift = parse_natural(options.shift);
    const auto dense_items = [&] {
      return Items(random_items(options.n, 2 * static_cast<unsigned>(options.n), rng));
    };
    StatReport report;
    Json extra = Json::object();
    if (check == "bin_mean") {
      report = bin_mean_check(dense_items(), options.b, options.trials, config.seed);
    } else if (check == "bin_product") {
      report = bin_product_check(dense_items(), shift, options.b, options.trials, config.seed);
    } else if (check == "value_hash") {
      auto v = random_items(options.n, static_cast<unsigned>(options.n), rng);
      plant_pair(v, planted_size(options.l, options.n, 2), shift, rng);
      const Items items(v);
      const auto sizes = brute_solution_sizes(items, shift);
      if (!sizes) throw std::logic_error("planted instance has no solution");
      const double l = static_cast<double>(sizes->first) / static_cast<double>(options.n);
      extra["planted_l"] = options.l;
      report = value_hash_check(items, shift, l, options.b, options.trials, config.seed);
    } else if (check == "birthday") {
      report = birthday_sim(options.N, options.M, options.K, options.r, options.trials, config.seed);
    } else if (check == "split") {
      report = split_check(options.n, options.l, options.trials, config.seed);
    } else if (check == "fact1") {
      report = fact1_check();
    } else {
      throw InvalidParameter("unknown check: " + check);
    }
    if (config.format == Format::Human) {
      o << report.quantity << ": " << (report.pass ? "pass" : "fail") << " (estimate " << report.estimate
        << ", bound " << report.bound << ", std_error " << report.std_error << ")\n";
    } else {
      Json j = stamp(config);
      j["report"] = to_json(report);
      if (!extra.empty()) j["inputs"] = std::move(extra);
      o << j.dump(2) << '\n';
    }
    return report.pass ? 0 : 1;
  });
}

int cmd_unrank(const RunConfig& config, const UnrankOptions& options, std::ostream& out, std::ostream& err) {
  return run_guarded(config, out, err, [&](std::ostream& o) {
    const auto instance = load_instance(options.path);
    const Natural p = parse_natural(options.p);
    const Natural k = parse_natural(options.k);
    const Natural index = parse_natural(options.index);
    if (p < 1) throw InvalidParameter("p must be >= 1");
    if (k >= p) throw IndexError("k must be < p");
    const auto table = build_any_table(instance.items(), p);
    const Subset s = std::visit(
        [&](const auto& t) {
          using Count = typename std::decay_t<decltype(t)>::count_type;
          const BinRef<Count> bin(t, to_u64(k));
          if constexpr (std::is_same_v<Count, std::uint64_t>) {
            if (!fits_u64(index)) throw IndexError("unrank index out of range");
            return unrank(bin, to_u64(index));
          } else {
            return unrank(bin, index);
          }
        },
        table);
    if (config.format == Format::Json) {
      Json j = stamp(config);
      j["p"] = options.p;
      j["k"] = options.k;
      j["index"] = options.index;
      j["subset"] = std::vector<std::uint32_t>(s.indices().begin(), s.indices().end());
      j["sum"] = to_string(subset_sum(instance.items(), s));
      o << j.dump(2) << '\n';
    } else {
      o << s.to_string() << '\n';
    }
    return static_cast<int>(kFound);
  });
}

}  // namespace repsum::cli
