#include <iostream>

#include <CLI11.hpp>

#include "repsum/cli.hpp"
#include "repsum/errors.hpp"

namespace {

using namespace repsum::cli;

void add_common(CLI::App* app, RunConfig& config, std::string& format) {
  app->add_option("--seed", config.seed, "master seed");
  app->add_option("--budget-samples", config.budget_samples, "cap on random pre-filter samples");
  app->add_option("--budget-repeats", config.budget_repeats, "cap on (p, k) redraws or random splits");
  app->add_option("--time-cap-ms", config.time_cap_ms, "wall-clock cap per solve");
  app->add_option("--out", config.out, "output file (default stdout)");
  app->add_option("--format", format, "json | csv | human")->check(CLI::IsMember({"json", "csv", "human"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Subset-Sum and Equal-Sums solvers based on representations"};
  app.set_version_flag("--version", std::string(repsum::kVersion));
  app.require_subcommand(1);

  RunConfig config;
  std::string format = "json";
  GenOptions gen;
  SolveOptions solve;
  BenchOptions bench;
  CurveOptions curve;
  StatsOptions stats;
  UnrankOptions unrank;
  std::string bench_format = "csv";
  std::string curve_format = "csv";

  auto* g = app.add_subcommand("gen", "generate a random instance");
  add_common(g, config, format);
  g->add_option("variant", gen.variant)->required();
  g->add_option("--n", gen.n)->required();
  g->add_option("--bits", gen.bits)->required();
  g->add_option("--plant", gen.plant, "planted solution ratio l");

  auto* s = app.add_subcommand("solve", "solve an instance file");
  add_common(s, config, format);
  s->add_option("path", solve.path)->required()->check(CLI::ExistingFile);
  s->add_option("--algo", solve.algorithm, "auto | brute | mitm | rep | dispatcher | pigeonhole");

  auto* b = app.add_subcommand("bench", "time solvers over a range of n");
  add_common(b, config, bench_format);
  b->add_option("--variant", bench.variant);
  b->add_option("--n-min", bench.n_min);
  b->add_option("--n-max", bench.n_max);
  b->add_option("--n-step", bench.n_step);
  b->add_option("--algos", bench.algorithms)->delimiter(',');
  b->add_option("--reps", bench.reps);

  auto* c = app.add_subcommand("curve", "emit an exponent curve");
  add_common(c, config, curve_format);
  c->add_option("kind", curve.kind, "curve kind or figure1");
  c->add_option("--step", curve.step);

  auto* st = app.add_subcommand("stats", "run a statistical check");
  add_common(st, config, format);
  st->add_option("check", stats.check, "bin_mean | bin_product | value_hash | birthday | split | fact1")->required();
  st->add_option("--n", stats.n);
  st->add_option("--b", stats.b);
  st->add_option("--l", stats.l);
  st->add_option("--shift", stats.shift);
  st->add_option("--trials", stats.trials);
  st->add_option("--N", stats.N);
  st->add_option("--M", stats.M);
  st->add_option("--K", stats.K);
  st->add_option("--r", stats.r);

  auto* u = app.add_subcommand("unrank", "I-th element of a bin");
  add_common(u, config, format);
  u->add_option("path", unrank.path)->required()->check(CLI::ExistingFile);
  u->add_option("--p", unrank.p)->required();
  u->add_option("--k", unrank.k)->required();
  u->add_option("--index", unrank.index)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kError;
  }

  auto& out = std::cout;
  auto& err = std::cerr;
  if (*b) {
    config.format = parse_format(bench_format);
    return cmd_bench(config, bench, out, err);
  }
  if (*c) {
    config.format = parse_format(curve_format);
    return cmd_curve(config, curve, out, err);
  }
  config.format = parse_format(format);
  if (*g) return cmd_gen(config, gen, out, err);
  if (*s) return cmd_solve(config, solve, out, err);
  if (*st) return cmd_stats(config, stats, out, err);
  return cmd_unrank(config, unrank, out, err);
}
