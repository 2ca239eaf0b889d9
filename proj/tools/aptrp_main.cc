// aptrp: command-line front end for the a priori repairman toolkit.
//
// Exit status: 0 success, 1 verification failure, 2 input error.

#include <cmath>
#include <cstdint>
#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "aptrp/bench.h"
#include "aptrp/consecutive.h"
#include "aptrp/generators.h"
#include "aptrp/instance_io.h"
#include "aptrp/latency.h"
#include "aptrp/random.h"
#include "aptrp/reduction.h"
#include "aptrp/scaled_instance.h"
#include "aptrp/solvers.h"
#include "aptrp/verify.h"
#include "json.hpp"

namespace {

using nlohmann::json;
using namespace aptrp;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitInputError = 2;

std::vector<Vertex> ToVector(std::span<const Vertex> order) {
  return {order.begin(), order.end()};
}

NamedInstance LoadInstance(const std::string& path) {
  auto named = ParseInstance(ReadFile(path));
  if (named.instance.root_probability_overridden()) {
    std::cerr << "warning: probability of root " << named.instance.root()
              << " in '" << path << "' was set to 1\n";
  }
  return named;
}

MasterTour DefaultTour(const AprioriInstance& instance) {
  std::vector<Vertex> order{instance.root()};
  for (Vertex v = 0; v < instance.size(); ++v) {
    if (v != instance.root()) order.push_back(v);
  }
  return MasterTour(std::move(order));
}

void Emit(const std::string& out, const std::string& text) {
  if (out.empty() || out == "-") {
    std::cout << text;
  } else {
    WriteFile(out, text);
  }
}

json MergesJson(const std::vector<MergeStep>& merges) {
  json list = json::array();
  for (const auto& m : merges) {
    list.push_back({{"group", m.group},
                    {"first_size", m.first_size},
                    {"second_size", m.second_size},
                    {"before", m.before},
                    {"after_first", m.after_first},
                    {"after_second", m.after_second},
                    {"chosen", m.chosen == RelocateMode::kAfterFirst
                                   ? "after_first"
                                   : "before_second"}});
  }
  return list;
}

json ArtifactsJson(const ReductionArtifacts& a) {
  json doc;
  doc["partition"] = {{"x", a.partition.x}, {"y", a.partition.y}};
  if (a.params) {
    json vertices = json::array();
    for (const auto& s : a.params->vertices) {
      vertices.push_back({{"vertex", s.vertex},
                          {"p", s.prob},
                          {"copies", s.copies},
                          {"q", s.hit_prob},
                          {"p_bar", s.upper_prob}});
    }
    doc["scaling"] = {{"n", a.params->n}, {"p", a.params->p}, {"vertices", vertices}};
  }
  if (a.scaled) {
    json groups = json::array();
    for (const auto& g : a.scaled->groups()) {
      groups.push_back({{"vertex", g.vertex}, {"first_copy", g.first_copy}, {"size", g.size}});
    }
    doc["scaled"] = {{"copies", a.scaled->copy_count()}, {"groups", groups}};
  }
  if (a.uniform_tour) doc["uniform_tour"] = ToVector(a.uniform_tour->order());
  if (a.consecutive_tour) doc["consecutive_tour"] = ToVector(a.consecutive_tour->order());
  doc["merges"] = MergesJson(a.merges);
  doc["x_order"] = a.x_order;
  doc["y_order"] = a.y_order;
  doc["tour"] = a.final_order;
  return doc;
}

struct Common {
  std::string instance;
  std::string tour;
  std::string out;
  std::uint64_t seed = 1;
  std::string solver = "local";
  std::int64_t budget = kDefaultSearchBudget;
};

int RunGen(int n, std::uint64_t seed, const std::string& metric,
           const std::string& probs, const std::string& name, const std::string& out) {
  auto named = GenerateInstance(n, seed, ParseMetricModel(metric),
                                ParseProbabilityModel(probs));
  if (!name.empty()) named.name = name;
  Emit(out, WriteInstance(named));
  return kExitOk;
}

int RunEval(const Common& c, const std::string& method, std::int64_t samples,
            int threads) {
  const auto named = LoadInstance(c.instance);
  const auto& inst = named.instance;
  const MasterTour tour =
      c.tour.empty() ? DefaultTour(inst) : ParseTour(ReadFile(c.tour), inst.size());
  LatencyEstimate estimate;
  if (method == "exact") {
    estimate = ExactElat(inst, tour);
  } else if (method == "brute") {
    estimate = BruteForceElat(inst, tour);
  } else {
    estimate = MonteCarloElat(inst, tour, samples, c.seed, threads);
  }
  json doc = {{"method", ToString(estimate.method)}, {"value", estimate.value}};
  if (estimate.method == EstimateMethod::kMonteCarlo) {
    doc["standard_error"] = estimate.standard_error;
    doc["samples"] = estimate.samples;
    doc["seed"] = c.seed;
  }
  Emit(c.out, doc.dump(2) + "\n");
  return kExitOk;
}

int RunSolve(const Common& c, bool artifacts) {
  const auto named = LoadInstance(c.instance);
  const auto& inst = named.instance;
  const auto& solver = FindSolver(c.solver);
  const auto result = AprioriSolve(inst, MakeUniformSolver(solver, c.seed, c.budget));
  json doc = artifacts ? ArtifactsJson(result.artifacts) : json::object();
  doc["tour"] = ToVector(result.tour.order());
  doc["elat"] = ExactElat(inst, result.tour).value;
  doc["solver"] = solver.name;
  // JSON has no infinity; heuristics report "inf".
  auto number = [](double x) { return std::isinf(x) ? json("inf") : json(x); };
  doc["rho"] = number(solver.rho);
  doc["bound"] = number(ApproximationBound(inst.size(), solver.rho));
  Emit(c.out, doc.dump(2) + "\n");
  return kExitOk;
}

int RunConsec(const Common& c) {
  const auto named = LoadInstance(c.instance);
  const auto& inst = named.instance;
  const auto partition = PartitionXY(inst);
  const auto scaled =
      ScaledInstance::Build(inst, ComputeScalingParams(inst, partition));
  MasterTour input = MasterTour({0});
  if (c.tour.empty()) {
    Rng rng(c.seed);
    std::vector<Vertex> order(scaled.copy_count());
    for (int i = 0; i < scaled.copy_count(); ++i) order[i] = i;
    Shuffle(rng, std::span<Vertex>(order).subspan(1));
    input = MasterTour(std::move(order));
  } else {
    input = ParseTour(ReadFile(c.tour), scaled.copy_count());
    if (input.root() != 0) throw InputError("copy tour must start at copy 0 (the root)");
  }
  const auto result = MakeConsecutive(scaled, input);
  json doc;
  doc["copies"] = scaled.copy_count();
  doc["p"] = scaled.p();
  doc["input"] = ToVector(input.order());
  doc["input_elat"] = ScaledTourElat(scaled, input).value;
  doc["tour"] = ToVector(result.tour.order());
  doc["elat"] = ScaledTourElat(scaled, result.tour).value;
  doc["merges"] = MergesJson(result.merges);
  doc["collapsed"] = CollapseTour(scaled, result.tour);
  Emit(c.out, doc.dump(2) + "\n");
  return kExitOk;
}

int RunVerifyCommand(const std::string& suite, std::uint64_t seed,
                     std::int64_t trials, const std::string& out) {
  VerifyOptions options;
  options.seed = seed;
  options.trials = trials;
  if (!out.empty()) options.artifact_dir = out;
  const auto results = RunVerify(suite, options);
  std::cout << FormatReport(results);
  return AllPassed(results) ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"a priori traveling repairman toolkit"};
  app.require_subcommand(1);

  Common c;
  auto add_common = [&c](CLI::App* sub, bool tour, bool solver) {
    sub->add_option("--instance", c.instance, "instance JSON file")->required();
    if (tour) sub->add_option("--tour", c.tour, "tour JSON file");
    sub->add_option("--seed", c.seed, "random seed");
    sub->add_option("--out", c.out, "output file (default stdout)");
    if (solver) {
      sub->add_option("--solver", c.solver, "uniform solver: brute, nn, local");
      sub->add_option("--budget", c.budget, "local search evaluation budget");
    }
  };

  int gen_n = 10;
  std::string gen_metric = "euclidean-uniform";
  std::string gen_probs = "uniform:0.1:0.9";
  std::string gen_name;
  auto* gen = app.add_subcommand("gen", "generate a random instance");
  gen->add_option("--n", gen_n, "number of vertices including the root")->required();
  gen->add_option("--seed", c.seed, "random seed");
  gen->add_option("--metric", gen_metric, "euclidean-uniform or matrix-shortestpath");
  gen->add_option("--probs", gen_probs, "uniform:A:B or two-tier:HIGH:LOW");
  gen->add_option("--name", gen_name, "instance name");
  gen->add_option("--out", c.out, "output file (default stdout)");

  std::string method = "exact";
  std::int64_t samples = 10000;
  int threads = 1;
  auto* eval = app.add_subcommand("eval", "expected latency of a tour");
  add_common(eval, true, false);
  eval->add_option("--method", method, "exact, brute or mc")
      ->check(CLI::IsMember({"exact", "brute", "mc"}));
  eval->add_option("--samples", samples, "Monte Carlo samples")->check(CLI::Range(2, 1 << 30));
  eval->add_option("--threads", threads, "Monte Carlo threads")->check(CLI::Range(1, 256));

  auto* solve = app.add_subcommand("solve", "run the reduction with a uniform solver");
  add_common(solve, false, true);

  auto* reduce = app.add_subcommand("reduce", "solve and dump every reduction stage");
  add_common(reduce, false, true);

  auto* consec = app.add_subcommand("consec", "make a copy tour consecutive");
  add_common(consec, true, false);

  std::string suite = "all";
  std::int64_t trials = 0;
  auto* verify = app.add_subcommand("verify", "run randomized verification suites");
  verify->add_option("--suite", suite, "suite name or all");
  verify->add_option("--seed", c.seed, "random seed");
  verify->add_option("--trials", trials, "constructions per suite (0 = default)");
  verify->add_option("--out", c.out, "directory for counterexample files");

  std::string config_path;
  BenchConfig bench_config;
  BenchInstanceSpec bench_spec;
  std::string bench_metric = "euclidean-uniform";
  std::string bench_probs = "uniform:0.1:0.9";
  std::vector<std::string> bench_files;
  auto* bench = app.add_subcommand("bench", "benchmark solvers and write CSV");
  bench->add_option("--config", config_path, "bench config JSON");
  auto* bench_n = bench->add_option("--n", bench_spec.n, "generated instance size");
  bench->add_option("--count", bench_spec.count, "generated instances");
  bench->add_option("--metric", bench_metric, "metric model");
  bench->add_option("--probs", bench_probs, "probability model");
  bench->add_option("--files", bench_files, "instance files");
  bench->add_option("--solver", bench_config.solvers, "solvers")->delimiter(',');
  bench->add_option("--seed", bench_config.seed, "master seed");
  bench->add_option("--opt-limit", bench_config.opt_limit, "enumerate OPT up to this many vertices");
  bench->add_option("--threads", bench_config.threads, "worker threads");
  bench->add_option("--budget", bench_config.budget, "local search evaluation budget");
  bench->add_flag("--timing", bench_config.timing, "fill the ms column");
  bench->add_option("--out", c.out, "CSV file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (*gen) return RunGen(gen_n, c.seed, gen_metric, gen_probs, gen_name, c.out);
    if (*eval) return RunEval(c, method, samples, threads);
    if (*solve) return RunSolve(c, false);
    if (*reduce) return RunSolve(c, true);
    if (*consec) return RunConsec(c);
    if (*verify) return RunVerifyCommand(suite, c.seed, trials, c.out);
    if (*bench) {
      BenchConfig config = bench_config;
      if (!config_path.empty()) {
        config = ParseBenchConfig(ReadFile(config_path));
        if (bench->count("--timing")) config.timing = true;
        if (bench->count("--threads")) config.threads = bench_config.threads;
      }
      if (*bench_n) {
        bench_spec.metric = ParseMetricModel(bench_metric);
        bench_spec.probabilities = ParseProbabilityModel(bench_probs);
        config.generated.push_back(bench_spec);
      }
      for (const auto& f : bench_files) config.files.emplace_back(f);
      Emit(c.out, ToCsv(RunBench(config)));
      return kExitOk;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    try {
      std::rethrow_if_nested(e);
    } catch (const std::exception& inner) {
      std::cerr << "  caused by: " << inner.what() << "\n";
    }
    return kExitInputError;
  }
  return kExitOk;
}
