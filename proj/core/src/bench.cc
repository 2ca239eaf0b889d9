#include "aptrp/bench.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <thread>

#include "aptrp/instance_io.h"
#include "aptrp/latency.h"
#include "aptrp/random.h"
#include "aptrp/reduction.h"
#include "json.hpp"

namespace aptrp {
namespace {

using nlohmann::json;

template <typename T>
T Get(const json& doc, const char* key, T fallback, const char* what) {
  const auto it = doc.find(key);
  if (it == doc.end()) return fallback;
  try {
    return it->get<T>();
  } catch (const json::exception&) {
    throw InputError(std::string("bench config field '") + key + "' must be " + what);
  }
}

std::string Number(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.10g", value);
  return buffer;
}

std::string Optional(const std::optional<double>& value) {
  return value ? Number(*value) : std::string();
}

// CSV-quote names that need it.
std::string Field(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

struct Job {
  NamedInstance instance;
  std::uint64_t seed;
};

std::vector<BenchRecord> RunJob(const Job& job, const BenchConfig& config) {
  const AprioriInstance& inst = job.instance.instance;
  const int n = inst.size();
  std::optional<double> opt;
  if (n - 1 <= config.opt_limit) opt = BruteForceOpt(inst, config.opt_limit).value;

  std::vector<BenchRecord> records;
  for (const auto& name : config.solvers) {
    const SolverDescriptor& solver = FindSolver(name);
    BenchRecord r;
    r.instance = job.instance.name;
    r.n = n;
    r.seed = job.seed;
    r.solver = solver.name;
    r.rho = solver.rho;
    r.bound = ApproximationBound(n, solver.rho);
    r.opt = opt;
    const auto start = std::chrono::steady_clock::now();
    try {
      const auto result = AprioriSolve(
          inst, MakeUniformSolver(solver, job.seed, config.budget));
      r.alg = ExactElat(inst, result.tour).value;
    } catch (const SolverError&) {
      // Leaves alg empty, e.g. the brute solver above its size limit.
    } catch (const SizeLimitError&) {
    }
    if (config.timing) {
      r.ms = std::chrono::duration<double, std::milli>(
                 std::chrono::steady_clock::now() - start)
                 .count();
    }
    if (r.alg && opt) r.ratio = *opt > 0 ? *r.alg / *opt : 1.0;
    records.push_back(std::move(r));
  }
  return records;
}

}  // namespace

BenchConfig ParseBenchConfig(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("malformed bench config: ") + e.what());
  }
  if (!doc.is_object()) throw InputError("bench config must be a JSON object");

  BenchConfig config;
  config.seed = Get<std::uint64_t>(doc, "seed", config.seed, "an unsigned integer");
  config.opt_limit = Get<int>(doc, "opt_limit", config.opt_limit, "an integer");
  config.threads = std::max(1, Get<int>(doc, "threads", config.threads, "an integer"));
  config.budget = Get<std::int64_t>(doc, "budget", config.budget, "an integer");
  config.timing = Get<bool>(doc, "timing", config.timing, "a boolean");
  config.solvers = Get<std::vector<std::string>>(doc, "solvers", config.solvers,
                                                 "an array of strings");
  for (const auto& s : config.solvers) FindSolver(s);

  if (const auto it = doc.find("instances"); it != doc.end()) {
    if (!it->is_array()) throw InputError("bench config field 'instances' must be an array");
    for (const auto& entry : *it) {
      if (!entry.is_object()) throw InputError("bench 'instances' entries must be objects");
      BenchInstanceSpec spec;
      spec.n = Get<int>(entry, "n", spec.n, "an integer");
      spec.count = Get<int>(entry, "count", spec.count, "an integer");
      if (spec.n < 1 || spec.count < 0) {
        throw InputError("bench instance spec needs n >= 1 and count >= 0");
      }
      spec.metric = ParseMetricModel(
          Get<std::string>(entry, "metric", "euclidean-uniform", "a string"));
      spec.probabilities = ParseProbabilityModel(
          Get<std::string>(entry, "probabilities", "uniform:0.1:0.9", "a string"));
      config.generated.push_back(spec);
    }
  }
  for (const auto& f :
       Get<std::vector<std::string>>(doc, "files", {}, "an array of strings")) {
    config.files.emplace_back(f);
  }
  return config;
}

std::vector<BenchRecord> RunBench(const BenchConfig& config) {
  for (const auto& s : config.solvers) FindSolver(s);

  std::vector<Job> jobs;
  for (const auto& spec : config.generated) {
    for (int c = 0; c < spec.count; ++c) {
      const std::uint64_t seed = DeriveSeed(config.seed, jobs.size());
      jobs.push_back({GenerateInstance(spec.n, seed, spec.metric, spec.probabilities), seed});
    }
  }
  for (const auto& path : config.files) {
    auto named = ParseInstance(ReadFile(path));
    if (named.name.empty()) named.name = path.stem().string();
    jobs.push_back({std::move(named), DeriveSeed(config.seed, jobs.size())});
  }

  std::vector<std::vector<BenchRecord>> results(jobs.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < jobs.size();) {
      try {
        results[i] = RunJob(jobs[i], config);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    const int threads = std::max(1, std::min<int>(config.threads, jobs.size()));
    for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
  }
  if (error) std::rethrow_exception(error);

  std::vector<BenchRecord> records;
  for (auto& r : results) {
    records.insert(records.end(), std::make_move_iterator(r.begin()),
                   std::make_move_iterator(r.end()));
  }
  return records;
}

std::string ToCsv(const std::vector<BenchRecord>& records) {
  std::string out(kBenchCsvHeader);
  out += '\n';
  for (const auto& r : records) {
    out += Field(r.instance) + ',' + std::to_string(r.n) + ',' +
           std::to_string(r.seed) + ',' + Field(r.solver) + ',' + Number(r.rho) +
           ',' + Optional(r.alg) + ',' + Optional(r.opt) + ',' +
           Optional(r.ratio) + ',' + Number(r.bound) + ',' + Optional(r.ms) + '\n';
  }
  return out;
}

}  // namespace aptrp
