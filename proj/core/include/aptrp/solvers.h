#pragma once

// Solvers for the uniform-probability problem that plug into AprioriSolve,
// plus exhaustive optima used to certify approximation ratios.

#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "aptrp/metric.h"
#include "aptrp/reduction.h"
#include "aptrp/scaled_instance.h"

namespace aptrp {

struct SolverDescriptor {
  std::string name;
  // Guaranteed approximation ratio; infinity for heuristics.
  double rho = std::numeric_limits<double>::infinity();
  // Maximum number of groups (scaled) or non-root vertices; 0 = unlimited.
  int size_limit = 0;
};

// "brute" (rho = 1), "nn" and "local".
const std::vector<SolverDescriptor>& AvailableSolvers();

// Throws InputError for an unknown name.
const SolverDescriptor& FindSolver(std::string_view name);

inline constexpr std::int64_t kDefaultSearchBudget = 20000;
inline constexpr int kDefaultOptLimit = 9;

MasterTour SolveUniform(const ScaledInstance& scaled,
                        const SolverDescriptor& solver, std::uint64_t seed,
                        std::int64_t budget = kDefaultSearchBudget);

UniformSolverFn MakeUniformSolver(const SolverDescriptor& solver,
                                  std::uint64_t seed,
                                  std::int64_t budget = kDefaultSearchBudget);

struct TourValue {
  MasterTour tour;
  double value = 0.0;
};

// Minimum exact ELAT over all tours; ties keep the lexicographically first.
// Throws SizeLimitError above `limit` non-root vertices.
TourValue BruteForceOpt(const AprioriInstance& instance,
                        int limit = kDefaultOptLimit);

// Minimum over consecutive tours (every group order), which contain an
// optimum of the scaled instance. Throws SizeLimitError above `limit` groups.
TourValue BruteForceOpt(const ScaledInstance& scaled,
                        int limit = kDefaultOptLimit);

// Greedy closest-unvisited order from the root; ties by vertex index.
MasterTour NearestNeighbor(const AprioriInstance& instance);

using TourEvaluator = std::function<double(std::span<const Vertex>)>;

struct SearchStats {
  std::int64_t evaluations = 0;
  // Objective after the start and after each accepted move.
  std::vector<double> trajectory;
};

// First-improvement relocate / 2-opt search over positions 1..n-1. The scan
// starts at a seed-dependent move and wraps around; it stops at a local
// optimum or after `budget` candidate evaluations.
std::vector<Vertex> ImproveTour(std::vector<Vertex> start,
                                const TourEvaluator& evaluate,
                                std::uint64_t seed, std::int64_t budget,
                                SearchStats* stats = nullptr);

// ImproveTour from NearestNeighbor, scored by exact ELAT.
MasterTour LocalSearch(const AprioriInstance& instance, std::uint64_t seed,
                       std::int64_t budget = kDefaultSearchBudget,
                       SearchStats* stats = nullptr);

}  // namespace aptrp
