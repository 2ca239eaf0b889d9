#pragma once

// JSON instance and tour files.
//
// Instance schema:
//   {
//     "name": "example",            // optional, default ""
//     "n": 3,                       // vertex count including the root
//     "root": 0,                    // optional, default 0
//     "points": [[x, y], ...],      // exactly one of points / distances
//     "distances": [[...], ...],
//     "probabilities": [1, 0.5, 0.5]
//   }
// Distances derived from points are Euclidean, rounded to 1e-12.
//
// Tour schema: {"tour": [0, 2, 1]} or a bare array.

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "aptrp/metric.h"

namespace aptrp {

using Point = std::array<double, 2>;

struct NamedInstance {
  std::string name;
  std::optional<std::vector<Point>> points;
  AprioriInstance instance;

  friend bool operator==(const NamedInstance&, const NamedInstance&) = default;
};

// Throws InputError naming the offending field, or listing metric violations.
NamedInstance ParseInstance(std::string_view text, bool check_triangle = true);
std::string WriteInstance(const NamedInstance& instance);

std::vector<std::vector<double>> EuclideanDistances(
    const std::vector<Point>& points);

// Throws InputError if the tour is malformed or does not fit `n` vertices.
MasterTour ParseTour(std::string_view text, int n);
std::string WriteTour(const MasterTour& tour);

std::string ReadFile(const std::filesystem::path& path);
void WriteFile(const std::filesystem::path& path, std::string_view contents);

}  // namespace aptrp
