#include "aptrp/instance_io.h"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace aptrp {
namespace {

using nlohmann::json;

const json& Require(const json& doc, const char* field) {
  const auto it = doc.find(field);
  if (it == doc.end()) {
    throw InputError(std::string("missing required field '") + field + "'");
  }
  return *it;
}

double AsNumber(const json& value, const std::string& where) {
  if (!value.is_number()) throw InputError(where + " must be a number");
  return value.get<double>();
}

std::vector<double> AsNumberArray(const json& value, const std::string& where) {
  if (!value.is_array()) throw InputError(where + " must be an array");
  std::vector<double> out;
  out.reserve(value.size());
  for (std::size_t i = 0; i < value.size(); ++i) {
    out.push_back(AsNumber(value[i], where + "[" + std::to_string(i) + "]"));
  }
  return out;
}

json ParseJson(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace

std::vector<std::vector<double>> EuclideanDistances(
    const std::vector<Point>& points) {
  const std::size_t n = points.size();
  std::vector<std::vector<double>> dist(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double raw = std::hypot(points[i][0] - points[j][0],
                                    points[i][1] - points[j][1]);
      const double rounded = std::round(raw * 1e12) / 1e12;
      dist[i][j] = dist[j][i] = rounded;
    }
  }
  return dist;
}

NamedInstance ParseInstance(std::string_view text, bool check_triangle) {
  const json doc = ParseJson(text);
  if (!doc.is_object()) throw InputError("instance must be a JSON object");

  std::string name;
  if (const auto it = doc.find("name"); it != doc.end()) {
    if (!it->is_string()) throw InputError("'name' must be a string");
    name = it->get<std::string>();
  }
  const json& n_field = Require(doc, "n");
  if (!n_field.is_number_integer() || n_field.get<long long>() < 1) {
    throw InputError("'n' must be a positive integer");
  }
  const int n = n_field.get<int>();
  int root = 0;
  if (const auto it = doc.find("root"); it != doc.end()) {
    if (!it->is_number_integer()) throw InputError("'root' must be an integer");
    root = it->get<int>();
    if (root < 0 || root >= n) throw InputError("'root' is out of range");
  }

  const bool has_points = doc.contains("points");
  const bool has_distances = doc.contains("distances");
  if (has_points == has_distances) {
    throw InputError("exactly one of 'points' or 'distances' is required");
  }

  std::optional<std::vector<Point>> points;
  std::vector<std::vector<double>> dist;
  if (has_points) {
    const json& raw = doc["points"];
    if (!raw.is_array()) throw InputError("'points' must be an array");
    if (static_cast<int>(raw.size()) != n) {
      throw InputError("'points' has " + std::to_string(raw.size()) +
                       " entries but n = " + std::to_string(n));
    }
    points.emplace();
    for (std::size_t i = 0; i < raw.size(); ++i) {
      const auto xy = AsNumberArray(raw[i], "points[" + std::to_string(i) + "]");
      if (xy.size() != 2) {
        throw InputError("points[" + std::to_string(i) +
                         "] must have exactly 2 coordinates");
      }
      points->push_back({xy[0], xy[1]});
    }
    dist = EuclideanDistances(*points);
  } else {
    const json& raw = doc["distances"];
    if (!raw.is_array()) throw InputError("'distances' must be an array");
    if (static_cast<int>(raw.size()) != n) {
      throw InputError("'distances' has " + std::to_string(raw.size()) +
                       " rows but n = " + std::to_string(n));
    }
    for (std::size_t i = 0; i < raw.size(); ++i) {
      dist.push_back(AsNumberArray(raw[i], "distances[" + std::to_string(i) + "]"));
    }
  }

  const auto prob = AsNumberArray(Require(doc, "probabilities"), "probabilities");
  if (static_cast<int>(prob.size()) != n) {
    throw InputError("'probabilities' has " + std::to_string(prob.size()) +
                     " entries but n = " + std::to_string(n));
  }
  return {std::move(name), std::move(points),
          AprioriInstance(Metric::FromMatrix(dist, root, check_triangle), prob)};
}

std::string WriteInstance(const NamedInstance& named) {
  const AprioriInstance& inst = named.instance;
  json doc;
  doc["name"] = named.name;
  doc["n"] = inst.size();
  doc["root"] = inst.root();
  if (named.points) {
    json pts = json::array();
    for (const auto& p : *named.points) pts.push_back({p[0], p[1]});
    doc["points"] = std::move(pts);
  } else {
    doc["distances"] = inst.metric().ToMatrix();
  }
  doc["probabilities"] =
      std::vector<double>(inst.probs().begin(), inst.probs().end());
  return doc.dump(2) + "\n";
}

MasterTour ParseTour(std::string_view text, int n) {
  const json doc = ParseJson(text);
  const json* list = &doc;
  if (doc.is_object()) list = &Require(doc, "tour");
  if (!list->is_array()) throw InputError("'tour' must be an array");
  std::vector<Vertex> order;
  for (const auto& v : *list) {
    if (!v.is_number_integer()) throw InputError("tour entries must be integers");
    order.push_back(v.get<Vertex>());
  }
  if (static_cast<int>(order.size()) != n) {
    throw InputError("tour lists " + std::to_string(order.size()) +
                     " vertices but the instance has " + std::to_string(n));
  }
  return MasterTour(std::move(order));
}

std::string WriteTour(const MasterTour& tour) {
  json doc;
  doc["tour"] = std::vector<Vertex>(tour.order().begin(), tour.order().end());
  return doc.dump() + "\n";
}

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void WriteFile(const std::filesystem::path& path, std::string_view contents) {
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path.string() + "'");
  out << contents;
}

}  // namespace aptrp
