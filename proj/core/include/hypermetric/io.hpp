#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "hypermetric/metric_space.hpp"

namespace hypermetric::io {

/// Shortest decimal string that round-trips to the same double.
std::string format_real(double value);

// CSV distance matrix: header row of labels, then n rows of n reals.
FiniteMetricSpace parse_space_csv(std::string_view text, std::optional<double> tau = std::nullopt);
std::string space_to_csv(const FiniteMetricSpace& space);

// {"labels": [...], "dist": [[...], ...]}
FiniteMetricSpace space_from_json(const nlohmann::json& doc, std::optional<double> tau = std::nullopt);
nlohmann::json space_to_json(const FiniteMetricSpace& space);

struct GraphInput {
  std::size_t vertices = 0;
  std::vector<WeightedEdge> edges;
};

// {"n": int, "edges": [[i, j, w], ...]}
GraphInput graph_from_json(const nlohmann::json& doc);
nlohmann::json graph_to_json(const GraphInput& graph);

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, std::string_view text);
nlohmann::json read_json(const std::filesystem::path& path);

/// Loads a space from `.json` (space schema) or any other extension (CSV).
FiniteMetricSpace load_space(const std::filesystem::path& path, std::optional<double> tau = std::nullopt);

/// Pretty-printed JSON with sorted keys and a trailing newline.
std::string dump_json(const nlohmann::json& doc);

}  // namespace hypermetric::io
