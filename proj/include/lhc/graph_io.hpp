#pragma once

#include "lhc/graph.hpp"

#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

namespace lhc {

enum class GraphFormat { graph6, adjacency_json };

/// graph6 encoding (no header, no trailing newline).
std::string to_graph6(const Graph& g);
/// Accepts an optional ">>graph6<<" header and trailing whitespace.
Graph from_graph6(std::string_view text);

/// {"n": int, "edges": [[u,v],...], "labels": {tag: [ids...]}}; edges sorted, u < v.
nlohmann::json to_adjacency_json(const Graph& g);
Graph from_adjacency_json(const nlohmann::json& doc);
Graph from_adjacency_json_text(std::string_view text);

std::string write_graph(const Graph& g, GraphFormat format);
Graph read_graph(std::string_view text, GraphFormat format);
/// JSON if the first non-blank byte is '{', graph6 otherwise.
Graph read_graph(std::string_view text);

/// Format from extension: ".json" selects adjacency-json, anything else graph6.
GraphFormat format_for_path(const std::filesystem::path& path);
Graph load_graph(const std::filesystem::path& path);
void save_graph(const Graph& g, const std::filesystem::path& path);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

} // namespace lhc
