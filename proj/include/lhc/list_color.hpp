#pragma once

#include "lhc/graph.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include <json.hpp>

namespace lhc {

/// Colors are 1-based; 0 marks "uncolored" inside a Coloring.
using Color = std::uint32_t;
/// Full coloring indexed by vertex id.
using Coloring = std::vector<Color>;
/// Partial coloring fixed in advance.
using Precoloring = std::map<Vertex, Color>;

/// Per-vertex color lists over the palette [1, palette_size] (at most 64 colors).
class ListAssignment {
  public:
    static constexpr Color max_palette = 64;

    ListAssignment() = default;
    /// Every list must be non-empty and inside the palette.
    ListAssignment(Color palette_size, std::vector<std::vector<Color>> lists);
    /// Every vertex gets [1, k]; palette_size defaults to k.
    static ListAssignment uniform(std::size_t n, Color k, Color palette_size = 0);

    Color palette_size() const noexcept { return palette_size_; }
    std::size_t vertex_count() const noexcept { return masks_.size(); }
    /// Bit c-1 set iff color c is allowed.
    std::uint64_t mask(Vertex v) const { return masks_.at(v); }
    std::vector<Color> list(Vertex v) const;
    std::size_t list_size(Vertex v) const;
    bool allows(Vertex v, Color c) const;
    std::size_t min_list_size() const noexcept;

    /// Throws InvalidArgument unless this assignment covers exactly g's vertices.
    void require_matches(const Graph& g) const;

    friend bool operator==(const ListAssignment&, const ListAssignment&) = default;

  private:
    Color palette_size_ = 0;
    std::vector<std::uint64_t> masks_;
};

enum class ColorStatus { colorable, not_colorable };

struct SolveStats {
    std::uint64_t nodes = 0;
    std::uint64_t backtracks = 0;
};

struct SolveResult {
    ColorStatus status = ColorStatus::not_colorable;
    std::optional<Coloring> coloring;
    SolveStats stats;

    bool colorable() const noexcept { return status == ColorStatus::colorable; }
};

/// Exact L-colorability with MRV branching, forward checking and splitting of
/// the uncolored part into independent components. Precolored vertices are
/// treated as singleton lists; a precolor outside its list is a
/// PreconditionViolation.
SolveResult l_colorable(const Graph& g, const ListAssignment& lists, const Precoloring& precolored = {});

/// Brute force over the product of all lists (test oracle). Raises
/// ResourceLimit when that product exceeds `product_cap`.
SolveResult exhaustive_l_colorable(const Graph& g, const ListAssignment& lists, const Precoloring& precolored = {},
                                   std::uint64_t product_cap = 10'000'000);

/// Proper and list-respecting.
bool check_coloring(const Graph& g, const ListAssignment& lists, std::span<const Color> coloring);

/// Greedy coloring in reverse of `elimination_order`, each vertex taking its
/// smallest list color unused by already-colored neighbours. Returns nullopt if
/// some vertex runs out of colors.
std::optional<Coloring> greedy_along_order(const Graph& g, const ListAssignment& lists,
                                           std::span<const Vertex> elimination_order);

/// {"palette_size": int, "lists": {"0": [1,2,...], ...}}
nlohmann::json to_json(const ListAssignment& lists);
ListAssignment lists_from_json(const nlohmann::json& doc);

/// {"0": 1, "3": 2, ...}
nlohmann::json coloring_to_json(std::span<const Color> coloring);
Precoloring precoloring_from_json(const nlohmann::json& doc);

/// {"status": "colorable"|"not-colorable", "coloring": {...}?, "stats": {...}}
nlohmann::json to_json(const SolveResult& result);

} // namespace lhc
