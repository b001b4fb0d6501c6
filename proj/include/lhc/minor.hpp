#pragma once

#include "lhc/graph.hpp"

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace lhc {

/// Branch sets X_1..X_t of a K_t minor model: pairwise disjoint, each inducing
/// a connected subgraph, every pair joined by at least one edge.
struct BranchSetWitness {
    std::vector<VertexSet> branch_sets;

    std::size_t order() const noexcept { return branch_sets.size(); }
    friend bool operator==(const BranchSetWitness&, const BranchSetWitness&) = default;
};

enum class MinorStrategy {
    automatic,
    /// Grow a partition of each component into t connected, pairwise adjacent
    /// blocks. Good for small t relative to |V|.
    branch_sets,
    /// Enumerate forests of at most |V|-t edges to contract, then look for a
    /// K_t subgraph. Good when |V|-t is small.
    contraction,
};

struct MinorSearchOptions {
    MinorStrategy strategy = MinorStrategy::automatic;
    /// Simplicial-vertex deletion and degree-2 suppression before searching.
    bool reductions = true;
    /// `automatic` picks contraction when the forest count bound is at most this.
    std::uint64_t contraction_threshold = 2'000'000;
    /// Unset means no limit. Expiry throws SearchTimeout.
    std::optional<std::chrono::milliseconds> time_budget;
};

struct MinorSearchStats {
    std::uint64_t nodes = 0;
    std::chrono::nanoseconds elapsed{0};
};

struct MinorAnswer {
    bool contains = false;
    std::optional<BranchSetWitness> witness;
    MinorSearchStats stats;
};

/// Exact K_t minor test. For t >= 3 every connected component with at least
/// t vertices must have at most 64 vertices; larger ones raise ResourceLimit.
MinorAnswer has_clique_minor(const Graph& g, int t, const MinorSearchOptions& options = {});

/// Largest t with a K_t minor. Requires at least one vertex.
int hadwiger_number(const Graph& g, const MinorSearchOptions& options = {});

/// Disjointness, connectivity and pairwise adjacency. Throws InvalidArgument on
/// ids outside the graph.
bool check_witness(const Graph& g, const BranchSetWitness& w);

/// {"t": int, "branch_sets": [[ids...],...]}
nlohmann::json to_json(const BranchSetWitness& w);
BranchSetWitness witness_from_json(const nlohmann::json& doc);

} // namespace lhc
