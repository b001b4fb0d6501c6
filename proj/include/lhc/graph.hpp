#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

namespace lhc {

using Vertex = std::uint32_t;
using Edge = std::pair<Vertex, Vertex>;

/// Sorted, duplicate-free list of vertex ids.
class VertexSet {
  public:
    VertexSet() = default;
    VertexSet(std::initializer_list<Vertex> ids);
    explicit VertexSet(std::vector<Vertex> ids);

    static VertexSet range(Vertex first, Vertex last); // [first, last)

    std::size_t size() const noexcept { return members_.size(); }
    bool empty() const noexcept { return members_.empty(); }
    bool contains(Vertex v) const;
    auto begin() const noexcept { return members_.begin(); }
    auto end() const noexcept { return members_.end(); }
    Vertex operator[](std::size_t i) const { return members_[i]; }
    const std::vector<Vertex>& members() const noexcept { return members_; }

    friend bool operator==(const VertexSet&, const VertexSet&) = default;

  private:
    std::vector<Vertex> members_;
};

class GraphBuilder;

/// Immutable undirected simple graph on vertices 0..n-1.
///
/// Each vertex may carry a role tag (empty string means unlabeled). Edges are
/// stored once as (u, v) with u < v, sorted lexicographically.
class Graph {
  public:
    Graph() = default;

    static Graph from_edges(std::size_t n, std::span<const Edge> edges);

    std::size_t vertex_count() const noexcept { return adjacency_.size(); }
    std::size_t edge_count() const noexcept { return edges_.size(); }
    const std::vector<Edge>& edges() const noexcept { return edges_; }

    std::span<const Vertex> neighbors(Vertex v) const { return adjacency_.at(v); }
    std::size_t degree(Vertex v) const { return adjacency_.at(v).size(); }
    std::size_t max_degree() const noexcept;
    bool adjacent(Vertex u, Vertex v) const;

    bool is_clique(const VertexSet& s) const;

    bool has_labels() const noexcept { return !labels_.empty(); }
    std::string_view label(Vertex v) const;
    /// Vertices carrying `tag`, ascending.
    std::vector<Vertex> labelled(std::string_view tag) const;
    /// Distinct tags in first-use order.
    std::vector<std::string> label_tags() const;

    Graph with_labels(std::vector<std::string> labels) const;

    /// Same vertex count and edge set; labels are ignored.
    bool same_structure(const Graph& other) const noexcept { return edges_ == other.edges_ && vertex_count() == other.vertex_count(); }
    friend bool operator==(const Graph& a, const Graph& b) { return a.same_structure(b) && a.labels_ == b.labels_; }

  private:
    friend class GraphBuilder;

    static std::uint64_t key(Vertex u, Vertex v) noexcept {
        if (u > v)
            std::swap(u, v);
        return (std::uint64_t{u} << 32) | v;
    }

    std::vector<std::vector<Vertex>> adjacency_;
    std::vector<Edge> edges_;
    std::unordered_set<std::uint64_t> edge_keys_;
    std::vector<std::string> labels_;
};

/// Mutable accumulator for a Graph. Duplicate edges are merged; self-loops and
/// out-of-range endpoints are rejected.
class GraphBuilder {
  public:
    explicit GraphBuilder(std::size_t n = 0);

    std::size_t vertex_count() const noexcept { return n_; }
    Vertex add_vertex(std::string label = {});
    void add_edge(Vertex u, Vertex v);
    void set_label(Vertex v, std::string label);
    void reserve_edges(std::size_t m) { pending_.reserve(m); }

    Graph build() &&;

  private:
    std::size_t n_;
    std::vector<Edge> pending_;
    std::vector<std::string> labels_;
};

/// Complete multipartite graph; classes get consecutive ids in input order.
Graph complete_multipartite(std::span<const int> part_sizes);
Graph complete_multipartite(std::initializer_list<int> part_sizes);

Graph complete_graph(std::size_t n);

/// K_{r x 2}: class i is {2i, 2i+1}, labelled "v" and "w" respectively.
Graph k_r_times_2(int r);
/// K_{1, r x 2}: as k_r_times_2 plus an unlabeled singleton class with id 2r.
Graph k_1_r_times_2(int r);

/// Identify clique s1 of g1 with clique s2 of g2 along `pairing` (pairs (a, b)
/// with a in s1, b in s2). Ids of g1 are kept; the remaining vertices of g2
/// follow in ascending g2-id order.
Graph paste(const Graph& g1, const VertexSet& s1, const Graph& g2, const VertexSet& s2,
            std::span<const std::pair<Vertex, Vertex>> pairing);
/// Pairs s1 and s2 in sorted order.
Graph paste(const Graph& g1, const VertexSet& s1, const Graph& g2, const VertexSet& s2);

struct DegeneracyResult {
    std::size_t degeneracy = 0;
    std::vector<Vertex> elimination_order;
};

/// Smallest-last elimination; ties go to the lowest id.
DegeneracyResult degeneracy(const Graph& g);

/// Connected components of g, each sorted, ordered by smallest member.
std::vector<VertexSet> connected_components(const Graph& g);

} // namespace lhc
