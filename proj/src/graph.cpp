#include "lhc/graph.hpp"

#include "lhc/errors.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace lhc {

VertexSet::VertexSet(std::initializer_list<Vertex> ids) : VertexSet(std::vector<Vertex>(ids)) {}

VertexSet::VertexSet(std::vector<Vertex> ids) : members_(std::move(ids))
{
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

VertexSet VertexSet::range(Vertex first, Vertex last)
{
    std::vector<Vertex> ids;
    for (Vertex v = first; v < last; ++v)
        ids.push_back(v);
    return VertexSet(std::move(ids));
}

bool VertexSet::contains(Vertex v) const
{
    return std::binary_search(members_.begin(), members_.end(), v);
}

std::size_t Graph::max_degree() const noexcept
{
    std::size_t best = 0;
    for (const auto& nbrs : adjacency_)
        best = std::max(best, nbrs.size());
    return best;
}

bool Graph::adjacent(Vertex u, Vertex v) const
{
    if (u == v)
        return false;
    return edge_keys_.contains(key(u, v));
}

bool Graph::is_clique(const VertexSet& s) const
{
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] >= vertex_count())
            throw InvalidArgument("vertex " + std::to_string(s[i]) + " out of range");
        for (std::size_t j = i + 1; j < s.size(); ++j)
            if (!adjacent(s[i], s[j]))
                return false;
    }
    return true;
}

std::string_view Graph::label(Vertex v) const
{
    if (v >= vertex_count())
        throw InvalidArgument("vertex " + std::to_string(v) + " out of range");
    if (labels_.empty())
        return {};
    return labels_[v];
}

std::vector<Vertex> Graph::labelled(std::string_view tag) const
{
    std::vector<Vertex> out;
    for (Vertex v = 0; v < labels_.size(); ++v)
        if (labels_[v] == tag)
            out.push_back(v);
    return out;
}

std::vector<std::string> Graph::label_tags() const
{
    std::vector<std::string> tags;
    for (const auto& l : labels_)
        if (!l.empty() && std::find(tags.begin(), tags.end(), l) == tags.end())
            tags.push_back(l);
    return tags;
}

Graph Graph::with_labels(std::vector<std::string> labels) const
{
    if (!labels.empty() && labels.size() != vertex_count())
        throw InvalidArgument("label vector size does not match vertex count");
    Graph copy = *this;
    if (std::all_of(labels.begin(), labels.end(), [](const auto& l) { return l.empty(); }))
        labels.clear();
    copy.labels_ = std::move(labels);
    return copy;
}

Graph Graph::from_edges(std::size_t n, std::span<const Edge> edges)
{
    GraphBuilder b(n);
    b.reserve_edges(edges.size());
    for (auto [u, v] : edges)
        b.add_edge(u, v);
    return std::move(b).build();
}

GraphBuilder::GraphBuilder(std::size_t n) : n_(n) {}

Vertex GraphBuilder::add_vertex(std::string label)
{
    auto v = static_cast<Vertex>(n_++);
    if (!label.empty() || !labels_.empty()) {
        labels_.resize(n_);
        labels_[v] = std::move(label);
    }
    return v;
}

void GraphBuilder::add_edge(Vertex u, Vertex v)
{
    if (u >= n_ || v >= n_)
        throw InvalidArgument("edge (" + std::to_string(u) + ", " + std::to_string(v) + ") has endpoint >= " +
                              std::to_string(n_));
    if (u == v)
        throw InvalidArgument("self-loop at vertex " + std::to_string(u));
    if (u > v)
        std::swap(u, v);
    pending_.emplace_back(u, v);
}

void GraphBuilder::set_label(Vertex v, std::string label)
{
    if (v >= n_)
        throw InvalidArgument("vertex " + std::to_string(v) + " out of range");
    labels_.resize(n_);
    labels_[v] = std::move(label);
}

Graph GraphBuilder::build() &&
{
    Graph g;
    std::sort(pending_.begin(), pending_.end());
    pending_.erase(std::unique(pending_.begin(), pending_.end()), pending_.end());
    g.adjacency_.resize(n_);
    for (auto [u, v] : pending_) {
        g.adjacency_[u].push_back(v);
        g.adjacency_[v].push_back(u);
    }
    for (auto& nbrs : g.adjacency_)
        std::sort(nbrs.begin(), nbrs.end());
    g.edge_keys_.reserve(pending_.size());
    for (auto [u, v] : pending_)
        g.edge_keys_.insert(Graph::key(u, v));
    g.edges_ = std::move(pending_);
    labels_.resize(labels_.empty() ? 0 : n_);
    if (std::any_of(labels_.begin(), labels_.end(), [](const auto& l) { return !l.empty(); }))
        g.labels_ = std::move(labels_);
    return g;
}

Graph complete_multipartite(std::span<const int> part_sizes)
{
    if (part_sizes.empty())
        throw InvalidArgument("complete_multipartite needs at least one part");
    std::vector<std::size_t> part_of;
    for (std::size_t i = 0; i < part_sizes.size(); ++i) {
        if (part_sizes[i] <= 0)
            throw InvalidArgument("part sizes must be positive");
        part_of.insert(part_of.end(), static_cast<std::size_t>(part_sizes[i]), i);
    }
    GraphBuilder b(part_of.size());
    for (Vertex u = 0; u < part_of.size(); ++u)
        for (Vertex v = u + 1; v < part_of.size(); ++v)
            if (part_of[u] != part_of[v])
                b.add_edge(u, v);
    return std::move(b).build();
}

Graph complete_multipartite(std::initializer_list<int> part_sizes)
{
    return complete_multipartite(std::span<const int>(part_sizes.begin(), part_sizes.size()));
}

Graph complete_graph(std::size_t n)
{
    GraphBuilder b(n);
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
            b.add_edge(u, v);
    return std::move(b).build();
}

namespace {

Graph matched_multipartite(int r, bool with_singleton)
{
    if (r <= 0)
        throw InvalidArgument("r must be positive");
    std::vector<int> parts(static_cast<std::size_t>(r), 2);
    if (with_singleton)
        parts.push_back(1);
    Graph g = complete_multipartite(parts);
    std::vector<std::string> labels(g.vertex_count());
    for (int i = 0; i < r; ++i) {
        labels[2 * i] = "v";
        labels[2 * i + 1] = "w";
    }
    return g.with_labels(std::move(labels));
}

} // namespace

Graph k_r_times_2(int r)
{
    return matched_multipartite(r, false);
}

Graph k_1_r_times_2(int r)
{
    return matched_multipartite(r, true);
}

Graph paste(const Graph& g1, const VertexSet& s1, const Graph& g2, const VertexSet& s2,
            std::span<const std::pair<Vertex, Vertex>> pairing)
{
    if (s1.size() != s2.size())
        throw InvalidArgument("pasting sets differ in size (" + std::to_string(s1.size()) + " vs " +
                              std::to_string(s2.size()) + ")");
    if (pairing.size() != s1.size())
        throw InvalidArgument("pairing size does not match the pasting sets");
    if (!g1.is_clique(s1) || !g2.is_clique(s2))
        throw PreconditionViolation("pasting sets must be cliques");

    constexpr auto unmapped = static_cast<Vertex>(-1);
    std::vector<Vertex> image(g2.vertex_count(), unmapped);
    std::vector<bool> used_left(g1.vertex_count(), false);
    for (auto [a, b] : pairing) {
        if (!s1.contains(a) || !s2.contains(b))
            throw InvalidArgument("pairing references a vertex outside the pasting sets");
        if (used_left[a] || image[b] != unmapped)
            throw InvalidArgument("pairing is not a bijection");
        used_left[a] = true;
        image[b] = a;
    }

    std::vector<std::string> labels(g1.vertex_count());
    for (Vertex v = 0; v < g1.vertex_count(); ++v)
        labels[v] = std::string(g1.label(v));
    for (auto [a, b] : pairing)
        if (labels[a].empty())
            labels[a] = std::string(g2.label(b));

    auto next = static_cast<Vertex>(g1.vertex_count());
    for (Vertex v = 0; v < g2.vertex_count(); ++v)
        if (image[v] == unmapped) {
            image[v] = next++;
            labels.emplace_back(g2.label(v));
        }

    GraphBuilder b(next);
    b.reserve_edges(g1.edge_count() + g2.edge_count());
    for (auto [u, v] : g1.edges())
        b.add_edge(u, v);
    for (auto [u, v] : g2.edges())
        b.add_edge(image[u], image[v]);
    for (Vertex v = 0; v < next; ++v)
        if (!labels[v].empty())
            b.set_label(v, labels[v]);
    return std::move(b).build();
}

Graph paste(const Graph& g1, const VertexSet& s1, const Graph& g2, const VertexSet& s2)
{
    if (s1.size() != s2.size())
        throw InvalidArgument("pasting sets differ in size (" + std::to_string(s1.size()) + " vs " +
                              std::to_string(s2.size()) + ")");
    std::vector<std::pair<Vertex, Vertex>> pairing;
    for (std::size_t i = 0; i < s1.size(); ++i)
        pairing.emplace_back(s1[i], s2[i]);
    return paste(g1, s1, g2, s2, pairing);
}

DegeneracyResult degeneracy(const Graph& g)
{
    const std::size_t n = g.vertex_count();
    std::vector<std::size_t> deg(n);
    std::set<std::pair<std::size_t, Vertex>> queue;
    for (Vertex v = 0; v < n; ++v) {
        deg[v] = g.degree(v);
        queue.emplace(deg[v], v);
    }
    std::vector<bool> removed(n, false);
    DegeneracyResult result;
    result.elimination_order.reserve(n);
    while (!queue.empty()) {
        auto [d, v] = *queue.begin();
        queue.erase(queue.begin());
        result.degeneracy = std::max(result.degeneracy, d);
        result.elimination_order.push_back(v);
        removed[v] = true;
        for (Vertex u : g.neighbors(v)) {
            if (removed[u])
                continue;
            queue.erase({deg[u], u});
            queue.emplace(--deg[u], u);
        }
    }
    return result;
}

std::vector<VertexSet> connected_components(const Graph& g)
{
    const std::size_t n = g.vertex_count();
    std::vector<bool> seen(n, false);
    std::vector<VertexSet> out;
    std::vector<Vertex> stack;
    for (Vertex s = 0; s < n; ++s) {
        if (seen[s])
            continue;
        std::vector<Vertex> comp;
        stack.push_back(s);
        seen[s] = true;
        while (!stack.empty()) {
            Vertex v = stack.back();
            stack.pop_back();
            comp.push_back(v);
            for (Vertex u : g.neighbors(v))
                if (!seen[u]) {
                    seen[u] = true;
                    stack.push_back(u);
                }
        }
        out.emplace_back(std::move(comp));
    }
    return out;
}

} // namespace lhc
