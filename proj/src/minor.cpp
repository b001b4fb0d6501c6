#include "lhc/minor.hpp"

#include "lhc/errors.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

namespace lhc {

namespace {

using Mask = std::uint64_t;
using Clock = std::chrono::steady_clock;

constexpr Mask bit(int i) { return Mask{1} << i; }

int lowest(Mask m) { return std::countr_zero(m); }

class Deadline {
  public:
    explicit Deadline(const std::optional<std::chrono::milliseconds>& budget)
    {
        if (budget)
            at_ = Clock::now() + *budget;
    }

    void poll(std::uint64_t nodes) const
    {
        if (at_ && (nodes & 0xFFF) == 0 && Clock::now() > *at_)
            throw SearchTimeout("minor search exceeded its time budget");
    }

  private:
    std::optional<Clock::time_point> at_;
};

/// Working graph over at most 64 local vertices, each standing for a bag of
/// original vertices (bags grow under degree-2 suppression).
struct Work {
    std::vector<Mask> adj;
    std::vector<std::vector<Vertex>> bags;

    int size() const { return static_cast<int>(adj.size()); }
};

Mask neighbourhood(const Work& w, Mask set)
{
    Mask out = 0;
    for (Mask s = set; s; s &= s - 1)
        out |= w.adj[lowest(s)];
    return out & ~set;
}

/// Vertices of `within` reachable from `from` inside `within`.
Mask reach(const Work& w, Mask from, Mask within)
{
    Mask seen = from & within;
    Mask frontier = seen;
    while (frontier) {
        Mask next = 0;
        for (Mask f = frontier; f; f &= f - 1)
            next |= w.adj[lowest(f)];
        next &= within & ~seen;
        seen |= next;
        frontier = next;
    }
    return seen;
}

BranchSetWitness witness_from_blocks(const Work& w, const std::vector<Mask>& blocks)
{
    BranchSetWitness out;
    for (Mask b : blocks) {
        std::vector<Vertex> members;
        for (Mask s = b; s; s &= s - 1) {
            const auto& bag = w.bags[lowest(s)];
            members.insert(members.end(), bag.begin(), bag.end());
        }
        out.branch_sets.emplace_back(std::move(members));
    }
    std::sort(out.branch_sets.begin(), out.branch_sets.end(),
              [](const VertexSet& a, const VertexSet& b) { return a[0] < b[0]; });
    return out;
}

/// First t-clique (by ascending ids) among `candidates`, as a mask; 0 if none.
Mask find_clique(const std::vector<Mask>& adj, Mask candidates, int needed, Mask chosen)
{
    if (needed == 0)
        return chosen;
    while (std::popcount(candidates) >= needed) {
        int v = lowest(candidates);
        candidates &= ~bit(v);
        if (Mask found = find_clique(adj, candidates & adj[v], needed - 1, chosen | bit(v)))
            return found;
    }
    return 0;
}

/// Simplicial deletion (any t) and degree-2 suppression (t >= 4). Both
/// preserve the existence of a K_t minor. May discover a K_t subgraph
/// directly, returned as singleton blocks.
std::optional<std::vector<Mask>> reduce(Work& w, Mask& alive, int t)
{
    bool changed = true;
    while (changed) {
        changed = false;
        for (Mask a = alive; a; a &= a - 1) {
            int v = lowest(a);
            Mask nbrs = w.adj[v] & alive;
            bool simplicial = true;
            for (Mask s = nbrs; s && simplicial; s &= s - 1) {
                int u = lowest(s);
                simplicial = ((w.adj[u] | bit(u)) & nbrs) == nbrs;
            }
            if (simplicial) {
                if (std::popcount(nbrs) >= t - 1) {
                    std::vector<Mask> blocks{bit(v)};
                    for (Mask s = nbrs; s && static_cast<int>(blocks.size()) < t; s &= s - 1)
                        blocks.push_back(bit(lowest(s)));
                    return blocks;
                }
                alive &= ~bit(v);
                for (Mask s = nbrs; s; s &= s - 1)
                    w.adj[lowest(s)] &= ~bit(v);
                w.adj[v] = 0;
                changed = true;
                continue;
            }
            if (t >= 4 && std::popcount(nbrs) == 2) {
                int into = lowest(nbrs);
                int other = lowest(nbrs & ~bit(into));
                w.adj[into] = (w.adj[into] | bit(other)) & ~bit(v);
                w.adj[other] = (w.adj[other] | bit(into)) & ~bit(v);
                w.bags[into].insert(w.bags[into].end(), w.bags[v].begin(), w.bags[v].end());
                w.bags[v].clear();
                w.adj[v] = 0;
                alive &= ~bit(v);
                changed = true;
            }
        }
    }
    return std::nullopt;
}

/// Restrict to `keep`, renumbering local ids in ascending order.
Work compress(const Work& w, Mask keep)
{
    std::vector<int> index(w.size(), -1);
    Work out;
    for (Mask s = keep; s; s &= s - 1) {
        int v = lowest(s);
        index[v] = out.size();
        out.adj.push_back(0);
        out.bags.push_back(w.bags[v]);
    }
    for (Mask s = keep; s; s &= s - 1) {
        int v = lowest(s);
        Mask m = 0;
        for (Mask n = w.adj[v] & keep; n; n &= n - 1)
            m |= bit(index[lowest(n)]);
        out.adj[index[v]] = m;
    }
    return out;
}

std::uint64_t edge_count(const Work& w)
{
    std::uint64_t twice = 0;
    for (Mask m : w.adj)
        twice += std::popcount(m);
    return twice / 2;
}

/// Sum_{j <= k} C(m, j), saturating at `cap + 1`.
std::uint64_t forest_bound(std::uint64_t m, std::uint64_t k, std::uint64_t cap)
{
    std::uint64_t total = 0;
    long double term = 1;
    for (std::uint64_t j = 0; j <= k && j <= m; ++j) {
        if (j > 0)
            term = term * static_cast<long double>(m - j + 1) / static_cast<long double>(j);
        if (static_cast<long double>(total) + term > static_cast<long double>(cap))
            return cap + 1;
        total += static_cast<std::uint64_t>(term + 0.5L);
    }
    return total;
}

class ContractionSearch {
  public:
    ContractionSearch(const Work& w, int t, const Deadline& deadline, std::uint64_t& nodes)
        : w_(w), t_(t), deadline_(deadline), nodes_(nodes)
    {
        for (int u = 0; u < w.size(); ++u)
            for (Mask s = w.adj[u] & ~((bit(u) << 1) - 1); s; s &= s - 1)
                edges_.emplace_back(u, lowest(s));
        rep_.resize(w.size());
        for (int v = 0; v < w.size(); ++v)
            rep_[v] = v;
    }

    std::optional<std::vector<Mask>> run()
    {
        if (dfs(0, w_.size() - t_))
            return found_;
        return std::nullopt;
    }

  private:
    bool dfs(std::size_t first_edge, int budget)
    {
        deadline_.poll(++nodes_);
        if (clique_in_quotient())
            return true;
        if (budget == 0)
            return false;
        for (std::size_t e = first_edge; e < edges_.size(); ++e) {
            int a = rep_[edges_[e].first];
            int b = rep_[edges_[e].second];
            if (a == b)
                continue;
            if (a > b)
                std::swap(a, b);
            auto saved = rep_;
            for (int& r : rep_)
                if (r == b)
                    r = a;
            if (dfs(e + 1, budget - 1))
                return true;
            rep_ = std::move(saved);
        }
        return false;
    }

    bool clique_in_quotient()
    {
        const int n = w_.size();
        std::vector<Mask> members(n, 0);
        Mask reps = 0;
        for (int v = 0; v < n; ++v) {
            members[rep_[v]] |= bit(v);
            reps |= bit(rep_[v]);
        }
        std::vector<Mask> qadj(n, 0);
        Mask candidates = 0;
        for (Mask s = reps; s; s &= s - 1) {
            int r = lowest(s);
            Mask raw = neighbourhood(w_, members[r]);
            Mask q = 0;
            for (Mask o = reps & ~bit(r); o; o &= o - 1)
                if (raw & members[lowest(o)])
                    q |= bit(lowest(o));
            qadj[r] = q;
            if (std::popcount(q) >= t_ - 1)
                candidates |= bit(r);
        }
        Mask clique = find_clique(qadj, candidates, t_, 0);
        if (!clique)
            return false;
        found_.clear();
        for (Mask s = clique; s; s &= s - 1)
            found_.push_back(members[lowest(s)]);
        return true;
    }

    const Work& w_;
    int t_;
    const Deadline& deadline_;
    std::uint64_t& nodes_;
    std::vector<std::pair<int, int>> edges_;
    std::vector<int> rep_;
    std::vector<Mask> found_;
};

/// Partitions a connected working graph into exactly t connected, pairwise
/// adjacent blocks. Every K_t model of a connected graph extends to such a
/// partition, so this is exhaustive.
class BranchSetSearch {
  public:
    BranchSetSearch(const Work& w, int t, const Deadline& deadline, std::uint64_t& nodes)
        : w_(w), t_(t), deadline_(deadline), nodes_(nodes)
    {
        // BFS order from vertex 0, neighbours ascending, so each vertex after
        // the first has an earlier neighbour.
        Mask seen = bit(0);
        order_.push_back(0);
        for (std::size_t i = 0; i < order_.size(); ++i)
            for (Mask s = w.adj[order_[i]] & ~seen; s; s &= s - 1) {
                seen |= bit(lowest(s));
                order_.push_back(lowest(s));
            }
        blocks_.reserve(t);
    }

    std::optional<std::vector<Mask>> run()
    {
        unassigned_ = 0;
        for (int v : order_)
            unassigned_ |= bit(v);
        if (dfs(0))
            return blocks_;
        return std::nullopt;
    }

  private:
    bool dfs(std::size_t idx)
    {
        deadline_.poll(++nodes_);
        if (idx == order_.size())
            return static_cast<int>(blocks_.size()) == t_;
        const int v = order_[idx];
        unassigned_ &= ~bit(v);
        for (std::size_t b = 0; b < blocks_.size(); ++b) {
            blocks_[b] |= bit(v);
            if (feasible() && dfs(idx + 1))
                return true;
            blocks_[b] &= ~bit(v);
        }
        if (static_cast<int>(blocks_.size()) < t_) {
            blocks_.push_back(bit(v));
            if (feasible() && dfs(idx + 1))
                return true;
            blocks_.pop_back();
        }
        unassigned_ |= bit(v);
        return false;
    }

    bool feasible() const
    {
        if (static_cast<int>(blocks_.size()) + std::popcount(unassigned_) < t_)
            return false;
        std::vector<Mask> open(blocks_.size());
        for (std::size_t i = 0; i < blocks_.size(); ++i) {
            const Mask b = blocks_[i];
            // Each block must still be connectable through unassigned vertices.
            if ((reach(w_, bit(lowest(b)), b | unassigned_) & b) != b)
                return false;
            open[i] = neighbourhood(w_, b) & unassigned_;
        }
        for (std::size_t i = 0; i < blocks_.size(); ++i)
            for (std::size_t j = i + 1; j < blocks_.size(); ++j)
                if (!(neighbourhood(w_, blocks_[i]) & blocks_[j]) && !(open[i] && open[j]))
                    return false;
        return true;
    }

    const Work& w_;
    int t_;
    const Deadline& deadline_;
    std::uint64_t& nodes_;
    std::vector<int> order_;
    std::vector<Mask> blocks_;
    Mask unassigned_ = 0;
};

Work to_work(const Graph& g, const VertexSet& component)
{
    if (component.size() > 64)
        throw ResourceLimit("minor search supports components of at most 64 vertices (got " +
                            std::to_string(component.size()) + ")");
    Work w;
    std::vector<int> index(g.vertex_count(), -1);
    for (std::size_t i = 0; i < component.size(); ++i)
        index[component[i]] = static_cast<int>(i);
    for (Vertex v : component) {
        Mask m = 0;
        for (Vertex u : g.neighbors(v))
            m |= bit(index[u]);
        w.adj.push_back(m);
        w.bags.push_back({v});
    }
    return w;
}

std::optional<BranchSetWitness> search_component(const Work& original, int t, const MinorSearchOptions& options,
                                                 const Deadline& deadline, std::uint64_t& nodes)
{
    Work w = original;
    Mask alive = w.size() == 64 ? ~Mask{0} : bit(w.size()) - 1;
    if (options.reductions) {
        if (auto blocks = reduce(w, alive, t))
            return witness_from_blocks(w, *blocks);
    }
    Work reduced = compress(w, alive);

    // Both reductions preserve connectivity; the split is kept so that each
    // kernel always sees a single component.
    Mask remaining = reduced.size() == 64 ? ~Mask{0} : bit(reduced.size()) - 1;
    while (remaining) {
        Mask comp = reach(reduced, bit(lowest(remaining)), remaining);
        remaining &= ~comp;
        if (std::popcount(comp) < t)
            continue;
        Work part = compress(reduced, comp);
        const auto m = edge_count(part);
        if (m < static_cast<std::uint64_t>(t) * (t - 1) / 2)
            continue;

        MinorStrategy strategy = options.strategy;
        if (strategy == MinorStrategy::automatic) {
            const auto bound = forest_bound(m, part.size() - t, options.contraction_threshold);
            strategy = bound <= options.contraction_threshold ? MinorStrategy::contraction : MinorStrategy::branch_sets;
        }
        std::optional<std::vector<Mask>> blocks;
        if (strategy == MinorStrategy::contraction)
            blocks = ContractionSearch(part, t, deadline, nodes).run();
        else
            blocks = BranchSetSearch(part, t, deadline, nodes).run();
        if (blocks)
            return witness_from_blocks(part, *blocks);
    }
    return std::nullopt;
}

} // namespace

MinorAnswer has_clique_minor(const Graph& g, int t, const MinorSearchOptions& options)
{
    if (t <= 0)
        throw InvalidArgument("clique minor order must be positive");
    const auto start = Clock::now();
    MinorAnswer answer;
    if (static_cast<std::size_t>(t) > g.vertex_count()) {
        answer.stats.elapsed = Clock::now() - start;
        return answer;
    }
    // K_1 and K_2 need no search, whatever the component sizes
    if (t <= 2) {
        answer.contains = t == 1 || g.edge_count() > 0;
        if (answer.contains) {
            answer.witness.emplace();
            if (t == 1)
                answer.witness->branch_sets = {VertexSet{0}};
            else
                answer.witness->branch_sets = {VertexSet{g.edges()[0].first}, VertexSet{g.edges()[0].second}};
        }
        answer.stats.elapsed = Clock::now() - start;
        return answer;
    }
    Deadline deadline(options.time_budget);
    for (const auto& component : connected_components(g)) {
        if (component.size() < static_cast<std::size_t>(t))
            continue;
        if (auto w = search_component(to_work(g, component), t, options, deadline, answer.stats.nodes)) {
            answer.contains = true;
            answer.witness = std::move(w);
            break;
        }
    }
    answer.stats.elapsed = Clock::now() - start;
    return answer;
}

int hadwiger_number(const Graph& g, const MinorSearchOptions& options)
{
    if (g.vertex_count() == 0)
        throw InvalidArgument("hadwiger_number needs at least one vertex");
    int t = 1;
    while (has_clique_minor(g, t + 1, options).contains)
        ++t;
    return t;
}

bool check_witness(const Graph& g, const BranchSetWitness& w)
{
    const std::size_t n = g.vertex_count();
    constexpr std::size_t none = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> owner(n, none);
    for (std::size_t i = 0; i < w.branch_sets.size(); ++i)
        for (Vertex v : w.branch_sets[i]) {
            if (v >= n)
                throw InvalidArgument("branch set references vertex " + std::to_string(v) + " outside the graph");
        }
    for (std::size_t i = 0; i < w.branch_sets.size(); ++i) {
        if (w.branch_sets[i].empty())
            return false;
        for (Vertex v : w.branch_sets[i]) {
            if (owner[v] != none)
                return false;
            owner[v] = i;
        }
    }

    const std::size_t t = w.branch_sets.size();
    std::vector<char> touches(t * t, 0);
    std::vector<char> seen(n, 0);
    std::vector<Vertex> stack;
    for (std::size_t i = 0; i < t; ++i) {
        const auto& set = w.branch_sets[i];
        std::size_t reached = 0;
        stack.assign(1, set[0]);
        seen[set[0]] = 1;
        while (!stack.empty()) {
            Vertex v = stack.back();
            stack.pop_back();
            ++reached;
            for (Vertex u : g.neighbors(v)) {
                if (owner[u] == i && !seen[u]) {
                    seen[u] = 1;
                    stack.push_back(u);
                }
                else if (owner[u] != none && owner[u] != i) {
                    touches[i * t + owner[u]] = 1;
                }
            }
        }
        if (reached != set.size())
            return false;
    }
    for (std::size_t i = 0; i < t; ++i)
        for (std::size_t j = i + 1; j < t; ++j)
            if (!touches[i * t + j])
                return false;
    return true;
}

nlohmann::json to_json(const BranchSetWitness& w)
{
    nlohmann::json sets = nlohmann::json::array();
    for (const auto& s : w.branch_sets)
        sets.push_back(s.members());
    return {{"t", w.order()}, {"branch_sets", std::move(sets)}};
}

BranchSetWitness witness_from_json(const nlohmann::json& doc)
{
    BranchSetWitness w;
    for (const auto& s : doc.at("branch_sets"))
        w.branch_sets.emplace_back(s.get<std::vector<Vertex>>());
    if (doc.contains("t") && doc.at("t").get<std::size_t>() != w.order())
        throw InvalidArgument("witness \"t\" does not match the number of branch sets");
    return w;
}

} // namespace lhc
