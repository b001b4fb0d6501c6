#include "lhc/list_color.hpp"

#include "lhc/errors.hpp"

#include <algorithm>
#include <bit>
#include <string>

namespace lhc {

namespace {

using Mask = std::uint64_t;

constexpr Mask color_bit(Color c) { return Mask{1} << (c - 1); }

void check_precoloring(const ListAssignment& lists, const Precoloring& precolored)
{
    for (auto [v, c] : precolored) {
        if (v >= lists.vertex_count())
            throw InvalidArgument("precolored vertex " + std::to_string(v) + " out of range");
        if (!lists.allows(v, c))
            throw PreconditionViolation("precolor " + std::to_string(c) + " of vertex " + std::to_string(v) +
                                        " is not in its list");
    }
}

class Solver {
  public:
    Solver(const Graph& g, std::vector<Mask> domains)
        : g_(g), domain_(std::move(domains)), color_(g.vertex_count(), 0), mark_(g.vertex_count(), 0)
    {}

    bool run()
    {
        std::vector<Vertex> all(g_.vertex_count());
        for (Vertex v = 0; v < all.size(); ++v)
            all[v] = v;
        return solve(all);
    }

    Coloring coloring() const { return color_; }
    const SolveStats& stats() const noexcept { return stats_; }

  private:
    /// Colors every vertex of `uncolored`, one connected component at a time.
    bool solve(const std::vector<Vertex>& uncolored)
    {
        for (const auto& component : components(uncolored))
            if (!solve_component(component))
                return false;
        return true;
    }

    std::vector<std::vector<Vertex>> components(const std::vector<Vertex>& vertices)
    {
        ++epoch_;
        for (Vertex v : vertices)
            mark_[v] = epoch_;
        // Members are visited in ascending order, so components come out
        // sorted by their smallest vertex.
        std::vector<std::vector<Vertex>> out;
        ++epoch_;
        for (Vertex s : vertices) {
            if (mark_[s] != epoch_ - 1)
                continue;
            std::vector<Vertex> comp{s};
            mark_[s] = epoch_;
            for (std::size_t i = 0; i < comp.size(); ++i)
                for (Vertex u : g_.neighbors(comp[i]))
                    if (mark_[u] == epoch_ - 1) {
                        mark_[u] = epoch_;
                        comp.push_back(u);
                    }
            std::sort(comp.begin(), comp.end());
            out.push_back(std::move(comp));
        }
        return out;
    }

    bool solve_component(const std::vector<Vertex>& comp)
    {
        // Minimum remaining values, lowest id on ties.
        Vertex pick = comp.front();
        for (Vertex v : comp)
            if (std::popcount(domain_[v]) < std::popcount(domain_[pick]))
                pick = v;

        std::vector<Vertex> rest;
        rest.reserve(comp.size() - 1);
        for (Vertex v : comp)
            if (v != pick)
                rest.push_back(v);

        for (Mask options = domain_[pick]; options; options &= options - 1) {
            const Color c = static_cast<Color>(std::countr_zero(options)) + 1;
            ++stats_.nodes;
            const std::size_t mark = trail_.size();
            color_[pick] = c;
            bool wiped_out = false;
            for (Vertex u : g_.neighbors(pick)) {
                if (color_[u] != 0 || !(domain_[u] & color_bit(c)))
                    continue;
                trail_.emplace_back(u, domain_[u]);
                domain_[u] &= ~color_bit(c);
                if (domain_[u] == 0) {
                    wiped_out = true;
                    break;
                }
            }
            if (!wiped_out && solve(rest))
                return true;
            ++stats_.backtracks;
            undo(mark);
            for (Vertex v : rest)
                color_[v] = 0;
        }
        color_[pick] = 0;
        return false;
    }

    void undo(std::size_t mark)
    {
        while (trail_.size() > mark) {
            auto [v, old] = trail_.back();
            trail_.pop_back();
            domain_[v] = old;
        }
    }

    const Graph& g_;
    std::vector<Mask> domain_;
    Coloring color_;
    std::vector<std::uint32_t> mark_;
    std::uint32_t epoch_ = 0;
    std::vector<std::pair<Vertex, Mask>> trail_;
    SolveStats stats_;
};

} // namespace

ListAssignment::ListAssignment(Color palette_size, std::vector<std::vector<Color>> lists) : palette_size_(palette_size)
{
    if (palette_size == 0 || palette_size > max_palette)
        throw InvalidArgument("palette size must be in [1, 64]");
    masks_.reserve(lists.size());
    for (std::size_t v = 0; v < lists.size(); ++v) {
        if (lists[v].empty())
            throw InvalidArgument("vertex " + std::to_string(v) + " has an empty list");
        Mask m = 0;
        for (Color c : lists[v]) {
            if (c == 0 || c > palette_size)
                throw InvalidArgument("color " + std::to_string(c) + " of vertex " + std::to_string(v) +
                                      " outside the palette");
            m |= color_bit(c);
        }
        masks_.push_back(m);
    }
}

ListAssignment ListAssignment::uniform(std::size_t n, Color k, Color palette_size)
{
    std::vector<Color> list;
    for (Color c = 1; c <= k; ++c)
        list.push_back(c);
    return ListAssignment(palette_size == 0 ? k : palette_size, std::vector<std::vector<Color>>(n, list));
}

std::vector<Color> ListAssignment::list(Vertex v) const
{
    std::vector<Color> out;
    for (Mask m = mask(v); m; m &= m - 1)
        out.push_back(static_cast<Color>(std::countr_zero(m)) + 1);
    return out;
}

std::size_t ListAssignment::list_size(Vertex v) const
{
    return static_cast<std::size_t>(std::popcount(mask(v)));
}

bool ListAssignment::allows(Vertex v, Color c) const
{
    return c >= 1 && c <= palette_size_ && (mask(v) & color_bit(c));
}

std::size_t ListAssignment::min_list_size() const noexcept
{
    std::size_t best = masks_.empty() ? 0 : static_cast<std::size_t>(std::popcount(masks_[0]));
    for (Mask m : masks_)
        best = std::min(best, static_cast<std::size_t>(std::popcount(m)));
    return best;
}

void ListAssignment::require_matches(const Graph& g) const
{
    if (masks_.size() != g.vertex_count())
        throw InvalidArgument("list assignment covers " + std::to_string(masks_.size()) + " vertices, graph has " +
                              std::to_string(g.vertex_count()));
}

SolveResult l_colorable(const Graph& g, const ListAssignment& lists, const Precoloring& precolored)
{
    lists.require_matches(g);
    check_precoloring(lists, precolored);
    std::vector<Mask> domains(g.vertex_count());
    for (Vertex v = 0; v < domains.size(); ++v)
        domains[v] = lists.mask(v);
    for (auto [v, c] : precolored)
        domains[v] = color_bit(c);

    Solver solver(g, std::move(domains));
    SolveResult result;
    if (solver.run()) {
        result.status = ColorStatus::colorable;
        result.coloring = solver.coloring();
    }
    result.stats = solver.stats();
    return result;
}

SolveResult exhaustive_l_colorable(const Graph& g, const ListAssignment& lists, const Precoloring& precolored,
                                   std::uint64_t product_cap)
{
    lists.require_matches(g);
    check_precoloring(lists, precolored);
    const std::size_t n = g.vertex_count();
    std::vector<std::vector<Color>> choices(n);
    std::uint64_t product = 1;
    for (Vertex v = 0; v < n; ++v) {
        auto it = precolored.find(v);
        choices[v] = it != precolored.end() ? std::vector<Color>{it->second} : lists.list(v);
        if (product > product_cap / choices[v].size())
            throw ResourceLimit("list product exceeds the exhaustive cap of " + std::to_string(product_cap));
        product *= choices[v].size();
    }

    SolveResult result;
    std::vector<std::size_t> digit(n, 0);
    Coloring coloring(n);
    while (true) {
        ++result.stats.nodes;
        for (Vertex v = 0; v < n; ++v)
            coloring[v] = choices[v][digit[v]];
        if (check_coloring(g, lists, coloring)) {
            result.status = ColorStatus::colorable;
            result.coloring = coloring;
            return result;
        }
        std::size_t i = 0;
        while (i < n && ++digit[i] == choices[i].size())
            digit[i++] = 0;
        if (i == n)
            break;
    }
    return result;
}

bool check_coloring(const Graph& g, const ListAssignment& lists, std::span<const Color> coloring)
{
    if (coloring.size() != g.vertex_count() || lists.vertex_count() != g.vertex_count())
        return false;
    for (Vertex v = 0; v < coloring.size(); ++v)
        if (!lists.allows(v, coloring[v]))
            return false;
    for (auto [u, v] : g.edges())
        if (coloring[u] == coloring[v])
            return false;
    return true;
}

std::optional<Coloring> greedy_along_order(const Graph& g, const ListAssignment& lists,
                                           std::span<const Vertex> elimination_order)
{
    lists.require_matches(g);
    Coloring coloring(g.vertex_count(), 0);
    for (auto it = elimination_order.rbegin(); it != elimination_order.rend(); ++it) {
        Mask free = lists.mask(*it);
        for (Vertex u : g.neighbors(*it))
            if (coloring[u] != 0)
                free &= ~color_bit(coloring[u]);
        if (free == 0)
            return std::nullopt;
        coloring[*it] = static_cast<Color>(std::countr_zero(free)) + 1;
    }
    return coloring;
}

nlohmann::json to_json(const ListAssignment& lists)
{
    auto per_vertex = nlohmann::json::object();
    for (Vertex v = 0; v < lists.vertex_count(); ++v)
        per_vertex[std::to_string(v)] = lists.list(v);
    return {{"palette_size", lists.palette_size()}, {"lists", std::move(per_vertex)}};
}

ListAssignment lists_from_json(const nlohmann::json& doc)
{
    try {
        const auto palette = doc.at("palette_size").get<Color>();
        const auto& entries = doc.at("lists");
        std::vector<std::vector<Color>> lists(entries.size());
        for (const auto& [key, colors] : entries.items()) {
            std::size_t used = 0;
            const auto v = std::stoul(key, &used);
            if (used != key.size() || v >= lists.size())
                throw ParseError("list-assignment: vertex keys must be 0..n-1, got \"" + key + "\"", 0);
            lists[v] = colors.get<std::vector<Color>>();
        }
        return ListAssignment(palette, std::move(lists));
    }
    catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("list-assignment: ") + e.what(), 0);
    }
    catch (const std::logic_error& e) {
        throw ParseError(std::string("list-assignment: ") + e.what(), 0);
    }
}

nlohmann::json coloring_to_json(std::span<const Color> coloring)
{
    auto out = nlohmann::json::object();
    for (Vertex v = 0; v < coloring.size(); ++v)
        if (coloring[v] != 0)
            out[std::to_string(v)] = coloring[v];
    return out;
}

Precoloring precoloring_from_json(const nlohmann::json& doc)
{
    try {
        Precoloring out;
        for (const auto& [key, c] : doc.items())
            out[static_cast<Vertex>(std::stoul(key))] = c.get<Color>();
        return out;
    }
    catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("precoloring: ") + e.what(), 0);
    }
    catch (const std::logic_error& e) {
        throw ParseError(std::string("precoloring: ") + e.what(), 0);
    }
}

nlohmann::json to_json(const SolveResult& result)
{
    nlohmann::json doc{{"status", result.colorable() ? "colorable" : "not-colorable"},
                       {"stats", {{"nodes", result.stats.nodes}, {"backtracks", result.stats.backtracks}}}};
    if (result.coloring)
        doc["coloring"] = coloring_to_json(*result.coloring);
    return doc;
}

} // namespace lhc
