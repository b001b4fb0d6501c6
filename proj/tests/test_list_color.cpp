#include "lhc/errors.hpp"
#include "lhc/list_color.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace lhc;

namespace {

ListAssignment lists(Color palette, std::vector<std::vector<Color>> l)
{
    return ListAssignment(palette, std::move(l));
}

void check_same(const Graph& g, const ListAssignment& L, const Precoloring& pre = {})
{
    auto a = l_colorable(g, L, pre);
    auto b = exhaustive_l_colorable(g, L, pre);
    CHECK(a.status == b.status);
    if (a.colorable()) {
        REQUIRE(a.coloring);
        CHECK(check_coloring(g, L, *a.coloring));
        for (auto [v, c] : pre)
            CHECK((*a.coloring)[v] == c);
    }
    else {
        CHECK_FALSE(a.coloring);
    }
}

} // namespace

TEST_CASE("[list_color] reference examples")
{
    auto single = Graph::from_edges(1, {});
    auto r = l_colorable(single, lists(1, {{1}}));
    REQUIRE(r.colorable());
    CHECK(*r.coloring == Coloring{1});
    check_same(single, lists(1, {{1}}));

    // v1 = 0, w1 = 1, u = 2 as laid out by k_1_r_times_2(1)
    auto p3 = k_1_r_times_2(1);
    auto Lc = lists(2, {{1}, {2}, {1}});
    CHECK_FALSE(l_colorable(p3, Lc, {{0, 1}}).colorable());
    check_same(p3, Lc, {{0, 1}});

    // C4 = k_r_times_2(2): v1=0, w1=1, v2=2, w2=3
    auto c4 = k_r_times_2(2);
    auto Lb = lists(3, {{1, 2}, {2, 3}, {1, 2}, {1, 3}});
    CHECK_FALSE(l_colorable(c4, Lb, {{0, 1}, {2, 2}}).colorable());
    check_same(c4, Lb, {{0, 1}, {2, 2}});

    auto k33 = complete_multipartite({3, 3});
    auto L3 = ListAssignment::uniform(6, 3);
    CHECK(l_colorable(k33, L3).colorable());
    check_same(k33, L3);
}

TEST_CASE("[list_color] precolor outside the list")
{
    auto g = complete_graph(2);
    CHECK_THROWS_AS(l_colorable(g, lists(2, {{1}, {2}}), {{0, 2}}), PreconditionViolation);
    CHECK_THROWS_AS(exhaustive_l_colorable(g, lists(2, {{1}, {2}}), {{0, 2}}), PreconditionViolation);
}

TEST_CASE("[list_color] list assignment validation")
{
    CHECK_THROWS_AS(lists(2, {{1}, {}}), InvalidArgument);
    CHECK_THROWS_AS(lists(2, {{3}}), InvalidArgument);
    CHECK_THROWS_AS(lists(2, {{0}}), InvalidArgument);
    CHECK_THROWS_AS(ListAssignment(65, {{1}}), InvalidArgument);
    CHECK_THROWS_AS(l_colorable(complete_graph(3), ListAssignment::uniform(2, 3)), InvalidArgument);
    auto L = lists(5, {{5, 1, 1}});
    CHECK(L.list(0) == std::vector<Color>{1, 5});
    CHECK(L.list_size(0) == 2);
}

TEST_CASE("[list_color] exhaustive cap")
{
    auto g = Graph::from_edges(12, {});
    CHECK_THROWS_AS(exhaustive_l_colorable(g, ListAssignment::uniform(12, 4), {}, 1000), ResourceLimit);
}

TEST_CASE("[list_color] check_coloring")
{
    auto k2 = complete_graph(2);
    CHECK(check_coloring(k2, lists(2, {{1}, {2}}), Coloring{1, 2}));
    CHECK_FALSE(check_coloring(k2, lists(1, {{1}, {1}}), Coloring{1, 1}));
    CHECK_FALSE(check_coloring(k2, lists(2, {{1}, {1}}), Coloring{1, 2})); // 2 not in list
    CHECK_FALSE(check_coloring(k2, lists(2, {{1}, {2}}), Coloring{1}));    // wrong length

    auto oct = complete_multipartite({2, 2, 2});
    CHECK(check_coloring(oct, ListAssignment::uniform(6, 3), Coloring{1, 1, 2, 2, 3, 3}));
}

TEST_CASE("[list_color] agrees with the exhaustive oracle")
{
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = 1 + rng() % 9;
        auto g = oracle::random_graph(rng, n, (rng() % 100) / 100.0);
        auto L = oracle::random_lists(rng, n, 1 + rng() % 5, 4);
        Precoloring pre;
        if (rng() % 3 == 0) {
            Vertex v = static_cast<Vertex>(rng() % n);
            auto l = L.list(v);
            pre[v] = l[rng() % l.size()];
        }
        check_same(g, L, pre);
        CHECK(l_colorable(g, L, pre).colorable() == !oracle::all_list_colorings(g, L, pre).empty());
    }
}

TEST_CASE("[list_color] enlarging a list never hurts")
{
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + rng() % 8;
        auto g = oracle::random_graph(rng, n, 0.5);
        const Color palette = 2 + rng() % 4;
        auto L = oracle::random_lists(rng, n, palette, 3);
        std::vector<std::vector<Color>> bigger;
        for (Vertex v = 0; v < n; ++v)
            bigger.push_back(L.list(v));
        bigger[rng() % n].push_back(static_cast<Color>(1 + rng() % palette));
        if (l_colorable(g, L).colorable())
            CHECK(l_colorable(g, ListAssignment(palette, bigger)).colorable());
    }
}

TEST_CASE("[list_color] lists above the degeneracy always admit a greedy coloring")
{
    std::mt19937_64 rng(47);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + rng() % 14;
        auto g = oracle::random_graph(rng, n, (rng() % 100) / 100.0);
        const auto d = degeneracy(g);
        const std::size_t k = d.degeneracy + 1;
        const Color palette = static_cast<Color>(k + rng() % 4);
        std::vector<std::vector<Color>> l(n);
        std::vector<Color> colors;
        for (Color c = 1; c <= palette; ++c)
            colors.push_back(c);
        for (auto& list : l) {
            std::shuffle(colors.begin(), colors.end(), rng);
            list.assign(colors.begin(), colors.begin() + static_cast<long>(k));
        }
        ListAssignment L(palette, l);
        CHECK(l_colorable(g, L).colorable());
        auto greedy = greedy_along_order(g, L, d.elimination_order);
        REQUIRE(greedy);
        CHECK(check_coloring(g, L, *greedy));
    }
}

TEST_CASE("[list_color] component splitting handles many independent pieces")
{
    // 200 disjoint triangles with lists of size 2 on one and size 3 elsewhere
    GraphBuilder b(600);
    std::vector<std::vector<Color>> l;
    for (Vertex i = 0; i < 200; ++i) {
        b.add_edge(3 * i, 3 * i + 1);
        b.add_edge(3 * i + 1, 3 * i + 2);
        b.add_edge(3 * i, 3 * i + 2);
        l.push_back({1, 2, 3});
        l.push_back({1, 2, 3});
        l.push_back(i == 199 ? std::vector<Color>{1, 2} : std::vector<Color>{1, 2, 3});
    }
    auto g = std::move(b).build();
    auto r = l_colorable(g, ListAssignment(3, l));
    REQUIRE(r.colorable());
    CHECK(check_coloring(g, ListAssignment(3, l), *r.coloring));
    // the last triangle with three copies of {1,2} is blocked
    l[597] = l[598] = l[599] = {1, 2};
    CHECK_FALSE(l_colorable(g, ListAssignment(3, l)).colorable());
}

TEST_CASE("[list_color] json round trips")
{
    auto L = lists(4, {{1, 2}, {3}, {1, 4}});
    auto doc = to_json(L);
    CHECK(doc["palette_size"] == 4);
    CHECK(doc["lists"]["2"] == nlohmann::json::parse("[1,4]"));
    CHECK(lists_from_json(doc) == L);
    CHECK(coloring_to_json(Coloring{2, 3, 1}) == nlohmann::json::parse(R"({"0":2,"1":3,"2":1})"));
    CHECK(precoloring_from_json(nlohmann::json::parse(R"({"3":2})")) == Precoloring{{3, 2}});
    auto res = to_json(l_colorable(complete_graph(3), L));
    CHECK(res["status"] == "colorable");
}
