#include "lhc/construction.hpp"

#include "lhc/errors.hpp"
#include "lhc/graph_io.hpp"

#include <algorithm>
#include <exception>
#include <limits>
#include <thread>

namespace lhc {

namespace {

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b)
{
    if (b != 0 && a > std::numeric_limits<std::uint64_t>::max() / b)
        throw ResourceLimit("count overflows 64 bits");
    return a * b;
}

std::uint64_t falling_factorial(std::uint64_t q, int k)
{
    std::uint64_t out = 1;
    for (int i = 0; i < k; ++i)
        out = checked_mul(out, q - static_cast<std::uint64_t>(i));
    return out;
}

BigCount big_pow(std::uint64_t base, int exp)
{
    BigCount out = 1;
    for (int i = 0; i < exp; ++i)
        out *= base;
    return out;
}

std::size_t choose2(std::size_t n)
{
    return n * (n - (n > 0 ? 1 : 0)) / 2;
}

nlohmann::json count_json(const BigCount& value)
{
    if (value <= std::numeric_limits<std::uint64_t>::max())
        return value.convert_to<std::uint64_t>();
    return value.str();
}

nlohmann::json exhaustive_payload(const Graph& g, int t, const MinorAnswer& answer, std::string_view subject)
{
    return {{"t", t},
            {"graph6", to_graph6(g)},
            {"method", "exhaustive"},
            {"nodes", answer.stats.nodes},
            {"subject", subject}};
}

/// Runs `check` over every class, `jobs` classes at a time. Results are stored
/// by index so the output does not depend on scheduling.
std::vector<GadgetVerdict> check_classes(const ConstructionParams& params, const std::vector<PatternClass>& classes,
                                         unsigned jobs)
{
    std::vector<GadgetVerdict> verdicts(classes.size());
    auto work = [&](std::size_t first, std::size_t stride) {
        for (std::size_t i = first; i < classes.size(); i += stride)
            verdicts[i] = check_gadget(params, classes[i].representative);
    };
    jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(classes.size(), 1))));
    if (jobs == 1) {
        work(0, 1);
        return verdicts;
    }
    std::vector<std::exception_ptr> errors(jobs);
    {
        std::vector<std::jthread> pool;
        for (unsigned j = 0; j < jobs; ++j)
            pool.emplace_back([&, j] {
                try {
                    work(j, jobs);
                }
                catch (...) {
                    errors[j] = std::current_exception();
                }
            });
    }
    for (const auto& e : errors)
        if (e)
            std::rethrow_exception(e);
    return verdicts;
}

} // namespace

char case_letter(Case c) noexcept
{
    switch (c) {
    case Case::a:
        return 'a';
    case Case::b:
        return 'b';
    case Case::c:
        return 'c';
    }
    return '?';
}

Case parse_case(std::string_view text)
{
    if (text == "a")
        return Case::a;
    if (text == "b")
        return Case::b;
    if (text == "c")
        return Case::c;
    throw InvalidArgument("case must be a, b or c (got \"" + std::string(text) + "\")");
}

std::string gadget_name(GadgetKind kind, int r)
{
    return kind == GadgetKind::matched_pairs ? "K_{" + std::to_string(r) + "x2}"
                                             : "K_{1," + std::to_string(r) + "x2}";
}

ConstructionParams params_for(Case kase, int t)
{
    if (t < 1)
        throw InvalidArgument("t must be at least 1");
    ConstructionParams params{.kase = kase, .t = t};
    int minor_bound = 0;
    switch (kase) {
    case Case::a:
        params.p = 3 * t + 2;
        params.q = 4 * t;
        params.r = 2 * t + 1;
        params.gadget = GadgetKind::matched_pairs;
        minor_bound = 3 * params.r / 2 + 1;
        break;
    case Case::b:
        params.p = 3 * t + 1;
        params.q = 4 * t - 2;
        params.r = 2 * t;
        params.gadget = GadgetKind::matched_pairs;
        minor_bound = 3 * params.r / 2 + 1;
        break;
    case Case::c:
        params.p = 3 * t;
        params.q = 4 * t - 3;
        params.r = 2 * t - 1;
        params.gadget = GadgetKind::matched_pairs_with_apex;
        minor_bound = 3 * params.r / 2 + 2;
        break;
    }
    if (minor_bound != params.p)
        throw std::logic_error("parameter row violates the floor(3r/2) identity");
    return params;
}

nlohmann::json to_json(const ConstructionParams& params)
{
    return {{"case", std::string(1, case_letter(params.kase))},
            {"t", params.t},
            {"p", params.p},
            {"q", params.q},
            {"r", params.r},
            {"gadget", gadget_name(params.gadget, params.r)}};
}

ConstructionParams params_from_json(const nlohmann::json& doc)
{
    auto params = params_for(parse_case(doc.at("case").get<std::string>()), doc.at("t").get<int>());
    for (const char* key : {"p", "q", "r"})
        if (doc.contains(key)) {
            const int recorded = doc.at(key).get<int>();
            const int expected = key[0] == 'p' ? params.p : key[0] == 'q' ? params.q : params.r;
            if (recorded != expected)
                throw InvalidArgument(std::string("recorded ") + key + " does not match the parameter table");
        }
    return params;
}

GadgetTemplate gadget_template(const ConstructionParams& params)
{
    GadgetTemplate out;
    out.graph = params.gadget == GadgetKind::matched_pairs ? k_r_times_2(params.r) : k_1_r_times_2(params.r);
    std::vector<Vertex> roots;
    for (int i = 0; i < params.r; ++i) {
        out.pairs.emplace_back(2 * i, 2 * i + 1);
        roots.push_back(static_cast<Vertex>(2 * i));
    }
    out.root_clique = VertexSet(std::move(roots));
    return out;
}

void require_valid_vector(const ConstructionParams& params, const ColorVector& c)
{
    if (c.size() != static_cast<std::size_t>(params.r))
        throw InvalidArgument("color vector must have length r = " + std::to_string(params.r));
    for (Color x : c)
        if (x < 1 || x > static_cast<Color>(params.q))
            throw InvalidArgument("color vector entries must lie in [1, q]");
}

ListAssignment gadget_lists(const ConstructionParams& params, const ColorVector& c)
{
    require_valid_vector(params, c);
    std::vector<Color> base;
    for (Color x = 1; x <= static_cast<Color>(params.q); ++x)
        base.push_back(x);
    std::vector<std::vector<Color>> lists(static_cast<std::size_t>(params.gadget_order()), base);
    for (int i = 0; i < params.r; ++i) {
        auto& w = lists[2 * i + 1];
        w.clear();
        for (Color x = 1; x <= params.palette_size(); ++x)
            if (x != c[i])
                w.push_back(x);
    }
    return ListAssignment(params.palette_size(), std::move(lists));
}

bool root_is_proper(const ColorVector& c)
{
    auto sorted = c;
    std::sort(sorted.begin(), sorted.end());
    return std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
}

GadgetVerdict check_gadget(const ConstructionParams& params, const ColorVector& c, bool solve_improper)
{
    require_valid_vector(params, c);
    GadgetVerdict verdict;
    verdict.improper_root = !root_is_proper(c);
    if (verdict.improper_root && !solve_improper) {
        verdict.blocked = true;
        return verdict;
    }
    const auto gadget = gadget_template(params);
    Precoloring roots;
    for (int i = 0; i < params.r; ++i)
        roots[gadget.pairs[i].first] = c[i];
    const auto result = l_colorable(gadget.graph, gadget_lists(params, c), roots);
    verdict.blocked = !result.colorable();
    verdict.stats = result.stats;
    return verdict;
}

bool gadget_blocked(const ConstructionParams& params, const ColorVector& c)
{
    return check_gadget(params, c).blocked;
}

std::vector<PatternClass> color_pattern_classes(const ConstructionParams& params)
{
    constexpr std::size_t class_cap = 10'000'000;
    const int r = params.r;
    std::vector<PatternClass> out;
    // Restricted growth strings: rgs[0] = 0, rgs[i] <= max(rgs[0..i-1]) + 1.
    std::vector<int> rgs(static_cast<std::size_t>(r), 0);
    std::vector<int> prefix_max(static_cast<std::size_t>(r), 0);
    while (true) {
        const int blocks = prefix_max[r - 1] + 1;
        if (blocks <= params.q) {
            if (out.size() >= class_cap)
                throw ResourceLimit("too many pattern classes");
            PatternClass cls;
            for (int x : rgs)
                cls.representative.push_back(static_cast<Color>(x + 1));
            cls.blocks = blocks;
            cls.size = falling_factorial(static_cast<std::uint64_t>(params.q), blocks);
            out.push_back(std::move(cls));
        }
        int i = r - 1;
        while (i > 0 && rgs[i] == prefix_max[i - 1] + 1)
            --i;
        if (i == 0)
            break;
        ++rgs[i];
        prefix_max[i] = std::max(prefix_max[i - 1], rgs[i]);
        for (int j = i + 1; j < r; ++j) {
            rgs[j] = 0;
            prefix_max[j] = prefix_max[i];
        }
    }
    return out;
}

std::vector<PatternClass> all_color_vectors(const ConstructionParams& params, std::uint64_t cap)
{
    const BigCount total = big_pow(static_cast<std::uint64_t>(params.q), params.r);
    if (total > cap)
        throw ResourceLimit("q^r = " + total.str() + " color vectors exceed the cap of " + std::to_string(cap));
    const auto n = total.convert_to<std::uint64_t>();
    std::vector<PatternClass> out;
    out.reserve(n);
    for (std::uint64_t k = 0; k < n; ++k) {
        PatternClass cls;
        cls.representative = vector_for_copy(params, k);
        cls.size = 1;
        auto sorted = cls.representative;
        std::sort(sorted.begin(), sorted.end());
        cls.blocks = static_cast<int>(std::unique(sorted.begin(), sorted.end()) - sorted.begin());
        out.push_back(std::move(cls));
    }
    return out;
}

ColorVector vector_for_copy(const ConstructionParams& params, std::uint64_t index)
{
    ColorVector c(static_cast<std::size_t>(params.r));
    for (int i = params.r - 1; i >= 0; --i) {
        c[i] = static_cast<Color>(index % static_cast<std::uint64_t>(params.q)) + 1;
        index /= static_cast<std::uint64_t>(params.q);
    }
    return c;
}

BuildStats build_stats(const ConstructionParams& params)
{
    BuildStats s;
    const auto r = static_cast<std::size_t>(params.r);
    s.gadget_vertices = static_cast<std::size_t>(params.gadget_order());
    s.gadget_edges = choose2(s.gadget_vertices) - r;
    s.copy_vertices = static_cast<std::size_t>(params.copy_size());
    s.copy_edges = s.gadget_edges - choose2(r);
    s.n_gadgets = big_pow(static_cast<std::uint64_t>(params.q), params.r);
    s.n_vertices = BigCount(r) + s.n_gadgets * s.copy_vertices;
    s.n_edges = BigCount(choose2(r)) + s.n_gadgets * s.copy_edges;
    return s;
}

Vertex copy_vertex(const ConstructionParams& params, std::uint64_t copy, Vertex v)
{
    const auto r = static_cast<Vertex>(params.r);
    if (v < 2 * r && v % 2 == 0)
        return v / 2;
    const std::uint64_t base = r + copy * static_cast<std::uint64_t>(params.copy_size());
    const std::uint64_t offset = v < 2 * r ? (v - 1) / 2 : r;
    return static_cast<Vertex>(base + offset);
}

BuiltInstance build_full(const ConstructionParams& params, const BuildOptions& options)
{
    const auto stats = build_stats(params);
    if (stats.n_vertices > options.vertex_cap)
        throw ResourceLimit("instance has " + stats.n_vertices.str() + " vertices, above the cap of " +
                            std::to_string(options.vertex_cap) + "; use stats-only mode");
    const auto n = stats.n_vertices.convert_to<std::uint64_t>();
    const auto copies = stats.n_gadgets.convert_to<std::uint64_t>();
    const auto gadget = gadget_template(params);
    const auto r = static_cast<Vertex>(params.r);

    GraphBuilder b(n);
    b.reserve_edges(stats.n_edges.convert_to<std::size_t>());
    std::vector<std::vector<Color>> lists(n);
    std::vector<Color> base;
    for (Color x = 1; x <= static_cast<Color>(params.q); ++x)
        base.push_back(x);

    for (Vertex i = 0; i < r; ++i) {
        b.set_label(i, "v");
        lists[i] = base;
        for (Vertex j = i + 1; j < r; ++j)
            b.add_edge(i, j);
    }
    for (std::uint64_t k = 0; k < copies; ++k) {
        const auto c = vector_for_copy(params, k);
        for (auto [u, v] : gadget.graph.edges()) {
            const Vertex gu = copy_vertex(params, k, u);
            const Vertex gv = copy_vertex(params, k, v);
            if (gu >= r || gv >= r)
                b.add_edge(gu, gv);
        }
        for (Vertex i = 0; i < r; ++i) {
            const Vertex w = copy_vertex(params, k, 2 * i + 1);
            b.set_label(w, "w");
            for (Color x = 1; x <= params.palette_size(); ++x)
                if (x != c[i])
                    lists[w].push_back(x);
        }
        if (params.gadget == GadgetKind::matched_pairs_with_apex)
            lists[copy_vertex(params, k, 2 * r)] = base;
    }
    return {std::move(b).build(), ListAssignment(params.palette_size(), std::move(lists))};
}

nlohmann::json manifest(const ConstructionParams& params, const BuildStats& stats, std::string_view mode)
{
    return {{"case", std::string(1, case_letter(params.kase))},
            {"t", params.t},
            {"p", params.p},
            {"q", params.q},
            {"r", params.r},
            {"n_vertices", count_json(stats.n_vertices)},
            {"n_edges", count_json(stats.n_edges)},
            {"n_gadgets", count_json(stats.n_gadgets)},
            {"mode", mode}};
}

Certificate verify_minor_free(const ConstructionParams& params, const Graph* built, const MinorFreeOptions& options)
{
    const auto gadget = gadget_template(params);
    const auto answer = has_clique_minor(gadget.graph, params.p, options.search);
    if (answer.contains)
        throw ConstructionRefuted("gadget " + gadget_name(params.gadget, params.r) + " has a K_" +
                                      std::to_string(params.p) + " minor",
                                  answer.witness);
    if (!gadget.graph.is_clique(gadget.root_clique))
        throw ConstructionRefuted("gadget root set is not a clique");

    const auto root = VertexSet::range(0, static_cast<Vertex>(params.r));
    if (built && !built->is_clique(root))
        throw ConstructionRefuted("shared root set of the built graph is not a clique");

    Certificate gadget_cert{CertificateKind::exhaustive_negative,
                            exhaustive_payload(gadget.graph, params.p, answer, "gadget"),
                            {}};
    gadget_cert.payload["name"] = gadget_name(params.gadget, params.r);

    Certificate cert{CertificateKind::compositional_pasting, nlohmann::json::object(), {std::move(gadget_cert)}};
    cert.payload["t"] = params.p;
    cert.payload["params"] = to_json(params);
    cert.payload["gluing_clique"] = root.members();
    cert.payload["gadget_root"] = gadget.root_clique.members();
    cert.payload["copies"] = count_json(build_stats(params).n_gadgets);

    if (built && built->vertex_count() <= options.direct_vertex_cap) {
        const auto direct = has_clique_minor(*built, params.p, options.search);
        if (direct.contains)
            throw ConstructionRefuted("built graph has a K_" + std::to_string(params.p) +
                                          " minor although every gadget is free of one",
                                      direct.witness);
        cert.payload["direct_check"] =
            to_json(Certificate{CertificateKind::exhaustive_negative,
                                exhaustive_payload(*built, params.p, direct, "whole-graph"),
                                {}});
    }
    return cert;
}

Certificate verify_not_colorable(const ConstructionParams& params, const NotColorableOptions& options,
                                 const BuiltInstance* built)
{
    Certificate cert{CertificateKind::non_colorability, nlohmann::json::object(), {}};
    cert.payload["params"] = to_json(params);
    cert.payload["palette_size"] = params.palette_size();
    cert.payload["list_size"] = params.q;

    if (options.mode == ColorCheckMode::direct) {
        if (!built)
            throw PreconditionViolation("direct non-colorability check needs the built instance");
        for (Vertex v = 0; v < built->graph.vertex_count(); ++v)
            if (built->lists.list_size(v) != static_cast<std::size_t>(params.q))
                throw ConstructionRefuted("vertex " + std::to_string(v) + " does not have a list of size q");
        const auto result = l_colorable(built->graph, built->lists);
        if (result.colorable())
            throw ConstructionRefuted("the built instance has an L-coloring");
        cert.payload["mode"] = "direct";
        cert.payload["n_vertices"] = built->graph.vertex_count();
        cert.payload["status"] = "not-colorable";
        cert.payload["nodes"] = result.stats.nodes;
        cert.payload["backtracks"] = result.stats.backtracks;
        return cert;
    }

    const auto classes = options.symmetry ? color_pattern_classes(params) : all_color_vectors(params);
    const auto verdicts = check_classes(params, classes, options.jobs);
    BigCount covered = 0;
    auto entries = nlohmann::json::array();
    for (std::size_t i = 0; i < classes.size(); ++i) {
        if (!verdicts[i].blocked) {
            std::string vec;
            for (Color x : classes[i].representative)
                vec += (vec.empty() ? "" : ",") + std::to_string(x);
            throw ConstructionRefuted("gadget H(" + vec + ") is L-colorable");
        }
        covered += classes[i].size;
        entries.push_back({{"representative", classes[i].representative},
                           {"size", classes[i].size},
                           {"verdict", verdicts[i].improper_root ? "improper-root" : "blocked"},
                           {"nodes", verdicts[i].stats.nodes}});
    }
    if (covered != build_stats(params).n_gadgets)
        throw std::logic_error("color classes do not cover [1, q]^r");
    cert.payload["mode"] = "compositional";
    cert.payload["symmetry"] = options.symmetry;
    cert.payload["covered"] = count_json(covered);
    cert.payload["classes"] = std::move(entries);
    return cert;
}

bool verify_degeneracy(const ConstructionParams& params, const Graph& built)
{
    return degeneracy(built).degeneracy <= static_cast<std::size_t>(params.q);
}

VerifyReport verify_construction(Case kase, int t, const VerifyOptions& options)
{
    VerifyReport report;
    report.params = params_for(kase, t);
    report.stats = build_stats(report.params);
    const auto& params = report.params;

    std::optional<BuiltInstance> built;
    if (options.mode == ColorCheckMode::direct || report.stats.n_vertices <= options.minor.direct_vertex_cap)
        built = build_full(params, options.build);

    report.certificates.push_back(verify_minor_free(params, built ? &built->graph : nullptr, options.minor));

    NotColorableOptions color{.mode = ColorCheckMode::compositional,
                              .symmetry = options.symmetry.value_or(t >= 2),
                              .jobs = options.jobs};
    if (options.mode == ColorCheckMode::direct) {
        color.mode = ColorCheckMode::direct;
        report.certificates.push_back(verify_not_colorable(params, color, &*built));
        color.mode = ColorCheckMode::compositional;
    }
    report.certificates.push_back(verify_not_colorable(params, color, nullptr));

    if (built) {
        report.degeneracy = degeneracy(built->graph).degeneracy;
        if (*report.degeneracy > static_cast<std::size_t>(params.q))
            throw ConstructionRefuted("built graph is " + std::to_string(*report.degeneracy) +
                                      "-degenerate, more than q");
    }
    report.materialized = built.has_value();
    report.verified = true;
    return report;
}

nlohmann::json VerifyReport::bundle() const
{
    nlohmann::json doc{{"format", "lhc-certificate-bundle/1"},
                       {"params", to_json(params)},
                       {"manifest", manifest(params, stats, materialized ? "full" : "stats-only")},
                       {"verdict", verified ? "verified" : "refuted"}};
    auto certs = nlohmann::json::array();
    for (const auto& c : certificates)
        certs.push_back(to_json(c));
    doc["certificates"] = std::move(certs);
    if (degeneracy)
        doc["degeneracy"] = {{"value", *degeneracy}, {"bound", params.q}};
    return doc;
}

std::vector<LowerBoundRow> lower_bound_table()
{
    std::vector<LowerBoundRow> rows;
    for (int order = 3; order <= 11; ++order) {
        std::optional<ConstructionParams> found;
        for (int t = 1; t <= order && !found; ++t)
            for (Case kase : {Case::a, Case::b, Case::c}) {
                auto params = params_for(kase, t);
                if (params.p == order) {
                    found = params;
                    break;
                }
            }
        if (!found)
            throw std::logic_error("no construction row for K_" + std::to_string(order));
        rows.push_back({order, found->q + 1, *found});
    }
    return rows;
}

} // namespace lhc
