#include "lhc/cli.hpp"

#include "lhc/certificate.hpp"
#include "lhc/construction.hpp"
#include "lhc/errors.hpp"
#include "lhc/graph_io.hpp"
#include "lhc/list_color.hpp"
#include "lhc/minor.hpp"

#include <CLI11.hpp>

#include <optional>
#include <ostream>
#include <sstream>
#include <string>

namespace lhc::cli {

namespace {

std::vector<Vertex> parse_ids(const std::string& text)
{
    std::vector<Vertex> ids;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty())
            continue;
        std::size_t used = 0;
        const auto v = std::stoul(item, &used);
        if (used != item.size())
            throw InvalidArgument("bad vertex id \"" + item + "\"");
        ids.push_back(static_cast<Vertex>(v));
    }
    return ids;
}

nlohmann::json read_json_file(const std::string& path)
{
    const auto text = read_text_file(path);
    try {
        return nlohmann::json::parse(text);
    }
    catch (const nlohmann::json::parse_error& e) {
        throw ParseError(path + ": " + e.what(), e.byte);
    }
}

struct Context {
    std::ostream& out;
    std::ostream& err;
    bool json = false;

    void emit(const nlohmann::json& doc, const std::string& human) const
    {
        if (json)
            out << doc.dump(2) << '\n';
        else
            out << human << '\n';
    }
};

struct BuildArgs {
    std::string kase;
    int t = 1;
    bool stats_only = false;
    std::string graph_out;
    std::string lists_out;
    std::uint64_t max_vertices = BuildOptions{}.vertex_cap;
};

int do_build(const Context& ctx, const BuildArgs& a)
{
    const auto params = params_for(parse_case(a.kase), a.t);
    const auto stats = build_stats(params);
    if (a.stats_only) {
        ctx.emit(manifest(params, stats, "stats-only"),
                 "case " + a.kase + " t=" + std::to_string(a.t) + ": " + stats.n_vertices.str() + " vertices, " +
                     stats.n_edges.str() + " edges, " + stats.n_gadgets.str() + " gadget copies (stats only)");
        return positive;
    }
    const auto built = build_full(params, {.vertex_cap = a.max_vertices});
    if (!a.graph_out.empty())
        save_graph(built.graph, a.graph_out);
    if (!a.lists_out.empty())
        write_text_file(a.lists_out, to_json(built.lists).dump() + "\n");
    ctx.emit(manifest(params, stats, "full"), "case " + a.kase + " t=" + std::to_string(a.t) + ": built " +
                                                  std::to_string(built.graph.vertex_count()) + " vertices, " +
                                                  std::to_string(built.graph.edge_count()) + " edges");
    return positive;
}

struct VerifyArgs {
    std::string kase;
    int t = 1;
    std::string mode = "compositional";
    std::string symmetry;
    std::string cert_out;
    unsigned jobs = 1;
    std::uint64_t max_vertices = BuildOptions{}.vertex_cap;
};

int do_verify(const Context& ctx, const VerifyArgs& a)
{
    VerifyOptions options;
    options.mode = a.mode == "direct" ? ColorCheckMode::direct : ColorCheckMode::compositional;
    if (!a.symmetry.empty())
        options.symmetry = a.symmetry == "on";
    options.jobs = a.jobs;
    options.build.vertex_cap = a.max_vertices;

    const auto kase = parse_case(a.kase);
    try {
        const auto report = verify_construction(kase, a.t, options);
        const auto bundle = report.bundle();
        if (!a.cert_out.empty())
            write_text_file(a.cert_out, bundle.dump(2) + "\n");
        const auto& p = report.params;
        ctx.err << "verified case " << a.kase << " t=" << a.t << ": K_" << p.p << "-minor-free, not " << p.q
                << "-choosable\n";
        ctx.emit(bundle, "verified: K_" + std::to_string(p.p) + "-minor-free graph that is not " +
                             std::to_string(p.q) + "-choosable (" + report.stats.n_vertices.str() + " vertices)");
        return positive;
    }
    catch (const ConstructionRefuted& e) {
        nlohmann::json doc{{"verdict", "refuted"}, {"reason", e.what()}};
        if (e.witness())
            doc["witness"] = to_json(*e.witness());
        ctx.emit(doc, std::string("refuted: ") + e.what());
        return negative;
    }
}

struct MinorArgs {
    std::string input;
    int target = 1;
    std::string witness_out;
    long timeout_ms = 0;
};

int do_minor(const Context& ctx, const MinorArgs& a)
{
    const auto g = load_graph(a.input);
    MinorSearchOptions options;
    if (a.timeout_ms > 0)
        options.time_budget = std::chrono::milliseconds(a.timeout_ms);
    const auto answer = has_clique_minor(g, a.target, options);

    Certificate cert;
    if (answer.contains) {
        cert.kind = CertificateKind::branch_set_positive;
        cert.payload = to_json(*answer.witness);
    }
    else {
        cert.kind = CertificateKind::exhaustive_negative;
        cert.payload = {{"t", a.target}, {"method", "exhaustive"}, {"nodes", answer.stats.nodes}};
    }
    cert.payload["graph6"] = to_graph6(g);
    if (!a.witness_out.empty())
        write_text_file(a.witness_out, to_json(cert).dump(2) + "\n");

    ctx.emit(to_json(cert), answer.contains ? "contains K_" + std::to_string(a.target) + " minor"
                                            : "no K_" + std::to_string(a.target) + " minor (" +
                                                  std::to_string(answer.stats.nodes) + " search nodes)");
    return answer.contains ? positive : negative;
}

struct ColorArgs {
    std::string graph;
    std::string lists;
    std::string precolor;
    std::string coloring_out;
};

int do_color(const Context& ctx, const ColorArgs& a)
{
    const auto g = load_graph(a.graph);
    const auto lists = lists_from_json(read_json_file(a.lists));
    Precoloring pre;
    if (!a.precolor.empty())
        pre = precoloring_from_json(read_json_file(a.precolor));
    const auto result = l_colorable(g, lists, pre);
    const auto doc = to_json(result);
    if (!a.coloring_out.empty())
        write_text_file(a.coloring_out, doc.dump(2) + "\n");
    ctx.emit(doc, result.colorable() ? "colorable" : "not colorable");
    return result.colorable() ? positive : negative;
}

int do_degeneracy(const Context& ctx, const std::string& input)
{
    const auto g = load_graph(input);
    const auto d = degeneracy(g);
    ctx.emit({{"degeneracy", d.degeneracy}, {"elimination_order", d.elimination_order}},
             std::to_string(d.degeneracy) + "-degenerate");
    return positive;
}

struct PasteArgs {
    std::string g1, g2, clique1, clique2, out;
};

int do_paste(const Context& ctx, const PasteArgs& a)
{
    const auto g1 = load_graph(a.g1);
    const auto g2 = load_graph(a.g2);
    const auto ids1 = parse_ids(a.clique1);
    const auto ids2 = parse_ids(a.clique2);
    if (ids1.size() != ids2.size())
        throw InvalidArgument("--clique1 and --clique2 must list the same number of vertices");
    std::vector<std::pair<Vertex, Vertex>> pairing;
    for (std::size_t i = 0; i < ids1.size(); ++i)
        pairing.emplace_back(ids1[i], ids2[i]);
    const auto g = paste(g1, VertexSet(ids1), g2, VertexSet(ids2), pairing);
    save_graph(g, a.out);
    ctx.emit({{"n_vertices", g.vertex_count()}, {"n_edges", g.edge_count()}},
             "pasted graph: " + std::to_string(g.vertex_count()) + " vertices, " + std::to_string(g.edge_count()) +
                 " edges");
    return positive;
}

int do_table(const Context& ctx)
{
    auto rows = nlohmann::json::array();
    std::ostringstream human;
    human << "t  lower-bound  witness\n";
    for (const auto& row : lower_bound_table()) {
        const auto& w = row.witness;
        rows.push_back({{"t", row.hadwiger_order},
                        {"lower_bound", row.lower_bound},
                        {"case", std::string(1, case_letter(w.kase))},
                        {"t_prime", w.t},
                        {"p", w.p},
                        {"q", w.q}});
        human << row.hadwiger_order << (row.hadwiger_order < 10 ? "  " : " ") << row.lower_bound
              << (row.lower_bound < 10 ? "            " : "           ") << "case " << case_letter(w.kase)
              << ", t'=" << w.t << ": K_" << w.p << "-minor-free, not " << w.q << "-choosable\n";
    }
    auto text = human.str();
    text.pop_back();
    ctx.emit(rows, text);
    return positive;
}

int do_check_cert(const Context& ctx, const std::string& cert_path, const std::string& graph_path)
{
    const auto doc = read_json_file(cert_path);
    std::optional<Graph> g;
    if (!graph_path.empty())
        g = load_graph(graph_path);
    const auto report = check_certificate(doc, g ? &*g : nullptr);
    for (const auto& p : report.problems)
        ctx.err << "rejected: " << p << '\n';
    ctx.emit({{"accepted", report.accepted}, {"problems", report.problems}},
             report.accepted ? "certificate accepted" : "certificate rejected");
    return report.accepted ? positive : negative;
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Build and verify K_p-minor-free graphs that are not q-choosable"};
    app.require_subcommand(1);
    Context ctx{out, err};
    app.add_flag("--json", ctx.json, "Print machine-readable JSON on standard output");

    const auto cases = CLI::IsMember({"a", "b", "c"});

    BuildArgs build;
    auto* build_cmd = app.add_subcommand("build", "Materialize the construction or report its size");
    build_cmd->add_option("--case", build.kase, "Construction row")->required()->check(cases);
    build_cmd->add_option("--t", build.t, "Row parameter t >= 1")->required()->check(CLI::PositiveNumber);
    auto* stats_flag = build_cmd->add_flag("--stats-only", build.stats_only, "Counts only, no materialization");
    auto* graph_opt = build_cmd->add_option("--graph", build.graph_out, "Write the graph (.g6 or .json)");
    auto* lists_opt = build_cmd->add_option("--lists", build.lists_out, "Write the list assignment JSON");
    build_cmd->add_option("--max-vertices", build.max_vertices, "Vertex cap for full builds");
    stats_flag->excludes(graph_opt)->excludes(lists_opt);

    VerifyArgs verify;
    auto* verify_cmd = app.add_subcommand("verify", "Verify minor-freeness and non-colorability");
    verify_cmd->add_option("--case", verify.kase, "Construction row")->required()->check(cases);
    verify_cmd->add_option("--t", verify.t, "Row parameter t >= 1")->required()->check(CLI::PositiveNumber);
    verify_cmd->add_option("--mode", verify.mode, "direct or compositional")
        ->check(CLI::IsMember({"direct", "compositional"}));
    verify_cmd->add_option("--symmetry", verify.symmetry, "on or off (default: on for t >= 2)")
        ->check(CLI::IsMember({"on", "off"}));
    verify_cmd->add_option("--cert", verify.cert_out, "Write the certificate bundle");
    verify_cmd->add_option("--jobs", verify.jobs, "Parallel gadget checks")->check(CLI::PositiveNumber);
    verify_cmd->add_option("--max-vertices", verify.max_vertices, "Vertex cap for full builds");

    MinorArgs minor;
    auto* minor_cmd = app.add_subcommand("minor", "Decide whether a graph has a K_T minor");
    minor_cmd->add_option("--input", minor.input, "Graph file")->required();
    minor_cmd->add_option("--target", minor.target, "Clique order T")->required()->check(CLI::PositiveNumber);
    minor_cmd->add_option("--witness", minor.witness_out, "Write the certificate");
    minor_cmd->add_option("--timeout-ms", minor.timeout_ms, "Wall-clock budget in milliseconds");

    ColorArgs color;
    auto* color_cmd = app.add_subcommand("color", "Decide L-colorability");
    color_cmd->add_option("--graph", color.graph, "Graph file")->required();
    color_cmd->add_option("--lists", color.lists, "List assignment JSON")->required();
    color_cmd->add_option("--precolor", color.precolor, "Precoloring JSON {\"v\": color}");
    color_cmd->add_option("--coloring", color.coloring_out, "Write the solve result");

    std::string degeneracy_input;
    auto* degeneracy_cmd = app.add_subcommand("degeneracy", "Degeneracy and elimination order");
    degeneracy_cmd->add_option("--input", degeneracy_input, "Graph file")->required();

    PasteArgs paste_args;
    auto* paste_cmd = app.add_subcommand("paste", "Identify a clique of one graph with a clique of another");
    paste_cmd->add_option("--g1", paste_args.g1)->required();
    paste_cmd->add_option("--clique1", paste_args.clique1, "Comma-separated ids")->required();
    paste_cmd->add_option("--g2", paste_args.g2)->required();
    paste_cmd->add_option("--clique2", paste_args.clique2, "Comma-separated ids, paired by position")->required();
    paste_cmd->add_option("--out", paste_args.out)->required();

    auto* table_cmd = app.add_subcommand("table", "Choice-number lower bounds for K_t-minor-free graphs");

    std::string cert_path, cert_graph;
    auto* check_cmd = app.add_subcommand("check-cert", "Re-validate a certificate");
    check_cmd->add_option("--cert", cert_path, "Certificate JSON")->required();
    check_cmd->add_option("--graph", cert_graph, "Graph the certificate refers to");

    for (auto* sub : app.get_subcommands({}))
        sub->fallthrough();

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? positive : usage_error;
    }

    try {
        if (build_cmd->parsed())
            return do_build(ctx, build);
        if (verify_cmd->parsed())
            return do_verify(ctx, verify);
        if (minor_cmd->parsed())
            return do_minor(ctx, minor);
        if (color_cmd->parsed())
            return do_color(ctx, color);
        if (degeneracy_cmd->parsed())
            return do_degeneracy(ctx, degeneracy_input);
        if (paste_cmd->parsed())
            return do_paste(ctx, paste_args);
        if (table_cmd->parsed())
            return do_table(ctx);
        if (check_cmd->parsed())
            return do_check_cert(ctx, cert_path, cert_graph);
    }
    catch (const ResourceLimit& e) {
        err << "resource limit: " << e.what() << '\n';
        return resource_limit;
    }
    catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return usage_error;
    }
    return usage_error;
}

} // namespace lhc::cli
