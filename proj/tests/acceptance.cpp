// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include "lhc/certificate.hpp"
#include "lhc/construction.hpp"
#include "lhc/graph_io.hpp"
#include "lhc/list_color.hpp"
#include "lhc/minor.hpp"
#include "oracles.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>

using namespace lhc;
using Clock = std::chrono::steady_clock;

namespace {

double ms_since(Clock::time_point start)
{
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

/// Collects the reasons a criterion fails; empty means pass.
struct Verdict {
    std::vector<std::string> failures;
    std::string detail;

    void require(bool ok, const std::string& what)
    {
        if (!ok)
            failures.push_back(what);
    }
};

int failed = 0;

void report(int id, const std::string& title, const Verdict& v)
{
    const bool ok = v.failures.empty();
    failed += !ok;
    std::cout << (ok ? "PASS" : "FAIL") << "  criterion " << id << ": " << title;
    if (!v.detail.empty())
        std::cout << " [" << v.detail << "]";
    std::cout << '\n';
    for (const auto& f : v.failures)
        std::cout << "      - " << f << '\n';
    std::cout.flush();
}

void run_guarded(Verdict& v, const std::function<void()>& body)
{
    try {
        body();
    }
    catch (const std::exception& e) {
        v.failures.push_back(std::string("exception: ") + e.what());
    }
}

std::string fmt_ms(double ms)
{
    std::ostringstream s;
    s.precision(ms < 10 ? 3 : 1);
    s << std::fixed << ms << " ms";
    return s.str();
}

BigCount ipow(int base, int exp)
{
    BigCount x = 1;
    for (int i = 0; i < exp; ++i)
        x *= base;
    return x;
}

// Certificates produced by criteria 1-4, re-checked in criterion 8.
struct Emitted {
    std::string label;
    nlohmann::json doc;
    std::optional<Graph> graph;
};
std::vector<Emitted> emitted;

const Emitted* find_emitted(const std::string& label)
{
    for (const auto& e : emitted)
        if (e.label == label)
            return &e;
    return nullptr;
}

void criterion_1()
{
    Verdict v;
    run_guarded(v, [&] {
        const auto start = Clock::now();
        const auto params = params_for(Case::b, 1);
        const auto built = build_full(params);
        v.require(built.graph.vertex_count() == 10, "built graph has " +
                                                        std::to_string(built.graph.vertex_count()) + " vertices");
        for (Vertex x = 0; x < built.graph.vertex_count(); ++x)
            v.require(built.lists.list_size(x) == 2, "vertex " + std::to_string(x) + " list size is not 2");

        MinorSearchOptions direct;
        direct.reductions = false;
        const auto minor = has_clique_minor(built.graph, 4, direct);
        v.require(!minor.contains, "whole-graph search found a K_4 minor");
        const auto coloring = l_colorable(built.graph, built.lists);
        v.require(!coloring.colorable(), "solver found an L-coloring");

        const auto report = verify_construction(Case::b, 1, {.mode = ColorCheckMode::direct});
        const double elapsed = ms_since(start);
        v.require(report.verified, "pipeline did not verify");
        v.require(elapsed < 1000, "runtime " + fmt_ms(elapsed) + " exceeds 1 s");

        // Tightness: a K_3 minor does exist; kept as a positive certificate.
        const auto k3 = has_clique_minor(built.graph, 3);
        v.require(k3.contains, "no K_3 minor, so the graph is smaller than expected");
        if (k3.witness) {
            auto doc = to_json(*k3.witness);
            doc["kind"] = "branch-set-positive";
            emitted.push_back({"b1-k3-witness", doc, built.graph});
        }
        emitted.push_back({"b1-bundle", report.bundle(), built.graph});
        v.detail = "10 vertices, no K_4 minor (" + std::to_string(minor.stats.nodes) +
                   " nodes), not L-colorable with lists of size 2, " + fmt_ms(elapsed);
    });
    report(1, "case (b) t=1 direct verification", v);
}

void criterion_2()
{
    Verdict v;
    run_guarded(v, [&] {
        const auto start = Clock::now();
        const auto params = params_for(Case::a, 1);
        const auto built = build_full(params);
        v.require(built.graph.vertex_count() == 195, "built graph has " +
                                                         std::to_string(built.graph.vertex_count()) + " vertices");
        const auto oct = complete_multipartite({2, 2, 2});
        const auto minor_cert = verify_minor_free(params, &built.graph);
        v.require(!minor_cert.children.empty() &&
                      from_graph6(minor_cert.children[0].payload.at("graph6").get<std::string>()).same_structure(oct) &&
                      minor_cert.children[0].payload.at("t") == 5,
                  "compositional certificate is not rooted at the octahedron having no K_5 minor");

        const auto direct = verify_not_colorable(params, {.mode = ColorCheckMode::direct}, &built);
        const auto comp = verify_not_colorable(params, {.mode = ColorCheckMode::compositional, .symmetry = false});
        v.require(direct.payload.at("status") == "not-colorable", "direct solver disagrees");
        v.require(comp.payload.at("classes").size() == 64, "compositional check did not cover 64 gadgets");
        const auto report = verify_construction(Case::a, 1, {.mode = ColorCheckMode::direct});
        const double elapsed = ms_since(start);
        v.require(report.verified, "pipeline did not verify");
        v.require(elapsed < 60'000, "runtime " + fmt_ms(elapsed) + " exceeds 60 s");
        emitted.push_back({"a1-bundle", report.bundle(), built.graph});
        v.detail = "195 vertices, gadget K_{3x2} has no K_5 minor, direct and compositional both not-colorable "
                   "over 64 gadgets, " +
                   fmt_ms(elapsed);
    });
    report(2, "case (a) t=1 compositional and direct agree", v);
}

void criterion_3()
{
    Verdict v;
    run_guarded(v, [&] {
        const auto start = Clock::now();
        const auto report = verify_construction(Case::c, 1, {.mode = ColorCheckMode::direct});
        const double elapsed = ms_since(start);
        const auto built = build_full(report.params);
        v.require(built.graph.vertex_count() == 3 && built.graph.edge_count() == 2, "instance is not a 3-vertex tree");
        v.require(!has_clique_minor(built.graph, 3).contains, "found a K_3 minor");
        v.require(!l_colorable(built.graph, built.lists).colorable(), "found an L-coloring");
        v.require(report.verified, "pipeline did not verify");
        v.require(elapsed < 10, "runtime " + fmt_ms(elapsed) + " exceeds 10 ms");
        emitted.push_back({"c1-bundle", report.bundle(), built.graph});
        v.detail = "path on 3 vertices, lists of size 1, " + fmt_ms(elapsed);
    });
    report(3, "case (c) t=1 K_3-minor-free and not 1-choosable", v);
}

void criterion_4()
{
    Verdict v;
    run_guarded(v, [&] {
        const auto start = Clock::now();
        std::string detail;
        for (Case k : {Case::a, Case::b, Case::c}) {
            const auto params = params_for(k, 2);
            const std::string name = std::string(1, case_letter(k)) + "2";
            const auto stats = build_stats(params);
            v.require(stats.n_vertices == params.r + ipow(params.q, params.r) * (params.q + 2 - params.r),
                      name + ": stats-only vertex count off the formula");
            const auto gadget = gadget_template(params).graph;
            v.require(gadget.vertex_count() <= 10, name + ": gadget has more than 10 vertices");
            MinorSearchOptions exhaustive;
            exhaustive.reductions = false;
            v.require(!has_clique_minor(gadget, params.p, exhaustive).contains,
                      name + ": gadget has a K_" + std::to_string(params.p) + " minor");

            const auto report = verify_construction(k, 2, {.symmetry = true});
            v.require(report.verified, name + ": pipeline did not verify");
            const auto bundle = report.bundle();
            for (const auto& cert : bundle.at("certificates")) {
                if (cert.at("kind") != "non-colorability")
                    continue;
                BigCount covered = 0;
                for (const auto& cls : cert.at("classes")) {
                    covered += cls.at("size").get<std::uint64_t>();
                    v.require(cls.at("verdict") != "colorable", name + ": unblocked class");
                }
                v.require(covered == ipow(params.q, params.r), name + ": classes do not cover q^r vectors");
                detail += name + ": " + std::to_string(cert.at("classes").size()) + " classes cover " +
                          covered.str() + " vectors, " + stats.n_vertices.str() + " vertices; ";
            }
            emitted.push_back({name + "-bundle", bundle, std::nullopt});
        }
        const double elapsed = ms_since(start);
        v.require(elapsed < 300'000, "runtime " + fmt_ms(elapsed) + " exceeds 5 min");
        v.detail = detail + fmt_ms(elapsed);
    });
    report(4, "t=2 compositional verification with symmetry, all cases", v);
}

void criterion_5()
{
    Verdict v;
    run_guarded(v, [&] {
        const auto start = Clock::now();
        const auto rows = lower_bound_table();
        const double elapsed = ms_since(start);
        const std::vector<int> expected{2, 3, 5, 6, 7, 9, 10, 11, 13};
        std::vector<int> got;
        std::string witnesses;
        for (const auto& row : rows) {
            got.push_back(row.lower_bound);
            v.require(row.witness.p == row.hadwiger_order && row.lower_bound == row.witness.q + 1,
                      "row t=" + std::to_string(row.hadwiger_order) + " has an inconsistent witness");
            witnesses += std::string(witnesses.empty() ? "" : " ") + case_letter(row.witness.kase) +
                         std::to_string(row.witness.t);
        }
        v.require(got == expected, "lower bounds differ from 2 3 5 6 7 9 10 11 13");
        v.require(elapsed < 1.0, "runtime " + fmt_ms(elapsed) + " exceeds 1 ms");
        std::string bounds;
        for (int b : got)
            bounds += (bounds.empty() ? "" : " ") + std::to_string(b);
        v.detail = "bounds " + bounds + "; witnesses " + witnesses + "; " + fmt_ms(elapsed);
    });
    report(5, "lower-bound table for t=3..11", v);
}

void criterion_6()
{
    Verdict v;
    run_guarded(v, [&] {
        std::string detail;
        for (Case k : {Case::a, Case::b, Case::c}) {
            const auto params = params_for(k, 1);
            const auto built = build_full(params);
            const auto d = degeneracy(built.graph);
            const auto name = std::string(1, case_letter(k));
            v.require(d.degeneracy <= static_cast<std::size_t>(params.q), name + ": degeneracy exceeds q");
            if (k != Case::c)
                v.require(d.degeneracy == static_cast<std::size_t>(params.q), name + ": degeneracy differs from q");
            // the elimination order is a witness
            std::vector<bool> gone(built.graph.vertex_count(), false);
            for (Vertex x : d.elimination_order) {
                std::size_t later = 0;
                for (Vertex y : built.graph.neighbors(x))
                    later += !gone[y];
                v.require(later <= d.degeneracy, name + ": elimination order does not witness the degeneracy");
                gone[x] = true;
            }
            detail += name + "1: " + std::to_string(d.degeneracy) + " (q=" + std::to_string(params.q) + ") ";
        }
        v.detail = detail;
    });
    report(6, "degeneracy of the t=1 instances", v);
}

void criterion_7()
{
    constexpr int instances = 500;
    std::mt19937_64 rng(20260501);

    {
        Verdict v;
        run_guarded(v, [&] {
            int disagreements = 0, positives = 0;
            for (int i = 0; i < instances; ++i) {
                const std::size_t n = 1 + rng() % 8;
                const auto g = oracle::random_graph(rng, n, 0.15 + (rng() % 80) / 100.0);
                const int t = 1 + static_cast<int>(rng() % n);
                const bool expected = oracle::has_clique_minor_by_contraction(g, t);
                const auto a = has_clique_minor(g, t);
                positives += expected;
                if (a.contains != expected || (a.contains && !(a.witness && check_witness(g, *a.witness))))
                    ++disagreements;
            }
            v.require(disagreements == 0, std::to_string(disagreements) + " disagreements");
            v.detail = std::to_string(instances) + " graphs on <= 8 vertices, " + std::to_string(positives) +
                       " positive, 100% agreement with contraction-sequence oracle";
            if (disagreements)
                v.detail = std::to_string(disagreements) + " of " + std::to_string(instances) + " disagree";
        });
        report(7, "(i) minor search vs oracle", v);
    }
    {
        Verdict v;
        run_guarded(v, [&] {
            int disagreements = 0, colorable = 0;
            for (int i = 0; i < instances; ++i) {
                const std::size_t n = 1 + rng() % 9;
                const auto g = oracle::random_graph(rng, n, (rng() % 100) / 100.0);
                const auto L = oracle::random_lists(rng, n, 1 + rng() % 5, 4);
                Precoloring pre;
                if (rng() % 4 == 0) {
                    const Vertex x = static_cast<Vertex>(rng() % n);
                    const auto l = L.list(x);
                    pre[x] = l[rng() % l.size()];
                }
                const auto a = l_colorable(g, L, pre);
                const auto b = exhaustive_l_colorable(g, L, pre);
                colorable += b.colorable();
                bool ok = a.status == b.status;
                if (a.colorable())
                    ok = ok && a.coloring && check_coloring(g, L, *a.coloring);
                disagreements += !ok;
            }
            v.require(disagreements == 0, std::to_string(disagreements) + " disagreements");
            v.detail = std::to_string(instances) + " instances on <= 9 vertices with lists of size <= 4, " +
                       std::to_string(colorable) + " colorable";
        });
        report(7, "(ii) l_colorable vs exhaustive oracle", v);
    }
    {
        Verdict v;
        run_guarded(v, [&] {
            int violations = 0, done = 0, oracle_checked = 0, bad_inputs = 0;
            while (done < instances) {
                const auto g1 = oracle::random_graph(rng, 2 + rng() % 7, 0.2 + (rng() % 70) / 100.0);
                const auto g2 = oracle::random_graph(rng, 2 + rng() % 7, 0.2 + (rng() % 70) / 100.0);
                const int h1 = hadwiger_number(g1), h2 = hadwiger_number(g2);
                const int t = std::max(h1, h2) + 1;
                auto exact = [](const Graph& g, int h) {
                    return oracle::has_clique_minor_by_contraction(g, h) &&
                           !oracle::has_clique_minor_by_contraction(g, h + 1);
                };
                if (!exact(g1, h1) || !exact(g2, h2)) {
                    ++bad_inputs; // hadwiger_number disagrees with the oracle
                    continue;
                }
                const std::size_t k = rng() % 4;
                const auto c1 = oracle::cliques_of_size(g1, k);
                const auto c2 = oracle::cliques_of_size(g2, k);
                if (c1.empty() || c2.empty())
                    continue;
                const VertexSet s1(c1[rng() % c1.size()]);
                auto s2v = c2[rng() % c2.size()];
                std::shuffle(s2v.begin(), s2v.end(), rng);
                std::vector<std::pair<Vertex, Vertex>> pairing;
                for (std::size_t i = 0; i < k; ++i)
                    pairing.emplace_back(s1[i], s2v[i]);
                const auto g = paste(g1, s1, g2, VertexSet(s2v), pairing);
                MinorSearchOptions plain;
                plain.reductions = false;
                bool has = has_clique_minor(g, t, plain).contains;
                if (g.vertex_count() <= 9) {
                    has = has || oracle::has_clique_minor_by_contraction(g, t);
                    ++oracle_checked;
                }
                violations += has;
                ++done;
            }
            v.require(violations == 0, std::to_string(violations) + " pasted graphs gained a K_t minor");
            v.require(bad_inputs == 0, std::to_string(bad_inputs) + " inputs with a wrong Hadwiger number");
            v.detail = std::to_string(done) + " pastings on cliques of size 0..3, zero violations (" +
                       std::to_string(oracle_checked) + " also checked by the oracle)";
        });
        report(7, "(iii) pasting preserves K_t-minor-freeness", v);
    }
    {
        Verdict v;
        run_guarded(v, [&] {
            int searches = 0;
            for (int r = 1; r <= 4; ++r) {
                const int p = 3 * r / 2 + 1;
                for (const auto& [g, target] : {std::pair{k_r_times_2(r), p}, std::pair{k_1_r_times_2(r), p + 1}}) {
                    const std::string name = (target == p ? "K_{" : "K_{1,") + std::to_string(r) + "x2}";
                    v.require(!oracle::has_clique_minor_by_contraction(g, target),
                              name + " has a K_" + std::to_string(target) + " minor (oracle)");
                    // every relabelling, through both strategies with no reductions
                    std::vector<Vertex> perm(g.vertex_count());
                    std::iota(perm.begin(), perm.end(), 0);
                    for (int i = 0; i < 64; ++i) {
                        std::shuffle(perm.begin(), perm.end(), rng);
                        std::vector<Edge> edges;
                        for (auto [a, b] : g.edges())
                            edges.emplace_back(perm[a], perm[b]);
                        const auto h = Graph::from_edges(g.vertex_count(), edges);
                        for (auto s : {MinorStrategy::branch_sets, MinorStrategy::contraction}) {
                            MinorSearchOptions o;
                            o.strategy = s;
                            o.reductions = false;
                            v.require(!has_clique_minor(h, target, o).contains,
                                      name + " relabelled has a K_" + std::to_string(target) + " minor");
                            ++searches;
                        }
                    }
                }
            }
            v.detail = "r=1..4, both gadget families, oracle plus " + std::to_string(searches) +
                       " exhaustive searches over random relabellings";
        });
        report(7, "(iv) K_{rx2} / K_{1,rx2} minor bounds", v);
    }
    {
        Verdict v;
        run_guarded(v, [&] {
            int classes = 0, comparisons = 0, mismatches = 0;
            for (int t = 1; t <= 3; ++t)
                for (Case k : {Case::a, Case::b, Case::c}) {
                    const auto params = params_for(k, t);
                    std::vector<Color> perm(params.q);
                    std::iota(perm.begin(), perm.end(), 1);
                    for (const auto& cls : color_pattern_classes(params)) {
                        const bool rep = check_gadget(params, cls.representative, true).blocked;
                        ++classes;
                        for (int m = 0; m < 3; ++m) {
                            // a palette permutation fixing q+1 maps the class onto itself
                            std::shuffle(perm.begin(), perm.end(), rng);
                            ColorVector member;
                            for (Color c : cls.representative)
                                member.push_back(perm[c - 1]);
                            mismatches += check_gadget(params, member, true).blocked != rep;
                            ++comparisons;
                        }
                    }
                }
            v.require(classes >= instances, "only " + std::to_string(classes) + " classes");
            v.require(mismatches == 0, std::to_string(mismatches) + " class members disagree with the representative");
            v.detail = std::to_string(classes) + " classes for t=1..3, " + std::to_string(comparisons) +
                       " member comparisons (solver run on improper roots too), identical verdicts";
        });
        report(7, "(v) symmetry soundness", v);
    }
}

void criterion_8()
{
    Verdict v;
    run_guarded(v, [&] {
        int accepted = 0;
        for (const auto& e : emitted) {
            // from the JSON alone, after a text round trip
            const auto doc = nlohmann::json::parse(e.doc.dump());
            const auto alone = check_certificate(doc, e.label.ends_with("witness") ? &*e.graph : nullptr);
            v.require(alone.accepted, e.label + " rejected");
            for (const auto& p : alone.problems)
                v.failures.push_back(e.label + ": " + p);
            accepted += alone.accepted;
            if (e.graph)
                v.require(check_certificate(doc, &*e.graph).accepted, e.label + " rejected with its graph");
        }
        v.require(emitted.size() >= 6, "expected certificates from criteria 1-4");

        int rejected = 0, mutations = 0;
        if (const auto* w = find_emitted("b1-k3-witness")) {
            auto doc = w->doc;
            auto& sets = doc.at("branch_sets");
            sets[0][0] = sets[1][0]; // one vertex now sits in two branch sets
            ++mutations;
            rejected += !check_certificate(doc, &*w->graph).accepted;
        }
        for (const char* label : {"a1-bundle", "b1-bundle", "a2-bundle", "b2-bundle", "c2-bundle"}) {
            const auto* b = find_emitted(label);
            if (!b)
                continue;
            auto doc = b->doc;
            for (auto& cert : doc.at("certificates"))
                if (cert.at("kind") == "non-colorability" && cert.contains("classes")) {
                    cert.at("classes").erase(cert.at("classes").size() / 2);
                    ++mutations;
                    rejected += !check_certificate(doc).accepted;
                }
        }
        v.require(mutations >= 2 && rejected == mutations,
                  std::to_string(mutations - rejected) + " mutated certificates accepted");
        v.detail = std::to_string(accepted) + " of " + std::to_string(emitted.size()) +
                   " certificates accepted; " + std::to_string(rejected) + " of " + std::to_string(mutations) +
                   " mutants (flipped branch-set vertex, dropped class) rejected";
    });
    report(8, "certificate re-validation and mutation rejection", v);
}

} // namespace

int main()
{
    criterion_3(); // first, so its timing is not skewed by earlier allocations
    criterion_1();
    criterion_2();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    std::cout << (failed ? "FAILED: " + std::to_string(failed) + " criterion line(s)" : std::string("ALL PASS"))
              << '\n';
    return failed ? 1 : 0;
}
