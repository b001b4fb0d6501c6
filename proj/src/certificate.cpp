#include "lhc/certificate.hpp"

#include "lhc/construction.hpp"
#include "lhc/errors.hpp"
#include "lhc/graph_io.hpp"
#include "lhc/minor.hpp"

#include <array>

namespace lhc {

namespace {

constexpr std::array kind_names{
    std::pair{CertificateKind::branch_set_positive, std::string_view("branch-set-positive")},
    std::pair{CertificateKind::exhaustive_negative, std::string_view("exhaustive-negative")},
    std::pair{CertificateKind::compositional_pasting, std::string_view("compositional-pasting")},
    std::pair{CertificateKind::non_colorability, std::string_view("non-colorability")},
};

BigCount read_count(const nlohmann::json& j)
{
    if (j.is_string())
        return BigCount(j.get<std::string>());
    return BigCount(j.get<std::uint64_t>());
}

/// Graph in the certificate, else the one supplied by the caller.
std::optional<Graph> subject_graph(const nlohmann::json& doc, const Graph* supplied)
{
    if (doc.contains("graph6"))
        return from_graph6(doc.at("graph6").get<std::string>());
    if (supplied)
        return *supplied;
    return std::nullopt;
}

class Checker {
  public:
    Checker(const Graph* graph, CheckReport& report) : graph_(graph), report_(report) {}

    void check(const nlohmann::json& doc, const ConstructionParams* context)
    {
        const auto kind = parse_kind(doc.at("kind").get<std::string>());
        switch (kind) {
        case CertificateKind::branch_set_positive:
            return check_positive(doc);
        case CertificateKind::exhaustive_negative:
            return check_negative(doc, context);
        case CertificateKind::compositional_pasting:
            return check_pasting(doc, context);
        case CertificateKind::non_colorability:
            return check_colorability(doc, context);
        }
    }

    /// The caller's graph, if any, must be the construction for `params`.
    void compare_supplied(const ConstructionParams& params)
    {
        if (!graph_ || compared_)
            return;
        compared_ = true;
        if (!graph_->same_structure(built(params).graph))
            report_.reject("supplied graph differs from the construction for these parameters");
    }

    const BuiltInstance& built(const ConstructionParams& params)
    {
        if (!built_ || !(built_params_ == params)) {
            built_ = build_full(params);
            built_params_ = params;
        }
        return *built_;
    }

  private:
    static ConstructionParams params_of(const nlohmann::json& doc, const ConstructionParams* context)
    {
        if (doc.contains("params"))
            return params_from_json(doc.at("params"));
        if (context)
            return *context;
        throw InvalidArgument("certificate carries no construction parameters");
    }

    void check_positive(const nlohmann::json& doc)
    {
        auto g = subject_graph(doc, graph_);
        if (!g)
            return report_.reject("branch-set certificate needs a graph (embedded graph6 or --graph)");
        const auto witness = witness_from_json(doc);
        if (!check_witness(*g, witness))
            report_.reject("branch sets are not a valid K_" + std::to_string(witness.order()) + " minor model");
    }

    void check_negative(const nlohmann::json& doc, const ConstructionParams* context)
    {
        if (!doc.contains("graph6"))
            return report_.reject("exhaustive-negative certificate has no embedded graph");
        const auto g = from_graph6(doc.at("graph6").get<std::string>());
        const int t = doc.at("t").get<int>();
        if (doc.value("subject", "") == "gadget" && (context || doc.contains("params"))) {
            const auto params = params_of(doc, context);
            if (!g.same_structure(gadget_template(params).graph))
                report_.reject("embedded gadget is not " + gadget_name(params.gadget, params.r));
            if (t != params.p)
                report_.reject("gadget certificate excludes K_" + std::to_string(t) + ", expected K_" +
                               std::to_string(params.p));
        }
        const auto answer = has_clique_minor(g, t);
        if (answer.contains)
            report_.reject("re-run found a K_" + std::to_string(t) + " minor in the " +
                           doc.value("subject", std::string("graph")));
    }

    void check_pasting(const nlohmann::json& doc, const ConstructionParams* context)
    {
        const auto params = params_of(doc, context);
        const auto gadget = gadget_template(params);
        if (doc.at("t").get<int>() != params.p)
            report_.reject("pasting certificate claims K_" + std::to_string(doc.at("t").get<int>()) +
                           "-freeness, expected K_" + std::to_string(params.p));

        const auto& children = doc.at("children");
        if (children.empty())
            return report_.reject("pasting certificate has no gadget certificate");
        for (const auto& child : children) {
            if (child.at("kind").get<std::string>() != kind_name(CertificateKind::exhaustive_negative) ||
                child.value("subject", "") != "gadget") {
                report_.reject("pasting children must be exhaustive gadget certificates");
                continue;
            }
            if (child.at("t").get<int>() != params.p)
                report_.reject("gadget child certifies a different clique order");
            check_negative(child, &params);
        }

        const VertexSet gadget_root(doc.at("gadget_root").get<std::vector<Vertex>>());
        if (!(gadget_root == gadget.root_clique))
            report_.reject("gadget gluing set is not {v_1..v_r}");
        else if (!gadget.graph.is_clique(gadget_root))
            report_.reject("gadget gluing set is not a clique");
        const VertexSet gluing(doc.at("gluing_clique").get<std::vector<Vertex>>());
        if (!(gluing == VertexSet::range(0, static_cast<Vertex>(params.r))))
            report_.reject("gluing clique must be the shared ids 0..r-1");
        if (read_count(doc.at("copies")) != build_stats(params).n_gadgets)
            report_.reject("number of pasted copies is not q^r");

        if (doc.contains("direct_check")) {
            const auto& direct = doc.at("direct_check");
            const auto whole = from_graph6(direct.at("graph6").get<std::string>());
            if (!whole.same_structure(built(params).graph))
                report_.reject("direct check ran on a graph other than the construction");
            if (direct.at("t").get<int>() != params.p)
                report_.reject("direct check excludes the wrong clique order");
            check_negative(direct, &params);
        }
        compare_supplied(params);
    }

    void check_colorability(const nlohmann::json& doc, const ConstructionParams* context)
    {
        const auto params = params_of(doc, context);
        const auto mode = doc.at("mode").get<std::string>();
        if (doc.at("list_size").get<int>() != params.q ||
            doc.at("palette_size").get<Color>() != params.palette_size())
            report_.reject("list or palette size does not match the parameters");

        if (mode == "direct") {
            const auto& instance = built(params);
            if (doc.at("n_vertices").get<std::size_t>() != instance.graph.vertex_count())
                report_.reject("direct certificate records the wrong vertex count");
            if (l_colorable(instance.graph, instance.lists).colorable())
                report_.reject("re-run found an L-coloring of the construction");
            compare_supplied(params);
            return;
        }
        if (mode != "compositional")
            return report_.reject("unknown non-colorability mode \"" + mode + "\"");

        const bool symmetry = doc.at("symmetry").get<bool>();
        const auto expected = symmetry ? color_pattern_classes(params) : all_color_vectors(params);
        const auto& recorded = doc.at("classes");
        if (recorded.size() != expected.size())
            report_.reject("certificate lists " + std::to_string(recorded.size()) + " classes, expected " +
                           std::to_string(expected.size()));
        BigCount covered = 0;
        for (std::size_t i = 0; i < recorded.size(); ++i) {
            const auto rep = recorded[i].at("representative").get<ColorVector>();
            const auto size = recorded[i].at("size").get<std::uint64_t>();
            covered += size;
            if (i >= expected.size() || rep != expected[i].representative || size != expected[i].size) {
                report_.reject("class " + std::to_string(i) + " does not match the expected enumeration");
                continue;
            }
            const auto verdict = check_gadget(params, rep);
            const auto claimed = recorded[i].at("verdict").get<std::string>();
            if (!verdict.blocked)
                report_.reject("class " + std::to_string(i) + " is not blocked");
            if (claimed != (verdict.improper_root ? "improper-root" : "blocked"))
                report_.reject("class " + std::to_string(i) + " has the wrong verdict tag");
        }
        const auto total = build_stats(params).n_gadgets;
        if (covered != total || read_count(doc.at("covered")) != total)
            report_.reject("classes do not cover all q^r color vectors");
        compare_supplied(params);
    }

    const Graph* graph_;
    CheckReport& report_;
    std::optional<BuiltInstance> built_;
    ConstructionParams built_params_;
    bool compared_ = false;
};

} // namespace

std::string_view kind_name(CertificateKind kind) noexcept
{
    for (auto [k, name] : kind_names)
        if (k == kind)
            return name;
    return "unknown";
}

CertificateKind parse_kind(std::string_view name)
{
    for (auto [k, n] : kind_names)
        if (n == name)
            return k;
    throw InvalidArgument("unknown certificate kind \"" + std::string(name) + "\"");
}

nlohmann::json to_json(const Certificate& cert)
{
    nlohmann::json doc = cert.payload;
    doc["kind"] = kind_name(cert.kind);
    if (cert.kind == CertificateKind::compositional_pasting || !cert.children.empty()) {
        auto children = nlohmann::json::array();
        for (const auto& c : cert.children)
            children.push_back(to_json(c));
        doc["children"] = std::move(children);
    }
    return doc;
}

Certificate certificate_from_json(const nlohmann::json& doc)
{
    Certificate cert;
    cert.kind = parse_kind(doc.at("kind").get<std::string>());
    cert.payload = doc;
    cert.payload.erase("kind");
    cert.payload.erase("children");
    if (doc.contains("children"))
        for (const auto& c : doc.at("children"))
            cert.children.push_back(certificate_from_json(c));
    return cert;
}

CheckReport check_certificate(const nlohmann::json& doc, const Graph* graph)
{
    CheckReport report;
    Checker checker(graph, report);
    try {
        if (!doc.contains("format")) {
            checker.check(doc, nullptr);
            return report;
        }
        if (doc.at("format").get<std::string>() != "lhc-certificate-bundle/1")
            report.reject("unknown bundle format");
        const auto params = params_from_json(doc.at("params"));
        bool minor_free = false;
        bool not_colorable = false;
        for (const auto& cert : doc.at("certificates")) {
            const auto kind = parse_kind(cert.at("kind").get<std::string>());
            minor_free |= kind == CertificateKind::compositional_pasting;
            not_colorable |= kind == CertificateKind::non_colorability;
            if (cert.contains("params") && !(params_from_json(cert.at("params")) == params))
                report.reject("certificate parameters differ from the bundle");
            checker.check(cert, &params);
        }
        if (!minor_free || !not_colorable)
            report.reject("bundle must contain a minor-freeness and a non-colorability certificate");
        if (doc.contains("degeneracy")) {
            const auto d = degeneracy(checker.built(params).graph).degeneracy;
            if (doc.at("degeneracy").at("value").get<std::size_t>() != d)
                report.reject("recorded degeneracy differs from the recomputed value " + std::to_string(d));
            if (d > static_cast<std::size_t>(params.q))
                report.reject("construction is not q-degenerate");
        }
        checker.compare_supplied(params);
    }
    catch (const nlohmann::json::exception& e) {
        report.reject(std::string("malformed certificate: ") + e.what());
    }
    catch (const std::exception& e) {
        report.reject(e.what());
    }
    return report;
}

} // namespace lhc
