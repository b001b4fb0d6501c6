#pragma once

#include "lhc/graph.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace lhc {

enum class CertificateKind {
    /// Branch sets of a clique minor.
    branch_set_positive,
    /// A finished exhaustive search found no K_t minor in an embedded graph.
    exhaustive_negative,
    /// Copies of a K_t-minor-free gadget pasted on a clique stay K_t-minor-free.
    compositional_pasting,
    /// The constructed list assignment admits no coloring.
    non_colorability,
};

std::string_view kind_name(CertificateKind kind) noexcept;
CertificateKind parse_kind(std::string_view name);

/// Tagged verification outcome. `payload` holds the kind-specific fields
/// flattened into the JSON object next to "kind" and "children".
struct Certificate {
    CertificateKind kind = CertificateKind::exhaustive_negative;
    nlohmann::json payload = nlohmann::json::object();
    std::vector<Certificate> children;
};

nlohmann::json to_json(const Certificate& cert);
Certificate certificate_from_json(const nlohmann::json& doc);

struct CheckReport {
    bool accepted = true;
    std::vector<std::string> problems;

    void reject(std::string why)
    {
        accepted = false;
        problems.push_back(std::move(why));
    }
};

/// Re-validates a single certificate or a verify bundle from its JSON. `graph`
/// supplies the graph for branch-set certificates without an embedded one and
/// is compared against the rebuilt construction otherwise.
CheckReport check_certificate(const nlohmann::json& doc, const Graph* graph = nullptr);

} // namespace lhc
