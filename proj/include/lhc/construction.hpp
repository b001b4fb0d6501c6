#pragma once

#include "lhc/certificate.hpp"
#include "lhc/graph.hpp"
#include "lhc/list_color.hpp"
#include "lhc/minor.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <json.hpp>

namespace lhc {

using BigCount = boost::multiprecision::cpp_int;

/// The three rows of the construction: K_p-minor-free, not q-choosable.
enum class Case { a, b, c };

enum class GadgetKind {
    /// K_{r x 2}
    matched_pairs,
    /// K_{1, r x 2}
    matched_pairs_with_apex,
};

char case_letter(Case c) noexcept;
/// "a", "b" or "c"; anything else is InvalidArgument.
Case parse_case(std::string_view text);
std::string gadget_name(GadgetKind kind, int r);

struct ConstructionParams {
    Case kase = Case::a;
    int t = 1;
    int p = 0; ///< forbidden clique minor order
    int q = 0; ///< list size
    int r = 0; ///< number of matched pairs in the gadget
    GadgetKind gadget = GadgetKind::matched_pairs;

    Color palette_size() const noexcept { return static_cast<Color>(q + 1); }
    int gadget_order() const noexcept { return q + 2; }
    /// Vertices each gadget copy adds beyond the shared root clique.
    int copy_size() const noexcept { return q + 2 - r; }

    friend bool operator==(const ConstructionParams&, const ConstructionParams&) = default;
};

/// Table row for (case, t), t >= 1. Checks the floor(3r/2) identity.
ConstructionParams params_for(Case kase, int t);

nlohmann::json to_json(const ConstructionParams& params);
ConstructionParams params_from_json(const nlohmann::json& doc);

/// The gadget H with its deleted matching (v_i, w_i) and root clique {v_i}.
struct GadgetTemplate {
    Graph graph;
    std::vector<std::pair<Vertex, Vertex>> pairs;
    VertexSet root_clique;
};

GadgetTemplate gadget_template(const ConstructionParams& params);

using ColorVector = std::vector<Color>;

/// Length r, entries in [1, q]; InvalidArgument otherwise.
void require_valid_vector(const ConstructionParams& params, const ColorVector& c);

/// Palette [1, q+1]; w_i gets [1, q+1] minus c_i, every other vertex [1, q].
ListAssignment gadget_lists(const ConstructionParams& params, const ColorVector& c);

/// The root vertices are pairwise adjacent, so a vector is realizable by a
/// proper coloring only if its entries are distinct.
bool root_is_proper(const ColorVector& c);

struct GadgetVerdict {
    bool blocked = false;
    bool improper_root = false;
    SolveStats stats;
};

/// Whether H(c) with v_i precolored c_i has no L-coloring. Improper root
/// vectors are reported blocked without a solver run unless `solve_improper`.
GadgetVerdict check_gadget(const ConstructionParams& params, const ColorVector& c, bool solve_improper = false);
bool gadget_blocked(const ConstructionParams& params, const ColorVector& c);

/// One class per equality pattern of positions, represented by the
/// lexicographically smallest vector of the class.
struct PatternClass {
    ColorVector representative;
    std::uint64_t size = 0;
    int blocks = 0;
};

std::vector<PatternClass> color_pattern_classes(const ConstructionParams& params);

/// Every vector of [1, q]^r in lexicographic order, each as a class of size 1.
/// Raises ResourceLimit past `cap` vectors.
std::vector<PatternClass> all_color_vectors(const ConstructionParams& params, std::uint64_t cap = 10'000'000);

/// Vector of gadget copy `index` (lexicographic order over [1, q]^r).
ColorVector vector_for_copy(const ConstructionParams& params, std::uint64_t index);

struct BuildStats {
    BigCount n_vertices;
    BigCount n_edges;
    BigCount n_gadgets;
    std::size_t gadget_vertices = 0;
    std::size_t gadget_edges = 0;
    std::size_t copy_vertices = 0;
    std::size_t copy_edges = 0;
};

/// Pure arithmetic; nothing is materialized.
BuildStats build_stats(const ConstructionParams& params);

struct BuiltInstance {
    Graph graph;
    ListAssignment lists;
};

struct BuildOptions {
    std::uint64_t vertex_cap = 1'000'000;
};

/// The pasted graph G with its list assignment. Ids 0..r-1 are the shared
/// root clique; copy k owns r + k(q+2-r) ... r + (k+1)(q+2-r) - 1 with the
/// w_i first in pair order. ResourceLimit above the vertex cap.
BuiltInstance build_full(const ConstructionParams& params, const BuildOptions& options = {});

/// Global id of template vertex `v` in gadget copy `copy`.
Vertex copy_vertex(const ConstructionParams& params, std::uint64_t copy, Vertex v);

/// {case, t, p, q, r, n_vertices, n_edges, n_gadgets, mode}
nlohmann::json manifest(const ConstructionParams& params, const BuildStats& stats, std::string_view mode);

/// A gadget that the construction relies on turned out to fail.
class ConstructionRefuted : public std::runtime_error {
  public:
    ConstructionRefuted(const std::string& what, std::optional<BranchSetWitness> witness = std::nullopt)
        : std::runtime_error(what), witness_(std::move(witness))
    {}

    const std::optional<BranchSetWitness>& witness() const noexcept { return witness_; }

  private:
    std::optional<BranchSetWitness> witness_;
};

struct MinorFreeOptions {
    /// Also search the whole pasted graph when it has at most this many vertices.
    std::size_t direct_vertex_cap = 16;
    MinorSearchOptions search;
};

/// Gadget search plus the pasting rule; see Certificate for the layout.
Certificate verify_minor_free(const ConstructionParams& params, const Graph* built = nullptr,
                              const MinorFreeOptions& options = {});

enum class ColorCheckMode { direct, compositional };

struct NotColorableOptions {
    ColorCheckMode mode = ColorCheckMode::compositional;
    bool symmetry = true;
    unsigned jobs = 1;
};

/// Compositional: every class (or vector) of root colors is blocked.
/// Direct: the solver refutes the whole built instance (required for direct).
Certificate verify_not_colorable(const ConstructionParams& params, const NotColorableOptions& options,
                                 const BuiltInstance* built = nullptr);

/// degeneracy(G) <= q.
bool verify_degeneracy(const ConstructionParams& params, const Graph& built);

struct VerifyOptions {
    ColorCheckMode mode = ColorCheckMode::compositional;
    /// Defaults to on for t >= 2.
    std::optional<bool> symmetry;
    unsigned jobs = 1;
    BuildOptions build;
    MinorFreeOptions minor;
};

struct VerifyReport {
    ConstructionParams params;
    BuildStats stats;
    std::vector<Certificate> certificates;
    std::optional<std::size_t> degeneracy;
    /// Whether the full graph was built (direct mode or a tiny instance).
    bool materialized = false;
    bool verified = false;

    /// Self-contained JSON bundle accepted by check_certificate.
    nlohmann::json bundle() const;
};

/// Whole pipeline for one (case, t). Throws ConstructionRefuted on failure.
VerifyReport verify_construction(Case kase, int t, const VerifyOptions& options = {});

struct LowerBoundRow {
    int hadwiger_order = 0; ///< the class of K_t-minor-free graphs
    int lower_bound = 0;    ///< q + 1
    ConstructionParams witness;
};

/// Choice-number lower bounds for K_t-minor-free graphs, t in [3, 11].
std::vector<LowerBoundRow> lower_bound_table();

} // namespace lhc
