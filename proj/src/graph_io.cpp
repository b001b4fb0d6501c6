#include "lhc/graph_io.hpp"

#include "lhc/errors.hpp"

#include <fstream>
#include <limits>
#include <sstream>

namespace lhc {

namespace {

constexpr std::string_view graph6_header = ">>graph6<<";
constexpr std::uint64_t graph6_max_n = (std::uint64_t{1} << 36) - 1;

void append_size(std::string& out, std::uint64_t n)
{
    auto push6 = [&](std::uint64_t bits) { out.push_back(static_cast<char>(63 + (bits & 0x3F))); };
    if (n <= 62) {
        push6(n);
    }
    else if (n <= 258047) {
        out.push_back(126);
        for (int shift = 12; shift >= 0; shift -= 6)
            push6(n >> shift);
    }
    else {
        out.push_back(126);
        out.push_back(126);
        for (int shift = 30; shift >= 0; shift -= 6)
            push6(n >> shift);
    }
}

} // namespace

std::string to_graph6(const Graph& g)
{
    const std::uint64_t n = g.vertex_count();
    if (n > graph6_max_n)
        throw InvalidArgument("graph too large for graph6");
    std::string out;
    append_size(out, n);

    // Upper triangle in column order: (0,1),(0,2),(1,2),(0,3),... Bit k of
    // that sequence lands in byte k / 6 at position 5 - k % 6.
    const std::uint64_t bits = n * (n - (n > 0 ? 1 : 0)) / 2;
    std::string body((bits + 5) / 6, '\0');
    for (auto [i, j] : g.edges()) {
        const std::uint64_t k = std::uint64_t{j} * (j - 1) / 2 + i;
        body[k / 6] = static_cast<char>(body[k / 6] | (1 << (5 - k % 6)));
    }
    for (char& c : body)
        c = static_cast<char>(c + 63);
    out += body;
    return out;
}

Graph from_graph6(std::string_view text)
{
    std::size_t pos = 0;
    if (text.starts_with(graph6_header))
        pos = graph6_header.size();
    std::size_t end = text.size();
    while (end > pos && (text[end - 1] == '\n' || text[end - 1] == '\r' || text[end - 1] == ' '))
        --end;

    auto take6 = [&]() -> std::uint64_t {
        if (pos >= end)
            throw ParseError("graph6: unexpected end of input", pos);
        auto c = static_cast<unsigned char>(text[pos]);
        if (c < 63 || c > 126)
            throw ParseError("graph6: byte outside printable range 63..126", pos);
        ++pos;
        return c - 63u;
    };

    if (pos >= end)
        throw ParseError("graph6: empty input", pos);
    std::uint64_t n = 0;
    if (static_cast<unsigned char>(text[pos]) != 126) {
        n = take6();
    }
    else {
        ++pos;
        int groups = 3;
        if (pos < end && static_cast<unsigned char>(text[pos]) == 126) {
            ++pos;
            groups = 6;
        }
        for (int i = 0; i < groups; ++i)
            n = (n << 6) | take6();
    }
    if (n > std::numeric_limits<Vertex>::max())
        throw ParseError("graph6: vertex count too large", 0);

    const std::uint64_t bits = n * (n - (n > 0 ? 1 : 0)) / 2;
    const std::uint64_t expected_bytes = (bits + 5) / 6;
    if (end - pos != expected_bytes)
        throw ParseError("graph6: expected " + std::to_string(expected_bytes) + " edge bytes, found " +
                             std::to_string(end - pos),
                         pos);

    GraphBuilder b(n);
    std::uint64_t word = 0;
    int avail = 0;
    for (Vertex j = 1; j < n; ++j)
        for (Vertex i = 0; i < j; ++i) {
            if (avail == 0) {
                word = take6();
                avail = 6;
            }
            --avail;
            if ((word >> avail) & 1u)
                b.add_edge(i, j);
        }
    if (avail > 0 && (word & ((1u << avail) - 1)) != 0)
        throw ParseError("graph6: non-zero padding bits", pos - 1);
    return std::move(b).build();
}

nlohmann::json to_adjacency_json(const Graph& g)
{
    nlohmann::json doc;
    doc["n"] = g.vertex_count();
    auto edges = nlohmann::json::array();
    for (auto [u, v] : g.edges())
        edges.push_back({u, v});
    doc["edges"] = std::move(edges);
    auto labels = nlohmann::json::object();
    for (const auto& tag : g.label_tags())
        labels[tag] = g.labelled(tag);
    doc["labels"] = std::move(labels);
    return doc;
}

Graph from_adjacency_json(const nlohmann::json& doc)
{
    try {
        if (!doc.is_object() || !doc.contains("n") || !doc.contains("edges"))
            throw ParseError("adjacency-json: expected object with \"n\" and \"edges\"", 0);
        const auto& jn = doc.at("n");
        if (!jn.is_number_unsigned() && !(jn.is_number_integer() && jn.get<long long>() >= 0))
            throw ParseError("adjacency-json: \"n\" must be a non-negative integer", 0);
        GraphBuilder b(jn.get<std::size_t>());
        for (const auto& e : doc.at("edges")) {
            if (!e.is_array() || e.size() != 2)
                throw ParseError("adjacency-json: each edge must be a pair", 0);
            b.add_edge(e[0].get<Vertex>(), e[1].get<Vertex>());
        }
        if (doc.contains("labels"))
            for (const auto& [tag, ids] : doc.at("labels").items())
                for (const auto& id : ids)
                    b.set_label(id.get<Vertex>(), tag);
        return std::move(b).build();
    }
    catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("adjacency-json: ") + e.what(), 0);
    }
    catch (const InvalidArgument& e) {
        throw ParseError(std::string("adjacency-json: ") + e.what(), 0);
    }
}

Graph from_adjacency_json_text(std::string_view text)
{
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    }
    catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("adjacency-json: ") + e.what(), e.byte);
    }
    return from_adjacency_json(doc);
}

std::string write_graph(const Graph& g, GraphFormat format)
{
    if (format == GraphFormat::graph6)
        return to_graph6(g) + "\n";
    return to_adjacency_json(g).dump() + "\n";
}

Graph read_graph(std::string_view text, GraphFormat format)
{
    return format == GraphFormat::graph6 ? from_graph6(text) : from_adjacency_json_text(text);
}

Graph read_graph(std::string_view text)
{
    auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string_view::npos && text[first] == '{')
        return from_adjacency_json_text(text);
    return from_graph6(text.substr(first == std::string_view::npos ? text.size() : first));
}

GraphFormat format_for_path(const std::filesystem::path& path)
{
    return path.extension() == ".json" ? GraphFormat::adjacency_json : GraphFormat::graph6;
}

Graph load_graph(const std::filesystem::path& path)
{
    return read_graph(read_text_file(path));
}

void save_graph(const Graph& g, const std::filesystem::path& path)
{
    write_text_file(path, write_graph(g, format_for_path(path)));
}

std::string read_text_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write " + path.string());
    out << text;
}

} // namespace lhc
