#pragma once

// Attributed graph: dense-id vertices, sorted adjacency, per-vertex
// (keyword, influence) attributes, and the keyword inverted index used to
// assemble query subgraphs. Immutable after construction.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "kicq/binio.hpp"
#include "kicq/types.hpp"

namespace kicq {

class AttributedGraph {
public:
    /// External (input-file) id of a vertex.
    const std::string& external_id(VertexId v) const { return external_ids_[v]; }

    /// Dense id for an external id, or kInvalidId.
    VertexId vertex_of(const std::string& ext) const {
        auto it = vertex_ids_.find(ext);
        return it == vertex_ids_.end() ? kInvalidId : it->second;
    }

    std::size_t vertex_count() const { return adjacency_.size(); }
    std::size_t edge_count() const { return edge_count_; }
    int max_degree() const { return max_degree_; }

    const std::vector<VertexId>& neighbors(VertexId v) const { return adjacency_[v]; }

    /// Attributes of v, sorted by keyword id.
    const std::vector<std::pair<KeywordId, double>>& attrs(VertexId v) const { return attrs_[v]; }

    /// Influence score s_v(w); 0 when the vertex does not carry the keyword.
    double influence(VertexId v, KeywordId w) const {
        const auto& a = attrs_[v];
        auto it = std::lower_bound(a.begin(), a.end(), w,
                                   [](const auto& p, KeywordId key) { return p.first < key; });
        return (it != a.end() && it->first == w) ? it->second : 0.0;
    }

    std::size_t keyword_count() const { return keywords_.size(); }
    const std::string& keyword(KeywordId w) const { return keywords_[w]; }
    const std::vector<std::string>& keywords() const { return keywords_; }

    KeywordId keyword_of(const std::string& normalized) const {
        auto it = keyword_ids_.find(normalized);
        return it == keyword_ids_.end() ? kInvalidId : it->second;
    }

    // --- construction ---

    VertexId add_vertex(const std::string& ext) {
        auto [it, fresh] = vertex_ids_.try_emplace(ext, static_cast<VertexId>(adjacency_.size()));
        if (!fresh) throw Error(ErrorKind::Format, "duplicate vertex id '" + ext + "'");
        external_ids_.push_back(ext);
        adjacency_.emplace_back();
        attrs_.emplace_back();
        return it->second;
    }

    KeywordId intern_keyword(const std::string& normalized) {
        auto [it, fresh] = keyword_ids_.try_emplace(normalized, static_cast<KeywordId>(keywords_.size()));
        if (fresh) keywords_.push_back(normalized);
        return it->second;
    }

    /// Duplicate (vertex, keyword) pairs merge by max score.
    void set_influence_max(VertexId v, KeywordId w, double score) {
        auto& a = attrs_[v];
        auto it = std::lower_bound(a.begin(), a.end(), w,
                                   [](const auto& p, KeywordId key) { return p.first < key; });
        if (it != a.end() && it->first == w) {
            it->second = std::max(it->second, score);
        } else {
            a.insert(it, {w, score});
        }
    }

    void add_edge_unchecked(VertexId u, VertexId v) {
        adjacency_[u].push_back(v);
        adjacency_[v].push_back(u);
    }

    /// Sort adjacency, drop duplicates, recompute degree stats. Self-loops
    /// must have been filtered by the caller.
    void finalize_edges() {
        edge_count_ = 0;
        max_degree_ = 0;
        for (auto& nbrs : adjacency_) {
            std::sort(nbrs.begin(), nbrs.end());
            nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
            edge_count_ += nbrs.size();
            max_degree_ = std::max(max_degree_, static_cast<int>(nbrs.size()));
        }
        edge_count_ /= 2;
    }

    bool operator==(const AttributedGraph& other) const {
        return external_ids_ == other.external_ids_ && adjacency_ == other.adjacency_ &&
               attrs_ == other.attrs_ && keywords_ == other.keywords_;
    }

private:
    std::vector<std::string> external_ids_;
    std::unordered_map<std::string, VertexId> vertex_ids_;
    std::vector<std::vector<VertexId>> adjacency_;
    std::vector<std::vector<std::pair<KeywordId, double>>> attrs_;
    std::vector<std::string> keywords_;
    std::unordered_map<std::string, KeywordId> keyword_ids_;
    std::size_t edge_count_ = 0;
    int max_degree_ = 0;
};

struct LoadStats {
    std::size_t self_loops_dropped = 0;
    std::size_t duplicate_edges_dropped = 0;
};

namespace detail {

inline double parse_score(const std::string& tok, std::size_t line_no) {
    std::size_t used = 0;
    double v;
    try {
        v = std::stod(tok, &used);
    } catch (const std::exception&) {
        throw Error(ErrorKind::Format,
                    "line " + std::to_string(line_no) + ": bad score '" + tok + "'");
    }
    if (used != tok.size())
        throw Error(ErrorKind::Format,
                    "line " + std::to_string(line_no) + ": bad score '" + tok + "'");
    if (v < 0.0 || v > 1.0)
        throw Error(ErrorKind::Format,
                    "line " + std::to_string(line_no) + ": score out of range [0,1]: " + tok);
    return v;
}

inline bool blank(const std::string& line) {
    return line.find_first_not_of(" \t\r\n") == std::string::npos;
}

}  // namespace detail

/// Vertices file: `<ext_id>\t<kw>:<score>,<kw>:<score>,...` (attribute list
/// optional). Edges file: `<u_ext>\t<v_ext>`. Keywords are lower-cased and
/// trimmed; duplicate (vertex, keyword) pairs keep the max score; self-loops
/// and duplicate edges are dropped with a warning count.
inline AttributedGraph load_graph(const std::string& vertices_path,
                                  const std::string& edges_path,
                                  LoadStats* stats = nullptr) {
    std::ifstream vf(vertices_path);
    if (!vf) throw Error(ErrorKind::Io, "cannot open: " + vertices_path);
    AttributedGraph g;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(vf, line)) {
        ++line_no;
        if (detail::blank(line)) continue;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        auto tab = line.find('\t');
        std::string ext = line.substr(0, tab);
        if (ext.empty())
            throw Error(ErrorKind::Format, "line " + std::to_string(line_no) + ": empty vertex id");
        VertexId v;
        try {
            v = g.add_vertex(ext);
        } catch (const Error& e) {
            throw Error(ErrorKind::Format, "line " + std::to_string(line_no) + ": " + e.what());
        }
        if (tab == std::string::npos) continue;
        std::string attr_list = line.substr(tab + 1);
        if (detail::blank(attr_list)) continue;
        std::stringstream ss(attr_list);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            if (detail::blank(tok)) continue;
            auto colon = tok.rfind(':');
            if (colon == std::string::npos)
                throw Error(ErrorKind::Format,
                            "line " + std::to_string(line_no) + ": malformed attribute '" + tok + "'");
            std::string kw = lowercase_trim(tok.substr(0, colon));
            if (kw.empty())
                throw Error(ErrorKind::Format,
                            "line " + std::to_string(line_no) + ": empty keyword in '" + tok + "'");
            double score = detail::parse_score(lowercase_trim(tok.substr(colon + 1)), line_no);
            g.set_influence_max(v, g.intern_keyword(kw), score);
        }
    }

    std::ifstream ef(edges_path);
    if (!ef) throw Error(ErrorKind::Io, "cannot open: " + edges_path);
    LoadStats local;
    std::vector<std::pair<VertexId, VertexId>> seen;
    line_no = 0;
    while (std::getline(ef, line)) {
        ++line_no;
        if (detail::blank(line)) continue;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        auto tab = line.find('\t');
        if (tab == std::string::npos)
            throw Error(ErrorKind::Format,
                        "line " + std::to_string(line_no) + ": expected '<u>\\t<v>'");
        std::string ue = line.substr(0, tab), ve = line.substr(tab + 1);
        VertexId u = g.vertex_of(ue);
        VertexId v = g.vertex_of(ve);
        if (u == kInvalidId)
            throw Error(ErrorKind::Format,
                        "line " + std::to_string(line_no) + ": unknown vertex '" + ue + "'");
        if (v == kInvalidId)
            throw Error(ErrorKind::Format,
                        "line " + std::to_string(line_no) + ": unknown vertex '" + ve + "'");
        if (u == v) {
            ++local.self_loops_dropped;
            continue;
        }
        seen.emplace_back(std::min(u, v), std::max(u, v));
    }
    std::sort(seen.begin(), seen.end());
    std::size_t unique_edges = 0;
    for (std::size_t i = 0; i < seen.size(); ++i) {
        if (i > 0 && seen[i] == seen[i - 1]) {
            ++local.duplicate_edges_dropped;
            continue;
        }
        g.add_edge_unchecked(seen[i].first, seen[i].second);
        ++unique_edges;
    }
    g.finalize_edges();
    if (stats) *stats = local;
    return g;
}

/// Inverted index IL_w: keyword id -> ascending vertex ids with s_v(w) > 0.
class InvertedIndex {
public:
    explicit InvertedIndex(const AttributedGraph& g) : lists_(g.keyword_count()) {
        for (VertexId v = 0; v < g.vertex_count(); ++v) {
            for (const auto& [w, s] : g.attrs(v)) {
                if (s > 0.0) lists_[w].push_back(v);
            }
        }
    }

    const std::vector<VertexId>& list(KeywordId w) const {
        static const std::vector<VertexId> empty;
        return w < lists_.size() ? lists_[w] : empty;
    }

    std::size_t keyword_count() const { return lists_.size(); }

private:
    std::vector<std::vector<VertexId>> lists_;
};

inline InvertedIndex build_inverted_index(const AttributedGraph& g) { return InvertedIndex(g); }

// --- binary persistence (magic KICQG, version 1) ---
//
// Sections, in order, each length-prefixed (u64 payload bytes):
//   keyword table, vertex table, adjacency, attributes.
// Integers little-endian fixed width, scores IEEE-754 f64. Emission orders
// are canonical (ids ascending), so identical graphs serialize identically.

inline constexpr char kGraphMagic[5] = {'K', 'I', 'C', 'Q', 'G'};
inline constexpr std::uint8_t kGraphVersion = 1;

inline std::vector<char> serialize_graph(const AttributedGraph& g) {
    binio::Writer w;
    w.raw(kGraphMagic, 5);
    w.u8(kGraphVersion);

    auto section = [&w](const binio::Writer& payload) {
        w.u64(payload.size());
        w.raw(payload.bytes().data(), payload.size());
    };

    binio::Writer kw;
    kw.u32(static_cast<std::uint32_t>(g.keyword_count()));
    for (KeywordId i = 0; i < g.keyword_count(); ++i) kw.str(g.keyword(i));
    section(kw);

    binio::Writer vt;
    vt.u32(static_cast<std::uint32_t>(g.vertex_count()));
    for (VertexId v = 0; v < g.vertex_count(); ++v) vt.str(g.external_id(v));
    section(vt);

    binio::Writer adj;
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        const auto& nbrs = g.neighbors(v);
        adj.u32(static_cast<std::uint32_t>(nbrs.size()));
        for (VertexId u : nbrs) adj.u32(u);
    }
    section(adj);

    binio::Writer at;
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        const auto& a = g.attrs(v);
        at.u32(static_cast<std::uint32_t>(a.size()));
        for (const auto& [kwid, s] : a) {
            at.u32(kwid);
            at.f64(s);
        }
    }
    section(at);

    return w.bytes();
}

inline void save_graph(const AttributedGraph& g, const std::string& path) {
    binio::write_file(path, serialize_graph(g));
}

inline AttributedGraph deserialize_graph(const std::vector<char>& bytes) {
    binio::Reader r(bytes.data(), bytes.size());
    char magic[5];
    for (char& c : magic) c = static_cast<char>(r.u8());
    if (std::memcmp(magic, kGraphMagic, 5) != 0)
        throw Error(ErrorKind::Format, "not a graph container (bad magic)");
    if (r.u8() != kGraphVersion) throw Error(ErrorKind::Format, "unsupported graph format version");

    AttributedGraph g;
    r.u64();  // keyword section length
    std::uint32_t nkw = r.u32();
    for (std::uint32_t i = 0; i < nkw; ++i) g.intern_keyword(r.str());

    r.u64();
    std::uint32_t nv = r.u32();
    for (std::uint32_t i = 0; i < nv; ++i) g.add_vertex(r.str());

    r.u64();
    for (VertexId v = 0; v < nv; ++v) {
        std::uint32_t deg = r.u32();
        for (std::uint32_t i = 0; i < deg; ++i) {
            VertexId u = r.u32();
            if (u >= nv) throw Error(ErrorKind::Format, "adjacency references unknown vertex");
            if (u > v) g.add_edge_unchecked(v, u);  // stored both ways, rebuild once
        }
    }

    r.u64();
    for (VertexId v = 0; v < nv; ++v) {
        std::uint32_t n = r.u32();
        for (std::uint32_t i = 0; i < n; ++i) {
            KeywordId kwid = r.u32();
            double s = r.f64();
            if (kwid >= nkw) throw Error(ErrorKind::Format, "attribute references unknown keyword");
            if (s < 0.0 || s > 1.0) throw Error(ErrorKind::Format, "attribute score out of range");
            g.set_influence_max(v, kwid, s);
        }
    }
    g.finalize_edges();  // max_degree recomputed, never trusted from file
    return g;
}

inline AttributedGraph load_graph_binary(const std::string& path) {
    return deserialize_graph(binio::read_file(path));
}

}  // namespace kicq
