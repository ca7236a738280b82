#pragma once

// Keyword extension of an attributed graph: every vertex keyword t spreads
// its influence score to the top-M keywords most similar to t, merging by
// max when the vertex already carries the target keyword.

#include <string>
#include <vector>

#include "kicq/embedding.hpp"
#include "kicq/graph.hpp"

namespace kicq {

struct ExtendStats {
    std::size_t placements_added = 0;   // (vertex, keyword) pairs added or raised
    std::size_t keywords_skipped = 0;   // keywords absent from the vocabulary
};

inline AttributedGraph extend_graph_keywords(const AttributedGraph& g, const SimilarityModel& sim,
                                             int top_m, ExtendStats* stats = nullptr) {
    if (top_m < 0) throw Error(ErrorKind::Domain, "M must be >= 0");
    ExtendStats local;
    AttributedGraph out = g;
    if (top_m == 0) {
        if (stats) *stats = local;
        return out;
    }
    // one ranking per distinct keyword
    std::vector<std::vector<KeywordId>> expansion(g.keyword_count());
    for (KeywordId t = 0; t < g.keyword_count(); ++t) {
        try {
            for (const auto& [kw, s] : top_m_similar(sim, g.keyword(t), g.keywords(), top_m)) {
                KeywordId id = g.keyword_of(kw);
                if (id != kInvalidId) expansion[t].push_back(id);
            }
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::Domain) throw;
            ++local.keywords_skipped;
        }
    }
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        for (const auto& [t, score] : g.attrs(v)) {  // original attributes only
            for (KeywordId w : expansion[t]) {
                if (out.influence(v, w) < score) {
                    out.set_influence_max(v, w, score);
                    ++local.placements_added;
                }
            }
        }
    }
    if (stats) *stats = local;
    return out;
}

}  // namespace kicq
