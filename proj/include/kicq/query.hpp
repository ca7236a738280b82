#pragma once

// Query formulation (term augmentation into keyword sets), vertex relevance
// scoring, and query-essential-subgraph extraction.

#include <algorithm>
#include <string>
#include <unordered_map>
#include <vector>

#include "kicq/embedding.hpp"
#include "kicq/graph.hpp"
#include "kicq/types.hpp"

namespace kicq {

enum class Predicate { And, Or };

struct KicQuery {
    std::vector<std::vector<KeywordId>> term_sets;  // X = {X_t1..X_tn}, each sorted unique
    Predicate predicate = Predicate::Or;
    int r = 3;
    int k_min = 10;
    double beta = 0.60;

    void validate() const {
        if (term_sets.empty()) throw Error(ErrorKind::Domain, "query has no terms");
        for (const auto& s : term_sets)
            if (s.empty()) throw Error(ErrorKind::Domain, "empty keyword set in query");
        if (r < 1) throw Error(ErrorKind::Domain, "r must be >= 1");
        if (k_min < 1) throw Error(ErrorKind::Domain, "k_min must be >= 1");
        if (beta < 0.0 || beta > 1.0) throw Error(ErrorKind::Domain, "beta must be in [0,1]");
    }
};

/// Inner aggregate: MAX influence over the keywords of one term set; outer:
/// MIN across term sets for AND, MAX for OR. Absent keywords contribute 0.
inline double relevance_score(VertexId v, const KicQuery& q, const AttributedGraph& g) {
    double outer = q.predicate == Predicate::And ? 1.0 : 0.0;
    for (const auto& set : q.term_sets) {
        double inner = 0.0;
        for (KeywordId w : set) inner = std::max(inner, g.influence(v, w));
        outer = q.predicate == Predicate::And ? std::min(outer, inner) : std::max(outer, inner);
    }
    return outer;
}

/// Induced subgraph over the query-relevant vertices. Vertices are
/// re-indexed locally (ascending global order), each annotated with its
/// relevance score computed once at construction.
struct QuerySubgraph {
    std::vector<VertexId> global_ids;                 // sorted ascending
    std::vector<double> relevance;                    // gamma, parallel to global_ids
    std::vector<std::vector<std::uint32_t>> adjacency;  // local indices, sorted
    int max_degree = 0;

    std::size_t size() const { return global_ids.size(); }
    bool empty() const { return global_ids.empty(); }
};

/// Build the induced subgraph on an explicit (vertex, gamma) set; the set
/// need not be sorted, gamma must be positive.
inline QuerySubgraph induced_query_subgraph(const AttributedGraph& g,
                                            std::vector<std::pair<VertexId, double>> members) {
    std::sort(members.begin(), members.end());
    QuerySubgraph gq;
    gq.global_ids.reserve(members.size());
    gq.relevance.reserve(members.size());
    std::unordered_map<VertexId, std::uint32_t> local;
    local.reserve(members.size() * 2);
    for (const auto& [v, gamma] : members) {
        local.emplace(v, static_cast<std::uint32_t>(gq.global_ids.size()));
        gq.global_ids.push_back(v);
        gq.relevance.push_back(gamma);
    }
    gq.adjacency.resize(gq.global_ids.size());
    for (std::uint32_t i = 0; i < gq.global_ids.size(); ++i) {
        for (VertexId u : g.neighbors(gq.global_ids[i])) {
            auto it = local.find(u);
            if (it != local.end()) gq.adjacency[i].push_back(it->second);
        }
        // neighbors are globally sorted and local order preserves global order
        gq.max_degree = std::max(gq.max_degree, static_cast<int>(gq.adjacency[i].size()));
    }
    return gq;
}

/// V_q from the inverted lists: intersection over term sets of the union of
/// each set's lists for AND, the full union for OR. Retained vertices carry
/// gamma > 0 by construction (zero-score entries are excluded from IL_w).
inline QuerySubgraph query_essential_subgraph(const AttributedGraph& g, const InvertedIndex& idx,
                                              const KicQuery& q) {
    q.validate();
    auto union_of_set = [&](const std::vector<KeywordId>& set) {
        std::vector<VertexId> acc;
        for (KeywordId w : set) {
            const auto& il = idx.list(w);
            std::vector<VertexId> merged;
            merged.reserve(acc.size() + il.size());
            std::set_union(acc.begin(), acc.end(), il.begin(), il.end(),
                           std::back_inserter(merged));
            acc = std::move(merged);
        }
        return acc;
    };

    std::vector<VertexId> vq = union_of_set(q.term_sets[0]);
    for (std::size_t i = 1; i < q.term_sets.size() && !vq.empty(); ++i) {
        std::vector<VertexId> next = union_of_set(q.term_sets[i]);
        std::vector<VertexId> out;
        if (q.predicate == Predicate::And) {
            std::set_intersection(vq.begin(), vq.end(), next.begin(), next.end(),
                                  std::back_inserter(out));
        } else {
            std::set_union(vq.begin(), vq.end(), next.begin(), next.end(), std::back_inserter(out));
        }
        vq = std::move(out);
    }

    std::vector<std::pair<VertexId, double>> members;
    members.reserve(vq.size());
    for (VertexId v : vq) {
        double gamma = relevance_score(v, q, g);
        if (gamma > 0.0) members.emplace_back(v, gamma);
    }
    return induced_query_subgraph(g, std::move(members));
}

/// X_ti = top-M similar graph keywords of t_i, plus t_i itself when it is a
/// graph keyword. A null model degrades to exact keyword matching.
inline KicQuery formulate_query(const std::vector<std::string>& terms, Predicate predicate, int r,
                                int k_min, double beta, const SimilarityModel* model,
                                const AttributedGraph& g, int top_m) {
    KicQuery q;
    q.predicate = predicate;
    q.r = r;
    q.k_min = k_min;
    q.beta = beta;
    for (const auto& raw : terms) {
        std::string term = lowercase_trim(raw);
        std::vector<KeywordId> set;
        KeywordId self = g.keyword_of(term);
        if (self != kInvalidId) set.push_back(self);
        if (model != nullptr) {
            try {
                for (const auto& [kw, sim] : top_m_similar(*model, term, g.keywords(), top_m)) {
                    KeywordId id = g.keyword_of(kw);
                    if (id != kInvalidId) set.push_back(id);
                }
            } catch (const Error& e) {
                if (e.kind() != ErrorKind::Domain) throw;
                // term not in embedding vocabulary; exact match may still hold
            }
        }
        std::sort(set.begin(), set.end());
        set.erase(std::unique(set.begin(), set.end()), set.end());
        if (set.empty())
            throw Error(ErrorKind::Domain, "unmatched term '" + term + "'");
        q.term_sets.push_back(std::move(set));
    }
    q.validate();
    return q;
}

/// CLI grammar: terms separated by `AND` / `OR` (one predicate type per
/// query), multi-word segments and quoted phrases are single terms.
inline std::pair<std::vector<std::string>, Predicate> parse_query_expression(
    const std::string& expr) {
    std::vector<std::string> tokens;
    std::string cur;
    bool quoted = false;
    for (char c : expr) {
        if (c == '"') {
            quoted = !quoted;
            continue;
        }
        if (!quoted && (c == ' ' || c == '\t')) {
            if (!cur.empty()) tokens.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    if (quoted) throw Error(ErrorKind::Format, "unterminated quote in query");
    if (!cur.empty()) tokens.push_back(cur);

    std::vector<std::string> terms;
    bool saw_and = false, saw_or = false;
    std::string pending;
    auto flush = [&] {
        if (pending.empty()) throw Error(ErrorKind::Format, "empty term in query expression");
        terms.push_back(pending);
        pending.clear();
    };
    for (const auto& tok : tokens) {
        if (tok == "AND" || tok == "OR") {
            (tok == "AND" ? saw_and : saw_or) = true;
            flush();
        } else {
            if (!pending.empty()) pending += ' ';
            pending += tok;
        }
    }
    flush();
    if (saw_and && saw_or)
        throw Error(ErrorKind::Format, "mixed AND/OR predicates are not supported");
    return {terms, saw_or ? Predicate::Or : Predicate::And};
}

}  // namespace kicq
