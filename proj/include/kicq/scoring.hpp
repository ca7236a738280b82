#pragma once

// Community scoring: the weighted cohesiveness + influence score, its
// upper bound for unexplored subgraphs, and the quality metrics reported by
// the evaluation commands (CPJ and structural cohesiveness).

#include <algorithm>
#include <cstdint>
#include <queue>
#include <vector>

#include "kicq/graph.hpp"
#include "kicq/types.hpp"

namespace kicq {

/// A reported community: connected component of a maximal k-core of the
/// query subgraph, members as sorted global vertex ids.
struct Community {
    std::vector<VertexId> members;
    int k = 0;
    double score = 0.0;
    double influence_sum = 0.0;
};

/// beta * k / max-deg(G+) + (1-beta) * influence_sum / |V|.
inline double community_score(int k, double influence_sum, int graph_max_degree,
                              std::size_t graph_vertex_count, double beta) {
    if (k < 0 || influence_sum < 0.0 || beta < 0.0 || beta > 1.0)
        throw Error(ErrorKind::Domain, "invalid scoring inputs");
    if (graph_max_degree == 0 && k > 0)
        throw Error(ErrorKind::Internal, "k > 0 with zero graph max degree");
    if (k > graph_max_degree)
        throw Error(ErrorKind::Internal, "cohesion factor exceeds graph max degree");
    double cohesiveness = graph_max_degree == 0 ? 0.0 : static_cast<double>(k) / graph_max_degree;
    double influence = graph_vertex_count == 0 ? 0.0
                                               : influence_sum / static_cast<double>(graph_vertex_count);
    return beta * cohesiveness + (1.0 - beta) * influence;
}

/// Upper bound for any community of cohesion k inside a subgraph whose total
/// relevance mass is subgraph_influence_sum: same arithmetic with the whole
/// subgraph's influence in place of the community's.
inline double upper_bound_score(double subgraph_influence_sum, int k, int graph_max_degree,
                                std::size_t graph_vertex_count, double beta) {
    return community_score(k, subgraph_influence_sum, graph_max_degree, graph_vertex_count, beta);
}

namespace detail {

inline std::vector<KeywordId> positive_keywords(const AttributedGraph& g, VertexId v) {
    std::vector<KeywordId> out;
    for (const auto& [w, s] : g.attrs(v))
        if (s > 0.0) out.push_back(w);
    return out;
}

inline double jaccard(const std::vector<KeywordId>& a, const std::vector<KeywordId>& b) {
    if (a.empty() && b.empty()) return 1.0;  // identical (empty) keyword sets
    std::size_t inter = 0;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] < b[j]) ++i;
        else if (b[j] < a[i]) ++j;
        else { ++inter; ++i; ++j; }
    }
    return static_cast<double>(inter) / static_cast<double>(a.size() + b.size() - inter);
}

}  // namespace detail

/// Community pairwise Jaccard: per community the mean keyword-set Jaccard
/// over unordered member pairs (singletons contribute 1), averaged over the
/// communities.
inline double cpj(const std::vector<std::vector<VertexId>>& communities,
                  const AttributedGraph& g) {
    if (communities.empty()) throw Error(ErrorKind::Domain, "cpj of empty community list");
    double total = 0;
    for (const auto& members : communities) {
        if (members.empty()) throw Error(ErrorKind::Domain, "cpj of empty community");
        if (members.size() == 1) {
            total += 1.0;
            continue;
        }
        std::vector<std::vector<KeywordId>> kws;
        kws.reserve(members.size());
        for (VertexId v : members) kws.push_back(detail::positive_keywords(g, v));
        double sum = 0;
        std::size_t pairs = 0;
        for (std::size_t i = 0; i < kws.size(); ++i) {
            for (std::size_t j = i + 1; j < kws.size(); ++j) {
                sum += detail::jaccard(kws[i], kws[j]);
                ++pairs;
            }
        }
        total += sum / static_cast<double>(pairs);
    }
    return total / static_cast<double>(communities.size());
}

struct StructuralMetrics {
    double density = 0;
    double average_degree = 0;
    double clustering_coefficient = 0;
    int diameter = 0;
};

/// Density, average degree, mean local clustering coefficient (degree < 2
/// contributes 0) and BFS diameter of the community induced in g.
/// Singleton conventions: density 1, clustering 0, diameter 0.
inline StructuralMetrics structural_metrics(const std::vector<VertexId>& members,
                                            const AttributedGraph& g) {
    if (members.empty()) throw Error(ErrorKind::Domain, "metrics of empty community");
    std::size_t n = members.size();
    std::unordered_map<VertexId, std::uint32_t> local;
    local.reserve(n * 2);
    for (std::size_t i = 0; i < n; ++i) local.emplace(members[i], static_cast<std::uint32_t>(i));
    std::vector<std::vector<std::uint32_t>> adj(n);
    std::size_t edges = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (VertexId u : g.neighbors(members[i])) {
            auto it = local.find(u);
            if (it != local.end()) adj[i].push_back(it->second);
        }
        edges += adj[i].size();
    }
    edges /= 2;

    StructuralMetrics out;
    if (n == 1) {
        out.density = 1.0;
        return out;
    }
    out.density = 2.0 * static_cast<double>(edges) / (static_cast<double>(n) * (n - 1));
    out.average_degree = 2.0 * static_cast<double>(edges) / static_cast<double>(n);

    double cc = 0;
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t d = adj[i].size();
        if (d < 2) continue;
        std::vector<char> is_nbr(n, 0);
        for (std::uint32_t u : adj[i]) is_nbr[u] = 1;
        std::size_t links = 0;
        for (std::uint32_t u : adj[i])
            for (std::uint32_t w : adj[u])
                if (w > u && is_nbr[w]) ++links;
        cc += 2.0 * static_cast<double>(links) / (static_cast<double>(d) * (d - 1));
    }
    out.clustering_coefficient = cc / static_cast<double>(n);

    std::vector<int> dist(n);
    for (std::size_t s = 0; s < n; ++s) {
        std::fill(dist.begin(), dist.end(), -1);
        std::queue<std::uint32_t> bfs;
        bfs.push(static_cast<std::uint32_t>(s));
        dist[s] = 0;
        std::size_t reached = 1;
        while (!bfs.empty()) {
            std::uint32_t v = bfs.front();
            bfs.pop();
            for (std::uint32_t u : adj[v]) {
                if (dist[u] < 0) {
                    dist[u] = dist[v] + 1;
                    out.diameter = std::max(out.diameter, dist[u]);
                    bfs.push(u);
                    ++reached;
                }
            }
        }
        if (reached != n)
            throw Error(ErrorKind::Domain, "community is not connected");
    }
    return out;
}

}  // namespace kicq
