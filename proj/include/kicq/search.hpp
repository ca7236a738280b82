#pragma once

// Top-r community search over a query subgraph: the exhaustive variant and
// the bound-pruned recursive variant, sharing a deterministic result heap.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <vector>

#include "kicq/coreops.hpp"
#include "kicq/query.hpp"
#include "kicq/scoring.hpp"
#include "kicq/types.hpp"

namespace kicq {

struct SearchStats {
    std::uint64_t subgraphs_explored = 0;   // maximal k-core extractions
    std::uint64_t core_decompositions = 0;
    std::uint64_t components_scored = 0;
    std::uint64_t prunes_by_bound = 0;      // k' rejected by the upper-bound test
    std::uint64_t prunes_by_mindeg = 0;     // k lifted to min-deg(H)
    std::uint64_t tree_nodes_visited = 0;
    std::uint64_t tree_nodes_pruned = 0;
};

/// Instrumentation for prune-soundness audits; normally unset.
struct ExploreHooks {
    // The k' scan rejected cohesion k_pruned for the component `members`
    // (local ids of gq) while the r-th best score was `threshold`.
    std::function<void(const QuerySubgraph& gq, const std::vector<std::uint32_t>& members,
                       int k_pruned, double threshold)>
        on_bound_prune;
};

/// Capacity-r buffer of the best communities, ordered by score descending,
/// then cohesion descending, then members lexicographically ascending. One
/// entry per distinct member set (the higher (score, k) wins). Threshold is
/// the r-th best score, 0 while underfull.
class ResultHeap {
public:
    explicit ResultHeap(int capacity) : capacity_(capacity) {
        if (capacity < 1) throw Error(ErrorKind::Domain, "result capacity must be >= 1");
    }

    static bool orders_before(const Community& a, const Community& b) {
        if (a.score != b.score) return a.score > b.score;
        if (a.k != b.k) return a.k > b.k;
        return a.members < b.members;
    }

    double threshold() const {
        return entries_.size() < static_cast<std::size_t>(capacity_) ? 0.0
                                                                     : entries_.back().score;
    }

    void offer(Community c) {
        for (auto& e : entries_) {
            if (e.members == c.members) {
                if (c.score > e.score || (c.score == e.score && c.k > e.k)) {
                    e = std::move(c);
                    std::sort(entries_.begin(), entries_.end(), orders_before);
                }
                return;
            }
        }
        if (entries_.size() < static_cast<std::size_t>(capacity_)) {
            entries_.insert(std::upper_bound(entries_.begin(), entries_.end(), c, orders_before),
                            std::move(c));
            return;
        }
        if (orders_before(c, entries_.back())) {
            entries_.pop_back();
            entries_.insert(std::upper_bound(entries_.begin(), entries_.end(), c, orders_before),
                            std::move(c));
        }
    }

    const std::vector<Community>& entries() const { return entries_; }

private:
    int capacity_;
    std::vector<Community> entries_;  // sorted best-first
};

namespace detail {

inline Community make_community(const QuerySubgraph& gq, const std::vector<std::uint32_t>& local,
                                int k, int graph_max_degree, std::size_t graph_vertex_count,
                                double beta) {
    Community c;
    c.members.reserve(local.size());
    c.influence_sum = 0.0;
    for (std::uint32_t v : local) {  // local ids ascend with global ids
        c.members.push_back(gq.global_ids[v]);
        c.influence_sum += gq.relevance[v];
    }
    c.k = k;
    c.score = community_score(k, c.influence_sum, graph_max_degree, graph_vertex_count, beta);
    return c;
}

}  // namespace detail

/// Enumerate every cohesion level of the query subgraph: one core
/// decomposition, then for each k in [k_min, max-deg(G_q)] the connected
/// components of the maximal k-core, keeping the top r. A member set that is
/// a component at several k is kept at the largest such k.
inline std::vector<Community> basic_explore(const QuerySubgraph& gq, const KicQuery& q,
                                            int graph_max_degree, std::size_t graph_vertex_count,
                                            SearchStats* stats = nullptr) {
    SearchStats local_stats;
    SearchStats& st = stats ? *stats : local_stats;
    ResultHeap heap(q.r);
    if (!gq.empty()) {
        SubgraphView view = SubgraphView::full(gq);
        CoreDecomposition cd = core_decomposition(view);
        ++st.core_decompositions;
        for (int k = q.k_min; k <= gq.max_degree; ++k) {
            ++st.subgraphs_explored;
            auto core_vertices = maximal_k_core(view, cd, k);
            if (core_vertices.empty()) continue;
            for (auto& comp : connected_components(view, core_vertices)) {
                ++st.components_scored;
                heap.offer(detail::make_community(gq, comp, k, graph_max_degree,
                                                  graph_vertex_count, q.beta));
            }
        }
    }
    return heap.entries();
}

/// Recursive bound-pruned exploration of subgraph h at cohesion k:
/// lift k to min-deg(h) when larger, extract the maximal k-core components,
/// report each, then recurse into the first k' whose upper bound is not
/// below the current r-th best score. `k_scan_cap` limits the k' scan
/// (max-deg(G_q) for the standalone variant, u.k for index-driven calls).
inline void pruned_explore(const QuerySubgraph& gq, const SubgraphView& h, int k,
                           const KicQuery& q, int graph_max_degree,
                           std::size_t graph_vertex_count, int k_scan_cap, ResultHeap& heap,
                           SearchStats& stats, const ExploreHooks* hooks = nullptr) {
    if (h.empty()) return;
    int md = min_degree(h, h.members());
    if (md > k) {
        k = md;
        ++stats.prunes_by_mindeg;
    }
    CoreDecomposition cd = core_decomposition(h);
    ++stats.core_decompositions;
    ++stats.subgraphs_explored;
    auto core_vertices = maximal_k_core(h, cd, k);
    if (core_vertices.empty()) return;
    for (auto& comp : connected_components(h, core_vertices)) {
        ++stats.components_scored;
        Community c = detail::make_community(gq, comp, k, graph_max_degree, graph_vertex_count,
                                             q.beta);
        double comp_influence = c.influence_sum;
        heap.offer(std::move(c));
        for (int kp = k + 1; kp <= k_scan_cap; ++kp) {
            double bound = upper_bound_score(comp_influence, kp, graph_max_degree,
                                             graph_vertex_count, q.beta);
            // exploring at bound == threshold keeps tie-broken results
            // identical to the exhaustive enumeration
            if (bound >= heap.threshold()) {
                pruned_explore(gq, SubgraphView(gq, comp), kp, q, graph_max_degree,
                               graph_vertex_count, k_scan_cap, heap, stats, hooks);
                break;
            }
            ++stats.prunes_by_bound;
            if (hooks && hooks->on_bound_prune) hooks->on_bound_prune(gq, comp, kp, heap.threshold());
        }
    }
}

inline std::vector<Community> pruned_explore_query(const QuerySubgraph& gq, const KicQuery& q,
                                                   int graph_max_degree,
                                                   std::size_t graph_vertex_count,
                                                   SearchStats* stats = nullptr,
                                                   const ExploreHooks* hooks = nullptr) {
    SearchStats local_stats;
    SearchStats& st = stats ? *stats : local_stats;
    ResultHeap heap(q.r);
    if (!gq.empty()) {
        pruned_explore(gq, SubgraphView::full(gq), q.k_min, q, graph_max_degree,
                       graph_vertex_count, gq.max_degree, heap, st, hooks);
    }
    return heap.entries();
}

}  // namespace kicq
