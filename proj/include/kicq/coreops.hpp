#pragma once

// Structural kernels over query subgraphs: bucket-based core decomposition,
// maximal k-core extraction, connected components, minimum degree. Subgraphs
// are membership views over a QuerySubgraph, no adjacency copying.

#include <algorithm>
#include <vector>

#include "kicq/query.hpp"
#include "kicq/types.hpp"

namespace kicq {

/// Membership view over a QuerySubgraph (local vertex indices).
class SubgraphView {
public:
    SubgraphView(const QuerySubgraph& base, std::vector<std::uint32_t> members)
        : base_(&base), members_(std::move(members)), mask_(base.size(), 0) {
        std::sort(members_.begin(), members_.end());
        for (std::uint32_t v : members_) mask_[v] = 1;
    }

    static SubgraphView full(const QuerySubgraph& base) {
        std::vector<std::uint32_t> all(base.size());
        for (std::uint32_t i = 0; i < all.size(); ++i) all[i] = i;
        return SubgraphView(base, std::move(all));
    }

    const QuerySubgraph& base() const { return *base_; }
    const std::vector<std::uint32_t>& members() const { return members_; }
    bool contains(std::uint32_t v) const { return mask_[v] != 0; }
    std::size_t size() const { return members_.size(); }
    bool empty() const { return members_.empty(); }

    int induced_degree(std::uint32_t v) const {
        int d = 0;
        for (std::uint32_t u : base_->adjacency[v])
            if (mask_[u]) ++d;
        return d;
    }

private:
    const QuerySubgraph* base_;
    std::vector<std::uint32_t> members_;
    std::vector<char> mask_;
};

struct CoreDecomposition {
    std::vector<int> core;  // indexed by local id; -1 outside the view
    int max_core = 0;
};

/// Bucket-based peeling, linear in the view's induced edges. Among
/// equal-degree vertices the smallest local id peels first.
inline CoreDecomposition core_decomposition(const SubgraphView& h) {
    CoreDecomposition cd;
    cd.core.assign(h.base().size(), -1);
    if (h.empty()) return cd;

    const auto& members = h.members();
    std::size_t n = members.size();
    std::vector<int> degree(n);
    int max_deg = 0;
    for (std::size_t i = 0; i < n; ++i) {
        degree[i] = h.induced_degree(members[i]);
        max_deg = std::max(max_deg, degree[i]);
    }

    // counting sort by degree; members are id-ascending so ties peel by id
    std::vector<std::size_t> bin(static_cast<std::size_t>(max_deg) + 2, 0);
    for (std::size_t i = 0; i < n; ++i) ++bin[degree[i]];
    std::size_t start = 0;
    for (std::size_t d = 0; d <= static_cast<std::size_t>(max_deg); ++d) {
        std::size_t count = bin[d];
        bin[d] = start;
        start += count;
    }
    std::vector<std::size_t> pos(n), vert(n);
    for (std::size_t i = 0; i < n; ++i) {
        pos[i] = bin[degree[i]]++;
        vert[pos[i]] = i;
    }
    for (std::size_t d = static_cast<std::size_t>(max_deg); d >= 1; --d) bin[d] = bin[d - 1];
    bin[0] = 0;

    std::vector<std::uint32_t> local_of(h.base().size(), kInvalidId);
    for (std::size_t i = 0; i < n; ++i) local_of[members[i]] = static_cast<std::uint32_t>(i);

    std::vector<int> core(n);
    for (std::size_t i = 0; i < n; ++i) core[i] = degree[i];
    for (std::size_t it = 0; it < n; ++it) {
        std::size_t v = vert[it];
        for (std::uint32_t nbr : h.base().adjacency[members[v]]) {
            if (!h.contains(nbr)) continue;
            std::size_t u = local_of[nbr];
            if (core[u] > core[v]) {
                std::size_t du = static_cast<std::size_t>(core[u]);
                std::size_t pu = pos[u];
                std::size_t pw = bin[du];
                std::size_t w = vert[pw];
                if (u != w) {
                    pos[u] = pw;
                    vert[pu] = w;
                    pos[w] = pu;
                    vert[pw] = u;
                }
                ++bin[du];
                --core[u];
            }
        }
    }

    for (std::size_t i = 0; i < n; ++i) {
        cd.core[members[i]] = core[i];
        cd.max_core = std::max(cd.max_core, core[i]);
    }
    return cd;
}

/// Vertices of the maximal k-core: exactly {v : core(v) >= k}.
inline std::vector<std::uint32_t> maximal_k_core(const SubgraphView& h,
                                                 const CoreDecomposition& cd, int k) {
    std::vector<std::uint32_t> out;
    for (std::uint32_t v : h.members())
        if (cd.core[v] >= k) out.push_back(v);
    return out;
}

/// Partition of `restrict` into maximal connected sets under the view's
/// induced edges; components ordered by smallest member, members ascending.
inline std::vector<std::vector<std::uint32_t>> connected_components(
    const SubgraphView& h, const std::vector<std::uint32_t>& restrict_to) {
    std::vector<char> in(h.base().size(), 0);
    for (std::uint32_t v : restrict_to) in[v] = 1;
    std::vector<std::uint32_t> seeds = restrict_to;
    std::sort(seeds.begin(), seeds.end());
    std::vector<char> seen(h.base().size(), 0);
    std::vector<std::vector<std::uint32_t>> comps;
    std::vector<std::uint32_t> stack;
    for (std::uint32_t s : seeds) {
        if (seen[s]) continue;
        std::vector<std::uint32_t> comp;
        stack.push_back(s);
        seen[s] = 1;
        while (!stack.empty()) {
            std::uint32_t v = stack.back();
            stack.pop_back();
            comp.push_back(v);
            for (std::uint32_t u : h.base().adjacency[v]) {
                if (in[u] && h.contains(u) && !seen[u]) {
                    seen[u] = 1;
                    stack.push_back(u);
                }
            }
        }
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
    }
    return comps;
}

inline int min_degree(const SubgraphView& h, const std::vector<std::uint32_t>& restrict_to) {
    if (restrict_to.empty()) throw Error(ErrorKind::Domain, "min_degree of empty vertex set");
    std::vector<char> in(h.base().size(), 0);
    for (std::uint32_t v : restrict_to) in[v] = 1;
    int best = -1;
    for (std::uint32_t v : restrict_to) {
        int d = 0;
        for (std::uint32_t u : h.base().adjacency[v])
            if (in[u] && h.contains(u)) ++d;
        if (best < 0 || d < best) best = d;
    }
    return best;
}

}  // namespace kicq
