#pragma once

// KIC-tree: the connected components of every maximal k-core, organized as
// a compressed hierarchy (each graph vertex stored in exactly one node) and
// annotated per keyword with influence bounds used to prune query-time
// exploration. Includes the index-driven search and the binary container.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "kicq/binio.hpp"
#include "kicq/graph.hpp"
#include "kicq/query.hpp"
#include "kicq/search.hpp"
#include "kicq/types.hpp"

namespace kicq {

/// Per-keyword annotations of one tree node.
struct IListEntry {
    /// Vertices of this node's vertex_set carrying the keyword.
    std::vector<VertexId> relevant_vertices;
    /// Sum of the keyword's influence over every vertex of subtree(u):
    /// bounds the keyword's contribution to any community inside the
    /// subtree. (The relV-gated variant of this bound is unsound for
    /// multi-keyword queries, so the sum is kept unconditionally.)
    double node_influence_bound = 0.0;
    /// Max over children of their node_influence_bound: bounds communities
    /// lying strictly below this node. 0 at leaves.
    double descendant_influence_bound = 0.0;
};

struct KicTreeNode {
    int k = 0;      // cohesion factor of the component this node represents
    int k_max = 0;  // max cohesion factor within subtree(u)
    std::uint32_t parent = kInvalidId;
    std::vector<std::uint32_t> children;
    /// Graph vertices whose core number equals k within this component;
    /// every graph vertex appears in exactly one node of the tree.
    std::vector<VertexId> vertex_set;
    std::vector<std::pair<KeywordId, IListEntry>> ilist;  // sorted by keyword

    const IListEntry* find_entry(KeywordId w) const {
        auto it = std::lower_bound(ilist.begin(), ilist.end(), w,
                                   [](const auto& p, KeywordId key) { return p.first < key; });
        return (it != ilist.end() && it->first == w) ? &it->second : nullptr;
    }
};

struct KicTree {
    std::vector<KicTreeNode> nodes;
    std::uint32_t root = kInvalidId;
    std::uint32_t vertex_count = 0;

    const KicTreeNode& node(std::uint32_t id) const { return nodes[id]; }
    std::size_t size() const { return nodes.size(); }

    int depth() const {
        std::vector<int> d(nodes.size(), 0);
        int best = 0;
        std::vector<std::uint32_t> stack{root};
        while (!stack.empty()) {
            std::uint32_t u = stack.back();
            stack.pop_back();
            for (std::uint32_t c : nodes[u].children) {
                d[c] = d[u] + 1;
                best = std::max(best, d[c]);
                stack.push_back(c);
            }
        }
        return best;
    }
};

namespace detail {

struct DisjointSet {
    std::vector<std::uint32_t> parent;
    explicit DisjointSet(std::size_t n) : parent(n) {
        std::iota(parent.begin(), parent.end(), 0u);
    }
    std::uint32_t find(std::uint32_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void unite(std::uint32_t a, std::uint32_t b) { parent[find(a)] = find(b); }
};

}  // namespace detail

/// Build the tree bottom-up from the highest core level: vertices join an
/// incremental union-find; whenever a level adds vertices or merges
/// previously separate components, a node is created whose children are the
/// merged components' current top nodes. Components that pass a level
/// unchanged gain no node, which keeps child k strictly above parent k.
/// Isolated vertices (core 0) live in the synthetic root.
inline KicTree build_kic_tree(const AttributedGraph& g) {
    std::size_t n = g.vertex_count();

    // full-graph core decomposition (same peeling as coreops, on raw adjacency)
    std::vector<int> core(n, 0);
    int max_core = 0;
    {
        std::vector<int> degree(n);
        int max_deg = 0;
        for (std::size_t v = 0; v < n; ++v) {
            degree[v] = static_cast<int>(g.neighbors(static_cast<VertexId>(v)).size());
            max_deg = std::max(max_deg, degree[v]);
        }
        std::vector<std::size_t> bin(static_cast<std::size_t>(max_deg) + 2, 0);
        for (std::size_t v = 0; v < n; ++v) ++bin[degree[v]];
        std::size_t start = 0;
        for (int d = 0; d <= max_deg; ++d) {
            std::size_t c = bin[d];
            bin[d] = start;
            start += c;
        }
        std::vector<std::size_t> pos(n), vert(n);
        for (std::size_t v = 0; v < n; ++v) {
            pos[v] = bin[degree[v]]++;
            vert[pos[v]] = v;
        }
        for (int d = max_deg; d >= 1; --d) bin[d] = bin[d - 1];
        if (!bin.empty()) bin[0] = 0;
        core = degree;
        for (std::size_t it = 0; it < n; ++it) {
            std::size_t v = vert[it];
            for (VertexId u : g.neighbors(static_cast<VertexId>(v))) {
                if (core[u] > core[v]) {
                    std::size_t du = static_cast<std::size_t>(core[u]);
                    std::size_t pu = pos[u], pw = bin[du], w = vert[pw];
                    if (u != w) {
                        pos[u] = pw;
                        vert[pu] = w;
                        pos[w] = pu;
                        vert[pw] = static_cast<std::size_t>(u);
                    }
                    ++bin[du];
                    --core[u];
                }
            }
        }
        for (std::size_t v = 0; v < n; ++v) max_core = std::max(max_core, core[v]);
    }

    std::vector<std::vector<VertexId>> by_level(static_cast<std::size_t>(max_core) + 1);
    for (std::size_t v = 0; v < n; ++v) by_level[core[v]].push_back(static_cast<VertexId>(v));

    KicTree tree;
    detail::DisjointSet dsu(n);
    std::vector<char> active(n, 0);
    std::vector<VertexId> subtree_min;  // smallest vertex under each node, for canonical order
    // current top node of the component whose union-find root this is
    std::unordered_map<std::uint32_t, std::uint32_t> top_node;

    auto by_subtree_min = [&subtree_min](std::uint32_t a, std::uint32_t b) {
        return subtree_min[a] < subtree_min[b];
    };

    for (int k = max_core; k >= 1; --k) {
        for (VertexId v : by_level[k]) active[v] = 1;
        for (VertexId v : by_level[k]) {
            for (VertexId u : g.neighbors(v)) {
                if (active[u]) dsu.unite(v, u);
            }
        }
        // group this level's vertices and the previous top nodes by their
        // (possibly merged) component root
        std::map<std::uint32_t, std::vector<VertexId>> fresh;        // root -> level-k vertices
        std::map<std::uint32_t, std::vector<std::uint32_t>> merged;  // root -> former top nodes
        for (VertexId v : by_level[k]) fresh[dsu.find(v)].push_back(v);
        for (const auto& [old_root, node_id] : top_node) {
            merged[dsu.find(old_root)].push_back(node_id);
        }
        std::unordered_map<std::uint32_t, std::uint32_t> next_top;
        for (auto& [root, children] : merged) {
            auto fit = fresh.find(root);
            bool has_fresh = fit != fresh.end();
            if (!has_fresh && children.size() == 1) {
                // component unchanged at this level: no node
                next_top.emplace(root, children[0]);
                continue;
            }
            KicTreeNode node;
            node.k = k;
            VertexId min_v = kInvalidId;
            if (has_fresh) {
                node.vertex_set = std::move(fit->second);
                std::sort(node.vertex_set.begin(), node.vertex_set.end());
                min_v = node.vertex_set.front();
                fresh.erase(fit);
            }
            node.k_max = k;
            std::sort(children.begin(), children.end(), by_subtree_min);
            for (std::uint32_t c : children) {
                node.k_max = std::max(node.k_max, tree.nodes[c].k_max);
                min_v = std::min(min_v, subtree_min[c]);
            }
            node.children = std::move(children);
            std::uint32_t id = static_cast<std::uint32_t>(tree.nodes.size());
            for (std::uint32_t c : node.children) tree.nodes[c].parent = id;
            tree.nodes.push_back(std::move(node));
            subtree_min.push_back(min_v);
            next_top.emplace(root, id);
        }
        for (auto& [root, vertices] : fresh) {  // brand-new components at level k
            KicTreeNode node;
            node.k = k;
            node.k_max = k;
            node.vertex_set = std::move(vertices);
            std::sort(node.vertex_set.begin(), node.vertex_set.end());
            std::uint32_t id = static_cast<std::uint32_t>(tree.nodes.size());
            subtree_min.push_back(node.vertex_set.front());
            tree.nodes.push_back(std::move(node));
            next_top.emplace(root, id);
        }
        top_node = std::move(next_top);
    }

    KicTreeNode root_node;
    root_node.k = 0;
    root_node.vertex_set = by_level.empty() ? std::vector<VertexId>{} : by_level[0];
    std::sort(root_node.vertex_set.begin(), root_node.vertex_set.end());
    root_node.k_max = 0;
    std::vector<std::uint32_t> tops;
    tops.reserve(top_node.size());
    for (const auto& [root, node_id] : top_node) tops.push_back(node_id);
    std::sort(tops.begin(), tops.end(), by_subtree_min);
    for (std::uint32_t c : tops) root_node.k_max = std::max(root_node.k_max, tree.nodes[c].k_max);
    root_node.children = std::move(tops);
    tree.root = static_cast<std::uint32_t>(tree.nodes.size());
    for (std::uint32_t c : root_node.children) tree.nodes[c].parent = tree.root;
    tree.nodes.push_back(std::move(root_node));
    tree.vertex_count = static_cast<std::uint32_t>(n);

    // iList pass: post-order accumulation of per-keyword subtree sums
    std::vector<std::map<KeywordId, double>> sums(tree.nodes.size());
    std::vector<std::uint32_t> order;  // post-order
    {
        std::vector<std::pair<std::uint32_t, std::size_t>> stack{{tree.root, 0}};
        while (!stack.empty()) {
            auto& [u, next] = stack.back();
            if (next < tree.nodes[u].children.size()) {
                stack.emplace_back(tree.nodes[u].children[next++], 0);
            } else {
                order.push_back(u);
                stack.pop_back();
            }
        }
    }
    for (std::uint32_t u : order) {
        auto& node = tree.nodes[u];
        auto& sum = sums[u];
        std::map<KeywordId, double> desc_bound;
        for (std::uint32_t c : node.children) {
            for (const auto& [w, s] : sums[c]) {
                sum[w] += s;
                auto [it, fresh] = desc_bound.try_emplace(w, s);
                if (!fresh) it->second = std::max(it->second, s);
            }
            sums[c].clear();  // release child maps once folded in
        }
        std::map<KeywordId, std::vector<VertexId>> rel;
        for (VertexId v : node.vertex_set) {
            for (const auto& [w, s] : g.attrs(v)) {
                if (s <= 0.0) continue;
                sum[w] += s;
                rel[w].push_back(v);
            }
        }
        node.ilist.reserve(sum.size());
        for (const auto& [w, s] : sum) {
            IListEntry entry;
            auto rit = rel.find(w);
            if (rit != rel.end()) entry.relevant_vertices = std::move(rit->second);
            entry.node_influence_bound = s;
            auto dit = desc_bound.find(w);
            entry.descendant_influence_bound = dit == desc_bound.end() ? 0.0 : dit->second;
            node.ilist.emplace_back(w, std::move(entry));
        }
    }
    return tree;
}

struct BoundScore {
    double score = 0.0;
    double influence_component = 0.0;  // S_inf; 0 means nothing relevant
};

namespace detail {

template <typename BoundOf>
inline double aggregate_influence(const KicTreeNode& u, const KicQuery& q,
                                  std::size_t graph_vertex_count, BoundOf bound_of) {
    double outer = 0.0;
    bool first = true;
    for (const auto& set : q.term_sets) {
        double term_sum = 0.0;
        for (KeywordId w : set) {
            const IListEntry* e = u.find_entry(w);
            if (e) term_sum += bound_of(*e);
        }
        if (q.predicate == Predicate::And) {
            outer = first ? term_sum : std::min(outer, term_sum);
        } else {
            outer += term_sum;  // summation aggregate for OR
        }
        first = false;
    }
    return outer / static_cast<double>(graph_vertex_count);
}

}  // namespace detail

/// Upper bound for communities that include at least one vertex stored at u:
/// cohesiveness capped by u.k, influence by the per-keyword subtree sums.
inline BoundScore max_node_score(const KicTreeNode& u, const KicQuery& q, int graph_max_degree,
                                 std::size_t graph_vertex_count) {
    BoundScore b;
    b.influence_component = detail::aggregate_influence(
        u, q, graph_vertex_count, [](const IListEntry& e) { return e.node_influence_bound; });
    double s_k = graph_max_degree == 0 ? 0.0 : static_cast<double>(u.k) / graph_max_degree;
    b.score = q.beta * s_k + (1.0 - q.beta) * b.influence_component;
    return b;
}

/// Upper bound for communities wholly inside descendant nodes of u:
/// cohesiveness capped by u.k_max, influence by the child bounds.
inline BoundScore max_des_score(const KicTreeNode& u, const KicQuery& q, int graph_max_degree,
                                std::size_t graph_vertex_count) {
    BoundScore b;
    b.influence_component =
        detail::aggregate_influence(u, q, graph_vertex_count, [](const IListEntry& e) {
            return e.descendant_influence_bound;
        });
    double s_k = graph_max_degree == 0 ? 0.0 : static_cast<double>(u.k_max) / graph_max_degree;
    b.score = q.beta * s_k + (1.0 - q.beta) * b.influence_component;
    return b;
}

/// Nodes whose own vertex set carries a query keyword, closed under
/// ancestors so the traversal can reach them.
inline std::vector<char> relevant_tree_nodes(const KicTree& tree, const KicQuery& q) {
    std::vector<char> in(tree.nodes.size(), 0);
    for (std::uint32_t u = 0; u < tree.nodes.size(); ++u) {
        bool rel = false;
        for (const auto& set : q.term_sets) {
            for (KeywordId w : set) {
                const IListEntry* e = tree.nodes[u].find_entry(w);
                if (e && !e->relevant_vertices.empty()) {
                    rel = true;
                    break;
                }
            }
            if (rel) break;
        }
        if (!rel) continue;
        for (std::uint32_t a = u; a != kInvalidId && !in[a]; a = tree.nodes[a].parent) in[a] = 1;
    }
    return in;
}

/// Kinds of index-level prune events, for instrumentation.
enum class TreePrune { Subtree, Node };

struct TreeHooks {
    std::function<void(const KicTree& tree, std::uint32_t node, TreePrune kind, double threshold)>
        on_tree_prune;
};

namespace detail {

struct TreeQueryContext {
    const AttributedGraph* graph;
    const KicQuery* query;
    // memoized per-node: query-relevant subtree vertices with their gamma
    std::vector<std::vector<std::pair<VertexId, double>>> relevant;
    std::vector<char> computed;

    TreeQueryContext(const AttributedGraph& g, const KicQuery& q, std::size_t nodes)
        : graph(&g), query(&q), relevant(nodes), computed(nodes, 0) {}
};

/// Decompress bottom-up: the node's own qualifying vertices (per-term union
/// of relV restricted to query keywords, combined by the predicate) plus the
/// cached lists of its children.
inline const std::vector<std::pair<VertexId, double>>& relevant_in_subtree(
    const KicTree& tree, std::uint32_t u, TreeQueryContext& ctx) {
    if (ctx.computed[u]) return ctx.relevant[u];
    const KicTreeNode& node = tree.nodes[u];
    const KicQuery& q = *ctx.query;

    std::vector<VertexId> own;
    bool first = true;
    for (const auto& set : q.term_sets) {
        std::vector<VertexId> term_union;
        for (KeywordId w : set) {
            const IListEntry* e = node.find_entry(w);
            if (!e || e->relevant_vertices.empty()) continue;
            std::vector<VertexId> merged;
            merged.reserve(term_union.size() + e->relevant_vertices.size());
            std::set_union(term_union.begin(), term_union.end(), e->relevant_vertices.begin(),
                           e->relevant_vertices.end(), std::back_inserter(merged));
            term_union = std::move(merged);
        }
        if (q.predicate == Predicate::Or) {
            std::vector<VertexId> merged;
            std::set_union(own.begin(), own.end(), term_union.begin(), term_union.end(),
                           std::back_inserter(merged));
            own = std::move(merged);
        } else if (first) {
            own = std::move(term_union);
        } else {
            std::vector<VertexId> inter;
            std::set_intersection(own.begin(), own.end(), term_union.begin(), term_union.end(),
                                  std::back_inserter(inter));
            own = std::move(inter);
        }
        first = false;
        if (q.predicate == Predicate::And && own.empty()) break;
    }

    auto& out = ctx.relevant[u];
    for (VertexId v : own) {
        double gamma = relevance_score(v, q, *ctx.graph);
        if (gamma > 0.0) out.emplace_back(v, gamma);
    }
    for (std::uint32_t c : node.children) {
        const auto& sub = relevant_in_subtree(tree, c, ctx);
        out.insert(out.end(), sub.begin(), sub.end());
    }
    ctx.computed[u] = 1;
    return out;
}

}  // namespace detail

/// Post-order exploration of the index. Descends only into query-relevant
/// children whose descendant bound can still beat the r-th best score;
/// explores a node's own component only when its bound can. Qualifying
/// nodes decompress their relevant vertices and run the bound-pruned search
/// capped at the node's cohesion factor.
inline void tree_explore(const KicTree& tree, std::uint32_t u, const std::vector<char>& relevant,
                         const KicQuery& q, const AttributedGraph& g, ResultHeap& heap,
                         SearchStats& stats, detail::TreeQueryContext& ctx,
                         const ExploreHooks* hooks = nullptr,
                         const TreeHooks* tree_hooks = nullptr) {
    const KicTreeNode& node = tree.nodes[u];
    ++stats.tree_nodes_visited;

    if (!node.children.empty()) {
        bool any_relevant_child = false;
        for (std::uint32_t c : node.children)
            if (relevant[c]) any_relevant_child = true;
        if (any_relevant_child) {
            BoundScore des = max_des_score(node, q, g.max_degree(), g.vertex_count());
            if (des.influence_component > 0.0 && des.score >= heap.threshold()) {
                for (std::uint32_t c : node.children) {
                    if (relevant[c])
                        tree_explore(tree, c, relevant, q, g, heap, stats, ctx, hooks, tree_hooks);
                }
            } else {
                ++stats.tree_nodes_pruned;
                if (tree_hooks && tree_hooks->on_tree_prune)
                    tree_hooks->on_tree_prune(tree, u, TreePrune::Subtree, heap.threshold());
            }
        }
    }

    if (node.k < q.k_min) return;

    BoundScore own = max_node_score(node, q, g.max_degree(), g.vertex_count());
    if (own.influence_component <= 0.0) return;
    if (own.score < heap.threshold()) {
        ++stats.tree_nodes_pruned;
        if (tree_hooks && tree_hooks->on_tree_prune)
            tree_hooks->on_tree_prune(tree, u, TreePrune::Node, heap.threshold());
        return;
    }

    const auto& members = detail::relevant_in_subtree(tree, u, ctx);
    if (members.empty()) return;
    QuerySubgraph h = induced_query_subgraph(g, members);
    pruned_explore(h, SubgraphView::full(h), q.k_min, q, g.max_degree(), g.vertex_count(), node.k,
                   heap, stats, hooks);
}

/// Entry point used by run_query for the index-driven algorithm.
inline std::vector<Community> tree_explore_query(const KicTree& tree, const KicQuery& q,
                                                 const AttributedGraph& g,
                                                 SearchStats* stats = nullptr,
                                                 const ExploreHooks* hooks = nullptr,
                                                 const TreeHooks* tree_hooks = nullptr) {
    SearchStats local_stats;
    SearchStats& st = stats ? *stats : local_stats;
    ResultHeap heap(q.r);
    auto relevant = relevant_tree_nodes(tree, q);
    bool any = false;
    for (char c : relevant) any |= (c != 0);
    if (any) {
        detail::TreeQueryContext ctx(g, q, tree.nodes.size());
        tree_explore(tree, tree.root, relevant, q, g, heap, st, ctx, hooks, tree_hooks);
    }
    return heap.entries();
}

// --- binary persistence (magic KICQT, version 1, CRC32-checksummed) ---

inline constexpr char kTreeMagic[5] = {'K', 'I', 'C', 'Q', 'T'};
inline constexpr std::uint8_t kTreeVersion = 1;

inline std::vector<char> serialize_tree(const KicTree& tree) {
    binio::Writer payload;
    payload.u32(static_cast<std::uint32_t>(tree.nodes.size()));
    payload.u32(tree.root);
    payload.u32(tree.vertex_count);
    // node table with vertex ranges into the shared permutation
    std::uint64_t offset = 0;
    for (const auto& node : tree.nodes) {
        payload.u32(static_cast<std::uint32_t>(node.k));
        payload.u32(static_cast<std::uint32_t>(node.k_max));
        payload.u32(node.parent);
        payload.u32(static_cast<std::uint32_t>(node.children.size()));
        for (std::uint32_t c : node.children) payload.u32(c);
        payload.u64(offset);
        payload.u64(node.vertex_set.size());
        offset += node.vertex_set.size();
    }
    payload.u64(offset);  // permutation length == |V|
    for (const auto& node : tree.nodes)
        for (VertexId v : node.vertex_set) payload.u32(v);
    for (const auto& node : tree.nodes) {
        payload.u32(static_cast<std::uint32_t>(node.ilist.size()));
        for (const auto& [w, entry] : node.ilist) {
            payload.u32(w);
            payload.u32(static_cast<std::uint32_t>(entry.relevant_vertices.size()));
            for (VertexId v : entry.relevant_vertices) payload.u32(v);
            payload.f64(entry.node_influence_bound);
            payload.f64(entry.descendant_influence_bound);
        }
    }

    binio::Writer out;
    out.raw(kTreeMagic, 5);
    out.u8(kTreeVersion);
    out.u64(payload.size());
    out.raw(payload.bytes().data(), payload.size());
    out.u32(binio::crc32(payload.bytes().data(), payload.size()));
    return out.bytes();
}

inline void save_tree(const KicTree& tree, const std::string& path) {
    binio::write_file(path, serialize_tree(tree));
}

inline KicTree deserialize_tree(const std::vector<char>& bytes) {
    binio::Reader header(bytes.data(), bytes.size());
    char magic[5];
    for (char& c : magic) c = static_cast<char>(header.u8());
    if (std::memcmp(magic, kTreeMagic, 5) != 0)
        throw Error(ErrorKind::Format, "not an index container (bad magic)");
    std::uint8_t version = header.u8();
    if (version != kTreeVersion)
        throw Error(ErrorKind::Format,
                    "unsupported index format version " + std::to_string(version));
    std::uint64_t payload_len = header.u64();
    if (header.remaining() < payload_len + 4)
        throw Error(ErrorKind::Format, "truncated index file");
    const char* payload = bytes.data() + header.pos();
    binio::Reader tail(payload + payload_len, 4);
    if (binio::crc32(payload, payload_len) != tail.u32())
        throw Error(ErrorKind::Format, "index checksum mismatch");

    binio::Reader r(payload, payload_len);
    KicTree tree;
    std::uint32_t count = r.u32();
    tree.root = r.u32();
    tree.vertex_count = r.u32();
    if (tree.root >= count)
        throw Error(ErrorKind::Format, "index root out of range");
    tree.nodes.resize(count);
    std::vector<std::pair<std::uint64_t, std::uint64_t>> ranges(count);
    for (std::uint32_t i = 0; i < count; ++i) {
        auto& node = tree.nodes[i];
        node.k = static_cast<int>(r.u32());
        node.k_max = static_cast<int>(r.u32());
        node.parent = r.u32();
        std::uint32_t nc = r.u32();
        node.children.resize(nc);
        for (auto& c : node.children) {
            c = r.u32();
            if (c >= count) throw Error(ErrorKind::Format, "index child out of range");
        }
        ranges[i] = {r.u64(), r.u64()};
    }
    std::uint64_t perm_len = r.u64();
    std::vector<VertexId> permutation(perm_len);
    for (auto& v : permutation) v = r.u32();
    for (std::size_t i = 0; i < count; ++i) {
        auto [off, len] = ranges[i];
        if (off + len > perm_len) throw Error(ErrorKind::Format, "index vertex range out of bounds");
        tree.nodes[i].vertex_set.assign(permutation.begin() + static_cast<std::ptrdiff_t>(off),
                                        permutation.begin() + static_cast<std::ptrdiff_t>(off + len));
    }
    for (auto& node : tree.nodes) {
        std::uint32_t ne = r.u32();
        node.ilist.resize(ne);
        for (auto& [w, entry] : node.ilist) {
            w = r.u32();
            std::uint32_t nv = r.u32();
            entry.relevant_vertices.resize(nv);
            for (auto& v : entry.relevant_vertices) v = r.u32();
            entry.node_influence_bound = r.f64();
            entry.descendant_influence_bound = r.f64();
        }
    }
    return tree;
}

inline KicTree load_tree(const std::string& path) {
    return deserialize_tree(binio::read_file(path));
}

/// Dispatch a query through one of the three search algorithms. All three
/// return identical community lists; they differ only in work performed.
enum class Algorithm { Basic, Pruned, Tree };

inline std::vector<Community> run_query(const AttributedGraph& g, const InvertedIndex& idx,
                                        const KicQuery& q, Algorithm algorithm,
                                        const KicTree* tree = nullptr,
                                        SearchStats* stats = nullptr,
                                        const ExploreHooks* hooks = nullptr,
                                        const TreeHooks* tree_hooks = nullptr) {
    q.validate();
    switch (algorithm) {
        case Algorithm::Basic: {
            QuerySubgraph gq = query_essential_subgraph(g, idx, q);
            return basic_explore(gq, q, g.max_degree(), g.vertex_count(), stats);
        }
        case Algorithm::Pruned: {
            QuerySubgraph gq = query_essential_subgraph(g, idx, q);
            return pruned_explore_query(gq, q, g.max_degree(), g.vertex_count(), stats, hooks);
        }
        case Algorithm::Tree: {
            if (!tree)
                throw Error(ErrorKind::Domain, "tree algorithm requested without an index");
            return tree_explore_query(*tree, q, g, stats, hooks, tree_hooks);
        }
    }
    throw Error(ErrorKind::Internal, "unknown algorithm");
}

}  // namespace kicq
