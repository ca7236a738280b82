#pragma once

// Topic taxonomy and the information-content similarity used as ranking
// ground truth: sim(t1,t2) = 1 - (IC(t1) + IC(t2) - 2*IC(lcs(t1,t2))) / 2,
// IC(t) = log((|descendants(t)|+1)/|T|) / log(1/|T|).

#include <fstream>
#include <string>
#include <unordered_map>
#include <vector>
#include <cmath>

#include "kicq/types.hpp"

namespace kicq {

class Taxonomy {
public:
    int topic_id(const std::string& topic) const {
        auto it = ids_.find(lowercase_trim(topic));
        return it == ids_.end() ? -1 : it->second;
    }

    std::size_t size() const { return topics_.size(); }
    const std::string& topic(int id) const { return topics_[id]; }
    int root() const { return root_; }
    int parent(int id) const { return parent_[id]; }
    int depth(int id) const { return depth_[id]; }

    /// Number of topics strictly below t (t excluded).
    int descendant_count(int id) const { return descendants_[id]; }

    int intern(const std::string& topic) {
        auto norm = lowercase_trim(topic);
        auto [it, fresh] = ids_.try_emplace(norm, static_cast<int>(topics_.size()));
        if (fresh) {
            topics_.push_back(norm);
            parent_.push_back(-1);
            children_.emplace_back();
        }
        return it->second;
    }

    void add_edge(int parent, int child) {
        if (parent_[child] != -1 && parent_[child] != parent)
            throw Error(ErrorKind::Format, "topic '" + topics_[child] + "' has two parents");
        parent_[child] = parent;
        children_[parent].push_back(child);
    }

    /// Resolve the root, verify the tree is rooted and acyclic, compute
    /// depths and descendant counts.
    void finalize() {
        root_ = -1;
        for (std::size_t i = 0; i < topics_.size(); ++i) {
            if (parent_[i] == -1) {
                if (root_ != -1)
                    throw Error(ErrorKind::Format, "taxonomy has multiple roots: '" +
                                                       topics_[root_] + "' and '" + topics_[i] + "'");
                root_ = static_cast<int>(i);
            }
        }
        if (root_ == -1) throw Error(ErrorKind::Format, "taxonomy has no root (cycle)");
        depth_.assign(topics_.size(), -1);
        descendants_.assign(topics_.size(), 0);
        // iterative DFS from root; unreached topics mean a cycle or forest
        std::vector<std::pair<int, std::size_t>> stack{{root_, 0}};
        depth_[root_] = 0;
        std::vector<int> order;
        while (!stack.empty()) {
            auto& [node, next] = stack.back();
            if (next == 0) order.push_back(node);
            if (next < children_[node].size()) {
                int c = children_[node][next++];
                if (depth_[c] != -1) throw Error(ErrorKind::Format, "cycle in taxonomy");
                depth_[c] = depth_[node] + 1;
                stack.emplace_back(c, 0);
            } else {
                stack.pop_back();
            }
        }
        for (std::size_t i = 0; i < topics_.size(); ++i) {
            if (depth_[i] == -1)
                throw Error(ErrorKind::Format, "topic '" + topics_[i] + "' unreachable from root");
        }
        for (auto it = order.rbegin(); it != order.rend(); ++it) {
            for (int c : children_[*it]) descendants_[*it] += descendants_[c] + 1;
        }
    }

private:
    std::vector<std::string> topics_;
    std::unordered_map<std::string, int> ids_;
    std::vector<int> parent_;
    std::vector<std::vector<int>> children_;
    std::vector<int> depth_;
    std::vector<int> descendants_;
    int root_ = -1;
};

/// One edge per line: `<parent_topic>\t<child_topic>`; the root is the
/// unique parentless topic.
inline Taxonomy load_taxonomy(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Io, "cannot open: " + path);
    Taxonomy tax;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
        auto tab = line.find('\t');
        if (tab == std::string::npos)
            throw Error(ErrorKind::Format,
                        "line " + std::to_string(line_no) + ": expected '<parent>\\t<child>'");
        int p = tax.intern(line.substr(0, tab));
        int c = tax.intern(line.substr(tab + 1));
        tax.add_edge(p, c);
    }
    tax.finalize();
    return tax;
}

inline double information_content(const Taxonomy& tax, int topic) {
    double n = static_cast<double>(tax.size());
    return std::log((tax.descendant_count(topic) + 1) / n) / std::log(1.0 / n);
}

/// Deepest common ancestor, subsumption taken reflexively.
inline int least_common_subsumer(const Taxonomy& tax, int a, int b) {
    while (tax.depth(a) > tax.depth(b)) a = tax.parent(a);
    while (tax.depth(b) > tax.depth(a)) b = tax.parent(b);
    while (a != b) {
        a = tax.parent(a);
        b = tax.parent(b);
    }
    return a;
}

inline double taxonomy_similarity(const Taxonomy& tax, const std::string& t1,
                                  const std::string& t2) {
    int a = tax.topic_id(t1);
    int b = tax.topic_id(t2);
    if (a < 0) throw Error(ErrorKind::Domain, "topic not in taxonomy: '" + t1 + "'");
    if (b < 0) throw Error(ErrorKind::Domain, "topic not in taxonomy: '" + t2 + "'");
    int lcs = least_common_subsumer(tax, a, b);
    double d = information_content(tax, a) + information_content(tax, b) -
               2.0 * information_content(tax, lcs);
    return 1.0 - d / 2.0;
}

}  // namespace kicq
