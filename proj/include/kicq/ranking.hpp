#pragma once

// NDCG@M for evaluating keyword rankers against a relevance ground truth.

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_map>
#include <vector>

#include "kicq/types.hpp"

namespace kicq {

/// Gain at rank i (1-based) contributes g_i / log2(i+1); normalized by the
/// ideal DCG over every entity in the relevance map. Entities missing from
/// the map gain 0. Returns 0 when the ideal DCG is 0.
inline double ndcg_at_m(const std::vector<std::string>& ranked,
                        const std::unordered_map<std::string, double>& relevance, int m) {
    if (m < 1) throw Error(ErrorKind::Domain, "NDCG cutoff must be >= 1");
    auto discount = [](std::size_t rank1) { return std::log2(static_cast<double>(rank1 + 1)); };
    double dcg = 0;
    std::size_t upto = std::min<std::size_t>(ranked.size(), static_cast<std::size_t>(m));
    for (std::size_t i = 0; i < upto; ++i) {
        auto it = relevance.find(ranked[i]);
        if (it != relevance.end()) dcg += it->second / discount(i + 1);
    }
    std::vector<double> gains;
    gains.reserve(relevance.size());
    for (const auto& [e, g] : relevance) gains.push_back(g);
    std::sort(gains.begin(), gains.end(), std::greater<>());
    double idcg = 0;
    upto = std::min<std::size_t>(gains.size(), static_cast<std::size_t>(m));
    for (std::size_t i = 0; i < upto; ++i) idcg += gains[i] / discount(i + 1);
    return idcg == 0.0 ? 0.0 : dcg / idcg;
}

}  // namespace kicq
