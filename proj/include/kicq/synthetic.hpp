#pragma once

// Seeded synthetic attributed graphs for the benchmark harness and tests:
// configuration-model edges from a power-law degree sequence, Zipf keyword
// assignment, uniform or Beta influence scores.

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "kicq/graph.hpp"
#include "kicq/types.hpp"

namespace kicq {

struct SyntheticConfig {
    std::uint32_t vertices = 1000;
    std::uint32_t target_edges = 4000;
    double degree_exponent = 2.5;  // power-law tail of the degree sequence
    std::uint32_t keyword_count = 50;
    double zipf_skew = 1.2;            // keyword popularity skew
    std::uint32_t max_keywords_per_vertex = 4;
    bool beta_influence = false;  // uniform (0,1] by default
    double beta_a = 2.0;
    double beta_b = 5.0;
    std::uint64_t seed = 1;
};

namespace detail {

inline double unit_open(std::mt19937_64& rng) {
    // uniform in (0,1]
    return (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53;
}

}  // namespace detail

inline AttributedGraph generate_graph(const SyntheticConfig& cfg) {
    std::mt19937_64 rng(cfg.seed);
    AttributedGraph g;
    for (std::uint32_t v = 0; v < cfg.vertices; ++v) g.add_vertex("v" + std::to_string(v));
    for (std::uint32_t w = 0; w < cfg.keyword_count; ++w)
        g.intern_keyword("kw" + std::to_string(w));

    if (cfg.vertices > 1 && cfg.target_edges > 0) {
        // degree stubs: d = floor(u^(-1/(gamma-1))), capped, scaled toward
        // the requested edge count
        std::vector<std::uint32_t> stubs;
        double inv = 1.0 / std::max(0.1, cfg.degree_exponent - 1.0);
        std::vector<double> weight(cfg.vertices);
        double total = 0;
        for (std::uint32_t v = 0; v < cfg.vertices; ++v) {
            weight[v] = std::pow(detail::unit_open(rng), -inv);
            weight[v] = std::min(weight[v], static_cast<double>(cfg.vertices) / 4.0 + 1.0);
            total += weight[v];
        }
        double scale = 2.0 * static_cast<double>(cfg.target_edges) / total;
        for (std::uint32_t v = 0; v < cfg.vertices; ++v) {
            auto d = static_cast<std::uint32_t>(weight[v] * scale + 0.5);
            for (std::uint32_t i = 0; i < d; ++i) stubs.push_back(v);
        }
        if (stubs.size() % 2) stubs.pop_back();
        std::shuffle(stubs.begin(), stubs.end(), rng);
        std::vector<std::pair<VertexId, VertexId>> edges;
        edges.reserve(stubs.size() / 2);
        for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
            VertexId a = stubs[i], b = stubs[i + 1];
            if (a == b) continue;
            edges.emplace_back(std::min(a, b), std::max(a, b));
        }
        std::sort(edges.begin(), edges.end());
        edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
        for (const auto& [a, b] : edges) g.add_edge_unchecked(a, b);
    }
    g.finalize_edges();

    // Zipf cdf over keyword ranks
    std::vector<double> cdf(cfg.keyword_count);
    double z = 0;
    for (std::uint32_t i = 0; i < cfg.keyword_count; ++i) {
        z += 1.0 / std::pow(static_cast<double>(i + 1), cfg.zipf_skew);
        cdf[i] = z;
    }
    for (double& c : cdf) c /= z;

    std::gamma_distribution<double> ga(cfg.beta_a, 1.0), gb(cfg.beta_b, 1.0);
    for (std::uint32_t v = 0; v < cfg.vertices && cfg.keyword_count > 0; ++v) {
        std::uint32_t count = 1 + static_cast<std::uint32_t>(rng() % cfg.max_keywords_per_vertex);
        for (std::uint32_t i = 0; i < count; ++i) {
            double u = detail::unit_open(rng);
            auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
            auto w = static_cast<KeywordId>(it - cdf.begin());
            if (w >= cfg.keyword_count) w = cfg.keyword_count - 1;
            double score;
            if (cfg.beta_influence) {
                double x = ga(rng), y = gb(rng);
                score = x / (x + y);
                if (score <= 0.0) score = 1e-9;
                if (score > 1.0) score = 1.0;
            } else {
                score = detail::unit_open(rng);
            }
            g.set_influence_max(v, w, score);
        }
    }
    return g;
}

}  // namespace kicq
