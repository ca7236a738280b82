#pragma once

// Command-line surface: build/augment/index/query/bench/eval subcommands
// over the library. Kept header-side so tests can drive commands in-process
// and assert byte-identical output.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "kicq/augment.hpp"
#include "kicq/kictree.hpp"
#include "kicq/ranking.hpp"
#include "kicq/synthetic.hpp"
#include "kicq/taxonomy.hpp"

namespace kicq::cli {

struct RunConfig {
    std::string graph_path;
    std::string vertices_path;
    std::string edges_path;
    std::string index_path;
    std::string embeddings_path;
    std::string taxonomy_path;
    std::string results_path;
    std::string out_path;
    std::string query_expr;
    std::string eval_mode;
    int r = 3;
    int k_min = 10;
    double beta = 0.60;
    int m = 10;
    int l = 15;
    std::string algo = "basic";
    std::string format = "text";
    std::string metric = "indirect";
    std::uint64_t seed = 1;
    // bench instance shape
    std::uint32_t bench_vertices = 2000;
    std::uint32_t bench_edges = 8000;
    std::uint32_t bench_keywords = 40;
    std::uint32_t bench_queries = 20;
};

inline int log_level() {
    const char* env = std::getenv("KICQ_LOG");
    if (!env) return 1;
    return std::atoi(env);
}

namespace detail {

inline std::string fixed(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

inline SimilarityMetric metric_of(const std::string& name) {
    if (name == "cosine") return SimilarityMetric::Cosine;
    if (name == "indirect") return SimilarityMetric::IndirectCosine;
    throw Error(ErrorKind::Domain, "unknown metric '" + name + "' (cosine|indirect)");
}

inline Algorithm algorithm_of(const std::string& name) {
    if (name == "basic") return Algorithm::Basic;
    if (name == "pruned") return Algorithm::Pruned;
    if (name == "tree") return Algorithm::Tree;
    throw Error(ErrorKind::Domain, "unknown algorithm '" + name + "' (basic|pruned|tree)");
}

inline std::vector<std::string> sorted_external_ids(const Community& c,
                                                    const AttributedGraph& g) {
    std::vector<std::string> ids;
    ids.reserve(c.members.size());
    for (VertexId v : c.members) ids.push_back(g.external_id(v));
    std::sort(ids.begin(), ids.end());
    return ids;
}

inline std::string join(const std::vector<std::string>& parts, char sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out.push_back(sep);
        out += parts[i];
    }
    return out;
}

inline void print_results(const std::vector<Community>& results, const SearchStats& stats,
                          const AttributedGraph& g, const std::string& format,
                          std::ostream& out) {
    if (format == "records") {
        for (std::size_t i = 0; i < results.size(); ++i) {
            const Community& c = results[i];
            out << "community\t" << (i + 1) << '\t' << fixed(c.score, 9) << '\t' << c.k << '\t'
                << c.members.size() << '\t' << join(sorted_external_ids(c, g), ',') << '\n';
        }
        out << "stats\t" << stats.subgraphs_explored << '\t' << stats.core_decompositions << '\t'
            << stats.components_scored << '\t' << stats.prunes_by_bound << '\t'
            << stats.prunes_by_mindeg << '\t' << stats.tree_nodes_visited << '\t'
            << stats.tree_nodes_pruned << '\n';
        return;
    }
    out << results.size() << (results.size() == 1 ? " community\n" : " communities\n");
    for (std::size_t i = 0; i < results.size(); ++i) {
        const Community& c = results[i];
        out << '#' << (i + 1) << " score=" << fixed(c.score, 9) << " k=" << c.k
            << " size=" << c.members.size() << " members: "
            << join(sorted_external_ids(c, g), ',') << '\n';
    }
    out << "stats: subgraphs_explored=" << stats.subgraphs_explored
        << " core_decompositions=" << stats.core_decompositions
        << " components_scored=" << stats.components_scored
        << " prunes_by_bound=" << stats.prunes_by_bound
        << " prunes_by_mindeg=" << stats.prunes_by_mindeg
        << " tree_nodes_visited=" << stats.tree_nodes_visited
        << " tree_nodes_pruned=" << stats.tree_nodes_pruned << '\n';
}

inline std::uint64_t fnv1a(std::uint64_t h, const void* data, std::size_t n) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ull;
    }
    return h;
}

inline std::uint64_t hash_results(std::uint64_t h, const std::vector<Community>& results) {
    for (const Community& c : results) {
        h = fnv1a(h, c.members.data(), c.members.size() * sizeof(VertexId));
        h = fnv1a(h, &c.k, sizeof c.k);
        h = fnv1a(h, &c.score, sizeof c.score);
    }
    return h;
}

inline std::vector<std::vector<VertexId>> parse_result_members(const std::string& path,
                                                               const AttributedGraph& g) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Io, "cannot open: " + path);
    std::vector<std::vector<VertexId>> communities;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.rfind("community\t", 0) != 0) continue;
        auto last_tab = line.rfind('\t');
        std::string members = line.substr(last_tab + 1);
        std::vector<VertexId> ids;
        std::stringstream ss(members);
        std::string ext;
        while (std::getline(ss, ext, ',')) {
            VertexId v = g.vertex_of(ext);
            if (v == kInvalidId)
                throw Error(ErrorKind::Format, "line " + std::to_string(line_no) +
                                                   ": unknown member '" + ext + "'");
            ids.push_back(v);
        }
        if (ids.empty())
            throw Error(ErrorKind::Format,
                        "line " + std::to_string(line_no) + ": empty community record");
        std::sort(ids.begin(), ids.end());
        communities.push_back(std::move(ids));
    }
    if (communities.empty())
        throw Error(ErrorKind::Format, "no community records in " + path);
    return communities;
}

// --- subcommand bodies ---

inline int cmd_build(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    LoadStats stats;
    AttributedGraph g = load_graph(cfg.vertices_path, cfg.edges_path, &stats);
    save_graph(g, cfg.out_path);
    out << g.vertex_count() << " vertices, " << g.edge_count() << " edges, "
        << g.keyword_count() << " keywords\n";
    if (log_level() >= 1 && (stats.self_loops_dropped || stats.duplicate_edges_dropped))
        err << "warning: dropped " << stats.self_loops_dropped << " self-loops, "
            << stats.duplicate_edges_dropped << " duplicate edges\n";
    return 0;
}

inline int cmd_augment(const RunConfig& cfg, std::ostream& out, std::ostream&) {
    AttributedGraph g = load_graph_binary(cfg.graph_path);
    SimilarityModel model = load_embeddings(cfg.embeddings_path, cfg.l, metric_of(cfg.metric));
    ExtendStats stats;
    AttributedGraph extended = extend_graph_keywords(g, model, cfg.m, &stats);
    save_graph(extended, cfg.out_path);
    out << "added " << stats.placements_added << " keyword placements, skipped "
        << stats.keywords_skipped << " keywords\n";
    return 0;
}

inline int cmd_index(const RunConfig& cfg, std::ostream& out, std::ostream&) {
    AttributedGraph g = load_graph_binary(cfg.graph_path);
    KicTree tree = build_kic_tree(g);
    auto bytes = serialize_tree(tree);
    binio::write_file(cfg.out_path, bytes);
    out << tree.size() << " nodes, depth " << tree.depth() << ", " << bytes.size()
        << " bytes\n";
    return 0;
}

inline int cmd_query(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    AttributedGraph g = load_graph_binary(cfg.graph_path);
    auto [terms, predicate] = parse_query_expression(cfg.query_expr);

    SimilarityModel model;
    bool have_model = false;
    if (!cfg.embeddings_path.empty()) {
        model = load_embeddings(cfg.embeddings_path, cfg.l, metric_of(cfg.metric));
        have_model = true;
    }
    KicQuery q = formulate_query(terms, predicate, cfg.r, cfg.k_min, cfg.beta,
                                 have_model ? &model : nullptr, g, cfg.m);

    Algorithm algo = algorithm_of(cfg.algo);
    KicTree tree;
    if (algo == Algorithm::Tree) {
        if (cfg.index_path.empty())
            throw Error(ErrorKind::Domain, "tree algorithm requires --index");
        tree = load_tree(cfg.index_path);
    }

    InvertedIndex idx = build_inverted_index(g);
    SearchStats stats;
    auto results = run_query(g, idx, q, algo, algo == Algorithm::Tree ? &tree : nullptr, &stats);
    if (log_level() >= 2) err << "query matched " << results.size() << " communities\n";
    print_results(results, stats, g, cfg.format, out);
    return 0;
}

inline int cmd_bench(const RunConfig& cfg, std::ostream& out, std::ostream&) {
    SyntheticConfig sc;
    sc.vertices = cfg.bench_vertices;
    sc.target_edges = cfg.bench_edges;
    sc.keyword_count = cfg.bench_keywords;
    sc.seed = cfg.seed;
    AttributedGraph g = generate_graph(sc);
    InvertedIndex idx = build_inverted_index(g);
    KicTree tree = build_kic_tree(g);

    // seeded workload over the synthetic keyword universe
    std::mt19937_64 rng(cfg.seed ^ 0x9e3779b97f4a7c15ull);
    std::vector<KicQuery> workload;
    for (std::uint32_t i = 0; i < cfg.bench_queries; ++i) {
        KicQuery q;
        q.predicate = (i % 3 == 0) ? Predicate::And : Predicate::Or;
        q.r = cfg.r;
        q.k_min = cfg.k_min;
        q.beta = cfg.beta;
        std::size_t n_terms = 1 + rng() % 2;
        for (std::size_t t = 0; t < n_terms; ++t) {
            std::size_t set_size = 1 + rng() % 3;
            std::vector<KeywordId> set;
            for (std::size_t s = 0; s < set_size; ++s)
                set.push_back(static_cast<KeywordId>(rng() % sc.keyword_count));
            std::sort(set.begin(), set.end());
            set.erase(std::unique(set.begin(), set.end()), set.end());
            q.term_sets.push_back(std::move(set));
        }
        workload.push_back(std::move(q));
    }

    const char* names[] = {"basic", "pruned", "tree"};
    const Algorithm algos[] = {Algorithm::Basic, Algorithm::Pruned, Algorithm::Tree};
    for (int a = 0; a < 3; ++a) {
        SearchStats total;
        std::uint64_t hash = 0xcbf29ce484222325ull;
        auto t0 = std::chrono::steady_clock::now();
        for (const KicQuery& q : workload) {
            SearchStats st;
            auto results = run_query(g, idx, q, algos[a],
                                     algos[a] == Algorithm::Tree ? &tree : nullptr, &st);
            hash = hash_results(hash, results);
            total.subgraphs_explored += st.subgraphs_explored;
            total.core_decompositions += st.core_decompositions;
            total.components_scored += st.components_scored;
            total.prunes_by_bound += st.prunes_by_bound;
            total.prunes_by_mindeg += st.prunes_by_mindeg;
            total.tree_nodes_visited += st.tree_nodes_visited;
            total.tree_nodes_pruned += st.tree_nodes_pruned;
        }
        auto t1 = std::chrono::steady_clock::now();
        auto us = std::chrono::duration_cast<std::chrono::microseconds>(t1 - t0).count();
        char hashbuf[32];
        std::snprintf(hashbuf, sizeof hashbuf, "%016llx",
                      static_cast<unsigned long long>(hash));
        if (cfg.format == "records") {
            out << "bench\t" << names[a] << '\t' << workload.size() << '\t' << hashbuf << '\t'
                << total.subgraphs_explored << '\t' << total.core_decompositions << '\t'
                << total.components_scored << '\t' << total.prunes_by_bound << '\t'
                << total.prunes_by_mindeg << '\t' << total.tree_nodes_visited << '\t'
                << total.tree_nodes_pruned << '\n';
        } else {
            out << names[a] << ": " << workload.size() << " queries, mean "
                << (workload.empty() ? 0 : us / static_cast<long long>(workload.size()))
                << " us, hash " << hashbuf << ", subgraphs_explored="
                << total.subgraphs_explored << " prunes_by_bound=" << total.prunes_by_bound
                << " prunes_by_mindeg=" << total.prunes_by_mindeg
                << " tree_nodes_visited=" << total.tree_nodes_visited
                << " tree_nodes_pruned=" << total.tree_nodes_pruned << '\n';
        }
    }
    return 0;
}

inline std::vector<std::string> split_csv(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        auto t = lowercase_trim(tok);
        if (!t.empty()) out.push_back(t);
    }
    return out;
}

inline int cmd_eval(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    if (cfg.eval_mode == "ndcg") {
        if (cfg.taxonomy_path.empty() || cfg.embeddings_path.empty())
            throw Error(ErrorKind::Domain, "eval ndcg requires --taxonomy and --embeddings");
        Taxonomy tax = load_taxonomy(cfg.taxonomy_path);
        SimilarityModel model = load_embeddings(cfg.embeddings_path, cfg.l, metric_of(cfg.metric));
        std::vector<std::string> topics;
        std::size_t skipped = 0;
        for (std::size_t i = 0; i < tax.size(); ++i) {
            try {
                (void)term_vector(model, tax.topic(static_cast<int>(i)));
                topics.push_back(tax.topic(static_cast<int>(i)));
            } catch (const Error&) {
                ++skipped;
            }
        }
        if (topics.size() < 2) throw Error(ErrorKind::Domain, "too few resolvable topics");
        double total = 0;
        for (const auto& t : topics) {
            std::vector<std::string> candidates;
            for (const auto& c : topics)
                if (c != t) candidates.push_back(c);
            auto ranked_scored = top_m_similar(model, t, candidates, cfg.m);
            std::vector<std::string> ranked;
            for (const auto& [c, s] : ranked_scored) ranked.push_back(c);
            std::unordered_map<std::string, double> relevance;
            for (const auto& c : candidates) relevance[c] = taxonomy_similarity(tax, t, c);
            total += ndcg_at_m(ranked, relevance, cfg.m);
        }
        double mean = total / static_cast<double>(topics.size());
        out << "ndcg@" << cfg.m << '\t' << fixed(mean, 9) << "\ttopics\t" << topics.size()
            << "\tskipped\t" << skipped << '\n';
        return 0;
    }
    if (cfg.eval_mode == "coherence" || cfg.eval_mode == "db") {
        if (cfg.embeddings_path.empty() || cfg.query_expr.empty())
            throw Error(ErrorKind::Domain,
                        "eval " + cfg.eval_mode + " requires --embeddings and --query");
        SimilarityModel model = load_embeddings(cfg.embeddings_path, cfg.l, metric_of(cfg.metric));
        auto terms = split_csv(cfg.query_expr);
        if (terms.empty()) throw Error(ErrorKind::Domain, "no terms in --query");
        if (cfg.eval_mode == "coherence") {
            double total = 0;
            for (const auto& t : terms) {
                double wc = word_coherence(model, t, cfg.l);
                out << "coherence\t" << t << '\t' << fixed(wc, 9) << '\n';
                total += wc;
            }
            out << "mean\t" << fixed(total / static_cast<double>(terms.size()), 9) << '\n';
        } else {
            out << "davies_bouldin\t" << fixed(davies_bouldin(model, terms, cfg.l), 9) << '\n';
        }
        return 0;
    }
    if (cfg.eval_mode == "cpj" || cfg.eval_mode == "structure") {
        if (cfg.graph_path.empty() || cfg.results_path.empty())
            throw Error(ErrorKind::Domain,
                        "eval " + cfg.eval_mode + " requires --graph and --results");
        AttributedGraph g = load_graph_binary(cfg.graph_path);
        auto communities = parse_result_members(cfg.results_path, g);
        if (cfg.eval_mode == "cpj") {
            out << "cpj\t" << fixed(cpj(communities, g), 9) << '\n';
            return 0;
        }
        double d = 0, ad = 0, cc = 0, dia = 0;
        for (std::size_t i = 0; i < communities.size(); ++i) {
            StructuralMetrics sm = structural_metrics(communities[i], g);
            out << "structure\t" << (i + 1) << '\t' << fixed(sm.density, 9) << '\t'
                << fixed(sm.average_degree, 9) << '\t' << fixed(sm.clustering_coefficient, 9)
                << '\t' << sm.diameter << '\n';
            d += sm.density;
            ad += sm.average_degree;
            cc += sm.clustering_coefficient;
            dia += sm.diameter;
        }
        auto n = static_cast<double>(communities.size());
        out << "mean\t" << fixed(d / n, 9) << '\t' << fixed(ad / n, 9) << '\t'
            << fixed(cc / n, 9) << '\t' << fixed(dia / n, 9) << '\n';
        return 0;
    }
    err << "unknown eval mode '" << cfg.eval_mode << "'\n";
    return 2;
}

}  // namespace detail

/// Parse and dispatch. Returns the process exit code: 0 success (including
/// empty results), 2 input error, 3 internal invariant violation.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    CLI::App app{"keyword-aware influential community search"};
    app.require_subcommand(1);

    auto add_common = [&cfg](CLI::App* sub) {
        sub->add_option("--format", cfg.format, "output format (text|records)");
        sub->add_option("--seed", cfg.seed, "random seed");
    };

    CLI::App* build = app.add_subcommand("build", "ingest a text graph into the binary container");
    build->add_option("--vertices", cfg.vertices_path, "vertices file")->required();
    build->add_option("--edges", cfg.edges_path, "edges file")->required();
    build->add_option("--out", cfg.out_path, "output graph container")->required();
    add_common(build);

    CLI::App* augment = app.add_subcommand("augment", "extend graph keywords semantically");
    augment->add_option("--graph", cfg.graph_path, "graph container")->required();
    augment->add_option("--embeddings", cfg.embeddings_path, "embedding vectors")->required();
    augment->add_option("--m", cfg.m, "expansion size M");
    augment->add_option("--l", cfg.l, "neighborhood size L");
    augment->add_option("--metric", cfg.metric, "similarity metric (cosine|indirect)");
    augment->add_option("--out", cfg.out_path, "output graph container")->required();
    add_common(augment);

    CLI::App* index = app.add_subcommand("index", "build the core-component index");
    index->add_option("--graph", cfg.graph_path, "graph container")->required();
    index->add_option("--out", cfg.out_path, "output index file")->required();
    add_common(index);

    CLI::App* query = app.add_subcommand("query", "run a top-r community query");
    query->add_option("--graph", cfg.graph_path, "graph container")->required();
    query->add_option("--query", cfg.query_expr, "query expression, e.g. 'ml OR db'")->required();
    query->add_option("--r", cfg.r, "number of communities");
    query->add_option("--kmin", cfg.k_min, "minimum cohesion factor");
    query->add_option("--beta", cfg.beta, "cohesiveness weight");
    query->add_option("--m", cfg.m, "term expansion size M");
    query->add_option("--l", cfg.l, "neighborhood size L");
    query->add_option("--algo", cfg.algo, "search algorithm (basic|pruned|tree)");
    query->add_option("--index", cfg.index_path, "index file (tree algorithm)");
    query->add_option("--embeddings", cfg.embeddings_path, "embedding vectors");
    query->add_option("--metric", cfg.metric, "similarity metric (cosine|indirect)");
    add_common(query);

    CLI::App* bench = app.add_subcommand("bench", "synthetic workload across the algorithms");
    bench->add_option("--r", cfg.r, "number of communities");
    bench->add_option("--kmin", cfg.k_min, "minimum cohesion factor");
    bench->add_option("--beta", cfg.beta, "cohesiveness weight");
    bench->add_option("--bench-vertices", cfg.bench_vertices, "instance vertices");
    bench->add_option("--bench-edges", cfg.bench_edges, "instance target edges");
    bench->add_option("--bench-keywords", cfg.bench_keywords, "instance keyword count");
    bench->add_option("--bench-queries", cfg.bench_queries, "workload size");
    add_common(bench);

    CLI::App* eval = app.add_subcommand("eval", "evaluation metrics");
    eval->add_option("mode", cfg.eval_mode, "ndcg|coherence|db|cpj|structure")->required();
    eval->add_option("--graph", cfg.graph_path, "graph container");
    eval->add_option("--results", cfg.results_path, "query records output file");
    eval->add_option("--embeddings", cfg.embeddings_path, "embedding vectors");
    eval->add_option("--taxonomy", cfg.taxonomy_path, "taxonomy edges file");
    eval->add_option("--query", cfg.query_expr, "comma-separated terms");
    eval->add_option("--m", cfg.m, "ranking cutoff M");
    eval->add_option("--l", cfg.l, "neighborhood size L");
    eval->add_option("--metric", cfg.metric, "similarity metric (cosine|indirect)");
    add_common(eval);

    std::reverse(args.begin(), args.end());
    try {
        app.parse(std::move(args));
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (build->parsed()) return detail::cmd_build(cfg, out, err);
        if (augment->parsed()) return detail::cmd_augment(cfg, out, err);
        if (index->parsed()) return detail::cmd_index(cfg, out, err);
        if (query->parsed()) return detail::cmd_query(cfg, out, err);
        if (bench->parsed()) return detail::cmd_bench(cfg, out, err);
        if (eval->parsed()) return detail::cmd_eval(cfg, out, err);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return e.kind() == ErrorKind::Internal ? 3 : 2;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return 3;
    }
    err << "no subcommand given\n";
    return 2;
}

}  // namespace kicq::cli
