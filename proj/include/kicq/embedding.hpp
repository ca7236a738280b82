#pragma once

// Word-embedding similarity model: term vectors (mean of constituent word
// vectors), cosine and indirect-cosine similarity, top-M keyword ranking,
// and the neighborhood quality measures (word coherence, Davies-Bouldin).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "kicq/types.hpp"

namespace kicq {

enum class SimilarityMetric { Cosine, IndirectCosine };

class SimilarityModel {
public:
    SimilarityModel() = default;

    SimilarityModel(std::size_t dimension, int top_l, SimilarityMetric metric)
        : dim_(dimension), top_l_(top_l), metric_(metric) {
        if (dimension == 0) throw Error(ErrorKind::Domain, "embedding dimension must be positive");
        if (top_l < 1) throw Error(ErrorKind::Domain, "L must be >= 1");
    }

    void add_word(const std::string& word, const std::vector<double>& vec) {
        if (vec.size() != dim_) throw Error(ErrorKind::Format, "vector dimension mismatch for '" + word + "'");
        auto [it, fresh] = index_.try_emplace(word, words_.size());
        if (!fresh) throw Error(ErrorKind::Format, "duplicate word '" + word + "'");
        words_.push_back(word);
        data_.insert(data_.end(), vec.begin(), vec.end());
        double n2 = 0;
        for (double x : vec) n2 += x * x;
        norms_.push_back(std::sqrt(n2));
    }

    std::size_t size() const { return words_.size(); }
    std::size_t dimension() const { return dim_; }
    int top_l() const { return top_l_; }
    SimilarityMetric metric() const { return metric_; }
    const std::string& word(std::size_t i) const { return words_[i]; }
    double norm(std::size_t i) const { return norms_[i]; }

    const double* vec(std::size_t i) const { return data_.data() + i * dim_; }

    bool contains(const std::string& word) const { return index_.count(word) != 0; }

    std::size_t word_index(const std::string& word) const {
        auto it = index_.find(word);
        return it == index_.end() ? npos : it->second;
    }

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

private:
    std::size_t dim_ = 0;
    int top_l_ = 15;
    SimilarityMetric metric_ = SimilarityMetric::IndirectCosine;
    std::vector<std::string> words_;
    std::unordered_map<std::string, std::size_t> index_;
    std::vector<double> data_;   // row-major
    std::vector<double> norms_;
};

/// Text format: first line `<vocab_size> <dimension>`, then one word per
/// line: `<word> <f1> ... <fd>`.
inline SimilarityModel load_embeddings(const std::string& path, int top_l = 15,
                                       SimilarityMetric metric = SimilarityMetric::IndirectCosine) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Io, "cannot open: " + path);
    std::size_t vocab = 0, dim = 0;
    if (!(in >> vocab >> dim) || dim == 0)
        throw Error(ErrorKind::Format, "bad embedding header in " + path);
    SimilarityModel model(dim, top_l, metric);
    std::string word;
    std::vector<double> vec(dim);
    for (std::size_t i = 0; i < vocab; ++i) {
        if (!(in >> word)) throw Error(ErrorKind::Format, "truncated embedding file: " + path);
        for (std::size_t j = 0; j < dim; ++j) {
            if (!(in >> vec[j]))
                throw Error(ErrorKind::Format, "truncated vector for '" + word + "' in " + path);
        }
        model.add_word(lowercase_trim(word), vec);
    }
    return model;
}

namespace detail {

inline std::vector<std::string> split_words(const std::string& term) {
    std::vector<std::string> out;
    std::stringstream ss(lowercase_trim(term));
    std::string w;
    while (ss >> w) out.push_back(w);
    return out;
}

inline double dot(const double* a, const double* b, std::size_t n) {
    double s = 0;
    for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
}

}  // namespace detail

/// Element-wise mean of the in-vocabulary constituent word vectors.
/// Out-of-vocabulary words inside a multi-word term are skipped; the term is
/// unknown only when every word is.
inline std::vector<double> term_vector(const SimilarityModel& m, const std::string& term) {
    auto words = detail::split_words(term);
    std::vector<double> acc(m.dimension(), 0.0);
    std::size_t hits = 0;
    for (const auto& w : words) {
        std::size_t i = m.word_index(w);
        if (i == SimilarityModel::npos) continue;
        const double* v = m.vec(i);
        for (std::size_t j = 0; j < m.dimension(); ++j) acc[j] += v[j];
        ++hits;
    }
    if (hits == 0) throw Error(ErrorKind::Domain, "unknown term '" + term + "'");
    for (double& x : acc) x /= static_cast<double>(hits);
    return acc;
}

inline double cosine(const std::vector<double>& a, const std::vector<double>& b) {
    double na = std::sqrt(detail::dot(a.data(), a.data(), a.size()));
    double nb = std::sqrt(detail::dot(b.data(), b.data(), b.size()));
    if (na == 0.0 || nb == 0.0) throw Error(ErrorKind::Domain, "degenerate vector (zero norm)");
    return detail::dot(a.data(), b.data(), a.size()) / (na * nb);
}

inline double cosine_similarity(const SimilarityModel& m, const std::string& t1,
                                const std::string& t2) {
    return cosine(term_vector(m, t1), term_vector(m, t2));
}

/// V^t: the L vocabulary words most cosine-similar to the term's vector,
/// with their similarity scores. The term's own constituent words are
/// excluded. Ties: similarity descending, then word ascending.
inline std::vector<std::pair<std::size_t, double>> top_l_neighbors(const SimilarityModel& m,
                                                                   const std::string& term,
                                                                   int l) {
    auto tv = term_vector(m, term);
    double tn = std::sqrt(detail::dot(tv.data(), tv.data(), tv.size()));
    if (tn == 0.0) throw Error(ErrorKind::Domain, "degenerate vector (zero norm)");
    auto constituents = detail::split_words(term);
    std::vector<std::pair<std::size_t, double>> sims;
    sims.reserve(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (m.norm(i) == 0.0) continue;
        if (std::find(constituents.begin(), constituents.end(), m.word(i)) != constituents.end())
            continue;
        double s = detail::dot(tv.data(), m.vec(i), m.dimension()) / (tn * m.norm(i));
        sims.emplace_back(i, s);
    }
    auto better = [&m](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return m.word(a.first) < m.word(b.first);
    };
    std::size_t keep = std::min<std::size_t>(static_cast<std::size_t>(l), sims.size());
    std::partial_sort(sims.begin(), sims.begin() + keep, sims.end(), better);
    sims.resize(keep);
    return sims;
}

/// Cosine over the shared-vocabulary similarity vectors SV^t1, SV^t2 built
/// from the top-L neighborhoods of each term (absent words score 0).
inline double indirect_cosine_similarity(const SimilarityModel& m, const std::string& t1,
                                         const std::string& t2) {
    auto v1 = top_l_neighbors(m, t1, m.top_l());
    auto v2 = top_l_neighbors(m, t2, m.top_l());
    std::vector<std::size_t> universe;
    universe.reserve(v1.size() + v2.size());
    for (const auto& [w, s] : v1) universe.push_back(w);
    for (const auto& [w, s] : v2) universe.push_back(w);
    std::sort(universe.begin(), universe.end());
    universe.erase(std::unique(universe.begin(), universe.end()), universe.end());

    auto score_of = [](const std::vector<std::pair<std::size_t, double>>& v, std::size_t w) {
        for (const auto& [wi, s] : v)
            if (wi == w) return s;
        return 0.0;
    };
    std::vector<double> sv1, sv2;
    sv1.reserve(universe.size());
    sv2.reserve(universe.size());
    for (std::size_t w : universe) {
        sv1.push_back(score_of(v1, w));
        sv2.push_back(score_of(v2, w));
    }
    double n1 = std::sqrt(detail::dot(sv1.data(), sv1.data(), sv1.size()));
    double n2 = std::sqrt(detail::dot(sv2.data(), sv2.data(), sv2.size()));
    if (n1 == 0.0 || n2 == 0.0)
        throw Error(ErrorKind::Domain, "degenerate neighborhood vector (zero norm)");
    return detail::dot(sv1.data(), sv2.data(), sv1.size()) / (n1 * n2);
}

inline double similarity(const SimilarityModel& m, const std::string& t1, const std::string& t2) {
    return m.metric() == SimilarityMetric::Cosine ? cosine_similarity(m, t1, t2)
                                                  : indirect_cosine_similarity(m, t1, t2);
}

/// Top-M keywords of the universe by similarity to the term, descending,
/// ties broken by ascending keyword order. Universe keywords that resolve to
/// no vocabulary word are skipped.
inline std::vector<std::pair<std::string, double>> top_m_similar(
    const SimilarityModel& m, const std::string& term, const std::vector<std::string>& universe,
    int top_m) {
    if (top_m < 0) throw Error(ErrorKind::Domain, "M must be >= 0");
    (void)term_vector(m, term);  // unknown term propagates, unknown universe keywords do not
    std::vector<std::pair<std::string, double>> scored;
    scored.reserve(universe.size());
    for (const auto& kw : universe) {
        try {
            scored.emplace_back(kw, similarity(m, term, kw));
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::Domain) throw;
            // unresolvable universe keyword: cannot rank it
        }
    }
    auto better = [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    };
    std::sort(scored.begin(), scored.end(), better);
    if (scored.size() > static_cast<std::size_t>(top_m)) scored.resize(top_m);
    return scored;
}

/// Mean pairwise cosine over the term's top-L neighbor words.
inline double word_coherence(const SimilarityModel& m, const std::string& term, int l) {
    if (l < 2) throw Error(ErrorKind::Domain, "insufficient words for coherence (L < 2)");
    auto top = top_l_neighbors(m, term, l);
    if (top.size() < 2) throw Error(ErrorKind::Domain, "insufficient words for coherence");
    double sum = 0;
    std::size_t pairs = 0;
    for (std::size_t i = 0; i < top.size(); ++i) {
        for (std::size_t j = i + 1; j < top.size(); ++j) {
            std::size_t a = top[i].first, b = top[j].first;
            sum += detail::dot(m.vec(a), m.vec(b), m.dimension()) / (m.norm(a) * m.norm(b));
            ++pairs;
        }
    }
    return sum / static_cast<double>(pairs);
}

/// Davies-Bouldin index over term clusters: each term's cluster is its
/// top-L neighbor words, centroid is the term vector, distances Euclidean.
/// Lower is better.
inline double davies_bouldin(const SimilarityModel& m, const std::vector<std::string>& terms,
                             int l) {
    if (terms.size() < 2) throw Error(ErrorKind::Domain, "davies_bouldin needs >= 2 terms");
    std::size_t n = terms.size();
    std::vector<std::vector<double>> centroids(n);
    std::vector<double> scatter(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        centroids[i] = term_vector(m, terms[i]);
        auto top = top_l_neighbors(m, terms[i], l);
        if (top.empty()) throw Error(ErrorKind::Domain, "no neighbor words for '" + terms[i] + "'");
        double sum = 0;
        for (const auto& [w, s] : top) {
            double d2 = 0;
            const double* wv = m.vec(w);
            for (std::size_t j = 0; j < m.dimension(); ++j) {
                double diff = wv[j] - centroids[i][j];
                d2 += diff * diff;
            }
            sum += std::sqrt(d2);
        }
        scatter[i] = sum / static_cast<double>(top.size());
    }
    double acc = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double worst = 0;
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            double d2 = 0;
            for (std::size_t c = 0; c < m.dimension(); ++c) {
                double diff = centroids[i][c] - centroids[j][c];
                d2 += diff * diff;
            }
            double dist = std::sqrt(d2);
            if (dist == 0.0) throw Error(ErrorKind::Domain, "degenerate clustering (coincident centroids)");
            worst = std::max(worst, (scatter[i] + scatter[j]) / dist);
        }
        acc += worst;
    }
    return acc / static_cast<double>(n);
}

}  // namespace kicq
