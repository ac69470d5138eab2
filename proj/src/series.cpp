#include "erd/series.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "erd/errors.hpp"

namespace erd {

void SeriesConfig::validate() const {
    if (posts_per_interval < 1) throw ValidationError("n (posts per interval) must be >= 1");
    if (min_series_len < 2) throw ValidationError("min (minimum series length) must be >= 2");
    if (vocab_k < 1) throw ValidationError("k (vocabulary size) must be >= 1");
}

void Vocabulary::rebuild_index() {
    index.clear();
    index.reserve(terms.size());
    for (std::size_t i = 0; i < terms.size(); ++i) index.emplace(terms[i], i);
}

std::vector<std::string> tokenize(const std::string& text) {
    std::vector<std::string> tokens;
    std::string cur;
    for (unsigned char c : text) {
        if (std::isalnum(c) || c >= 0x80) {
            cur += static_cast<char>(std::tolower(c));
        } else if (!cur.empty()) {
            tokens.push_back(std::move(cur));
            cur.clear();
        }
    }
    if (!cur.empty()) tokens.push_back(std::move(cur));
    return tokens;
}

PostSeries build_series(const Event& e, const SeriesConfig& cfg) {
    cfg.validate();
    const std::size_t n = e.posts.size();
    const std::size_t N = cfg.posts_per_interval;
    const std::size_t Min = cfg.min_series_len;
    if (n < Min)
        throw ValidationError("event '" + e.id + "' too short: " + std::to_string(n) +
                              " posts, need at least " + std::to_string(Min));

    PostSeries s;
    s.event_id = e.id;
    std::size_t next = 0;
    auto push_interval = [&](std::size_t count) {
        std::vector<std::size_t> iv(count);
        for (std::size_t i = 0; i < count; ++i) iv[i] = next + i;
        next += count;
        s.intervals.push_back(std::move(iv));
    };

    if (n >= N * Min) {
        const std::size_t full = n / N;
        for (std::size_t v = 0; v < full; ++v) push_interval(N);
        if (n % N != 0) push_interval(n % N);  // empty trailing interval is dropped
    } else {
        const std::size_t m = n / Min;
        for (std::size_t v = 0; v + 1 < Min; ++v) push_interval(m);
        push_interval(n - m * (Min - 1));
    }
    return s;
}

PostSeries build_singleton_series(const Event& e) {
    PostSeries s;
    s.event_id = e.id;
    s.intervals.resize(e.posts.size());
    for (std::size_t i = 0; i < e.posts.size(); ++i) s.intervals[i] = {i};
    return s;
}

Vocabulary build_vocab(const std::vector<Event>& training_events, const SeriesConfig& cfg) {
    cfg.validate();
    struct TermStat {
        std::size_t count = 0;
        std::size_t doc_freq = 0;
        std::size_t last_doc = static_cast<std::size_t>(-1);
    };
    std::unordered_map<std::string, TermStat> stats;
    std::size_t doc_id = 0;
    for (const Event& e : training_events) {
        for (const Post& p : e.posts) {
            for (const std::string& tok : tokenize(p.text)) {
                TermStat& st = stats[tok];
                st.count += 1;
                if (st.last_doc != doc_id) {
                    st.doc_freq += 1;
                    st.last_doc = doc_id;
                }
            }
            ++doc_id;
        }
    }
    if (doc_id == 0) throw ValidationError("build_vocab: no training posts");

    std::vector<std::pair<std::string, TermStat>> ranked(stats.begin(), stats.end());
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        if (a.second.count != b.second.count) return a.second.count > b.second.count;
        return a.first < b.first;
    });
    if (ranked.size() > cfg.vocab_k) ranked.resize(cfg.vocab_k);

    Vocabulary v;
    v.total_docs = doc_id;
    v.terms.reserve(ranked.size());
    v.doc_freq.reserve(ranked.size());
    v.idf.reserve(ranked.size());
    for (auto& [term, st] : ranked) {
        v.terms.push_back(term);
        v.doc_freq.push_back(st.doc_freq);
        v.idf.push_back(std::log((1.0 + static_cast<double>(v.total_docs)) /
                                 (1.0 + static_cast<double>(st.doc_freq))) +
                        1.0);
    }
    v.rebuild_index();
    return v;
}

void save_vocab(const Vocabulary& v, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write vocabulary file: " + path);
    out << "total_docs\t" << v.total_docs << "\n";
    for (std::size_t i = 0; i < v.terms.size(); ++i)
        out << i << "\t" << v.terms[i] << "\t" << v.doc_freq[i] << "\n";
    if (!out) throw IoError("write failed: " + path);
}

Vocabulary load_vocab(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open vocabulary file: " + path);
    Vocabulary v;
    std::string line;
    if (!std::getline(in, line)) throw ParseError(path + ": empty vocabulary file");
    {
        std::istringstream hs(line);
        std::string tag;
        if (!std::getline(hs, tag, '\t') || tag != "total_docs" || !(hs >> v.total_docs))
            throw ParseError(path + ": bad header line, expected 'total_docs\\t<count>'");
    }
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string rank_s, term, df_s;
        if (!std::getline(ls, rank_s, '\t') || !std::getline(ls, term, '\t') ||
            !std::getline(ls, df_s))
            throw ParseError(path + ": line " + std::to_string(lineno) + ": expected rank\\tterm\\tdoc_freq");
        std::size_t rank = std::stoull(rank_s);
        std::size_t df = std::stoull(df_s);
        if (rank != v.terms.size())
            throw ParseError(path + ": line " + std::to_string(lineno) + ": rank out of order");
        if (df < 1) throw ValidationError(path + ": term '" + term + "' has doc_freq 0");
        v.terms.push_back(term);
        v.doc_freq.push_back(df);
        v.idf.push_back(std::log((1.0 + static_cast<double>(v.total_docs)) /
                                 (1.0 + static_cast<double>(df))) +
                        1.0);
    }
    v.rebuild_index();
    if (v.index.size() != v.terms.size()) throw ValidationError(path + ": duplicate terms");
    return v;
}

Vec tfidf_vector(const Post& p, const Vocabulary& v) {
    Vec out(v.size(), 0.0);
    for (const std::string& tok : tokenize(p.text)) {
        auto it = v.index.find(tok);
        if (it == v.index.end()) continue;
        out[it->second] += v.idf[it->second];  // += idf per occurrence == tf * idf
    }
    return out;
}

FeatureSequence encode_event(const Event& e, const PostSeries& s, const Vocabulary& v,
                             const SeriesConfig& cfg) {
    if (v.size() > cfg.vocab_k)
        throw ShapeError("vocabulary has " + std::to_string(v.size()) +
                         " terms but k = " + std::to_string(cfg.vocab_k));
    FeatureSequence seq;
    seq.event_id = e.id;
    seq.label = e.label;
    seq.matrices.reserve(s.intervals.size());
    const std::size_t K = cfg.vocab_k;
    const std::size_t N = cfg.posts_per_interval;
    for (const auto& interval : s.intervals) {
        Mat d(K, N);
        const std::size_t cols = std::min(interval.size(), N);
        if (interval.size() > N) seq.truncated_intervals += 1;
        for (std::size_t j = 0; j < cols; ++j) {
            const std::size_t post_idx = interval[j];
            if (post_idx >= e.posts.size())
                throw ShapeError("series does not match event '" + e.id + "'");
            const Vec col = tfidf_vector(e.posts[post_idx], v);
            for (std::size_t i = 0; i < col.size(); ++i) d.at(i, j) = col[i];
        }
        seq.matrices.push_back(std::move(d));
    }
    return seq;
}

}  // namespace erd
