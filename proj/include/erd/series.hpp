#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "erd/corpus.hpp"
#include "erd/mat.hpp"

namespace erd {

struct SeriesConfig {
    std::size_t posts_per_interval = 50;  // N
    std::size_t min_series_len = 5;       // Min
    std::size_t vocab_k = 10000;          // K

    void validate() const;
};

// An event's posts grouped into intervals, one interval per recurrent step.
// Intervals cover every post index exactly once, in original order.
struct PostSeries {
    std::string event_id;
    std::vector<std::vector<std::size_t>> intervals;
};

struct Vocabulary {
    std::vector<std::string> terms;       // ranked by descending corpus count, ties lexicographic
    std::vector<std::size_t> doc_freq;    // per-term count of training posts containing it
    std::vector<double> idf;              // cached ln((1+total_docs)/(1+df)) + 1
    std::size_t total_docs = 0;           // training post count
    std::unordered_map<std::string, std::size_t> index;

    std::size_t size() const { return terms.size(); }
    void rebuild_index();
};

// Sequence of K x N tf-idf matrices for one event.
struct FeatureSequence {
    std::string event_id;
    int label = 0;
    std::vector<Mat> matrices;
    std::size_t truncated_intervals = 0;  // intervals cut to the first N posts
};

// Lowercased alphanumeric tokens; any other byte is a boundary. Bytes >= 0x80
// count as word characters so multi-byte text survives untokenized.
std::vector<std::string> tokenize(const std::string& text);

// Interval construction. With n = |posts|: n >= N*Min gives floor(n/N)
// intervals of N plus a nonempty remainder interval; otherwise Min-1
// intervals of floor(n/Min) plus the remainder. Events shorter than Min are
// rejected ("event too short").
PostSeries build_series(const Event& e, const SeriesConfig& cfg);

// Series of one-post intervals, used by the earliness fallback for truncated
// events that can no longer fill Min intervals.
PostSeries build_singleton_series(const Event& e);

Vocabulary build_vocab(const std::vector<Event>& training_events, const SeriesConfig& cfg);

void save_vocab(const Vocabulary& v, const std::string& path);
Vocabulary load_vocab(const std::string& path);

// Entry for term w: tf(w, post) * idf(w); zero for absent terms,
// out-of-vocabulary tokens ignored. Length = |v.terms|.
Vec tfidf_vector(const Post& p, const Vocabulary& v);

// One K x N matrix per interval: column j is the tf-idf vector of the j-th
// post, columns past the interval's post count are zero, intervals longer
// than N are truncated to their first N posts.
FeatureSequence encode_event(const Event& e, const PostSeries& s, const Vocabulary& v,
                             const SeriesConfig& cfg);

}  // namespace erd
