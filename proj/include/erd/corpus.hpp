#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "erd/rng.hpp"

namespace erd {

struct Post {
    std::string text;
    std::int64_t timestamp = 0;  // seconds since epoch, >= 0
};

// One labeled claim with its timestamp-ordered discussion posts; the unit of
// classification. label 1 = rumor, 0 = non-rumor.
struct Event {
    std::string id;
    int label = 0;
    std::vector<Post> posts;  // ascending timestamp, stable on ties
};

struct Corpus {
    std::vector<Event> events;  // unique ids
    std::string provenance;     // free-text metadata, not persisted
};

struct SynthConfig {
    std::size_t event_count = 400;
    double class_balance = 0.5;
    std::size_t posts_per_event_min = 60;
    std::size_t posts_per_event_max = 160;
    std::size_t background_vocab_size = 500;
    std::size_t signal_vocab_size = 10;
    double signal_rate = 0.3;       // probability a fresh rumor post carries a signal token
    double duplication_rate = 0.8;  // probability a post is a repost of an earlier one
    std::uint64_t seed = 7;

    void validate() const;  // throws ValidationError naming the offending field
};

// Token strings the generator emits; exposed so tests and the acceptance
// suite can identify signal rows in the vocabulary.
std::string synth_background_token(std::size_t rank);  // rank in [0, background_vocab_size)
std::string synth_signal_token(std::size_t index);

// Line-delimited JSON ingestion (one event object per line, fields event_id /
// label / posts[{text,timestamp}], unknown fields ignored). Posts come back
// sorted by timestamp. Throws ParseError with the line number on malformed
// records, ValidationError on duplicate ids / empty events / bad labels.
Corpus load_corpus(const std::string& path);
void save_corpus(const Corpus& corpus, const std::string& path);

Corpus synth_generate(const SynthConfig& cfg);

struct SplitResult {
    std::vector<Event> holdout;
    std::vector<Event> train;
    std::vector<Event> test;
    std::size_t dropped_for_balance = 0;
};

// Stratified split: per class 15% (floor, at least 1) to holdout, remainder
// 3:2 into train/test. Surplus majority-class events are dropped so train
// and test keep a 1:1 class ratio. Requires >= 10 events of each class.
SplitResult split_dataset(const Corpus& corpus, double holdout_frac, std::uint64_t seed);

// First ceil(frac * |posts|) posts (never fewer than 1), label unchanged.
// frac must lie in (0, 1].
Event truncate_fraction(const Event& e, double frac);

}  // namespace erd
