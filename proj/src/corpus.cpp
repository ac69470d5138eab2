#include "erd/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "erd/errors.hpp"

namespace erd {

namespace {

bool is_blank(const std::string& s) {
    return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
}

void validate_event(Event& e) {
    if (e.id.empty()) throw ValidationError("event with empty id");
    if (e.label != 0 && e.label != 1)
        throw ValidationError("event '" + e.id + "': label must be 0 or 1");
    if (e.posts.empty()) throw ValidationError("event '" + e.id + "': no posts");
    for (const Post& p : e.posts) {
        if (is_blank(p.text))
            throw ValidationError("event '" + e.id + "': post text empty after trimming");
        if (p.timestamp < 0)
            throw ValidationError("event '" + e.id + "': negative timestamp");
    }
    // Stable so that file order breaks timestamp ties.
    std::stable_sort(e.posts.begin(), e.posts.end(),
                     [](const Post& a, const Post& b) { return a.timestamp < b.timestamp; });
}

}  // namespace

void SynthConfig::validate() const {
    if (event_count == 0) throw ValidationError("event_count must be >= 1");
    if (class_balance < 0.0 || class_balance > 1.0)
        throw ValidationError("class_balance must be in [0,1]");
    if (posts_per_event_min < 1) throw ValidationError("posts_per_event_min must be >= 1");
    if (posts_per_event_max < posts_per_event_min)
        throw ValidationError("posts_per_event_max must be >= posts_per_event_min");
    if (background_vocab_size < 1) throw ValidationError("background_vocab_size must be >= 1");
    if (signal_vocab_size < 1) throw ValidationError("signal_vocab_size must be >= 1");
    if (signal_rate < 0.0 || signal_rate > 1.0)
        throw ValidationError("signal_rate must be in [0,1], got " + std::to_string(signal_rate));
    if (duplication_rate < 0.0 || duplication_rate > 1.0)
        throw ValidationError("duplication_rate must be in [0,1], got " +
                              std::to_string(duplication_rate));
}

std::string synth_background_token(std::size_t rank) { return "w" + std::to_string(rank); }

std::string synth_signal_token(std::size_t index) { return "sig" + std::to_string(index); }

Corpus load_corpus(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open corpus file: " + path);

    Corpus corpus;
    corpus.provenance = "loaded from " + path;
    std::set<std::string> seen_ids;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (is_blank(line)) continue;
        nlohmann::json rec;
        try {
            rec = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& ex) {
            throw ParseError("line " + std::to_string(lineno) + ": " + ex.what());
        }
        Event e;
        try {
            e.id = rec.at("event_id").get<std::string>();
            e.label = rec.at("label").get<int>();
            for (const auto& p : rec.at("posts")) {
                Post post;
                post.text = p.at("text").get<std::string>();
                post.timestamp = p.at("timestamp").get<std::int64_t>();
                e.posts.push_back(std::move(post));
            }
        } catch (const nlohmann::json::exception& ex) {
            throw ParseError("line " + std::to_string(lineno) + ": " + ex.what());
        }
        validate_event(e);
        if (!seen_ids.insert(e.id).second)
            throw ValidationError("duplicate event id '" + e.id + "'");
        corpus.events.push_back(std::move(e));
    }
    if (corpus.events.empty()) throw ValidationError("corpus file has no events: " + path);
    return corpus;
}

void save_corpus(const Corpus& corpus, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write corpus file: " + path);
    for (const Event& e : corpus.events) {
        nlohmann::json rec;
        rec["event_id"] = e.id;
        rec["label"] = e.label;
        nlohmann::json posts = nlohmann::json::array();
        for (const Post& p : e.posts) posts.push_back({{"text", p.text}, {"timestamp", p.timestamp}});
        rec["posts"] = std::move(posts);
        out << rec.dump() << "\n";
    }
    if (!out) throw IoError("write failed: " + path);
}

namespace {

// Zipf-like sampler over ranks 0..n-1 with P(rank r) proportional to 1/(r+1).
class ZipfSampler {
public:
    explicit ZipfSampler(std::size_t n) : cdf_(n) {
        double acc = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
            acc += 1.0 / static_cast<double>(r + 1);
            cdf_[r] = acc;
        }
        for (double& v : cdf_) v /= acc;
    }

    std::size_t draw(Rng& rng) const {
        const double u = rng.uniform();
        auto it = std::lower_bound(cdf_.begin(), cdf_.end(), u);
        if (it == cdf_.end()) return cdf_.size() - 1;
        return static_cast<std::size_t>(it - cdf_.begin());
    }

private:
    std::vector<double> cdf_;
};

std::string synth_post_text(Rng& rng, const ZipfSampler& zipf, const SynthConfig& cfg, bool rumor) {
    const std::size_t len = 5 + rng.uniform_int(8);  // 5..12 background tokens
    std::vector<std::string> tokens;
    tokens.reserve(len + 1);
    for (std::size_t i = 0; i < len; ++i)
        tokens.push_back(synth_background_token(zipf.draw(rng)));
    if (rumor && rng.bernoulli(cfg.signal_rate)) {
        const std::size_t sig = rng.uniform_int(cfg.signal_vocab_size);
        const std::size_t pos = rng.uniform_int(tokens.size() + 1);
        tokens.insert(tokens.begin() + pos, synth_signal_token(sig));
    }
    std::string text;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (i) text += ' ';
        text += tokens[i];
    }
    return text;
}

}  // namespace

Corpus synth_generate(const SynthConfig& cfg) {
    cfg.validate();
    Rng rng(cfg.seed);
    ZipfSampler zipf(cfg.background_vocab_size);

    const std::size_t rumor_count =
        static_cast<std::size_t>(std::lround(cfg.class_balance * static_cast<double>(cfg.event_count)));

    Corpus corpus;
    corpus.provenance = "synthetic seed=" + std::to_string(cfg.seed);
    corpus.events.reserve(cfg.event_count);
    std::int64_t base_time = 1'500'000'000;
    char idbuf[32];
    for (std::size_t i = 0; i < cfg.event_count; ++i) {
        Event e;
        std::snprintf(idbuf, sizeof(idbuf), "e%05zu", i);
        e.id = idbuf;
        e.label = i < rumor_count ? 1 : 0;
        const std::size_t span = cfg.posts_per_event_max - cfg.posts_per_event_min + 1;
        const std::size_t n_posts = cfg.posts_per_event_min + rng.uniform_int(span);
        std::int64_t t = base_time;
        for (std::size_t j = 0; j < n_posts; ++j) {
            t += 1 + static_cast<std::int64_t>(rng.uniform_int(600));
            Post p;
            p.timestamp = t;
            if (j > 0 && rng.bernoulli(cfg.duplication_rate)) {
                p.text = e.posts[rng.uniform_int(j)].text;  // repost of an earlier post
            } else {
                p.text = synth_post_text(rng, zipf, cfg, e.label == 1);
            }
            e.posts.push_back(std::move(p));
        }
        corpus.events.push_back(std::move(e));
        base_time += 1'000'000;
    }
    return corpus;
}

SplitResult split_dataset(const Corpus& corpus, double holdout_frac, std::uint64_t seed) {
    if (holdout_frac < 0.0 || holdout_frac >= 1.0)
        throw ArgumentError("holdout_frac must be in [0,1)");
    std::vector<Event> rumors, normals;
    for (const Event& e : corpus.events) (e.label == 1 ? rumors : normals).push_back(e);
    if (rumors.size() < 10 || normals.size() < 10)
        throw ValidationError("split requires >= 10 events per class, got " +
                              std::to_string(rumors.size()) + " rumors / " +
                              std::to_string(normals.size()) + " non-rumors");

    Rng rng(seed);
    rng.shuffle(rumors);
    rng.shuffle(normals);

    auto cut = [&](std::vector<Event>& pool) {
        const std::size_t n = pool.size();
        std::size_t h = static_cast<std::size_t>(static_cast<double>(n) * holdout_frac);
        if (holdout_frac > 0.0 && h == 0) h = 1;
        const std::size_t rest = n - h;
        const std::size_t tr = rest * 3 / 5;
        return std::tuple<std::size_t, std::size_t>{h, tr};
    };
    auto [hr, trr] = cut(rumors);
    auto [hn, trn] = cut(normals);

    SplitResult out;
    auto take = [](std::vector<Event>& pool, std::size_t from, std::size_t count,
                   std::vector<Event>& dst) {
        for (std::size_t i = 0; i < count; ++i) dst.push_back(std::move(pool[from + i]));
    };

    // Balance train and test by trimming the larger class; holdout keeps the
    // per-class 15% as-is.
    const std::size_t tr = std::min(trr, trn);
    const std::size_t ter = rumors.size() - hr - trr;
    const std::size_t ten = normals.size() - hn - trn;
    const std::size_t te = std::min(ter, ten);
    out.dropped_for_balance = (trr - tr) + (trn - tr) + (ter - te) + (ten - te);

    take(rumors, 0, hr, out.holdout);
    take(normals, 0, hn, out.holdout);
    take(rumors, hr, tr, out.train);
    take(normals, hn, tr, out.train);
    take(rumors, hr + trr, te, out.test);
    take(normals, hn + trn, te, out.test);
    return out;
}

Event truncate_fraction(const Event& e, double frac) {
    if (!(frac > 0.0) || frac > 1.0)
        throw ArgumentError("truncate fraction must be in (0,1], got " + std::to_string(frac));
    Event out;
    out.id = e.id;
    out.label = e.label;
    std::size_t keep =
        static_cast<std::size_t>(std::ceil(frac * static_cast<double>(e.posts.size())));
    if (keep < 1) keep = 1;
    if (keep > e.posts.size()) keep = e.posts.size();
    out.posts.assign(e.posts.begin(), e.posts.begin() + static_cast<std::ptrdiff_t>(keep));
    return out;
}

}  // namespace erd
