#include "erd/model.hpp"

#include <cmath>

#include "erd/errors.hpp"

namespace erd {

void ModelConfig::validate() const {
    if (layers.empty()) throw ValidationError("model needs at least one LSTM layer");
    for (std::size_t h : layers)
        if (h < 1) throw ValidationError("layer sizes must be >= 1");
    if (vocab_k < 1 || posts_per_interval < 1)
        throw ValidationError("k and n must be >= 1");
    if (init_hidden < 1 || classifier_hidden < 1)
        throw ValidationError("init_hidden and classifier_hidden must be >= 1");
}

namespace {

void glorot(Mat& m, Rng& rng) {
    const double bound = std::sqrt(6.0 / static_cast<double>(m.rows() + m.cols()));
    for (std::size_t i = 0; i < m.size(); ++i) m.data()[i] = rng.uniform(-bound, bound);
}

LstmLayerParams make_layer(std::size_t hidden, std::size_t input) {
    LstmLayerParams p;
    p.Ui = p.Uf = p.Uc = p.Uo = Mat(hidden, hidden);
    p.Wi = p.Wf = p.Wc = p.Wo = Mat(hidden, input);
    p.Vi = p.Vf = p.Vo = Mat(hidden, hidden);
    p.bi = p.bf = p.bc = p.bo = Vec(hidden, 0.0);
    return p;
}

Mlp make_mlp(std::size_t out, std::size_t mid, std::size_t in) {
    Mlp m;
    m.W1 = Mat(mid, in);
    m.b1 = Vec(mid, 0.0);
    m.W2 = Mat(out, mid);
    m.b2 = Vec(out, 0.0);
    return m;
}

Model make_model_shape(const ModelConfig& cfg) {
    cfg.validate();
    Model m;
    m.cfg = cfg;
    std::size_t in = cfg.posts_per_interval;
    for (std::size_t h : cfg.layers) {
        m.layers.push_back(make_layer(h, in));
        InitMlpParams init;
        init.fc = make_mlp(h, cfg.init_hidden, cfg.posts_per_interval);
        init.fh = make_mlp(h, cfg.init_hidden, cfg.posts_per_interval);
        m.init.push_back(std::move(init));
        in = h;
    }
    m.attention.W = Mat(cfg.vocab_k, cfg.top_hidden());
    m.classifier.W1 = Mat(cfg.classifier_hidden, cfg.top_hidden());
    m.classifier.b1 = Vec(cfg.classifier_hidden, 0.0);
    m.classifier.W2 = Mat(2, cfg.classifier_hidden);
    m.classifier.b2 = Vec(2, 0.0);
    return m;
}

void collect_mlp(std::vector<ParamRef>& out, const std::string& prefix, Mlp& mlp) {
    out.push_back({prefix + ".w1", mlp.W1.data(), mlp.W1.rows(), mlp.W1.cols()});
    out.push_back({prefix + ".b1", mlp.b1.data(), mlp.b1.size(), 1});
    out.push_back({prefix + ".w2", mlp.W2.data(), mlp.W2.rows(), mlp.W2.cols()});
    out.push_back({prefix + ".b2", mlp.b2.data(), mlp.b2.size(), 1});
}

}  // namespace

std::vector<ParamRef> collect_params(Model& m) {
    std::vector<ParamRef> out;
    for (std::size_t l = 0; l < m.layers.size(); ++l) {
        LstmLayerParams& p = m.layers[l];
        const std::string pre = "layer" + std::to_string(l) + ".";
        out.push_back({pre + "Ui", p.Ui.data(), p.Ui.rows(), p.Ui.cols()});
        out.push_back({pre + "Uf", p.Uf.data(), p.Uf.rows(), p.Uf.cols()});
        out.push_back({pre + "Uc", p.Uc.data(), p.Uc.rows(), p.Uc.cols()});
        out.push_back({pre + "Uo", p.Uo.data(), p.Uo.rows(), p.Uo.cols()});
        out.push_back({pre + "Wi", p.Wi.data(), p.Wi.rows(), p.Wi.cols()});
        out.push_back({pre + "Wf", p.Wf.data(), p.Wf.rows(), p.Wf.cols()});
        out.push_back({pre + "Wc", p.Wc.data(), p.Wc.rows(), p.Wc.cols()});
        out.push_back({pre + "Wo", p.Wo.data(), p.Wo.rows(), p.Wo.cols()});
        out.push_back({pre + "Vi", p.Vi.data(), p.Vi.rows(), p.Vi.cols()});
        out.push_back({pre + "Vf", p.Vf.data(), p.Vf.rows(), p.Vf.cols()});
        out.push_back({pre + "Vo", p.Vo.data(), p.Vo.rows(), p.Vo.cols()});
        out.push_back({pre + "bi", p.bi.data(), p.bi.size(), 1});
        out.push_back({pre + "bf", p.bf.data(), p.bf.size(), 1});
        out.push_back({pre + "bc", p.bc.data(), p.bc.size(), 1});
        out.push_back({pre + "bo", p.bo.data(), p.bo.size(), 1});
    }
    out.push_back({"att.W", m.attention.W.data(), m.attention.W.rows(), m.attention.W.cols()});
    for (std::size_t l = 0; l < m.init.size(); ++l) {
        const std::string pre = "init.l" + std::to_string(l);
        collect_mlp(out, pre + ".fc", m.init[l].fc);
        collect_mlp(out, pre + ".fh", m.init[l].fh);
    }
    out.push_back({"cls.W1", m.classifier.W1.data(), m.classifier.W1.rows(), m.classifier.W1.cols()});
    out.push_back({"cls.b1", m.classifier.b1.data(), m.classifier.b1.size(), 1});
    out.push_back({"cls.W2", m.classifier.W2.data(), m.classifier.W2.rows(), m.classifier.W2.cols()});
    out.push_back({"cls.b2", m.classifier.b2.data(), m.classifier.b2.size(), 1});
    return out;
}

std::vector<ParamRef> collect_params(BaselineRnnParams& p) {
    std::vector<ParamRef> out;
    out.push_back({"rnn.U", p.U.data(), p.U.rows(), p.U.cols()});
    out.push_back({"rnn.W", p.W.data(), p.W.rows(), p.W.cols()});
    out.push_back({"rnn.b", p.b.data(), p.b.size(), 1});
    out.push_back({"rnn.V", p.V.data(), p.V.rows(), p.V.cols()});
    out.push_back({"rnn.c", p.c.data(), p.c.size(), 1});
    return out;
}

std::size_t param_count(Model& m) {
    std::size_t total = 0;
    for (const ParamRef& p : collect_params(m)) total += p.size();
    return total;
}

Model init_model(const ModelConfig& cfg, Rng& rng) {
    Model m = make_model_shape(cfg);
    for (LstmLayerParams& p : m.layers) {
        glorot(p.Ui, rng);
        glorot(p.Uf, rng);
        glorot(p.Uc, rng);
        glorot(p.Uo, rng);
        glorot(p.Wi, rng);
        glorot(p.Wf, rng);
        glorot(p.Wc, rng);
        glorot(p.Wo, rng);
        glorot(p.Vi, rng);
        glorot(p.Vf, rng);
        glorot(p.Vo, rng);
        // +1 forget bias counters early saturation toward forgetting.
        p.bf.assign(p.bf.size(), 1.0);
    }
    glorot(m.attention.W, rng);
    for (InitMlpParams& init : m.init) {
        glorot(init.fc.W1, rng);
        glorot(init.fc.W2, rng);
        glorot(init.fh.W1, rng);
        glorot(init.fh.W2, rng);
    }
    glorot(m.classifier.W1, rng);
    glorot(m.classifier.W2, rng);
    return m;
}

Model zero_model(const ModelConfig& cfg) { return make_model_shape(cfg); }

BaselineRnnParams init_baseline(std::size_t hidden, std::size_t input, Rng& rng) {
    BaselineRnnParams p;
    p.U = Mat(hidden, input);
    p.W = Mat(hidden, hidden);
    p.b = Vec(hidden, 0.0);
    p.V = Mat(2, hidden);
    p.c = Vec(2, 0.0);
    glorot(p.U, rng);
    glorot(p.W, rng);
    glorot(p.V, rng);
    return p;
}

void lstm_step(const LstmLayerParams& p, const Vec& x, const Vec& h_prev, const Vec& c_prev,
               Vec& h_out, Vec& c_out, Vec* gi, Vec* gf, Vec* go, Vec* gg) {
    const std::size_t H = p.hidden();
    if (x.size() != p.input() || h_prev.size() != H || c_prev.size() != H)
        throw ShapeError("lstm_step: input vec" + std::to_string(x.size()) + ", state vec" +
                         std::to_string(h_prev.size()) + " vs layer " + std::to_string(H) + "x" +
                         std::to_string(p.input()));

    Vec i = p.bi, f = p.bf, g = p.bc, o = p.bo;
    gemv_add(p.Ui, h_prev, i);
    gemv_add(p.Wi, x, i);
    gemv_add(p.Vi, c_prev, i);
    gemv_add(p.Uf, h_prev, f);
    gemv_add(p.Wf, x, f);
    gemv_add(p.Vf, c_prev, f);
    gemv_add(p.Uc, h_prev, g);
    gemv_add(p.Wc, x, g);
    for (std::size_t k = 0; k < H; ++k) {
        i[k] = sigmoid(i[k]);
        f[k] = sigmoid(f[k]);
        g[k] = std::tanh(g[k]);
    }
    c_out.resize(H);
    for (std::size_t k = 0; k < H; ++k) c_out[k] = f[k] * c_prev[k] + i[k] * g[k];
    gemv_add(p.Uo, h_prev, o);
    gemv_add(p.Wo, x, o);
    gemv_add(p.Vo, c_out, o);
    h_out.resize(H);
    for (std::size_t k = 0; k < H; ++k) {
        o[k] = sigmoid(o[k]);
        h_out[k] = o[k] * std::tanh(c_out[k]);
    }
    if (gi) *gi = std::move(i);
    if (gf) *gf = std::move(f);
    if (go) *go = std::move(o);
    if (gg) *gg = std::move(g);
}

Vec location_softmax(const AttentionParams& att, const Vec& h_top) {
    if (att.W.cols() != h_top.size())
        throw ShapeError("location_softmax: W " + shape_str(att.W) + " vs vec" +
                         std::to_string(h_top.size()));
    Vec logits(att.W.rows(), 0.0);
    gemv_add(att.W, h_top, logits);
    return softmax(logits);
}

Vec attend(const Vec& a, const Mat& d) {
    if (a.size() != d.rows())
        throw ShapeError("attend: weights vec" + std::to_string(a.size()) + " vs matrix " +
                         shape_str(d));
    Vec x(d.cols(), 0.0);
    for (std::size_t i = 0; i < d.rows(); ++i) {
        const double ai = a[i];
        if (ai == 0.0) continue;
        const double* row = d.row_ptr(i);
        for (std::size_t j = 0; j < d.cols(); ++j) x[j] += ai * row[j];
    }
    return x;
}

Vec mlp_forward(const Mlp& mlp, const Vec& in, Vec* hidden_out) {
    Vec hid = mlp.b1;
    gemv_add(mlp.W1, in, hid);
    for (double& v : hid) v = std::tanh(v);
    Vec out = mlp.b2;
    gemv_add(mlp.W2, hid, out);
    if (hidden_out) *hidden_out = std::move(hid);
    return out;
}

Vec mean_input_vector(const FeatureSequence& seq) {
    if (seq.matrices.empty()) throw ArgumentError("mean_input_vector: empty sequence");
    const std::size_t K = seq.matrices[0].rows();
    const std::size_t N = seq.matrices[0].cols();
    Vec m(N, 0.0);
    for (const Mat& d : seq.matrices)
        for (std::size_t i = 0; i < K; ++i)
            for (std::size_t j = 0; j < N; ++j) m[j] += d.at(i, j);
    const double scale = 1.0 / (static_cast<double>(K) * static_cast<double>(seq.matrices.size()));
    for (double& v : m) v *= scale;
    return m;
}

namespace {

Vec apply_mask(const Vec& v, const Vec& mask) {
    if (mask.empty()) return v;
    Vec out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] * mask[i];
    return out;
}

void classifier_forward(const ClassifierParams& cls, const Vec& h_in, StepTrace& st) {
    st.cls_in = apply_mask(h_in, st.cls_mask);
    Vec hid = cls.b1;
    gemv_add(cls.W1, st.cls_in, hid);
    for (double& v : hid) v = sigmoid(v);
    Vec logits = cls.b2;
    gemv_add(cls.W2, hid, logits);
    st.cls_hidden = std::move(hid);
    st.y_hat = softmax(logits);
}

}  // namespace

ForwardTrace forward_event(const Model& m, const FeatureSequence& seq, RunMode mode, Rng* rng,
                           double dropout_rate) {
    if (seq.matrices.empty()) throw ArgumentError("forward_event: empty sequence");
    const std::size_t K = m.cfg.vocab_k;
    const std::size_t N = m.cfg.posts_per_interval;
    for (const Mat& d : seq.matrices)
        if (d.rows() != K || d.cols() != N)
            throw ShapeError("forward_event: matrix " + shape_str(d) + " vs model " +
                             std::to_string(K) + "x" + std::to_string(N));
    const bool use_dropout = mode == RunMode::train && dropout_rate > 0.0;
    if (use_dropout && rng == nullptr)
        throw ArgumentError("forward_event: train mode with dropout needs an rng");

    const std::size_t L = m.layers.size();
    ForwardTrace tr;
    tr.train_mode = mode == RunMode::train;
    tr.dropout_rate = use_dropout ? dropout_rate : 0.0;
    tr.m = mean_input_vector(seq);
    tr.h0.resize(L);
    tr.c0.resize(L);
    tr.init_fc_hidden.resize(L);
    tr.init_fh_hidden.resize(L);
    for (std::size_t l = 0; l < L; ++l) {
        tr.c0[l] = mlp_forward(m.init[l].fc, tr.m, &tr.init_fc_hidden[l]);
        tr.h0[l] = mlp_forward(m.init[l].fh, tr.m, &tr.init_fh_hidden[l]);
    }

    Vec a = location_softmax(m.attention, tr.h0.back());
    std::vector<Vec> h_prev = tr.h0;
    std::vector<Vec> c_prev = tr.c0;

    const std::size_t tau = seq.matrices.size();
    tr.steps.resize(tau);
    for (std::size_t t = 0; t < tau; ++t) {
        StepTrace& st = tr.steps[t];
        st.a = a;
        st.x = attend(a, seq.matrices[t]);
        st.h.resize(L);
        st.c.resize(L);
        st.gi.resize(L);
        st.gf.resize(L);
        st.go.resize(L);
        st.gg.resize(L);
        st.layer_in.resize(L);
        st.mask_in.resize(L);

        Vec in = st.x;
        for (std::size_t l = 0; l < L; ++l) {
            if (use_dropout) st.mask_in[l] = dropout_mask_vec(*rng, in.size(), dropout_rate);
            st.layer_in[l] = apply_mask(in, st.mask_in[l]);
            lstm_step(m.layers[l], st.layer_in[l], h_prev[l], c_prev[l], st.h[l], st.c[l],
                      &st.gi[l], &st.gf[l], &st.go[l], &st.gg[l]);
            in = st.h[l];
        }
        h_prev = st.h;
        c_prev = st.c;

        if (use_dropout) st.cls_mask = dropout_mask_vec(*rng, st.h.back().size(), dropout_rate);
        classifier_forward(m.classifier, st.h.back(), st);

        a = location_softmax(m.attention, st.h.back());
    }
    tr.a_end = std::move(a);
    return tr;
}

Prediction predict(const Model& m, const FeatureSequence& seq) {
    const ForwardTrace tr = forward_event(m, seq, RunMode::infer);
    const double score = tr.steps.back().y_hat[1];
    return {score >= 0.5 ? 1 : 0, score};
}

BaselineTrace baseline_rnn_forward(const BaselineRnnParams& p, const FeatureSequence& seq,
                                   RunMode mode, Rng* rng, double dropout_rate) {
    if (seq.matrices.empty()) throw ArgumentError("baseline_rnn_forward: empty sequence");
    const std::size_t H = p.b.size();
    const bool use_dropout = mode == RunMode::train && dropout_rate > 0.0;
    if (use_dropout && rng == nullptr)
        throw ArgumentError("baseline_rnn_forward: train mode with dropout needs an rng");
    const Vec uniform(seq.matrices[0].rows(), 1.0 / static_cast<double>(seq.matrices[0].rows()));

    BaselineTrace tr;
    Vec h(H, 0.0);
    for (const Mat& d : seq.matrices) {
        Vec x = attend(uniform, d);
        Vec mask;
        if (use_dropout) mask = dropout_mask_vec(*rng, x.size(), dropout_rate);
        Vec x_used = apply_mask(x, mask);
        Vec pre = p.b;
        gemv_add(p.U, x_used, pre);
        gemv_add(p.W, h, pre);
        for (double& v : pre) v = std::tanh(v);
        h = pre;
        Vec logits = p.c;
        gemv_add(p.V, h, logits);
        tr.x.push_back(std::move(x));
        tr.mask.push_back(std::move(mask));
        tr.h_pre.push_back(std::move(x_used));
        tr.h.push_back(h);
        tr.y_hat.push_back(softmax(logits));
    }
    return tr;
}

Prediction baseline_predict(const BaselineRnnParams& p, const FeatureSequence& seq) {
    const BaselineTrace tr = baseline_rnn_forward(p, seq);
    const double score = tr.y_hat.back()[1];
    return {score >= 0.5 ? 1 : 0, score};
}

}  // namespace erd
