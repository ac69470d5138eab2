#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "erd/mat.hpp"
#include "erd/numerics.hpp"
#include "erd/rng.hpp"
#include "erd/series.hpp"

namespace erd {

// One stacked layer of the peephole LSTM. U_* act on h_{t-1}, W_* on the
// layer input, V_* are peepholes reading the cell state (V_i, V_f on c_{t-1},
// V_o on c_t; the candidate has no peephole).
struct LstmLayerParams {
    Mat Ui, Uf, Uc, Uo;  // H x H
    Mat Wi, Wf, Wc, Wo;  // H x D
    Mat Vi, Vf, Vo;      // H x H
    Vec bi, bf, bc, bo;  // H

    std::size_t hidden() const { return bi.size(); }
    std::size_t input() const { return Wi.cols(); }
};

// Location softmax over the K word rows; row i of W scores position i from
// the top layer's hidden state.
struct AttentionParams {
    Mat W;  // K x H_top
};

// Single-hidden-layer perceptron, tanh hidden, linear output.
struct Mlp {
    Mat W1;  // H_mid x in
    Vec b1;
    Mat W2;  // out x H_mid
    Vec b2;
};

// Data-driven state init: per layer, f_c and f_h map the mean input vector
// to c_0 and h_0.
struct InitMlpParams {
    Mlp fc;
    Mlp fh;
};

struct ClassifierParams {
    Mat W1;  // H_cls x H_top, sigmoid hidden
    Vec b1;
    Mat W2;  // 2 x H_cls, softmax output
    Vec b2;
};

struct BaselineRnnParams {
    Mat U;  // H x D (input-to-hidden)
    Mat W;  // H x H (hidden-to-hidden)
    Vec b;  // H
    Mat V;  // 2 x H (hidden-to-output)
    Vec c;  // 2
};

struct ModelConfig {
    std::vector<std::size_t> layers = {1024, 512, 64};
    std::size_t vocab_k = 10000;          // K, attention rows
    std::size_t posts_per_interval = 50;  // N, input width
    std::size_t min_series_len = 5;
    std::size_t init_hidden = 32;        // MLP hidden width for f_c / f_h
    std::size_t classifier_hidden = 32;  // sigmoid hidden width

    std::size_t top_hidden() const { return layers.back(); }
    void validate() const;
};

struct Model {
    ModelConfig cfg;
    std::vector<LstmLayerParams> layers;
    AttentionParams attention;
    std::vector<InitMlpParams> init;  // one pair per layer
    ClassifierParams classifier;
};

// Named view of one parameter tensor; the set and its order are fixed, so
// checkpoints, Adam state, and gradient flattening all line up.
struct ParamRef {
    std::string name;
    double* data;
    std::size_t rows;
    std::size_t cols;

    std::size_t size() const { return rows * cols; }
};

std::vector<ParamRef> collect_params(Model& m);
std::vector<ParamRef> collect_params(BaselineRnnParams& p);
std::size_t param_count(Model& m);

// Glorot-uniform weights, zero biases, forget-gate bias +1.
Model init_model(const ModelConfig& cfg, Rng& rng);
Model zero_model(const ModelConfig& cfg);
BaselineRnnParams init_baseline(std::size_t hidden, std::size_t input, Rng& rng);

enum class RunMode { train, infer };

// Everything the backward pass needs, cached per step.
struct StepTrace {
    std::vector<Vec> h, c;                    // per layer
    std::vector<Vec> gi, gf, go, gg;          // gate activations per layer
    std::vector<Vec> layer_in;                // masked input actually fed to each layer
    std::vector<Vec> mask_in;                 // dropout masks (empty rows when inactive)
    Vec a;                                    // attention used at this step (K)
    Vec x;                                    // attended input before masking (N)
    Vec cls_mask;                             // classifier input mask (empty when inactive)
    Vec cls_in;                               // masked h_top fed to the classifier
    Vec cls_hidden;                           // sigmoid hidden activations
    Vec y_hat;                                // class probabilities (2)
};

struct ForwardTrace {
    Vec m;                           // mean input vector (N)
    std::vector<Vec> init_fc_hidden; // tanh hidden of f_c per layer
    std::vector<Vec> init_fh_hidden; // tanh hidden of f_h per layer
    std::vector<Vec> h0, c0;         // per layer
    std::vector<StepTrace> steps;
    Vec a_end;                       // a_{tau+1}, computed but unused by the loss
    bool train_mode = false;
    double dropout_rate = 0.0;
};

// Single LSTM step; exposed for unit-level gradient checks.
void lstm_step(const LstmLayerParams& p, const Vec& x, const Vec& h_prev, const Vec& c_prev,
               Vec& h_out, Vec& c_out, Vec* gi = nullptr, Vec* gf = nullptr, Vec* go = nullptr,
               Vec* gg = nullptr);

Vec location_softmax(const AttentionParams& att, const Vec& h_top);

// x = sum_i a[i] * d[i,:]
Vec attend(const Vec& a, const Mat& d);

Vec mlp_forward(const Mlp& mlp, const Vec& in, Vec* hidden_out = nullptr);

// Mean over steps and rows of the input matrices (the N-vector feeding the
// init MLPs).
Vec mean_input_vector(const FeatureSequence& seq);

// Full unrolled forward pass. In train mode fresh dropout masks are drawn
// from rng for every non-recurrent connection (layer inputs and the
// classifier input); recurrent paths and peepholes are never masked.
ForwardTrace forward_event(const Model& m, const FeatureSequence& seq, RunMode mode,
                           Rng* rng = nullptr, double dropout_rate = 0.0);

struct Prediction {
    int label;     // 1 iff score >= 0.5 (ties flag as rumor)
    double score;  // P(rumor) at the final step
};

Prediction predict(const Model& m, const FeatureSequence& seq);

struct BaselineTrace {
    std::vector<Vec> x;      // uniform-attention inputs
    std::vector<Vec> mask;   // dropout masks on x (empty when inactive)
    std::vector<Vec> h_pre;  // masked inputs actually used
    std::vector<Vec> h;
    std::vector<Vec> y_hat;
};

// Eq.-style vanilla RNN with fixed uniform attention (row mean) as input.
BaselineTrace baseline_rnn_forward(const BaselineRnnParams& p, const FeatureSequence& seq,
                                   RunMode mode = RunMode::infer, Rng* rng = nullptr,
                                   double dropout_rate = 0.0);

Prediction baseline_predict(const BaselineRnnParams& p, const FeatureSequence& seq);

}  // namespace erd
