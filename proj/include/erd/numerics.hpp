#pragma once

#include <functional>

#include "erd/mat.hpp"
#include "erd/rng.hpp"

namespace erd {

double sigmoid(double x);
// tanh comes from <cmath>; re-exported here so call sites read uniformly.
double tanh_act(double x);

// Numerically stable softmax (max subtraction). Output entries are in (0,1]
// and sum to 1 within 1e-12. Throws ArgumentError on empty input.
Vec softmax(const Vec& logits);

// Inverted dropout mask: entries are 0 with probability rate, else
// 1/(1-rate), so inference needs no rescaling. rate must be < 1.
Mat dropout_mask(Rng& rng, std::size_t rows, std::size_t cols, double rate);
Vec dropout_mask_vec(Rng& rng, std::size_t n, double rate);

// Central-difference gradient oracle: (f(x+h e_i) - f(x-h e_i)) / 2h.
// Propagates NumericError if f returns a non-finite value.
Vec finite_diff_grad(const std::function<double(const Vec&)>& f, const Vec& theta, double h);

}  // namespace erd
