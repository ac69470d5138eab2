#include "erd/numerics.hpp"

#include <algorithm>
#include <cmath>

namespace erd {

double sigmoid(double x) {
    // Split on sign so exp never overflows.
    if (x >= 0.0) {
        return 1.0 / (1.0 + std::exp(-x));
    }
    const double e = std::exp(x);
    return e / (1.0 + e);
}

double tanh_act(double x) { return std::tanh(x); }

Vec softmax(const Vec& logits) {
    if (logits.empty()) throw ArgumentError("softmax: empty input");
    const double mx = *std::max_element(logits.begin(), logits.end());
    Vec out(logits.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < logits.size(); ++i) {
        out[i] = std::exp(logits[i] - mx);
        sum += out[i];
    }
    for (double& v : out) v /= sum;
    return out;
}

std::uint64_t Rng::uniform_int(std::uint64_t n) {
    if (n == 0) return 0;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
        x = next_u64();
    } while (x >= limit);
    return x % n;
}

Vec dropout_mask_vec(Rng& rng, std::size_t n, double rate) {
    if (rate < 0.0 || rate >= 1.0)
        throw ArgumentError("dropout rate must be in [0,1), got " + std::to_string(rate));
    Vec mask(n, 1.0);
    if (rate == 0.0) return mask;
    const double keep_scale = 1.0 / (1.0 - rate);
    for (double& m : mask) m = rng.bernoulli(rate) ? 0.0 : keep_scale;
    return mask;
}

Mat dropout_mask(Rng& rng, std::size_t rows, std::size_t cols, double rate) {
    if (rate < 0.0 || rate >= 1.0)
        throw ArgumentError("dropout rate must be in [0,1), got " + std::to_string(rate));
    Mat mask(rows, cols, 1.0);
    if (rate == 0.0) return mask;
    const double keep_scale = 1.0 / (1.0 - rate);
    for (std::size_t i = 0; i < rows * cols; ++i)
        mask.data()[i] = rng.bernoulli(rate) ? 0.0 : keep_scale;
    return mask;
}

Vec finite_diff_grad(const std::function<double(const Vec&)>& f, const Vec& theta, double h) {
    if (h <= 0.0) throw ArgumentError("finite_diff_grad: h must be positive");
    Vec grad(theta.size());
    Vec probe = theta;
    for (std::size_t i = 0; i < theta.size(); ++i) {
        probe[i] = theta[i] + h;
        const double fp = f(probe);
        probe[i] = theta[i] - h;
        const double fm = f(probe);
        probe[i] = theta[i];
        if (!std::isfinite(fp) || !std::isfinite(fm))
            throw NumericError("finite_diff_grad: non-finite value at coordinate " + std::to_string(i));
        grad[i] = (fp - fm) / (2.0 * h);
    }
    return grad;
}

}  // namespace erd
