#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "erd/errors.hpp"

namespace erd {

using Vec = std::vector<double>;

// Dense row-major matrix of 64-bit reals. All model arithmetic runs in
// double precision; see the gradient-check suite for why.
class Mat {
public:
    Mat() = default;
    Mat(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Mat from_rows(const std::vector<Vec>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t size() const { return data_.size(); }

    double& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    double* row_ptr(std::size_t r) { return data_.data() + r * cols_; }
    const double* row_ptr(std::size_t r) const { return data_.data() + r * cols_; }

    double* data() { return data_.data(); }
    const double* data() const { return data_.data(); }
    const std::vector<double>& values() const { return data_; }

    void fill(double v) { data_.assign(data_.size(), v); }
    bool all_finite() const;

    bool operator==(const Mat& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

std::string shape_str(const Mat& m);

// c = a * b. Throws ShapeError naming both shapes on mismatch.
Mat matmul(const Mat& a, const Mat& b);

// y += a * x  (a: H x D, x: D, y: H)
void gemv_add(const Mat& a, const Vec& x, Vec& y);

// x += a^T * y  (a: H x D, y: H, x: D)
void gemv_t_add(const Mat& a, const Vec& y, Vec& x);

// a += y * x^T  (outer-product accumulate; a: H x D, y: H, x: D)
void ger_add(Mat& a, const Vec& y, const Vec& x);

double dot(const Vec& a, const Vec& b);

// y += s * x
void axpy(double s, const Vec& x, Vec& y);

}  // namespace erd
