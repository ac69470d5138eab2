#include "erd/mat.hpp"

#include <cmath>

namespace erd {

Mat Mat::from_rows(const std::vector<Vec>& rows) {
    if (rows.empty()) return Mat();
    Mat m(rows.size(), rows[0].size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != m.cols())
            throw ShapeError("from_rows: ragged input at row " + std::to_string(r));
        for (std::size_t c = 0; c < m.cols(); ++c) m.at(r, c) = rows[r][c];
    }
    return m;
}

bool Mat::all_finite() const {
    for (double v : data_)
        if (!std::isfinite(v)) return false;
    return true;
}

std::string shape_str(const Mat& m) {
    return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

Mat matmul(const Mat& a, const Mat& b) {
    if (a.cols() != b.rows())
        throw ShapeError("matmul: incompatible shapes " + shape_str(a) + " * " + shape_str(b));
    Mat c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        const double* arow = a.row_ptr(i);
        double* crow = c.row_ptr(i);
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = arow[k];
            if (aik == 0.0) continue;
            const double* brow = b.row_ptr(k);
            for (std::size_t j = 0; j < b.cols(); ++j) crow[j] += aik * brow[j];
        }
    }
    return c;
}

void gemv_add(const Mat& a, const Vec& x, Vec& y) {
    if (a.cols() != x.size() || a.rows() != y.size())
        throw ShapeError("gemv: " + shape_str(a) + " * vec" + std::to_string(x.size()) +
                         " -> vec" + std::to_string(y.size()));
    for (std::size_t r = 0; r < a.rows(); ++r) {
        const double* row = a.row_ptr(r);
        double acc = 0.0;
        for (std::size_t c = 0; c < a.cols(); ++c) acc += row[c] * x[c];
        y[r] += acc;
    }
}

void gemv_t_add(const Mat& a, const Vec& y, Vec& x) {
    if (a.rows() != y.size() || a.cols() != x.size())
        throw ShapeError("gemv_t: " + shape_str(a) + "^T * vec" + std::to_string(y.size()) +
                         " -> vec" + std::to_string(x.size()));
    for (std::size_t r = 0; r < a.rows(); ++r) {
        const double yr = y[r];
        if (yr == 0.0) continue;
        const double* row = a.row_ptr(r);
        for (std::size_t c = 0; c < a.cols(); ++c) x[c] += yr * row[c];
    }
}

void ger_add(Mat& a, const Vec& y, const Vec& x) {
    if (a.rows() != y.size() || a.cols() != x.size())
        throw ShapeError("ger: " + shape_str(a) + " += vec" + std::to_string(y.size()) +
                         " * vec" + std::to_string(x.size()) + "^T");
    for (std::size_t r = 0; r < a.rows(); ++r) {
        const double yr = y[r];
        if (yr == 0.0) continue;
        double* row = a.row_ptr(r);
        for (std::size_t c = 0; c < a.cols(); ++c) row[c] += yr * x[c];
    }
}

double dot(const Vec& a, const Vec& b) {
    if (a.size() != b.size())
        throw ShapeError("dot: vec" + std::to_string(a.size()) + " . vec" + std::to_string(b.size()));
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

void axpy(double s, const Vec& x, Vec& y) {
    if (x.size() != y.size())
        throw ShapeError("axpy: vec" + std::to_string(x.size()) + " -> vec" + std::to_string(y.size()));
    for (std::size_t i = 0; i < x.size(); ++i) y[i] += s * x[i];
}

}  // namespace erd
