#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "gral/error.hpp"
#include "gral/rng.hpp"

namespace gral {

/// Row-major dense matrix of doubles.
class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(int rows, int cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, fill) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    double& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
    double operator()(int i, int j) const { return data_[static_cast<std::size_t>(i) * cols_ + j]; }

    double* row(int i) { return data_.data() + static_cast<std::size_t>(i) * cols_; }
    const double* row(int i) const { return data_.data() + static_cast<std::size_t>(i) * cols_; }

    std::vector<double>& data() { return data_; }
    const std::vector<double>& data() const { return data_; }

    bool all_finite() const {
        for (double v : data_)
            if (!std::isfinite(v)) return false;
        return true;
    }

    void fill(double v) { data_.assign(data_.size(), v); }

    /// Glorot-uniform initialization: U(-a, a), a = sqrt(6 / (fan_in + fan_out)).
    static DenseMatrix glorot(int rows, int cols, Rng& rng) {
        DenseMatrix m(rows, cols);
        const double a = std::sqrt(6.0 / (rows + cols));
        for (double& v : m.data_) v = (2.0 * rng.uniform() - 1.0) * a;
        return m;
    }

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<double> data_;
};

/// C = A * B for small dense operands.
inline DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b) {
    check(a.cols() == b.rows(), "matmul: inner dimensions differ");
    DenseMatrix c(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i) {
        double* ci = c.row(i);
        const double* ai = a.row(i);
        for (int k = 0; k < a.cols(); ++k) {
            const double aik = ai[k];
            if (aik == 0.0) continue;
            const double* bk = b.row(k);
            for (int j = 0; j < b.cols(); ++j) ci[j] += aik * bk[j];
        }
    }
    return c;
}

/// C = A^T * B where A and B share their row count.
inline DenseMatrix matmul_at_b(const DenseMatrix& a, const DenseMatrix& b) {
    check(a.rows() == b.rows(), "matmul_at_b: row counts differ");
    DenseMatrix c(a.cols(), b.cols());
    for (int i = 0; i < a.rows(); ++i) {
        const double* ai = a.row(i);
        const double* bi = b.row(i);
        for (int k = 0; k < a.cols(); ++k) {
            const double aik = ai[k];
            if (aik == 0.0) continue;
            double* ck = c.row(k);
            for (int j = 0; j < b.cols(); ++j) ck[j] += aik * bi[j];
        }
    }
    return c;
}

inline double squared_norm(const DenseMatrix& m) {
    double s = 0.0;
    for (double v : m.data()) s += v * v;
    return s;
}

}  // namespace gral
