#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "gral/dense.hpp"
#include "gral/error.hpp"

namespace gral {

/// Compressed-row sparse matrix. Column indices are strictly increasing
/// within each row; values are finite and aligned with col_idx.
struct CsrMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<std::size_t> row_ptr{0};
    std::vector<int> col_idx;
    std::vector<double> values;

    std::size_t nnz() const { return values.size(); }

    void validate() const {
        check(static_cast<int>(row_ptr.size()) == rows + 1, "csr: row_ptr length");
        check(row_ptr.front() == 0 && row_ptr.back() == values.size(), "csr: row_ptr bounds");
        check(col_idx.size() == values.size(), "csr: col/value length mismatch");
        for (int i = 0; i < rows; ++i) {
            check(row_ptr[i] <= row_ptr[i + 1], "csr: row_ptr not monotone");
            for (std::size_t k = row_ptr[i]; k < row_ptr[i + 1]; ++k) {
                check(col_idx[k] >= 0 && col_idx[k] < cols, "csr: column out of range");
                if (k > row_ptr[i]) check(col_idx[k - 1] < col_idx[k], "csr: columns not increasing");
                check(std::isfinite(values[k]), "csr: non-finite value");
            }
        }
    }

    /// Value at (i, j), or 0 if not stored.
    double at(int i, int j) const {
        const auto begin = col_idx.begin() + static_cast<std::ptrdiff_t>(row_ptr[i]);
        const auto end = col_idx.begin() + static_cast<std::ptrdiff_t>(row_ptr[i + 1]);
        auto it = std::lower_bound(begin, end, j);
        if (it == end || *it != j) return 0.0;
        return values[static_cast<std::size_t>(it - col_idx.begin())];
    }

    DenseMatrix to_dense() const {
        DenseMatrix d(rows, cols);
        for (int i = 0; i < rows; ++i)
            for (std::size_t k = row_ptr[i]; k < row_ptr[i + 1]; ++k) d(i, col_idx[k]) += values[k];
        return d;
    }
};

/// Builds a CSR matrix from (row, col, value) triplets; duplicates are summed.
inline CsrMatrix csr_from_triplets(int rows, int cols,
                                   std::vector<std::pair<std::pair<int, int>, double>> entries) {
    std::sort(entries.begin(), entries.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    CsrMatrix m;
    m.rows = rows;
    m.cols = cols;
    m.row_ptr.assign(static_cast<std::size_t>(rows) + 1, 0);
    for (std::size_t k = 0; k < entries.size();) {
        const auto key = entries[k].first;
        double sum = 0.0;
        while (k < entries.size() && entries[k].first == key) sum += entries[k++].second;
        m.col_idx.push_back(key.second);
        m.values.push_back(sum);
        m.row_ptr[static_cast<std::size_t>(key.first) + 1]++;
    }
    for (int i = 0; i < rows; ++i) m.row_ptr[i + 1] += m.row_ptr[i];
    return m;
}

/// Y = A * X with dense X. `values` overrides a.values when non-null
/// (used for dropout-masked copies that share the sparsity pattern).
inline DenseMatrix csr_times_dense(const CsrMatrix& a, const DenseMatrix& x,
                                   const double* values = nullptr) {
    check(a.cols == x.rows(), "csr_times_dense: inner dimensions differ");
    if (!values) values = a.values.data();
    DenseMatrix y(a.rows, x.cols());
    for (int i = 0; i < a.rows; ++i) {
        double* yi = y.row(i);
        for (std::size_t k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k) {
            const double v = values[k];
            const double* xj = x.row(a.col_idx[k]);
            for (int c = 0; c < x.cols(); ++c) yi[c] += v * xj[c];
        }
    }
    return y;
}

/// Y = A^T * X via row scatter; A is N x F, X is N x K, Y is F x K.
inline DenseMatrix csr_transpose_times_dense(const CsrMatrix& a, const DenseMatrix& x,
                                             const double* values = nullptr) {
    check(a.rows == x.rows(), "csr_transpose_times_dense: row counts differ");
    if (!values) values = a.values.data();
    DenseMatrix y(a.cols, x.cols());
    for (int i = 0; i < a.rows; ++i) {
        const double* xi = x.row(i);
        for (std::size_t k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k) {
            double* yj = y.row(a.col_idx[k]);
            const double v = values[k];
            for (int c = 0; c < x.cols(); ++c) yj[c] += v * xi[c];
        }
    }
    return y;
}

/// C = A * B for square CSR operands, using a dense row accumulator.
inline CsrMatrix csr_square_product(const CsrMatrix& a, const CsrMatrix& b) {
    check(a.cols == b.rows, "csr_square_product: inner dimensions differ");
    CsrMatrix c;
    c.rows = a.rows;
    c.cols = b.cols;
    c.row_ptr.assign(static_cast<std::size_t>(a.rows) + 1, 0);
    std::vector<double> acc(static_cast<std::size_t>(b.cols), 0.0);
    std::vector<int> mark(static_cast<std::size_t>(b.cols), -1);
    std::vector<int> touched;
    for (int i = 0; i < a.rows; ++i) {
        touched.clear();
        for (std::size_t ka = a.row_ptr[i]; ka < a.row_ptr[i + 1]; ++ka) {
            const int j = a.col_idx[ka];
            const double av = a.values[ka];
            for (std::size_t kb = b.row_ptr[j]; kb < b.row_ptr[j + 1]; ++kb) {
                const int col = b.col_idx[kb];
                if (mark[col] != i) {
                    mark[col] = i;
                    acc[col] = 0.0;
                    touched.push_back(col);
                }
                acc[col] += av * b.values[kb];
            }
        }
        std::sort(touched.begin(), touched.end());
        for (int col : touched) {
            c.col_idx.push_back(col);
            c.values.push_back(acc[col]);
        }
        c.row_ptr[static_cast<std::size_t>(i) + 1] = c.values.size();
    }
    return c;
}

}  // namespace gral
