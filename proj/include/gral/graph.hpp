#pragma once

#include <cmath>
#include <vector>

#include "gral/dense.hpp"
#include "gral/error.hpp"
#include "gral/sparse.hpp"

namespace gral {

/// Immutable attributed graph: symmetric binary adjacency without stored
/// self-loops, dense node features, and one class label per node.
struct Graph {
    int num_nodes = 0;
    int num_classes = 0;
    int num_features = 0;
    DenseMatrix features;        ///< N x F
    std::vector<int> labels;     ///< class index in [0, num_classes)
    CsrMatrix adjacency;         ///< N x N, values all 1, no diagonal
    CsrMatrix feature_rows;      ///< CSR view of `features`, kept for sparse kernels

    std::size_t num_edges() const { return adjacency.nnz() / 2; }

    void validate() const {
        check(num_nodes >= 0 && num_classes >= 1, "graph: bad dimensions");
        check(features.rows() == num_nodes && features.cols() == num_features,
              "graph: feature shape mismatch");
        check(static_cast<int>(labels.size()) == num_nodes, "graph: label length mismatch");
        for (int y : labels) check(y >= 0 && y < num_classes, "graph: label out of range");
        check(features.all_finite(), "graph: non-finite feature");
        adjacency.validate();
        check(adjacency.rows == num_nodes && adjacency.cols == num_nodes,
              "graph: adjacency shape mismatch");
        for (int i = 0; i < num_nodes; ++i) {
            for (std::size_t k = adjacency.row_ptr[i]; k < adjacency.row_ptr[i + 1]; ++k) {
                check(adjacency.values[k] == 1.0, "graph: adjacency weight must be 1");
                check(adjacency.col_idx[k] != i, "graph: stored self-loop");
                check(adjacency.at(adjacency.col_idx[k], i) == 1.0, "graph: adjacency not symmetric");
            }
        }
    }

    /// Rebuilds the CSR view of `features`; call after constructing by hand.
    void rebuild_feature_rows() {
        feature_rows.rows = num_nodes;
        feature_rows.cols = num_features;
        feature_rows.row_ptr.assign(static_cast<std::size_t>(num_nodes) + 1, 0);
        feature_rows.col_idx.clear();
        feature_rows.values.clear();
        for (int i = 0; i < num_nodes; ++i) {
            for (int j = 0; j < num_features; ++j) {
                const double v = features(i, j);
                if (v != 0.0) {
                    feature_rows.col_idx.push_back(j);
                    feature_rows.values.push_back(v);
                }
            }
            feature_rows.row_ptr[static_cast<std::size_t>(i) + 1] = feature_rows.values.size();
        }
    }
};

/// Renormalized convolution filter D^{-1/2} (A + I) D^{-1/2} where degrees
/// include the added self-loop. Isolated nodes get a 1.0 diagonal entry.
inline CsrMatrix normalize_adjacency(const Graph& g) {
    const CsrMatrix& a = g.adjacency;
    const int n = g.num_nodes;
    std::vector<double> inv_sqrt_deg(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double d = static_cast<double>(a.row_ptr[i + 1] - a.row_ptr[i]) + 1.0;
        inv_sqrt_deg[i] = 1.0 / std::sqrt(d);
    }
    CsrMatrix m;
    m.rows = n;
    m.cols = n;
    m.row_ptr.assign(static_cast<std::size_t>(n) + 1, 0);
    for (int i = 0; i < n; ++i) {
        bool diag_emitted = false;
        for (std::size_t k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k) {
            const int j = a.col_idx[k];
            if (!diag_emitted && j > i) {
                m.col_idx.push_back(i);
                m.values.push_back(inv_sqrt_deg[i] * inv_sqrt_deg[i]);
                diag_emitted = true;
            }
            m.col_idx.push_back(j);
            m.values.push_back(inv_sqrt_deg[i] * inv_sqrt_deg[j]);
        }
        if (!diag_emitted) {
            m.col_idx.push_back(i);
            m.values.push_back(inv_sqrt_deg[i] * inv_sqrt_deg[i]);
        }
        m.row_ptr[static_cast<std::size_t>(i) + 1] = m.values.size();
    }
    return m;
}

/// A^2 over the raw adjacency: entry (i, j) counts shared neighbors,
/// diagonal (i, i) equals deg(i). No self-loops are added first.
inline CsrMatrix second_order_matrix(const Graph& g) {
    return csr_square_product(g.adjacency, g.adjacency);
}

/// Fraction of undirected edges whose endpoints share a class.
inline double homophily_ratio(const Graph& g) {
    const CsrMatrix& a = g.adjacency;
    std::size_t edges = 0, same = 0;
    for (int i = 0; i < g.num_nodes; ++i) {
        for (std::size_t k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k) {
            const int j = a.col_idx[k];
            if (j <= i) continue;  // count each undirected edge once
            ++edges;
            if (g.labels[i] == g.labels[j]) ++same;
        }
    }
    if (edges == 0) throw UndefinedStatistic("homophily_ratio: graph has no edges");
    return static_cast<double>(same) / static_cast<double>(edges);
}

}  // namespace gral
