#pragma once

#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "gral/dense.hpp"
#include "gral/error.hpp"
#include "gral/rng.hpp"
#include "gral/sparse.hpp"

namespace gral {

/// Learnable weights of the two-layer graph convolution.
struct GcnParams {
    DenseMatrix w1;  ///< F x H
    DenseMatrix w2;  ///< H x C

    static GcnParams glorot(int num_features, int hidden_dim, int num_classes, Rng& rng) {
        GcnParams p;
        p.w1 = DenseMatrix::glorot(num_features, hidden_dim, rng);
        p.w2 = DenseMatrix::glorot(hidden_dim, num_classes, rng);
        return p;
    }
};

/// Cached artifacts of one forward pass.
struct ModelOutput {
    DenseMatrix hidden;  ///< N x H, post-activation first layer
    DenseMatrix logits;  ///< N x C
    DenseMatrix probs;   ///< N x C, rows sum to 1
};

/// Dropout configuration for one forward/backward call. rate == 0 is
/// evaluation mode; otherwise masks are drawn deterministically from `seed`.
struct Dropout {
    double rate = 0.0;
    std::uint64_t seed = 0;

    static Dropout eval() { return {}; }
};

/// Row-wise softmax with max subtraction.
inline DenseMatrix row_softmax(const DenseMatrix& logits) {
    DenseMatrix p(logits.rows(), logits.cols());
    for (int i = 0; i < logits.rows(); ++i) {
        const double* zi = logits.row(i);
        double* pi = p.row(i);
        double zmax = zi[0];
        for (int c = 1; c < logits.cols(); ++c) zmax = std::max(zmax, zi[c]);
        double sum = 0.0;
        for (int c = 0; c < logits.cols(); ++c) {
            pi[c] = std::exp(zi[c] - zmax);
            sum += pi[c];
        }
        for (int c = 0; c < logits.cols(); ++c) pi[c] /= sum;
    }
    return p;
}

namespace detail {

struct GcnTape {
    std::vector<double> x_values;  // dropout-scaled feature values (empty in eval mode)
    DenseMatrix hidden;            // relu(A~ X W1), before hidden dropout
    DenseMatrix hidden_mask;       // dropout scale factors, 0 or 1/(1-p)
    DenseMatrix hidden_dropped;    // hidden after dropout (aliases hidden in eval mode)
    DenseMatrix logits;
    DenseMatrix probs;
};

inline void check_gcn_shapes(const GcnParams& p, const CsrMatrix& a_norm, const CsrMatrix& x) {
    if (a_norm.rows != a_norm.cols || a_norm.rows != x.rows)
        throw DimensionError("gcn: filter and feature row counts differ");
    if (p.w1.rows() != x.cols) throw DimensionError("gcn: W1 rows != feature dim");
    if (p.w2.rows() != p.w1.cols()) throw DimensionError("gcn: W2 rows != W1 cols");
}

inline GcnTape gcn_forward_tape(const GcnParams& p, const CsrMatrix& a_norm, const CsrMatrix& x,
                                const Dropout& dropout) {
    check_gcn_shapes(p, a_norm, x);
    GcnTape t;
    const bool training = dropout.rate > 0.0;
    Rng rng(derive_seed(dropout.seed, 0x6d61736bULL));
    const double keep_scale = training ? 1.0 / (1.0 - dropout.rate) : 1.0;

    const double* xvals = nullptr;
    if (training) {
        t.x_values.resize(x.nnz());
        for (std::size_t k = 0; k < x.nnz(); ++k)
            t.x_values[k] = rng.uniform() < dropout.rate ? 0.0 : x.values[k] * keep_scale;
        xvals = t.x_values.data();
    }

    DenseMatrix xw = csr_times_dense(x, p.w1, xvals);
    t.hidden = csr_times_dense(a_norm, xw);
    for (double& v : t.hidden.data()) v = v > 0.0 ? v : 0.0;  // relu

    if (training) {
        t.hidden_mask = DenseMatrix(t.hidden.rows(), t.hidden.cols());
        t.hidden_dropped = t.hidden;
        for (std::size_t k = 0; k < t.hidden.data().size(); ++k) {
            const double scale = rng.uniform() < dropout.rate ? 0.0 : keep_scale;
            t.hidden_mask.data()[k] = scale;
            t.hidden_dropped.data()[k] *= scale;
        }
    } else {
        t.hidden_dropped = t.hidden;
    }

    t.logits = csr_times_dense(a_norm, matmul(t.hidden_dropped, p.w2));
    t.probs = row_softmax(t.logits);
    return t;
}

}  // namespace detail

/// Two-layer graph convolution: hidden = relu(A~ X W1), logits = A~ hidden W2,
/// probs = row-softmax(logits). Dropout is applied to the features and the
/// hidden layer in training mode only.
inline ModelOutput gcn_forward(const GcnParams& p, const CsrMatrix& a_norm, const CsrMatrix& x,
                               const Dropout& dropout = Dropout::eval()) {
    detail::GcnTape t = detail::gcn_forward_tape(p, a_norm, x, dropout);
    return {std::move(t.hidden), std::move(t.logits), std::move(t.probs)};
}

/// Mean cross-entropy over the labeled nodes plus (weight_decay/2)*||W1||^2.
/// Uses log-sum-exp so the loss is finite whenever the parameters are.
inline double gcn_loss(const DenseMatrix& logits, const std::vector<int>& labeled,
                       const std::vector<int>& labels, double weight_decay,
                       const GcnParams& params) {
    check(!labeled.empty(), "gcn_loss: labeled set is empty");
    double total = 0.0;
    for (int i : labeled) {
        const double* zi = logits.row(i);
        double zmax = zi[0];
        for (int c = 1; c < logits.cols(); ++c) zmax = std::max(zmax, zi[c]);
        double sum = 0.0;
        for (int c = 0; c < logits.cols(); ++c) sum += std::exp(zi[c] - zmax);
        total += zmax + std::log(sum) - zi[labels[i]];
    }
    return total / static_cast<double>(labeled.size()) +
           0.5 * weight_decay * squared_norm(params.w1);
}

/// Analytic gradients of gcn_loss with respect to W1 and W2. The dropout
/// mask is a deterministic function of dropout.seed, so repeated calls with
/// identical arguments differentiate the same perturbed network.
inline std::pair<double, GcnParams> gcn_loss_and_grads(const GcnParams& p, const CsrMatrix& a_norm,
                                                       const CsrMatrix& x,
                                                       const std::vector<int>& labeled,
                                                       const std::vector<int>& labels,
                                                       double weight_decay,
                                                       const Dropout& dropout = Dropout::eval()) {
    check(!labeled.empty(), "gcn_loss_and_grads: labeled set is empty");
    detail::GcnTape t = detail::gcn_forward_tape(p, a_norm, x, dropout);
    const int num_classes = p.w2.cols();
    const double inv = 1.0 / static_cast<double>(labeled.size());

    const double loss = gcn_loss(t.logits, labeled, labels, weight_decay, p);

    DenseMatrix dlogits(t.logits.rows(), num_classes);
    for (int i : labeled) {
        const double* pi = t.probs.row(i);
        double* di = dlogits.row(i);
        for (int c = 0; c < num_classes; ++c) di[c] = pi[c] * inv;
        di[labels[i]] -= inv;
    }

    // logits = A~ (H' W2); A~ is symmetric so A~^T = A~.
    DenseMatrix g2 = csr_times_dense(a_norm, dlogits);       // N x C
    GcnParams grads;
    grads.w2 = matmul_at_b(t.hidden_dropped, g2);            // H x C

    // dH' = g2 W2^T, then undo dropout and relu.
    DenseMatrix dhidden(t.hidden.rows(), t.hidden.cols());
    for (int i = 0; i < dhidden.rows(); ++i) {
        const double* g2i = g2.row(i);
        double* dhi = dhidden.row(i);
        for (int h = 0; h < dhidden.cols(); ++h) {
            double s = 0.0;
            const double* w2h = p.w2.row(h);
            for (int c = 0; c < num_classes; ++c) s += g2i[c] * w2h[c];
            dhi[h] = s;
        }
    }
    if (dropout.rate > 0.0)
        for (std::size_t k = 0; k < dhidden.data().size(); ++k)
            dhidden.data()[k] *= t.hidden_mask.data()[k];
    for (std::size_t k = 0; k < dhidden.data().size(); ++k)
        if (t.hidden.data()[k] <= 0.0) dhidden.data()[k] = 0.0;

    DenseMatrix g1 = csr_times_dense(a_norm, dhidden);  // N x H
    grads.w1 = csr_transpose_times_dense(x, g1, t.x_values.empty() ? nullptr : t.x_values.data());
    for (std::size_t k = 0; k < grads.w1.data().size(); ++k)
        grads.w1.data()[k] += weight_decay * p.w1.data()[k];

    return {loss, std::move(grads)};
}

}  // namespace gral
