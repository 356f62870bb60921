#pragma once

#include <Eigen/Dense>
#include <optional>

#include "bait/errors.hpp"

namespace bait {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Largest d*k for which the dense (dk)x(dk) global Fisher is materialized.
// Memory is O((dk)^2); 4096 keeps that at ~134 MB of doubles.
inline constexpr int kMaxInfoDim = 4096;

// Floor applied to predictive probabilities before renormalization. Keeps
// near-one-hot rows from producing zero-scaled factor columns and NaNs in
// downstream inverses.
inline constexpr double kProbFloor = 1e-12;

/// Pool of candidate feature vectors, one candidate per row. Row order is
/// the canonical candidate order: every tie-break in the library resolves
/// to the lowest row index. Immutable after construction.
struct EmbeddingPool {
    Matrix data;  // n x d

    int n() const { return static_cast<int>(data.rows()); }
    int d() const { return static_cast<int>(data.cols()); }
};

/// Per-candidate predictive distributions, one row per candidate.
/// Rows are clipped to [kProbFloor, 1] and renormalized on construction.
struct ClassProbabilities {
    Matrix probs;  // n x k

    int n() const { return static_cast<int>(probs.rows()); }
    int k() const { return static_cast<int>(probs.cols()); }
};

/// Low-rank factor V of a candidate's pointwise Fisher information:
/// V V^T = x x^T (x) (diag(pi) - pi pi^T), a (d*k) x k matrix whose column
/// i is sqrt(pi_i) * (x (x) (pi - e_i)). Kronecker layout is fixed: the
/// class index varies fastest within each feature block, i.e. vector slot
/// (f, c) lives at index f*k + c.
struct FisherFactor {
    Matrix factor;  // (d*k) x k
    int owner = -1;
};

enum class InfoLayout { Classification, Regression };

/// Dense symmetric PSD information matrix; (d*k)^2 in classification
/// layout, d^2 on the regression fast path.
struct InfoMatrix {
    Matrix mat;
    InfoLayout layout = InfoLayout::Regression;

    int dim() const { return static_cast<int>(mat.rows()); }
};

/// Clips entries to [kProbFloor, 1] and renormalizes to sum 1.
Vector clip_probabilities(Vector pi);

/// Validates and normalizes a raw n x k probability matrix.
ClassProbabilities make_class_probabilities(Matrix probs);

/// Validates a raw feature matrix (finite entries, n,d >= 1).
EmbeddingPool make_embedding_pool(Matrix data);

/// k x k mixing matrix W with column i = sqrt(pi_i) * (pi - e_i), so the
/// Fisher factor of x is x (x) W. Expects an already clipped/normalized pi.
Matrix classification_mixer(const Vector& pi);

/// Fisher factor of one candidate under a k-class softmax model.
FisherFactor fisher_factor_classification(const Vector& x, const Vector& pi,
                                          int owner = -1);

/// Pointwise regression information x x^T. The noise-covariance Kronecker
/// factor is dropped: it cancels in the selection objective, so only the
/// d x d part is stored.
InfoMatrix fisher_pointwise_regression(const Vector& x);

/// Pool-averaged Fisher (1/n) * sum_i I(x_i). Classification when probs is
/// present, regression otherwise.
InfoMatrix global_fisher(const EmbeddingPool& pool,
                         const ClassProbabilities* probs);

}  // namespace bait
