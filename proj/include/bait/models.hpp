#pragma once

#include <vector>

#include "bait/embedding.hpp"

namespace bait {

enum class ModelKind { SoftmaxClassifier, LeastSquares };

struct TrainOptions {
    double step_size = 0.1;
    int max_iterations = 2000;
    double tolerance = 1e-6;  // on the Frobenius norm of the mean gradient
};

/// Linear model W (k x d) used by the simulation loop. Classification is a
/// softmax over W x trained by full-batch gradient descent on the mean
/// cross-entropy (zero initialization, backtracking halving on any loss
/// increase); regression is the closed-form least-squares solution with a
/// tiny ridge for rank deficiency.
struct LinearModel {
    Matrix w;
    ModelKind kind = ModelKind::SoftmaxClassifier;
    TrainOptions options;

    int k() const { return static_cast<int>(w.rows()); }
    int d() const { return static_cast<int>(w.cols()); }
};

/// Trains a k-class softmax classifier from scratch. Labels in 0..k-1.
LinearModel fit_softmax(int k, const Matrix& x, const std::vector<int>& labels,
                        TrainOptions options = {});

/// Exact multi-output least squares with ridge 1e-8.
LinearModel fit_least_squares(const Matrix& x, const Matrix& targets,
                              TrainOptions options = {});

/// Raw linear outputs X W^T.
Matrix predict(const LinearModel& model, const Matrix& x);

/// Softmax probabilities with max-logit subtraction. Classifier only.
ClassProbabilities predict_proba(const LinearModel& model, const Matrix& x);

/// Fraction of rows whose argmax output matches the label. Works for the
/// classifier and for one-hot regression alike.
double evaluate_accuracy(const LinearModel& model, const Matrix& x,
                         const std::vector<int>& labels);

/// Mean squared error over all outputs.
double evaluate_mse(const LinearModel& model, const Matrix& x,
                    const Matrix& targets);

/// Mean cross-entropy of the softmax model; exposed for the trainer and its
/// finite-difference checks.
double softmax_loss(const Matrix& w, const Matrix& x,
                    const std::vector<int>& labels);
Matrix softmax_gradient(const Matrix& w, const Matrix& x,
                        const std::vector<int>& labels);

}  // namespace bait
