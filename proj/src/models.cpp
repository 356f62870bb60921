#include "bait/models.hpp"

#include <Eigen/Cholesky>
#include <cmath>
#include <string>

namespace bait {

namespace {

void check_labels(int k, Eigen::Index rows, const std::vector<int>& labels) {
    if (static_cast<Eigen::Index>(labels.size()) != rows) {
        throw ConfigError("labels and features disagree on sample count");
    }
    for (int y : labels) {
        if (y < 0 || y >= k) {
            throw ConfigError("label " + std::to_string(y) +
                              " outside 0.." + std::to_string(k - 1));
        }
    }
}

// Row-wise softmax of X W^T with max subtraction.
Matrix softmax_rows(const Matrix& logits) {
    Matrix p = logits;
    for (Eigen::Index i = 0; i < p.rows(); ++i) {
        const double mx = p.row(i).maxCoeff();
        p.row(i) = (p.row(i).array() - mx).exp();
        p.row(i) /= p.row(i).sum();
    }
    return p;
}

double loss_from_probs(const Matrix& probs, const std::vector<int>& labels) {
    double acc = 0.0;
    for (Eigen::Index i = 0; i < probs.rows(); ++i) {
        acc -= std::log(std::max(probs(i, labels[static_cast<std::size_t>(i)]),
                                 1e-300));
    }
    return acc / static_cast<double>(probs.rows());
}

}  // namespace

double softmax_loss(const Matrix& w, const Matrix& x,
                    const std::vector<int>& labels) {
    return loss_from_probs(softmax_rows(x * w.transpose()), labels);
}

Matrix softmax_gradient(const Matrix& w, const Matrix& x,
                        const std::vector<int>& labels) {
    const Matrix probs = softmax_rows(x * w.transpose());
    Matrix resid = probs;  // pi - e_y per row
    for (Eigen::Index i = 0; i < resid.rows(); ++i) {
        resid(i, labels[static_cast<std::size_t>(i)]) -= 1.0;
    }
    return resid.transpose() * x / static_cast<double>(x.rows());
}

LinearModel fit_softmax(int k, const Matrix& x, const std::vector<int>& labels,
                        TrainOptions options) {
    if (x.rows() < 1) throw ConfigError("fit: empty training set");
    if (k < 1) throw ConfigError("fit: need at least one class");
    check_labels(k, x.rows(), labels);

    LinearModel model;
    model.kind = ModelKind::SoftmaxClassifier;
    model.options = options;
    model.w = Matrix::Zero(k, x.cols());

    Matrix probs = softmax_rows(x * model.w.transpose());
    double loss = loss_from_probs(probs, labels);
    for (int iter = 0; iter < options.max_iterations; ++iter) {
        Matrix resid = probs;
        for (Eigen::Index i = 0; i < resid.rows(); ++i) {
            resid(i, labels[static_cast<std::size_t>(i)]) -= 1.0;
        }
        const Matrix grad = resid.transpose() * x /
                            static_cast<double>(x.rows());
        if (grad.norm() < options.tolerance) break;

        double step = options.step_size;
        bool accepted = false;
        for (int half = 0; half < 60; ++half) {
            const Matrix w_try = model.w - step * grad;
            Matrix probs_try = softmax_rows(x * w_try.transpose());
            const double loss_try = loss_from_probs(probs_try, labels);
            if (loss_try <= loss) {
                model.w = w_try;
                probs = std::move(probs_try);
                loss = loss_try;
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) break;  // no descent direction left at this scale
    }
    return model;
}

LinearModel fit_least_squares(const Matrix& x, const Matrix& targets,
                              TrainOptions options) {
    if (x.rows() < 1) throw ConfigError("fit: empty training set");
    if (targets.rows() != x.rows()) {
        throw ConfigError("fit: targets and features disagree on sample count");
    }
    LinearModel model;
    model.kind = ModelKind::LeastSquares;
    model.options = options;
    Matrix gram = x.transpose() * x;
    gram.diagonal().array() += 1e-8;
    const Eigen::LDLT<Matrix> ldlt(gram);
    if (ldlt.info() != Eigen::Success) {
        throw NumericalError("fit: least-squares system not solvable");
    }
    model.w = ldlt.solve(x.transpose() * targets).transpose();
    return model;
}

Matrix predict(const LinearModel& model, const Matrix& x) {
    if (x.cols() != model.d()) {
        throw ConfigError("predict: feature dimension mismatch");
    }
    return x * model.w.transpose();
}

ClassProbabilities predict_proba(const LinearModel& model, const Matrix& x) {
    if (model.kind != ModelKind::SoftmaxClassifier) {
        throw ConfigError("predict_proba: not a classifier");
    }
    return make_class_probabilities(softmax_rows(predict(model, x)));
}

double evaluate_accuracy(const LinearModel& model, const Matrix& x,
                         const std::vector<int>& labels) {
    check_labels(model.k(), x.rows(), labels);
    const Matrix out = predict(model, x);
    long correct = 0;
    for (Eigen::Index i = 0; i < out.rows(); ++i) {
        Eigen::Index argmax = 0;
        out.row(i).maxCoeff(&argmax);
        correct += argmax == labels[static_cast<std::size_t>(i)];
    }
    return static_cast<double>(correct) / static_cast<double>(out.rows());
}

double evaluate_mse(const LinearModel& model, const Matrix& x,
                    const Matrix& targets) {
    if (targets.rows() != x.rows() || targets.cols() != model.k()) {
        throw ConfigError("evaluate: target shape mismatch");
    }
    const Matrix out = predict(model, x);
    return (out - targets).squaredNorm() /
           static_cast<double>(out.rows() * out.cols());
}

}  // namespace bait
