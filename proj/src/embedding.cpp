#include "bait/embedding.hpp"

#include <cmath>
#include <string>

namespace bait {

namespace {

void require_finite(const Matrix& m, const char* what) {
    if (!m.allFinite()) {
        throw ConfigError(std::string(what) + ": non-finite entries");
    }
}

}  // namespace

Vector clip_probabilities(Vector pi) {
    if (pi.size() == 0) throw ConfigError("probability vector is empty");
    if (!pi.allFinite() || (pi.array() < 0.0).any()) {
        throw ConfigError("probability vector has invalid entries");
    }
    pi = pi.cwiseMax(kProbFloor).cwiseMin(1.0);
    pi /= pi.sum();
    return pi;
}

ClassProbabilities make_class_probabilities(Matrix probs) {
    if (probs.rows() < 1 || probs.cols() < 1) {
        throw ConfigError("probability matrix must be at least 1x1");
    }
    require_finite(probs, "probability matrix");
    for (Eigen::Index i = 0; i < probs.rows(); ++i) {
        probs.row(i) = clip_probabilities(probs.row(i).transpose()).transpose();
    }
    return ClassProbabilities{std::move(probs)};
}

EmbeddingPool make_embedding_pool(Matrix data) {
    if (data.rows() < 1 || data.cols() < 1) {
        throw ConfigError("embedding pool must be at least 1x1");
    }
    require_finite(data, "embedding pool");
    return EmbeddingPool{std::move(data)};
}

Matrix classification_mixer(const Vector& pi) {
    const int k = static_cast<int>(pi.size());
    Matrix w(k, k);
    for (int i = 0; i < k; ++i) {
        const double s = std::sqrt(pi[i]);
        for (int c = 0; c < k; ++c) {
            w(c, i) = s * (pi[c] - (c == i ? 1.0 : 0.0));
        }
    }
    return w;
}

FisherFactor fisher_factor_classification(const Vector& x, const Vector& pi,
                                          int owner) {
    if (!x.allFinite() || !pi.allFinite()) {
        throw ConfigError("fisher factor: non-finite input");
    }
    const int d = static_cast<int>(x.size());
    const int k = static_cast<int>(pi.size());
    if (d < 1 || k < 1) throw ConfigError("fisher factor: empty input");
    const Vector p = clip_probabilities(pi);

    // V[(f,c), i] = x_f * sqrt(p_i) * (p_c - [c == i])
    const Matrix w = classification_mixer(p);
    Matrix v(d * k, k);
    for (int f = 0; f < d; ++f) {
        v.block(f * k, 0, k, k) = x[f] * w;
    }
    return FisherFactor{std::move(v), owner};
}

InfoMatrix fisher_pointwise_regression(const Vector& x) {
    if (!x.allFinite()) throw ConfigError("regression fisher: non-finite input");
    if (x.size() < 1) throw ConfigError("regression fisher: empty input");
    return InfoMatrix{x * x.transpose(), InfoLayout::Regression};
}

InfoMatrix global_fisher(const EmbeddingPool& pool,
                         const ClassProbabilities* probs) {
    const int n = pool.n();
    const int d = pool.d();
    if (probs == nullptr) {
        // (1/n) sum x x^T == (1/n) X^T X
        Matrix m = pool.data.transpose() * pool.data / static_cast<double>(n);
        m = ((m + m.transpose()) * 0.5).eval();
        return InfoMatrix{std::move(m), InfoLayout::Regression};
    }
    if (probs->n() != n) {
        throw ConfigError("global_fisher: pool and probabilities disagree on n");
    }
    const int k = probs->k();
    if (static_cast<long>(d) * k > kMaxInfoDim) {
        throw ConfigError("global_fisher: d*k exceeds the supported cap of " +
                          std::to_string(kMaxInfoDim));
    }
    // (1/n) sum x x^T (x) (diag(pi) - pi pi^T). Accumulated one class pair
    // (c, c') at a time: that slice over features is X^T diag(w) X with
    // w_i = pi_ic ([c == c'] - pi_ic'), a single d x d product.
    Matrix m = Matrix::Zero(d * k, d * k);
    const Matrix& x = pool.data;
    const Matrix& p = probs->probs;
    Vector w(n);
    Matrix s(d, d);
    for (int c = 0; c < k; ++c) {
        for (int c2 = c; c2 < k; ++c2) {
            for (int i = 0; i < n; ++i) {
                w[i] = p(i, c) * ((c == c2 ? 1.0 : 0.0) - p(i, c2));
            }
            s.noalias() = x.transpose() * w.asDiagonal() * x;
            for (int f = 0; f < d; ++f) {
                for (int g = 0; g < d; ++g) {
                    m(f * k + c, g * k + c2) = s(f, g);
                    if (c2 != c) m(f * k + c2, g * k + c) = s(f, g);
                }
            }
        }
    }
    m /= static_cast<double>(n);
    m = ((m + m.transpose()) * 0.5).eval();
    return InfoMatrix{std::move(m), InfoLayout::Classification};
}

}  // namespace bait
