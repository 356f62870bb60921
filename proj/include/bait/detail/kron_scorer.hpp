#pragma once

#include <vector>

#include "bait/embedding.hpp"

namespace bait::detail {

inline constexpr double kScoreJitter = 1e-8;
inline constexpr double kScoreCondLimit = 1e12;

// tr(b * a^{-1}) for symmetric a, b. When a is numerically singular
// (non-positive or condition number above kScoreCondLimit), adds
// kScoreJitter * I once and retries; returns false if it stays singular.
bool guarded_trace_ratio(Matrix a, const Matrix& b, double* out);

// Batched scorer for greedy selection over candidates whose update factors
// share the Kronecker form V_i = x_i (x) W_i, where x_i is row i of the
// candidate matrix and W_i is a k x r mixing matrix (classification:
// r = k, W from pi; regression fast path: k = r = 1, W = [1]; rank-one
// determinantal sampling: r = 1).
//
// Maintains M^{-1} and, when a trace target F is given, N = M^{-1} F M^{-1},
// plus per-candidate contractions
//   G_i = (x_i (x) I_k)^T M^{-1} (x_i (x) I_k)   (k x k)
//   H_i = (x_i (x) I_k)^T N     (x_i (x) I_k)   (k x k)
// so that each greedy step scores all candidates in O(k^3) apiece and each
// accepted update costs two skinny products against M^{-1} plus O(n d k r)
// for the contraction maintenance. Everything is rebuilt from scratch every
// refactor_interval updates to bound low-rank drift.
class KronScorer {
public:
    // mixers may be empty, meaning W_i = I_k for every candidate.
    // fisher_target may be null for determinant-only use.
    KronScorer(Matrix candidates, std::vector<Matrix> mixers, int k,
               Matrix m0, const Matrix* fisher_target, int refactor_interval);

    int n() const { return n_; }
    int factor_rank() const { return r_; }
    long update_count() const { return update_count_; }
    const Matrix& m() const { return m_; }
    const Matrix& m_inv() const { return m_inv_; }

    // Marginal gain tr(V^T M^-1 F M^-1 V (I + V^T M^-1 V)^-1); -inf and
    // *degenerate when the inner system stays singular after jitter.
    double trace_gain_add(int i, bool* degenerate = nullptr) const;

    // Objective increase from removal, +inf when M - V V^T would not be PD.
    double trace_cost_remove(int i, bool* degenerate = nullptr) const;

    // log det(I + V^T M^-1 V); non-negative for any PSD update.
    double logdet_gain_add(int i) const;

    // Current trace objective tr(M^-1 F).
    double objective() const;

    // Applies M <- M +/- V_i V_i^T and maintains all cached quantities.
    void update(int i, bool add);

    // Average of V_j V_j^T over the given rows, via per-class-pair slices.
    static Matrix averaged_outer(const Matrix& candidates,
                                 const std::vector<Matrix>& mixers, int k,
                                 const std::vector<int>& rows);

private:
    Matrix factor(int i) const;
    Matrix mixer_product(int i, const Matrix& inner) const;  // W^T inner W
    void rebuild_inverse();
    void rebuild_contraction(const Matrix& big, Matrix& out) const;
    Matrix contract_all(const Matrix& p) const;  // (k*r) x n

    Matrix x_;                    // n x d
    std::vector<Matrix> mixers_;  // empty => identity
    int n_ = 0, d_ = 0, k_ = 1, r_ = 1;
    bool has_target_ = false;
    Matrix f_;
    Matrix m_, m_inv_, nmat_;
    Matrix g_, h_;  // (k*k) x n, column i = vec of the k x k contraction
    long update_count_ = 0;
    int refactor_interval_ = 100;
};

}  // namespace bait::detail
