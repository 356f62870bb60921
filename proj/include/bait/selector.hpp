#pragma once

#include <vector>

#include "bait/embedding.hpp"

namespace bait {

enum class TaskMode { Classification, Regression };
enum class UpdateDirection { Add, Remove };

struct SelectionConfig {
    int batch_size = 1;
    int oversample_factor = 2;
    double lambda = 1.0;
    int refactor_interval = 100;
    TaskMode mode = TaskMode::Classification;
    // Forward-only greedy (skips the pruning phase).
    bool forward_only = false;
};

/// Greedy selection state: the regularized information matrix
/// M = lambda*I + (1/|S0|) sum_{x in S0} I(x) + sum_{selected} I(x)
/// together with its maintained inverse. The inverse is updated by low-rank
/// identities and recomputed from scratch every refactor_interval updates.
struct InfoState {
    Matrix m;
    Matrix m_inv;
    InfoMatrix fisher_target;
    std::vector<int> selected;
    long update_count = 0;
    double lambda = 1.0;
    int refactor_interval = 100;

    int dim() const { return static_cast<int>(m.rows()); }
};

/// Builds M0 = lambda*I + seed_average (seed_average optional) and inverts
/// it. Throws NumericalError if M0 is not positive definite.
InfoState make_info_state(int dim, double lambda, InfoMatrix fisher_target,
                          int refactor_interval = 100,
                          const Matrix* seed_average = nullptr);

/// Marginal decrease of tr(M^{-1} F) from adding the candidate's Fisher:
/// tr(V^T M^{-1} F M^{-1} V A^{-1}) with A = I + V^T M^{-1} V. Larger is
/// better. A candidate whose A stays numerically singular after one jitter
/// retry scores -inf and sets *degenerate.
double score_candidate(const InfoState& state, const FisherFactor& factor,
                       bool* degenerate = nullptr);

/// Rank-one fast path of score_candidate for regression candidates:
/// (x^T M^{-1} F M^{-1} x) / (1 + x^T M^{-1} x).
double score_candidate_regression(const InfoState& state, const Vector& x,
                                  bool* degenerate = nullptr);

/// Increase of tr(M^{-1} F) caused by removing a selected candidate:
/// tr(V^T M^{-1} F M^{-1} V A^{-1}) with A = I - V^T M^{-1} V. Smaller is
/// better for the backward pruning step. Returns +inf when A is not PD.
double removal_cost(const InfoState& state, const FisherFactor& factor,
                    bool* degenerate = nullptr);

/// Applies M <- M +/- V V^T, maintaining m_inv by the matching low-rank
/// inverse update and refactorizing on schedule. Removal that would leave M
/// non-PD is a hard error.
void apply_update(InfoState& state, const FisherFactor& factor,
                  UpdateDirection direction);

/// Forward-backward greedy batch selection. Oversamples
/// min(oversample_factor*B, |unlabeled|) candidates by maximal gain, then
/// prunes back to B by minimal removal cost. Deterministic: ties always go
/// to the lowest candidate id. Returns exactly B distinct unlabeled ids in
/// selection order. fisher_override, when given, replaces the pool-average
/// Fisher target.
std::vector<int> select_batch(const EmbeddingPool& pool,
                              const ClassProbabilities* probs,
                              const std::vector<int>& labeled_ids,
                              const SelectionConfig& cfg,
                              const Matrix* fisher_override = nullptr);

}  // namespace bait
