#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bait/embedding.hpp"
#include "bait/selector.hpp"

namespace bait {

/// Unscaled most-likely-label gradient g = x (x) (pi - e_yhat) with
/// yhat = argmax pi (lowest class index on ties). Equals column yhat of the
/// candidate's Fisher factor divided by sqrt(pi_yhat).
struct GradientEmbedding {
    Vector g;  // length d*k
    int owner = -1;
};

GradientEmbedding gradient_embedding(const Vector& x, const Vector& pi,
                                     int owner = -1);

/// Greedy determinant maximization over rank-one gradient embeddings:
/// each step picks argmax det(M + g g^T), scored in log space via the
/// matrix-determinant lemma. Classification only.
std::vector<int> select_det_rank1(const EmbeddingPool& pool,
                                  const ClassProbabilities& probs,
                                  const std::vector<int>& labeled_ids,
                                  const SelectionConfig& cfg);

/// Greedy determinant maximization over full-rank Fisher factors,
/// det(M + V V^T) = det(M) det(I + V^T M^{-1} V). In regression mode the
/// factor degenerates to the feature vector itself. Ignores any Fisher
/// target by construction.
std::vector<int> select_det_full(const EmbeddingPool& pool,
                                 const ClassProbabilities* probs,
                                 const std::vector<int>& labeled_ids,
                                 const SelectionConfig& cfg);

/// Greedy k-center on raw embeddings: repeatedly picks the unlabeled point
/// farthest (Euclidean) from its nearest labeled-or-selected center. With no
/// labeled points the first center is the lowest id.
std::vector<int> select_coreset(const EmbeddingPool& pool,
                                const std::vector<int>& labeled_ids, int b);

/// Least-confidence sampling: B unlabeled points with the smallest max
/// predictive probability.
std::vector<int> select_confidence(const ClassProbabilities& probs,
                                   const std::vector<int>& labeled_ids, int b);

/// Uniform sampling without replacement from the unlabeled ids.
std::vector<int> select_random(int pool_size,
                               const std::vector<int>& labeled_ids, int b,
                               std::uint64_t seed);

// ---- Strategy registry -------------------------------------------------

/// Stable strategy identifiers: bait, bait-forward-only, bait-no-fisher,
/// det-rank1, det-full, coreset, confidence, random.
const std::vector<std::string>& strategy_names();

bool is_known_strategy(const std::string& name);

/// Whether the strategy can run without class probabilities.
bool strategy_supports_mode(const std::string& name, TaskMode mode);

struct StrategyRequest {
    const EmbeddingPool* pool = nullptr;
    const ClassProbabilities* probs = nullptr;  // null in regression mode
    std::vector<int> labeled_ids;
    SelectionConfig cfg;
    std::uint64_t seed = 0;                   // consumed by `random`
    const Matrix* fisher_override = nullptr;  // consumed by bait variants
};

std::vector<int> run_strategy(const std::string& name,
                              const StrategyRequest& req);

}  // namespace bait
