#pragma once

#include <string>
#include <vector>

#include "bait/embedding.hpp"

namespace bait {

// Two-sided significance threshold on the paired t-score (p < 0.05 at the
// degrees of freedom used throughout the comparison machinery).
inline constexpr double kTScoreThreshold = 2.776;

/// Paired t-score sqrt(N) * mean(d) / sd(d) over d_l = e_i[l] - e_j[l].
/// Degenerate zero variance maps to sign(mean) * infinity (0 when the mean
/// is also 0), keeping the score antisymmetric.
double t_score(const std::vector<double>& e_i, const std::vector<double>& e_j);

struct PenaltyMatrix {
    std::vector<std::string> strategies;
    Matrix penalty;       // entry (i, j): how often i significantly beats j
    Vector column_means;  // off-diagonal column averages; lower is better
};

/// metrics[i][l][s] = metric of strategy i at budget index l for seed s.
/// Every significant win at a budget adds 1/z to (i, j), z = #budgets.
PenaltyMatrix pairwise_penalty(
    const std::vector<std::string>& strategies,
    const std::vector<std::vector<std::vector<double>>>& metrics);

}  // namespace bait
