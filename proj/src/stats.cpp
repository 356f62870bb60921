#include "bait/stats.hpp"

#include <cmath>
#include <limits>

#include "bait/errors.hpp"

namespace bait {

double t_score(const std::vector<double>& e_i, const std::vector<double>& e_j) {
    if (e_i.size() != e_j.size()) {
        throw ConfigError("t_score: metric lists differ in length");
    }
    const std::size_t n = e_i.size();
    if (n == 0) throw ConfigError("t_score: empty metric lists");
    double mu = 0.0;
    for (std::size_t l = 0; l < n; ++l) mu += e_i[l] - e_j[l];
    mu /= static_cast<double>(n);
    double ss = 0.0;
    for (std::size_t l = 0; l < n; ++l) {
        const double d = e_i[l] - e_j[l] - mu;
        ss += d * d;
    }
    const double sigma =
        n > 1 ? std::sqrt(ss / static_cast<double>(n - 1)) : 0.0;
    if (sigma == 0.0) {
        if (mu > 0.0) return std::numeric_limits<double>::infinity();
        if (mu < 0.0) return -std::numeric_limits<double>::infinity();
        return 0.0;
    }
    return std::sqrt(static_cast<double>(n)) * mu / sigma;
}

PenaltyMatrix pairwise_penalty(
    const std::vector<std::string>& strategies,
    const std::vector<std::vector<std::vector<double>>>& metrics) {
    const int m = static_cast<int>(strategies.size());
    if (static_cast<int>(metrics.size()) != m) {
        throw ConfigError("pairwise_penalty: one metric table per strategy");
    }
    const std::size_t z = metrics.empty() ? 0 : metrics.front().size();
    for (const auto& table : metrics) {
        if (table.size() != z) {
            throw ConfigError("pairwise_penalty: budget counts disagree");
        }
    }

    PenaltyMatrix out;
    out.strategies = strategies;
    out.penalty = Matrix::Zero(m, m);
    out.column_means = Vector::Zero(m);
    if (z == 0) return out;

    for (std::size_t l = 0; l < z; ++l) {
        for (int i = 0; i < m; ++i) {
            for (int j = i + 1; j < m; ++j) {
                const double t =
                    t_score(metrics[static_cast<std::size_t>(i)][l],
                            metrics[static_cast<std::size_t>(j)][l]);
                if (t > kTScoreThreshold) {
                    out.penalty(i, j) += 1.0 / static_cast<double>(z);
                } else if (t < -kTScoreThreshold) {
                    out.penalty(j, i) += 1.0 / static_cast<double>(z);
                }
            }
        }
    }
    if (m > 1) {
        for (int j = 0; j < m; ++j) {
            out.column_means[j] =
                out.penalty.col(j).sum() / static_cast<double>(m - 1);
        }
    }
    return out;
}

}  // namespace bait
