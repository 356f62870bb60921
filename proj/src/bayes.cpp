#include "bait/bayes.hpp"

#include <Eigen/Cholesky>
#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "bait/detail/kron_scorer.hpp"
#include "bait/rng.hpp"

namespace bait {

namespace {

constexpr double kAllocationGuard = 1e7;

Matrix regularized_gram(const Matrix& s, const BayesSetup& setup) {
    const int d = setup.d();
    Matrix lam = setup.lambda * setup.sigma2 * Matrix::Identity(d, d);
    if (s.rows() > 0) {
        if (s.cols() != d) {
            throw ConfigError("bayes: selected rows disagree with Sigma dim");
        }
        lam += s.transpose() * s;
    }
    return ((lam + lam.transpose()) * 0.5).eval();
}

// C(b + d, d) with saturation, for the enumeration guard.
double allocation_count(int d, int b) {
    double c = 1.0;
    for (int i = 1; i <= d; ++i) {
        c *= static_cast<double>(b + i) / static_cast<double>(i);
        if (c > 1e18) return c;
    }
    return c;
}

}  // namespace

BayesSetup make_bayes_setup(double sigma2, double lambda, Matrix sigma) {
    if (!(sigma2 > 0.0) || !(lambda > 0.0)) {
        throw ConfigError("bayes setup: sigma2 and lambda must be positive");
    }
    if (sigma.rows() != sigma.cols() || sigma.rows() < 1) {
        throw ConfigError("bayes setup: Sigma must be square");
    }
    if (!sigma.allFinite()) throw ConfigError("bayes setup: non-finite Sigma");
    if ((sigma - sigma.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
        throw ConfigError("bayes setup: Sigma must be symmetric");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> eig(sigma);
    if (eig.eigenvalues().minCoeff() < -1e-9) {
        throw ConfigError("bayes setup: Sigma must be PSD");
    }
    return BayesSetup{sigma2, lambda, std::move(sigma)};
}

Vector ridge_map(const Matrix& x, const Vector& y, const BayesSetup& setup) {
    if (x.rows() != y.size()) {
        throw ConfigError("ridge_map: X and y disagree on sample count");
    }
    const Matrix lam = regularized_gram(x, setup);
    Eigen::LDLT<Matrix> ldlt(lam);
    if (ldlt.info() != Eigen::Success) {
        throw NumericalError("ridge_map: normal equations not solvable");
    }
    return ldlt.solve(x.transpose() * y);
}

double bayes_risk(const Matrix& s, const BayesSetup& setup) {
    const Matrix lam = regularized_gram(s, setup);
    Eigen::LDLT<Matrix> ldlt(lam);
    if (ldlt.info() != Eigen::Success) {
        throw NumericalError("bayes_risk: Lambda_S not solvable");
    }
    return setup.sigma2 * ldlt.solve(setup.sigma).trace();
}

MonteCarloRisk monte_carlo_bayes_risk(const Matrix& s, const BayesSetup& setup,
                                      long draws, std::uint64_t seed) {
    if (draws < 2) throw ConfigError("monte carlo risk: need at least 2 draws");
    const int d = setup.d();
    const int m = static_cast<int>(s.rows());
    const Matrix lam = regularized_gram(s, setup);
    // theta_hat = R y with R fixed across draws.
    const Matrix r = lam.ldlt().solve(s.transpose());
    Rng rng(seed);
    const double prior_sd = 1.0 / std::sqrt(setup.lambda);
    const double noise_sd = std::sqrt(setup.sigma2);
    double sum = 0.0, sum_sq = 0.0;
    Vector theta(d), y(m), err(d);
    for (long t = 0; t < draws; ++t) {
        for (int i = 0; i < d; ++i) theta[i] = prior_sd * rng.next_gaussian();
        if (m > 0) {
            y.noalias() = s * theta;
            for (int i = 0; i < m; ++i) y[i] += noise_sd * rng.next_gaussian();
            err.noalias() = r * y;
            err -= theta;
        } else {
            err = -theta;
        }
        const double v = err.dot(setup.sigma * err);
        sum += v;
        sum_sq += v * v;
    }
    const double mean = sum / static_cast<double>(draws);
    const double var =
        (sum_sq - static_cast<double>(draws) * mean * mean) /
        static_cast<double>(draws - 1);
    return MonteCarloRisk{mean,
                          std::sqrt(std::max(var, 0.0) /
                                    static_cast<double>(draws)),
                          draws};
}

double val(const Allocation& alloc, const Vector& p) {
    if (static_cast<Eigen::Index>(alloc.counts.size()) != p.size()) {
        throw ConfigError("val: allocation and p disagree on dimension");
    }
    double acc = 0.0;
    for (Eigen::Index i = 0; i < p.size(); ++i) {
        acc += p[i] /
               (static_cast<double>(alloc.counts[static_cast<std::size_t>(i)]) +
                alloc.lambda);
    }
    return acc;
}

Allocation greedy_alloc(const Vector& p, int b, double lambda) {
    if (b < 0) throw ConfigError("greedy_alloc: negative budget");
    if (!(lambda > 0.0)) throw ConfigError("greedy_alloc: lambda must be > 0");
    const int d = static_cast<int>(p.size());
    Allocation alloc{std::vector<long>(static_cast<std::size_t>(d), 0), lambda};
    for (int t = 0; t < b; ++t) {
        int best = -1;
        double best_delta = std::numeric_limits<double>::infinity();
        for (int i = 0; i < d; ++i) {
            const double ni =
                static_cast<double>(alloc.counts[static_cast<std::size_t>(i)]);
            const double delta =
                p[i] / (ni + 1.0 + lambda) - p[i] / (ni + lambda);
            if (delta < best_delta) {
                best_delta = delta;
                best = i;
            }
        }
        ++alloc.counts[static_cast<std::size_t>(best)];
    }
    return alloc;
}

namespace {

void enumerate_allocations(const Vector& p, double lambda, int coord,
                           long remaining, std::vector<long>& counts,
                           double partial, double& best_val,
                           std::vector<long>& best_counts) {
    const int d = static_cast<int>(p.size());
    if (coord == d) {
        // Strict '<' keeps the lexicographically first minimizer.
        if (partial < best_val) {
            best_val = partial;
            best_counts = counts;
        }
        return;
    }
    for (long c = 0; c <= remaining; ++c) {
        counts[static_cast<std::size_t>(coord)] = c;
        const double term = p[coord] / (static_cast<double>(c) + lambda);
        enumerate_allocations(p, lambda, coord + 1, remaining - c, counts,
                              partial + term, best_val, best_counts);
    }
    counts[static_cast<std::size_t>(coord)] = 0;
}

}  // namespace

Allocation brute_force_opt(const Vector& p, int b, double lambda) {
    if (b < 0) throw ConfigError("brute_force_opt: negative budget");
    if (!(lambda > 0.0)) {
        throw ConfigError("brute_force_opt: lambda must be > 0");
    }
    const int d = static_cast<int>(p.size());
    if (allocation_count(d, b) > kAllocationGuard) {
        throw ConfigError("brute_force_opt: more than 1e7 feasible allocations");
    }
    std::vector<long> counts(static_cast<std::size_t>(d), 0);
    std::vector<long> best_counts = counts;
    double best_val = std::numeric_limits<double>::infinity();
    enumerate_allocations(p, lambda, 0, b, counts, 0.0, best_val, best_counts);
    return Allocation{std::move(best_counts), lambda};
}

SynthData synth_distribution(SynthKind kind, int d, int n,
                             std::uint64_t seed) {
    if (d < 1 || n < 1) throw ConfigError("synth_distribution: d, n >= 1");
    Vector p(d);
    for (int i = 0; i < d; ++i) {
        p[i] = 1.0 / (static_cast<double>(i + 1) * static_cast<double>(i + 1));
    }
    p /= p.sum();

    Rng rng(seed);
    Matrix data = Matrix::Zero(n, d);
    if (kind == SynthKind::GaussianDecay) {
        for (int i = 0; i < d; ++i) {
            const double sd = std::sqrt(p[i]);
            for (int r = 0; r < n; ++r) {
                data(r, i) = sd * rng.next_gaussian();
            }
        }
    } else {
        // Inverse-CDF draw over the coordinate distribution.
        Vector cdf(d);
        double acc = 0.0;
        for (int i = 0; i < d; ++i) {
            acc += p[i];
            cdf[i] = acc;
        }
        cdf[d - 1] = 1.0;
        for (int r = 0; r < n; ++r) {
            const double u = rng.next_double();
            int j = 0;
            while (j < d - 1 && u > cdf[j]) ++j;
            data(r, j) = 1.0;
        }
    }
    return SynthData{make_embedding_pool(std::move(data)), std::move(p)};
}

RiskSweepResult bayes_risk_sweep(const EmbeddingPool& pool, int b_max,
                                 double lambda, double sigma2) {
    const int n = pool.n();
    const int d = pool.d();
    if (b_max < 1 || b_max > n) {
        throw ConfigError("bayes_risk_sweep: b_max must be in [1, n]");
    }
    if (!(lambda > 0.0) || !(sigma2 > 0.0)) {
        throw ConfigError("bayes_risk_sweep: lambda, sigma2 must be positive");
    }
    // Empirical second moment of the pool is both the selection target and
    // the risk weighting.
    Matrix second_moment = pool.data.transpose() * pool.data /
                           static_cast<double>(n);
    second_moment = ((second_moment + second_moment.transpose()) * 0.5).eval();

    const Matrix m0 = lambda * sigma2 * Matrix::Identity(d, d);
    RiskSweepResult result;
    result.trace_fisher_risk.reserve(static_cast<std::size_t>(b_max));
    result.log_det_risk.reserve(static_cast<std::size_t>(b_max));

    {
        detail::KronScorer scorer(pool.data, {}, 1, m0, &second_moment, 100);
        std::vector<char> picked(static_cast<std::size_t>(n), 0);
        for (int b = 0; b < b_max; ++b) {
            int best = -1;
            double best_gain = -std::numeric_limits<double>::infinity();
            for (int i = 0; i < n; ++i) {
                if (picked[static_cast<std::size_t>(i)]) continue;
                const double g = scorer.trace_gain_add(i);
                if (g > best_gain) {
                    best_gain = g;
                    best = i;
                }
            }
            scorer.update(best, /*add=*/true);
            picked[static_cast<std::size_t>(best)] = 1;
            result.trace_fisher_ids.push_back(best);
            result.trace_fisher_risk.push_back(sigma2 * scorer.objective());
        }
    }
    {
        detail::KronScorer scorer(pool.data, {}, 1, m0, nullptr, 100);
        std::vector<char> picked(static_cast<std::size_t>(n), 0);
        for (int b = 0; b < b_max; ++b) {
            int best = -1;
            double best_score = -std::numeric_limits<double>::infinity();
            for (int i = 0; i < n; ++i) {
                if (picked[static_cast<std::size_t>(i)]) continue;
                const double s = scorer.logdet_gain_add(i);
                if (s > best_score) {
                    best_score = s;
                    best = i;
                }
            }
            scorer.update(best, /*add=*/true);
            picked[static_cast<std::size_t>(best)] = 1;
            result.log_det_ids.push_back(best);
            result.log_det_risk.push_back(
                sigma2 * scorer.m_inv().cwiseProduct(second_moment).sum());
        }
    }
    return result;
}

}  // namespace bait
