#pragma once

#include <cstdint>
#include <vector>

#include "bait/embedding.hpp"

namespace bait {

/// Gaussian-prior linear regression setting: theta* ~ N(0, lambda^-1 I),
/// y | x ~ N(<theta*, x>, sigma2), and Sigma the second-moment matrix of
/// the unlabeled data.
struct BayesSetup {
    double sigma2 = 1.0;
    double lambda = 1.0;
    Matrix sigma;  // d x d, symmetric PSD

    int d() const { return static_cast<int>(sigma.rows()); }
};

BayesSetup make_bayes_setup(double sigma2, double lambda, Matrix sigma);

/// MAP estimate (X^T X + lambda sigma2 I)^{-1} X^T y.
Vector ridge_map(const Matrix& x, const Vector& y, const BayesSetup& setup);

/// Exact Bayes risk sigma2 * tr(Lambda_S^{-1} Sigma) with
/// Lambda_S = sum_{x in S} x x^T + lambda sigma2 I. S may have zero rows.
double bayes_risk(const Matrix& s, const BayesSetup& setup);

/// Monte-Carlo estimate of the same risk from fresh draws of (theta*,
/// noise); fixed seed, reports the standard error of the mean.
struct MonteCarloRisk {
    double mean = 0.0;
    double std_error = 0.0;
    long draws = 0;
};
MonteCarloRisk monte_carlo_bayes_risk(const Matrix& s, const BayesSetup& setup,
                                      long draws, std::uint64_t seed);

/// Integer allocation over orthonormal support coordinates.
struct Allocation {
    std::vector<long> counts;
    double lambda = 1.0;
};

/// Val(n) = sum_i p_i / (n_i + lambda).
double val(const Allocation& alloc, const Vector& p);

/// Greedy allocator: B steps of argmin_i p_i/(n_i+1+lambda) - p_i/(n_i+lambda),
/// ties to the lowest coordinate. Achieves the exact optimum.
Allocation greedy_alloc(const Vector& p, int b, double lambda);

/// Exhaustive optimum over all allocations with sum n_i <= B
/// (stars-and-bars recursion; guarded at 1e7 feasible allocations).
/// Ties broken lexicographically.
Allocation brute_force_opt(const Vector& p, int b, double lambda);

/// Synthetic pools with quadratically decaying spectra: either Gaussian
/// rows with diagonal covariance Sigma_ii = p_i, or rows supported on the
/// standard basis with occurrence probabilities p_i, where p_i ~ 1/i^2
/// normalized to sum 1. Both share the same population second moment.
enum class SynthKind { GaussianDecay, OrthonormalDecay };

struct SynthData {
    EmbeddingPool pool;
    Vector coord_probs;  // p, also the population covariance diagonal
};

SynthData synth_distribution(SynthKind kind, int d, int n, std::uint64_t seed);

/// One pass of greedy selection up to b_max for both the trace-with-target
/// objective and plain log-determinant maximization, recording the exact
/// Bayes risk of every prefix. The greedy trajectory is prefix-consistent,
/// so one pass covers the whole budget sweep.
struct RiskSweepResult {
    std::vector<double> trace_fisher_risk;  // index b-1
    std::vector<double> log_det_risk;
    std::vector<int> trace_fisher_ids;  // pick sequence
    std::vector<int> log_det_ids;
};

RiskSweepResult bayes_risk_sweep(const EmbeddingPool& pool, int b_max,
                                 double lambda, double sigma2);

}  // namespace bait
