#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bait/embedding.hpp"
#include "bait/stats.hpp"

namespace bait {

enum class HarnessMode { Classification, Regression, OneHotRegression };

HarnessMode parse_harness_mode(const std::string& text);
std::string harness_mode_name(HarnessMode mode);

/// Flat key = value experiment description. Recognized keys: strategy,
/// batch_size, seed_size, rounds, lambda, mode, seeds, embeddings, labels,
/// test_indices, projection_dim, projection_seed, out_dir. Unknown keys are
/// a hard error.
struct ExperimentConfig {
    std::string embeddings_path;
    std::string labels_path;
    std::string test_indices_path;
    std::string out_dir;  // empty: keep results in memory only
    std::string strategy;
    int batch_size = 0;   // B
    int seed_size = 100;  // B0
    int rounds = 0;       // T
    std::vector<std::uint64_t> seeds = {0};
    HarnessMode mode = HarnessMode::Classification;
    double lambda = 1.0;
    int projection_dim = 0;  // 0: use raw features
    std::uint64_t projection_seed = 0;
    // Not a file key: the determinism audit zeroes wall-clock columns so
    // reruns compare byte-identical.
    bool record_timing = true;
};

ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig parse_config_file(const std::string& path);

/// Canonical FNV-1a hash over the run-relevant config fields.
std::string config_hash(const ExperimentConfig& cfg);

struct RoundRecord {
    int round = 0;
    long labeled_count = 0;
    std::vector<int> selected;  // global pool ids chosen this round
    double metric = 0.0;
    double select_seconds = 0.0;
};

struct RunRecord {
    std::uint64_t seed = 0;
    std::string strategy;
    std::string config_digest;
    std::vector<RoundRecord> rounds;
};

/// Pool-based simulation: per seed, draw B0 labeled points, then T rounds
/// of {select B, reveal labels, retrain from scratch, score on the held-out
/// test split}. Round 0 records the seed-set-only model. Runs for distinct
/// seeds execute in parallel. When out_dir is set, each run is written to
/// run_<strategy>_seed<seed>.csv plus an id sidecar.
std::vector<RunRecord> run_experiment(const ExperimentConfig& cfg);

// RunRecord CSV surface: header seed,strategy,round,labeled,metric,
// select_seconds; one row per round; 17-significant-digit reals.
void write_run_csv(const std::string& path, const RunRecord& run);
std::string run_csv_text(const RunRecord& run);
std::vector<RunRecord> parse_run_csv_text(const std::string& text);
std::vector<RunRecord> read_run_csv(const std::string& path);

/// Round r at which the mean random-strategy metric first comes within 0.01
/// (absolute, on the improving side) of its final value, then every budget
/// L_k = B0 + 2^k B with L_k <= B0 + r*B.
std::vector<long> checkpoint_budgets(const std::vector<RunRecord>& random_runs,
                                     int b, int b0, bool higher_is_better);

struct AnalysisResult {
    std::vector<long> budgets;
    PenaltyMatrix penalty;
};

/// Full comparison pass: budgets from the random runs, metric lookup at the
/// nearest recorded round at or below each budget, pairwise t-tests.
AnalysisResult analyze_runs(const std::vector<RunRecord>& all_runs,
                            bool higher_is_better);

void write_penalty_csv(const std::string& path, const PenaltyMatrix& penalty);

/// Gaussian random projection onto target_dim coordinates, scaled by
/// 1/sqrt(target_dim) so pairwise distances are preserved in expectation.
EmbeddingPool random_projection(const EmbeddingPool& pool, int target_dim,
                                std::uint64_t seed);

}  // namespace bait
