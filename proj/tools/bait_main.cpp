#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "bait/baselines.hpp"
#include "bait/bayes.hpp"
#include "bait/harness.hpp"
#include "bait/io.hpp"
#include "bait/selector.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct SelectArgs {
    std::string embeddings, probs, labeled, strategy = "bait";
    std::string mode = "classification";
    int batch_size = 1;
    int oversample = 2;
    double lambda = 1.0;
    std::uint64_t seed = 0;
    bool forward_only = false;
};

int cmd_select(const SelectArgs& args) {
    const bait::EmbeddingPool pool =
        bait::make_embedding_pool(bait::read_matrix_auto(args.embeddings));
    bait::ClassProbabilities probs;
    const bool classification = args.mode == "classification";
    if (!classification && args.mode != "regression") {
        throw bait::ConfigError("mode must be classification or regression");
    }
    if (classification) {
        if (args.probs.empty()) {
            throw bait::ConfigError(
                "classification selection needs --probs (n x k file)");
        }
        probs = bait::make_class_probabilities(
            bait::read_matrix_auto(args.probs));
    }
    bait::StrategyRequest req;
    req.pool = &pool;
    req.probs = classification ? &probs : nullptr;
    if (!args.labeled.empty()) {
        req.labeled_ids = bait::read_index_file(args.labeled);
    }
    req.cfg.batch_size = args.batch_size;
    req.cfg.oversample_factor = args.oversample;
    req.cfg.lambda = args.lambda;
    req.cfg.mode = classification ? bait::TaskMode::Classification
                                  : bait::TaskMode::Regression;
    req.cfg.forward_only = args.forward_only;
    req.seed = args.seed;
    for (int id : bait::run_strategy(args.strategy, req)) {
        std::cout << id << "\n";
    }
    return kExitOk;
}

int cmd_simulate(const std::string& config_path) {
    const bait::ExperimentConfig cfg = bait::parse_config_file(config_path);
    const auto runs = bait::run_experiment(cfg);
    for (const auto& run : runs) {
        std::cout << "strategy=" << run.strategy << " seed=" << run.seed
                  << " final_metric="
                  << std::setprecision(6)
                  << run.rounds.back().metric << "\n";
    }
    if (!cfg.out_dir.empty()) {
        std::cout << "results written to " << cfg.out_dir << "\n";
    }
    return kExitOk;
}

struct BayesSimArgs {
    std::string kind = "gaussian-decay";
    std::string out;
    int d = 100;
    int n = 10000;
    int b_max = 100;
    double lambda = 1.0;
    double sigma2 = 1.0;
    std::uint64_t seed = 0;
};

int cmd_bayes_sim(const BayesSimArgs& args) {
    bait::SynthKind kind;
    if (args.kind == "gaussian-decay") {
        kind = bait::SynthKind::GaussianDecay;
    } else if (args.kind == "orthonormal-decay") {
        kind = bait::SynthKind::OrthonormalDecay;
    } else {
        throw bait::ConfigError(
            "kind must be gaussian-decay or orthonormal-decay");
    }
    const auto data = bait::synth_distribution(kind, args.d, args.n, args.seed);
    const auto sweep = bait::bayes_risk_sweep(data.pool, args.b_max,
                                              args.lambda, args.sigma2);
    std::ostringstream csv;
    csv << "B,strategy,bayes_risk\n" << std::setprecision(17);
    for (int b = 1; b <= args.b_max; ++b) {
        csv << b << ",trace-fisher,"
            << sweep.trace_fisher_risk[static_cast<std::size_t>(b - 1)] << "\n";
        csv << b << ",log-det,"
            << sweep.log_det_risk[static_cast<std::size_t>(b - 1)] << "\n";
    }
    if (args.out.empty()) {
        std::cout << csv.str();
    } else {
        std::ofstream f(args.out, std::ios::trunc);
        if (!f) throw bait::ConfigError(args.out + ": cannot open for writing");
        f << csv.str();
    }
    return kExitOk;
}

struct AnalyzeArgs {
    std::string runs_dir;
    std::string out;
    bool lower_is_better = false;
};

int cmd_analyze(const AnalyzeArgs& args) {
    std::vector<std::string> paths;
    for (const auto& entry :
         std::filesystem::directory_iterator(args.runs_dir)) {
        if (entry.path().extension() == ".csv") {
            paths.push_back(entry.path().string());
        }
    }
    std::sort(paths.begin(), paths.end());
    if (paths.empty()) {
        throw bait::ConfigError(args.runs_dir + ": no run CSVs found");
    }
    std::vector<bait::RunRecord> runs;
    for (const auto& p : paths) {
        auto part = bait::read_run_csv(p);
        runs.insert(runs.end(), part.begin(), part.end());
    }
    const auto result = bait::analyze_runs(runs, !args.lower_is_better);
    std::cout << "budgets:";
    for (long b : result.budgets) std::cout << ' ' << b;
    std::cout << "\n";
    if (!args.out.empty()) {
        bait::write_penalty_csv(args.out, result.penalty);
        std::cout << "penalty matrix written to " << args.out << "\n";
    } else {
        const std::string tmp = args.runs_dir + "/penalty.csv";
        bait::write_penalty_csv(tmp, result.penalty);
        std::cout << "penalty matrix written to " << tmp << "\n";
    }
    return kExitOk;
}

struct ProjectArgs {
    std::string in, out;
    int dim = 128;
    std::uint64_t seed = 0;
};

int cmd_project(const ProjectArgs& args) {
    const bait::EmbeddingPool pool =
        bait::make_embedding_pool(bait::read_matrix_auto(args.in));
    const auto projected = bait::random_projection(pool, args.dim, args.seed);
    bait::write_bait_f32(args.out, projected.data);
    std::cout << "wrote " << args.out << " (" << projected.n() << " x "
              << projected.d() << ")\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fisher-information batch active learning toolkit"};
    app.require_subcommand(1);

    SelectArgs sel;
    auto* select = app.add_subcommand(
        "select", "One-shot batch selection from files; prints ids");
    select->add_option("--embeddings", sel.embeddings)->required();
    select->add_option("--probs", sel.probs,
                       "Predictive probabilities (n x k matrix file)");
    select->add_option("--labeled", sel.labeled,
                       "File with already-labeled ids, one per line");
    select->add_option("--strategy", sel.strategy)->required();
    select->add_option("--batch-size", sel.batch_size)->required();
    select->add_option("--mode", sel.mode,
                       "classification (default) or regression");
    select->add_option("--lambda", sel.lambda);
    select->add_option("--oversample", sel.oversample);
    select->add_option("--seed", sel.seed, "Seed for the random strategy");
    select->add_flag("--forward-only", sel.forward_only);

    std::string config_path;
    auto* simulate =
        app.add_subcommand("simulate", "Run a pool-based simulation");
    simulate->add_option("--config", config_path)->required();

    BayesSimArgs bs;
    auto* bayes_sim = app.add_subcommand(
        "bayes-sim", "Bayes-risk sweep on a synthetic distribution");
    bayes_sim->add_option("--kind", bs.kind,
                          "gaussian-decay or orthonormal-decay");
    bayes_sim->add_option("--d", bs.d);
    bayes_sim->add_option("--n", bs.n);
    bayes_sim->add_option("--b-max", bs.b_max);
    bayes_sim->add_option("--lambda", bs.lambda);
    bayes_sim->add_option("--sigma2", bs.sigma2);
    bayes_sim->add_option("--seed", bs.seed);
    bayes_sim->add_option("--out", bs.out, "CSV output path (default stdout)");

    AnalyzeArgs an;
    auto* analyze = app.add_subcommand(
        "analyze", "Checkpoint budgets and pairwise penalty matrix");
    analyze->add_option("--runs", an.runs_dir)->required();
    analyze->add_option("--out", an.out);
    analyze->add_flag("--lower-is-better", an.lower_is_better,
                      "Metric improves downward (regression error)");

    ProjectArgs pr;
    auto* project = app.add_subcommand(
        "project", "Random-project embeddings to a new BAIT-F32 file");
    project->add_option("--in", pr.in)->required();
    project->add_option("--out", pr.out)->required();
    project->add_option("--dim", pr.dim)->required();
    project->add_option("--seed", pr.seed);

    try {
        app.parse(argc, argv);
        if (select->parsed()) return cmd_select(sel);
        if (simulate->parsed()) return cmd_simulate(config_path);
        if (bayes_sim->parsed()) return cmd_bayes_sim(bs);
        if (analyze->parsed()) return cmd_analyze(an);
        if (project->parsed()) return cmd_project(pr);
        return kExitConfig;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    } catch (const bait::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const bait::NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
}
