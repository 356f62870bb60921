#include "bait/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "bait/baselines.hpp"
#include "bait/io.hpp"
#include "bait/models.hpp"
#include "bait/rng.hpp"
#include "bait/selector.hpp"

namespace bait {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

long parse_long(const std::string& value, const std::string& key) {
    try {
        std::size_t pos = 0;
        const long v = std::stol(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config: bad integer for '" + key + "': " + value);
    }
}

double parse_double(const std::string& value, const std::string& key) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config: bad number for '" + key + "': " + value);
    }
}

std::string format_real(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

}  // namespace

HarnessMode parse_harness_mode(const std::string& text) {
    if (text == "classification") return HarnessMode::Classification;
    if (text == "regression") return HarnessMode::Regression;
    if (text == "onehot-regression") return HarnessMode::OneHotRegression;
    throw ConfigError("config: unknown mode '" + text + "'");
}

std::string harness_mode_name(HarnessMode mode) {
    switch (mode) {
        case HarnessMode::Classification: return "classification";
        case HarnessMode::Regression: return "regression";
        case HarnessMode::OneHotRegression: return "onehot-regression";
    }
    return "classification";
}

ExperimentConfig parse_config_text(const std::string& text) {
    ExperimentConfig cfg;
    bool have_strategy = false, have_embeddings = false, have_labels = false;
    bool have_test = false;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config: line " + std::to_string(lineno) +
                              " is not 'key = value'");
        }
        const std::string key = trim(t.substr(0, eq));
        const std::string value = trim(t.substr(eq + 1));
        if (key == "strategy") {
            cfg.strategy = value;
            have_strategy = true;
        } else if (key == "batch_size") {
            cfg.batch_size = static_cast<int>(parse_long(value, key));
        } else if (key == "seed_size") {
            cfg.seed_size = static_cast<int>(parse_long(value, key));
        } else if (key == "rounds") {
            cfg.rounds = static_cast<int>(parse_long(value, key));
        } else if (key == "lambda") {
            cfg.lambda = parse_double(value, key);
        } else if (key == "mode") {
            cfg.mode = parse_harness_mode(value);
        } else if (key == "seeds") {
            cfg.seeds.clear();
            std::stringstream ss(value);
            std::string tok;
            while (std::getline(ss, tok, ',')) {
                const std::string st = trim(tok);
                if (st.empty()) continue;
                cfg.seeds.push_back(
                    static_cast<std::uint64_t>(parse_long(st, key)));
            }
            if (cfg.seeds.empty()) {
                throw ConfigError("config: 'seeds' must list at least one seed");
            }
        } else if (key == "embeddings") {
            cfg.embeddings_path = value;
            have_embeddings = true;
        } else if (key == "labels") {
            cfg.labels_path = value;
            have_labels = true;
        } else if (key == "test_indices") {
            cfg.test_indices_path = value;
            have_test = true;
        } else if (key == "projection_dim") {
            cfg.projection_dim = static_cast<int>(parse_long(value, key));
        } else if (key == "projection_seed") {
            cfg.projection_seed =
                static_cast<std::uint64_t>(parse_long(value, key));
        } else if (key == "out_dir") {
            cfg.out_dir = value;
        } else {
            throw ConfigError("config: unknown key '" + key + "'");
        }
    }
    if (!have_strategy) throw ConfigError("config: missing 'strategy'");
    if (!have_embeddings) throw ConfigError("config: missing 'embeddings'");
    if (!have_labels) throw ConfigError("config: missing 'labels'");
    if (!have_test) throw ConfigError("config: missing 'test_indices'");
    if (cfg.rounds < 0) throw ConfigError("config: rounds must be >= 0");
    if (cfg.rounds > 0 && cfg.batch_size < 1) {
        throw ConfigError("config: batch_size must be >= 1 when rounds > 0");
    }
    if (cfg.seed_size < 1) throw ConfigError("config: seed_size must be >= 1");
    if (cfg.lambda < 0.0) throw ConfigError("config: lambda must be >= 0");
    if (cfg.projection_dim < 0) {
        throw ConfigError("config: projection_dim must be >= 0");
    }
    if (!is_known_strategy(cfg.strategy)) {
        throw ConfigError("config: unknown strategy '" + cfg.strategy + "'");
    }
    return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path + ": cannot open");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

std::string config_hash(const ExperimentConfig& cfg) {
    std::ostringstream canon;
    canon << "strategy=" << cfg.strategy << "\nbatch_size=" << cfg.batch_size
          << "\nseed_size=" << cfg.seed_size << "\nrounds=" << cfg.rounds
          << "\nlambda=" << format_real(cfg.lambda)
          << "\nmode=" << harness_mode_name(cfg.mode) << "\nseeds=";
    for (std::size_t i = 0; i < cfg.seeds.size(); ++i) {
        canon << (i ? "," : "") << cfg.seeds[i];
    }
    canon << "\nembeddings=" << cfg.embeddings_path
          << "\nlabels=" << cfg.labels_path
          << "\ntest_indices=" << cfg.test_indices_path
          << "\nprojection_dim=" << cfg.projection_dim
          << "\nprojection_seed=" << cfg.projection_seed << "\n";
    const std::string text = canon.str();
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    std::ostringstream hex;
    hex << std::hex << std::setw(16) << std::setfill('0') << h;
    return hex.str();
}

namespace {

struct Dataset {
    EmbeddingPool u_pool;  // selectable rows
    Matrix test_x;
    std::vector<int> u_to_global;
    std::vector<int> u_labels_int, test_labels_int;  // classification/one-hot
    Vector u_targets, test_targets;                  // regression
    int k = 1;
};

Dataset load_dataset(const ExperimentConfig& cfg) {
    Matrix x = read_matrix_auto(cfg.embeddings_path);
    const auto labels = read_labels(cfg.labels_path);
    if (static_cast<Eigen::Index>(labels.size()) != x.rows()) {
        throw ConfigError("labels do not cover every pool row");
    }
    if (cfg.projection_dim > 0) {
        x = random_projection(EmbeddingPool{std::move(x)}, cfg.projection_dim,
                              cfg.projection_seed)
                .data;
    }
    const int n = static_cast<int>(x.rows());
    std::vector<char> is_test(static_cast<std::size_t>(n), 0);
    for (int id : read_index_file(cfg.test_indices_path)) {
        if (id >= n) throw ConfigError("test index out of range");
        is_test[static_cast<std::size_t>(id)] = 1;
    }

    Dataset ds;
    const bool integral_labels = cfg.mode != HarnessMode::Regression;
    int k = 1;
    std::vector<int> labels_int;
    if (integral_labels) {
        labels_int.reserve(labels.size());
        for (double l : labels) {
            if (std::floor(l) != l || l < 0.0) {
                throw ConfigError("classification labels must be integers >= 0");
            }
            const int li = static_cast<int>(l);
            labels_int.push_back(li);
            k = std::max(k, li + 1);
        }
    }
    int n_test = 0;
    for (char t : is_test) n_test += t;
    const int n_u = n - n_test;
    if (n_u < 1) throw ConfigError("no selectable rows outside the test split");
    if (n_test < 1) throw ConfigError("test split is empty");

    ds.k = integral_labels ? k : 1;
    ds.u_pool.data.resize(n_u, x.cols());
    ds.test_x.resize(n_test, x.cols());
    if (integral_labels) {
        ds.u_labels_int.reserve(static_cast<std::size_t>(n_u));
        ds.test_labels_int.reserve(static_cast<std::size_t>(n_test));
    } else {
        ds.u_targets.resize(n_u);
        ds.test_targets.resize(n_test);
    }
    int ui = 0, ti = 0;
    for (int i = 0; i < n; ++i) {
        if (is_test[static_cast<std::size_t>(i)]) {
            ds.test_x.row(ti) = x.row(i);
            if (integral_labels) {
                ds.test_labels_int.push_back(labels_int[static_cast<std::size_t>(i)]);
            } else {
                ds.test_targets[ti] = labels[static_cast<std::size_t>(i)];
            }
            ++ti;
        } else {
            ds.u_pool.data.row(ui) = x.row(i);
            ds.u_to_global.push_back(i);
            if (integral_labels) {
                ds.u_labels_int.push_back(labels_int[static_cast<std::size_t>(i)]);
            } else {
                ds.u_targets[ui] = labels[static_cast<std::size_t>(i)];
            }
            ++ui;
        }
    }
    return ds;
}

Matrix one_hot(const std::vector<int>& labels, int k) {
    Matrix y = Matrix::Zero(static_cast<Eigen::Index>(labels.size()), k);
    for (std::size_t i = 0; i < labels.size(); ++i) {
        y(static_cast<Eigen::Index>(i), labels[i]) = 1.0;
    }
    return y;
}

// Fits on the sorted labeled set (canonical row order keeps training
// independent of selection order) and scores the held-out split.
struct FitResult {
    LinearModel model;
    double metric = 0.0;
};

FitResult fit_and_score(const ExperimentConfig& cfg, const Dataset& ds,
                        const std::vector<int>& labeled_u) {
    std::vector<int> order = labeled_u;
    std::sort(order.begin(), order.end());
    const int m = static_cast<int>(order.size());
    Matrix x(m, ds.u_pool.d());
    for (int i = 0; i < m; ++i) {
        x.row(i) = ds.u_pool.data.row(order[static_cast<std::size_t>(i)]);
    }
    FitResult out;
    switch (cfg.mode) {
        case HarnessMode::Classification: {
            std::vector<int> y(static_cast<std::size_t>(m));
            for (int i = 0; i < m; ++i) {
                y[static_cast<std::size_t>(i)] =
                    ds.u_labels_int[static_cast<std::size_t>(
                        order[static_cast<std::size_t>(i)])];
            }
            out.model = fit_softmax(ds.k, x, y);
            out.metric =
                evaluate_accuracy(out.model, ds.test_x, ds.test_labels_int);
            break;
        }
        case HarnessMode::OneHotRegression: {
            std::vector<int> y(static_cast<std::size_t>(m));
            for (int i = 0; i < m; ++i) {
                y[static_cast<std::size_t>(i)] =
                    ds.u_labels_int[static_cast<std::size_t>(
                        order[static_cast<std::size_t>(i)])];
            }
            out.model = fit_least_squares(x, one_hot(y, ds.k));
            out.metric =
                evaluate_accuracy(out.model, ds.test_x, ds.test_labels_int);
            break;
        }
        case HarnessMode::Regression: {
            Matrix y(m, 1);
            for (int i = 0; i < m; ++i) {
                y(i, 0) = ds.u_targets[order[static_cast<std::size_t>(i)]];
            }
            out.model = fit_least_squares(x, y);
            out.metric = evaluate_mse(out.model, ds.test_x, ds.test_targets);
            break;
        }
    }
    return out;
}

RunRecord run_one_seed(const ExperimentConfig& cfg, const Dataset& ds,
                       std::uint64_t seed, const std::string& digest) {
    const int n_u = ds.u_pool.n();
    Rng rng(seed);
    std::vector<int> labeled_u =
        rng.sample_without_replacement(n_u, cfg.seed_size);

    RunRecord run;
    run.seed = seed;
    run.strategy = cfg.strategy;
    run.config_digest = digest;

    FitResult fr = fit_and_score(cfg, ds, labeled_u);
    run.rounds.push_back(
        RoundRecord{0, cfg.seed_size, {}, fr.metric, 0.0});

    SelectionConfig sel;
    sel.batch_size = cfg.batch_size;
    sel.lambda = cfg.lambda;
    sel.mode = cfg.mode == HarnessMode::Classification
                   ? TaskMode::Classification
                   : TaskMode::Regression;

    for (int round = 1; round <= cfg.rounds; ++round) {
        ClassProbabilities probs;
        StrategyRequest req;
        req.pool = &ds.u_pool;
        req.labeled_ids = labeled_u;
        req.cfg = sel;
        req.seed = rng.next_u64();
        if (cfg.mode == HarnessMode::Classification) {
            probs = predict_proba(fr.model, ds.u_pool.data);
            req.probs = &probs;
        }
        const auto t0 = std::chrono::steady_clock::now();
        const std::vector<int> batch_u = run_strategy(cfg.strategy, req);
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                .count();
        labeled_u.insert(labeled_u.end(), batch_u.begin(), batch_u.end());
        fr = fit_and_score(cfg, ds, labeled_u);

        RoundRecord rec;
        rec.round = round;
        rec.labeled_count =
            cfg.seed_size + static_cast<long>(round) * cfg.batch_size;
        rec.selected.reserve(batch_u.size());
        for (int u : batch_u) {
            rec.selected.push_back(ds.u_to_global[static_cast<std::size_t>(u)]);
        }
        rec.metric = fr.metric;
        rec.select_seconds = cfg.record_timing ? secs : 0.0;
        run.rounds.push_back(std::move(rec));
    }
    return run;
}

void write_id_sidecar(const std::string& path, const RunRecord& run) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw ConfigError(path + ": cannot open for writing");
    out << "# config " << run.config_digest << "\n";
    for (const auto& rec : run.rounds) {
        if (rec.round == 0) continue;
        for (int id : rec.selected) out << id << "\n";
        out << "\n";
    }
}

}  // namespace

std::vector<RunRecord> run_experiment(const ExperimentConfig& cfg) {
    if (!is_known_strategy(cfg.strategy)) {
        throw ConfigError("unknown strategy '" + cfg.strategy + "'");
    }
    const TaskMode task = cfg.mode == HarnessMode::Classification
                              ? TaskMode::Classification
                              : TaskMode::Regression;
    if (!strategy_supports_mode(cfg.strategy, task)) {
        throw ConfigError("strategy '" + cfg.strategy +
                          "' is not defined for mode " +
                          harness_mode_name(cfg.mode));
    }
    const Dataset ds = load_dataset(cfg);
    const long needed = static_cast<long>(cfg.seed_size) +
                        static_cast<long>(cfg.rounds) * cfg.batch_size;
    if (needed > ds.u_pool.n()) {
        throw ConfigError("seed_size + rounds*batch_size exceeds the pool");
    }
    const std::string digest = config_hash(cfg);

    std::vector<RunRecord> runs(cfg.seeds.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mu;
    const unsigned workers = std::min<unsigned>(
        std::max(1u, std::thread::hardware_concurrency()),
        static_cast<unsigned>(cfg.seeds.size()));
    auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= cfg.seeds.size()) return;
            try {
                runs[i] = run_one_seed(cfg, ds, cfg.seeds[i], digest);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mu);
                if (!error) error = std::current_exception();
                return;
            }
        }
    };
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    if (error) std::rethrow_exception(error);

    if (!cfg.out_dir.empty()) {
        std::filesystem::create_directories(cfg.out_dir);
        for (const auto& run : runs) {
            const std::string stem = cfg.out_dir + "/run_" + run.strategy +
                                     "_seed" + std::to_string(run.seed);
            write_run_csv(stem + ".csv", run);
            write_id_sidecar(stem + ".ids.txt", run);
        }
    }
    return runs;
}

std::string run_csv_text(const RunRecord& run) {
    std::ostringstream out;
    out << "seed,strategy,round,labeled,metric,select_seconds\n";
    for (const auto& rec : run.rounds) {
        out << run.seed << ',' << run.strategy << ',' << rec.round << ','
            << rec.labeled_count << ',' << format_real(rec.metric) << ','
            << format_real(rec.select_seconds) << "\n";
    }
    return out.str();
}

void write_run_csv(const std::string& path, const RunRecord& run) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw ConfigError(path + ": cannot open for writing");
    out << run_csv_text(run);
    if (!out) throw ConfigError(path + ": write failed");
}

std::vector<RunRecord> parse_run_csv_text(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw ConfigError("run csv: empty");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "seed,strategy,round,labeled,metric,select_seconds") {
        throw ConfigError("run csv: unexpected header '" + line + "'");
    }
    std::vector<RunRecord> runs;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string f[6];
        for (int i = 0; i < 6; ++i) {
            if (!std::getline(ss, f[i], ',')) {
                throw ConfigError("run csv: short row '" + line + "'");
            }
        }
        std::string extra;
        if (std::getline(ss, extra, ',')) {
            throw ConfigError("run csv: too many fields in '" + line + "'");
        }
        RoundRecord rec;
        const std::uint64_t seed =
            static_cast<std::uint64_t>(parse_long(f[0], "seed"));
        rec.round = static_cast<int>(parse_long(f[2], "round"));
        rec.labeled_count = parse_long(f[3], "labeled");
        rec.metric = parse_double(f[4], "metric");
        rec.select_seconds = parse_double(f[5], "select_seconds");
        if (runs.empty() || runs.back().seed != seed ||
            runs.back().strategy != f[1]) {
            RunRecord run;
            run.seed = seed;
            run.strategy = f[1];
            runs.push_back(std::move(run));
        }
        runs.back().rounds.push_back(std::move(rec));
    }
    return runs;
}

std::vector<RunRecord> read_run_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path + ": cannot open");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_run_csv_text(buf.str());
}

std::vector<long> checkpoint_budgets(const std::vector<RunRecord>& random_runs,
                                     int b, int b0, bool higher_is_better) {
    if (random_runs.empty()) {
        throw ConfigError("checkpoint_budgets: no random runs");
    }
    const std::size_t t = random_runs.front().rounds.size();
    for (const auto& run : random_runs) {
        if (run.rounds.size() != t) {
            throw ConfigError("checkpoint_budgets: runs disagree on rounds");
        }
    }
    if (t == 0) return {};
    std::vector<double> mean(t, 0.0);
    for (const auto& run : random_runs) {
        for (std::size_t r = 0; r < t; ++r) {
            mean[r] += run.rounds[r].metric;
        }
    }
    for (auto& v : mean) v /= static_cast<double>(random_runs.size());

    const double final_metric = mean.back();
    std::size_t r = t - 1;
    for (std::size_t i = 0; i < t; ++i) {
        const bool within = higher_is_better
                                ? mean[i] >= final_metric - 0.01
                                : mean[i] <= final_metric + 0.01;
        if (within) {
            r = i;
            break;
        }
    }
    const long budget_at_r =
        static_cast<long>(b0) + static_cast<long>(r) * b;
    std::vector<long> budgets;
    long step = b;
    for (;;) {
        const long l = static_cast<long>(b0) + step;
        if (l > budget_at_r) break;
        budgets.push_back(l);
        if (step > (1L << 60)) break;
        step *= 2;
    }
    return budgets;
}

AnalysisResult analyze_runs(const std::vector<RunRecord>& all_runs,
                            bool higher_is_better) {
    if (all_runs.empty()) throw ConfigError("analyze: no runs");
    std::vector<std::string> strategies;
    for (const auto& run : all_runs) {
        if (std::find(strategies.begin(), strategies.end(), run.strategy) ==
            strategies.end()) {
            strategies.push_back(run.strategy);
        }
    }

    // Geometry must agree across runs: same B0 and B.
    long b0 = -1, b = -1;
    for (const auto& run : all_runs) {
        if (run.rounds.empty()) throw ConfigError("analyze: run with no rounds");
        const long run_b0 = run.rounds.front().labeled_count;
        if (b0 < 0) b0 = run_b0;
        if (run_b0 != b0) {
            throw ConfigError("analyze: runs disagree on seed size");
        }
        if (run.rounds.size() > 1) {
            const long run_b =
                run.rounds[1].labeled_count - run.rounds[0].labeled_count;
            if (b < 0) b = run_b;
            if (run_b != b) {
                throw ConfigError("analyze: runs disagree on batch size");
            }
        }
    }

    std::vector<RunRecord> random_runs;
    for (const auto& run : all_runs) {
        if (run.strategy == "random") random_runs.push_back(run);
    }
    if (random_runs.empty()) {
        throw ConfigError("analyze: needs runs of the 'random' strategy");
    }

    AnalysisResult out;
    out.budgets = b > 0 ? checkpoint_budgets(random_runs, static_cast<int>(b),
                                             static_cast<int>(b0),
                                             higher_is_better)
                        : std::vector<long>{};

    // Seeds must align across strategies for the paired test.
    std::set<std::uint64_t> seed_set;
    for (const auto& run : all_runs) seed_set.insert(run.seed);
    const std::vector<std::uint64_t> seeds(seed_set.begin(), seed_set.end());

    auto metric_at = [](const RunRecord& run, long budget) {
        double best = run.rounds.front().metric;
        bool found = false;
        for (const auto& rec : run.rounds) {
            if (rec.labeled_count <= budget) {
                best = rec.metric;
                found = true;
            }
        }
        if (!found) throw ConfigError("analyze: budget below the seed set");
        return best;
    };

    std::vector<std::vector<std::vector<double>>> metrics(
        strategies.size(),
        std::vector<std::vector<double>>(
            out.budgets.size(), std::vector<double>(seeds.size(), 0.0)));
    for (std::size_t si = 0; si < strategies.size(); ++si) {
        for (std::size_t se = 0; se < seeds.size(); ++se) {
            const RunRecord* run = nullptr;
            for (const auto& r : all_runs) {
                if (r.strategy == strategies[si] && r.seed == seeds[se]) {
                    run = &r;
                    break;
                }
            }
            if (run == nullptr) {
                throw ConfigError("analyze: strategy '" + strategies[si] +
                                  "' is missing seed " +
                                  std::to_string(seeds[se]));
            }
            for (std::size_t l = 0; l < out.budgets.size(); ++l) {
                metrics[si][l][se] = metric_at(*run, out.budgets[l]);
            }
        }
    }
    out.penalty = pairwise_penalty(strategies, metrics);
    return out;
}

void write_penalty_csv(const std::string& path, const PenaltyMatrix& penalty) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw ConfigError(path + ": cannot open for writing");
    out << "strategy";
    for (const auto& s : penalty.strategies) out << ',' << s;
    out << "\n";
    for (std::size_t i = 0; i < penalty.strategies.size(); ++i) {
        out << penalty.strategies[i];
        for (std::size_t j = 0; j < penalty.strategies.size(); ++j) {
            out << ',' << format_real(penalty.penalty(static_cast<Eigen::Index>(i),
                                                      static_cast<Eigen::Index>(j)));
        }
        out << "\n";
    }
    out << "column_mean";
    for (Eigen::Index j = 0; j < penalty.column_means.size(); ++j) {
        out << ',' << format_real(penalty.column_means[j]);
    }
    out << "\n";
    if (!out) throw ConfigError(path + ": write failed");
}

EmbeddingPool random_projection(const EmbeddingPool& pool, int target_dim,
                                std::uint64_t seed) {
    if (target_dim < 1) {
        throw ConfigError("random_projection: target_dim must be >= 1");
    }
    Rng rng(seed);
    const int d = pool.d();
    Matrix r(d, target_dim);
    const double scale = 1.0 / std::sqrt(static_cast<double>(target_dim));
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < target_dim; ++j) {
            r(i, j) = scale * rng.next_gaussian();
        }
    }
    return EmbeddingPool{pool.data * r};
}

}  // namespace bait
