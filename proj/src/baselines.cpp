#include "bait/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bait/detail/kron_scorer.hpp"
#include "bait/rng.hpp"

namespace bait {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<char> labeled_mask(int n, const std::vector<int>& labeled_ids) {
    std::vector<char> mask(static_cast<std::size_t>(n), 0);
    for (int id : labeled_ids) {
        if (id < 0 || id >= n) throw ConfigError("labeled id out of range");
        mask[static_cast<std::size_t>(id)] = 1;
    }
    return mask;
}

int count_unlabeled(const std::vector<char>& mask) {
    int c = 0;
    for (char m : mask) c += m == 0;
    return c;
}

void check_budget(int b, int available) {
    if (b < 1) throw ConfigError("batch size must be >= 1");
    if (b > available) {
        throw ConfigError("batch size exceeds available unlabeled candidates");
    }
}

std::vector<int> rows_where(const std::vector<char>& mask, char value) {
    std::vector<int> out;
    for (int i = 0; i < static_cast<int>(mask.size()); ++i) {
        if (mask[static_cast<std::size_t>(i)] == value) out.push_back(i);
    }
    return out;
}

// Shared greedy loop for the determinantal strategies.
std::vector<int> greedy_logdet(detail::KronScorer& scorer,
                               const std::vector<char>& labeled, int b) {
    const int n = scorer.n();
    std::vector<char> picked(static_cast<std::size_t>(n), 0);
    std::vector<int> chosen;
    chosen.reserve(static_cast<std::size_t>(b));
    for (int step = 0; step < b; ++step) {
        int best = -1;
        double best_score = -kInf;
        for (int i = 0; i < n; ++i) {
            if (labeled[static_cast<std::size_t>(i)] ||
                picked[static_cast<std::size_t>(i)]) {
                continue;
            }
            const double s = scorer.logdet_gain_add(i);
            if (s > best_score) {
                best_score = s;
                best = i;
            }
        }
        if (best < 0) break;
        scorer.update(best, /*add=*/true);
        picked[static_cast<std::size_t>(best)] = 1;
        chosen.push_back(best);
    }
    return chosen;
}

}  // namespace

GradientEmbedding gradient_embedding(const Vector& x, const Vector& pi,
                                     int owner) {
    if (!x.allFinite() || !pi.allFinite()) {
        throw ConfigError("gradient embedding: non-finite input");
    }
    const int d = static_cast<int>(x.size());
    const int k = static_cast<int>(pi.size());
    if (d < 1 || k < 1) throw ConfigError("gradient embedding: empty input");
    const Vector p = clip_probabilities(pi);
    int yhat = 0;
    for (int c = 1; c < k; ++c) {
        if (p[c] > p[yhat]) yhat = c;
    }
    Vector u = p;
    u[yhat] -= 1.0;
    Vector g(d * k);
    for (int f = 0; f < d; ++f) {
        g.segment(f * k, k) = x[f] * u;
    }
    return GradientEmbedding{std::move(g), owner};
}

std::vector<int> select_det_rank1(const EmbeddingPool& pool,
                                  const ClassProbabilities& probs,
                                  const std::vector<int>& labeled_ids,
                                  const SelectionConfig& cfg) {
    const int n = pool.n();
    if (probs.n() != n) {
        throw ConfigError("det-rank1: pool and probabilities disagree on n");
    }
    const int k = probs.k();
    if (static_cast<long>(pool.d()) * k > kMaxInfoDim) {
        throw ConfigError("det-rank1: d*k exceeds the supported cap");
    }
    const auto labeled = labeled_mask(n, labeled_ids);
    check_budget(cfg.batch_size, count_unlabeled(labeled));

    std::vector<Matrix> mixers(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const Vector p = probs.probs.row(i).transpose();
        int yhat = 0;
        for (int c = 1; c < k; ++c) {
            if (p[c] > p[yhat]) yhat = c;
        }
        Matrix u = p;
        u(yhat, 0) -= 1.0;
        mixers[static_cast<std::size_t>(i)] = std::move(u);
    }

    Matrix m0 =
        cfg.lambda * Matrix::Identity(pool.d() * k, pool.d() * k);
    const auto seed_rows = rows_where(labeled, 1);
    if (!seed_rows.empty()) {
        m0 += detail::KronScorer::averaged_outer(pool.data, mixers, k, seed_rows);
    }
    detail::KronScorer scorer(pool.data, std::move(mixers), k, std::move(m0),
                              nullptr, cfg.refactor_interval);
    return greedy_logdet(scorer, labeled, cfg.batch_size);
}

std::vector<int> select_det_full(const EmbeddingPool& pool,
                                 const ClassProbabilities* probs,
                                 const std::vector<int>& labeled_ids,
                                 const SelectionConfig& cfg) {
    const int n = pool.n();
    const int k = probs != nullptr ? probs->k() : 1;
    if (probs != nullptr && probs->n() != n) {
        throw ConfigError("det-full: pool and probabilities disagree on n");
    }
    if (static_cast<long>(pool.d()) * k > kMaxInfoDim) {
        throw ConfigError("det-full: d*k exceeds the supported cap");
    }
    const auto labeled = labeled_mask(n, labeled_ids);
    check_budget(cfg.batch_size, count_unlabeled(labeled));

    std::vector<Matrix> mixers;
    if (probs != nullptr) {
        mixers.resize(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            mixers[static_cast<std::size_t>(i)] =
                classification_mixer(probs->probs.row(i).transpose());
        }
    }
    Matrix m0 =
        cfg.lambda * Matrix::Identity(pool.d() * k, pool.d() * k);
    const auto seed_rows = rows_where(labeled, 1);
    if (!seed_rows.empty()) {
        m0 += detail::KronScorer::averaged_outer(pool.data, mixers, k, seed_rows);
    }
    detail::KronScorer scorer(pool.data, std::move(mixers), k, std::move(m0),
                              nullptr, cfg.refactor_interval);
    return greedy_logdet(scorer, labeled, cfg.batch_size);
}

std::vector<int> select_coreset(const EmbeddingPool& pool,
                                const std::vector<int>& labeled_ids, int b) {
    const int n = pool.n();
    const auto labeled = labeled_mask(n, labeled_ids);
    check_budget(b, count_unlabeled(labeled));

    Vector min_d2 = Vector::Constant(n, kInf);
    auto absorb_center = [&](int center) {
        const auto diff = pool.data.rowwise() - pool.data.row(center);
        min_d2 = min_d2.cwiseMin(diff.rowwise().squaredNorm());
    };
    bool any_center = false;
    for (int i = 0; i < n; ++i) {
        if (labeled[static_cast<std::size_t>(i)]) {
            absorb_center(i);
            any_center = true;
        }
    }

    std::vector<char> picked(static_cast<std::size_t>(n), 0);
    std::vector<int> chosen;
    chosen.reserve(static_cast<std::size_t>(b));
    for (int step = 0; step < b; ++step) {
        int best = -1;
        if (!any_center) {
            // No centers yet: deterministic start at the lowest id.
            for (int i = 0; i < n && best < 0; ++i) {
                if (!labeled[static_cast<std::size_t>(i)]) best = i;
            }
        } else {
            double best_d = -kInf;
            for (int i = 0; i < n; ++i) {
                if (labeled[static_cast<std::size_t>(i)] ||
                    picked[static_cast<std::size_t>(i)]) {
                    continue;
                }
                if (min_d2[i] > best_d) {
                    best_d = min_d2[i];
                    best = i;
                }
            }
        }
        if (best < 0) break;
        picked[static_cast<std::size_t>(best)] = 1;
        chosen.push_back(best);
        absorb_center(best);
        any_center = true;
    }
    return chosen;
}

std::vector<int> select_confidence(const ClassProbabilities& probs,
                                   const std::vector<int>& labeled_ids, int b) {
    const int n = probs.n();
    const auto labeled = labeled_mask(n, labeled_ids);
    check_budget(b, count_unlabeled(labeled));

    std::vector<int> order;
    order.reserve(static_cast<std::size_t>(n));
    const Vector max_prob = probs.probs.rowwise().maxCoeff();
    for (int i = 0; i < n; ++i) {
        if (!labeled[static_cast<std::size_t>(i)]) order.push_back(i);
    }
    std::stable_sort(order.begin(), order.end(), [&](int a, int c) {
        return max_prob[a] < max_prob[c];
    });
    order.resize(static_cast<std::size_t>(b));
    return order;
}

std::vector<int> select_random(int pool_size,
                               const std::vector<int>& labeled_ids, int b,
                               std::uint64_t seed) {
    const auto labeled = labeled_mask(pool_size, labeled_ids);
    const auto unlabeled = rows_where(labeled, 0);
    check_budget(b, static_cast<int>(unlabeled.size()));
    Rng rng(seed);
    const auto picks =
        rng.sample_without_replacement(static_cast<int>(unlabeled.size()), b);
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(b));
    for (int p : picks) out.push_back(unlabeled[static_cast<std::size_t>(p)]);
    return out;
}

const std::vector<std::string>& strategy_names() {
    static const std::vector<std::string> names = {
        "bait",     "bait-forward-only", "bait-no-fisher", "det-rank1",
        "det-full", "coreset",           "confidence",     "random"};
    return names;
}

bool is_known_strategy(const std::string& name) {
    const auto& names = strategy_names();
    return std::find(names.begin(), names.end(), name) != names.end();
}

bool strategy_supports_mode(const std::string& name, TaskMode mode) {
    if (!is_known_strategy(name)) return false;
    if (mode == TaskMode::Regression) {
        // Uncertainty needs a classification model; the rank-one gradient
        // embedding needs a most-likely label.
        return name != "confidence" && name != "det-rank1";
    }
    return true;
}

std::vector<int> run_strategy(const std::string& name,
                              const StrategyRequest& req) {
    if (!is_known_strategy(name)) {
        throw ConfigError("unknown strategy '" + name + "'");
    }
    if (req.pool == nullptr) throw ConfigError("strategy request: missing pool");
    if (!strategy_supports_mode(name, req.cfg.mode)) {
        throw ConfigError("strategy '" + name + "' is not defined in this mode");
    }
    const bool classification = req.cfg.mode == TaskMode::Classification;
    if (classification && req.probs == nullptr && name != "coreset" &&
        name != "random") {
        throw ConfigError("strategy '" + name + "' needs class probabilities");
    }

    if (name == "bait" || name == "bait-forward-only" ||
        name == "bait-no-fisher") {
        SelectionConfig cfg = req.cfg;
        cfg.forward_only = name == "bait-forward-only" ? true : cfg.forward_only;
        const ClassProbabilities* probs = classification ? req.probs : nullptr;
        if (name == "bait-no-fisher") {
            const int k = classification ? req.probs->k() : 1;
            const Matrix eye =
                Matrix::Identity(req.pool->d() * k, req.pool->d() * k);
            return select_batch(*req.pool, probs, req.labeled_ids, cfg, &eye);
        }
        return select_batch(*req.pool, probs, req.labeled_ids, cfg,
                            req.fisher_override);
    }
    if (name == "det-rank1") {
        return select_det_rank1(*req.pool, *req.probs, req.labeled_ids, req.cfg);
    }
    if (name == "det-full") {
        return select_det_full(*req.pool, classification ? req.probs : nullptr,
                               req.labeled_ids, req.cfg);
    }
    if (name == "coreset") {
        return select_coreset(*req.pool, req.labeled_ids, req.cfg.batch_size);
    }
    if (name == "confidence") {
        return select_confidence(*req.probs, req.labeled_ids,
                                 req.cfg.batch_size);
    }
    return select_random(req.pool->n(), req.labeled_ids, req.cfg.batch_size,
                         req.seed);
}

}  // namespace bait
