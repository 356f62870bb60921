#include "bait/selector.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "bait/detail/kron_scorer.hpp"

namespace bait {

namespace detail {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Symmetric eigendecomposition with the jitter policy shared by every
// scoring path. Returns false when the system is unusable.
bool conditioned_eig(Matrix& a, Eigen::SelfAdjointEigenSolver<Matrix>& eig) {
    if (!a.allFinite()) return false;
    a = ((a + a.transpose()) * 0.5).eval();
    eig.compute(a);
    if (eig.info() != Eigen::Success) return false;
    const auto& ev = eig.eigenvalues();
    double lo = ev.minCoeff(), hi = ev.maxCoeff();
    if (lo > 0.0 && hi <= lo * kScoreCondLimit) return true;
    a.diagonal().array() += kScoreJitter;
    eig.compute(a);
    if (eig.info() != Eigen::Success) return false;
    lo = eig.eigenvalues().minCoeff();
    hi = eig.eigenvalues().maxCoeff();
    return lo > 0.0 && hi <= lo * kScoreCondLimit;
}

}  // namespace

bool guarded_trace_ratio(Matrix a, const Matrix& b, double* out) {
    Eigen::SelfAdjointEigenSolver<Matrix> eig;
    if (!conditioned_eig(a, eig)) return false;
    // tr(b a^-1) = sum_j (U^T b U)_jj / lambda_j
    const Matrix bu = eig.eigenvectors().transpose() * b * eig.eigenvectors();
    double acc = 0.0;
    for (Eigen::Index j = 0; j < a.rows(); ++j) {
        acc += bu(j, j) / eig.eigenvalues()[j];
    }
    *out = acc;
    return std::isfinite(acc);
}

KronScorer::KronScorer(Matrix candidates, std::vector<Matrix> mixers, int k,
                       Matrix m0, const Matrix* fisher_target,
                       int refactor_interval)
    : x_(std::move(candidates)),
      mixers_(std::move(mixers)),
      k_(k),
      refactor_interval_(refactor_interval) {
    n_ = static_cast<int>(x_.rows());
    d_ = static_cast<int>(x_.cols());
    r_ = mixers_.empty() ? k_ : static_cast<int>(mixers_.front().cols());
    const int dim = d_ * k_;
    if (m0.rows() != dim || m0.cols() != dim) {
        throw ConfigError("kron scorer: M0 dimension mismatch");
    }
    if (!mixers_.empty()) {
        if (static_cast<int>(mixers_.size()) != n_) {
            throw ConfigError("kron scorer: one mixer per candidate required");
        }
        for (const auto& w : mixers_) {
            if (w.rows() != k_ || w.cols() != r_) {
                throw ConfigError("kron scorer: mixer dimension mismatch");
            }
        }
    }
    m_ = std::move(m0);
    m_ = ((m_ + m_.transpose()) * 0.5).eval();
    if (fisher_target != nullptr) {
        if (fisher_target->rows() != dim || fisher_target->cols() != dim) {
            throw ConfigError("kron scorer: fisher target dimension mismatch");
        }
        f_ = *fisher_target;
        has_target_ = true;
    }
    rebuild_inverse();
    g_.resize(k_ * k_, n_);
    rebuild_contraction(m_inv_, g_);
    if (has_target_) {
        h_.resize(k_ * k_, n_);
        rebuild_contraction(nmat_, h_);
    }
}

void KronScorer::rebuild_inverse() {
    Eigen::LLT<Matrix> llt(m_);
    if (llt.info() != Eigen::Success) {
        throw NumericalError("information matrix is not positive definite");
    }
    m_inv_ = llt.solve(Matrix::Identity(m_.rows(), m_.cols()));
    m_inv_ = ((m_inv_ + m_inv_.transpose()) * 0.5).eval();
    if (has_target_) {
        nmat_ = m_inv_ * f_ * m_inv_;
        nmat_ = ((nmat_ + nmat_.transpose()) * 0.5).eval();
    }
}

// out column i = vec of (x_i (x) I)^T big (x_i (x) I), built one class pair
// at a time so the heavy lifting is plain GEMM.
void KronScorer::rebuild_contraction(const Matrix& big, Matrix& out) const {
    const int dim = d_ * k_;
    if (k_ == 1) {
        // G_i = x_i^T big x_i
        const Matrix y = x_ * big;
        out.row(0) = y.cwiseProduct(x_).rowwise().sum().transpose();
        return;
    }
    // Class-major permutation: perm(c*d + f, c2*d + f2) = big(f*k+c, f2*k+c2)
    Matrix perm(dim, dim);
    for (int c2 = 0; c2 < k_; ++c2) {
        for (int f2 = 0; f2 < d_; ++f2) {
            const auto src = big.col(f2 * k_ + c2);
            auto dst = perm.col(c2 * d_ + f2);
            for (int c = 0; c < k_; ++c) {
                for (int f = 0; f < d_; ++f) {
                    dst[c * d_ + f] = src[f * k_ + c];
                }
            }
        }
    }
    Matrix yc;
    for (int c = 0; c < k_; ++c) {
        // Only pairs c2 >= c; the mirror entry is identical by symmetry.
        const int width = (k_ - c) * d_;
        yc.noalias() = x_ * perm.block(c * d_, c * d_, d_, width);
        for (int c2 = c; c2 < k_; ++c2) {
            const auto vals = yc.middleCols((c2 - c) * d_, d_)
                                  .cwiseProduct(x_)
                                  .rowwise()
                                  .sum()
                                  .transpose();
            out.row(c2 * k_ + c) = vals;
            if (c2 != c) out.row(c * k_ + c2) = vals;
        }
    }
}

Matrix KronScorer::factor(int i) const {
    Matrix v(d_ * k_, r_);
    if (mixers_.empty()) {
        v.setZero();
        for (int f = 0; f < d_; ++f) {
            v.block(f * k_, 0, k_, r_).diagonal().setConstant(x_(i, f));
        }
    } else {
        const Matrix& w = mixers_[static_cast<std::size_t>(i)];
        for (int f = 0; f < d_; ++f) {
            v.block(f * k_, 0, k_, r_) = x_(i, f) * w;
        }
    }
    return v;
}

Matrix KronScorer::mixer_product(int i, const Matrix& inner) const {
    if (mixers_.empty()) return inner;
    const Matrix& w = mixers_[static_cast<std::size_t>(i)];
    return w.transpose() * inner * w;
}

Matrix KronScorer::contract_all(const Matrix& p) const {
    // p is (d*k) x r; result column i = vec of (x_i (x) I)^T p  (k x r).
    Matrix out(k_ * r_, n_);
    Matrix pc(d_, static_cast<int>(p.cols()));
    Matrix cc;
    for (int c = 0; c < k_; ++c) {
        for (int f = 0; f < d_; ++f) pc.row(f) = p.row(f * k_ + c);
        cc.noalias() = x_ * pc;  // n x r
        for (int j = 0; j < r_; ++j) {
            out.row(j * k_ + c) = cc.col(j).transpose();
        }
    }
    return out;
}

double KronScorer::trace_gain_add(int i, bool* degenerate) const {
    if (degenerate != nullptr) *degenerate = false;
    if (!has_target_) throw ConfigError("kron scorer: no fisher target");
    if (k_ == 1 && mixers_.empty()) {
        // Rank-one fast path: scalar a = 1 + x^T M^-1 x.
        double a = 1.0 + g_(0, i);
        const double b = h_(0, i);
        if (!(a > 0.0)) a += kScoreJitter;
        if (!(a > 0.0) || !std::isfinite(b / a)) {
            if (degenerate != nullptr) *degenerate = true;
            return -kInf;
        }
        return b / a;
    }
    const Eigen::Map<const Matrix> gi(g_.col(i).data(), k_, k_);
    const Eigen::Map<const Matrix> hi(h_.col(i).data(), k_, k_);
    Matrix a = mixer_product(i, gi);
    a.diagonal().array() += 1.0;
    const Matrix b = mixer_product(i, hi);
    double out = 0.0;
    if (!guarded_trace_ratio(std::move(a), b, &out)) {
        if (degenerate != nullptr) *degenerate = true;
        return -kInf;
    }
    return out;
}

double KronScorer::trace_cost_remove(int i, bool* degenerate) const {
    if (degenerate != nullptr) *degenerate = false;
    if (!has_target_) throw ConfigError("kron scorer: no fisher target");
    const Eigen::Map<const Matrix> gi(g_.col(i).data(), k_, k_);
    const Eigen::Map<const Matrix> hi(h_.col(i).data(), k_, k_);
    Matrix a = -mixer_product(i, gi);
    a.diagonal().array() += 1.0;
    const Matrix b = mixer_product(i, hi);
    double out = 0.0;
    if (!guarded_trace_ratio(std::move(a), b, &out)) {
        if (degenerate != nullptr) *degenerate = true;
        return kInf;
    }
    return out;
}

double KronScorer::logdet_gain_add(int i) const {
    if (k_ == 1 && mixers_.empty()) {
        return std::log(std::max(1.0 + g_(0, i), 1.0));
    }
    const Eigen::Map<const Matrix> gi(g_.col(i).data(), k_, k_);
    Matrix a = mixer_product(i, gi);
    a.diagonal().array() += 1.0;
    a = ((a + a.transpose()) * 0.5).eval();
    Eigen::SelfAdjointEigenSolver<Matrix> eig(a);
    double acc = 0.0;
    for (Eigen::Index j = 0; j < a.rows(); ++j) {
        // A = I + PSD, so true eigenvalues never fall below one.
        acc += std::log(std::max(eig.eigenvalues()[j], 1.0));
    }
    return acc;
}

double KronScorer::objective() const {
    return m_inv_.cwiseProduct(f_).sum();
}

void KronScorer::update(int i, bool add) {
    const Matrix v = factor(i);
    const Matrix p = m_inv_ * v;
    Matrix a = v.transpose() * p;
    if (!add) a = -a;
    a.diagonal().array() += 1.0;
    a = ((a + a.transpose()) * 0.5).eval();
    Eigen::SelfAdjointEigenSolver<Matrix> eig(a);
    if (eig.info() != Eigen::Success || eig.eigenvalues().minCoeff() <= 0.0) {
        if (add) {
            throw NumericalError("update factor produced a singular system");
        }
        throw NumericalError(
            "removal would make the information matrix non-PD");
    }
    Matrix a_inv = eig.eigenvectors() *
                   eig.eigenvalues().cwiseInverse().asDiagonal() *
                   eig.eigenvectors().transpose();
    a_inv = ((a_inv + a_inv.transpose()) * 0.5).eval();

    const double sign = add ? -1.0 : 1.0;  // correction sign on M^{-1}

    Matrix q, s;
    if (has_target_) {
        const Matrix fp = f_ * p;
        q.noalias() = m_inv_ * fp;
        const Matrix t = p.transpose() * fp;
        s.noalias() = a_inv * t * a_inv;
        s = ((s + s.transpose()) * 0.5).eval();
    }

    // Contractions of P and Q against every candidate, before mutating
    // the big matrices.
    const Matrix call = contract_all(p);
    Matrix dall;
    if (has_target_) dall = contract_all(q);

    Matrix ca(k_, r_), da(k_, r_), tmp(k_, k_);
    for (int j = 0; j < n_; ++j) {
        ca = Eigen::Map<const Matrix>(call.col(j).data(), k_, r_);
        Eigen::Map<Matrix> gj(g_.col(j).data(), k_, k_);
        tmp.noalias() = ca * a_inv * ca.transpose();
        gj += sign * tmp;
        if (has_target_) {
            da = Eigen::Map<const Matrix>(dall.col(j).data(), k_, r_);
            Eigen::Map<Matrix> hj(h_.col(j).data(), k_, k_);
            tmp.noalias() = ca * a_inv * da.transpose();
            hj += sign * tmp;
            hj += sign * tmp.transpose();
            tmp.noalias() = ca * s * ca.transpose();
            hj += tmp;
        }
    }

    if (has_target_) {
        nmat_ += sign * (p * a_inv * q.transpose());
        nmat_ += sign * (q * a_inv * p.transpose());
        nmat_ += p * s * p.transpose();
        nmat_ = ((nmat_ + nmat_.transpose()) * 0.5).eval();
    }
    m_inv_ += sign * (p * a_inv * p.transpose());
    m_inv_ = ((m_inv_ + m_inv_.transpose()) * 0.5).eval();
    if (add) {
        m_ += v * v.transpose();
    } else {
        m_ -= v * v.transpose();
    }
    m_ = ((m_ + m_.transpose()) * 0.5).eval();

    ++update_count_;
    if (refactor_interval_ > 0 && update_count_ % refactor_interval_ == 0) {
        rebuild_inverse();
        rebuild_contraction(m_inv_, g_);
        if (has_target_) rebuild_contraction(nmat_, h_);
    }
}

Matrix KronScorer::averaged_outer(const Matrix& candidates,
                                  const std::vector<Matrix>& mixers, int k,
                                  const std::vector<int>& rows) {
    const int d = static_cast<int>(candidates.cols());
    const int dim = d * k;
    Matrix out = Matrix::Zero(dim, dim);
    if (rows.empty()) return out;
    const int s = static_cast<int>(rows.size());
    Matrix xs(s, d);
    for (int j = 0; j < s; ++j) {
        xs.row(j) = candidates.row(rows[static_cast<std::size_t>(j)]);
    }
    if (k == 1 && mixers.empty()) {
        out = xs.transpose() * xs / static_cast<double>(s);
        return ((out + out.transpose()) * 0.5).eval();
    }
    // Per class pair (c, c2): sum_j ww_j(c, c2) x_j x_j^T.
    Vector w(s);
    Matrix slice(d, d);
    std::vector<Matrix> ww(static_cast<std::size_t>(s));
    for (int j = 0; j < s; ++j) {
        if (mixers.empty()) {
            ww[static_cast<std::size_t>(j)] = Matrix::Identity(k, k);
        } else {
            const Matrix& wj = mixers[static_cast<std::size_t>(rows[static_cast<std::size_t>(j)])];
            ww[static_cast<std::size_t>(j)] = wj * wj.transpose();
        }
    }
    for (int c = 0; c < k; ++c) {
        for (int c2 = c; c2 < k; ++c2) {
            for (int j = 0; j < s; ++j) {
                w[j] = ww[static_cast<std::size_t>(j)](c, c2);
            }
            slice.noalias() = xs.transpose() * w.asDiagonal() * xs;
            for (int f = 0; f < d; ++f) {
                for (int g = 0; g < d; ++g) {
                    out(f * k + c, g * k + c2) = slice(f, g);
                    if (c2 != c) out(f * k + c2, g * k + c) = slice(f, g);
                }
            }
        }
    }
    out /= static_cast<double>(s);
    return ((out + out.transpose()) * 0.5).eval();
}

}  // namespace detail

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_factor_dims(const InfoState& state, const FisherFactor& factor) {
    if (factor.factor.rows() != state.dim()) {
        throw ConfigError("fisher factor dimension does not match state");
    }
    if (!factor.factor.allFinite()) {
        throw ConfigError("fisher factor has non-finite entries");
    }
}

// Mixing matrices for every pool row under a softmax model.
std::vector<Matrix> classification_mixers(const ClassProbabilities& probs) {
    const int n = probs.n();
    std::vector<Matrix> out(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        out[static_cast<std::size_t>(i)] =
            classification_mixer(probs.probs.row(i).transpose());
    }
    return out;
}

}  // namespace

InfoState make_info_state(int dim, double lambda, InfoMatrix fisher_target,
                          int refactor_interval, const Matrix* seed_average) {
    if (dim < 1) throw ConfigError("info state: dimension must be positive");
    if (lambda < 0.0) throw ConfigError("info state: lambda must be >= 0");
    if (fisher_target.mat.rows() != dim || fisher_target.mat.cols() != dim) {
        throw ConfigError("info state: fisher target dimension mismatch");
    }
    InfoState state;
    state.lambda = lambda;
    state.refactor_interval = refactor_interval;
    state.fisher_target = std::move(fisher_target);
    state.m = lambda * Matrix::Identity(dim, dim);
    if (seed_average != nullptr) {
        if (seed_average->rows() != dim || seed_average->cols() != dim) {
            throw ConfigError("info state: seed average dimension mismatch");
        }
        state.m += *seed_average;
        state.m = ((state.m + state.m.transpose()) * 0.5).eval();
    }
    Eigen::LLT<Matrix> llt(state.m);
    if (llt.info() != Eigen::Success) {
        throw NumericalError("info state: M0 is not positive definite");
    }
    state.m_inv = llt.solve(Matrix::Identity(dim, dim));
    state.m_inv = ((state.m_inv + state.m_inv.transpose()) * 0.5).eval();
    return state;
}

double score_candidate(const InfoState& state, const FisherFactor& factor,
                       bool* degenerate) {
    if (degenerate != nullptr) *degenerate = false;
    check_factor_dims(state, factor);
    const Matrix& v = factor.factor;
    const Matrix p = state.m_inv * v;
    Matrix a = v.transpose() * p;
    a.diagonal().array() += 1.0;
    const Matrix fp = state.fisher_target.mat * p;
    const Matrix b = p.transpose() * fp;
    double out = 0.0;
    if (!detail::guarded_trace_ratio(std::move(a), b, &out)) {
        if (degenerate != nullptr) *degenerate = true;
        return -kInf;
    }
    return out;
}

double score_candidate_regression(const InfoState& state, const Vector& x,
                                  bool* degenerate) {
    if (degenerate != nullptr) *degenerate = false;
    if (x.size() != state.dim()) {
        throw ConfigError("regression score: dimension mismatch");
    }
    if (!x.allFinite()) throw ConfigError("regression score: non-finite input");
    const Vector u = state.m_inv * x;
    double a = 1.0 + x.dot(u);
    const double b = u.dot(state.fisher_target.mat * u);
    if (!(a > 0.0)) a += detail::kScoreJitter;
    if (!(a > 0.0) || !std::isfinite(b / a)) {
        if (degenerate != nullptr) *degenerate = true;
        return -kInf;
    }
    return b / a;
}

double removal_cost(const InfoState& state, const FisherFactor& factor,
                    bool* degenerate) {
    if (degenerate != nullptr) *degenerate = false;
    check_factor_dims(state, factor);
    const Matrix& v = factor.factor;
    const Matrix p = state.m_inv * v;
    Matrix a = -(v.transpose() * p);
    a.diagonal().array() += 1.0;
    const Matrix fp = state.fisher_target.mat * p;
    const Matrix b = p.transpose() * fp;
    double out = 0.0;
    if (!detail::guarded_trace_ratio(std::move(a), b, &out)) {
        if (degenerate != nullptr) *degenerate = true;
        return kInf;
    }
    return out;
}

void apply_update(InfoState& state, const FisherFactor& factor,
                  UpdateDirection direction) {
    check_factor_dims(state, factor);
    const bool add = direction == UpdateDirection::Add;
    if (factor.owner >= 0) {
        const bool listed =
            std::find(state.selected.begin(), state.selected.end(),
                      factor.owner) != state.selected.end();
        if (!add && !listed) {
            throw ConfigError("apply_update: removing a candidate that was "
                              "never selected");
        }
        if (add && listed) {
            throw ConfigError("apply_update: candidate already selected");
        }
    }
    const Matrix& v = factor.factor;
    const Matrix p = state.m_inv * v;
    Matrix a = v.transpose() * p;
    if (!add) a = -a;
    a.diagonal().array() += 1.0;
    a = ((a + a.transpose()) * 0.5).eval();
    Eigen::SelfAdjointEigenSolver<Matrix> eig(a);
    if (eig.info() != Eigen::Success || eig.eigenvalues().minCoeff() <= 0.0) {
        if (add) {
            throw NumericalError("apply_update: singular update system");
        }
        throw NumericalError(
            "apply_update: removal would make M non-PD (caller bug)");
    }
    Matrix a_inv = eig.eigenvectors() *
                   eig.eigenvalues().cwiseInverse().asDiagonal() *
                   eig.eigenvectors().transpose();
    a_inv = ((a_inv + a_inv.transpose()) * 0.5).eval();
    const double sign = add ? -1.0 : 1.0;
    state.m_inv += sign * (p * a_inv * p.transpose());
    state.m_inv = ((state.m_inv + state.m_inv.transpose()) * 0.5).eval();
    if (add) {
        state.m += v * v.transpose();
        if (factor.owner >= 0) state.selected.push_back(factor.owner);
    } else {
        state.m -= v * v.transpose();
        if (factor.owner >= 0) {
            state.selected.erase(std::find(state.selected.begin(),
                                           state.selected.end(), factor.owner));
        }
    }
    state.m = ((state.m + state.m.transpose()) * 0.5).eval();
    ++state.update_count;
    if (state.refactor_interval > 0 &&
        state.update_count % state.refactor_interval == 0) {
        Eigen::LLT<Matrix> llt(state.m);
        if (llt.info() != Eigen::Success) {
            throw NumericalError("apply_update: refactorization failed");
        }
        state.m_inv = llt.solve(Matrix::Identity(state.dim(), state.dim()));
        state.m_inv =
            ((state.m_inv + state.m_inv.transpose()) * 0.5).eval();
    }
}

std::vector<int> select_batch(const EmbeddingPool& pool,
                              const ClassProbabilities* probs,
                              const std::vector<int>& labeled_ids,
                              const SelectionConfig& cfg,
                              const Matrix* fisher_override) {
    const int n = pool.n();
    const int d = pool.d();
    if (cfg.batch_size < 1) throw ConfigError("select_batch: B must be >= 1");
    if (cfg.oversample_factor < 1) {
        throw ConfigError("select_batch: oversample factor must be >= 1");
    }
    if (cfg.lambda < 0.0) throw ConfigError("select_batch: lambda must be >= 0");
    const bool classification = cfg.mode == TaskMode::Classification;
    if (classification && probs == nullptr) {
        throw ConfigError("select_batch: classification mode needs probabilities");
    }
    if (!classification && probs != nullptr) {
        throw ConfigError("select_batch: regression mode takes no probabilities");
    }
    if (probs != nullptr && probs->n() != n) {
        throw ConfigError("select_batch: pool and probabilities disagree on n");
    }
    const int k = classification ? probs->k() : 1;
    if (static_cast<long>(d) * k > kMaxInfoDim) {
        throw ConfigError("select_batch: d*k exceeds the supported cap of " +
                          std::to_string(kMaxInfoDim));
    }

    std::vector<char> labeled(static_cast<std::size_t>(n), 0);
    int n_labeled = 0;
    for (int id : labeled_ids) {
        if (id < 0 || id >= n) throw ConfigError("select_batch: labeled id out of range");
        if (!labeled[static_cast<std::size_t>(id)]) {
            labeled[static_cast<std::size_t>(id)] = 1;
            ++n_labeled;
        }
    }
    const int available = n - n_labeled;
    if (available < 1) throw ConfigError("select_batch: no unlabeled candidates");
    if (cfg.batch_size > available) {
        throw ConfigError("select_batch: B exceeds available unlabeled candidates");
    }

    // Fisher target over the full pool, as seen by the current model.
    Matrix target;
    if (fisher_override != nullptr) {
        target = *fisher_override;
        if (target.rows() != d * k || target.cols() != d * k) {
            throw ConfigError("select_batch: fisher override dimension mismatch");
        }
    } else {
        target = global_fisher(pool, probs).mat;
    }

    std::vector<Matrix> mixers;
    if (classification) mixers = classification_mixers(*probs);

    std::vector<int> seed_rows;
    seed_rows.reserve(static_cast<std::size_t>(n_labeled));
    for (int i = 0; i < n; ++i) {
        if (labeled[static_cast<std::size_t>(i)]) seed_rows.push_back(i);
    }
    Matrix m0 = cfg.lambda * Matrix::Identity(d * k, d * k);
    if (!seed_rows.empty()) {
        m0 += detail::KronScorer::averaged_outer(pool.data, mixers, k, seed_rows);
    }

    detail::KronScorer scorer(pool.data, std::move(mixers), k, std::move(m0),
                              &target, cfg.refactor_interval);

    // Forward-only selects exactly B; otherwise oversample before pruning.
    const int forward_count =
        cfg.forward_only
            ? cfg.batch_size
            : std::min(cfg.oversample_factor * cfg.batch_size, available);
    std::vector<char> picked(static_cast<std::size_t>(n), 0);
    std::vector<int> chosen;
    chosen.reserve(static_cast<std::size_t>(forward_count));

    for (int step = 0; step < forward_count; ++step) {
        int best = -1;
        double best_gain = -kInf;
        for (int i = 0; i < n; ++i) {
            if (labeled[static_cast<std::size_t>(i)] ||
                picked[static_cast<std::size_t>(i)]) {
                continue;
            }
            const double gain = scorer.trace_gain_add(i);
            // Ascending scan + strict '>' keeps the lowest id on ties.
            if (gain > best_gain) {
                best_gain = gain;
                best = i;
            }
        }
        if (best < 0) {
            // Every remaining candidate is degenerate; fall back to the
            // lowest id so the batch contract still holds.
            for (int i = 0; i < n && best < 0; ++i) {
                if (!labeled[static_cast<std::size_t>(i)] &&
                    !picked[static_cast<std::size_t>(i)]) {
                    best = i;
                }
            }
        }
        if (best < 0) break;
        scorer.update(best, /*add=*/true);
        picked[static_cast<std::size_t>(best)] = 1;
        chosen.push_back(best);
    }

    if (!cfg.forward_only) {
        std::vector<int> by_id = chosen;
        std::sort(by_id.begin(), by_id.end());
        while (static_cast<int>(chosen.size()) > cfg.batch_size) {
            int best = -1;
            double best_cost = kInf;
            for (int id : by_id) {
                const double cost = scorer.trace_cost_remove(id);
                if (cost < best_cost) {
                    best_cost = cost;
                    best = id;
                }
            }
            if (best < 0) {
                throw NumericalError("select_batch: no removable candidate");
            }
            scorer.update(best, /*add=*/false);
            chosen.erase(std::find(chosen.begin(), chosen.end(), best));
            by_id.erase(std::find(by_id.begin(), by_id.end(), best));
        }
    }
    if (static_cast<int>(chosen.size()) != cfg.batch_size) {
        throw NumericalError("select_batch: could not assemble a full batch");
    }
    return chosen;
}

}  // namespace bait
