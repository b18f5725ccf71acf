#pragma once

// Joint maximum-likelihood training of the source and target densities with Adam.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <optional>
#include <ostream>
#include <vector>

#include "krda/data.hpp"
#include "krda/error.hpp"
#include "krda/nade.hpp"
#include "krda/random.hpp"

namespace krda {

struct TrainConfig {
    std::size_t epochs = 300;
    std::size_t batch_size = 64;
    double learning_rate = 1e-3;
    double adam_beta1 = 0.9;
    double adam_beta2 = 0.999;
    double adam_eps = 1e-8;
    std::uint64_t seed = 0;
    double validation_fraction = 0.1;
    /// Epochs without improvement of the selection score before stopping; 0 disables.
    std::size_t patience = 30;

    void validate() const {
        if (epochs == 0) throw InvalidArgument("epochs must be positive");
        if (batch_size == 0) throw InvalidArgument("batch size must be positive");
        if (!(learning_rate > 0.0)) throw InvalidArgument("learning rate must be positive");
        if (!(adam_beta1 >= 0.0 && adam_beta1 < 1.0) || !(adam_beta2 >= 0.0 && adam_beta2 < 1.0))
            throw InvalidArgument("Adam betas must lie in [0, 1)");
        if (!(validation_fraction >= 0.0 && validation_fraction <= 0.5))
            throw InvalidArgument("validation fraction must lie in [0, 0.5]");
    }
};

struct AdamState {
    Parameters first_moment;
    Parameters second_moment;
    std::uint64_t step = 0;

    static AdamState for_model(const KrdaModel& m) {
        return {Parameters::zeros(m.d, m.hidden, m.components),
                Parameters::zeros(m.d, m.hidden, m.components), 0};
    }
};

/// One bias-corrected Adam step in the ascent direction.
inline void adam_step(Parameters& params, const Gradient& grads, AdamState& state,
                      const TrainConfig& cfg) {
    const auto g = grads.blocks();
    for (auto block : g)
        for (double v : block)
            if (!std::isfinite(v)) throw NonFiniteGradient("non-finite gradient entry; training diverged");

    auto p = params.blocks();
    auto m = state.first_moment.blocks();
    auto v = state.second_moment.blocks();
    if (p.size() != g.size()) throw DimensionMismatch("gradient layout", p.size(), g.size());

    ++state.step;
    const double t = static_cast<double>(state.step);
    const double correction1 = 1.0 - std::pow(cfg.adam_beta1, t);
    const double correction2 = 1.0 - std::pow(cfg.adam_beta2, t);
    for (std::size_t b = 0; b < p.size(); ++b) {
        if (p[b].size() != g[b].size()) throw DimensionMismatch("gradient block", p[b].size(), g[b].size());
        for (std::size_t k = 0; k < p[b].size(); ++k) {
            m[b][k] = cfg.adam_beta1 * m[b][k] + (1.0 - cfg.adam_beta1) * g[b][k];
            v[b][k] = cfg.adam_beta2 * v[b][k] + (1.0 - cfg.adam_beta2) * g[b][k] * g[b][k];
            const double m_hat = m[b][k] / correction1;
            const double v_hat = v[b][k] / correction2;
            p[b][k] += cfg.learning_rate * m_hat / (std::sqrt(v_hat) + cfg.adam_eps);
        }
    }
}

/// Sums the source-head gradient of `source_batch` and the target-head gradient of
/// `target_batch` (either may be empty) and applies one Adam step. A frozen head keeps
/// its parameters unchanged. Returns the sum of the two batch-mean log-likelihoods.
inline double train_step(KrdaModel& model, AdamState& state, const TrainConfig& cfg,
                         const Matrix& source_batch, const Matrix& target_batch,
                         std::optional<Domain> frozen_head = std::nullopt) {
    Gradient grad = Parameters::zeros(model.d, model.hidden, model.components);
    double ll = 0.0;
    if (!source_batch.empty()) ll += log_likelihood_grad(model, Domain::source, source_batch, grad);
    if (!target_batch.empty()) ll += log_likelihood_grad(model, Domain::target, target_batch, grad);
    std::optional<DomainHead> kept;
    if (frozen_head) kept = model.params.head(*frozen_head);
    adam_step(model.params, grad, state, cfg);
    if (kept) model.params.head(*frozen_head) = std::move(*kept);
    return ll;
}

struct EpochMetrics {
    std::size_t epoch = 0;
    double source_train_ll = 0.0;
    double target_train_ll = 0.0;
    std::optional<double> source_val_ll;
    std::optional<double> target_val_ll;
    double elapsed_ms = 0.0;
};

inline void write_metrics_header(std::ostream& out) {
    out << "epoch,source_train_ll,target_train_ll,source_val_ll,target_val_ll,elapsed_ms\n";
}

inline void write_metrics_row(std::ostream& out, const EpochMetrics& m) {
    auto opt = [](const std::optional<double>& v) { return v ? format_double(*v) : std::string{}; };
    out << m.epoch << ',' << format_double(m.source_train_ll) << ',' << format_double(m.target_train_ll)
        << ',' << opt(m.source_val_ll) << ',' << opt(m.target_val_ll) << ','
        << static_cast<long long>(std::llround(m.elapsed_ms)) << '\n';
}

struct FitSummary {
    std::size_t epochs_run = 0;
    std::size_t best_epoch = 0;
    double best_score = -std::numeric_limits<double>::infinity();
    bool stopped_early = false;
};

namespace detail {

struct DomainSplit {
    Matrix train;
    Matrix validation;
};

inline DomainSplit split_rows(const Matrix& standardized, double fraction, Rng& rng) {
    const std::size_t n = standardized.rows();
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::shuffle(idx.begin(), idx.end(), rng);
    auto n_val = static_cast<std::size_t>(std::floor(fraction * static_cast<double>(n)));
    n_val = std::min(n_val, n - 1);
    DomainSplit out{Matrix(0, standardized.cols()), Matrix(0, standardized.cols())};
    for (std::size_t r = 0; r < n; ++r)
        (r < n_val ? out.validation : out.train).append_row(standardized.row(idx[r]));
    return out;
}

inline void gather_batch(const Matrix& data, std::span<const std::size_t> order, std::size_t batch,
                         std::size_t batch_size, Matrix& out) {
    const std::size_t begin = batch * batch_size;
    const std::size_t end = std::min(begin + batch_size, order.size());
    out = Matrix(end - begin, data.cols());
    for (std::size_t r = begin; r < end; ++r)
        std::copy_n(data.row(order[r]).begin(), data.cols(), out.row(r - begin).begin());
}

}  // namespace detail

using EpochCallback = std::function<void(const EpochMetrics&)>;

/// Fits both domain densities with a shared backbone.
///
/// Data are standardized with statistics pooled over both domains. Each optimizer step
/// consumes one source minibatch (source head) and one target minibatch (target head); the
/// smaller domain cycles through its batches. After every epoch the sum of the two per-domain
/// mean validation log-likelihoods (training log-likelihoods when validation_fraction is 0)
/// is scored and the best-scoring parameters are returned.
inline KrdaModel fit_joint(const Dataset& source, const Dataset& target, std::size_t hidden,
                           std::size_t components, const TrainConfig& cfg,
                           const EpochCallback& on_epoch = {}, FitSummary* summary = nullptr) {
    cfg.validate();
    if (source.dim() != target.dim()) throw DimensionMismatch("target dataset", source.dim(), target.dim());
    if (source.size() < 2) throw EmptyDataset("source dataset needs at least 2 rows");
    if (target.size() < 2) throw EmptyDataset("target dataset needs at least 2 rows");
    const std::size_t d = source.dim();
    if (d == 0) throw EmptyDataset("datasets have no feature columns");

    const auto clock_start = std::chrono::steady_clock::now();
    Rng rng(cfg.seed);

    KrdaModel model = KrdaModel::init(d, hidden, components, rng);
    model.standardizer = Standardizer::fit({&source.features, &target.features});

    auto src = detail::split_rows(model.standardizer.apply(source.features), cfg.validation_fraction, rng);
    auto tgt = detail::split_rows(model.standardizer.apply(target.features), cfg.validation_fraction, rng);
    const bool has_validation = !src.validation.empty() && !tgt.validation.empty();

    std::vector<std::size_t> src_order(src.train.rows()), tgt_order(tgt.train.rows());
    std::iota(src_order.begin(), src_order.end(), std::size_t{0});
    std::iota(tgt_order.begin(), tgt_order.end(), std::size_t{0});
    const std::size_t bs = cfg.batch_size;
    const std::size_t src_batches = (src_order.size() + bs - 1) / bs;
    const std::size_t tgt_batches = (tgt_order.size() + bs - 1) / bs;
    const std::size_t steps = std::max(src_batches, tgt_batches);

    AdamState state = AdamState::for_model(model);
    Parameters best = model.params;
    FitSummary local;
    std::size_t since_best = 0;
    Matrix src_batch, tgt_batch;

    for (std::size_t epoch = 1; epoch <= cfg.epochs; ++epoch) {
        std::shuffle(src_order.begin(), src_order.end(), rng);
        std::shuffle(tgt_order.begin(), tgt_order.end(), rng);
        for (std::size_t s = 0; s < steps; ++s) {
            detail::gather_batch(src.train, src_order, s % src_batches, bs, src_batch);
            detail::gather_batch(tgt.train, tgt_order, s % tgt_batches, bs, tgt_batch);
            train_step(model, state, cfg, src_batch, tgt_batch);
        }

        EpochMetrics metrics;
        metrics.epoch = epoch;
        metrics.source_train_ll = mean_log_likelihood(model, Domain::source, src.train);
        metrics.target_train_ll = mean_log_likelihood(model, Domain::target, tgt.train);
        double score = metrics.source_train_ll + metrics.target_train_ll;
        if (has_validation) {
            metrics.source_val_ll = mean_log_likelihood(model, Domain::source, src.validation);
            metrics.target_val_ll = mean_log_likelihood(model, Domain::target, tgt.validation);
            score = *metrics.source_val_ll + *metrics.target_val_ll;
        }
        if (!std::isfinite(metrics.source_train_ll) || !std::isfinite(metrics.target_train_ll))
            throw NonFiniteGradient("training log-likelihood became non-finite at epoch " +
                                    std::to_string(epoch));
        metrics.elapsed_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - clock_start).count();
        if (on_epoch) on_epoch(metrics);

        local.epochs_run = epoch;
        if (score > local.best_score) {
            local.best_score = score;
            local.best_epoch = epoch;
            best = model.params;
            since_best = 0;
        } else if (cfg.patience > 0 && ++since_best >= cfg.patience) {
            local.stopped_early = true;
            break;
        }
    }

    model.params = std::move(best);
    if (summary) *summary = local;
    return model;
}

}  // namespace krda
