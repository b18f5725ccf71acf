#pragma once

// Knothe-Rosenblatt transfer of source samples into the target domain.
//
// Coordinate i of the transferred sample is the target conditional quantile, given the
// already transferred coordinates, of the source conditional CDF value of x_i given the
// source prefix. Both conditionals come from the jointly trained autoregressive model.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <string>
#include <thread>
#include <vector>

#include "krda/data.hpp"
#include "krda/error.hpp"
#include "krda/mixture.hpp"
#include "krda/nade.hpp"

namespace krda {

struct TransferFailure {
    std::size_t row = 0;
    std::size_t component = 0;  // zero-based coordinate index
    std::string error;

    friend bool operator==(const TransferFailure&, const TransferFailure&) = default;
};

struct TransferReport {
    Matrix transferred;  // original coordinates
    Matrix quantiles;    // clipped source CDF values
    Matrix residuals;    // |F_T(T(x)_i) - q_i| in standardized coordinates
    std::vector<TransferFailure> failures;

    double max_residual() const {
        double worst = 0.0;
        for (double r : residuals.data()) worst = std::max(worst, r);
        return worst;
    }
};

/// Per-sample result in standardized coordinates.
struct SampleTransfer {
    std::vector<double> value;
    std::vector<double> quantiles;
    std::vector<double> residuals;
    std::vector<TransferFailure> failures;  // row field left at 0
};

/// Transfers one standardized source sample. Inversion failures fall back to the target
/// conditional median and are listed in the result instead of being thrown.
inline SampleTransfer transfer_standardized_detailed(const KrdaModel& model,
                                                     std::span<const double> x_source) {
    model.check_input(x_source);
    SampleTransfer out;
    out.value.resize(model.d);
    out.quantiles.resize(model.d);
    out.residuals.resize(model.d);

    Autoregression source_state(model);
    Autoregression target_state(model);
    for (std::size_t i = 0; i < model.d; ++i) {
        const GaussianMixture1D source_mix = source_state.mixture(Domain::source);
        const GaussianMixture1D target_mix = target_state.mixture(Domain::target);
        const double q = clip_quantile(mixture_cdf(source_mix, x_source[i]));
        double y;
        try {
            y = mixture_inverse_cdf(target_mix, q);
        } catch (const BracketNotFound& e) {
            out.failures.push_back({0, i, e.what()});
            try {
                y = mixture_inverse_cdf(target_mix, 0.5);
            } catch (const BracketNotFound&) {
                y = 0.0;
            }
        }
        out.value[i] = y;
        out.quantiles[i] = q;
        out.residuals[i] = std::abs(mixture_cdf(target_mix, y) - q);
        source_state.advance(x_source[i]);
        target_state.advance(y);
    }
    return out;
}

/// Transfers one standardized source sample; BracketNotFound propagates with the coordinate attached.
inline std::vector<double> transfer_standardized(const KrdaModel& model, std::span<const double> x_source) {
    auto r = transfer_standardized_detailed(model, x_source);
    if (!r.failures.empty())
        throw Error("quantile inversion failed at component " +
                    std::to_string(r.failures.front().component) + ": " + r.failures.front().error);
    return std::move(r.value);
}

/// Transfers one sample given in original coordinates and returns original coordinates.
inline std::vector<double> transfer_sample(const KrdaModel& model, std::span<const double> x_source) {
    model.check_input(x_source);
    std::vector<double> x(x_source.begin(), x_source.end());
    model.standardizer.apply(x);
    auto y = transfer_standardized(model, x);
    model.standardizer.invert(y);
    return y;
}

inline std::size_t default_worker_count() {
    return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

/// Transfers every row. Rows are independent and are distributed over `workers` threads
/// (0 selects the hardware concurrency); output order always follows input order.
inline TransferReport transfer_dataset(const KrdaModel& model, const Dataset& source,
                                       std::size_t workers = 0) {
    if (source.dim() != model.d) throw DimensionMismatch("transfer input", model.d, source.dim());
    const std::size_t n = source.size();
    const std::size_t d = model.d;
    TransferReport report{Matrix(n, d), Matrix(n, d), Matrix(n, d), {}};
    std::vector<std::vector<TransferFailure>> row_failures(n);

    std::atomic<std::size_t> next{0};
    auto work = [&] {
        std::vector<double> x(d);
        for (std::size_t r = next.fetch_add(1); r < n; r = next.fetch_add(1)) {
            std::copy_n(source.features.row(r).begin(), d, x.begin());
            model.standardizer.apply(x);
            auto res = transfer_standardized_detailed(model, x);
            model.standardizer.invert(res.value);
            std::copy_n(res.value.begin(), d, report.transferred.row(r).begin());
            std::copy_n(res.quantiles.begin(), d, report.quantiles.row(r).begin());
            std::copy_n(res.residuals.begin(), d, report.residuals.row(r).begin());
            for (auto& f : res.failures) f.row = r;
            row_failures[r] = std::move(res.failures);
        }
    };

    if (workers == 0) workers = default_worker_count();
    workers = std::min(workers, std::max<std::size_t>(n, 1));
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    }

    for (auto& f : row_failures)
        report.failures.insert(report.failures.end(), f.begin(), f.end());
    return report;
}

/// Transferred coordinates with the source labels and column names carried over.
inline Dataset transferred_dataset(const TransferReport& report, const Dataset& source) {
    Dataset out;
    out.features = report.transferred;
    out.labels = source.labels;
    out.column_names = source.column_names;
    return out;
}

}  // namespace krda
