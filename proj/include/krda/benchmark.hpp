#pragma once

// End-to-end experiment harness: rotated-moons accuracy ladder and Gaussian-mixture
// pushforward tasks. Every cell draws its seeds from (master seed, cell coordinates), so a
// single cell can be rerun in isolation and reproduce its row exactly.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <algorithm>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "krda/data.hpp"
#include "krda/nade.hpp"
#include "krda/random.hpp"
#include "krda/stats.hpp"
#include "krda/svm.hpp"
#include "krda/trainer.hpp"
#include "krda/transport.hpp"

namespace krda {

/// Training schedule used by the benchmark suites: fixed-length runs on all rows with small
/// batches. Held-out validation on ~30 rows per domain selects noisy checkpoints at this scale.
inline TrainConfig benchmark_train_config() {
    TrainConfig cfg;
    cfg.epochs = 2000;
    cfg.batch_size = 32;
    cfg.validation_fraction = 0.0;
    cfg.patience = 200;
    return cfg;
}

/// Model/classifier settings shared by every benchmark task.
struct PipelineConfig {
    std::size_t hidden = 50;
    std::size_t components = 5;
    TrainConfig train = benchmark_train_config();
    SvmConfig svm;
    double subsample_fraction = 0.9;
    std::size_t workers = 0;
};

struct PipelineResult {
    double krda_accuracy = 0.0;
    double source_only_accuracy = 0.0;
    double max_residual = 0.0;
    std::size_t failures = 0;
};

/// Fits the joint density on (source, target features), transfers the source, trains an SVM
/// on the transferred labelled source and scores it on `test`. Also scores the source-only SVM.
inline PipelineResult run_pipeline(const Dataset& source, const Dataset& target, const Dataset& test,
                                   const PipelineConfig& cfg) {
    Dataset unlabeled_target = target;
    unlabeled_target.labels.reset();
    const KrdaModel model = fit_joint(source, unlabeled_target, cfg.hidden, cfg.components, cfg.train);
    const TransferReport report = transfer_dataset(model, source, cfg.workers);
    const Dataset transferred = transferred_dataset(report, source);

    PipelineResult out;
    out.krda_accuracy = accuracy(svm_fit(transferred, cfg.svm), test);
    out.source_only_accuracy = accuracy(svm_fit(source, cfg.svm), test);
    out.max_residual = report.max_residual();
    out.failures = report.failures.size();
    return out;
}

struct MoonsCell {
    double angle_deg = 40.0;
    std::size_t train_n = 300;
    std::size_t repeat = 0;
};

struct MoonsBenchConfig {
    std::vector<double> angles{10, 20, 30, 40, 50, 60, 70, 80, 90};
    std::vector<std::size_t> train_sizes{300};
    std::size_t repeats = 5;
    std::size_t test_n = 1000;
    double noise_std = 0.1;
    std::uint64_t master_seed = 0;
    PipelineConfig pipeline;
};

struct MoonsCellResult {
    MoonsCell cell;
    PipelineResult result;
};

namespace detail {

/// Stable integer key of a cell; independent of which other cells are run.
inline std::uint64_t cell_key(const MoonsCell& c) {
    const auto millideg = static_cast<std::int64_t>(std::llround(c.angle_deg * 1000.0));
    std::uint64_t key = mix_seed(static_cast<std::uint64_t>(millideg));
    key = mix_seed(key ^ static_cast<std::uint64_t>(c.train_n));
    return mix_seed(key ^ static_cast<std::uint64_t>(c.repeat));
}

}  // namespace detail

inline MoonsCellResult run_moons_cell(const MoonsBenchConfig& cfg, const MoonsCell& cell) {
    const std::uint64_t key = detail::cell_key(cell);
    auto seed = [&](std::uint64_t stream) { return derive_seed(cfg.master_seed, key * 8 + stream); };

    const Dataset source = gen_moons({cell.train_n, cfg.noise_std, 0.0, seed(0)});
    const Dataset target = gen_moons({cell.train_n, cfg.noise_std, cell.angle_deg, seed(1)});
    const Dataset test = gen_moons({cfg.test_n, cfg.noise_std, cell.angle_deg, seed(2)});
    const double frac = cfg.pipeline.subsample_fraction;
    const Dataset source_sub = frac < 1.0 ? subsample(source, frac, seed(3)) : source;
    const Dataset target_sub = frac < 1.0 ? subsample(target, frac, seed(4)) : target;

    PipelineConfig pipeline = cfg.pipeline;
    pipeline.train.seed = seed(5);
    return {cell, run_pipeline(source_sub, target_sub, test, pipeline)};
}

inline std::vector<MoonsCell> moons_cells(const MoonsBenchConfig& cfg) {
    std::vector<MoonsCell> cells;
    for (std::size_t n : cfg.train_sizes)
        for (double angle : cfg.angles)
            for (std::size_t r = 0; r < cfg.repeats; ++r) cells.push_back({angle, n, r});
    return cells;
}

/// One accuracy observation of the results table.
struct AccuracyRow {
    std::string suite;
    std::string task;  // rotation angle for moons, data set name for csv
    std::size_t train_n = 0;
    std::size_t repeat = 0;
    std::string method;  // "krda" or "source_only"
    double accuracy = 0.0;
};

inline std::vector<AccuracyRow> accuracy_rows(const MoonsCellResult& r) {
    const std::string task = format_double(r.cell.angle_deg);
    return {{"moons", task, r.cell.train_n, r.cell.repeat, "krda", r.result.krda_accuracy},
            {"moons", task, r.cell.train_n, r.cell.repeat, "source_only", r.result.source_only_accuracy}};
}

inline void write_accuracy_header(std::ostream& out) {
    out << "suite,task,train_n,repeat,method,accuracy\n";
}

inline void write_accuracy_row(std::ostream& out, const AccuracyRow& r) {
    out << r.suite << ',' << r.task << ',' << r.train_n << ',' << r.repeat << ',' << r.method << ','
        << format_double(r.accuracy) << '\n';
}

struct SummaryRow {
    std::string suite;
    std::string task;
    std::size_t train_n = 0;
    std::string method;
    std::size_t repeats = 0;
    Interval accuracy;
};

/// Mean and 95% interval per (suite, task, train_n, method), in first-appearance order.
inline std::vector<SummaryRow> summarize(const std::vector<AccuracyRow>& rows) {
    std::vector<SummaryRow> out;
    std::vector<std::vector<double>> values;
    for (const auto& r : rows) {
        auto it = std::find_if(out.begin(), out.end(), [&](const SummaryRow& s) {
            return s.suite == r.suite && s.task == r.task && s.train_n == r.train_n && s.method == r.method;
        });
        if (it == out.end()) {
            out.push_back({r.suite, r.task, r.train_n, r.method, 0, {}});
            values.emplace_back();
            it = out.end() - 1;
        }
        values[static_cast<std::size_t>(it - out.begin())].push_back(r.accuracy);
    }
    for (std::size_t k = 0; k < out.size(); ++k) {
        out[k].repeats = values[k].size();
        out[k].accuracy = mean_ci95(values[k]);
    }
    return out;
}

inline void write_summary(std::ostream& out, const std::vector<SummaryRow>& rows) {
    out << "suite,task,train_n,method,repeats,mean_accuracy,ci95_half_width\n";
    for (const auto& r : rows)
        out << r.suite << ',' << r.task << ',' << r.train_n << ',' << r.method << ',' << r.repeats << ','
            << format_double(r.accuracy.mean) << ',' << format_double(r.accuracy.half_width) << '\n';
}

// ---------------------------------------------------------------------------
// User-supplied tabular task

struct CsvBenchConfig {
    std::string task = "csv";
    std::size_t repeats = 5;
    std::uint64_t master_seed = 0;
    PipelineConfig pipeline;
};

/// Repeats the pipeline on a labelled source, an unlabelled target and a labelled target
/// test set, each repeat on a fresh subsample of source and target.
inline std::vector<AccuracyRow> run_csv_bench(const CsvBenchConfig& cfg, const Dataset& source,
                                              const Dataset& target, const Dataset& test) {
    if (!source.labels) throw InvalidArgument("csv benchmark source needs a label column");
    if (!test.labels) throw InvalidArgument("csv benchmark test set needs a label column");
    if (source.dim() != target.dim()) throw DimensionMismatch("target dataset", source.dim(), target.dim());
    if (source.dim() != test.dim()) throw DimensionMismatch("test dataset", source.dim(), test.dim());
    std::vector<AccuracyRow> rows;
    for (std::size_t r = 0; r < cfg.repeats; ++r) {
        auto seed = [&](std::uint64_t stream) { return derive_seed(cfg.master_seed, mix_seed(r) * 8 + stream); };
        const double frac = cfg.pipeline.subsample_fraction;
        const Dataset s = frac < 1.0 ? subsample(source, frac, seed(0)) : source;
        const Dataset t = frac < 1.0 ? subsample(target, frac, seed(1)) : target;
        PipelineConfig pipeline = cfg.pipeline;
        pipeline.train.seed = seed(2);
        const PipelineResult res = run_pipeline(s, t, test, pipeline);
        rows.push_back({"csv", cfg.task, s.size(), r, "krda", res.krda_accuracy});
        rows.push_back({"csv", cfg.task, s.size(), r, "source_only", res.source_only_accuracy});
    }
    return rows;
}

// ---------------------------------------------------------------------------
// Gaussian-mixture pushforward tasks

/// m equal-weight isotropic modes evenly spaced on a circle of the given radius.
inline GmmSpec ring_gmm(std::size_t modes, double radius, double variance, double phase_deg,
                        std::size_t n, std::uint64_t seed) {
    GmmSpec spec;
    spec.n = n;
    spec.seed = seed;
    for (std::size_t k = 0; k < modes; ++k) {
        const double t = (phase_deg + 360.0 * static_cast<double>(k) / static_cast<double>(modes)) *
                         std::numbers::pi / 180.0;
        spec.modes.push_back({1.0 / static_cast<double>(modes),
                              {radius * std::cos(t), radius * std::sin(t)},
                              {variance, variance}});
    }
    return spec;
}

struct GmmTaskResult {
    std::size_t source_modes = 0;
    std::size_t target_modes = 0;
    std::size_t repeat = 0;
    double raw_ks = 0.0;          // max marginal KS, source vs fresh target
    double transferred_ks = 0.0;  // max marginal KS, transferred source vs fresh target
    double raw_energy = 0.0;
    double transferred_energy = 0.0;
    double max_residual = 0.0;
};

struct GmmBenchConfig {
    std::vector<std::pair<std::size_t, std::size_t>> tasks{{2, 3}, {3, 2}, {4, 8}};
    std::size_t repeats = 1;
    std::size_t n = 1000;
    double radius = 3.0;
    double variance = 0.25;
    std::uint64_t master_seed = 0;
    PipelineConfig pipeline;
};

inline GmmTaskResult run_gmm_task(const GmmBenchConfig& cfg, std::size_t source_modes,
                                  std::size_t target_modes, std::size_t repeat) {
    const std::uint64_t key = mix_seed(mix_seed(source_modes * 1000 + target_modes) ^ repeat);
    auto seed = [&](std::uint64_t stream) { return derive_seed(cfg.master_seed, key * 8 + stream); };
    const Dataset source = gen_gmm(ring_gmm(source_modes, cfg.radius, cfg.variance, 0.0, cfg.n, seed(0)));
    const Dataset target = gen_gmm(ring_gmm(target_modes, cfg.radius, cfg.variance, 90.0, cfg.n, seed(1)));
    const Dataset fresh = gen_gmm(ring_gmm(target_modes, cfg.radius, cfg.variance, 90.0, cfg.n, seed(2)));

    TrainConfig train = cfg.pipeline.train;
    train.seed = seed(3);
    const KrdaModel model = fit_joint(source, target, cfg.pipeline.hidden, cfg.pipeline.components, train);
    const TransferReport report = transfer_dataset(model, source, cfg.pipeline.workers);

    GmmTaskResult out;
    out.source_modes = source_modes;
    out.target_modes = target_modes;
    out.repeat = repeat;
    out.raw_ks = max_marginal_ks(source.features, fresh.features);
    out.transferred_ks = max_marginal_ks(report.transferred, fresh.features);
    out.raw_energy = energy_distance(source.features, fresh.features);
    out.transferred_energy = energy_distance(report.transferred, fresh.features);
    out.max_residual = report.max_residual();
    return out;
}

inline void write_gmm_rows_header(std::ostream& out) {
    out << "suite,source_modes,target_modes,repeat,raw_ks,transferred_ks,raw_energy,transferred_energy,"
           "max_residual\n";
}

inline void write_gmm_row(std::ostream& out, const GmmTaskResult& r) {
    out << "gmm," << r.source_modes << ',' << r.target_modes << ',' << r.repeat << ','
        << format_double(r.raw_ks) << ',' << format_double(r.transferred_ks) << ','
        << format_double(r.raw_energy) << ',' << format_double(r.transferred_energy) << ','
        << format_double(r.max_residual) << '\n';
}

}  // namespace krda
