// krda: command-line front end for data generation, joint density fitting, Knothe-Rosenblatt
// transfer, SVM evaluation, benchmarks and plots.
//
// Exit codes: 0 success, 1 runtime or data error, 2 usage error.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "krda/krda.hpp"
#include "manifest.hpp"

namespace {

using nlohmann::json;
using namespace krda;

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path + "' for reading");
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open '" + path + "' for writing");
    out << content;
    if (!out) throw Error("failed writing '" + path + "'");
}

/// Appends `--key value` for every config entry whose flag is not already on the command line.
std::vector<std::string> expand_config(std::vector<std::string> args) {
    auto it = std::find(args.begin(), args.end(), "--config");
    if (it == args.end()) return args;
    if (std::next(it) == args.end()) throw UsageError("--config requires a file argument");
    const std::string path = *std::next(it);
    args.erase(it, std::next(it, 2));

    json cfg;
    try {
        cfg = json::parse(read_file(path));
    } catch (const json::exception& e) {
        throw UsageError("config file '" + path + "' is not valid JSON: " + e.what());
    } catch (const Error& e) {
        throw UsageError(e.what());
    }
    if (!cfg.is_object()) throw UsageError("config file must hold a JSON object");
    for (const auto& [key, value] : cfg.items()) {
        std::string flag = key;
        std::replace(flag.begin(), flag.end(), '_', '-');
        if (flag == "kind" || flag == "suite") {
            continue;  // positional; must be given on the command line
        }
        flag = "--" + flag;
        if (std::find(args.begin(), args.end(), flag) != args.end()) continue;
        auto scalar = [](const json& v) {
            if (v.is_string()) return v.get<std::string>();
            if (v.is_number_float()) return format_double(v.get<double>());
            return v.dump();
        };
        if (value.is_boolean()) {
            if (value.get<bool>()) args.push_back(flag);
        } else if (value.is_array()) {
            args.push_back(flag);
            for (const auto& v : value) args.push_back(scalar(v));
        } else {
            args.push_back(flag);
            args.push_back(scalar(value));
        }
    }
    return args;
}

json resolved_options(const CLI::App& sub) {
    json out = json::object();
    for (const CLI::Option* opt : sub.get_options()) {
        const std::string name = opt->get_single_name();
        if (name.empty() || name == "help") continue;
        auto values = opt->reduced_results();
        if (values.empty() && !opt->get_default_str().empty()) values = {opt->get_default_str()};
        if (values.empty()) continue;
        out[name] = values.size() == 1 ? json(values.front()) : json(values);
    }
    return out;
}

Dataset load_checked(const std::string& path) {
    try {
        Dataset d = load_csv(path);
        return d;
    } catch (const ParseError& e) {
        throw Error("'" + path + "': " + e.what());
    }
}

// ---------------------------------------------------------------------------

struct GenOptions {
    std::string kind;
    std::size_t n = 1000;
    double noise = 0.1;
    double rotation = 0.0;
    std::uint64_t seed = 0;
    std::vector<std::string> modes;
    std::size_t ring = 0;
    double radius = 3.0;
    double variance = 0.25;
    double phase = 0.0;
    std::string out;
};

GmmMode parse_mode(const std::string& text) {
    // weight:m1,m2,...:v1,v2,...
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
    if (parts.size() != 3) throw UsageError("--mode expects weight:mean,...:variance,..., got '" + text + "'");
    auto numbers = [&](const std::string& s) {
        std::vector<double> v;
        std::stringstream in(s);
        for (std::string tok; std::getline(in, tok, ',');) {
            try {
                v.push_back(std::stod(tok));
            } catch (const std::exception&) {
                throw UsageError("bad number '" + tok + "' in --mode '" + text + "'");
            }
        }
        return v;
    };
    const auto w = numbers(parts[0]);
    if (w.size() != 1) throw UsageError("--mode weight must be a single number");
    return {w[0], numbers(parts[1]), numbers(parts[2])};
}

int cmd_gen(const GenOptions& o, cli::RunManifest& manifest) {
    Dataset data;
    if (o.kind == "moons") {
        data = gen_moons({o.n, o.noise, o.rotation, o.seed});
    } else {
        GmmSpec spec;
        if (o.ring > 0) {
            spec = ring_gmm(o.ring, o.radius, o.variance, o.phase, o.n, o.seed);
        } else {
            if (o.modes.empty()) throw UsageError("gen gmm needs --mode (repeatable) or --ring");
            for (const auto& m : o.modes) spec.modes.push_back(parse_mode(m));
            spec.n = o.n;
            spec.seed = o.seed;
        }
        data = gen_gmm(spec);
    }
    save_csv(data, o.out);
    manifest.seed = o.seed;
    manifest.outputs = {o.out};
    std::cerr << "wrote " << data.size() << " rows to " << o.out << '\n';
    return kExitOk;
}

struct FitOptions {
    std::string source, target, out, metrics;
    std::size_t components = 5;
    std::size_t hidden = 50;
    TrainConfig train;
};

int cmd_fit(const FitOptions& o, cli::RunManifest& manifest) {
    const Dataset source = load_checked(o.source);
    Dataset target = load_checked(o.target);
    if (source.dim() != target.dim())
        throw Error("dimension mismatch: source has " + std::to_string(source.dim()) + " features, target has " +
                    std::to_string(target.dim()));
    target.labels.reset();

    const std::string metrics_path = o.metrics.empty() ? o.out + ".metrics.csv" : o.metrics;
    std::ofstream metrics(metrics_path, std::ios::binary);
    if (!metrics) throw Error("cannot open '" + metrics_path + "' for writing");
    write_metrics_header(metrics);
    FitSummary summary;
    const KrdaModel model = fit_joint(
        source, target, o.hidden, o.components, o.train,
        [&](const EpochMetrics& m) { write_metrics_row(metrics, m); }, &summary);
    save_model(model, o.out);

    manifest.seed = o.train.seed;
    manifest.inputs = {o.source, o.target};
    manifest.outputs = {o.out, metrics_path};
    std::cerr << "trained " << summary.epochs_run << " epochs (best " << summary.best_epoch << ", score "
              << summary.best_score << (summary.stopped_early ? ", stopped early" : "") << ")\n";
    return kExitOk;
}

struct TransferOptions {
    std::string model, source, out, report;
    std::size_t workers = 0;
};

json report_json(const TransferReport& r) {
    json failures = json::array();
    for (const auto& f : r.failures) failures.push_back({{"row", f.row}, {"component", f.component}, {"error", f.error}});
    return {{"rows", r.transferred.rows()},
            {"d", r.transferred.cols()},
            {"max_residual", r.max_residual()},
            {"failure_count", r.failures.size()},
            {"failures", failures}};
}

int cmd_transfer(const TransferOptions& o, cli::RunManifest& manifest) {
    const KrdaModel model = load_model(o.model);
    const Dataset source = load_checked(o.source);
    if (source.dim() != model.d)
        throw Error("dimension mismatch: model expects " + std::to_string(model.d) + " features, source has " +
                    std::to_string(source.dim()));
    const TransferReport report = transfer_dataset(model, source, o.workers);
    save_csv(transferred_dataset(report, source), o.out);
    manifest.inputs = {o.model, o.source};
    manifest.outputs = {o.out};
    if (!o.report.empty()) {
        write_file(o.report, report_json(report).dump(2) + "\n");
        manifest.outputs.push_back(o.report);
    }
    std::cerr << "transferred " << source.size() << " rows; max residual " << report.max_residual() << "; "
              << report.failures.size() << " failures\n";
    return kExitOk;
}

std::optional<double> parse_gamma(const std::string& g) {
    if (g == "auto") return std::nullopt;
    try {
        std::size_t used = 0;
        const double v = std::stod(g, &used);
        if (used != g.size() || !(v > 0.0)) throw std::invalid_argument(g);
        return v;
    } catch (const std::exception&) {
        throw UsageError("--gamma must be 'auto' or a positive number");
    }
}

struct EvalOptions {
    std::string train, test, out, model_out;
    double C = 1.0;
    std::string gamma = "auto";
};

int cmd_eval(const EvalOptions& o, cli::RunManifest& manifest) {
    SvmConfig cfg;
    cfg.C = o.C;
    cfg.gamma = parse_gamma(o.gamma);
    const Dataset train = load_checked(o.train);
    const Dataset test = load_checked(o.test);
    if (!train.labels) throw Error("'" + o.train + "' has no label column");
    if (!test.labels) throw Error("'" + o.test + "' has no label column");
    if (train.dim() != test.dim())
        throw Error("dimension mismatch: train has " + std::to_string(train.dim()) + " features, test has " +
                    std::to_string(test.dim()));
    const SvmModel model = svm_fit(train, cfg);
    const json result = {{"accuracy", accuracy(model, test)},
                         {"n_train", train.size()},
                         {"n_test", test.size()},
                         {"C", model.C},
                         {"gamma", model.gamma},
                         {"support_vectors", model.dual_coef.size()}};
    manifest.inputs = {o.train, o.test};
    if (o.out.empty()) {
        std::cout << result.dump(2) << '\n';
    } else {
        write_file(o.out, result.dump(2) + "\n");
        manifest.outputs.push_back(o.out);
    }
    if (!o.model_out.empty()) {
        write_file(o.model_out, svm_to_json(model).dump(1) + "\n");
        manifest.outputs.push_back(o.model_out);
    }
    return kExitOk;
}

struct BenchOptions {
    std::string suite;
    std::vector<double> angles{10, 20, 30, 40, 50, 60, 70, 80, 90};
    std::vector<std::size_t> train_n{300};
    std::size_t repeats = 5;
    std::size_t test_n = 1000;
    double noise = 0.1;
    std::uint64_t seed = 0;
    std::size_t hidden = 0;  // 0: suite default
    std::size_t components = 5;
    TrainConfig train = benchmark_train_config();
    double C = 1.0;
    std::string gamma = "auto";
    std::size_t workers = 0;
    std::vector<std::string> tasks{"2:3", "3:2", "4:8"};
    std::size_t gmm_n = 1000;
    std::string source, target, test, task = "csv";
    std::string out, summary;
};

int cmd_bench(const BenchOptions& o, cli::RunManifest& manifest) {
    PipelineConfig pipeline;
    pipeline.components = o.components;
    pipeline.train = o.train;
    pipeline.svm.C = o.C;
    pipeline.svm.gamma = parse_gamma(o.gamma);
    pipeline.workers = o.workers;
    manifest.seed = o.seed;

    std::ostringstream rows_out;
    std::vector<AccuracyRow> rows;
    if (o.suite == "moons") {
        pipeline.hidden = o.hidden ? o.hidden : 50;
        MoonsBenchConfig cfg;
        cfg.angles = o.angles;
        cfg.train_sizes = o.train_n;
        cfg.repeats = o.repeats;
        cfg.test_n = o.test_n;
        cfg.noise_std = o.noise;
        cfg.master_seed = o.seed;
        cfg.pipeline = pipeline;
        for (const auto& cell : moons_cells(cfg)) {
            const auto result = run_moons_cell(cfg, cell);
            for (auto& r : accuracy_rows(result)) rows.push_back(std::move(r));
            std::cerr << "angle " << cell.angle_deg << " n " << cell.train_n << " repeat " << cell.repeat
                      << ": krda " << result.result.krda_accuracy << ", source only "
                      << result.result.source_only_accuracy << '\n';
        }
    } else if (o.suite == "csv") {
        if (o.source.empty() || o.target.empty() || o.test.empty())
            throw UsageError("bench csv needs --source, --target and --test");
        pipeline.hidden = o.hidden ? o.hidden : 100;
        CsvBenchConfig cfg;
        cfg.task = o.task;
        cfg.repeats = o.repeats;
        cfg.master_seed = o.seed;
        cfg.pipeline = pipeline;
        rows = run_csv_bench(cfg, load_checked(o.source), load_checked(o.target), load_checked(o.test));
        manifest.inputs = {o.source, o.target, o.test};
    } else {
        pipeline.hidden = o.hidden ? o.hidden : 50;
        GmmBenchConfig cfg;
        cfg.tasks.clear();
        for (const auto& t : o.tasks) {
            const auto colon = t.find(':');
            if (colon == std::string::npos) throw UsageError("--tasks entries look like 2:3");
            cfg.tasks.emplace_back(std::stoul(t.substr(0, colon)), std::stoul(t.substr(colon + 1)));
        }
        cfg.repeats = o.repeats;
        cfg.n = o.gmm_n;
        cfg.master_seed = o.seed;
        cfg.pipeline = pipeline;
        write_gmm_rows_header(rows_out);
        for (const auto& [m, k] : cfg.tasks)
            for (std::size_t r = 0; r < cfg.repeats; ++r) {
                const auto res = run_gmm_task(cfg, m, k, r);
                write_gmm_row(rows_out, res);
                std::cerr << m << " -> " << k << " modes, repeat " << r << ": KS raw " << res.raw_ks
                          << ", transferred " << res.transferred_ks << '\n';
            }
        write_file(o.out, rows_out.str());
        manifest.outputs = {o.out};
        return kExitOk;
    }

    write_accuracy_header(rows_out);
    for (const auto& r : rows) write_accuracy_row(rows_out, r);
    write_file(o.out, rows_out.str());

    std::ostringstream summary_out;
    const auto summary = summarize(rows);
    write_summary(summary_out, summary);
    const std::string summary_path = o.summary.empty() ? o.out + ".summary.csv" : o.summary;
    write_file(summary_path, summary_out.str());
    std::cout << summary_out.str();
    manifest.outputs = {o.out, summary_path};
    return kExitOk;
}

struct PlotOptions {
    std::string source, target, transferred, out;
    std::size_t arrows = 20;
    std::uint64_t seed = 0;
};

int cmd_plot(const PlotOptions& o, cli::RunManifest& manifest) {
    const Dataset source = load_checked(o.source);
    const Dataset target = load_checked(o.target);
    const Dataset transferred = load_checked(o.transferred);
    for (const Dataset* d : {&source, &target, &transferred})
        if (d->dim() != 2) throw Error("plot needs 2-D data, got " + std::to_string(d->dim()) + " features");
    write_file(o.out, render_scatter_svg(source.features, target.features, transferred.features, o.arrows, o.seed));
    manifest.seed = o.seed;
    manifest.inputs = {o.source, o.target, o.transferred};
    manifest.outputs = {o.out};
    return kExitOk;
}

void add_train_options(CLI::App* sub, TrainConfig& t) {
    sub->add_option("--epochs", t.epochs, "Training epochs")->capture_default_str()->check(CLI::PositiveNumber);
    sub->add_option("--lr", t.learning_rate, "Adam learning rate")->capture_default_str()->check(CLI::PositiveNumber);
    sub->add_option("--batch-size", t.batch_size, "Minibatch size")->capture_default_str()->check(CLI::PositiveNumber);
    sub->add_option("--validation", t.validation_fraction, "Validation fraction per domain")
        ->capture_default_str()
        ->check(CLI::Range(0.0, 0.5));
    sub->add_option("--patience", t.patience, "Early-stopping patience in epochs (0 disables)")->capture_default_str();
}

int run(std::vector<std::string> args);

int cmd_replay(const std::string& path) {
    json m;
    try {
        m = json::parse(read_file(path));
    } catch (const json::exception& e) {
        throw Error("'" + path + "' is not a valid manifest: " + e.what());
    }
    if (!m.contains("args")) throw Error("'" + path + "' has no recorded arguments");
    return run(m.at("args").get<std::vector<std::string>>());
}

int run(std::vector<std::string> raw_args) {
    const auto started = std::chrono::steady_clock::now();
    std::vector<std::string> args;
    try {
        args = expand_config(raw_args);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    CLI::App app{"Knothe-Rosenblatt domain adaptation for tabular data", "krda"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    GenOptions gen;
    auto* gen_cmd = app.add_subcommand("gen", "Generate a synthetic data set");
    gen_cmd->add_option("kind", gen.kind, "moons or gmm")->required()->check(CLI::IsMember({"moons", "gmm"}));
    gen_cmd->add_option("--n", gen.n, "Number of samples")->capture_default_str();
    gen_cmd->add_option("--noise", gen.noise, "Moons noise std")->capture_default_str()->check(CLI::NonNegativeNumber);
    gen_cmd->add_option("--rotation", gen.rotation, "Moons rotation in degrees")->capture_default_str();
    gen_cmd->add_option("--seed", gen.seed, "Random seed")->capture_default_str();
    gen_cmd->add_option("--mode", gen.modes, "GMM mode weight:mean,..:variance,.. (repeatable)");
    gen_cmd->add_option("--ring", gen.ring, "GMM with this many equal modes on a circle");
    gen_cmd->add_option("--radius", gen.radius, "Ring radius")->capture_default_str();
    gen_cmd->add_option("--variance", gen.variance, "Ring mode variance")->capture_default_str();
    gen_cmd->add_option("--phase", gen.phase, "Ring phase in degrees")->capture_default_str();
    gen_cmd->add_option("--out", gen.out, "Output CSV")->required();

    FitOptions fit;
    auto* fit_cmd = app.add_subcommand("fit", "Jointly fit source and target densities");
    fit_cmd->add_option("--source", fit.source, "Source CSV")->required();
    fit_cmd->add_option("--target", fit.target, "Target CSV")->required();
    fit_cmd->add_option("--components", fit.components, "Gaussians per conditional")->capture_default_str()->check(CLI::PositiveNumber);
    fit_cmd->add_option("--hidden", fit.hidden, "Hidden size")->capture_default_str()->check(CLI::PositiveNumber);
    fit_cmd->add_option("--seed", fit.train.seed, "Random seed")->capture_default_str();
    add_train_options(fit_cmd, fit.train);
    fit_cmd->add_option("--metrics", fit.metrics, "Per-epoch metrics CSV (default: <out>.metrics.csv)");
    fit_cmd->add_option("--out", fit.out, "Output model file")->required();

    TransferOptions tr;
    auto* tr_cmd = app.add_subcommand("transfer", "Transfer source samples into the target domain");
    tr_cmd->add_option("--model", tr.model, "Model file")->required();
    tr_cmd->add_option("--source", tr.source, "Source CSV")->required();
    tr_cmd->add_option("--out", tr.out, "Transferred CSV")->required();
    tr_cmd->add_option("--report", tr.report, "Transfer report JSON");
    tr_cmd->add_option("--workers", tr.workers, "Worker threads (0: hardware concurrency)")->capture_default_str();

    EvalOptions ev;
    auto* ev_cmd = app.add_subcommand("eval", "Train an SVM and report target accuracy");
    ev_cmd->add_option("--train", ev.train, "Labelled training CSV")->required();
    ev_cmd->add_option("--test", ev.test, "Labelled test CSV")->required();
    ev_cmd->add_option("--C", ev.C, "SVM regularization")->capture_default_str()->check(CLI::PositiveNumber);
    ev_cmd->add_option("--gamma", ev.gamma, "RBF gamma or 'auto'")->capture_default_str();
    ev_cmd->add_option("--out", ev.out, "Accuracy JSON (default: stdout)");
    ev_cmd->add_option("--model-out", ev.model_out, "SVM model JSON");

    BenchOptions bench;
    auto* bench_cmd = app.add_subcommand("bench", "Run a benchmark suite");
    bench_cmd->add_option("suite", bench.suite, "moons, gmm or csv")->required()->check(CLI::IsMember({"moons", "gmm", "csv"}));
    bench_cmd->add_option("--angles", bench.angles, "Rotation angles (moons)")->delimiter(',')->capture_default_str();
    bench_cmd->add_option("--train-n", bench.train_n, "Training sizes per domain (moons)")->delimiter(',')->capture_default_str();
    bench_cmd->add_option("--repeats", bench.repeats, "Repeats per cell")->capture_default_str()->check(CLI::PositiveNumber);
    bench_cmd->add_option("--test-n", bench.test_n, "Test size (moons)")->capture_default_str();
    bench_cmd->add_option("--noise", bench.noise, "Moons noise std")->capture_default_str();
    bench_cmd->add_option("--seed", bench.seed, "Master seed")->capture_default_str();
    bench_cmd->add_option("--hidden", bench.hidden, "Hidden size (default 50; 100 for csv)");
    bench_cmd->add_option("--components", bench.components, "Gaussians per conditional")->capture_default_str();
    add_train_options(bench_cmd, bench.train);
    bench_cmd->add_option("--C", bench.C, "SVM regularization")->capture_default_str();
    bench_cmd->add_option("--gamma", bench.gamma, "RBF gamma or 'auto'")->capture_default_str();
    bench_cmd->add_option("--workers", bench.workers, "Transfer worker threads")->capture_default_str();
    bench_cmd->add_option("--tasks", bench.tasks, "Mode pairs m:n (gmm)")->delimiter(',')->capture_default_str();
    bench_cmd->add_option("--gmm-n", bench.gmm_n, "Samples per domain (gmm)")->capture_default_str();
    bench_cmd->add_option("--source", bench.source, "Labelled source CSV (csv)");
    bench_cmd->add_option("--target", bench.target, "Target CSV (csv)");
    bench_cmd->add_option("--test", bench.test, "Labelled target test CSV (csv)");
    bench_cmd->add_option("--task", bench.task, "Task name (csv)")->capture_default_str();
    bench_cmd->add_option("--out", bench.out, "Results CSV")->required();
    bench_cmd->add_option("--summary", bench.summary, "Summary CSV (default: <out>.summary.csv)");

    PlotOptions plot;
    auto* plot_cmd = app.add_subcommand("plot", "Render a 2-D SVG scatter of a transfer");
    plot_cmd->add_option("--source", plot.source, "Source CSV")->required();
    plot_cmd->add_option("--target", plot.target, "Target CSV")->required();
    plot_cmd->add_option("--transferred", plot.transferred, "Transferred CSV")->required();
    plot_cmd->add_option("--out", plot.out, "Output SVG")->required();
    plot_cmd->add_option("--arrows", plot.arrows, "Number of mapping arrows")->capture_default_str();
    plot_cmd->add_option("--seed", plot.seed, "Arrow selection seed")->capture_default_str();

    std::string replay_path;
    auto* replay_cmd = app.add_subcommand("replay", "Re-run the command recorded in a manifest");
    replay_cmd->add_option("manifest", replay_path, "Manifest JSON")->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    cli::RunManifest manifest;
    manifest.args = args;
    int code = kExitOk;
    try {
        if (*replay_cmd) return cmd_replay(replay_path);
        const CLI::App* sub = app.get_subcommands().front();
        manifest.command = sub->get_name();
        manifest.config = resolved_options(*sub);
        if (*gen_cmd) code = cmd_gen(gen, manifest);
        else if (*fit_cmd) code = cmd_fit(fit, manifest);
        else if (*tr_cmd) code = cmd_transfer(tr, manifest);
        else if (*ev_cmd) code = cmd_eval(ev, manifest);
        else if (*bench_cmd) code = cmd_bench(bench, manifest);
        else if (*plot_cmd) code = cmd_plot(plot, manifest);
        manifest.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
        if (!manifest.outputs.empty()) manifest.write(manifest.outputs.front() + ".manifest.json", kVersion);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    return run(std::vector<std::string>(argv + 1, argv + argc));
}
