#pragma once

// Tabular datasets: representation, synthetic generators, CSV I/O, subsampling and
// per-column standardization.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <istream>
#include <numbers>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "krda/error.hpp"
#include "krda/matrix.hpp"
#include "krda/random.hpp"

namespace krda {

struct Dataset {
    Matrix features;
    std::optional<std::vector<int>> labels;
    std::vector<std::string> column_names;

    std::size_t size() const noexcept { return features.rows(); }
    std::size_t dim() const noexcept { return features.cols(); }
    bool has_labels() const noexcept { return labels.has_value(); }

    /// Rows in the given order; labels follow their rows.
    Dataset select(std::span<const std::size_t> rows) const {
        Dataset out;
        out.column_names = column_names;
        out.features = Matrix(rows.size(), dim());
        if (labels) out.labels.emplace(rows.size());
        for (std::size_t r = 0; r < rows.size(); ++r) {
            std::copy_n(features.row(rows[r]).begin(), dim(), out.features.row(r).begin());
            if (labels) (*out.labels)[r] = (*labels)[rows[r]];
        }
        return out;
    }

    void validate() const {
        for (double v : features.data())
            if (!std::isfinite(v)) throw NonFiniteValue("dataset contains a non-finite feature");
        if (labels && labels->size() != size())
            throw DimensionMismatch("label vector", size(), labels->size());
        if (!column_names.empty() && column_names.size() != dim())
            throw DimensionMismatch("column names", dim(), column_names.size());
    }

    friend bool operator==(const Dataset&, const Dataset&) = default;
};

inline std::vector<std::string> default_column_names(std::size_t d) {
    std::vector<std::string> names;
    names.reserve(d);
    for (std::size_t j = 0; j < d; ++j) names.push_back("x" + std::to_string(j + 1));
    return names;
}

// ---------------------------------------------------------------------------
// Generators

struct MoonsSpec {
    std::size_t n = 0;
    double noise_std = 0.1;
    double rotation_deg = 0.0;
    std::uint64_t seed = 0;
};

/// Rotation centre of the moons: mean of the two arc centroids (0, 2/pi) and (1, 1/2 - 2/pi).
inline constexpr double kMoonsCentroidX = 0.5;
inline constexpr double kMoonsCentroidY = 0.25;

/// Label 0: the upper arc (cos t, sin t). Label 1: the lower arc (1 - cos t, 1/2 - sin t).
/// t ~ U[0, pi]; noise is added before the rotation about the joint centroid.
inline Dataset gen_moons(const MoonsSpec& spec) {
    if (!(spec.noise_std >= 0.0)) throw InvalidArgument("moons noise must be non-negative");
    Rng rng(spec.seed);
    std::uniform_real_distribution<double> angle(0.0, std::numbers::pi);
    std::normal_distribution<double> noise(0.0, 1.0);

    const std::size_t n_upper = spec.n / 2;
    const double theta = spec.rotation_deg * std::numbers::pi / 180.0;
    const double c = std::cos(theta);
    const double s = std::sin(theta);

    Dataset out;
    out.column_names = default_column_names(2);
    out.features = Matrix(spec.n, 2);
    out.labels.emplace(spec.n);
    for (std::size_t i = 0; i < spec.n; ++i) {
        const double t = angle(rng);
        const bool upper = i < n_upper;
        double x = upper ? std::cos(t) : 1.0 - std::cos(t);
        double y = upper ? std::sin(t) : 0.5 - std::sin(t);
        x += spec.noise_std * noise(rng);
        y += spec.noise_std * noise(rng);
        const double dx = x - kMoonsCentroidX;
        const double dy = y - kMoonsCentroidY;
        out.features(i, 0) = kMoonsCentroidX + c * dx - s * dy;
        out.features(i, 1) = kMoonsCentroidY + s * dx + c * dy;
        (*out.labels)[i] = upper ? 0 : 1;
    }
    return out;
}

struct GmmMode {
    double weight = 1.0;
    std::vector<double> mean;
    std::vector<double> variance;  // diagonal of the covariance
};

struct GmmSpec {
    std::vector<GmmMode> modes;
    std::size_t n = 0;
    std::uint64_t seed = 0;

    std::size_t dim() const { return modes.empty() ? 0 : modes.front().mean.size(); }

    void validate() const {
        if (modes.empty()) throw InvalidArgument("gmm spec needs at least one mode");
        double total = 0.0;
        for (const auto& m : modes) {
            if (m.mean.size() != dim() || m.variance.size() != dim())
                throw DimensionMismatch("gmm mode", dim(), m.mean.size());
            if (!(m.weight >= 0.0)) throw InvalidArgument("gmm weight must be non-negative");
            for (double v : m.variance)
                if (!(v > 0.0)) throw InvalidArgument("gmm variances must be positive");
            total += m.weight;
        }
        if (std::abs(total - 1.0) > 1e-9) throw InvalidArgument("gmm weights must sum to 1");
    }
};

inline Dataset gen_gmm(const GmmSpec& spec) {
    spec.validate();
    const std::size_t d = spec.dim();
    Rng rng(spec.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::normal_distribution<double> normal(0.0, 1.0);

    Dataset out;
    out.column_names = default_column_names(d);
    out.features = Matrix(spec.n, d);
    for (std::size_t i = 0; i < spec.n; ++i) {
        const double u = unit(rng);
        std::size_t k = 0;
        double cumulative = spec.modes[0].weight;
        while (k + 1 < spec.modes.size() && u >= cumulative) cumulative += spec.modes[++k].weight;
        while (k > 0 && spec.modes[k].weight == 0.0) --k;
        const auto& mode = spec.modes[k];
        for (std::size_t j = 0; j < d; ++j)
            out.features(i, j) = mode.mean[j] + std::sqrt(mode.variance[j]) * normal(rng);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Subsampling

/// Uniform sample of floor(fraction * n) rows without replacement, in original row order.
inline Dataset subsample(const Dataset& data, double fraction, std::uint64_t seed) {
    if (!(fraction > 0.0 && fraction <= 1.0))
        throw InvalidArgument("subsample fraction must lie in (0, 1]");
    const std::size_t n = data.size();
    const auto keep = static_cast<std::size_t>(std::floor(fraction * static_cast<double>(n) + 1e-9));
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    Rng rng(seed);
    std::shuffle(idx.begin(), idx.end(), rng);
    idx.resize(std::min(keep, n));
    std::sort(idx.begin(), idx.end());
    return data.select(idx);
}

// ---------------------------------------------------------------------------
// Standardization

inline constexpr double kStdFloor = 1e-12;

struct Standardizer {
    std::vector<double> mean;
    std::vector<double> stddev;

    std::size_t dim() const noexcept { return mean.size(); }

    /// Per-column mean and population std over all rows of all given matrices.
    static Standardizer fit(std::initializer_list<const Matrix*> blocks) {
        std::size_t d = 0;
        std::size_t n = 0;
        for (const Matrix* m : blocks) {
            if (m->rows() == 0) continue;
            if (n == 0) d = m->cols();
            if (m->cols() != d) throw DimensionMismatch("standardizer input", d, m->cols());
            n += m->rows();
        }
        if (n == 0) throw EmptyDataset("cannot fit a standardizer on zero rows");
        Standardizer s;
        s.mean.assign(d, 0.0);
        s.stddev.assign(d, 0.0);
        for (const Matrix* m : blocks)
            for (std::size_t r = 0; r < m->rows(); ++r)
                for (std::size_t j = 0; j < d; ++j) s.mean[j] += (*m)(r, j);
        for (double& v : s.mean) v /= static_cast<double>(n);
        for (const Matrix* m : blocks)
            for (std::size_t r = 0; r < m->rows(); ++r)
                for (std::size_t j = 0; j < d; ++j) {
                    const double e = (*m)(r, j) - s.mean[j];
                    s.stddev[j] += e * e;
                }
        for (double& v : s.stddev) v = std::max(std::sqrt(v / static_cast<double>(n)), kStdFloor);
        return s;
    }

    static Standardizer fit(const Matrix& m) { return fit({&m}); }

    static Standardizer identity(std::size_t d) {
        return {std::vector<double>(d, 0.0), std::vector<double>(d, 1.0)};
    }

    void apply(std::span<double> x) const {
        if (x.size() != dim()) throw DimensionMismatch("standardize", dim(), x.size());
        for (std::size_t j = 0; j < x.size(); ++j) x[j] = (x[j] - mean[j]) / stddev[j];
    }

    void invert(std::span<double> x) const {
        if (x.size() != dim()) throw DimensionMismatch("destandardize", dim(), x.size());
        for (std::size_t j = 0; j < x.size(); ++j) x[j] = x[j] * stddev[j] + mean[j];
    }

    Matrix apply(const Matrix& m) const {
        Matrix out = m;
        for (std::size_t r = 0; r < out.rows(); ++r) apply(out.row(r));
        return out;
    }

    Matrix invert(const Matrix& m) const {
        Matrix out = m;
        for (std::size_t r = 0; r < out.rows(); ++r) invert(out.row(r));
        return out;
    }

    friend bool operator==(const Standardizer&, const Standardizer&) = default;
};

// ---------------------------------------------------------------------------
// CSV

/// Shortest decimal form that parses back to the identical double.
inline std::string format_double(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

inline std::vector<std::string_view> split_commas(std::string_view line) {
    std::vector<std::string_view> cells;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(',', start);
        cells.push_back(trim(line.substr(start, pos == std::string_view::npos ? pos : pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return cells;
}

}  // namespace detail

inline constexpr std::string_view kLabelColumn = "label";

/// Parses a header + numeric body. A column named "label" holds {0,1} class labels.
/// Row numbers in errors are 1-based file lines (the header is line 1).
inline Dataset read_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError("missing CSV header", 1, 0);
    if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
    const auto header = detail::split_commas(line);

    std::optional<std::size_t> label_col;
    Dataset out;
    for (std::size_t c = 0; c < header.size(); ++c) {
        if (header[c] == kLabelColumn) {
            if (label_col) throw ParseError("duplicate label column", 1, c + 1);
            label_col = c;
        } else {
            out.column_names.emplace_back(header[c]);
        }
    }
    const std::size_t d = out.column_names.size();
    out.features = Matrix(0, d);
    if (label_col) out.labels.emplace();

    std::vector<double> row(d);
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (detail::trim(line).empty()) continue;
        const auto cells = detail::split_commas(line);
        if (cells.size() != header.size())
            throw ParseError("expected " + std::to_string(header.size()) + " cells, found " +
                                 std::to_string(cells.size()),
                             line_no, cells.size());
        std::size_t j = 0;
        for (std::size_t c = 0; c < cells.size(); ++c) {
            const std::string_view cell = cells[c];
            double v = 0.0;
            const char* first = cell.data();
            const char* last = cell.data() + cell.size();
            if (!cell.empty() && *first == '+') ++first;
            auto res = std::from_chars(first, last, v);
            if (cell.empty() || res.ec != std::errc{} || res.ptr != last)
                throw ParseError("cannot parse '" + std::string(cell) + "' as a number", line_no,
                                 c + 1);
            if (!std::isfinite(v))
                throw NonFiniteValue("non-finite value '" + std::string(cell) + "'", line_no, c + 1);
            if (label_col && c == *label_col) {
                if (v != 0.0 && v != 1.0)
                    throw ParseError("label must be 0 or 1", line_no, c + 1);
                out.labels->push_back(static_cast<int>(v));
            } else {
                row[j++] = v;
            }
        }
        out.features.append_row(row);
    }
    return out;
}

inline Dataset load_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open '" + path + "' for reading");
    return read_csv(in);
}

inline void write_csv(std::ostream& out, const Dataset& data) {
    const auto names = data.column_names.empty() ? default_column_names(data.dim()) : data.column_names;
    for (std::size_t j = 0; j < names.size(); ++j) out << (j ? "," : "") << names[j];
    if (data.labels) out << (names.empty() ? "" : ",") << kLabelColumn;
    out << '\n';
    for (std::size_t r = 0; r < data.size(); ++r) {
        for (std::size_t j = 0; j < data.dim(); ++j)
            out << (j ? "," : "") << format_double(data.features(r, j));
        if (data.labels) out << (data.dim() ? "," : "") << (*data.labels)[r];
        out << '\n';
    }
}

inline void save_csv(const Dataset& data, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open '" + path + "' for writing");
    write_csv(out, data);
    if (!out) throw Error("failed writing '" + path + "'");
}

}  // namespace krda
