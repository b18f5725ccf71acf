#pragma once

// Goodness-of-fit statistics and summary intervals used by the benchmark harness.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include <boost/math/distributions/students_t.hpp>

#include "krda/error.hpp"
#include "krda/matrix.hpp"

namespace krda {

/// sup_x |F_a(x) - F_b(x)| between two empirical CDFs.
inline double ks_two_sample(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw EmptyDataset("KS statistic of an empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const auto na = static_cast<double>(a.size());
    const auto nb = static_cast<double>(b.size());
    std::size_t i = 0, j = 0;
    double worst = 0.0;
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x) ++i;
        while (j < b.size() && b[j] <= x) ++j;
        worst = std::max(worst, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    return worst;
}

/// sup_x |F_n(x) - F(x)| against a continuous reference CDF.
inline double ks_one_sample(std::vector<double> sample, const std::function<double(double)>& cdf) {
    if (sample.empty()) throw EmptyDataset("KS statistic of an empty sample");
    std::sort(sample.begin(), sample.end());
    const auto n = static_cast<double>(sample.size());
    double worst = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const double f = cdf(sample[i]);
        worst = std::max({worst, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
    }
    return worst;
}

inline std::vector<double> column(const Matrix& m, std::size_t j) {
    std::vector<double> out(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r) out[r] = m(r, j);
    return out;
}

/// Largest per-column two-sample KS statistic.
inline double max_marginal_ks(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.cols()) throw DimensionMismatch("marginal KS", a.cols(), b.cols());
    double worst = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) worst = std::max(worst, ks_two_sample(column(a, j), column(b, j)));
    return worst;
}

/// Squared energy distance 2 E|X-Y| - E|X-X'| - E|Y-Y'| (V-statistic form).
inline double energy_distance(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.cols()) throw DimensionMismatch("energy distance", a.cols(), b.cols());
    if (a.empty() || b.empty()) throw EmptyDataset("energy distance of an empty sample");
    auto mean_dist = [](const Matrix& p, const Matrix& q) {
        double total = 0.0;
        for (std::size_t r = 0; r < p.rows(); ++r)
            for (std::size_t s = 0; s < q.rows(); ++s) {
                double sq = 0.0;
                for (std::size_t k = 0; k < p.cols(); ++k) sq += (p(r, k) - q(s, k)) * (p(r, k) - q(s, k));
                total += std::sqrt(sq);
            }
        return total / (static_cast<double>(p.rows()) * static_cast<double>(q.rows()));
    };
    return 2.0 * mean_dist(a, b) - mean_dist(a, a) - mean_dist(b, b);
}

struct Interval {
    double mean = 0.0;
    double half_width = 0.0;
};

/// Sample mean and half-width of the two-sided 95% Student-t interval; half-width 0 for one value.
inline Interval mean_ci95(std::span<const double> values) {
    if (values.empty()) throw EmptyDataset("confidence interval of no values");
    const auto n = static_cast<double>(values.size());
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= n;
    if (values.size() < 2) return {mean, 0.0};
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    const double sd = std::sqrt(ss / (n - 1.0));
    boost::math::students_t dist(n - 1.0);
    const double t = boost::math::quantile(dist, 0.975);
    return {mean, t * sd / std::sqrt(n)};
}

}  // namespace krda
