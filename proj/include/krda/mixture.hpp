#pragma once

// One-dimensional Gaussian mixtures: density, CDF, quantile function and sampling.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "krda/error.hpp"

namespace krda {

/// Lower bound applied to component standard deviations built from network outputs.
inline constexpr double kSigmaFloor = 1e-6;

/// Quantiles are clipped to [kQuantileClip, 1 - kQuantileClip] before inversion.
inline constexpr double kQuantileClip = 1e-8;

inline constexpr double kLogSqrtTwoPi = 0.91893853320467274178032973640562;

/// Standard normal CDF. Uses erfc on whichever side keeps the argument non-negative
/// so that the lower tail does not lose relative precision.
inline double std_normal_cdf(double z) {
    constexpr double inv_sqrt2 = 0.70710678118654752440084436210485;
    if (z < 0.0) return 0.5 * std::erfc(-z * inv_sqrt2);
    return 1.0 - 0.5 * std::erfc(z * inv_sqrt2);
}

inline double std_normal_log_pdf(double z) { return -0.5 * z * z - kLogSqrtTwoPi; }

inline double std_normal_pdf(double z) { return std::exp(std_normal_log_pdf(z)); }

/// Numerically stable log(sum(exp(v))). Returns -inf for an empty span.
inline double log_sum_exp(std::span<const double> v) {
    if (v.empty()) return -std::numeric_limits<double>::infinity();
    const double top = *std::max_element(v.begin(), v.end());
    if (!std::isfinite(top)) return top;
    double acc = 0.0;
    for (double x : v) acc += std::exp(x - top);
    return top + std::log(acc);
}

struct GaussianMixture1D {
    std::vector<double> weights;
    std::vector<double> means;
    std::vector<double> stds;

    std::size_t size() const noexcept { return weights.size(); }

    /// Throws InvalidArgument unless the parameters describe a proper mixture.
    void validate() const {
        if (weights.empty()) throw InvalidArgument("mixture needs at least one component");
        if (means.size() != weights.size() || stds.size() != weights.size())
            throw InvalidArgument("mixture parameter vectors differ in length");
        double total = 0.0;
        for (std::size_t k = 0; k < size(); ++k) {
            if (!(weights[k] >= 0.0)) throw InvalidArgument("negative mixture weight");
            if (!std::isfinite(means[k])) throw InvalidArgument("non-finite mixture mean");
            if (!(stds[k] >= kSigmaFloor) || !std::isfinite(stds[k]))
                throw InvalidArgument("mixture std below floor");
            total += weights[k];
        }
        if (std::abs(total - 1.0) > 1e-12) throw InvalidArgument("mixture weights do not sum to 1");
    }

    static GaussianMixture1D single(double mean, double std) { return {{1.0}, {mean}, {std}}; }
};

inline double mixture_pdf(const GaussianMixture1D& m, double x) {
    double acc = 0.0;
    for (std::size_t k = 0; k < m.size(); ++k) {
        const double s = m.stds[k];
        acc += m.weights[k] * std_normal_pdf((x - m.means[k]) / s) / s;
    }
    return acc;
}

inline double mixture_log_pdf(const GaussianMixture1D& m, double x) {
    double terms_buf[16];
    std::vector<double> terms_heap;
    double* terms = terms_buf;
    if (m.size() > 16) {
        terms_heap.resize(m.size());
        terms = terms_heap.data();
    }
    for (std::size_t k = 0; k < m.size(); ++k) {
        const double s = m.stds[k];
        terms[k] = std::log(m.weights[k]) + std_normal_log_pdf((x - m.means[k]) / s) - std::log(s);
    }
    return log_sum_exp({terms, m.size()});
}

inline double mixture_cdf(const GaussianMixture1D& m, double x) {
    double acc = 0.0;
    for (std::size_t k = 0; k < m.size(); ++k)
        acc += m.weights[k] * std_normal_cdf((x - m.means[k]) / m.stds[k]);
    return std::clamp(acc, 0.0, 1.0);
}

inline double clip_quantile(double q) {
    if (std::isnan(q)) return 0.5;
    return std::clamp(q, kQuantileClip, 1.0 - kQuantileClip);
}

/// Generalized inverse of mixture_cdf by bisection.
///
/// The bracket [-2^k, 2^k] grows from k = 0 until it contains the clipped quantile.
/// Bisection then runs until the value residual is <= 1e-10 and the bracket is narrower
/// than 1e-12 * max(1, |z|), until no double lies strictly inside the bracket, or for at
/// most 200 iterations.
inline double mixture_inverse_cdf(const GaussianMixture1D& m, double q) {
    constexpr int kMaxExponent = 64;
    constexpr int kMaxIterations = 200;
    constexpr double kValueTol = 1e-10;
    constexpr double kWidthTol = 1e-12;

    q = clip_quantile(q);

    double lo = 0.0;
    double hi = 0.0;
    bool found = false;
    for (int k = 0; k <= kMaxExponent; ++k) {
        const double bound = std::ldexp(1.0, k);
        if (mixture_cdf(m, -bound) < q && q < mixture_cdf(m, bound)) {
            lo = -bound;
            hi = bound;
            found = true;
            break;
        }
    }
    if (!found) throw BracketNotFound(q);

    // Invariant: F(lo) < q <= F(hi).
    for (int it = 0; it < kMaxIterations; ++it) {
        const double mid = lo + 0.5 * (hi - lo);
        if (mid <= lo || mid >= hi) break;
        const double f = mixture_cdf(m, mid);
        if (std::abs(f - q) <= kValueTol && hi - lo <= kWidthTol * std::max(1.0, std::abs(mid))) return mid;
        if (f < q)
            lo = mid;
        else
            hi = mid;
    }
    return std::abs(mixture_cdf(m, lo) - q) < std::abs(mixture_cdf(m, hi) - q) ? lo : hi;
}

/// Draws a component with probability w_k, then a normal variate from it.
template <class Rng>
double mixture_sample(const GaussianMixture1D& m, Rng& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double u = unit(rng);
    std::size_t k = 0;
    double cumulative = m.weights[0];
    while (k + 1 < m.size() && u >= cumulative) {
        ++k;
        cumulative += m.weights[k];
    }
    while (k > 0 && m.weights[k] == 0.0) --k;
    std::normal_distribution<double> normal(0.0, 1.0);
    return m.means[k] + m.stds[k] * normal(rng);
}

}  // namespace krda
