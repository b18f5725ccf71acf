#pragma once

// RBF-kernel C-SVM trained by sequential minimal optimization.
//
// The dual  min 1/2 a'Qa - e'a  s.t. 0 <= a <= C, y'a = 0,  Q_ij = y_i y_j K(x_i, x_j)
// is solved two coordinates at a time. The working pair is the maximal violating pair with
// second-order selection of the second index; iteration stops once the KKT violation
// max_{I_up} -y G - min_{I_low} -y G drops below `tolerance`.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

#include "krda/data.hpp"
#include "krda/error.hpp"
#include "krda/matrix.hpp"

namespace krda {

struct SvmConfig {
    double C = 1.0;
    std::optional<double> gamma;  // nullopt: 1 / (d * mean column variance)
    double tolerance = 1e-3;
    std::size_t max_iterations = 10'000'000;
    std::size_t cache_bytes = std::size_t{256} << 20;
};

struct SvmModel {
    Matrix support_vectors;
    std::vector<double> dual_coef;  // alpha_j * y_j
    double bias = 0.0;
    double gamma = 1.0;
    double C = 1.0;
    std::size_t iterations = 0;

    std::size_t dim() const noexcept { return support_vectors.cols(); }
};

inline double rbf_kernel(std::span<const double> a, std::span<const double> b, double gamma) {
    double sq = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double diff = a[k] - b[k];
        sq += diff * diff;
    }
    return std::exp(-gamma * sq);
}

/// 1 / (d * mean per-column population variance); 1 when every column is constant.
inline double auto_gamma(const Matrix& x) {
    if (x.rows() == 0 || x.cols() == 0) return 1.0;
    const auto n = static_cast<double>(x.rows());
    double total_var = 0.0;
    for (std::size_t j = 0; j < x.cols(); ++j) {
        double mean = 0.0;
        for (std::size_t r = 0; r < x.rows(); ++r) mean += x(r, j);
        mean /= n;
        double var = 0.0;
        for (std::size_t r = 0; r < x.rows(); ++r) var += (x(r, j) - mean) * (x(r, j) - mean);
        total_var += var / n;
    }
    const double mean_var = total_var / static_cast<double>(x.cols());
    if (!(mean_var > 0.0)) return 1.0;
    return 1.0 / (static_cast<double>(x.cols()) * mean_var);
}

inline double decision_value(const SvmModel& model, std::span<const double> x) {
    if (x.size() != model.dim()) throw DimensionMismatch("svm input", model.dim(), x.size());
    double f = model.bias;
    for (std::size_t s = 0; s < model.dual_coef.size(); ++s)
        f += model.dual_coef[s] * rbf_kernel(model.support_vectors.row(s), x, model.gamma);
    return f;
}

/// Class 1 when the decision value is >= 0.
inline int svm_predict(const SvmModel& model, std::span<const double> x) {
    return decision_value(model, x) >= 0.0 ? 1 : 0;
}

namespace detail {

class KernelRows {
public:
    KernelRows(const Matrix& x, double gamma, std::size_t budget_bytes)
        : x_(x), gamma_(gamma), rows_(x.rows()),
          max_cached_(std::max<std::size_t>(2, budget_bytes / std::max<std::size_t>(1, x.rows() * sizeof(double)))) {}

    std::span<const double> row(std::size_t i) {
        if (!rows_[i].empty()) return rows_[i];
        std::vector<double>* target = &scratch_[next_scratch_];
        if (cached_ < max_cached_) {
            target = &rows_[i];
            ++cached_;
        } else {
            next_scratch_ ^= 1;
        }
        target->resize(x_.rows());
        const auto xi = x_.row(i);
        for (std::size_t t = 0; t < x_.rows(); ++t) (*target)[t] = rbf_kernel(xi, x_.row(t), gamma_);
        return *target;
    }

private:
    const Matrix& x_;
    double gamma_;
    std::vector<std::vector<double>> rows_;
    std::vector<double> scratch_[2];
    std::size_t next_scratch_ = 0;
    std::size_t cached_ = 0;
    std::size_t max_cached_;
};

}  // namespace detail

/// Fits a binary RBF SVM on labels {0, 1}; label 1 is the positive class.
inline SvmModel svm_fit(const Dataset& train, const SvmConfig& cfg = {}) {
    if (!train.labels) throw InvalidArgument("svm training data needs labels");
    const std::size_t n = train.size();
    if (n == 0) throw EmptyDataset("svm training data is empty");
    if (!(cfg.C > 0.0)) throw InvalidArgument("svm C must be positive");
    const Matrix& x = train.features;

    std::vector<double> y(n);
    bool has_pos = false, has_neg = false;
    for (std::size_t i = 0; i < n; ++i) {
        y[i] = (*train.labels)[i] == 1 ? 1.0 : -1.0;
        (y[i] > 0 ? has_pos : has_neg) = true;
    }
    if (!has_pos || !has_neg) throw SingleClassData("svm training data contains a single class");

    const double gamma = cfg.gamma.value_or(auto_gamma(x));
    if (!(gamma > 0.0)) throw InvalidArgument("svm gamma must be positive");
    const double C = cfg.C;
    constexpr double tau = 1e-12;

    detail::KernelRows kernel(x, gamma, cfg.cache_bytes);
    std::vector<double> alpha(n, 0.0);
    std::vector<double> grad(n, -1.0);  // G = Q alpha - e
    // K(x, x) = 1 for the RBF kernel.
    auto in_up = [&](std::size_t t) { return y[t] > 0 ? alpha[t] < C : alpha[t] > 0.0; };
    auto in_low = [&](std::size_t t) { return y[t] > 0 ? alpha[t] > 0.0 : alpha[t] < C; };

    std::size_t iter = 0;
    for (; iter < cfg.max_iterations; ++iter) {
        double gmax = -std::numeric_limits<double>::infinity();
        std::size_t i = n;
        for (std::size_t t = 0; t < n; ++t)
            if (in_up(t) && -y[t] * grad[t] >= gmax) {
                if (-y[t] * grad[t] > gmax || i == n) i = t;
                gmax = -y[t] * grad[t];
            }
        if (i == n) break;

        const auto ki = kernel.row(i);
        double gmin = std::numeric_limits<double>::infinity();
        double best_obj = std::numeric_limits<double>::infinity();
        std::size_t j = n;
        for (std::size_t t = 0; t < n; ++t) {
            if (!in_low(t)) continue;
            const double v = -y[t] * grad[t];
            gmin = std::min(gmin, v);
            const double b = gmax - v;
            if (b > 0.0) {
                double a = 2.0 - 2.0 * ki[t];
                if (a <= 0.0) a = tau;
                const double obj = -(b * b) / a;
                if (obj < best_obj) {
                    best_obj = obj;
                    j = t;
                }
            }
        }
        if (gmax - gmin < cfg.tolerance || j == n) break;

        const auto kj = kernel.row(j);
        const double old_ai = alpha[i];
        const double old_aj = alpha[j];
        const double kij = ki[j];
        if (y[i] != y[j]) {
            double quad = 2.0 + 2.0 * (-kij);
            if (quad <= 0.0) quad = tau;
            const double delta = (-grad[i] - grad[j]) / quad;
            const double diff = alpha[i] - alpha[j];
            alpha[i] += delta;
            alpha[j] += delta;
            if (diff > 0.0) {
                if (alpha[j] < 0.0) { alpha[j] = 0.0; alpha[i] = diff; }
            } else {
                if (alpha[i] < 0.0) { alpha[i] = 0.0; alpha[j] = -diff; }
            }
            if (diff > 0.0) {
                if (alpha[i] > C) { alpha[i] = C; alpha[j] = C - diff; }
            } else {
                if (alpha[j] > C) { alpha[j] = C; alpha[i] = C + diff; }
            }
        } else {
            double quad = 2.0 - 2.0 * kij;
            if (quad <= 0.0) quad = tau;
            const double delta = (grad[i] - grad[j]) / quad;
            const double sum = alpha[i] + alpha[j];
            alpha[i] -= delta;
            alpha[j] += delta;
            if (sum > C) {
                if (alpha[i] > C) { alpha[i] = C; alpha[j] = sum - C; }
            } else {
                if (alpha[j] < 0.0) { alpha[j] = 0.0; alpha[i] = sum; }
            }
            if (sum > C) {
                if (alpha[j] > C) { alpha[j] = C; alpha[i] = sum - C; }
            } else {
                if (alpha[i] < 0.0) { alpha[i] = 0.0; alpha[j] = sum; }
            }
        }

        const double dai = alpha[i] - old_ai;
        const double daj = alpha[j] - old_aj;
        for (std::size_t t = 0; t < n; ++t)
            grad[t] += y[t] * (y[i] * ki[t] * dai + y[j] * kj[t] * daj);
    }

    // rho from free vectors, or the midpoint of the feasible interval.
    double ub = std::numeric_limits<double>::infinity();
    double lb = -std::numeric_limits<double>::infinity();
    double sum_free = 0.0;
    std::size_t n_free = 0;
    for (std::size_t t = 0; t < n; ++t) {
        const double yg = y[t] * grad[t];
        if (alpha[t] >= C) {
            if (y[t] < 0) ub = std::min(ub, yg); else lb = std::max(lb, yg);
        } else if (alpha[t] <= 0.0) {
            if (y[t] > 0) ub = std::min(ub, yg); else lb = std::max(lb, yg);
        } else {
            ++n_free;
            sum_free += yg;
        }
    }
    const double rho = n_free > 0 ? sum_free / static_cast<double>(n_free) : 0.5 * (ub + lb);

    SvmModel model;
    model.gamma = gamma;
    model.C = C;
    model.bias = -rho;
    model.iterations = iter;
    model.support_vectors = Matrix(0, x.cols());
    for (std::size_t t = 0; t < n; ++t)
        if (alpha[t] > 0.0) {
            model.support_vectors.append_row(x.row(t));
            model.dual_coef.push_back(alpha[t] * y[t]);
        }
    return model;
}

inline double accuracy(const SvmModel& model, const Dataset& test) {
    if (test.size() == 0) throw EmptyDataset("accuracy of an empty test set");
    if (!test.labels) throw InvalidArgument("accuracy needs a labelled test set");
    std::size_t correct = 0;
    for (std::size_t r = 0; r < test.size(); ++r)
        correct += svm_predict(model, test.features.row(r)) == (*test.labels)[r];
    return static_cast<double>(correct) / static_cast<double>(test.size());
}

inline nlohmann::json svm_to_json(const SvmModel& m) {
    return {{"format", "krda-svm"},
            {"format_version", 1},
            {"kernel", "rbf"},
            {"gamma", m.gamma},
            {"C", m.C},
            {"bias", m.bias},
            {"d", m.dim()},
            {"dual_coef", m.dual_coef},
            {"support_vectors", m.support_vectors.data()}};
}

inline SvmModel svm_from_json(const nlohmann::json& j) {
    try {
        if (j.value("format", std::string{}) != "krda-svm") throw ParseError("not a krda svm document");
        SvmModel m;
        m.gamma = j.at("gamma").get<double>();
        m.C = j.at("C").get<double>();
        m.bias = j.at("bias").get<double>();
        m.dual_coef = j.at("dual_coef").get<std::vector<double>>();
        const auto d = j.at("d").get<std::size_t>();
        m.support_vectors = Matrix(m.dual_coef.size(), d, j.at("support_vectors").get<std::vector<double>>());
        return m;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed svm document: ") + e.what());
    }
}

}  // namespace krda
