#pragma once

// Autoregressive Gaussian-mixture density model with a backbone shared across two domains.
//
// For a standardized input x in R^d the hidden state follows
//     a_0 = c,   a_{i+1} = a_i + x_i * W[:, i]
// and factor i is the mixture produced by a domain head from h_i = relu(C_i * a_i):
//     weights = softmax(out_w(h_i)),  means = out_mu(h_i),  stds = exp(0.5 * out_logvar(h_i)).
// Factor i therefore depends on x_0 .. x_{i-1} only.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <random>
#include <span>
#include <vector>

#include "krda/data.hpp"
#include "krda/error.hpp"
#include "krda/matrix.hpp"
#include "krda/mixture.hpp"
#include "krda/random.hpp"

namespace krda {

enum class Domain { source, target };

inline const char* to_string(Domain d) { return d == Domain::source ? "source" : "target"; }

struct Backbone {
    std::vector<double> c;  // H
    Matrix W;               // H x d

    friend bool operator==(const Backbone&, const Backbone&) = default;
};

/// y = weight * x + bias with weight of shape out x in.
struct AffineMap {
    Matrix weight;
    std::vector<double> bias;

    void apply(std::span<const double> x, std::span<double> y) const {
        for (std::size_t o = 0; o < weight.rows(); ++o) {
            double acc = bias[o];
            const auto w = weight.row(o);
            for (std::size_t k = 0; k < x.size(); ++k) acc += w[k] * x[k];
            y[o] = acc;
        }
    }

    friend bool operator==(const AffineMap&, const AffineMap&) = default;
};

struct DomainHead {
    std::vector<double> rescale;  // one scalar per input index
    AffineMap out_w;
    AffineMap out_mu;
    AffineMap out_logvar;

    friend bool operator==(const DomainHead&, const DomainHead&) = default;
};

/// Every trainable array of the model. Gradients and optimizer moments reuse this layout.
struct Parameters {
    Backbone backbone;
    DomainHead source_head;
    DomainHead target_head;

    DomainHead& head(Domain d) { return d == Domain::source ? source_head : target_head; }
    const DomainHead& head(Domain d) const { return d == Domain::source ? source_head : target_head; }

    /// Flat views of every array, in a fixed order.
    std::vector<std::span<double>> blocks() {
        std::vector<std::span<double>> out{backbone.c, backbone.W.data()};
        for (DomainHead* h : {&source_head, &target_head}) {
            out.emplace_back(h->rescale);
            for (AffineMap* m : {&h->out_w, &h->out_mu, &h->out_logvar}) {
                out.emplace_back(m->weight.data());
                out.emplace_back(m->bias);
            }
        }
        return out;
    }

    std::vector<std::span<const double>> blocks() const {
        auto mut = const_cast<Parameters*>(this)->blocks();
        return {mut.begin(), mut.end()};
    }

    std::size_t count() const {
        std::size_t n = 0;
        for (auto b : blocks()) n += b.size();
        return n;
    }

    static Parameters zeros(std::size_t d, std::size_t hidden, std::size_t components) {
        auto affine = [&] { return AffineMap{Matrix(components, hidden), std::vector<double>(components)}; };
        auto head = [&] {
            return DomainHead{std::vector<double>(d), affine(), affine(), affine()};
        };
        return {Backbone{std::vector<double>(hidden), Matrix(hidden, d)}, head(), head()};
    }

    friend bool operator==(const Parameters&, const Parameters&) = default;
};

using Gradient = Parameters;

struct KrdaModel {
    std::size_t d = 0;
    std::size_t hidden = 0;
    std::size_t components = 0;
    Parameters params;
    Standardizer standardizer;

    /// All weights zero, rescale 1: every factor is N(0, 1) in both domains.
    static KrdaModel zero(std::size_t d, std::size_t hidden, std::size_t components) {
        if (d == 0 || hidden == 0 || components == 0)
            throw InvalidArgument("model dimensions must be positive");
        KrdaModel m{d, hidden, components, Parameters::zeros(d, hidden, components),
                    Standardizer::identity(d)};
        m.params.source_head.rescale.assign(d, 1.0);
        m.params.target_head.rescale.assign(d, 1.0);
        return m;
    }

    /// c = 0, rescale 1, weights ~ U(-1/sqrt(H), 1/sqrt(H)), biases 0 except the mean biases,
    /// which start at the standard-normal quantiles (k + 0.5) / N. With identical components the
    /// first factor sits on a symmetric saddle it can fail to leave. Both heads start from the
    /// same draw.
    static KrdaModel init(std::size_t d, std::size_t hidden, std::size_t components, Rng& rng) {
        KrdaModel m = zero(d, hidden, components);
        const double bound = 1.0 / std::sqrt(static_cast<double>(hidden));
        std::uniform_real_distribution<double> u(-bound, bound);
        for (double& w : m.params.backbone.W.data()) w = u(rng);
        for (AffineMap* a : {&m.params.source_head.out_w, &m.params.source_head.out_mu,
                             &m.params.source_head.out_logvar})
            for (double& w : a->weight.data()) w = u(rng);
        auto& mean_bias = m.params.source_head.out_mu.bias;
        const auto unit = GaussianMixture1D::single(0.0, 1.0);
        for (std::size_t k = 0; k < components; ++k)
            mean_bias[k] = mixture_inverse_cdf(unit, (static_cast<double>(k) + 0.5) / static_cast<double>(components));
        m.params.target_head = m.params.source_head;
        return m;
    }

    void check_input(std::span<const double> x) const {
        if (x.size() != d) throw DimensionMismatch("model input", d, x.size());
    }

    friend bool operator==(const KrdaModel&, const KrdaModel&) = default;
};

// ---------------------------------------------------------------------------
// Forward pass

/// Mixture emitted by `head` for the hidden activation `a` of factor `index`.
inline GaussianMixture1D head_mixture(const KrdaModel& model, Domain domain, std::size_t index,
                                      std::span<const double> a) {
    const DomainHead& head = model.params.head(domain);
    const std::size_t H = model.hidden;
    const std::size_t N = model.components;
    std::vector<double> h(H);
    const double scale = head.rescale[index];
    for (std::size_t k = 0; k < H; ++k) h[k] = std::max(0.0, scale * a[k]);

    GaussianMixture1D mix;
    mix.weights.resize(N);
    mix.means.resize(N);
    mix.stds.resize(N);
    head.out_w.apply(h, mix.weights);
    head.out_mu.apply(h, mix.means);
    head.out_logvar.apply(h, mix.stds);

    const double top = *std::max_element(mix.weights.begin(), mix.weights.end());
    double total = 0.0;
    for (double& w : mix.weights) total += (w = std::exp(w - top));
    for (double& w : mix.weights) w /= total;
    for (double& s : mix.stds) s = std::max(std::exp(0.5 * s), kSigmaFloor);
    return mix;
}

/// Incremental evaluation of the recurrence; used when the input is built one coordinate at a time.
class Autoregression {
public:
    explicit Autoregression(const KrdaModel& model)
        : model_(&model), activation_(model.params.backbone.c) {}

    std::size_t index() const noexcept { return index_; }
    std::span<const double> activation() const noexcept { return activation_; }

    GaussianMixture1D mixture(Domain domain) const {
        return head_mixture(*model_, domain, index_, activation_);
    }

    /// Feeds x_index and moves to the next factor.
    void advance(double value) {
        const Matrix& W = model_->params.backbone.W;
        for (std::size_t k = 0; k < activation_.size(); ++k) activation_[k] += value * W(k, index_);
        ++index_;
    }

private:
    const KrdaModel* model_;
    std::vector<double> activation_;
    std::size_t index_ = 0;
};

/// Hidden activations a_0 .. a_{d-1} for a standardized input.
inline std::vector<std::vector<double>> forward_activations(const KrdaModel& model,
                                                            std::span<const double> x) {
    model.check_input(x);
    std::vector<std::vector<double>> out;
    out.reserve(model.d);
    Autoregression state(model);
    for (std::size_t i = 0; i < model.d; ++i) {
        out.emplace_back(state.activation().begin(), state.activation().end());
        state.advance(x[i]);
    }
    return out;
}

/// Conditional law of x_index given x_0 .. x_{index-1} (zero-based index).
inline GaussianMixture1D conditional_mixture(const KrdaModel& model, Domain domain,
                                             std::span<const double> x, std::size_t index) {
    model.check_input(x);
    if (index >= model.d) throw InvalidArgument("factor index out of range");
    Autoregression state(model);
    for (std::size_t i = 0; i < index; ++i) state.advance(x[i]);
    return state.mixture(domain);
}

/// Log-density of a standardized input under the selected domain.
inline double log_likelihood(const KrdaModel& model, Domain domain, std::span<const double> x) {
    model.check_input(x);
    Autoregression state(model);
    double total = 0.0;
    for (std::size_t i = 0; i < model.d; ++i) {
        total += mixture_log_pdf(state.mixture(domain), x[i]);
        state.advance(x[i]);
    }
    return total;
}

inline double mean_log_likelihood(const KrdaModel& model, Domain domain, const Matrix& batch) {
    if (batch.rows() == 0) throw EmptyDataset("mean log-likelihood of an empty batch");
    double total = 0.0;
    for (std::size_t r = 0; r < batch.rows(); ++r) total += log_likelihood(model, domain, batch.row(r));
    return total / static_cast<double>(batch.rows());
}

// ---------------------------------------------------------------------------
// Gradient

namespace detail {

/// Accumulates d(log p(x)) / d(params) * weight into grad for one standardized input.
inline double accumulate_gradient(const KrdaModel& model, Domain domain, std::span<const double> x,
                                  double weight, Gradient& grad) {
    const std::size_t d = model.d;
    const std::size_t H = model.hidden;
    const std::size_t N = model.components;
    const DomainHead& head = model.params.head(domain);
    DomainHead& ghead = grad.head(domain);
    const Matrix& W = model.params.backbone.W;

    std::vector<double> a(model.params.backbone.c);
    std::vector<double> h(H), dh(H);
    std::vector<double> logits(N), mu(N), s(N), sigma(N), terms(N);
    std::vector<double> g_logit(N), g_mu(N), g_s(N);
    Matrix da(d, H);
    double loglik = 0.0;

    for (std::size_t i = 0; i < d; ++i) {
        const double scale = head.rescale[i];
        for (std::size_t k = 0; k < H; ++k) h[k] = std::max(0.0, scale * a[k]);
        head.out_w.apply(h, logits);
        head.out_mu.apply(h, mu);
        head.out_logvar.apply(h, s);

        const double lse_logits = log_sum_exp(logits);
        const double v = x[i];
        for (std::size_t k = 0; k < N; ++k) {
            sigma[k] = std::exp(0.5 * s[k]);
            if (sigma[k] < kSigmaFloor) sigma[k] = kSigmaFloor;
            const double z = (v - mu[k]) / sigma[k];
            terms[k] = logits[k] - lse_logits + std_normal_log_pdf(z) - std::log(sigma[k]);
        }
        const double lse_terms = log_sum_exp(terms);
        loglik += lse_terms;
        for (std::size_t k = 0; k < N; ++k) {
            const double resp = std::exp(terms[k] - lse_terms);
            const double prior = std::exp(logits[k] - lse_logits);
            const double z = (v - mu[k]) / sigma[k];
            g_logit[k] = weight * (resp - prior);
            g_mu[k] = weight * resp * z / sigma[k];
            g_s[k] = std::exp(0.5 * s[k]) < kSigmaFloor ? 0.0 : weight * resp * 0.5 * (z * z - 1.0);
        }

        std::fill(dh.begin(), dh.end(), 0.0);
        const std::array<std::pair<const AffineMap*, AffineMap*>, 3> maps{
            std::pair{&head.out_w, &ghead.out_w}, std::pair{&head.out_mu, &ghead.out_mu},
            std::pair{&head.out_logvar, &ghead.out_logvar}};
        const std::array<const std::vector<double>*, 3> local{&g_logit, &g_mu, &g_s};
        for (std::size_t m = 0; m < 3; ++m) {
            const AffineMap& map = *maps[m].first;
            AffineMap& gmap = *maps[m].second;
            const auto& g = *local[m];
            for (std::size_t o = 0; o < N; ++o) {
                gmap.bias[o] += g[o];
                auto grow = gmap.weight.row(o);
                auto wrow = map.weight.row(o);
                for (std::size_t k = 0; k < H; ++k) {
                    grow[k] += g[o] * h[k];
                    dh[k] += g[o] * wrow[k];
                }
            }
        }

        double grescale = 0.0;
        auto dai = da.row(i);
        for (std::size_t k = 0; k < H; ++k) {
            const double dz = scale * a[k] > 0.0 ? dh[k] : 0.0;
            grescale += dz * a[k];
            dai[k] = scale * dz;
        }
        ghead.rescale[i] += grescale;

        for (std::size_t k = 0; k < H; ++k) a[k] += v * W(k, i);
    }

    // a_i = c + sum_{j<i} x_j W[:, j]
    std::vector<double> acc(H, 0.0);
    Matrix& gW = grad.backbone.W;
    for (std::size_t i = d; i-- > 0;) {
        for (std::size_t k = 0; k < H; ++k) gW(k, i) += x[i] * acc[k];
        const auto dai = da.row(i);
        for (std::size_t k = 0; k < H; ++k) acc[k] += dai[k];
    }
    for (std::size_t k = 0; k < H; ++k) grad.backbone.c[k] += acc[k];
    return loglik;
}

}  // namespace detail

/// Gradient of the batch-mean log-likelihood under `domain`. Only the backbone and the
/// selected head receive non-zero entries. Returns the batch-mean log-likelihood alongside.
inline double log_likelihood_grad(const KrdaModel& model, Domain domain, const Matrix& batch,
                                  Gradient& grad) {
    if (batch.cols() != model.d) throw DimensionMismatch("gradient batch", model.d, batch.cols());
    if (batch.rows() == 0) throw EmptyDataset("gradient of an empty batch");
    const double weight = 1.0 / static_cast<double>(batch.rows());
    double total = 0.0;
    for (std::size_t r = 0; r < batch.rows(); ++r)
        total += detail::accumulate_gradient(model, domain, batch.row(r), weight, grad);
    return total * weight;
}

inline Gradient log_likelihood_grad(const KrdaModel& model, Domain domain, const Matrix& batch) {
    Gradient grad = Parameters::zeros(model.d, model.hidden, model.components);
    log_likelihood_grad(model, domain, batch, grad);
    return grad;
}

// ---------------------------------------------------------------------------
// Sampling

/// Ancestral sample in standardized coordinates.
template <class UniformRng>
std::vector<double> sample_standardized(const KrdaModel& model, Domain domain, UniformRng& rng) {
    std::vector<double> x(model.d);
    Autoregression state(model);
    for (std::size_t i = 0; i < model.d; ++i) {
        x[i] = mixture_sample(state.mixture(domain), rng);
        state.advance(x[i]);
    }
    return x;
}

/// Ancestral sample mapped back to the original data coordinates.
template <class UniformRng>
std::vector<double> sample(const KrdaModel& model, Domain domain, UniformRng& rng) {
    auto x = sample_standardized(model, domain, rng);
    model.standardizer.invert(x);
    return x;
}

}  // namespace krda
