#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "krda/mixture.hpp"
#include "krda/stats.hpp"
#include "oracles.hpp"

using namespace krda;
using krda::testing::integrate;
using krda::testing::random_mixture;
using krda::testing::reference_cdf;

namespace {

GaussianMixture1D three_components() { return {{0.2, 0.5, 0.3}, {-2.0, 0.5, 4.0}, {0.7, 1.3, 0.4}}; }

// Accepts either a small residual or the best representable answer: no double lies strictly
// between the two neighbours of z that would bring F closer to q.
::testing::AssertionResult inverts(const GaussianMixture1D& m, double q, double z, double tol) {
    const double f = mixture_cdf(m, z);
    if (std::abs(f - q) <= tol) return ::testing::AssertionSuccess();
    const double below = mixture_cdf(m, std::nextafter(z, -INFINITY));
    const double above = mixture_cdf(m, std::nextafter(z, INFINITY));
    if (below <= q && q <= above) return ::testing::AssertionSuccess();
    return ::testing::AssertionFailure() << "F(" << z << ") = " << f << " for q = " << q;
}

}  // namespace

TEST(StdNormalCdf, KnownValues) {
    EXPECT_DOUBLE_EQ(std_normal_cdf(0.0), 0.5);
    EXPECT_NEAR(std_normal_cdf(1.959964), 0.975, 1e-6);
    EXPECT_NEAR(std_normal_cdf(-1.959964), 0.025, 1e-6);
}

TEST(StdNormalCdf, MatchesQuadrature) {
    auto phi = [](double t) { return std::exp(-0.5 * t * t) / std::sqrt(2.0 * M_PI); };
    for (double z : {-37.0, -8.0, -3.1, -1.0, -0.2, 0.0, 0.4, 1.7, 5.0, 9.0}) {
        const double ref = integrate(phi, -INFINITY, z);
        EXPECT_NEAR(std_normal_cdf(z), ref, 1e-14 + 1e-12 * ref) << "z=" << z;
    }
}

TEST(StdNormalCdf, Reflection) {
    for (double z : {0.3, 1.0, 2.5, 6.0}) EXPECT_NEAR(std_normal_cdf(-z), 1.0 - std_normal_cdf(z), 1e-16);
}

TEST(StdNormalCdf, DeepTailIsPositiveAndMonotone) {
    double prev = 0.0;
    for (double z = -38.0; z <= 8.0; z += 0.25) {
        const double f = std_normal_cdf(z);
        EXPECT_GE(f, prev);
        EXPECT_GE(f, 0.0);
        EXPECT_LE(f, 1.0);
        prev = f;
    }
    EXPECT_GT(std_normal_cdf(-37.0), 0.0);
}

TEST(MixturePdf, StandardPeak) {
    EXPECT_NEAR(mixture_pdf(GaussianMixture1D::single(0, 1), 0.0), 0.398942, 1e-6);
}

TEST(MixturePdf, SymmetricPair) {
    const GaussianMixture1D m{{0.5, 0.5}, {-1.0, 1.0}, {1.0, 1.0}};
    EXPECT_NEAR(mixture_pdf(m, 0.0), std::exp(-0.5) / std::sqrt(2.0 * M_PI), 1e-15);
    EXPECT_DOUBLE_EQ(mixture_pdf(m, 0.7), mixture_pdf(m, -0.7));
}

TEST(MixturePdf, IntegratesToOne) {
    const auto m = three_components();
    const double total = integrate([&](double x) { return mixture_pdf(m, x); }, -INFINITY, INFINITY);
    EXPECT_NEAR(total, 1.0, 1e-8);
}

TEST(MixtureLogPdf, KnownValues) {
    const auto n01 = GaussianMixture1D::single(0, 1);
    EXPECT_NEAR(mixture_log_pdf(n01, 0.0), -0.918939, 1e-6);
    // -x^2/2 - log sqrt(2 pi) evaluated directly at x = 40
    EXPECT_NEAR(mixture_log_pdf(n01, 40.0), -800.0 - 0.9189385332046727, 1e-9);
    EXPECT_TRUE(std::isfinite(mixture_log_pdf(n01, 1e3)));
}

TEST(MixtureLogPdf, AgreesWithLogOfPdf) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> x(-60, 60);
    for (int t = 0; t < 200; ++t) {
        const auto m = random_mixture(rng, 10, 50.0, 1e-2, 20.0);
        const double v = x(rng);
        const double p = mixture_pdf(m, v);
        if (p > 1e-300) {
            EXPECT_NEAR(mixture_log_pdf(m, v), std::log(p), 1e-10 * std::max(1.0, std::abs(std::log(p))));
        }
    }
}

TEST(MixtureLogPdf, CollapsedComponentsEqualSingle) {
    const GaussianMixture1D m{{0.3, 0.7}, {1.5, 1.5}, {2.0, 2.0}};
    const auto s = GaussianMixture1D::single(1.5, 2.0);
    for (double x : {-3.0, 0.0, 1.5, 7.0}) EXPECT_NEAR(mixture_log_pdf(m, x), mixture_log_pdf(s, x), 1e-14);
}

TEST(MixtureCdf, KnownValues) {
    EXPECT_DOUBLE_EQ(mixture_cdf(GaussianMixture1D::single(5, 2), 5.0), 0.5);
    const GaussianMixture1D sym{{0.5, 0.5}, {-3.0, 3.0}, {1.0, 1.0}};
    EXPECT_NEAR(mixture_cdf(sym, 0.0), 0.5, 1e-15);
}

TEST(MixtureCdf, MatchesQuadratureOracle) {
    const auto fixed = three_components();
    for (double x : {-6.0, -2.0, -0.3, 0.5, 1.1, 3.9, 4.4, 9.0})
        EXPECT_NEAR(mixture_cdf(fixed, x), reference_cdf(fixed, x), 1e-8) << "x=" << x;

    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> pos(-70, 70);
    for (int t = 0; t < 100; ++t) {
        const auto m = random_mixture(rng, 10, 50.0, 1e-2, 20.0);
        const double x = pos(rng);
        EXPECT_NEAR(mixture_cdf(m, x), reference_cdf(m, x), 1e-8);
    }
}

TEST(MixtureCdf, MonotoneAndBounded) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> pos(-80, 80);
    for (int t = 0; t < 300; ++t) {
        const auto m = random_mixture(rng);
        double a = pos(rng), b = pos(rng);
        if (a > b) std::swap(a, b);
        const double fa = mixture_cdf(m, a), fb = mixture_cdf(m, b);
        EXPECT_LE(fa, fb);
        EXPECT_GE(fa, 0.0);
        EXPECT_LE(fb, 1.0);
    }
}

TEST(MixtureInverseCdf, KnownValues) {
    EXPECT_NEAR(mixture_inverse_cdf(GaussianMixture1D::single(5, 2), 0.5), 5.0, 1e-9);
    const auto m = three_components();
    EXPECT_NEAR(mixture_cdf(m, mixture_inverse_cdf(m, 0.3)), 0.3, 1e-9);
}

TEST(MixtureInverseCdf, ClipsExtremeQuantiles) {
    const auto m = three_components();
    const double z0 = mixture_inverse_cdf(m, 0.0);
    EXPECT_TRUE(std::isfinite(z0));
    EXPECT_EQ(z0, mixture_inverse_cdf(m, kQuantileClip));
    const double z1 = mixture_inverse_cdf(m, 1.0);
    EXPECT_TRUE(std::isfinite(z1));
    EXPECT_EQ(z1, mixture_inverse_cdf(m, 1.0 - kQuantileClip));
    EXPECT_EQ(mixture_inverse_cdf(m, -3.0), z0);
}

TEST(MixtureInverseCdf, RoundTripProperty) {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int t = 0; t < 500; ++t) {
        const auto m = random_mixture(rng);
        const double q = clip_quantile(unit(rng));
        const double z = mixture_inverse_cdf(m, q);
        EXPECT_TRUE(inverts(m, q, z, 1e-9));
    }
}

TEST(MixtureInverseCdf, MonotoneInQuantile) {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int t = 0; t < 300; ++t) {
        const auto m = random_mixture(rng);
        double a = unit(rng), b = unit(rng);
        if (a > b) std::swap(a, b);
        EXPECT_LE(mixture_inverse_cdf(m, a), mixture_inverse_cdf(m, b));
    }
}

TEST(MixtureInverseCdf, TranslationEquivariance) {
    std::mt19937_64 rng(29);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> shift(-10.0, 10.0);
    for (int t = 0; t < 300; ++t) {
        const auto m = random_mixture(rng, 10, 40.0, 1e-3, 20.0);
        auto moved = m;
        const double s = shift(rng);
        for (double& mu : moved.means) mu += s;
        const double q = unit(rng);
        EXPECT_NEAR(mixture_inverse_cdf(moved, q), mixture_inverse_cdf(m, q) + s, 1e-9);
    }
}

TEST(MixtureInverseCdf, BracketNotFoundBeyondRange) {
    const auto far = GaussianMixture1D::single(1e25, 1.0);
    EXPECT_THROW(mixture_inverse_cdf(far, 0.5), BracketNotFound);
    try {
        mixture_inverse_cdf(far, 0.25);
    } catch (const BracketNotFound& e) {
        EXPECT_DOUBLE_EQ(e.quantile(), 0.25);
    }
}

TEST(MixtureInverseCdf, ProbabilityIntegralTransformIsUniform) {
    const auto m = three_components();
    std::mt19937_64 rng(31);
    std::vector<double> u;
    for (int i = 0; i < 10000; ++i) u.push_back(mixture_cdf(m, mixture_sample(m, rng)));
    EXPECT_LE(ks_one_sample(u, [](double v) { return std::clamp(v, 0.0, 1.0); }), 0.02);
}

TEST(MixtureSample, MomentsMatch) {
    const auto m = three_components();
    double mean = 0.0, second = 0.0;
    for (std::size_t k = 0; k < m.size(); ++k) {
        mean += m.weights[k] * m.means[k];
        second += m.weights[k] * (m.stds[k] * m.stds[k] + m.means[k] * m.means[k]);
    }
    const double sd = std::sqrt(second - mean * mean);
    std::mt19937_64 rng(37);
    const int n = 100000;
    double s1 = 0.0, s2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = mixture_sample(m, rng);
        s1 += x;
        s2 += x * x;
    }
    const double emp_mean = s1 / n;
    const double emp_sd = std::sqrt(s2 / n - emp_mean * emp_mean);
    EXPECT_NEAR(emp_mean, mean, 0.02);
    EXPECT_NEAR(emp_sd, sd, 0.02);
}

TEST(MixtureSample, ZeroWeightComponentNeverDrawn) {
    const GaussianMixture1D m{{0.0, 1.0, 0.0}, {-100.0, 0.0, 100.0}, {1.0, 1.0, 1.0}};
    std::mt19937_64 rng(41);
    for (int i = 0; i < 20000; ++i) EXPECT_LT(std::abs(mixture_sample(m, rng)), 10.0);
}

TEST(LogSumExp, StableForLargeInputs) {
    std::vector<double> v{1000.0, 1000.0};
    EXPECT_NEAR(log_sum_exp(v), 1000.0 + std::log(2.0), 1e-12);
    std::vector<double> w{-1000.0, -1e308};
    EXPECT_NEAR(log_sum_exp(w), -1000.0, 1e-12);
}

TEST(GaussianMixture1D, ValidateRejectsBadInput) {
    EXPECT_THROW((GaussianMixture1D{{0.5}, {0.0, 1.0}, {1.0}}.validate()), Error);
    EXPECT_THROW((GaussianMixture1D{{1.0}, {0.0}, {-1.0}}.validate()), Error);
    EXPECT_NO_THROW(three_components().validate());
}
