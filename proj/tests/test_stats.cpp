#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>
#include <vector>

#include "krda/benchmark.hpp"
#include "krda/stats.hpp"

using namespace krda;

TEST(KsTwoSample, HandComputedValues) {
    EXPECT_DOUBLE_EQ(ks_two_sample({1, 2, 3}, {1, 2, 3}), 0.0);
    EXPECT_DOUBLE_EQ(ks_two_sample({1, 2}, {3, 4}), 1.0);
    // F_a jumps at 1,3; F_b at 2,4: largest gap 1/2
    EXPECT_DOUBLE_EQ(ks_two_sample({1, 3}, {2, 4}), 0.5);
    EXPECT_DOUBLE_EQ(ks_two_sample({0, 0, 1, 1}, {0, 1}), 0.0);
    EXPECT_THROW(ks_two_sample({}, {1.0}), EmptyDataset);
}

TEST(KsOneSample, UniformGrid) {
    // Points at (i + 1/2) / n: the statistic is exactly 1 / (2n).
    std::vector<double> u;
    for (int i = 0; i < 10; ++i) u.push_back((i + 0.5) / 10.0);
    EXPECT_NEAR(ks_one_sample(u, [](double x) { return x; }), 0.05, 1e-15);
}

TEST(EnergyDistance, ZeroForIdenticalAndPositiveForShifted) {
    Matrix a(3, 1, std::vector<double>{0, 1, 2});
    EXPECT_NEAR(energy_distance(a, a), 0.0, 1e-15);
    Matrix p(1, 1, std::vector<double>{0.0}), q(1, 1, std::vector<double>{3.0});
    EXPECT_DOUBLE_EQ(energy_distance(p, q), 6.0);
    EXPECT_THROW(energy_distance(a, Matrix(2, 2)), DimensionMismatch);
}

TEST(MeanCi95, StudentQuantile) {
    const std::vector<double> one{0.7};
    EXPECT_EQ(mean_ci95(one).half_width, 0.0);
    EXPECT_EQ(mean_ci95(one).mean, 0.7);
    // n = 5, sd = sqrt(2.5), t_{0.975, 4} = 2.7764451051977987
    const std::vector<double> v{1, 2, 3, 4, 5};
    const auto ci = mean_ci95(v);
    EXPECT_DOUBLE_EQ(ci.mean, 3.0);
    EXPECT_NEAR(ci.half_width, 2.7764451051977987 * std::sqrt(2.5) / std::sqrt(5.0), 1e-12);
}

TEST(Seeds, DerivedStreamsAreDistinctAndStable) {
    EXPECT_EQ(derive_seed(1, 2), derive_seed(1, 2));
    EXPECT_NE(derive_seed(1, 2), derive_seed(1, 3));
    EXPECT_NE(derive_seed(1, 2), derive_seed(2, 2));
}

TEST(Summary, GroupsRowsAndComputesIntervals) {
    std::vector<AccuracyRow> rows{{"moons", "30", 300, 0, "krda", 1.0},
                                  {"moons", "30", 300, 1, "krda", 0.98},
                                  {"moons", "30", 300, 0, "source_only", 0.9},
                                  {"moons", "30", 300, 1, "source_only", 0.9}};
    const auto s = summarize(rows);
    ASSERT_EQ(s.size(), 2u);
    EXPECT_EQ(s[0].method, "krda");
    EXPECT_EQ(s[0].repeats, 2u);
    EXPECT_NEAR(s[0].accuracy.mean, 0.99, 1e-12);
    EXPECT_GT(s[0].accuracy.half_width, 0.0);
    EXPECT_EQ(s[1].accuracy.half_width, 0.0);
    std::ostringstream out;
    write_summary(out, s);
    EXPECT_EQ(out.str().substr(0, out.str().find('\n')),
              "suite,task,train_n,method,repeats,mean_accuracy,ci95_half_width");
}
