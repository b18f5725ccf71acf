#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <vector>

#include "krda/data.hpp"

using namespace krda;

namespace {

// Arc centres of the unrotated moons, rotated like the data.
std::pair<double, double> arc_centre(int label, double rotation_deg) {
    const double cx = label == 0 ? 0.0 : 1.0;
    const double cy = label == 0 ? 0.0 : 0.5;
    const double th = rotation_deg * std::numbers::pi / 180.0;
    const double dx = cx - 0.5, dy = cy - 0.25;
    return {0.5 + std::cos(th) * dx - std::sin(th) * dy, 0.25 + std::sin(th) * dx + std::cos(th) * dy};
}

Dataset parse(const std::string& text) {
    std::istringstream in(text);
    return read_csv(in);
}

}  // namespace

TEST(Moons, NoiselessPointsLieOnUnitArcs) {
    const Dataset d = gen_moons({4, 0.0, 0.0, 1});
    ASSERT_EQ(d.size(), 4u);
    for (std::size_t r = 0; r < 4; ++r) {
        const int label = (*d.labels)[r];
        const auto [cx, cy] = arc_centre(label, 0.0);
        EXPECT_NEAR(std::hypot(d.features(r, 0) - cx, d.features(r, 1) - cy), 1.0, 1e-12);
        // upper arc has y >= 0, lower arc has y <= 1/2
        if (label == 0) EXPECT_GE(d.features(r, 1), -1e-12);
        else EXPECT_LE(d.features(r, 1), 0.5 + 1e-12);
    }
}

TEST(Moons, FullTurnIsIdentity) {
    const Dataset a = gen_moons({50, 0.1, 0.0, 2});
    const Dataset b = gen_moons({50, 0.1, 360.0, 2});
    for (std::size_t k = 0; k < a.features.data().size(); ++k)
        EXPECT_NEAR(a.features.data()[k], b.features.data()[k], 1e-9);
}

TEST(Moons, RotatedArcsKeepTheirRadius) {
    const double noise = 0.1;
    const std::size_t n = 1000;
    const Dataset d = gen_moons({n, noise, 40.0, 3});
    double deviation[2] = {0.0, 0.0};
    for (std::size_t r = 0; r < n; ++r) {
        const int label = (*d.labels)[r];
        const auto [cx, cy] = arc_centre(label, 40.0);
        deviation[label] += std::hypot(d.features(r, 0) - cx, d.features(r, 1) - cy) - 1.0;
    }
    for (double dev : deviation) EXPECT_LE(std::abs(dev / (n / 2.0)), 3.0 * noise / std::sqrt(n / 2.0));
}

TEST(Moons, RotationCommutesWithGeneration) {
    const Dataset base = gen_moons({100, 0.05, 0.0, 4});
    const Dataset turned = gen_moons({100, 0.05, 25.0, 4});
    const double th = 25.0 * std::numbers::pi / 180.0;
    for (std::size_t r = 0; r < 100; ++r) {
        const double dx = base.features(r, 0) - kMoonsCentroidX;
        const double dy = base.features(r, 1) - kMoonsCentroidY;
        EXPECT_NEAR(turned.features(r, 0), kMoonsCentroidX + std::cos(th) * dx - std::sin(th) * dy, 1e-12);
        EXPECT_NEAR(turned.features(r, 1), kMoonsCentroidY + std::sin(th) * dx + std::cos(th) * dy, 1e-12);
    }
    EXPECT_EQ(turned.labels, base.labels);
}

TEST(Moons, ClassBalanceAndDeterminism) {
    const Dataset d = gen_moons({301, 0.1, 10.0, 5});
    std::size_t ones = 0;
    for (int l : *d.labels) ones += l;
    EXPECT_EQ(ones, 151u);
    EXPECT_EQ(d, gen_moons({301, 0.1, 10.0, 5}));
    EXPECT_NE(d.features, gen_moons({301, 0.1, 10.0, 6}).features);
    EXPECT_EQ(gen_moons({0, 0.1, 0.0, 1}).size(), 0u);
}

TEST(Gmm, SingleModeMoments) {
    const Dataset d = gen_gmm({{{1.0, {2.0, -1.0}, {4.0, 0.25}}}, 20000, 7});
    double mean[2] = {0, 0}, sq[2] = {0, 0};
    for (std::size_t r = 0; r < d.size(); ++r)
        for (int j = 0; j < 2; ++j) {
            mean[j] += d.features(r, j);
            sq[j] += d.features(r, j) * d.features(r, j);
        }
    const double n = static_cast<double>(d.size());
    EXPECT_NEAR(mean[0] / n, 2.0, 0.05);
    EXPECT_NEAR(mean[1] / n, -1.0, 0.02);
    EXPECT_NEAR(sq[0] / n - std::pow(mean[0] / n, 2), 4.0, 0.15);
    EXPECT_NEAR(sq[1] / n - std::pow(mean[1] / n, 2), 0.25, 0.01);
    EXPECT_FALSE(d.has_labels());
}

TEST(Gmm, StandardModeHasZeroMean) {
    const Dataset d = gen_gmm({{{1.0, {0.0}, {1.0}}}, 10000, 8});
    double mean = 0.0;
    for (double v : d.features.data()) mean += v;
    EXPECT_NEAR(mean / 10000.0, 0.0, 0.02);
}

TEST(Gmm, ModeFrequenciesFollowWeights) {
    const Dataset d = gen_gmm({{{0.5, {-10.0}, {1.0}}, {0.5, {10.0}, {1.0}}}, 10000, 9});
    std::size_t right = 0;
    for (double v : d.features.data()) right += v > 0.0;
    // binomial(10000, 1/2): 4 standard deviations is 200
    EXPECT_NEAR(static_cast<double>(right), 5000.0, 200.0);
}

TEST(Gmm, ZeroWeightModeNeverSampled) {
    const Dataset d = gen_gmm({{{0.0, {-100.0}, {1.0}}, {1.0, {0.0}, {1.0}}, {0.0, {100.0}, {1.0}}}, 5000, 10});
    for (double v : d.features.data()) EXPECT_LT(std::abs(v), 10.0);
}

TEST(Gmm, InvalidSpecsThrow) {
    EXPECT_THROW(gen_gmm({{}, 10, 1}), InvalidArgument);
    EXPECT_THROW(gen_gmm({{{0.5, {0.0}, {1.0}}}, 10, 1}), InvalidArgument);
    EXPECT_THROW(gen_gmm({{{1.0, {0.0}, {0.0}}}, 10, 1}), InvalidArgument);
    EXPECT_THROW(gen_gmm({{{0.5, {0.0}, {1.0}}, {0.5, {0.0, 1.0}, {1.0, 1.0}}}, 10, 1}), DimensionMismatch);
}

TEST(Csv, RoundTripIsBitExact) {
    std::mt19937_64 rng(11);
    std::normal_distribution<double> g(0.0, 1e3);
    Dataset d;
    d.features = Matrix(100, 5);
    for (double& v : d.features.data()) v = g(rng) / 7.0;
    d.features(0, 0) = 5e-324;
    d.features(1, 1) = -0.0;
    d.features(2, 2) = 1.7976931348623157e308;
    d.column_names = {"a", "b", "c", "d", "e"};
    d.labels.emplace(100);
    for (std::size_t r = 0; r < 100; ++r) (*d.labels)[r] = static_cast<int>(r % 2);
    std::ostringstream out;
    write_csv(out, d);
    const Dataset back = parse(out.str());
    EXPECT_EQ(back, d);
    for (std::size_t k = 0; k < d.features.data().size(); ++k)
        EXPECT_EQ(std::signbit(back.features.data()[k]), std::signbit(d.features.data()[k]));
}

TEST(Csv, LabelColumnMayAppearAnywhere) {
    const Dataset d = parse("label,x,y\n1,0.5,2\n0,-1,3\n");
    EXPECT_EQ(d.column_names, (std::vector<std::string>{"x", "y"}));
    EXPECT_EQ(*d.labels, (std::vector<int>{1, 0}));
    EXPECT_EQ(d.features(1, 0), -1.0);
}

TEST(Csv, HeaderOnlyGivesEmptyDataset) {
    const Dataset d = parse("x1,x2,label\n");
    EXPECT_EQ(d.size(), 0u);
    EXPECT_EQ(d.dim(), 2u);
    EXPECT_TRUE(d.has_labels());
}

TEST(Csv, ToleratesCrlfAndBlankLines) {
    const Dataset d = parse("x1,x2\r\n1,2\r\n\r\n3, 4\r\n");
    EXPECT_EQ(d.size(), 2u);
    EXPECT_EQ(d.features(1, 1), 4.0);
}

TEST(Csv, ErrorsNameTheCell) {
    try {
        parse("x1,x2,x3\n1,2,3\n4,5,abc\n");
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.row(), 3u);
        EXPECT_EQ(e.column(), 3u);
        EXPECT_NE(std::string(e.what()).find("abc"), std::string::npos);
    }
    EXPECT_THROW(parse("x1,x2\n1\n"), ParseError);
    EXPECT_THROW(parse("x1,label\n1,2\n"), ParseError);
    EXPECT_THROW(parse(""), ParseError);
}

TEST(Csv, NonFiniteValuesAreRejected) {
    for (const char* bad : {"nan", "inf", "-inf", "1e400"}) {
        try {
            parse(std::string("x1,x2\n1,") + bad + "\n");
            ADD_FAILURE() << bad << " accepted";
        } catch (const NonFiniteValue& e) {
            EXPECT_EQ(e.row(), 2u);
            EXPECT_EQ(e.column(), 2u);
        } catch (const ParseError&) {
            // out-of-range text is a parse failure rather than an infinity
            EXPECT_STREQ(bad, "1e400");
        }
    }
}

TEST(Subsample, KeepsRequestedFractionInOrder) {
    const Dataset d = gen_moons({1000, 0.1, 0.0, 12});
    const Dataset s = subsample(d, 0.9, 13);
    EXPECT_EQ(s.size(), 900u);
    // every kept row appears in the original, in increasing original position
    std::size_t pos = 0;
    for (std::size_t r = 0; r < s.size(); ++r) {
        while (pos < d.size() && d.features.row(pos)[0] != s.features.row(r)[0]) ++pos;
        ASSERT_LT(pos, d.size());
        EXPECT_EQ((*s.labels)[r], (*d.labels)[pos]);
        ++pos;
    }
    EXPECT_EQ(subsample(d, 1.0, 14), d);
    EXPECT_NE(subsample(d, 0.9, 15).features, s.features);
    EXPECT_THROW(subsample(d, 0.0, 1), InvalidArgument);
}

TEST(Standardizer, ZeroMeanUnitVariance) {
    const Dataset d = gen_gmm({{{1.0, {3.0, -2.0}, {9.0, 0.01}}}, 500, 16});
    const auto s = Standardizer::fit(d.features);
    const Matrix z = s.apply(d.features);
    for (std::size_t j = 0; j < 2; ++j) {
        double mean = 0.0, sq = 0.0;
        for (std::size_t r = 0; r < z.rows(); ++r) mean += z(r, j);
        mean /= 500.0;
        for (std::size_t r = 0; r < z.rows(); ++r) sq += (z(r, j) - mean) * (z(r, j) - mean);
        EXPECT_NEAR(mean, 0.0, 1e-12);
        EXPECT_NEAR(sq / 500.0, 1.0, 1e-12);
    }
    const Matrix back = s.invert(z);
    for (std::size_t k = 0; k < back.data().size(); ++k) EXPECT_NEAR(back.data()[k], d.features.data()[k], 1e-10);
}

TEST(Standardizer, ConstantColumnMapsToZero) {
    Matrix m(3, 2, std::vector<double>{5, 1, 5, 2, 5, 3});
    const auto s = Standardizer::fit(m);
    const Matrix z = s.apply(m);
    for (std::size_t r = 0; r < 3; ++r) EXPECT_EQ(z(r, 0), 0.0);
    EXPECT_TRUE(std::isfinite(s.invert(z)(0, 0)));
}

TEST(Standardizer, PoolsBlocks) {
    Matrix a(2, 1, std::vector<double>{0, 2});
    Matrix b(2, 1, std::vector<double>{4, 6});
    const auto s = Standardizer::fit({&a, &b});
    EXPECT_DOUBLE_EQ(s.mean[0], 3.0);
    EXPECT_DOUBLE_EQ(s.stddev[0], std::sqrt(5.0));
    EXPECT_THROW(Standardizer::fit(Matrix(0, 2)), EmptyDataset);
}
