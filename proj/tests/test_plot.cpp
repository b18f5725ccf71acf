#include <gtest/gtest.h>

#include <string>
#include <vector>

#include "krda/plot.hpp"

using namespace krda;

namespace {

std::size_t count(const std::string& text, const std::string& needle) {
    std::size_t n = 0;
    for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
    return n;
}

Matrix grid(std::size_t n, double offset) {
    Matrix m(n, 2);
    for (std::size_t r = 0; r < n; ++r) {
        m(r, 0) = offset + static_cast<double>(r);
        m(r, 1) = offset - static_cast<double>(r) * 0.5;
    }
    return m;
}

}  // namespace

TEST(Scatter, OneCirclePerPointAndRequestedArrows) {
    const std::string svg = render_scatter_svg(grid(30, 0), grid(20, 1), grid(30, 2), 5, 7);
    EXPECT_EQ(count(svg, "<circle"), 80u);
    EXPECT_EQ(count(svg, "<line"), 5u);
    EXPECT_EQ(svg.rfind("<svg", 0), 0u);
    EXPECT_NE(svg.find("</svg>"), std::string::npos);
}

TEST(Scatter, NoArrowsWhenZeroRequested) {
    const std::string svg = render_scatter_svg(grid(10, 0), grid(10, 1), grid(10, 2), 0);
    EXPECT_EQ(count(svg, "<line"), 0u);
}

TEST(Scatter, ArrowCountCappedByRows) {
    EXPECT_EQ(count(render_scatter_svg(grid(4, 0), grid(4, 1), grid(4, 2), 50), "<line"), 4u);
}

TEST(Scatter, IdenticalCloudsGiveZeroLengthArrows) {
    const Matrix same = grid(6, 0);
    const std::string svg = render_scatter_svg(same, same, same, 6);
    for (auto pos = svg.find("<line"); pos != std::string::npos; pos = svg.find("<line", pos + 1)) {
        auto attr = [&](const std::string& name) {
            const auto start = svg.find(name + "=\"", pos) + name.size() + 2;
            return svg.substr(start, svg.find('"', start) - start);
        };
        EXPECT_EQ(attr("x1"), attr("x2"));
        EXPECT_EQ(attr("y1"), attr("y2"));
    }
}

TEST(Scatter, SeedChoosesArrowsDeterministically) {
    const auto a = render_scatter_svg(grid(40, 0), grid(40, 1), grid(40, 2), 3, 1);
    EXPECT_EQ(a, render_scatter_svg(grid(40, 0), grid(40, 1), grid(40, 2), 3, 1));
    EXPECT_NE(a, render_scatter_svg(grid(40, 0), grid(40, 1), grid(40, 2), 3, 2));
}

TEST(Scatter, RejectsNonPlanarData) {
    EXPECT_THROW(render_scatter_svg(Matrix(3, 3), grid(2, 0), grid(2, 0), 0), DimensionMismatch);
}
