#pragma once

// Static SVG scatter plots of 2-D source / target / transferred clouds.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "krda/error.hpp"
#include "krda/matrix.hpp"
#include "krda/random.hpp"

namespace krda {

struct ScatterStyle {
    double size = 800.0;
    double margin = 30.0;
    double radius = 2.5;
    const char* source_color = "blue";
    const char* target_color = "green";
    const char* transferred_color = "orange";
    const char* arrow_color = "red";
};

namespace detail {

inline std::string fmt_coord(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

}  // namespace detail

/// One circle per point of each cloud and `arrows` source -> transferred segments for rows
/// picked by a seeded shuffle. `transferred` rows correspond to `source` rows.
inline std::string render_scatter_svg(const Matrix& source, const Matrix& target, const Matrix& transferred,
                                      std::size_t arrows, std::uint64_t seed = 0,
                                      const ScatterStyle& style = {}) {
    for (const Matrix* m : {&source, &target, &transferred})
        if (m->cols() != 2 && !(m->rows() == 0 && m->cols() == 0))
            throw DimensionMismatch("scatter plot input", 2, m->cols());
    if (arrows > 0 && transferred.rows() != source.rows())
        throw DimensionMismatch("transferred rows", source.rows(), transferred.rows());
    arrows = std::min(arrows, source.rows());

    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    for (const Matrix* m : {&source, &target, &transferred})
        for (std::size_t r = 0; r < m->rows(); ++r) {
            xmin = std::min(xmin, (*m)(r, 0));
            xmax = std::max(xmax, (*m)(r, 0));
            ymin = std::min(ymin, (*m)(r, 1));
            ymax = std::max(ymax, (*m)(r, 1));
        }
    if (!std::isfinite(xmin)) xmin = ymin = 0.0, xmax = ymax = 1.0;
    const double span = std::max({xmax - xmin, ymax - ymin, 1e-12});
    const double scale = (style.size - 2.0 * style.margin) / span;
    auto px = [&](double x) { return style.margin + (x - xmin) * scale; };
    auto py = [&](double y) { return style.size - style.margin - (y - ymin) * scale; };

    std::string svg;
    const std::string size = detail::fmt_coord(style.size);
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + size + "\" height=\"" + size +
           "\" viewBox=\"0 0 " + size + " " + size + "\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    auto cloud = [&](const Matrix& m, const char* color, const char* cls) {
        svg += std::string("<g class=\"") + cls + "\" fill=\"" + color + "\" fill-opacity=\"0.6\">\n";
        for (std::size_t r = 0; r < m.rows(); ++r)
            svg += "<circle cx=\"" + detail::fmt_coord(px(m(r, 0))) + "\" cy=\"" +
                   detail::fmt_coord(py(m(r, 1))) + "\" r=\"" + detail::fmt_coord(style.radius) + "\"/>\n";
        svg += "</g>\n";
    };
    cloud(source, style.source_color, "source");
    cloud(target, style.target_color, "target");
    cloud(transferred, style.transferred_color, "transferred");

    std::vector<std::size_t> rows(source.rows());
    std::iota(rows.begin(), rows.end(), std::size_t{0});
    Rng rng(seed);
    std::shuffle(rows.begin(), rows.end(), rng);
    rows.resize(arrows);
    std::sort(rows.begin(), rows.end());
    svg += std::string("<g class=\"mappings\" stroke=\"") + style.arrow_color + "\" stroke-width=\"1\">\n";
    for (std::size_t r : rows)
        svg += "<line x1=\"" + detail::fmt_coord(px(source(r, 0))) + "\" y1=\"" +
               detail::fmt_coord(py(source(r, 1))) + "\" x2=\"" + detail::fmt_coord(px(transferred(r, 0))) +
               "\" y2=\"" + detail::fmt_coord(py(transferred(r, 1))) + "\"/>\n";
    svg += "</g>\n</svg>\n";
    return svg;
}

}  // namespace krda
