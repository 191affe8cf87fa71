/*
 * Copyright 2026 The angelcage Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef ANGELCAGE_SVG_HPP
#define ANGELCAGE_SVG_HPP

// Minimal self-contained SVG output: footprint scatters and line curves.

#include <algorithm>
#include <cmath>
#include <span>
#include <sstream>
#include <string>
#include <string_view>

#include "report.hpp"

namespace angelcage {

inline std::string xml_escape(std::string_view text)
{
    std::string out;
    out.reserve(text.size());
    for (char ch : text) {
        switch (ch) {
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '&': out += "&amp;"; break;
        case '"': out += "&quot;"; break;
        default: out += ch;
        }
    }
    return out;
}

struct PlanarPoint {
    double x = 0.0;
    double y = 0.0;
};

/// Footprint of a planar walk in lattice units. Every visited position gets
/// one marker of class "point"; the first also carries "start" and the last
/// "end". A circle of class "cage" marks the inner radius when it is positive.
inline std::string footprint_svg(std::span<const PlanarPoint> path, double radius)
{
    double extent = std::max(radius, 1.0);
    for (const auto &p : path) {
        extent = std::max({extent, std::abs(p.x), std::abs(p.y)});
    }
    extent += 1.0;
    const double marker = std::max(extent / 200.0, 0.05);

    std::ostringstream os;
    os << R"(<svg xmlns="http://www.w3.org/2000/svg" viewBox=")" << format_number(-extent) << ' '
       << format_number(-extent) << ' ' << format_number(2 * extent) << ' ' << format_number(2 * extent)
       << R"(" width="800" height="800">)" << '\n';
    os << R"(<rect x=")" << format_number(-extent) << R"(" y=")" << format_number(-extent) << R"(" width=")"
       << format_number(2 * extent) << R"(" height=")" << format_number(2 * extent) << R"(" fill="white"/>)" << '\n';
    if (radius > 0.0) {
        os << R"(<circle class="cage" cx="0" cy="0" r=")" << format_number(radius)
           << R"(" fill="none" stroke="black" stroke-width=")" << format_number(marker) << R"("/>)" << '\n';
    }
    for (std::size_t i = 0; i < path.size(); ++i) {
        std::string cls = "point";
        const char *fill = "steelblue";
        if (i + 1 == path.size()) {
            cls += " end";
            fill = "red";
        }
        if (i == 0) {
            cls.insert(5, " start");
            if (path.size() > 1) {
                fill = "green";
            }
        }
        // SVG y grows downwards.
        os << R"(<circle class=")" << cls << R"(" cx=")" << format_number(path[i].x) << R"(" cy=")"
           << format_number(-path[i].y) << R"(" r=")" << format_number(marker) << R"(" fill=")" << fill
           << R"("/>)" << '\n';
    }
    os << "</svg>\n";
    return os.str();
}

struct CurveBox {
    double x_min = 0.0;
    double x_max = 1.0;
    double y_min = 0.0;
    double y_max = 1.0;
};

/// Axis ranges covering all points; degenerate ranges are widened by one unit.
inline CurveBox curve_box(std::span<const PlanarPoint> points)
{
    if (points.empty()) {
        return {};
    }
    CurveBox box{points[0].x, points[0].x, points[0].y, points[0].y};
    for (const auto &p : points) {
        box.x_min = std::min(box.x_min, p.x);
        box.x_max = std::max(box.x_max, p.x);
        box.y_min = std::min(box.y_min, p.y);
        box.y_max = std::max(box.y_max, p.y);
    }
    if (box.x_max == box.x_min) {
        box.x_max += 1.0;
    }
    if (box.y_max == box.y_min) {
        box.y_max += 1.0;
    }
    return box;
}

/// Polyline plot in a 1000 x 600 canvas. The data ranges are recorded as
/// attributes of the "axes" group.
inline std::string curve_svg(std::span<const PlanarPoint> points, const std::string &x_label,
                             const std::string &y_label)
{
    const CurveBox box = curve_box(points);
    constexpr double width = 1000.0;
    constexpr double height = 600.0;
    constexpr double margin = 60.0;
    auto sx = [&](double x) { return margin + (x - box.x_min) / (box.x_max - box.x_min) * (width - 2 * margin); };
    auto sy = [&](double y) {
        return height - margin - (y - box.y_min) / (box.y_max - box.y_min) * (height - 2 * margin);
    };

    std::ostringstream os;
    os << R"(<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 1000 600" width="1000" height="600">)" << '\n';
    os << R"(<rect x="0" y="0" width="1000" height="600" fill="white"/>)" << '\n';
    os << R"(<g class="axes" data-x-min=")" << format_number(box.x_min) << R"(" data-x-max=")"
       << format_number(box.x_max) << R"(" data-y-min=")" << format_number(box.y_min) << R"(" data-y-max=")"
       << format_number(box.y_max) << R"(">)" << '\n';
    os << R"(<line x1="60" y1="540" x2="940" y2="540" stroke="black"/>)" << '\n';
    os << R"(<line x1="60" y1="540" x2="60" y2="60" stroke="black"/>)" << '\n';
    os << R"(<text x="500" y="585" text-anchor="middle">)" << xml_escape(x_label) << "</text>\n";
    os << R"svg(<text x="15" y="300" transform="rotate(-90 15 300)" text-anchor="middle">)svg" << xml_escape(y_label)
       << "</text>\n";
    os << R"(<text x="60" y="558" text-anchor="middle" font-size="12">)" << format_number(box.x_min) << "</text>\n";
    os << R"(<text x="940" y="558" text-anchor="middle" font-size="12">)" << format_number(box.x_max)
       << "</text>\n";
    os << R"(<text x="55" y="540" text-anchor="end" font-size="12">)" << format_number(box.y_min) << "</text>\n";
    os << R"(<text x="55" y="64" text-anchor="end" font-size="12">)" << format_number(box.y_max) << "</text>\n";
    os << "</g>\n";
    os << R"(<polyline class="curve" fill="none" stroke="steelblue" points=")";
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (i != 0) {
            os << ' ';
        }
        os << format_number(sx(points[i].x)) << ',' << format_number(sy(points[i].y));
    }
    os << R"("/>)" << '\n';
    os << "</svg>\n";
    return os.str();
}

} // namespace angelcage

#endif
