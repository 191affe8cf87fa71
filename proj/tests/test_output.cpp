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

#include <angelcage/report.hpp>
#include <angelcage/svg.hpp>

#include <gtest/gtest.h>

#include <regex>
#include <sstream>
#include <string>
#include <vector>

namespace angelcage {
namespace {

std::size_t occurrences(const std::string &text, const std::string &needle)
{
    std::size_t count = 0;
    for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) {
        ++count;
    }
    return count;
}

double attribute(const std::string &text, const std::string &name)
{
    const std::regex re(name + "=\"([^\"]+)\"");
    std::smatch m;
    if (!std::regex_search(text, m, re)) {
        ADD_FAILURE() << "missing attribute " << name;
        return 0.0;
    }
    return std::stod(m[1].str());
}

TEST(FormatNumber, ShortestRoundTrip)
{
    EXPECT_EQ(format_number(0.1), "0.1");
    EXPECT_EQ(format_number(1234567.0), "1234567");
    EXPECT_EQ(format_number(0.0), "0");
    EXPECT_EQ(format_number(std::uint64_t{18446744073709551615ULL}), "18446744073709551615");
    EXPECT_EQ(format_number(std::int64_t{-5}), "-5");
    const double x = 0.1 + 0.2;
    EXPECT_EQ(std::stod(format_number(x)), x);
}

TEST(Manifest, HeaderLines)
{
    RunManifest m{"simulate", {"simulate", "--dim", "2", "--seed", "7"}, 7, "2026-01-01T00:00:00Z"};
    std::ostringstream os;
    m.write(os);
    EXPECT_EQ(os.str(), "# angelcage 1.0.0 command=simulate seed=7 started=2026-01-01T00:00:00Z\n"
                        "# rerun: angelcage simulate --dim 2 --seed 7\n");
    EXPECT_TRUE(std::regex_match(RunManifest::utc_now(), std::regex(R"(\d{4}-\d\d-\d\dT\d\d:\d\d:\d\dZ)")));
}

TEST(Csv, Rows)
{
    std::ostringstream os;
    write_csv_row(os, {"a", "b", "c"});
    write_csv_row(os, std::vector<std::string>{"1", "2"});
    EXPECT_EQ(os.str(), "a,b,c\n1,2\n");
}

TEST(Footprint, SinglePositionHasOneMarker)
{
    const std::vector<PlanarPoint> path{{0, 0}};
    const auto svg = footprint_svg(path, 5);
    EXPECT_EQ(occurrences(svg, "class=\"point"), 1U);
    EXPECT_EQ(occurrences(svg, "class=\"point start end\""), 1U);
    EXPECT_EQ(occurrences(svg, "class=\"cage\""), 1U);
}

TEST(Footprint, CageCircleAndMarkers)
{
    std::vector<PlanarPoint> path{{0, 0}, {1, 1}, {2, 0}, {90, -3}};
    const auto svg = footprint_svg(path, 79);
    EXPECT_EQ(svg.rfind("<svg", 0), 0U);
    EXPECT_NE(svg.find("</svg>"), std::string::npos);
    EXPECT_EQ(occurrences(svg, "class=\"point"), 4U);
    EXPECT_EQ(occurrences(svg, "class=\"point start\""), 1U);
    EXPECT_EQ(occurrences(svg, "class=\"point end\""), 1U);
    const auto circle = svg.substr(svg.find("class=\"cage\""));
    EXPECT_EQ(attribute(circle, " r"), 79.0);
    // The view box covers every point.
    const std::regex box(R"re(viewBox="(\S+) (\S+) (\S+) (\S+)")re");
    std::smatch m;
    ASSERT_TRUE(std::regex_search(svg, m, box));
    const double x0 = std::stod(m[1].str());
    const double w = std::stod(m[3].str());
    EXPECT_LE(x0, -79.0);
    EXPECT_GE(x0 + w, 90.0);
}

TEST(Curve, AxisRangesCoverData)
{
    std::vector<PlanarPoint> pts;
    for (int t = 0; t <= 100; ++t) {
        pts.push_back({static_cast<double>(t), std::sqrt(static_cast<double>(t))});
    }
    const auto svg = curve_svg(pts, "step", "mean distance");
    EXPECT_EQ(attribute(svg, "data-x-min"), 0.0);
    EXPECT_EQ(attribute(svg, "data-x-max"), 100.0);
    EXPECT_EQ(attribute(svg, "data-y-min"), 0.0);
    EXPECT_EQ(attribute(svg, "data-y-max"), 10.0);
    EXPECT_LT(attribute(svg, "data-x-min"), attribute(svg, "data-x-max"));
    EXPECT_EQ(occurrences(svg, "<polyline"), 1U);
    const auto points = svg.substr(svg.find("points=\""));
    EXPECT_EQ(occurrences(points.substr(0, points.find("\"/>")), ","), 101U);
}

TEST(Curve, DegenerateRangeWidened)
{
    const std::vector<PlanarPoint> flat{{3, 2}, {3, 2}};
    const auto box = curve_box(flat);
    EXPECT_LT(box.x_min, box.x_max);
    EXPECT_LT(box.y_min, box.y_max);
}

} // namespace
} // namespace angelcage
