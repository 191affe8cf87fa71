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

#include <angelcage/analytic.hpp>
#include <angelcage/reproduce.hpp>

#include <gtest/gtest.h>

#include <algorithm>
#include <stdexcept>

namespace angelcage {
namespace {

TEST(TableSpec, Table1FullMode)
{
    const auto spec = table_spec("table1", 100'000);
    EXPECT_FALSE(spec.reduced);
    ASSERT_EQ(spec.cells.size(), 9U);
    for (const auto &cell : spec.cells) {
        EXPECT_EQ(cell.dimension, 2);
        EXPECT_EQ(cell.tolerance, 0.02);
        EXPECT_EQ(cell.rule, CellRule::within);
        // Every published radius follows from the threshold rule.
        EXPECT_EQ(threshold_k_2d(cell.power, cell.eps), cell.inner_radius) << cell.label;
    }
    EXPECT_EQ(spec.cells.front().expected, 0.52833);
    EXPECT_EQ(spec.cells.back().expected, 0.99032);
}

TEST(TableSpec, Table1ReducedMode)
{
    const auto spec = table_spec("table1", 1000);
    EXPECT_TRUE(spec.reduced);
    EXPECT_NE(spec.tolerance_note.find("reduced"), std::string::npos);
    for (const auto &cell : spec.cells) {
        EXPECT_EQ(cell.tolerance, 0.05);
    }
}

TEST(TableSpec, Table2Tolerances)
{
    const auto full = table_spec("table2", 100'000);
    ASSERT_EQ(full.cells.size(), 6U);
    for (const auto &cell : full.cells) {
        EXPECT_EQ(cell.power, 1);
        if (cell.dimension == 3) {
            EXPECT_EQ(cell.rule, CellRule::within);
            EXPECT_EQ(cell.tolerance, 0.0015);
        } else {
            EXPECT_EQ(cell.dimension, 4);
            EXPECT_EQ(cell.rule, CellRule::at_most);
            EXPECT_EQ(cell.tolerance, 0.0001);
        }
    }
    const auto reduced = table_spec("table2", 1000);
    for (const auto &cell : reduced.cells) {
        const double base = cell.dimension == 3 ? 0.0015 : 0.0001;
        const double p = cell.dimension == 3 ? cell.expected : 0.0001;
        EXPECT_GE(cell.tolerance, base);
        EXPECT_DOUBLE_EQ(cell.tolerance, std::max(base, 5 * binomial_standard_error(p, 1000)));
    }
}

TEST(TableSpec, UnknownTable)
{
    EXPECT_THROW(table_spec("table3", 10), std::invalid_argument);
    EXPECT_THROW(table_spec("table1", 0), std::invalid_argument);
}

TEST(CellPasses, Rules)
{
    TableCell within{"w", 2, 1, 13, 0.5, 0.5, 0.02, CellRule::within};
    EXPECT_TRUE(cell_passes(within, 0.51));
    EXPECT_TRUE(cell_passes(within, 0.485));
    EXPECT_FALSE(cell_passes(within, 0.47));
    EXPECT_FALSE(cell_passes(within, 0.53));
    TableCell at_most{"m", 4, 1, 10, 0.0, 0.0, 0.0001, CellRule::at_most};
    EXPECT_TRUE(cell_passes(at_most, 0.0));
    EXPECT_TRUE(cell_passes(at_most, 0.0001));
    EXPECT_FALSE(cell_passes(at_most, 0.0002));
}

TEST(RunTable, SmallTable2RunIsDeterministic)
{
    auto spec = table_spec("table2", 200);
    spec.cells.resize(2);
    const auto a = run_table(spec, 7, 1);
    const auto b = run_table(spec, 7, 3);
    ASSERT_EQ(a.size(), 2U);
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i].measured, b[i].measured);
        EXPECT_EQ(a[i].turns, shell_turns(3, 1, a[i].cell.inner_radius));
        EXPECT_LE(a[i].never_left, a[i].measured);
        EXPECT_EQ(a[i].pass, cell_passes(a[i].cell, a[i].measured));
    }
}

} // namespace
} // namespace angelcage
