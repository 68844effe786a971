// Copyright 2026 The cfq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cfq/tables.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <set>

namespace cfq::tables {
namespace {

std::vector<std::string> texts(const std::vector<Cell> &row) {
    std::vector<std::string> out;
    for (const auto &c : row) {
        out.push_back(c.text);
    }
    return out;
}

TEST(Format, FixedAndExact) {
    EXPECT_EQ(fixed(0.88374, 3), "0.884");
    EXPECT_EQ(fixed(-0.0001, 3), "0.000");
    EXPECT_EQ(exact(0.1), "0.1");
    double v = 0.36011558988899744;
    std::string s = exact(v);
    double back = 0;
    std::from_chars(s.data(), s.data() + s.size(), back);
    EXPECT_EQ(back, v);
}

TEST(Format, NamedCoefficients) {
    const double a = std::numbers::pi / 140;
    EXPECT_EQ(describe_coefficient(std::cos(a), a), "cos θ'");
    EXPECT_EQ(describe_coefficient(-std::sin(a) / 2, a), "-sin θ'/2");
    EXPECT_EQ(describe_coefficient(0.123, a).find("θ'"), std::string::npos);
}

TEST(Build, CounterfactualityRow) {
    Table t = build(3);
    ASSERT_EQ(t.rows.size(), 1U);
    EXPECT_EQ(texts(t.rows[0]), (std::vector<std::string>{"700", "70", "0.0015", "0.884", "0.965", "0.884"}));
    EXPECT_NEAR(*t.rows[0][5].value, 0.884, 5e-4);
}

TEST(Build, HistoryRowsCoverEveryHistory) {
    for (int which : {1, 2}) {
        Table t = build(which);
        std::set<std::string> histories;
        for (const auto &row : t.rows) {
            histories.insert(row[0].text);
        }
        EXPECT_EQ(histories.size(), 4U) << which;
    }
}

TEST(Build, InformationRowsCarryThePartition) {
    Table t = build(5);
    ASSERT_EQ(t.rows.size(), 3U);
    auto col = std::find(t.columns.begin(), t.columns.end(), "partition");
    ASSERT_NE(col, t.columns.end());
    for (const auto &row : t.rows) {
        EXPECT_EQ(row[col - t.columns.begin()].text, "3way");
    }
}

TEST(Build, TallyRows) {
    Table t = build(6);
    EXPECT_EQ(t.rows.size(), 3U);
}

TEST(Build, RejectsUnknownIds) {
    EXPECT_THROW(build(0), std::invalid_argument);
    EXPECT_THROW(build(7), std::invalid_argument);
}

TEST(Render, CsvHasFullPrecisionTwins) {
    Table t = build(3);
    std::string csv = render_csv(t);
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "N,N',c0,c0_full,c1,c1_full,P(mm0|0),P(mm0|0)_full,P(mm1|1),P(mm1|1)_full");
    EXPECT_EQ(csv, render_csv(build(3)));
}

TEST(Render, TextListsEveryColumn) {
    Table t = build(3);
    std::string text = render_text(t);
    for (const auto &c : t.columns) {
        EXPECT_NE(text.find(c), std::string::npos) << c;
    }
}

}  // namespace
}  // namespace cfq::tables
