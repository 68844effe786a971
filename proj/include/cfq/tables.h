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


#ifndef CFQ_TABLES_H
#define CFQ_TABLES_H

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cfq/histories.h"
#include "cfq/zeno.h"

namespace cfq::tables {

/// Rounded display text, plus the full-precision value for
/// numeric cells.
struct Cell {
    std::string text;
    std::optional<double> value;
};

struct Table {
    int id = 0;
    std::string title;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    std::vector<std::pair<std::string, std::string>> notes;

    /// True when some row carries a full-precision value in `column`.
    bool numeric(std::size_t column) const;
};

/// Fixed-point text with `decimals` places.
std::string fixed(double v, int decimals);
/// Shortest text that parses back to the same double.
std::string exact(double v);

Cell text_cell(std::string text);
Cell number_cell(double v, int decimals);

/// Names the coefficient as a multiple of cos or sin of `angle` when it is
/// one (k in +-{1, 1/2, 1/sqrt 2, 1/4}), else prints it numerically.
std::string describe_coefficient(double a, double angle, const std::string &angle_name = "θ'");

/// Rows of (history, ket, coefficient) for every nonzero history.
Table history_rows(
    const std::vector<History> &histories, double angle, bool show_tally, int id, const std::string &title);

Table histories_table(int computer_output);  ///< ids 1 (output 0) and 2 (output 1)
Table counterfactuality_table();             ///< id 3
Table decoherence_table();                   ///< id 4
Table information_table();                   ///< id 5
Table tally_table();                         ///< id 6

/// Throws std::invalid_argument for ids outside 1..6.
Table build(int which);

std::string render_csv(const Table &t);
std::string render_text(const Table &t);

}  // namespace cfq::tables

#endif
