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

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "cfq/info.h"
#include "cfq/noise.h"

namespace cfq::tables {

bool Table::numeric(std::size_t column) const {
    for (const auto &row : rows) {
        if (column < row.size() && row[column].value) {
            return true;
        }
    }
    return false;
}

std::string fixed(double v, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
    std::string s = buf;
    if (s.starts_with("-") && s.find_first_not_of("-0.") == std::string::npos) {
        s.erase(0, 1);
    }
    return s;
}

std::string exact(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

Cell text_cell(std::string text) {
    return {std::move(text), std::nullopt};
}

Cell number_cell(double v, int decimals) {
    return {fixed(v, decimals), v};
}

std::string describe_coefficient(double a, double angle, const std::string &angle_name) {
    struct Factor {
        double k;
        const char *suffix;
    };
    const Factor factors[] = {{1.0, ""}, {0.5, "/2"}, {std::numbers::sqrt2 / 2.0, "/√2"}, {0.25, "/4"}};
    const struct {
        double v;
        const char *name;
    } bases[] = {{std::cos(angle), "cos "}, {std::sin(angle), "sin "}};
    for (const auto &b : bases) {
        for (const auto &f : factors) {
            for (int sign : {1, -1}) {
                if (std::abs(a - sign * f.k * b.v) <= 1e-12) {
                    return std::string(sign < 0 ? "-" : "") + b.name + angle_name + f.suffix;
                }
            }
        }
    }
    return fixed(a, 12);
}

Table history_rows(
    const std::vector<History> &histories, double angle, bool show_tally, int id, const std::string &title) {
    Table t;
    t.id = id;
    t.title = title;
    t.columns = {"h", "ket", "coefficient", "amplitude"};
    for (const auto &h : histories) {
        for (const auto &[label, a] : h.vector) {
            if (std::abs(a) == 0.0) {
                continue;
            }
            if (std::abs(a.imag()) > 1e-15) {
                throw std::logic_error("history_rows: complex amplitude in a real protocol");
            }
            t.rows.push_back({
                text_cell(h.label()),
                text_cell(label.ket(show_tally)),
                text_cell(describe_coefficient(a.real(), angle)),
                number_cell(a.real(), 6),
            });
        }
    }
    return t;
}

namespace {

ProtocolParams small_protocol(int x) {
    ProtocolParams p;
    p.n = 2;
    p.n_prime = 70;
    p.computer_output = x;
    return p;
}

}  // namespace

Table histories_table(int computer_output) {
    ProtocolParams p = small_protocol(computer_output);
    auto hs = nonzero(enumerate_histories(p, ScheduleExtent::partial(1)));
    Table t = history_rows(
        hs, p.theta_prime(), false, computer_output == 0 ? 1 : 2,
        "Histories after one subroutine cycle, N=2, output " + std::to_string(computer_output));
    t.notes = {{"theta_prime", "pi/140"}, {"theta_prime_value", exact(p.theta_prime())}};
    return t;
}

Table counterfactuality_table() {
    ProtocolParams p;
    p.n = 700;
    p.n_prime = 70;
    CounterfactualityReport r = counterfactuality_report(p);
    Table t;
    t.id = 3;
    t.title = "Counterfactuality";
    t.columns = {"N", "N'", "c0", "c1", "P(mm0|0)", "P(mm1|1)"};
    t.rows.push_back({
        text_cell("700"),
        text_cell("70"),
        number_cell(r.c0, 4),
        number_cell(r.c1, 3),
        number_cell(r.p_mm0_given_0, 3),
        number_cell(r.p_mm1_given_1, 3),
    });
    return t;
}

Table decoherence_table() {
    struct Row {
        int n;
        int n_prime;
        int decimals[6];  // c0, c1, P(m|0), P(m0|m,0), P(m|1), P(m1|m,1)
    };
    const Row rows[] = {
        {700, 70, {4, 3, 3, 3, 3, 4}},
        {40, 70, {3, 3, 3, 3, 3, 3}},
        {40, 700, {3, 4, 3, 4, 3, 3}},
    };
    Table t;
    t.id = 4;
    t.title = "Modified protocol with a decoherent computer, epsilon=0.2";
    t.columns = {"N", "N'", "c0", "c1", "P(m|0)", "P(m0|m,0)", "P(m|1)", "P(m1|m,1)"};
    for (const Row &row : rows) {
        ProtocolParams p;
        p.n = row.n;
        p.n_prime = row.n_prime;
        p.variant = Variant::Modified;
        History f0 = all_f_history(p, 0);
        History f1 = all_f_history(p, 1);
        p.epsilon = 0.2;
        NoisyResult r0 = run_noisy(p.with_output(0));
        NoisyResult r1 = run_noisy(p.with_output(1));
        const double values[6] = {
            f0.vector.norm2(), f1.vector.norm2(), r0.p_m_given_x,
            r0.p_mi_given_m_x[0], r1.p_m_given_x, r1.p_mi_given_m_x[1],
        };
        std::vector<Cell> cells = {text_cell(std::to_string(row.n)), text_cell(std::to_string(row.n_prime))};
        for (int i = 0; i < 6; ++i) {
            cells.push_back(number_cell(values[i], row.decimals[i]));
        }
        t.rows.push_back(std::move(cells));
    }
    t.notes = {{"representation", "density"}, {"decoherence_scope", to_string(DecoherenceScope::SwitchOnSector)}};
    return t;
}

Table information_table() {
    struct Row {
        int n;
        int n_prime;
        double epsilon;
        const char *epsilon_text;
        double target_zeno;
        int zeno_decimals;
        int repeat_decimals;
    };
    const double eps_half = 1.0 - std::numbers::sqrt2 / 2.0;
    const Row rows[] = {
        {10, 10, 0.2, "0.2", 0.46, 2, 4},
        {2, 2, 0.2, "0.2", 0.324, 3, 3},
        {10, 10, eps_half, "1-sqrt(2)/2", 0.297, 3, 0},
    };
    constexpr double kZenoTolerance = 0.01;
    Table t;
    t.id = 5;
    t.title = "Mutual information for two protocols";
    t.columns = {"N",          "N'",         "epsilon",   "MI(Chained Zeno)", "MI(Repeated runs)",
                 "partition", "best_partition", "best_partition_MI", "zeno_check"};
    bool all_match = true;
    for (const Row &row : rows) {
        ProtocolParams p;
        p.n = row.n;
        p.n_prime = row.n_prime;
        p.variant = Variant::Modified;
        p.epsilon = row.epsilon;
        MIResult zeno = mutual_information_zeno(p);
        MIResult repeat = mutual_information_repeat(2L * row.n * row.n_prime, row.epsilon);
        PartitionMatch best = rank_partitions(p, row.target_zeno).front();
        double miss = std::abs(zeno.mi_bits - row.target_zeno);
        bool ok = miss <= kZenoTolerance;
        all_match = all_match && ok;
        t.rows.push_back({
            text_cell(std::to_string(row.n)),
            text_cell(std::to_string(row.n_prime)),
            {row.epsilon_text, row.epsilon},
            number_cell(zeno.mi_bits, row.zeno_decimals),
            number_cell(repeat.mi_bits, row.repeat_decimals),
            text_cell(to_string(zeno.partition)),
            text_cell(to_string(best.partition)),
            number_cell(best.mi_bits, 3),
            text_cell(ok ? "match" : "discrepancy: off by " + fixed(miss, 4) + " from " + fixed(row.target_zeno, 3)),
        });
    }
    t.notes = {
        {"partition", to_string(OutcomePartition::ThreeWay)},
        {"zeno_tolerance", exact(kZenoTolerance)},
        {"zeno_status", all_match ? "match" : "discrepancy"},
    };
    return t;
}

Table tally_table() {
    ProtocolParams p = small_protocol(0);
    p.tally = TallyMode::AllRuns;
    ScheduleExtent extent = ScheduleExtent::partial(1);
    auto hs = nonzero(enumerate_histories(p, extent, to_pattern(success_record(p, extent))));
    Table t = history_rows(hs, p.theta_prime(), true, 6, "Histories with a tally register, N=2, output 0");
    t.notes = {{"tally", to_string(p.tally)}, {"theta_prime", "pi/140"}};
    return t;
}

Table build(int which) {
    switch (which) {
        case 1:
            return histories_table(0);
        case 2:
            return histories_table(1);
        case 3:
            return counterfactuality_table();
        case 4:
            return decoherence_table();
        case 5:
            return information_table();
        case 6:
            return tally_table();
        default:
            throw std::invalid_argument("unknown table " + std::to_string(which) + " (expected 1..6)");
    }
}

namespace {

std::string csv_field(const std::string &s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        out += c;
        if (c == '"') {
            out += '"';
        }
    }
    return out + "\"";
}

// Header and cell text per column, a numeric column followed by its full-precision twin.
std::vector<std::vector<std::string>> flatten(const Table &t) {
    std::vector<std::vector<std::string>> out(1);
    for (std::size_t c = 0; c < t.columns.size(); ++c) {
        out[0].push_back(t.columns[c]);
        if (t.numeric(c)) {
            out[0].push_back(t.columns[c] + "_full");
        }
    }
    for (const auto &row : t.rows) {
        std::vector<std::string> line;
        for (std::size_t c = 0; c < t.columns.size(); ++c) {
            line.push_back(row[c].text);
            if (t.numeric(c)) {
                line.push_back(row[c].value ? exact(*row[c].value) : "");
            }
        }
        out.push_back(std::move(line));
    }
    return out;
}

std::size_t display_width(const std::string &s) {
    std::size_t n = 0;
    for (unsigned char c : s) {
        n += (c & 0xC0) != 0x80;
    }
    return n;
}

}  // namespace

std::string render_csv(const Table &t) {
    std::ostringstream out;
    for (const auto &line : flatten(t)) {
        for (std::size_t i = 0; i < line.size(); ++i) {
            out << (i ? "," : "") << csv_field(line[i]);
        }
        out << "\n";
    }
    return out.str();
}

std::string render_text(const Table &t) {
    auto lines = flatten(t);
    std::vector<std::size_t> width(lines[0].size(), 0);
    for (const auto &line : lines) {
        for (std::size_t i = 0; i < line.size(); ++i) {
            width[i] = std::max(width[i], display_width(line[i]));
        }
    }
    std::ostringstream out;
    out << "Table " << t.id << ": " << t.title << "\n";
    for (const auto &line : lines) {
        for (std::size_t i = 0; i < line.size(); ++i) {
            out << (i ? "  " : "") << line[i];
            if (i + 1 < line.size()) {
                out << std::string(width[i] - display_width(line[i]), ' ');
            }
        }
        out << "\n";
    }
    for (const auto &[k, v] : t.notes) {
        out << k << ": " << v << "\n";
    }
    return out.str();
}

}  // namespace cfq::tables
