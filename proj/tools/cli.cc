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


#include "cli.h"

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <random>
#include <sstream>

#include "cfq/histories.h"
#include "cfq/info.h"
#include "cfq/interfero.h"
#include "cfq/twoqubit.h"
#include "cfq/noise.h"
#include "cfq/tables.h"
#include "cfq/zeno.h"

namespace cfq::cli {
namespace {

using Json = nlohmann::ordered_json;

constexpr const char *kVersion = "1.0.0";

struct Options {
    // Shared.
    int n = 10;
    int n_prime = 10;
    int output_bit = 0;
    double epsilon = 0.0;
    std::string variant = "standard";
    std::string tally = "none";
    std::string format = "json";
    std::string out;
    std::uint64_t cap = kDefaultHistoryCap;

    // tables
    int which = 0;

    // simulate
    std::string representation = "density";
    std::string scope = "switch-on-sector";
    bool sample = false;
    std::uint64_t seed = 1;
    long shots = 1000;

    // histories
    int steps = -1;
    bool no_final = false;
    int final_bit = -1;
    std::string record;
    bool include_zero = false;
    bool check = false;

    // weak
    std::string network = "vaidman";
    std::vector<std::string> paths;
    std::string projector = "output-on";
    std::string placement = "after-first-hadamard";
    double delta = 0.0;
    bool has_delta = false;

    // mi
    std::string method = "repeat";
    std::string partition = "3way";
    long runs = 0;
    bool has_runs = false;
};

/// A finished command: the JSON report plus, for `tables`, the table itself.
struct Report {
    Json json;
    std::optional<tables::Table> table;
};

ProtocolParams protocol(const Options &o) {
    ProtocolParams p;
    p.n = o.n;
    p.n_prime = o.n_prime;
    p.computer_output = o.output_bit;
    p.epsilon = o.epsilon;
    p.variant = parse_variant(o.variant);
    p.tally = parse_tally(o.tally);
    p.validate();
    return p;
}

Json protocol_inputs(const ProtocolParams &p) {
    return Json{
        {"n", p.n},
        {"nprime", p.n_prime},
        {"output_bit", p.computer_output},
        {"epsilon", p.epsilon},
        {"variant", to_string(p.variant)},
        {"tally", to_string(p.tally)},
    };
}

Json complex_json(Amplitude a) {
    return Json{{"re", a.real()}, {"im", a.imag()}};
}

Json meta(const std::string &command, const Options &o) {
    return Json{{"program", "cfq"}, {"version", kVersion}, {"command", command}, {"format", o.format}};
}

Report cmd_tables(const Options &o) {
    tables::Table t = tables::build(o.which);
    Json rows = Json::array();
    for (const auto &row : t.rows) {
        Json r = Json::object();
        for (std::size_t c = 0; c < t.columns.size(); ++c) {
            r[t.columns[c]] = row[c].text;
            if (row[c].value) {
                r[t.columns[c] + "_full"] = *row[c].value;
            }
        }
        rows.push_back(std::move(r));
    }
    Json notes = Json::object();
    for (const auto &[k, v] : t.notes) {
        notes[k] = v;
    }
    Json m = meta("tables", o);
    m["display"] = "values rounded for display; *_full columns carry full precision";
    return {Json{
                {"inputs", {{"which", o.which}}},
                {"results", {{"table", t.id}, {"title", t.title}, {"columns", t.columns}, {"rows", rows}, {"notes", notes}}},
                {"meta", m},
            },
            t};
}

Json sample_outcomes(const Options &o, double p0, double p1) {
    if (o.shots <= 0) {
        throw std::invalid_argument("--shots must be positive");
    }
    std::mt19937_64 rng(o.seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    long counts[3] = {0, 0, 0};
    for (long i = 0; i < o.shots; ++i) {
        double r = u(rng);
        ++counts[r < p0 ? 0 : (r < p0 + p1 ? 1 : 2)];
    }
    return Json{{"seed", o.seed}, {"shots", o.shots}, {"success_0", counts[0]}, {"success_1", counts[1]}, {"fail", counts[2]}};
}

Report cmd_simulate(const Options &o) {
    ProtocolParams p = protocol(o);
    Json inputs = protocol_inputs(p);
    Json results = Json::object();
    Json m = meta("simulate", o);
    double p0 = 0;
    double p1 = 0;
    if (p.epsilon == 0.0) {
        TallyResult tr = p.tally == TallyMode::None ? TallyResult{run_ideal(p), {}, {}} : run_with_tally(p);
        const ProtocolResult &r = tr.result;
        p0 = r.p_success_0;
        p1 = r.p_success_1;
        results["p_success_0"] = r.p_success_0;
        results["p_success_1"] = r.p_success_1;
        results["p_success"] = r.p_success();
        results["p_fail"] = r.p_fail;
        results["c0"] = all_f_history(p, 0).vector.norm2();
        results["c1"] = all_f_history(p, 1).vector.norm2();
        if (p.tally != TallyMode::None) {
            Json rows = Json::array();
            for (const auto &[t, prob] : tr.tally_given_success) {
                rows.push_back({{"tally", t}, {"probability", prob}});
            }
            results["tally_given_success"] = rows;
        }
        m["representation"] = "pure-state";
    } else {
        Representation rep = parse_representation(o.representation);
        DecoherenceScope scope = parse_scope(o.scope);
        inputs["representation"] = o.representation;
        inputs["scope"] = o.scope;
        NoisyResult r = run_noisy(p, rep, scope);
        p0 = r.p_success_final[0];
        p1 = r.p_success_final[1];
        results["p_m_given_x"] = r.p_m_given_x;
        results["p_m0_given_m_x"] = r.p_mi_given_m_x[0];
        results["p_m1_given_m_x"] = r.p_mi_given_m_x[1];
        results["p_success_0"] = r.p_success_final[0];
        results["p_success_1"] = r.p_success_final[1];
        results["p_fail"] = 1.0 - r.p_m_given_x;
        if (rep == Representation::Ensemble) {
            results["peak_branches"] = r.peak_branches;
        }
        m["representation"] = to_string(rep);
    }
    if (o.sample) {
        results["sample"] = sample_outcomes(o, p0, p1);
    }
    m["tolerances"] = {{"probability_sum", 1e-10}};
    return {Json{{"inputs", inputs}, {"results", results}, {"meta", m}}, std::nullopt};
}

OutcomePattern parse_record(const std::string &text) {
    OutcomePattern out;
    std::string token;
    std::istringstream in(text);
    while (std::getline(in, token, ',')) {
        token.erase(0, token.find_first_not_of(' '));
        token.erase(token.find_last_not_of(' ') + 1);
        if (token == "*") {
            out.emplace_back();
        } else if (!token.empty() && (token[0] == '0' || token[0] == '1') &&
                   (token.size() == 1 || (token.size() == 3 && token[1] == '_'))) {
            out.emplace_back(token[0] - '0');
        } else {
            throw std::invalid_argument("bad record token '" + token + "' (expected 0_k, 1_k or *)");
        }
    }
    return out;
}

Report cmd_histories(const Options &o) {
    ProtocolParams p = protocol(o);
    if (o.steps > p.n_prime) {
        throw std::invalid_argument("--steps cannot exceed --nprime");
    }
    std::size_t steps = o.steps < 0 ? static_cast<std::size_t>(p.n_prime) : static_cast<std::size_t>(o.steps);
    ScheduleExtent extent{steps, steps == static_cast<std::size_t>(p.n_prime) && !o.no_final};
    OutcomePattern filter = parse_record(o.record);

    Json inputs = protocol_inputs(p);
    inputs["steps"] = steps;
    inputs["final"] = extent.include_final;
    inputs["record"] = o.record;
    inputs["cap"] = o.cap;

    std::vector<History> all = enumerate_histories(p, extent, filter, o.cap);
    std::vector<History> shown = o.include_zero ? all : nonzero(all);
    bool show_tally = p.tally != TallyMode::None;
    Json rows = Json::array();
    for (const auto &h : shown) {
        if (h.vector.empty()) {
            rows.push_back({{"h", h.label()}, {"ket", ""}, {"re", 0.0}, {"im", 0.0}});
        }
        for (const auto &[label, a] : h.vector) {
            rows.push_back({{"h", h.label()}, {"ket", label.ket(show_tally)}, {"re", a.real()}, {"im", a.imag()}});
        }
    }
    Json results = Json::object();
    results["histories"] = all.size();
    results["nonzero"] = nonzero(all).size();
    results["rows"] = rows;
    if (o.check) {
        int final_bit = o.final_bit < 0 ? p.computer_output : o.final_bit;
        OutcomeRecord m = success_record(p, extent, final_bit);
        CounterfactualVerdict v = is_counterfactual_outcome(p, extent, m, o.cap);
        Json witnesses = Json::array();
        for (const auto &h : v.witnesses) {
            witnesses.push_back(h.label());
        }
        results["check"] = {
            {"record", to_string(m)},
            {"counterfactual", v.counterfactual},
            {"single_all_f_history", v.single_all_f_history},
            {"single_computer_output", v.single_computer_output},
            {"other_output_probability", v.other_output_probability},
            {"witnesses", witnesses},
        };
    }
    Json mt = meta("histories", o);
    mt["tolerances"] = {{"nonzero_norm2", 1e-24}, {"condition_2", 1e-12}};
    return {Json{{"inputs", inputs}, {"results", results}, {"meta", mt}}, std::nullopt};
}

Report cmd_weak(const Options &o) {
    Json inputs = {{"network", o.network}};
    Json results = Json::object();
    if (o.network == "vaidman") {
        interfero::PathNetwork net = interfero::build_vaidman(o.output_bit);
        std::vector<std::string> paths = o.paths.empty() ? std::vector<std::string>{"A", "B", "C", "E", "F"} : o.paths;
        inputs["output_bit"] = o.output_bit;
        inputs["paths"] = paths;
        Json rows = Json::array();
        for (const auto &path : paths) {
            interfero::WeakValueResult w = interfero::weak_value(net, path);
            Json row = {{"path", path}, {"re", w.value.real()}, {"im", w.value.imag()}, {"overlap_re", w.overlap.real()},
                        {"overlap_im", w.overlap.imag()}};
            if (o.has_delta) {
                interfero::PerturbationResponse r = interfero::perturb_path(net, path, o.delta);
                row["a_delta_re"] = r.a_delta.real();
                row["a_delta_im"] = r.a_delta.imag();
                row["closed_form_re"] = r.closed_form.real();
                row["closed_form_im"] = r.closed_form.imag();
                row["derivative_re"] = r.derivative.real();
                row["derivative_im"] = r.derivative.imag();
            }
            rows.push_back(std::move(row));
        }
        if (o.has_delta) {
            inputs["delta"] = o.delta;
        }
        Amplitude ad = net.detector_amplitude();
        results["detector_amplitude"] = complex_json(ad);
        results["detection_probability"] = std::norm(ad);
        results["rows"] = rows;
    } else if (o.network == "twoqubit") {
        twoqubit::Projector proj = twoqubit::parse_projector(o.projector);
        twoqubit::Placement place = twoqubit::parse_placement(o.placement);
        inputs["projector"] = o.projector;
        inputs["placement"] = o.placement;
        twoqubit::WeakValueResult w = twoqubit::weak_value_at_computer(proj, place);
        results["value"] = complex_json(w.value);
        results["overlap"] = complex_json(w.overlap);
    } else {
        throw std::invalid_argument("unknown network '" + o.network + "' (expected vaidman|twoqubit)");
    }
    Json m = meta("weak", o);
    m["tolerances"] = {{"overlap_zero", 1e-14}};
    return {Json{{"inputs", inputs}, {"results", results}, {"meta", m}}, std::nullopt};
}

Report cmd_mi(const Options &o) {
    Json inputs = {{"method", o.method}};
    Json results = Json::object();
    if (o.method == "repeat") {
        long runs = o.has_runs ? o.runs : 2L * o.n * o.n_prime;
        MIResult r = mutual_information_repeat(runs, o.epsilon);
        inputs["runs"] = runs;
        inputs["epsilon"] = o.epsilon;
        results["mi_bits"] = r.mi_bits;
        results["runs"] = r.runs;
        results["flip_probability"] = o.epsilon * (2.0 - o.epsilon);
    } else if (o.method == "zeno") {
        ProtocolParams p = protocol(o);
        OutcomePartition part = parse_partition(o.partition);
        inputs = protocol_inputs(p);
        inputs["method"] = o.method;
        inputs["partition"] = o.partition;
        MIResult r = mutual_information_zeno(p, part);
        results["mi_bits"] = r.mi_bits;
        results["partition"] = to_string(r.partition);
        Json rows = Json::array();
        for (OutcomePartition q :
             {OutcomePartition::ThreeWay, OutcomePartition::SuccessConditional, OutcomePartition::FullRecord}) {
            rows.push_back({{"partition", to_string(q)}, {"mi_bits", mutual_information_zeno(p, q).mi_bits}});
        }
        results["rows"] = rows;
    } else {
        throw std::invalid_argument("unknown method '" + o.method + "' (expected repeat|zeno)");
    }
    Json m = meta("mi", o);
    m["prior"] = "uniform";
    return {Json{{"inputs", inputs}, {"results", results}, {"meta", m}}, std::nullopt};
}

std::string scalar_text(const Json &v) {
    if (v.is_number_float()) {
        return tables::exact(v.get<double>());
    }
    if (v.is_string()) {
        return v.get<std::string>();
    }
    return v.dump();
}

void flatten(const Json &v, const std::string &prefix, std::vector<std::pair<std::string, std::string>> &out) {
    if (v.is_object()) {
        for (const auto &[k, child] : v.items()) {
            flatten(child, prefix.empty() ? k : prefix + "." + k, out);
        }
    } else if (v.is_array() && !v.empty() && v.front().is_object()) {
        for (std::size_t i = 0; i < v.size(); ++i) {
            flatten(v[i], prefix + "." + std::to_string(i), out);
        }
    } else if (v.is_array()) {
        std::string joined;
        for (std::size_t i = 0; i < v.size(); ++i) {
            joined += (i ? " " : "") + scalar_text(v[i]);
        }
        out.emplace_back(prefix, joined);
    } else {
        out.emplace_back(prefix, scalar_text(v));
    }
}

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

std::string render(const Report &r, const std::string &format) {
    if (format == "json") {
        return r.json.dump(2) + "\n";
    }
    if (r.table) {
        return format == "csv" ? tables::render_csv(*r.table) : tables::render_text(*r.table);
    }
    const Json &results = r.json["results"];
    std::ostringstream out;
    if (format == "csv") {
        // A result carrying rows is emitted as that table; scalars go in a key,value table.
        if (results.contains("rows") && !results["rows"].empty()) {
            const Json &rows = results["rows"];
            std::vector<std::pair<std::string, std::string>> first;
            flatten(rows.front(), "", first);
            for (std::size_t i = 0; i < first.size(); ++i) {
                out << (i ? "," : "") << csv_field(first[i].first);
            }
            out << "\n";
            for (const auto &row : rows) {
                std::vector<std::pair<std::string, std::string>> cells;
                flatten(row, "", cells);
                for (std::size_t i = 0; i < cells.size(); ++i) {
                    out << (i ? "," : "") << csv_field(cells[i].second);
                }
                out << "\n";
            }
            return out.str();
        }
        std::vector<std::pair<std::string, std::string>> kv;
        flatten(results, "", kv);
        out << "key,value\n";
        for (const auto &[k, v] : kv) {
            out << csv_field(k) << "," << csv_field(v) << "\n";
        }
        return out.str();
    }
    std::vector<std::pair<std::string, std::string>> kv;
    flatten(r.json["inputs"], "inputs", kv);
    flatten(results, "results", kv);
    for (const auto &[k, v] : kv) {
        out << k << ": " << v << "\n";
    }
    return out.str();
}

void emit(const std::string &text, const Options &o, std::ostream &out) {
    if (o.out.empty()) {
        out << text;
        return;
    }
    std::filesystem::path dest = o.out;
    if (const char *dir = std::getenv(kOutputDirEnv); dir != nullptr && *dir != '\0') {
        dest = std::filesystem::path(dir) / dest.filename();
    }
    std::ofstream file(dest, std::ios::binary);
    if (!file) {
        throw std::invalid_argument("cannot open output file " + dest.string());
    }
    file << text;
}

void add_protocol_options(CLI::App &app, Options &o) {
    app.add_option("--n", o.n, "Subroutine steps N")->check(CLI::PositiveNumber);
    app.add_option("--nprime", o.n_prime, "Routine steps N'")->check(CLI::PositiveNumber);
    app.add_option("--output-bit,--output", o.output_bit, "Computer output x")->check(CLI::Range(0, 1));
    app.add_option("--epsilon", o.epsilon, "Decoherence strength")->check(CLI::Range(0.0, 1.0));
    app.add_option("--variant", o.variant, "standard|modified")->check(CLI::IsMember({"standard", "modified"}));
    app.add_option("--tally", o.tally, "none|all|output1|staged")
        ->check(CLI::IsMember({"none", "all", "output1", "staged"}));
    app.add_option("--format", o.format, "csv|json|text")->check(CLI::IsMember({"csv", "json", "text"}));
    app.add_option("--out", o.out, "Write the report to PATH");
    app.add_option("--cap", o.cap, "Maximum 2^insertions for history enumeration")->check(CLI::PositiveNumber);
}

}  // namespace

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    Options o;
    CLI::App app{"Counterfactual computation protocols: tables, simulation, histories, weak values"};
    app.set_version_flag("--version", kVersion);
    app.set_config("--config", "", "key=value configuration file; flags take precedence");
    app.require_subcommand(1);
    add_protocol_options(app, o);

    CLI::App *tables_cmd = app.add_subcommand("tables", "Reproduce a results table");
    tables_cmd->add_option("--which", o.which, "Table id 1..6")->required()->check(CLI::Range(1, 6));

    CLI::App *simulate = app.add_subcommand("simulate", "Run the chained protocol");
    simulate->add_option("--representation", o.representation, "density|ensemble")
        ->check(CLI::IsMember({"density", "ensemble"}));
    simulate->add_option("--scope", o.scope, "Decoherence scope: switch-on-sector|output-component")
        ->check(CLI::IsMember({"switch-on-sector", "output-component"}));
    simulate->add_flag("--sample", o.sample, "Also draw seeded samples of the outcome");
    simulate->add_option("--seed", o.seed, "Sampling seed");
    simulate->add_option("--shots", o.shots, "Number of samples");

    CLI::App *histories = app.add_subcommand("histories", "Enumerate histories and their vectors");
    histories->add_option("--steps", o.steps, "Routine steps to include (default N')")->check(CLI::NonNegativeNumber);
    histories->add_flag("--no-final", o.no_final, "Omit the final switch measurement");
    histories->add_option("--record", o.record, "Real-outcome filter, e.g. 0_3,0_3,*");
    histories->add_flag("--all", o.include_zero, "Also list zero-vector histories");
    histories->add_flag("--check", o.check, "Test counterfactuality of the success record");
    histories->add_option("--final-bit", o.final_bit, "Final outcome of the checked record (default x)")
        ->check(CLI::Range(0, 1));

    CLI::App *weak = app.add_subcommand("weak", "Weak values");
    weak->add_option("--network", o.network, "vaidman|twoqubit")->check(CLI::IsMember({"vaidman", "twoqubit"}));
    weak->add_option("--path", o.paths, "Interferometer path(s)");
    weak->add_option("--projector", o.projector, "identity|switch-off|switch-on|output-off|output-on");
    weak->add_option("--placement", o.placement, "before-computer|after-first-hadamard|after-phase-flip|after-computer");
    CLI::Option *delta = weak->add_option("--delta", o.delta, "Phase slab on each path (|delta| <= 0.2)");

    CLI::App *mi = app.add_subcommand("mi", "Mutual information");
    mi->add_option("--method", o.method, "repeat|zeno")->check(CLI::IsMember({"repeat", "zeno"}));
    mi->add_option("--partition", o.partition, "3way|2way|full")->check(CLI::IsMember({"3way", "2way", "full"}));
    CLI::Option *runs = mi->add_option("--runs", o.runs, "Computer runs (default 2 N N')");

    for (CLI::App *sub : {tables_cmd, simulate, histories, weak, mi}) {
        sub->fallthrough();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        if (e.get_exit_code() == 0) {
            app.exit(e, out, err);
            return kExitOk;
        }
        err << "error: " << e.what() << "\n";
        return kExitValidation;
    }
    o.has_delta = delta->count() > 0;
    o.has_runs = runs->count() > 0;

    try {
        Report r;
        if (tables_cmd->parsed()) {
            r = cmd_tables(o);
        } else if (simulate->parsed()) {
            r = cmd_simulate(o);
        } else if (histories->parsed()) {
            r = cmd_histories(o);
        } else if (weak->parsed()) {
            r = cmd_weak(o);
        } else {
            r = cmd_mi(o);
        }
        emit(render(r, o.format), o, out);
    } catch (const CapExceeded &e) {
        err << "error: " << e.what() << "\n";
        return kExitCapExceeded;
    } catch (const std::invalid_argument &e) {
        err << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::domain_error &e) {
        err << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception &e) {
        err << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitOk;
}

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    std::vector<const char *> argv;
    argv.push_back("cfq");
    for (const auto &a : args) {
        argv.push_back(a.c_str());
    }
    return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace cfq::cli
