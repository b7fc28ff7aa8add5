// Copyright 2026 The qmsergo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qms/cli/commands.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>

#include "qms/cli/analyses.hpp"

namespace qms::cli {

namespace {

constexpr const char* kVersion = "0.1.0";

const char* kind_of(const Error& e) {
    switch (e.exit_code()) {
        case 2: return "validation";
        case 3: return "certification";
        case 4: return "numerical";
        default: return "error";
    }
}

json error_json(const Error& e) {
    json out = {{"kind", kind_of(e)}, {"message", e.what()}};
    if (const auto* v = dynamic_cast<const ValidationError*>(&e); v && !v->field().empty()) out["field"] = v->field();
    return out;
}

void report_validation(const ValidationError& e) {
    std::cerr << "qmsergo: invalid configuration";
    if (!e.field().empty()) std::cerr << " at '" << e.field() << "'";
    std::cerr << ": " << e.what() << "\n";
}

bool write_file(const std::string& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        std::cerr << "qmsergo: cannot write '" << path << "'\n";
        return false;
    }
    out << body;
    return static_cast<bool>(out);
}

struct AnalyzeOptions {
    std::string config;
    std::string out;
    std::optional<std::uint64_t> seed;
    std::vector<std::string> analyses;
};

int cmd_analyze(const AnalyzeOptions& opt) {
    AnalysisConfig config;
    try {
        config = load_config(opt.config);
        if (opt.seed) config.seed = *opt.seed;
        if (!opt.analyses.empty()) {
            json doc = config.echo;
            doc["analyses"] = opt.analyses;
            doc["seed"] = config.seed;
            config = parse_config(doc);
        }
        if (config.analyses.empty()) config.analyses = {"spectrum", "r-plus"};
        config.echo["analyses"] = config.analyses;
        config.echo["seed"] = config.seed;
    } catch (const ValidationError& e) {
        report_validation(e);
        return 2;
    }

    json report = json::object();
    report["schema_version"] = 1;
    report["tool"] = {{"name", "qmsergo"}, {"version", kVersion}};
    report["timestamp"] = utc_timestamp();
    report["seed"] = config.seed;
    report["config"] = config.echo;

    int exit_code = 0;
    json errors = json::array();
    json results = json::object();
    json warnings = json::array();
    try {
        ModelContext ctx(config);
        report["model"] = {{"name", config.model_name}, {"info", ctx.info()}};
        for (const auto& name : config.analyses) {
            try {
                results[name] = run_analysis(name, ctx);
            } catch (const Error& e) {
                results[name] = {{"error", error_json(e)}};
                json entry = error_json(e);
                entry["analysis"] = name;
                errors.push_back(entry);
                if (exit_code == 0) exit_code = e.exit_code();
            }
        }
        warnings = ctx.warnings();
    } catch (const Error& e) {
        report["model"] = {{"name", config.model_name}, {"error", error_json(e)}};
        errors.push_back(error_json(e));
        exit_code = e.exit_code();
    }
    report["results"] = results;
    report["warnings"] = warnings;
    report["status"] = {{"exit_code", exit_code}, {"errors", errors}};
    if (!write_file(opt.out, write_json(report))) return 1;
    std::cout << "qmsergo: wrote " << opt.out << " (" << config.analyses.size() << " analyses, exit " << exit_code
              << ")\n";
    return exit_code;
}

struct EvolveOptions {
    std::string config;
    std::string out;
    std::optional<double> t_max;
    std::optional<int> points;
    std::optional<std::string> state;
    std::optional<std::uint64_t> seed;
};

int cmd_evolve(const EvolveOptions& opt) {
    AnalysisConfig config;
    try {
        config = load_config(opt.config);
        if (opt.seed) config.seed = *opt.seed;
        if (opt.t_max) config.time_grid.t_max = *opt.t_max;
        if (opt.points) config.time_grid.points = *opt.points;
        if (opt.state) config.initial_state = *opt.state;
        if (!(config.time_grid.t_max >= 0.0) || !std::isfinite(config.time_grid.t_max))
            throw ValidationError("t-max must be finite and non-negative", "time_grid.t_max");
        if (config.time_grid.points < 1 || config.time_grid.points > 100000)
            throw ValidationError("points must lie in [1, 100000]", "time_grid.points");
        initial_state(config.initial_state, std::visit([](const auto& p) { return p.dim; }, config.model), config.seed);
    } catch (const ValidationError& e) {
        report_validation(e);
        return 2;
    }
    try {
        ModelContext ctx(config);
        const EvolveTable table = evolve_table(ctx, config.time_grid.times(), config.initial_state);
        if (!write_file(opt.out, to_csv(table))) return 1;
        std::cout << "qmsergo: wrote " << opt.out << " (" << table.rows.size() << " rows)\n";
        return 0;
    } catch (const Error& e) {
        std::cerr << "qmsergo: " << kind_of(e) << " error: " << e.what() << "\n";
        return e.exit_code();
    }
}

int cmd_validate(const std::string& path) {
    try {
        const AnalysisConfig config = load_config(path);
        build_model(config);
        std::cout << "qmsergo: " << path << " is valid (" << config.model_name << ")\n";
        return 0;
    } catch (const ValidationError& e) {
        report_validation(e);
        return 2;
    } catch (const Error& e) {
        std::cerr << "qmsergo: " << kind_of(e) << " error: " << e.what() << "\n";
        return e.exit_code();
    }
}

}  // namespace

int run(int argc, char** argv) {
    CLI::App app{"Large-time analysis of quantum Markov semigroups on truncated Hilbert spaces", "qmsergo"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    AnalyzeOptions analyze;
    auto* a = app.add_subcommand("analyze", "Run analyses and write a JSON report");
    a->add_option("--config", analyze.config, "Configuration file (JSON)")->required();
    a->add_option("--out", analyze.out, "Report path")->required();
    a->add_option("--seed", analyze.seed, "Random seed (overrides the config)");
    a->add_option("--analysis", analyze.analyses, "Analysis to run; repeatable (overrides the config)");

    EvolveOptions evolve;
    auto* e = app.add_subcommand("evolve", "Write a CSV time series of diagnostics");
    e->add_option("--config", evolve.config, "Configuration file (JSON)")->required();
    e->add_option("--out", evolve.out, "CSV path")->required();
    e->add_option("--t-max", evolve.t_max, "Final time");
    e->add_option("--points", evolve.points, "Number of time points");
    e->add_option("--state", evolve.state, "Initial operator: mixed, random, fock:n or unit:j,k");
    e->add_option("--seed", evolve.seed, "Random seed (overrides the config)");

    std::string validate_path;
    auto* v = app.add_subcommand("validate", "Check a configuration without computing");
    v->add_option("--config", validate_path, "Configuration file (JSON)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& s) {
        return app.exit(s);
    } catch (const CLI::ParseError& err) {
        app.exit(err);
        return 2;
    }

    try {
        if (*a) return cmd_analyze(analyze);
        if (*e) return cmd_evolve(evolve);
        return cmd_validate(validate_path);
    } catch (const Error& err) {
        std::cerr << "qmsergo: " << kind_of(err) << " error: " << err.what() << "\n";
        return err.exit_code();
    } catch (const std::exception& err) {
        std::cerr << "qmsergo: internal error: " << err.what() << "\n";
        return 1;
    }
}

}  // namespace qms::cli
