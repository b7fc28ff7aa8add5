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

#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <set>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "qms/cli/commands.hpp"
#include "qms/cli/config.hpp"

using qms::cli::json;
namespace fs = std::filesystem;

namespace {

const fs::path kData = QMS_TEST_DATA_DIR;

fs::path scratch_dir() {
    const fs::path dir = fs::temp_directory_path() / "qmsergo_cli_tests";
    fs::create_directories(dir);
    return dir;
}

int run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "qmsergo");
    std::vector<char*> argv;
    for (auto& a : args) argv.push_back(a.data());
    return qms::cli::run(static_cast<int>(argv.size()), argv.data());
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path write_config(const std::string& name, const json& doc) {
    const fs::path p = scratch_dir() / name;
    std::ofstream(p) << doc.dump(2);
    return p;
}

json two_photon(double lambda, int dim) {
    return {{"model", {{"two-photon", {{"lambda", lambda}, {"mu", 1.0}, {"omega", 1.0}, {"dim", dim}}}}}};
}

std::vector<std::vector<double>> read_csv(const fs::path& p, std::vector<std::string>& header) {
    std::ifstream in(p);
    std::string line;
    std::getline(in, line);
    header.clear();
    std::stringstream hs(line);
    for (std::string cell; std::getline(hs, cell, ',');) header.push_back(cell);
    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        std::vector<double> row;
        std::stringstream ls(line);
        for (std::string cell; std::getline(ls, cell, ',');) row.push_back(std::stod(cell));
        rows.push_back(row);
    }
    return rows;
}

// Structural equality with a numeric tolerance; `timestamp` is ignored.
void compare_json(const json& expected, const json& actual, const std::string& path) {
    if (expected.is_number() && actual.is_number()) {
        const double e = expected.get<double>(), a = actual.get<double>();
        const bool close = std::abs(e - a) <= 1e-9 + 1e-6 * std::abs(e);
        if (!close) FAIL_CHECK(path << ": expected " << e << ", got " << a);
        return;
    }
    if (expected.type() != actual.type()) {
        FAIL_CHECK(path << ": type differs (" << expected.type_name() << " vs " << actual.type_name() << ")");
        return;
    }
    if (expected.is_object()) {
        std::vector<std::string> ek, ak;
        for (const auto& [k, v] : expected.items()) ek.push_back(k);
        for (const auto& [k, v] : actual.items()) ak.push_back(k);
        if (ek != ak) {
            FAIL_CHECK(path << ": keys differ");
            return;
        }
        for (const auto& k : ek)
            if (k != "timestamp") compare_json(expected.at(k), actual.at(k), path + "." + k);
        return;
    }
    if (expected.is_array()) {
        if (expected.size() != actual.size()) {
            FAIL_CHECK(path << ": length " << expected.size() << " vs " << actual.size());
            return;
        }
        for (std::size_t i = 0; i < expected.size(); ++i)
            compare_json(expected[i], actual[i], path + "[" + std::to_string(i) + "]");
        return;
    }
    if (expected != actual) FAIL_CHECK(path << ": " << expected.dump() << " vs " << actual.dump());
}

std::string without_timestamp(const std::string& report) {
    json doc = json::parse(report);
    doc.erase("timestamp");
    return doc.dump();
}

}  // namespace

TEST_CASE("validate accepts the shipped configs") {
    for (const auto& entry : fs::directory_iterator(kData / "configs"))
        CHECK_MESSAGE(run_cli({"validate", "--config", entry.path().string()}) == 0, entry.path());
}

TEST_CASE("validate reports field paths for bad two-photon parameters") {
    CHECK(run_cli({"validate", "--config", write_config("nu.json", two_photon(1.0, 12)).string()}) == 2);
    CHECK(run_cli({"validate", "--config", write_config("odd.json", two_photon(0.2, 11)).string()}) == 2);
    try {
        qms::cli::parse_config(two_photon(1.5, 12));
        FAIL("expected a validation error");
    } catch (const qms::ValidationError& e) {
        CHECK(e.field().rfind("model.two-photon", 0) == 0);
    }
    try {
        qms::cli::parse_config(two_photon(0.2, 11));
        FAIL("expected a validation error");
    } catch (const qms::ValidationError& e) {
        CHECK(e.field() == "model.two-photon.dim");
    }
}

TEST_CASE("config parsing is strict") {
    json extra = two_photon(0.0, 12);
    extra["colour"] = "blue";
    CHECK_THROWS_AS(qms::cli::parse_config(extra), qms::ValidationError);

    json two_models = two_photon(0.0, 12);
    two_models["model"]["k-photon"] = {{"k", 1}, {"alpha", 1.0}, {"dim", 12}};
    CHECK_THROWS_AS(qms::cli::parse_config(two_models), qms::ValidationError);

    json bad_analysis = two_photon(0.0, 12);
    bad_analysis["analyses"] = {"spectrum", "horoscope"};
    try {
        qms::cli::parse_config(bad_analysis);
        FAIL("expected a validation error");
    } catch (const qms::ValidationError& e) {
        CHECK(e.field() == "analyses[1]");
    }

    const auto cfg = qms::cli::parse_config(two_photon(0.0, 12));
    CHECK(cfg.seed == 20240601u);
    CHECK(cfg.analyses.empty());  // analyze falls back to spectrum and r-plus
}

TEST_CASE("malformed config exits 2 without writing a report") {
    const fs::path bad = scratch_dir() / "broken.json";
    std::ofstream(bad) << "{ \"model\": ";
    const fs::path out = scratch_dir() / "broken_report.json";
    fs::remove(out);
    CHECK(run_cli({"analyze", "--config", bad.string(), "--out", out.string()}) == 2);
    CHECK_FALSE(fs::exists(out));
    CHECK(run_cli({"validate", "--config", (scratch_dir() / "missing.json").string()}) == 2);
    CHECK(run_cli({"analyze", "--config", bad.string()}) == 2);  // missing --out
}

TEST_CASE("analyze is deterministic for a fixed seed") {
    const fs::path cfg = kData / "configs" / "two_photon_lambda0.json";
    const fs::path a = scratch_dir() / "det_a.json", b = scratch_dir() / "det_b.json";
    REQUIRE(run_cli({"analyze", "--config", cfg.string(), "--out", a.string()}) == 0);
    REQUIRE(run_cli({"analyze", "--config", cfg.string(), "--out", b.string()}) == 0);
    CHECK(without_timestamp(slurp(a)) == without_timestamp(slurp(b)));
}

TEST_CASE("seed and analysis flags override the config") {
    const fs::path cfg = kData / "configs" / "two_photon_lambda0.json";
    const fs::path out = scratch_dir() / "override.json";
    REQUIRE(run_cli({"analyze", "--config", cfg.string(), "--out", out.string(), "--seed", "5", "--analysis",
                     "decompose"}) == 0);
    const json r = json::parse(slurp(out));
    CHECK(r.at("seed") == 5);
    CHECK(r.at("results").size() == 1);
    CHECK(r.at("results").at("decompose").at("seed") == 5);
    CHECK(r.at("schema_version") == 1);
}

TEST_CASE("two-photon lambda = 0 report shows R+ = {0,1} and a valid rate") {
    const fs::path out = scratch_dir() / "tp0.json";
    REQUIRE(run_cli({"analyze", "--config", (kData / "configs" / "two_photon_lambda0.json").string(), "--out",
                     out.string()}) == 0);
    const json r = json::parse(slurp(out)).at("results");
    CHECK(r.at("r-plus").at("r_plus").at("basis_indices") == json::array({0, 1}));
    CHECK(r.at("rate").at("valid") == true);
    CHECK(r.at("rate").at("kappa").get<double>() < 1.0);
    CHECK(r.at("decompose").contains("residual"));
    CHECK(r.at("decompose").contains("seed"));
}

TEST_CASE("evolve CSV for amplitude damping follows the closed form") {
    const fs::path out = scratch_dir() / "ad.csv";
    REQUIRE(run_cli({"evolve", "--config", (kData / "configs" / "amplitude_damping.json").string(), "--out",
                     out.string(), "--t-max", "5", "--points", "11", "--state", "fock:1"}) == 0);
    std::vector<std::string> header;
    const auto rows = read_csv(out, header);
    CHECK(header == std::vector<std::string>{"t", "trace_outside_r_plus", "distance_to_invariant"});
    REQUIRE(rows.size() == 11);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const double t = rows[i][0];
        CHECK(std::abs(rows[i][1] - std::exp(-t)) < 1e-12);
        CHECK(std::abs(rows[i][2] - 2.0 * std::exp(-t)) < 1e-12);
        if (i) CHECK(rows[i][2] < rows[i - 1][2]);
    }
}

TEST_CASE("evolve CSV at t_max = 0 has a single row") {
    const fs::path out = scratch_dir() / "zero.csv";
    REQUIRE(run_cli({"evolve", "--config", (kData / "configs" / "amplitude_damping.json").string(), "--out",
                     out.string(), "--t-max", "0", "--points", "7"}) == 0);
    std::vector<std::string> header;
    const auto rows = read_csv(out, header);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0][0] == 0.0);
}

TEST_CASE("evolve CSV for a generic QMS off-diagonal unit decays exponentially") {
    const fs::path out = scratch_dir() / "generic.csv";
    REQUIRE(run_cli({"evolve", "--config", (kData / "configs" / "birth_death.json").string(), "--out", out.string(),
                     "--t-max", "4", "--points", "9", "--state", "unit:0,1"}) == 0);
    std::vector<std::string> header;
    const auto rows = read_csv(out, header);
    REQUIRE(header.back() == "off_diagonal_norm");
    REQUIRE(rows.size() == 9);
    // log-linear fit of the off-diagonal norm
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& r : rows) {
        const double y = std::log(r.back());
        sx += r[0], sy += y, sxx += r[0] * r[0], sxy += r[0] * y;
    }
    const double n = static_cast<double>(rows.size());
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    CHECK(slope < -0.1);
}

TEST_CASE("evolve rejects unknown state specs") {
    const fs::path out = scratch_dir() / "bogus.csv";
    fs::remove(out);
    CHECK(run_cli({"evolve", "--config", (kData / "configs" / "amplitude_damping.json").string(), "--out",
                   out.string(), "--state", "bogus"}) == 2);
    CHECK_FALSE(fs::exists(out));
}

TEST_CASE("reports match the golden files") {
    const bool update = std::getenv("QMS_UPDATE_GOLDEN") != nullptr;
    int compared = 0;
    for (const auto& entry : fs::directory_iterator(kData / "configs")) {
        const std::string name = entry.path().stem().string();
        const fs::path out = scratch_dir() / (name + ".report.json");
        const int code = run_cli({"analyze", "--config", entry.path().string(), "--out", out.string()});
        const json actual = json::parse(slurp(out));
        CHECK(actual.at("status").at("exit_code") == code);
        const fs::path golden = kData / "golden" / (name + ".json");
        if (update) {
            fs::copy_file(out, golden, fs::copy_options::overwrite_existing);
            continue;
        }
        REQUIRE_MESSAGE(fs::exists(golden), golden);
        INFO("golden: " << name);
        compare_json(json::parse(slurp(golden)), actual, name);
        ++compared;
    }
    if (!update) CHECK(compared >= 7);
}

TEST_CASE("golden reports cover every exercised warning code") {
    std::set<std::string> seen;
    for (const auto& entry : fs::directory_iterator(kData / "golden")) {
        const json report = json::parse(slurp(entry.path()));
        for (const auto& w : report.at("warnings")) seen.insert(w.at("code").get<std::string>());
    }
    for (const std::string code : {"truncation", "non-uniqueness", "inconclusive-at-horizon", "classical-forced",
                                   "no-spectral-gap"}) {
        INFO("warning code: " << code);
        CHECK(seen.count(code) == 1);
    }
}
