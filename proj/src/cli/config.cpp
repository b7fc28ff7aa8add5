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

#include "qms/cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace qms::cli {

namespace {

std::string join(const std::string& path, const std::string& key) {
    return path.empty() ? key : path + "." + key;
}

void check_object(const json& j, const std::string& path) {
    if (!j.is_object()) throw ValidationError("expected an object", path);
}

void check_keys(const json& j, std::initializer_list<const char*> allowed, const std::string& path) {
    check_object(j, path);
    for (const auto& item : j.items()) {
        const bool ok = std::any_of(allowed.begin(), allowed.end(),
                                    [&](const char* a) { return item.key() == a; });
        if (!ok) throw ValidationError("unknown field", join(path, item.key()));
    }
}

double number_at(const json& j, const std::string& key, const std::string& path, std::optional<double> fallback = {}) {
    if (!j.contains(key)) {
        if (fallback) return *fallback;
        throw ValidationError("missing required field", join(path, key));
    }
    const json& v = j.at(key);
    if (!v.is_number()) throw ValidationError("expected a number", join(path, key));
    const double out = v.get<double>();
    if (!std::isfinite(out)) throw ValidationError("expected a finite number", join(path, key));
    return out;
}

std::int64_t integer_at(const json& j, const std::string& key, const std::string& path,
                        std::optional<std::int64_t> fallback = {}) {
    if (!j.contains(key)) {
        if (fallback) return *fallback;
        throw ValidationError("missing required field", join(path, key));
    }
    const json& v = j.at(key);
    if (!v.is_number_integer()) throw ValidationError("expected an integer", join(path, key));
    return v.get<std::int64_t>();
}

std::string string_at(const json& j, const std::string& key, const std::string& path, const std::string& fallback) {
    if (!j.contains(key)) return fallback;
    if (!j.at(key).is_string()) throw ValidationError("expected a string", join(path, key));
    return j.at(key).get<std::string>();
}

std::vector<double> numbers(const json& j, const std::string& path) {
    if (!j.is_array()) throw ValidationError("expected an array of numbers", path);
    std::vector<double> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_number()) throw ValidationError("expected a number", path + "[" + std::to_string(i) + "]");
        out.push_back(j[i].get<double>());
        if (!std::isfinite(out.back()))
            throw ValidationError("expected a finite number", path + "[" + std::to_string(i) + "]");
    }
    return out;
}

cplx complex_entry(const json& j, const std::string& path) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_object()) {
        check_keys(j, {"re", "im"}, path);
        return {number_at(j, "re", path, 0.0), number_at(j, "im", path, 0.0)};
    }
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return {j[0].get<double>(), j[1].get<double>()};
    throw ValidationError("expected a number, {re, im} or [re, im]", path);
}

Matrix matrix_from(const json& j, const std::string& path) {
    if (!j.is_array() || j.empty()) throw ValidationError("expected a non-empty array of rows", path);
    const auto rows = static_cast<Eigen::Index>(j.size());
    Matrix m(rows, rows);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const json& row = j[static_cast<std::size_t>(r)];
        const std::string rp = path + "[" + std::to_string(r) + "]";
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != rows)
            throw ValidationError("expected a square matrix", rp);
        for (Eigen::Index c = 0; c < rows; ++c)
            m(r, c) = complex_entry(row[static_cast<std::size_t>(c)], rp + "[" + std::to_string(c) + "]");
    }
    if (!m.allFinite()) throw ValidationError("matrix has non-finite entries", path);
    return m;
}

json matrix_echo(const Matrix& m) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({{"re", m(r, c).real()}, {"im", m(r, c).imag()}});
        rows.push_back(row);
    }
    return rows;
}

BirthDeathChain parse_chain(const json& j, const std::string& path, Eigen::Index& horizon) {
    check_object(j, path);
    const std::string family = string_at(j, "family", path, "constant");
    horizon = integer_at(j, "horizon", path, 10000);
    if (horizon < 1 || horizon > 10'000'000) throw ValidationError("horizon must lie in [1, 1e7]", join(path, "horizon"));
    try {
        if (family == "constant") {
            check_keys(j, {"family", "horizon", "birth", "death"}, path);
            return BirthDeathChain::constant(number_at(j, "birth", path), number_at(j, "death", path), horizon);
        }
        if (family == "linear") {
            check_keys(j, {"family", "horizon", "birth0", "birth1", "death0", "death1"}, path);
            return BirthDeathChain::linear(number_at(j, "birth0", path), number_at(j, "birth1", path, 0.0),
                                           number_at(j, "death0", path), number_at(j, "death1", path, 0.0), horizon);
        }
        if (family == "polynomial") {
            check_keys(j, {"family", "horizon", "birth_coeff", "birth_power", "death_coeff", "death_power"}, path);
            return BirthDeathChain::polynomial(number_at(j, "birth_coeff", path), number_at(j, "birth_power", path),
                                               number_at(j, "death_coeff", path), number_at(j, "death_power", path),
                                               horizon);
        }
        if (family == "geometric") {
            check_keys(j, {"family", "horizon", "birth0", "birth_ratio", "death0", "death_ratio"}, path);
            return BirthDeathChain::geometric(number_at(j, "birth0", path), number_at(j, "birth_ratio", path),
                                              number_at(j, "death0", path), number_at(j, "death_ratio", path), horizon);
        }
        if (family == "explicit") {
            check_keys(j, {"family", "horizon", "birth", "death"}, path);
            BirthDeathChain c;
            c.birth = numbers(j.at("birth"), join(path, "birth"));
            c.death = numbers(j.at("death"), join(path, "death"));
            if (!c.death.empty()) c.death[0] = 0.0;
            horizon = static_cast<Eigen::Index>(c.birth.size());
            c.validate();
            return c;
        }
    } catch (const ValidationError& e) {
        if (e.field().rfind("classical.chain", 0) == 0) throw ValidationError(e.what(), path);
        throw;
    }
    throw ValidationError("unknown chain family '" + family + "'", join(path, "family"));
}

SubspaceChoice parse_subspace(const json& j, const std::string& path) {
    SubspaceChoice out;
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "zero") out.kind = SubspaceChoice::Kind::zero;
        else if (s == "r-plus") out.kind = SubspaceChoice::Kind::r_plus;
        else if (s == "full") out.kind = SubspaceChoice::Kind::full;
        else throw ValidationError("expected zero, r-plus, full or a list of basis indices", path);
        return out;
    }
    if (!j.is_array()) throw ValidationError("expected zero, r-plus, full or a list of basis indices", path);
    out.kind = SubspaceChoice::Kind::indices;
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_number_integer() || j[i].get<std::int64_t>() < 0)
            throw ValidationError("expected a non-negative integer", path + "[" + std::to_string(i) + "]");
        out.indices.push_back(j[i].get<Eigen::Index>());
    }
    return out;
}

json subspace_echo(const SubspaceChoice& s) {
    switch (s.kind) {
        case SubspaceChoice::Kind::zero: return "zero";
        case SubspaceChoice::Kind::r_plus: return "r-plus";
        case SubspaceChoice::Kind::full: return "full";
        case SubspaceChoice::Kind::indices: return s.indices;
    }
    return "r-plus";
}

void check_indices(const SubspaceChoice& s, Eigen::Index dim, const std::string& path) {
    std::set<Eigen::Index> seen;
    for (auto i : s.indices) {
        if (i >= dim) throw ValidationError("basis index " + std::to_string(i) + " out of range", path);
        if (!seen.insert(i).second) throw ValidationError("repeated basis index " + std::to_string(i), path);
    }
}

Eigen::Index model_dim(const AnalysisConfig& c) {
    return std::visit([](const auto& p) -> Eigen::Index { return p.dim; }, c.model);
}

void parse_model(const json& doc, AnalysisConfig& out, json& echo) {
    if (!doc.contains("model")) throw ValidationError("missing required field", "model");
    const json& m = doc.at("model");
    check_object(m, "model");
    if (m.size() != 1) throw ValidationError("exactly one model block is required", "model");
    const std::string name = m.begin().key();
    const json& b = m.begin().value();
    const std::string path = "model." + name;
    out.model_name = name;
    if (name == "two-photon") {
        check_keys(b, {"lambda", "mu", "omega", "dim"}, path);
        TwoPhotonParams p{number_at(b, "lambda", path, 0.0), number_at(b, "mu", path, 1.0),
                          number_at(b, "omega", path, 0.0), integer_at(b, "dim", path, 16)};
        p.validate();
        out.model = p;
        echo = {{name, {{"lambda", p.lambda}, {"mu", p.mu}, {"omega", p.omega}, {"dim", p.dim}}}};
    } else if (name == "generic-qms") {
        check_keys(b, {"gamma", "chain", "kappa", "dim", "boundary"}, path);
        GenericQMSParams p;
        p.dim = integer_at(b, "dim", path);
        const std::string boundary = string_at(b, "boundary", path, "reflecting");
        if (boundary == "reflecting") p.boundary = Boundary::reflecting;
        else if (boundary == "absorbing-truncate") p.boundary = Boundary::absorbing_truncate;
        else throw ValidationError("boundary must be reflecting or absorbing-truncate", join(path, "boundary"));
        if (b.contains("kappa")) p.kappa = numbers(b.at("kappa"), join(path, "kappa"));
        if (b.contains("gamma") == b.contains("chain"))
            throw ValidationError("give exactly one of gamma or chain", path);
        json rates_echo;
        if (b.contains("gamma")) {
            const Matrix g = matrix_from(b.at("gamma"), join(path, "gamma"));
            if (g.imag().cwiseAbs().maxCoeff() != 0.0) throw ValidationError("rates must be real", join(path, "gamma"));
            p.gamma = g.real();
            rates_echo = {"gamma", b.at("gamma")};
        } else {
            Eigen::Index horizon = 0;
            BirthDeathChain chain = parse_chain(b.at("chain"), join(path, "chain"), horizon);
            if (chain.horizon() < p.dim)
                throw ValidationError("chain horizon must be at least dim", join(path, "chain.horizon"));
            // Only the first dim + 1 levels reach the truncated quantum model.
            BirthDeathChain window;
            const auto levels = std::min<Eigen::Index>(chain.horizon(), p.dim + 1);
            window.birth.assign(chain.birth.begin(), chain.birth.begin() + levels);
            window.death.assign(chain.death.begin(), chain.death.begin() + levels);
            p.gamma = generic_qms_params(window, p.dim).gamma;
            out.chain = std::move(chain);
            json chain_echo = b.at("chain");
            chain_echo["horizon"] = horizon;
            rates_echo = {"chain", chain_echo};
        }
        try {
            p.validate();
        } catch (const ValidationError& e) {
            throw ValidationError(e.what(), e.field().empty() ? path : e.field());
        }
        out.model = p;
        json block = json::object();
        block["dim"] = p.dim;
        block["boundary"] = boundary;
        block[rates_echo[0].get<std::string>()] = rates_echo[1];
        block["kappa"] = p.kappa;
        echo = {{name, block}};
    } else if (name == "k-photon") {
        check_keys(b, {"k", "alpha", "dim"}, path);
        KPhotonParams p{static_cast<int>(integer_at(b, "k", path, 1)), number_at(b, "alpha", path, 0.0),
                        integer_at(b, "dim", path, 16)};
        p.validate();
        out.model = p;
        echo = {{name, {{"k", p.k}, {"alpha", p.alpha}, {"dim", p.dim}}}};
    } else if (name == "custom-gkls") {
        check_keys(b, {"dim", "hamiltonian", "jumps"}, path);
        CustomGKLSParams p;
        if (!b.contains("hamiltonian")) throw ValidationError("missing required field", join(path, "hamiltonian"));
        p.hamiltonian = matrix_from(b.at("hamiltonian"), join(path, "hamiltonian"));
        p.dim = integer_at(b, "dim", path, p.hamiltonian.rows());
        if (p.dim != p.hamiltonian.rows()) throw ValidationError("dim does not match the hamiltonian", join(path, "dim"));
        if (b.contains("jumps")) {
            const json& js = b.at("jumps");
            if (!js.is_array()) throw ValidationError("expected an array of matrices", join(path, "jumps"));
            for (std::size_t i = 0; i < js.size(); ++i) {
                const std::string jp = join(path, "jumps") + "[" + std::to_string(i) + "]";
                p.jumps.push_back(matrix_from(js[i], jp));
                if (p.jumps.back().rows() != p.dim) throw ValidationError("jump dimension mismatch", jp);
            }
        }
        if (p.dim < 1) throw ValidationError("dim must be positive", join(path, "dim"));
        if (!is_hermitian(p.hamiltonian)) throw ValidationError("hamiltonian is not Hermitian", join(path, "hamiltonian"));
        out.model = p;
        json jumps = json::array();
        for (const auto& l : p.jumps) jumps.push_back(matrix_echo(l));
        echo = {{name, {{"dim", p.dim}, {"hamiltonian", matrix_echo(p.hamiltonian)}, {"jumps", jumps}}}};
    } else {
        throw ValidationError("unknown model '" + name + "'", "model");
    }
}

}  // namespace

std::vector<double> TimeGrid::times() const {
    if (t_max == 0.0 || points == 1) return {t_max == 0.0 ? 0.0 : t_max};
    std::vector<double> out;
    if (spacing == Spacing::linear) {
        for (int i = 0; i < points; ++i) out.push_back(i + 1 == points ? t_max : t_max * i / (points - 1));
        return out;
    }
    out.push_back(0.0);
    const double lo = t_max * 1e-3;
    const int n = points - 1;
    for (int i = 0; i < n; ++i)
        out.push_back(i + 1 == n ? t_max : n == 1 ? t_max : lo * std::pow(t_max / lo, static_cast<double>(i) / (n - 1)));
    return out;
}

const std::vector<std::string>& known_analyses() {
    static const std::vector<std::string> names{"spectrum", "r-plus",  "ergodic-check", "rate",
                                                "decompose", "nfd",    "gas",           "evolve",
                                                "classical", "consistency", "convergence"};
    return names;
}

AnalysisConfig parse_config(const json& doc) {
    check_keys(doc, {"model", "tolerances", "analyses", "time_grid", "seed", "rate", "nfd", "gas", "convergence",
                     "evolve"},
               "");
    AnalysisConfig out;
    json model_echo;
    parse_model(doc, out, model_echo);
    const Eigen::Index dim = model_dim(out);

    if (doc.contains("tolerances")) {
        const json& t = doc.at("tolerances");
        check_keys(t, {"nullspace_rel", "psd_floor", "expm_rel", "convergence_abs", "zero_band", "peripheral_band"},
                   "tolerances");
        Tolerances& tol = out.tolerances;
        tol.nullspace_rel = number_at(t, "nullspace_rel", "tolerances", tol.nullspace_rel);
        tol.psd_floor = number_at(t, "psd_floor", "tolerances", tol.psd_floor);
        tol.expm_rel = number_at(t, "expm_rel", "tolerances", tol.expm_rel);
        tol.convergence_abs = number_at(t, "convergence_abs", "tolerances", tol.convergence_abs);
        tol.zero_band = number_at(t, "zero_band", "tolerances", tol.zero_band);
        tol.peripheral_band = number_at(t, "peripheral_band", "tolerances", tol.peripheral_band);
    }
    out.tolerances.validate();

    if (doc.contains("analyses")) {
        const json& a = doc.at("analyses");
        if (!a.is_array()) throw ValidationError("expected an array of analysis names", "analyses");
        for (std::size_t i = 0; i < a.size(); ++i) {
            const std::string path = "analyses[" + std::to_string(i) + "]";
            if (!a[i].is_string()) throw ValidationError("expected a string", path);
            const auto name = a[i].get<std::string>();
            const auto& known = known_analyses();
            if (std::find(known.begin(), known.end(), name) == known.end())
                throw ValidationError("unknown analysis '" + name + "'", path);
            if (std::find(out.analyses.begin(), out.analyses.end(), name) == out.analyses.end())
                out.analyses.push_back(name);
        }
    }

    if (doc.contains("time_grid")) {
        const json& t = doc.at("time_grid");
        check_keys(t, {"t_max", "points", "spacing"}, "time_grid");
        out.time_grid.t_max = number_at(t, "t_max", "time_grid", out.time_grid.t_max);
        out.time_grid.points = static_cast<int>(integer_at(t, "points", "time_grid", out.time_grid.points));
        const auto spacing = string_at(t, "spacing", "time_grid", "linear");
        if (spacing == "linear") out.time_grid.spacing = Spacing::linear;
        else if (spacing == "geometric") out.time_grid.spacing = Spacing::geometric;
        else throw ValidationError("spacing must be linear or geometric", "time_grid.spacing");
    }
    if (out.time_grid.t_max < 0.0) throw ValidationError("t_max must be non-negative", "time_grid.t_max");
    if (out.time_grid.points < 1 || out.time_grid.points > 100000)
        throw ValidationError("points must lie in [1, 100000]", "time_grid.points");

    if (doc.contains("seed")) {
        const json& s = doc.at("seed");
        if (!s.is_number_unsigned() && !(s.is_number_integer() && s.get<std::int64_t>() >= 0))
            throw ValidationError("expected a non-negative integer", "seed");
        out.seed = s.get<std::uint64_t>();
    }

    if (doc.contains("rate")) {
        const json& r = doc.at("rate");
        check_keys(r, {"t0"}, "rate");
        if (r.contains("t0")) out.rate_t0 = numbers(r.at("t0"), "rate.t0");
        for (double t : out.rate_t0)
            if (!(t > 0.0)) throw ValidationError("t0 values must be positive", "rate.t0");
    }
    if (doc.contains("nfd")) {
        const json& n = doc.at("nfd");
        check_keys(n, {"seed", "mode", "t0"}, "nfd");
        if (n.contains("seed")) out.nfd_seed = parse_subspace(n.at("seed"), "nfd.seed");
        const auto mode = string_at(n, "mode", "nfd", "continuous");
        if (mode != "continuous" && mode != "discrete")
            throw ValidationError("mode must be continuous or discrete", "nfd.mode");
        out.nfd_discrete = mode == "discrete";
        out.nfd_t0 = number_at(n, "t0", "nfd", 1.0);
        if (!(out.nfd_t0 > 0.0)) throw ValidationError("t0 must be positive", "nfd.t0");
    }
    check_indices(out.nfd_seed, dim, "nfd.seed");
    if (doc.contains("gas")) {
        const json& g = doc.at("gas");
        check_keys(g, {"subspace"}, "gas");
        if (g.contains("subspace")) out.gas_subspace = parse_subspace(g.at("subspace"), "gas.subspace");
    }
    check_indices(out.gas_subspace, dim, "gas.subspace");
    if (doc.contains("convergence")) {
        const json& c = doc.at("convergence");
        check_keys(c, {"c_fraction"}, "convergence");
        out.convergence_c_fraction = number_at(c, "c_fraction", "convergence", 0.5);
    }
    if (!(out.convergence_c_fraction > 0.0 && out.convergence_c_fraction < 1.0))
        throw ValidationError("c_fraction must lie in (0, 1)", "convergence.c_fraction");
    if (doc.contains("evolve")) {
        const json& e = doc.at("evolve");
        check_keys(e, {"state"}, "evolve");
        out.initial_state = string_at(e, "state", "evolve", "mixed");
    }

    const Tolerances& tol = out.tolerances;
    out.echo = json::object();
    out.echo["model"] = model_echo;
    out.echo["tolerances"] = {{"nullspace_rel", tol.nullspace_rel}, {"psd_floor", tol.psd_floor},
                              {"expm_rel", tol.expm_rel},           {"convergence_abs", tol.convergence_abs},
                              {"zero_band", tol.zero_band},         {"peripheral_band", tol.peripheral_band}};
    out.echo["analyses"] = out.analyses;
    out.echo["time_grid"] = {{"t_max", out.time_grid.t_max},
                             {"points", out.time_grid.points},
                             {"spacing", out.time_grid.spacing == Spacing::linear ? "linear" : "geometric"}};
    out.echo["seed"] = out.seed;
    out.echo["rate"] = {{"t0", out.rate_t0}};
    out.echo["nfd"] = {{"seed", subspace_echo(out.nfd_seed)},
                       {"mode", out.nfd_discrete ? "discrete" : "continuous"},
                       {"t0", out.nfd_t0}};
    out.echo["gas"] = {{"subspace", subspace_echo(out.gas_subspace)}};
    out.echo["convergence"] = {{"c_fraction", out.convergence_c_fraction}};
    out.echo["evolve"] = {{"state", out.initial_state}};
    return out;
}

AnalysisConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open config file '" + path + "'", "config");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string("config is not valid JSON: ") + e.what(), "config");
    }
    return parse_config(doc);
}

BirthDeathChain chain_of(const AnalysisConfig& config) {
    if (config.chain) return *config.chain;
    const auto* p = std::get_if<GenericQMSParams>(&config.model);
    if (!p) throw ValidationError("classical analyses need a generic-qms model", "model");
    const Eigen::MatrixXd& g = p->gamma;
    const auto n = g.rows();
    BirthDeathChain chain;
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j)
            if (std::abs(i - j) > 1 && g(i, j) != 0.0)
                throw ValidationError("classical analyses need a tridiagonal (birth-death) gamma", "model.generic-qms.gamma");
        chain.birth.push_back(i + 1 < n ? g(i, i + 1) : 0.0);
        chain.death.push_back(i > 0 ? g(i, i - 1) : 0.0);
    }
    return chain;
}

}  // namespace qms::cli
