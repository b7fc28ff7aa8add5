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

#include "qms/cli/analyses.hpp"

#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

#include "qms/classical.hpp"

namespace qms::cli {

namespace {

// Indices i with P = Σ_{i} |e_i⟩⟨e_i| when the projector is coordinate aligned; null otherwise.
json basis_indices(const Subspace& v) {
    const Matrix& p = v.projector();
    Matrix off = p;
    off.diagonal().setZero();
    if (off.cwiseAbs().maxCoeff() > 1e-9 && off.size() > 0) return nullptr;
    json out = json::array();
    for (Eigen::Index i = 0; i < p.rows(); ++i) {
        const double d = p(i, i).real();
        if (std::abs(d - 1.0) <= 1e-9) out.push_back(i);
        else if (std::abs(d) > 1e-9) return nullptr;
    }
    return out;
}

json subspace_json(const Subspace& v) {
    json out = json::object();
    out["dim"] = v.dim();
    out["basis_indices"] = basis_indices(v);
    std::vector<double> diag;
    for (Eigen::Index i = 0; i < v.ambient_dim(); ++i) diag.push_back(v.projector()(i, i).real());
    out["projector_diagonal"] = real_list(diag);
    return out;
}

std::vector<double> real_diagonal(const Matrix& m) {
    std::vector<double> out;
    for (Eigen::Index i = 0; i < m.rows(); ++i) out.push_back(m(i, i).real());
    return out;
}

double off_diagonal_norm(const Matrix& m) {
    Matrix off = m;
    off.diagonal().setZero();
    return off.norm();
}

json spectrum(ModelContext& ctx) {
    const SpectralReport r = spectral_gap(ctx.generator(), ctx.tol());
    json out = json::object();
    out["zero_multiplicity"] = r.zero_multiplicity;
    out["lambda2"] = r.lambda2 ? complex_value(*r.lambda2) : json(nullptr);
    out["gap"] = r.gap ? number(*r.gap) : json(nullptr);
    out["spectral_abscissa"] = number(spectral_abscissa(r.eigenvalues));
    out["irreducible"] = r.irreducible;
    out["primitive"] = r.primitive;
    out["eigenvalues"] = complex_list(r.eigenvalues);
    if (!r.gap) ctx.warn("no-spectral-gap", "generator has no eigenvalue with negative real part");
    return out;
}

json r_plus(ModelContext& ctx) {
    const InvariantStateSet& states = ctx.states();
    const RecurrentSplit split = transient_split(ctx.generator(), ctx.tol());
    json out = json::object();
    out["kernel_dimension"] = states.kernel_basis.size();
    out["semisimple"] = states.projection.semisimple_ok;
    out["r_plus"] = subspace_json(split.r_plus);
    out["transient_dim"] = split.transient.dim();
    out["null_recurrent_dim"] = split.null_recurrent.dim();
    out["canonical_state"] = {{"diagonal", real_list(real_diagonal(states.canonical_state.matrix()))},
                              {"off_diagonal_norm", number(off_diagonal_norm(states.canonical_state.matrix()))},
                              {"leakage", number(states.canonical_state.leakage())}};
    out["diagnostic"] = {{"times", real_list(split.diagnostic_times)},
                         {"transient_mass", real_list(split.transient_mass)},
                         {"transient_decaying", split.transient_decaying}};
    if (!split.transient_decaying)
        ctx.warn("transient-mass", "transient mass is not monotone on the diagnostic grid");
    return out;
}

json ergodic_check(ModelContext& ctx) {
    const ErgodicityCheck check = check_ergodic(ctx.generator(), ctx.tol());
    const AbsorptionEstimate a = absorption_operator(ctx.generator(), ctx.r_plus(), ctx.tol());
    json out = json::object();
    out["attractive"] = check.attractive;
    out["deviation"] = number(check.deviation);
    out["absorption"] = {{"residual", number(a.residual)},
                         {"monotone", a.monotone_ok},
                         {"enclosure", a.enclosure_ok},
                         {"sandwich_defect", number(a.sandwich_defect)}};
    if (!check.attractive) ctx.warn("not-attractive", "A(R+) differs from the identity");
    return out;
}

json rate(ModelContext& ctx) {
    const auto& cfg = ctx.config();
    const auto t0s = cfg.rate_t0.empty() ? default_t0_grid(ctx.generator(), ctx.tol()) : cfg.rate_t0;
    const RateCertificate c = rate_certificate(ctx.generator(), t0s, ctx.tol());
    json candidates = json::array();
    for (const auto& k : c.candidates) candidates.push_back({{"t0", number(k.t0)}, {"kappa", number(k.kappa)}});
    json out = json::object();
    out["valid"] = c.valid;
    out["trivial"] = c.trivial;
    out["t0"] = number(c.t0);
    out["kappa"] = number(c.kappa);
    out["rate"] = number(c.rate);
    out["bound_violation"] = number(c.bound_violation);
    out["check_points"] = c.check_times.size();
    out["candidates"] = candidates;
    if (!c.valid) ctx.warn("rate-certificate-invalid", "no candidate t0 gave a verified kappa < 1");
    return out;
}

json decompose(ModelContext& ctx) {
    const EnclosureDecomposition d = minimal_enclosures(ctx.generator(), ctx.config().seed, ctx.tol());
    json alpha = json::array();
    for (std::size_t i = 0; i < d.alpha_blocks.size(); ++i) {
        json block = subspace_json(d.alpha_blocks[i]);
        block["state_diagonal"] = real_list(real_diagonal(d.alpha_states[i].matrix()));
        alpha.push_back(block);
    }
    json beta = json::array();
    for (const auto& b : d.beta_blocks) {
        json block = subspace_json(b.subspace);
        json factors = json::array();
        for (const auto& f : b.chosen_factors) factors.push_back(subspace_json(f));
        block["chosen_factors"] = factors;
        beta.push_back(block);
    }
    json out = json::object();
    out["seed"] = d.seed;
    out["residual"] = number(d.residual);
    out["canonical"] = d.canonical;
    out["alpha_blocks"] = alpha;
    out["beta_blocks"] = beta;
    if (!d.canonical)
        ctx.warn("non-uniqueness", "beta blocks present: the minimal enclosures inside them are one seed-dependent choice");
    return out;
}

json nfd_analysis(ModelContext& ctx) {
    const auto& cfg = ctx.config();
    const Subspace seed = ctx.resolve(cfg.nfd_seed);
    const Superoperator input = cfg.nfd_discrete ? channel_at(ctx.generator(), cfg.nfd_t0) : ctx.generator();
    const NFDResult r = nfd(input, seed, ctx.tol());
    json stages = json::array();
    for (std::size_t i = 0; i < r.stages.size(); ++i) {
        const auto& s = r.stages[i];
        stages.push_back({{"sigma", number(s.sigma)},
                          {"face_dim", s.subspace_t.dim()},
                          {"cumulative_dim", s.cumulative_s.dim()},
                          {"cumulative_basis_indices", basis_indices(s.cumulative_s)}});
    }
    json out = json::object();
    out["mode"] = r.mode == NfdMode::discrete ? "discrete" : "continuous";
    out["seed_dim"] = seed.dim();
    out["gas_stage"] = r.gas_stage;
    out["stages"] = stages;
    return out;
}

json gas(ModelContext& ctx) {
    const Subspace v = ctx.resolve(ctx.config().gas_subspace);
    const GASVerdict g = is_gas(ctx.generator(), v, ctx.tol());
    return {{"subspace", subspace_json(v)},
            {"is_gas", g.is_gas},
            {"reason", to_string(g.reason)},
            {"contains_r_plus", g.contains_r_plus},
            {"sigma_r1", number(g.sigma_r1)},
            {"abscissa_r1", number(g.abscissa_r1)}};
}

json evolve_analysis(ModelContext& ctx) {
    const EvolveTable t = evolve_table(ctx, ctx.config().time_grid.times(), ctx.config().initial_state);
    json out = json::object();
    out["state"] = ctx.config().initial_state;
    out["columns"] = t.columns;
    json rows = json::array();
    for (const auto& r : t.rows) rows.push_back(real_list(r));
    out["rows"] = rows;
    return out;
}

json trend_json(const SeriesTrend& s) {
    return {{"partial_sum", number(s.partial_sum)},
            {"log_partial_sum", number(s.log_partial_sum)},
            {"slope", number(s.slope)},
            {"trend", to_string(s.trend)}};
}

json classical(ModelContext& ctx) {
    const BirthDeathChain chain = chain_of(ctx.config());
    const auto horizon = chain.horizon();
    const auto dim = ctx.generator().dim();
    json out = json::object();
    out["horizon"] = horizon;
    const Eigen::MatrixXd p = transition_matrix(chain);
    out["transition_row_sum_defect"] =
        number((p.rowwise().sum() - Eigen::VectorXd::Ones(p.rows())).cwiseAbs().maxCoeff());
    try {
        out["reuter"] = trend_json(reuter_nonexplosion(chain, horizon));
    } catch (const ValidationError& e) {
        out["reuter"] = {{"error", e.what()}};
    }
    const RecurrenceVerdict v = positive_recurrence(chain, horizon);
    out["recurrence"] = {{"classification", to_string(v.classification)},
                         {"sum_a", trend_json(v.sum_a)},
                         {"sum_b", trend_json(v.sum_b)}};
    if (v.classification == Recurrence::inconclusive_at_horizon)
        ctx.warn("inconclusive-at-horizon", "recurrence series trends are inconclusive at the horizon");
    const StationaryMeasure m = stationary_measure(chain, dim, true);
    if (!m.warning.empty()) ctx.warn("classical-forced", m.warning);
    const StationaryMeasure e = embedded_stationary_measure(chain, dim);
    out["stationary"] = {{"levels", dim},
                         {"pi", real_list(m.pi)},
                         {"s_partial", number(m.s_partial)},
                         {"detailed_balance_residual", number(m.detailed_balance_residual)},
                         {"generator_residual", number(m.generator_residual)}};
    out["embedded_stationary"] = {{"pi", real_list(e.pi)}, {"residual", number(e.generator_residual)}};
    return out;
}

json consistency(ModelContext& ctx) {
    const ConsistencyReport r = quantum_classical_consistency(chain_of(ctx.config()), ctx.generator().dim(), ctx.tol());
    return {{"dim", r.dim},
            {"off_diagonal_mass", number(r.off_diagonal_mass)},
            {"max_population_error", number(r.max_population_error)},
            {"irreducible", r.irreducible},
            {"populations", real_list(r.populations)},
            {"pi", real_list(r.pi)}};
}

json convergence(ModelContext& ctx) {
    const auto gap = spectral_gap_value(ctx.eigenvalues(), ctx.tol());
    if (!gap) throw ValidationError("convergence bound needs a spectral gap", "convergence");
    const double c = ctx.config().convergence_c_fraction * *gap;
    const ConvergenceBound b = convergence_bound(ctx.generator(), c, ctx.tol(), ctx.config().seed);
    if (!b.verified) ctx.warn("convergence-unverified", "random-state check exceeded the bound");
    return {{"c", number(b.c)},
            {"C", number(b.C)},
            {"grid_max_t", number(b.grid_max_t)},
            {"grid_points", b.grid.size()},
            {"worst_ratio", number(b.worst_ratio)},
            {"verified", b.verified}};
}

}  // namespace

BuiltModel build_model(const AnalysisConfig& config) {
    BuiltModel out{GKLSSpec{Operator(HilbertSpace::abstract(1), Matrix::Zero(1, 1)), {}}, std::nullopt, json::object(), {}};
    if (const auto* p = std::get_if<TwoPhotonParams>(&config.model)) {
        out.spec = build_two_photon(*p);
        out.info["nu"] = number(p->nu());
        out.info["g_residual"] = number(two_photon_g_residual(*p));
        if (p->lambda > 0.0) {
            const double tail = std::pow(p->nu(), static_cast<double>(p->dim - 4));
            out.info["truncation_tail"] = number(tail);
            if (tail >= 1e-6)
                out.warnings.emplace_back("truncation", "nu^(dim-4) >= 1e-6: boundary artifacts may enlarge the invariant kernel");
        }
    } else if (const auto* g = std::get_if<GenericQMSParams>(&config.model)) {
        const GenericQMS m = build_generic_qms(*g);
        out.spec = m.spec;
        const DissipativityReport d = check_dissipativity(m.pair);
        out.info["boundary"] = to_string(g->boundary);
        out.info["dissipativity_max"] = number(d.max_value);
        out.info["markov_defect"] = number(d.markov_defect);
        if (!d.dissipative) out.warnings.emplace_back("dissipativity", "generator pair fails the dissipativity check");
        if (g->boundary == Boundary::absorbing_truncate)
            out.warnings.emplace_back("truncation", "absorbing-truncate boundary: the top level is an artificial trap");
    } else if (const auto* k = std::get_if<KPhotonParams>(&config.model)) {
        KPhotonModel m = build_k_photon(*k);
        out.spec = m.spec;
        out.info["truncation_mass"] = number(m.truncation_mass);
        out.info["coherent_residuals"] = real_list(m.residuals);
        double worst = 0.0;
        for (double r : m.residuals) worst = std::max(worst, r);
        if (worst > 1e-6) out.warnings.emplace_back("truncation", "truncated coherent vectors leave L-residual above 1e-6");
        out.k_photon = std::move(m);
    } else {
        const auto& c = std::get<CustomGKLSParams>(config.model);
        const auto space = HilbertSpace::abstract(c.dim);
        GKLSSpec spec{Operator(space, 0.5 * (c.hamiltonian + c.hamiltonian.adjoint())), {}};
        for (const auto& l : c.jumps) spec.jumps.emplace_back(space, l);
        spec.validate(false);
        out.spec = std::move(spec);
    }
    out.info["dim"] = out.spec.space().dim;
    out.info["jumps"] = out.spec.jumps.size();
    return out;
}

ModelContext::ModelContext(const AnalysisConfig& config) : ModelContext(config, build_model(config)) {}

ModelContext::ModelContext(const AnalysisConfig& config, BuiltModel built)
    : config_(config),
      spec_(std::move(built.spec)),
      gen_(build_schrodinger_generator(spec_)),
      k_photon_(std::move(built.k_photon)),
      info_(std::move(built.info)) {
    for (const auto& [code, message] : built.warnings) warn(code, message);
}

const std::vector<cplx>& ModelContext::eigenvalues() {
    if (!eigs_) eigs_ = qms::eigenvalues(gen_.matrix());
    return *eigs_;
}

const InvariantStateSet& ModelContext::states() {
    if (!states_) {
        states_ = invariant_states(gen_, tol());
        if (states_->canonical_state.leakage() > tol().psd_floor)
            warn("psd-leakage", "canonical invariant state needed a PSD projection");
        if (!states_->projection.semisimple_ok)
            warn("non-semisimple", "zero eigenvalue is not semisimple; generalized eigenspace used");
    }
    return *states_;
}

const Subspace& ModelContext::r_plus() {
    if (!r_plus_) r_plus_ = positive_recurrent_subspace(states(), tol());
    return *r_plus_;
}

void ModelContext::warn(const std::string& code, const std::string& message) {
    for (const auto& w : warnings_)
        if (w["code"] == code && w["message"] == message) return;
    warnings_.push_back({{"code", code}, {"message", message}});
}

Subspace ModelContext::resolve(const SubspaceChoice& choice) {
    switch (choice.kind) {
        case SubspaceChoice::Kind::zero: return Subspace::zero(gen_.space());
        case SubspaceChoice::Kind::full: return Subspace::full(gen_.space());
        case SubspaceChoice::Kind::r_plus: return r_plus();
        case SubspaceChoice::Kind::indices: return Subspace::coordinate(gen_.space(), choice.indices);
    }
    return r_plus();
}

json run_analysis(const std::string& name, ModelContext& ctx) {
    if (name == "spectrum") return spectrum(ctx);
    if (name == "r-plus") return r_plus(ctx);
    if (name == "ergodic-check") return ergodic_check(ctx);
    if (name == "rate") return rate(ctx);
    if (name == "decompose") return decompose(ctx);
    if (name == "nfd") return nfd_analysis(ctx);
    if (name == "gas") return gas(ctx);
    if (name == "evolve") return evolve_analysis(ctx);
    if (name == "classical") return classical(ctx);
    if (name == "consistency") return consistency(ctx);
    if (name == "convergence") return convergence(ctx);
    throw ValidationError("unknown analysis '" + name + "'", "analyses");
}

Matrix initial_state(const std::string& spec, Eigen::Index dim, std::uint64_t seed) {
    auto bad = [&] { return ValidationError("unknown state spec '" + spec + "'", "evolve.state"); };
    if (spec == "mixed") return Matrix::Identity(dim, dim) / static_cast<double>(dim);
    if (spec == "random") {
        std::uint64_t s = seed;
        return random_density(dim, s);
    }
    auto parse_index = [&](const std::string& text) {
        std::size_t used = 0;
        long long v = -1;
        try {
            v = std::stoll(text, &used);
        } catch (const std::exception&) {
            throw bad();
        }
        if (used != text.size() || v < 0 || v >= dim) throw bad();
        return static_cast<Eigen::Index>(v);
    };
    if (spec.rfind("fock:", 0) == 0) {
        const auto n = parse_index(spec.substr(5));
        Matrix m = Matrix::Zero(dim, dim);
        m(n, n) = 1.0;
        return m;
    }
    if (spec.rfind("unit:", 0) == 0) {
        const auto rest = spec.substr(5);
        const auto comma = rest.find(',');
        if (comma == std::string::npos) throw bad();
        const auto j = parse_index(rest.substr(0, comma));
        const auto k = parse_index(rest.substr(comma + 1));
        Matrix m = Matrix::Zero(dim, dim);
        m(j, k) = 1.0;
        return m;
    }
    throw bad();
}

EvolveTable evolve_table(ModelContext& ctx, const std::vector<double>& times, const std::string& state) {
    const auto d = ctx.generator().dim();
    const Matrix x0 = initial_state(state, d, ctx.config().seed);
    const bool lyapunov = ctx.k_photon().has_value();
    const bool generic = std::holds_alternative<GenericQMSParams>(ctx.config().model);

    EvolveTable table;
    table.columns = {"t", "trace_outside_r_plus"};
    if (lyapunov) table.columns.push_back("lyapunov_value");
    table.columns.push_back("distance_to_invariant");
    if (generic) table.columns.push_back("off_diagonal_norm");

    const Matrix transient = subspace_complement(ctx.r_plus()).basis();
    const Matrix limit = ctx.states().projection.apply(x0);
    const auto series = evolve_series(ctx.generator(), x0, times);
    for (std::size_t i = 0; i < times.size(); ++i) {
        const Matrix& x = series[i];
        std::vector<double> row{times[i], (transient.adjoint() * x * transient).trace().real()};
        if (lyapunov) row.push_back(lyapunov_value(ctx.spec(), x));
        row.push_back(trace_norm(x - limit));
        if (generic) row.push_back(off_diagonal_norm(x));
        table.rows.push_back(std::move(row));
    }
    return table;
}

std::string to_csv(const EvolveTable& table) {
    std::ostringstream out;
    for (std::size_t i = 0; i < table.columns.size(); ++i) out << (i ? "," : "") << table.columns[i];
    out << "\n";
    char buf[40];
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            std::snprintf(buf, sizeof buf, "%.17g", row[i]);
            out << (i ? "," : "") << buf;
        }
        out << "\n";
    }
    return out.str();
}

}  // namespace qms::cli
