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

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "qms/classical.hpp"
#include "qms/cli/commands.hpp"
#include "qms/cli/config.hpp"
#include "qms/models.hpp"
#include "qms/spectral.hpp"
#include "qms/structure.hpp"

using namespace qms;
using namespace qms::testing;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

double largest_angle_sine(const Matrix& a, const Matrix& b) {
    const Matrix qa = orthonormalize(a), qb = orthonormalize(b);
    if (qa.cols() != qb.cols()) return 1.0;
    const Matrix residual = qa - qb * (qb.adjoint() * qa);
    return spectral_norm(residual);
}

const TwoPhotonParams kTwoPhoton{0.5, 1.0, 1.0, 24};

const Superoperator& two_photon_24() {
    static const Superoperator gen = build_schrodinger_generator(build_two_photon(kTwoPhoton));
    return gen;
}

Outcome cptp_suite() {
    std::mt19937_64 rng(1001);
    const Eigen::Index dims[] = {2, 3, 4, 6};
    double worst_trace = 0.0, worst_choi = 0.0, worst_law = 0.0;
    for (int m = 0; m < 25; ++m) {
        const auto s = build_schrodinger_generator(random_gkls(dims[m % 4], 1 + m % 3, rng));
        std::vector<Matrix> phi;
        for (double t : {0.1, 1.0, 5.0}) {
            const auto ch = channel_at(s, t);
            const auto r = verify_cptp(ch);
            worst_trace = std::max(worst_trace, r.trace_dev);
            worst_choi = std::min(worst_choi, r.choi_min_eig);
            phi.push_back(ch.matrix());
        }
        const double ts[] = {0.1, 1.0, 5.0};
        for (int i = 0; i < 3; ++i)
            for (int j = i; j < 3; ++j) {
                const Matrix joint = matrix_exponential(s.matrix(), ts[i] + ts[j]);
                worst_law = std::max(worst_law, spectral_norm(joint - phi[i] * phi[j]));
            }
    }
    return {worst_trace <= 1e-8 && worst_choi >= -1e-9 && worst_law <= 1e-9,
            "trace dev " + fmt("%.2e", worst_trace) + ", choi min " + fmt("%.2e", worst_choi) +
                ", semigroup residual " + fmt("%.2e", worst_law)};
}

Outcome ergodic_oracle() {
    std::mt19937_64 rng(1002);
    double worst = 0.0, worst_predicted = 0.0;
    for (int m = 0; m < 10; ++m) {
        const auto s = build_schrodinger_generator(random_gkls(3, 1 + m % 3, rng));
        const auto e = ergodic_projection(s);
        const Matrix rho = random_state(3, rng);
        const double horizon = 200.0;
        const Matrix cesaro = cesaro_mean(s, rho, horizon, 20000);
        worst = std::max(worst, (cesaro - e.apply(rho)).norm());
        // exact finite-horizon offset: L^D (e^{TL} − I) vec(ρ) / T
        const Matrix drazin = (s.matrix() + e.matrix).inverse() - e.matrix;
        const Vector offset =
            drazin * (matrix_exponential(s.matrix(), horizon) - Matrix::Identity(9, 9)) * vec(rho) / horizon;
        worst_predicted = std::max(worst_predicted, offset.norm());
    }
    return {worst <= 1e-4, "max |cesaro(T=200) - E| " + fmt("%.2e", worst) + " (finite-horizon offset " +
                               fmt("%.2e", worst_predicted) + ")"};
}

Outcome two_photon_positive() {
    const auto& gen = two_photon_24();
    const auto inv = invariant_states(gen);
    const auto ref = two_photon_reference_states(kTwoPhoton);
    Matrix kernel(gen.dim() * gen.dim(), static_cast<Eigen::Index>(inv.kernel_basis.size()));
    for (std::size_t i = 0; i < inv.kernel_basis.size(); ++i) kernel.col(static_cast<Eigen::Index>(i)) = vec(inv.kernel_basis[i]);
    Matrix refs(gen.dim() * gen.dim(), 2);
    refs.col(0) = vec(ref.rho_e.matrix());
    refs.col(1) = vec(ref.rho_o.matrix());
    const double distance = largest_angle_sine(kernel, refs);

    const auto dec = minimal_enclosures(gen);
    std::vector<Eigen::Index> even, odd;
    for (Eigen::Index i = 0; i < gen.dim(); ++i) (i % 2 ? odd : even).push_back(i);
    const Matrix pe = Subspace::coordinate(gen.space(), even).projector();
    const Matrix po = Subspace::coordinate(gen.space(), odd).projector();
    bool blocks = dec.alpha_blocks.size() == 2 && dec.beta_blocks.empty();
    double block_err = 1.0;
    if (blocks) {
        const Matrix& a = dec.alpha_blocks[0].projector();
        const Matrix& b = dec.alpha_blocks[1].projector();
        block_err = std::min(std::max((a - pe).norm(), (b - po).norm()), std::max((a - po).norm(), (b - pe).norm()));
        blocks = block_err <= 1e-8;
    }
    return {inv.kernel_basis.size() == 2 && distance <= 1e-6 && blocks,
            "kernel dim " + std::to_string(inv.kernel_basis.size()) + ", span distance " + fmt("%.2e", distance) +
                ", alpha blocks " + std::to_string(dec.alpha_blocks.size()) + " (projector error " +
                fmt("%.2e", block_err) + ")"};
}

Outcome two_photon_zero() {
    const TwoPhotonParams p{0.0, 1.0, 2.0, 12};
    const auto gen = build_schrodinger_generator(build_two_photon(p));
    const auto d = gen.dim();
    const auto rp = positive_recurrent_subspace(gen);
    const double rp_err = (rp.projector() - Subspace::coordinate(gen.space(), {0, 1}).projector()).norm();
    const auto erg = check_ergodic(gen);

    const auto cert = rate_certificate(gen, default_t0_grid(gen));
    double slack = 0.0;
    if (cert.valid) {
        const auto heis = adjoint(gen);
        const Matrix outside = Matrix::Identity(d, d) - rp.projector();
        std::vector<double> grid;
        for (int i = 0; i <= 60; ++i) grid.push_back(cert.t0 * 20.0 * i / 60.0);
        const auto series = evolve_series(heis, outside, grid);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const double bound = std::pow(cert.kappa, std::floor(grid[i] / cert.t0 + 1e-12));
            const Matrix excess = bound * outside - series[i];
            slack = std::max(slack, -hermitian_eigenvalues(0.5 * (excess + excess.adjoint())).minCoeff());
        }
    }

    const auto fp = two_photon_fixed_point(1.0, 0.0, 0.0, 0.0, p);
    const auto heis = build_heisenberg_generator(build_two_photon(p));
    const Matrix la = heis.apply(fp.op.matrix());
    const double interior = la.topLeftCorner(d - 2, d - 2).norm();
    const Matrix& a = fp.op.matrix();
    const bool witness = std::abs(a(0, 0) - 1.0) < 1e-12 && a.bottomRightCorner(d - 2, d - 2).norm() > 0.1;
    const bool zero_seed = two_photon_fixed_point(0.0, 0.0, 0.0, 0.0, p).op.matrix().norm() == 0.0;

    const bool pass = rp_err <= 1e-8 && erg.attractive && erg.deviation <= 1e-6 && cert.valid && cert.kappa < 1.0 &&
                      slack <= 1e-7 && interior <= 1e-8 && witness && zero_seed;
    return {pass, "R+ error " + fmt("%.1e", rp_err) + ", ergodic deviation " + fmt("%.1e", erg.deviation) +
                      ", kappa " + fmt("%.3e", cert.kappa) + " at t0 " + fmt("%.3g", cert.t0) + ", bound slack " +
                      fmt("%.1e", slack) + ", |L(A)| interior " + fmt("%.1e", interior) +
                      (witness && zero_seed ? ", separation witnessed" : ", separation NOT witnessed")};
}

Outcome k_photon() {
    const auto model = build_k_photon({2, 1.0, 25});
    const auto gen = build_schrodinger_generator(model.spec);
    const auto rp = positive_recurrent_subspace(gen);
    const double angle = largest_angle_sine(rp.basis(), model.kernel_basis);

    std::vector<double> times;
    for (int i = 0; i <= 50; ++i) times.push_back(0.2 * i);
    std::mt19937_64 rng(1005);
    double worst_rise = 0.0;
    for (int k = 0; k < 5; ++k) {
        const auto series = lyapunov_series(model.spec, random_state(25, rng), times);
        for (std::size_t i = 1; i < series.size(); ++i) worst_rise = std::max(worst_rise, series[i] - series[i - 1]);
    }
    const auto erg = check_ergodic(gen);
    return {rp.dim() == 2 && angle <= 1e-5 && worst_rise <= 1e-9 && erg.deviation <= 1e-6,
            "R+ dim " + std::to_string(rp.dim()) + ", principal angle " + fmt("%.1e", angle) +
                ", worst Lyapunov increase " + fmt("%.1e", worst_rise) + ", |A(R+) - I| " +
                fmt("%.1e", erg.deviation)};
}

Outcome generic_bridge() {
    const auto chain = BirthDeathChain::constant(1.0, 2.0, 10000);
    const Eigen::Index d = 15;
    const auto report = quantum_classical_consistency(chain, d);
    const auto q = build_generic_qms(generic_qms_params(chain, d));
    const auto gen = build_schrodinger_generator(q.spec);
    const auto heis = build_from_generator_pair(q.pair);

    std::vector<double> times;
    for (int i = 1; i <= 10; ++i) times.push_back(0.5 * i);
    const auto series = evolve_series(heis, unit(d, 0, 1), times);
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < times.size(); ++i) {
        const double y = std::log(series[i].norm());
        sx += times[i], sy += y, sxx += times[i] * times[i], sxy += times[i] * y;
    }
    const double n = static_cast<double>(times.size());
    const double rate = -(n * sxy - sx * sy) / (n * sxx - sx * sx);

    const bool irreducible = is_irreducible(gen);
    const bool p1 = is_primitive(gen, 0.5), p2 = is_primitive(gen, 1.3);
    return {report.max_population_error <= 1e-8 && rate > 0.0 && irreducible && p1 && p2,
            "max |rho_nn - pi(n)| " + fmt("%.1e", report.max_population_error) + ", off-diagonal decay rate " +
                fmt("%.4f", rate) + ", irreducible " + (irreducible ? "yes" : "no") + ", primitive at 0.5/1.3 " +
                (p1 ? "yes" : "no") + "/" + (p2 ? "yes" : "no")};
}

Outcome spectral_module() {
    const auto gen = build_schrodinger_generator(amplitude_damping(1.0));
    const auto r = spectral_gap(gen);
    const double expected[] = {0.0, -0.5, -0.5, -1.0};
    double eig_err = 0.0;
    for (int i = 0; i < 4; ++i) eig_err = std::max(eig_err, std::abs(r.eigenvalues[i] - cplx(expected[i])));

    const double c = *r.gap / 2.0;
    const auto b = convergence_bound(gen, c);
    const Matrix rho_inf = invariant_states(gen).canonical_state.matrix();
    std::mt19937_64 rng(1007);
    double worst = 0.0;
    for (int k = 0; k < 20; ++k) {
        const auto series = evolve_series(gen, random_state(2, rng), b.grid);
        for (std::size_t i = 0; i < b.grid.size(); ++i)
            worst = std::max(worst, trace_norm(series[i] - rho_inf) / (b.C * std::exp(-c * b.grid[i])));
    }
    return {eig_err <= 1e-10 && b.grid.size() == 40 && worst <= 1.0,
            "eigenvalue error " + fmt("%.1e", eig_err) + ", C " + fmt("%.4f", b.C) + " at c " + fmt("%.3f", c) +
                ", worst ratio " + fmt("%.3f", worst) + " on " + std::to_string(b.grid.size()) + " points"};
}

Outcome nfd_cascade() {
    const auto gen = build_schrodinger_generator(cascade_model(0.5, 1.5));
    const auto& space = gen.space();
    const auto channel = channel_at(gen, 1.0);
    const auto rp = positive_recurrent_subspace(gen);
    bool ok = true;
    std::string detail;
    for (const auto& [name, seed] : std::vector<std::pair<std::string, Subspace>>{
             {"e0", Subspace::coordinate(space, {0})}, {"R+", rp}, {"full", Subspace::full(space)}}) {
        const auto r = nfd(channel, seed);
        Subspace current = seed;
        std::string sigmas;
        for (std::size_t i = 0; i < r.stages.size(); ++i) {
            if (i > 0 && !(r.stages[i].sigma < r.stages[i - 1].sigma)) ok = false;
            const bool spectral_gas = r.stages[i].sigma < 1.0 - 1e-9;
            if (is_gas(gen, current).is_gas != spectral_gas) ok = false;
            if ((i == r.gas_stage) != (spectral_gas && (i == 0 || r.stages[i - 1].sigma >= 1.0 - 1e-9))) ok = false;
            current = r.stages[i].cumulative_s;
            sigmas += (i ? "," : "") + fmt("%.4f", r.stages[i].sigma);
        }
        if (!current.is_full() || !is_gas(gen, current).is_gas) ok = false;
        detail += (detail.empty() ? "" : "; ") + name + ": sigma [" + sigmas + "]";
    }
    return {ok, detail};
}

Outcome block_limit() {
    const auto& gen = two_photon_24();
    const auto dec = minimal_enclosures(gen);
    const auto d = gen.dim();
    const DensityMatrix rho(gen.space(), Matrix::Identity(d, d) / static_cast<double>(d));
    const auto limit = block_diagonal_limit(gen, rho, dec);
    const auto gap = spectral_gap(gen).gap;
    if (!gap) return {false, "no spectral gap"};
    const double t = 50.0 / *gap;
    const double dist = trace_norm(evolve(gen, rho.matrix(), t) - limit.matrix());
    return {dist <= 1e-4, "trace distance " + fmt("%.2e", dist) + " at t = " + fmt("%.1f", t)};
}

int run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "qmsergo");
    std::vector<char*> argv;
    for (auto& a : args) argv.push_back(a.data());
    return qms::cli::run(static_cast<int>(argv.size()), argv.data());
}

Outcome determinism() {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "qmsergo_acceptance";
    fs::create_directories(dir);
    const fs::path cfg = dir / "config.json";
    std::ofstream(cfg) << R"({"model": {"two-photon": {"lambda": 0, "mu": 1, "omega": 2, "dim": 12}},
 "analyses": ["spectrum", "r-plus", "rate", "decompose", "nfd", "gas", "evolve"], "seed": 77})";
    std::vector<std::string> bodies;
    int codes = 0;
    for (int run = 0; run < 3; ++run) {
        const fs::path out = dir / ("report_" + std::to_string(run) + ".json");
        codes += run_cli({"analyze", "--config", cfg.string(), "--out", out.string()});
        std::ifstream in(out);
        std::stringstream ss;
        ss << in.rdbuf();
        auto doc = qms::cli::json::parse(ss.str());
        doc.erase("timestamp");
        bodies.push_back(doc.dump());
    }
    const bool same = bodies[0] == bodies[1] && bodies[1] == bodies[2];
    return {codes == 0 && same, std::string("3 runs, reports ") + (same ? "identical" : "DIFFER") +
                                    " modulo timestamp, exit codes sum " + std::to_string(codes)};
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        std::function<Outcome()> check;
        double budget_s;
    };
    const std::vector<Criterion> criteria = {
        {1, "CPTP suite", cptp_suite, 30.0},
        {2, "ergodic projection vs Cesaro oracle", ergodic_oracle, 60.0},
        {3, "two-photon lambda>0 invariant states and blocks", two_photon_positive, 300.0},
        {4, "two-photon lambda=0 R+, ergodicity, rate, fixed points", two_photon_zero, 0.0},
        {5, "k-photon R+, Lyapunov, absorption", k_photon, 0.0},
        {6, "generic QMS / birth-death bridge", generic_bridge, 0.0},
        {7, "amplitude damping spectrum and convergence bound", spectral_module, 0.0},
        {8, "NFD monotonicity and GAS agreement", nfd_cascade, 0.0},
        {9, "block-diagonal limit", block_limit, 0.0},
        {10, "report determinism", determinism, 0.0},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.check();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (c.budget_s > 0.0 && secs > c.budget_s) {
            o.pass = false;
            o.detail += ", over time budget";
        }
        if (!o.pass) ++failures;
        std::printf("%s acceptance-%d %s: %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(),
                    secs);
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
