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

#include "qms/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

namespace qms {

namespace {

std::vector<cplx> sorted_by_real(std::vector<cplx> eigs) {
    std::stable_sort(eigs.begin(), eigs.end(), [](cplx a, cplx b) {
        if (a.real() != b.real()) return a.real() > b.real();
        return a.imag() > b.imag();
    });
    return eigs;
}

double trace_distance_to(const Matrix& a, const Matrix& b) {
    return hermitian_eigenvalues(0.5 * ((a - b) + (a - b).adjoint())).cwiseAbs().sum();
}

}  // namespace

Matrix random_density(Eigen::Index d, std::uint64_t& state) {
    std::mt19937_64 rng(state++);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Matrix g(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j) g(i, j) = cplx(gauss(rng), gauss(rng));
    Matrix rho = g * g.adjoint();
    return rho / rho.trace().real();
}

std::optional<double> spectral_gap_value(const std::vector<cplx>& eigs, const Tolerances& tol) {
    std::optional<double> best;
    for (const cplx& l : eigs)
        if (l.real() < -tol.zero_band && (!best || -l.real() < *best)) best = -l.real();
    return best;
}

bool is_irreducible(const InvariantStateSet& states, const Tolerances& tol) {
    if (states.kernel_basis.size() != 1) return false;
    const RealVector w = hermitian_eigenvalues(states.canonical_state.matrix());
    return w.minCoeff() > tol.nullspace_rel * w.maxCoeff();
}

bool is_irreducible(const Superoperator& gen, const Tolerances& tol) {
    return is_irreducible(invariant_states(gen, tol), tol);
}

bool is_primitive(const Superoperator& gen, double t, const Tolerances& tol) {
    if (!(t > 0.0) || !std::isfinite(t)) throw ValidationError("is_primitive: t must be positive", "t");
    if (!gen.is_generator()) throw ValidationError("is_primitive expects a generator");
    const auto eigs = eigenvalues(matrix_exponential(gen.matrix(), t));
    Eigen::Index peripheral = 0;
    for (const cplx& l : eigs)
        if (std::abs(l) >= 1.0 - tol.peripheral_band) ++peripheral;
    if (peripheral != 1) return false;
    return is_irreducible(gen, tol);
}

SpectralReport spectral_gap(const Superoperator& gen, const Tolerances& tol) {
    if (!gen.is_generator()) throw ValidationError("spectral_gap expects a generator");
    SpectralReport out;
    out.eigenvalues = sorted_by_real(eigenvalues(gen.matrix()));
    out.zero_multiplicity = zero_multiplicity(out.eigenvalues, tol);
    for (const cplx& l : out.eigenvalues)
        if (l.real() < -tol.zero_band) {
            out.lambda2 = l;
            out.gap = -l.real();
            break;
        }
    const InvariantStateSet states = invariant_states(gen, tol);
    out.irreducible = is_irreducible(states, tol);
    // exp(t·L) has |e^{tλ}| = 1 exactly on the imaginary axis, so the
    // peripheral count is read off the generator spectrum at t = 1.
    Eigen::Index peripheral = 0;
    for (const cplx& l : out.eigenvalues)
        if (std::exp(l.real()) >= 1.0 - tol.peripheral_band) ++peripheral;
    out.primitive = out.irreducible && peripheral == 1;
    return out;
}

ConvergenceBound convergence_bound(const Superoperator& gen, double c, const Tolerances& tol,
                                   std::uint64_t seed) {
    const Superoperator schr = to_schrodinger(gen);
    const auto eigs = eigenvalues(schr.matrix());
    const auto gap = spectral_gap_value(eigs, tol);
    if (!gap) throw ValidationError("convergence_bound: generator has no spectral gap", "c");
    if (!(c > 0.0) || !(c < *gap))
        throw ValidationError("convergence_bound: c must lie in (0, gap = " + std::to_string(*gap) + ")", "c");
    // Mixing suffices: a simple zero eigenvalue and nothing else on the imaginary axis.
    const bool peripheral_free = std::none_of(eigs.begin(), eigs.end(), [&](cplx e) {
        return std::abs(e.real()) <= tol.peripheral_band && std::abs(e.imag()) > tol.zero_band;
    });
    if (zero_multiplicity(eigs, tol) != 1 || !peripheral_free)
        throw ValidationError("convergence_bound requires a unique invariant state and no peripheral spectrum");

    const auto d = schr.dim();
    const double root_d = std::sqrt(static_cast<double>(d));
    const ErgodicProjection limit = ergodic_projection(schr, eigs, tol);
    const InvariantStateSet states = invariant_states(schr, tol);
    const Matrix& rho_inf = states.canonical_state.matrix();

    ConvergenceBound out;
    out.c = c;
    std::vector<Matrix> propagators;

    double hi = 10.0 / *gap;
    const double lo = 0.01 / *gap;
    for (int attempt = 0;; ++attempt) {
        out.grid = {0.0};
        const double ratio = std::pow(hi / lo, 1.0 / 38.0);
        for (int i = 0; i < 39; ++i) out.grid.push_back(i == 38 ? hi : lo * std::pow(ratio, i));
        propagators.clear();
        double running = 0.0;
        int below = 0;
        for (double t : out.grid) {
            propagators.push_back(matrix_exponential(schr.matrix(), t));
            const double v = std::exp(c * t) * root_d * spectral_norm(propagators.back() - limit.matrix);
            below = v < running ? below + 1 : 0;
            running = std::max(running, v);
        }
        out.C = running;
        if (below >= 10 || attempt == 8) break;
        hi *= 2.0;
    }
    out.grid_max_t = out.grid.back();

    std::uint64_t state = seed;
    for (int k = 0; k < 20; ++k) {
        const Matrix rho0 = random_density(d, state);
        const Vector v0 = vec(rho0);
        for (std::size_t i = 0; i < propagators.size(); ++i) {
            const double bound = out.C * std::exp(-c * out.grid[i]);
            const double dist = trace_distance_to(unvec(propagators[i] * v0, d), rho_inf);
            out.worst_ratio = std::max(out.worst_ratio, dist / bound);
        }
    }
    out.verified = out.worst_ratio <= 1.0;
    return out;
}

}  // namespace qms
