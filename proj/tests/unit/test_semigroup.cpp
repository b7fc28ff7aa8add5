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

#include <random>

#include "helpers.hpp"
#include "qms/models.hpp"
#include "qms/semigroup.hpp"

using namespace qms;
using namespace qms::testing;

namespace {

// Fine explicit RK4 integration, used as an independent time-stepping oracle.
Matrix rk4(const Superoperator& gen, const Matrix& x, double t, int steps) {
    const double h = t / steps;
    Vector v = vec(x);
    const Matrix& m = gen.matrix();
    for (int i = 0; i < steps; ++i) {
        const Vector k1 = m * v;
        const Vector k2 = m * (v + 0.5 * h * k1);
        const Vector k3 = m * (v + 0.5 * h * k2);
        const Vector k4 = m * (v + h * k3);
        v += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return unvec(v, gen.dim());
}

}  // namespace

TEST_CASE("evolve at t = 0 and unitality") {
    std::mt19937_64 rng(31);
    const auto spec = random_gkls(3, 2, rng);
    const auto s = build_schrodinger_generator(spec);
    const Matrix x = gaussian_matrix(3, 3, rng);
    CHECK((evolve(s, x, 0.0) - x).norm() < 1e-14);
    const auto h = build_heisenberg_generator(spec);
    for (double t : {0.3, 2.0, 10.0}) CHECK((evolve(h, Matrix::Identity(3, 3), t) - Matrix::Identity(3, 3)).norm() < 1e-10);
    CHECK_THROWS_AS(evolve(s, x, -1.0), ValidationError);
}

TEST_CASE("amplitude damping excited population decays as exp(-gamma t)") {
    const double gamma = 0.7;
    const auto s = build_schrodinger_generator(amplitude_damping(gamma));
    for (double t : {0.1, 1.0, 3.5}) {
        const Matrix r = evolve(s, unit(2, 1, 1), t);
        CHECK(std::abs(r(1, 1).real() - std::exp(-gamma * t)) < 1e-13);
        CHECK((r - rk4(s, unit(2, 1, 1), t, 2000)).norm() < 1e-10);
    }
}

TEST_CASE("evolve obeys the semigroup law") {
    std::mt19937_64 rng(32);
    for (int trial = 0; trial < 5; ++trial) {
        const auto s = build_schrodinger_generator(random_gkls(3, 2, rng));
        const Matrix x = random_state(3, rng);
        const double a = 0.4 + trial, b = 1.3;
        CHECK((evolve(s, x, a + b) - evolve(s, evolve(s, x, a), b)).norm() <= 1e-9);
    }
}

TEST_CASE("cesaro mean examples") {
    const auto space = HilbertSpace::abstract(2);
    const auto zero = Superoperator::generator(space, Matrix::Zero(4, 4), Picture::heisenberg);
    std::mt19937_64 rng(33);
    const Matrix x = gaussian_matrix(2, 2, rng);
    CHECK((cesaro_mean(zero, x, 3.0, 10) - x).norm() < 1e-14);

    Matrix h = Matrix::Zero(2, 2);
    h(1, 1) = 1.0;
    const auto comm = build_schrodinger_generator({Operator(space, h), {}});
    const Matrix avg = cesaro_mean(comm, unit(2, 0, 1), 200.0, 20000);
    CHECK(avg.norm() < 2.0 / 200.0);

    const auto heis = build_heisenberg_generator(random_gkls(2, 1, rng));
    CHECK((cesaro_mean(heis, Matrix::Identity(2, 2), 5.0, 50) - Matrix::Identity(2, 2)).norm() < 1e-10);

    CHECK_THROWS_AS(cesaro_mean(comm, x, 0.0, 10), ValidationError);
    CHECK_THROWS_AS(cesaro_mean(comm, x, 1.0, 1), ValidationError);
}

TEST_CASE("ergodic projection examples") {
    const auto space = HilbertSpace::abstract(2);
    const auto zero = Superoperator::generator(space, Matrix::Zero(4, 4), Picture::schrodinger);
    const auto ez = ergodic_projection(zero);
    CHECK(ez.rank == 4);
    CHECK((ez.matrix - Matrix::Identity(4, 4)).norm() < 1e-12);

    const auto ad = build_schrodinger_generator(amplitude_damping(1.0));
    const auto e = ergodic_projection(ad);
    CHECK(e.rank == 1);
    CHECK(e.semisimple_ok);
    // E*(ρ) = tr(ρ)|e0⟩⟨e0|
    Matrix expected = Matrix::Zero(4, 4);
    expected(0, 0) = 1.0;
    expected(0, 3) = 1.0;
    CHECK((e.matrix - expected).norm() < 1e-12);

    for (double t : {0.5, 2.0}) {
        const Matrix phi = matrix_exponential(ad.matrix(), t);
        CHECK((e.matrix * phi - e.matrix).norm() < 1e-10);
        CHECK((phi * e.matrix - e.matrix).norm() < 1e-10);
    }
}

TEST_CASE("ergodic projection is idempotent and lands in the kernel") {
    std::mt19937_64 rng(34);
    for (int trial = 0; trial < 5; ++trial) {
        const auto s = build_schrodinger_generator(random_gkls(3, 1 + trial % 2, rng));
        const auto e = ergodic_projection(s);
        CHECK((e.matrix * e.matrix - e.matrix).norm() <= 1e-8);
        CHECK((s.matrix() * e.matrix).norm() <= 1e-8);
        const Matrix rho = random_state(3, rng);
        CHECK((s.matrix() * vec(e.apply(rho))).norm() <= 1e-8);
    }
}

TEST_CASE("cesaro bias equals the Drazin-inverse identity") {
    // (1/T)∫₀ᵀ e^{sL} ds − E = L^D (e^{TL} − I)/T with L^D = (L + E)⁻¹ − E.
    std::mt19937_64 rng(35);
    for (int trial = 0; trial < 5; ++trial) {
        const auto s = build_schrodinger_generator(random_gkls(3, 2, rng));
        const auto e = ergodic_projection(s);
        const Matrix& l = s.matrix();
        const Matrix drazin = (l + e.matrix).inverse() - e.matrix;
        const double horizon = 200.0;
        const Matrix x = gaussian_matrix(3, 3, rng);
        const Matrix predicted =
            unvec(drazin * (matrix_exponential(l, horizon) - Matrix::Identity(9, 9)) * vec(x) / horizon, 3);
        const Matrix observed = cesaro_mean(s, x, horizon, 40000) - e.apply(x);
        CHECK((observed - predicted).norm() <= 1e-6 * std::max(1.0, x.norm()));
    }
}

TEST_CASE("invariant states examples") {
    const auto ad = invariant_states(build_schrodinger_generator(amplitude_damping(1.0)));
    CHECK(ad.kernel_basis.size() == 1);
    CHECK((ad.canonical_state.matrix() - unit(2, 0, 0)).norm() < 1e-10);

    const auto space = HilbertSpace::abstract(2);
    const auto z = invariant_states(Superoperator::generator(space, Matrix::Zero(4, 4), Picture::schrodinger));
    CHECK(z.kernel_basis.size() == 4);
    CHECK((z.canonical_state.matrix() - 0.5 * Matrix::Identity(2, 2)).norm() < 1e-12);
}

TEST_CASE("two-photon kernel contains the truncated even and odd states") {
    const TwoPhotonParams p{0.5, 1.0, 1.0, 20};
    const auto s = build_schrodinger_generator(build_two_photon(p));
    const auto inv = invariant_states(s);
    CHECK(inv.kernel_basis.size() == 2);
    const auto ref = two_photon_reference_states(p);
    for (const DensityMatrix* r : {&ref.rho_e, &ref.rho_o}) CHECK((s.apply(r->matrix())).norm() < 1e-8);
    for (const Matrix& k : inv.kernel_basis) {
        // each kernel element lies in span{ρ_e, ρ_o}
        Matrix b(400, 2);
        b.col(0) = vec(ref.rho_e.matrix());
        b.col(1) = vec(ref.rho_o.matrix());
        const Vector kv = vec(k);
        const Vector coeff = b.colPivHouseholderQr().solve(kv);
        CHECK((b * coeff - kv).norm() <= 1e-8 * kv.norm());
    }
}

TEST_CASE("canonical state has maximal support and invariance") {
    std::mt19937_64 rng(36);
    const auto s = build_schrodinger_generator(random_gkls(4, 1, rng));
    const auto inv = invariant_states(s);
    CHECK((s.apply(inv.canonical_state.matrix())).norm() <= 1e-8);
    const auto support = support_projection(s.space(), inv.canonical_state.matrix());
    for (const Matrix& k : inv.kernel_basis) {
        const Matrix herm = 0.5 * (k + k.adjoint());
        const Matrix outside = (Matrix::Identity(4, 4) - support.projector()) * herm;
        CHECK(outside.norm() <= 1e-7 * std::max(1.0, herm.norm()));
    }
    // amplitude damping: the canonical state is pure
    const auto ad = build_schrodinger_generator(amplitude_damping(2.0));
    CHECK(support_projection(ad.space(), invariant_states(ad).canonical_state.matrix()).dim() == 1);
}
