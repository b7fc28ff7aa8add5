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
#include "qms/operators.hpp"

using namespace qms;
using namespace qms::testing;

namespace {

Matrix diag(std::initializer_list<double> values) {
    Matrix m = Matrix::Zero(static_cast<Eigen::Index>(values.size()), static_cast<Eigen::Index>(values.size()));
    Eigen::Index i = 0;
    for (double v : values) m(i, i) = v, ++i;
    return m;
}

void check_projector(const Subspace& s) {
    const Matrix& p = s.projector();
    CHECK((p * p - p).norm() <= 1e-9);
    CHECK((p - p.adjoint()).norm() <= 1e-9);
    CHECK(std::abs(p.trace().real() - static_cast<double>(s.dim())) <= 1e-9);
    CHECK((s.basis().adjoint() * s.basis() - Matrix::Identity(s.dim(), s.dim())).norm() <= 1e-10);
}

}  // namespace

TEST_CASE("fock operators at small dimension") {
    const auto f2 = fock_operators(2);
    Matrix a2 = Matrix::Zero(2, 2);
    a2(0, 1) = 1.0;
    CHECK((f2.a.matrix() - a2).norm() == doctest::Approx(0.0));

    const auto f4 = fock_operators(4);
    CHECK((f4.n_op.matrix() - diag({0, 1, 2, 3})).norm() < 1e-14);
    CHECK((f4.a_dag.matrix() - f4.a.matrix().adjoint()).norm() == doctest::Approx(0.0));
    CHECK(f4.a.space().kind == SpaceKind::truncated_fock);

    CHECK_THROWS_AS(fock_operators(1), ValidationError);
}

TEST_CASE("fock commutator is the identity up to the truncation corner") {
    for (Eigen::Index d : {2, 5, 9, 16}) {
        const auto f = fock_operators(d);
        const Matrix& a = f.a.matrix();
        Matrix expected = Matrix::Identity(d, d);
        expected(d - 1, d - 1) -= static_cast<double>(d);
        CHECK((a * a.adjoint() - a.adjoint() * a - expected).norm() < 1e-12);
        for (Eigen::Index n = 1; n < d; ++n)
            CHECK(std::abs(a(n - 1, n) - std::sqrt(static_cast<double>(n))) < 1e-14);
    }
}

TEST_CASE("support projection examples") {
    const auto space = HilbertSpace::abstract(3);
    CHECK(support_projection(space, Matrix::Identity(3, 3)).is_full());
    const auto e0 = support_projection(space, unit(3, 0, 0));
    CHECK(e0.dim() == 1);
    CHECK(std::abs(e0.projector()(0, 0) - 1.0) < 1e-12);
    const auto tiny = support_projection(space, diag({0.5, 1e-15, 0.0}));
    CHECK(tiny.dim() == 1);
    CHECK(support_projection(space, Matrix::Zero(3, 3)).is_zero());

    Matrix nonherm = Matrix::Zero(3, 3);
    nonherm(0, 1) = 1.0;
    CHECK_THROWS_AS(support_projection(space, nonherm), ValidationError);
}

TEST_CASE("support projection dimension counts eigenvalues above the relative threshold") {
    std::mt19937_64 rng(11);
    const auto space = HilbertSpace::abstract(6);
    for (int rank = 1; rank <= 6; ++rank) {
        const Matrix g = gaussian_matrix(6, rank, rng);
        const auto s = support_projection(space, g * g.adjoint());
        CHECK(s.dim() == rank);
        check_projector(s);
    }
}

TEST_CASE("complement, sum, intersection and containment") {
    const auto space = HilbertSpace::abstract(3);
    const auto e0 = Subspace::coordinate(space, {0});
    const auto e01 = Subspace::coordinate(space, {0, 1});

    const auto c = subspace_complement(e0);
    CHECK(c.dim() == 2);
    CHECK((c.projector() - diag({0, 1, 1})).norm() < 1e-12);

    const auto s = subspace_sum(e0, e01);
    CHECK(s.dim() == 2);
    CHECK((s.projector() - e01.projector()).norm() < 1e-12);

    const auto full = Subspace::full(space);
    CHECK(subspace_contains(full, e01));
    CHECK(subspace_contains(full, Subspace::zero(space)));
    CHECK(subspace_contains(e01, e0));
    CHECK_FALSE(subspace_contains(e0, e01));

    const auto e12 = Subspace::coordinate(space, {1, 2});
    const auto i = subspace_intersection(e01, e12);
    CHECK(i.dim() == 1);
    CHECK(std::abs(i.projector()(1, 1) - 1.0) < 1e-12);

    CHECK_THROWS_AS(subspace_sum(e0, Subspace::full(HilbertSpace::abstract(4))), ValidationError);
}

TEST_CASE("constructed subspaces are orthogonal projectors") {
    std::mt19937_64 rng(12);
    const auto space = HilbertSpace::abstract(7);
    for (int trial = 0; trial < 10; ++trial) {
        const auto v = Subspace::span(space, gaussian_matrix(7, 1 + trial % 4, rng));
        const auto w = Subspace::span(space, gaussian_matrix(7, 1 + trial % 3, rng));
        check_projector(v);
        check_projector(subspace_complement(v));
        check_projector(subspace_sum(v, w));
        check_projector(subspace_intersection(subspace_sum(v, w), v));
        CHECK(principal_angle_sine(subspace_intersection(subspace_sum(v, w), v), v) < 1e-8);
    }
}

TEST_CASE("density matrices clamp rounding negativity and reject real violations") {
    const auto space = HilbertSpace::abstract(2);
    Matrix rho = diag({1.0 + 1e-12, -1e-12});
    const DensityMatrix ok(space, rho);
    CHECK(ok.matrix().real().minCoeff() >= 0.0);

    CHECK_THROWS_AS(DensityMatrix(space, diag({1.5, -0.5})), ValidationError);
    CHECK_THROWS_AS(DensityMatrix(space, diag({0.3, 0.3})), ValidationError);

    const auto projected = DensityMatrix::from_psd_projection(space, diag({0.8, -0.1}), 0.7);
    CHECK(std::abs(projected.matrix().trace().real() - 1.0) < 1e-12);
    CHECK(projected.leakage() > 0.0);
}
