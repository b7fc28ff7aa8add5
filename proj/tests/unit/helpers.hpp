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

#pragma once

#include <cstdint>
#include <random>

#include "qms/lindblad.hpp"

namespace qms::testing {

inline Matrix gaussian_matrix(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng, double scale = 1.0) {
    std::normal_distribution<double> g(0.0, scale);
    Matrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = cplx(g(rng), g(rng));
    return m;
}

inline Matrix random_hermitian(Eigen::Index d, std::mt19937_64& rng, double scale = 1.0) {
    const Matrix g = gaussian_matrix(d, d, rng, scale);
    return 0.5 * (g + g.adjoint());
}

inline Matrix random_state(Eigen::Index d, std::mt19937_64& rng) {
    const Matrix g = gaussian_matrix(d, d, rng);
    const Matrix r = g * g.adjoint();
    return r / r.trace().real();
}

inline GKLSSpec random_gkls(Eigen::Index d, int jumps, std::mt19937_64& rng) {
    const auto space = HilbertSpace::abstract(d);
    const double s = 1.0 / std::sqrt(static_cast<double>(d));
    GKLSSpec spec{Operator(space, random_hermitian(d, rng, s)), {}};
    for (int l = 0; l < jumps; ++l) spec.jumps.emplace_back(space, gaussian_matrix(d, d, rng, s));
    return spec;
}

/// L = √γ |e0⟩⟨e1| on C².
inline GKLSSpec amplitude_damping(double gamma) {
    const auto space = HilbertSpace::abstract(2);
    Matrix l = Matrix::Zero(2, 2);
    l(0, 1) = std::sqrt(gamma);
    return {Operator(space, Matrix::Zero(2, 2)), {Operator(space, l)}};
}

/// C⁴ with dark states e0, e1 and a decay chain e3 → e2 → e1 (rates g3 > g2).
inline GKLSSpec cascade_model(double g2 = 0.5, double g3 = 1.5) {
    const auto space = HilbertSpace::abstract(4);
    Matrix l2 = Matrix::Zero(4, 4), l3 = Matrix::Zero(4, 4), h = Matrix::Zero(4, 4);
    l2(1, 2) = std::sqrt(g2);
    l3(2, 3) = std::sqrt(g3);
    h(0, 0) = 0.3;
    return {Operator(space, h), {Operator(space, l2), Operator(space, l3)}};
}

inline Matrix unit(Eigen::Index d, Eigen::Index i, Eigen::Index j) {
    Matrix m = Matrix::Zero(d, d);
    m(i, j) = 1.0;
    return m;
}

}  // namespace qms::testing
