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

#include "qms/semigroup.hpp"

#include <cmath>
#include <string>

namespace qms {

Matrix ErgodicProjection::apply(const Matrix& x) const {
    if (x.rows() != space.dim || x.cols() != space.dim)
        throw ValidationError("ErgodicProjection::apply: shape mismatch");
    return unvec(matrix * vec(x), space.dim);
}

Matrix evolve(const Superoperator& gen, const Matrix& x, double t) {
    if (!gen.is_generator()) throw ValidationError("evolve expects a generator");
    if (!(t >= 0.0) || !std::isfinite(t))
        throw ValidationError("evolve: time must be finite and >= 0 (semigroup, not group)");
    if (x.rows() != gen.dim() || x.cols() != gen.dim())
        throw ValidationError("evolve: operand shape mismatch");
    if (t == 0.0) return x;
    return unvec(matrix_exponential(gen.matrix(), t) * vec(x), gen.dim());
}

Operator evolve(const Superoperator& gen, const Operator& x, double t) {
    return {x.space(), evolve(gen, x.matrix(), t)};
}

std::vector<Matrix> evolve_series(const Superoperator& gen, const Matrix& x,
                                  const std::vector<double>& times) {
    if (!gen.is_generator()) throw ValidationError("evolve_series expects a generator");
    std::vector<Matrix> out;
    out.reserve(times.size());
    Vector state = vec(x);
    double now = 0.0;
    // Steps that are small integer multiples of an earlier step reuse its
    // propagator through repeated application.
    std::vector<std::pair<double, Matrix>> cache;
    for (double t : times) {
        if (!(t >= now) || !std::isfinite(t))
            throw ValidationError("evolve_series: times must be finite, >= 0 and non-decreasing");
        const double step = t - now;
        if (step > 0.0) {
            const Matrix* propagator = nullptr;
            long repeats = 1;
            for (const auto& [h, p] : cache) {
                const double m = std::round(step / h);
                if (m >= 1.0 && m <= 128.0 && std::abs(step - m * h) <= 1e-12 * step) {
                    propagator = &p;
                    repeats = static_cast<long>(m);
                    break;
                }
            }
            if (!propagator) {
                cache.emplace_back(step, matrix_exponential(gen.matrix(), step));
                propagator = &cache.back().second;
            }
            for (long r = 0; r < repeats; ++r) state = *propagator * state;
        }
        now = t;
        out.push_back(unvec(state, gen.dim()));
    }
    return out;
}

Matrix cesaro_mean(const Superoperator& gen, const Matrix& x, double horizon, int steps) {
    if (!gen.is_generator()) throw ValidationError("cesaro_mean expects a generator");
    if (!(horizon > 0.0)) throw ValidationError("cesaro_mean: horizon must be > 0");
    if (steps < 2) throw ValidationError("cesaro_mean: steps must be >= 2");
    const double h = horizon / steps;
    const Matrix propagator = matrix_exponential(gen.matrix(), h);
    Vector state = vec(x);
    Vector acc = 0.5 * state;
    for (int i = 1; i <= steps; ++i) {
        state = propagator * state;
        acc += (i == steps ? 0.5 : 1.0) * state;
    }
    return unvec(acc * (h / horizon), gen.dim());
}

Eigen::Index zero_multiplicity(const std::vector<cplx>& eigs, const Tolerances& tol) {
    Eigen::Index k = 0;
    for (const auto& e : eigs)
        if (std::abs(e.real()) <= tol.zero_band && std::abs(e.imag()) <= tol.zero_band) ++k;
    return k;
}

namespace {

// Basis of the generalized kernel of `m` whose dimension is fixed by the
// eigenvalue count `k`. Reports whether the plain kernel already has that size.
Matrix kernel_of_multiplicity(const Matrix& m, Eigen::Index k, const Tolerances& tol,
                              bool& semisimple) {
    double rel = 0.0;
    Matrix v = smallest_singular_subspace(m, k, &rel);
    semisimple = rel <= tol.nullspace_rel;
    if (semisimple) return v;
    v = generalized_eigenspace(m, 0.0, static_cast<int>(m.rows()), tol);
    if (v.cols() != k)
        throw NumericalError("generalized eigenspace at 0 has dimension " +
                             std::to_string(v.cols()) + " but " + std::to_string(k) +
                             " eigenvalues lie in the zero band");
    return v;
}

}  // namespace

ErgodicProjection ergodic_projection(const Superoperator& gen, const std::vector<cplx>& eigs,
                                     const Tolerances& tol) {
    if (!gen.is_generator()) throw ValidationError("ergodic_projection expects a generator");
    const Matrix& m = gen.matrix();
    const auto n = m.rows();
    const Eigen::Index k = zero_multiplicity(eigs, tol);

    ErgodicProjection out;
    out.space = gen.space();
    out.picture = gen.picture();
    out.rank = k;
    if (k == 0) {
        out.matrix = Matrix::Zero(n, n);
        return out;
    }
    if (k == n) {
        out.matrix = Matrix::Identity(n, n);
        out.semisimple_ok = m.norm() <= tol.zero_band * n;
        return out;
    }
    bool right_ok = true, left_ok = true;
    const Matrix right = kernel_of_multiplicity(m, k, tol, right_ok);
    const Matrix left = kernel_of_multiplicity(m.adjoint(), k, tol, left_ok);
    const Matrix overlap = left.adjoint() * right;
    Eigen::FullPivLU<Matrix> lu(overlap);
    if (!lu.isInvertible())
        throw NumericalError("left and right zero eigenspaces are not in duality");
    out.matrix = right * lu.solve(left.adjoint());
    out.semisimple_ok = right_ok && left_ok;
    out.idempotency_defect = (out.matrix * out.matrix - out.matrix).norm();
    if (out.idempotency_defect > 1e-8 * std::max(1.0, out.matrix.norm()))
        throw NumericalError("ergodic projection is not idempotent (defect " +
                             std::to_string(out.idempotency_defect) + ")");
    return out;
}

ErgodicProjection ergodic_projection(const Superoperator& gen, const Tolerances& tol) {
    return ergodic_projection(gen, eigenvalues(gen.matrix()), tol);
}

InvariantStateSet invariant_states(const Superoperator& gen, const Tolerances& tol) {
    if (!gen.is_generator()) throw ValidationError("invariant_states expects a generator");
    const Superoperator schr = to_schrodinger(gen);
    const auto d = schr.dim();
    const Matrix kernel = nullspace(schr.matrix(), tol);
    if (kernel.cols() == 0)
        throw NumericalError("generator has no invariant state: not a valid QMS generator");
    ErgodicProjection proj = ergodic_projection(schr, tol);
    std::vector<Matrix> basis;
    basis.reserve(static_cast<std::size_t>(kernel.cols()));
    for (Eigen::Index j = 0; j < kernel.cols(); ++j) basis.push_back(unvec(kernel.col(j), d));
    const Matrix averaged = proj.apply(Matrix::Identity(d, d) / static_cast<double>(d));
    auto canonical = DensityMatrix::from_psd_projection(schr.space(), averaged, 1.0);
    return {std::move(basis), std::move(canonical), std::move(proj)};
}

}  // namespace qms
