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

#include <vector>

#include "qms/lindblad.hpp"

namespace qms {

/// Spectral projection of a generator onto its (generalized) eigenspace at 0.
/// In the Heisenberg picture this is E; in the Schrödinger picture E*.
struct ErgodicProjection {
    HilbertSpace space;
    Picture picture = Picture::schrodinger;
    Matrix matrix;
    Eigen::Index rank = 0;
    /// True iff the generalized eigenspace at 0 equals the plain kernel.
    bool semisimple_ok = true;
    double idempotency_defect = 0.0;

    Matrix apply(const Matrix& x) const;
};

struct InvariantStateSet {
    /// Operators spanning ker(L*), orthonormal in the Hilbert–Schmidt sense.
    std::vector<Matrix> kernel_basis;
    /// E*(I/d) projected onto the PSD cone and renormalized.
    DensityMatrix canonical_state;
    ErgodicProjection projection;
};

/// exp(t·gen) applied to X; t must be non-negative.
Matrix evolve(const Superoperator& gen, const Matrix& x, double t);
Operator evolve(const Superoperator& gen, const Operator& x, double t);

/// Evolution on a non-decreasing time grid; equal consecutive steps share one propagator.
std::vector<Matrix> evolve_series(const Superoperator& gen, const Matrix& x,
                                  const std::vector<double>& times);

/// (1/T)∫_0^T exp(s·gen)(X) ds by the trapezoidal rule on `steps` equal intervals.
Matrix cesaro_mean(const Superoperator& gen, const Matrix& x, double horizon, int steps);

/// Number of eigenvalues with |Re λ| ≤ zero_band and |Im λ| ≤ zero_band.
Eigen::Index zero_multiplicity(const std::vector<cplx>& eigs, const Tolerances& tol = {});

ErgodicProjection ergodic_projection(const Superoperator& gen, const Tolerances& tol = {});
/// Same, reusing an already computed spectrum of gen.
ErgodicProjection ergodic_projection(const Superoperator& gen, const std::vector<cplx>& eigs,
                                     const Tolerances& tol = {});

/// Invariant states of a generator (Heisenberg input is dualized first).
InvariantStateSet invariant_states(const Superoperator& gen, const Tolerances& tol = {});

}  // namespace qms
