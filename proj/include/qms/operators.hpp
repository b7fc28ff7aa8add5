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

#include <string>
#include <vector>

#include "qms/numerics.hpp"

namespace qms {

enum class SpaceKind { truncated_fock, abstract };

/// A finite-dimensional (possibly truncated) Hilbert space C^dim.
struct HilbertSpace {
    Eigen::Index dim = 1;
    SpaceKind kind = SpaceKind::abstract;
    std::string truncation_note;

    static HilbertSpace abstract(Eigen::Index dim);
    static HilbertSpace truncated_fock(Eigen::Index dim);

    void validate() const;
    bool same_as(const HilbertSpace& other) const noexcept { return dim == other.dim; }
};

/// A d×d matrix tied to its Hilbert space.
class Operator {
public:
    Operator(HilbertSpace space, Matrix matrix);

    const HilbertSpace& space() const noexcept { return space_; }
    const Matrix& matrix() const noexcept { return matrix_; }
    Eigen::Index dim() const noexcept { return space_.dim; }

private:
    HilbertSpace space_;
    Matrix matrix_;
};

/// Positive semidefinite, unit-trace operator. Eigenvalues in [-psd_floor, 0)
/// are clamped to zero on construction; the clipped mass is added to leakage.
class DensityMatrix {
public:
    DensityMatrix(HilbertSpace space, const Matrix& matrix, double leakage = 0.0,
                  const Tolerances& tol = {});

    /// Hermitizes, clips every negative eigenvalue, and renormalizes the trace.
    /// Clipped mass and any trace deficit relative to `expected_trace` are
    /// recorded as leakage. Throws NumericalError if nothing positive remains.
    static DensityMatrix from_psd_projection(HilbertSpace space, const Matrix& matrix,
                                             double expected_trace = 1.0);

    const HilbertSpace& space() const noexcept { return space_; }
    const Matrix& matrix() const noexcept { return matrix_; }
    double leakage() const noexcept { return leakage_; }
    Eigen::Index dim() const noexcept { return space_.dim; }

private:
    DensityMatrix() = default;
    HilbertSpace space_;
    Matrix matrix_;
    double leakage_ = 0.0;
};

/// Subspace stored as orthonormal columns; the projector is derived once.
class Subspace {
public:
    /// `basis` must have orthonormal columns within 1e-10.
    Subspace(HilbertSpace space, Matrix basis);

    static Subspace zero(const HilbertSpace& space);
    static Subspace full(const HilbertSpace& space);
    /// Span of arbitrary (not necessarily independent) columns.
    static Subspace span(const HilbertSpace& space, const Matrix& vectors, const Tolerances& tol = {});
    /// Span of canonical basis vectors e_i, i in `indices`.
    static Subspace coordinate(const HilbertSpace& space, const std::vector<Eigen::Index>& indices);

    const HilbertSpace& space() const noexcept { return space_; }
    const Matrix& basis() const noexcept { return basis_; }
    const Matrix& projector() const noexcept { return projector_; }
    Eigen::Index dim() const noexcept { return basis_.cols(); }
    Eigen::Index ambient_dim() const noexcept { return space_.dim; }
    bool is_zero() const noexcept { return basis_.cols() == 0; }
    bool is_full() const noexcept { return basis_.cols() == space_.dim; }

private:
    HilbertSpace space_;
    Matrix basis_;
    Matrix projector_;
};

struct FockOperators {
    Operator a;
    Operator a_dag;
    Operator n_op;
};

/// Annihilation, creation and number operators truncated to the top-left d×d corner.
FockOperators fock_operators(Eigen::Index d);

/// Span of eigenvectors of a PSD operator with eigenvalue above
/// nullspace_rel * lambda_max.
Subspace support_projection(const Operator& a, const Tolerances& tol = {});
Subspace support_projection(const HilbertSpace& space, const Matrix& a, const Tolerances& tol = {});

Subspace subspace_complement(const Subspace& v);
Subspace subspace_sum(const Subspace& v, const Subspace& w, const Tolerances& tol = {});
/// Intersection as the complement of the sum of complements.
Subspace subspace_intersection(const Subspace& v, const Subspace& w, const Tolerances& tol = {});
/// True iff W ⊆ V, tested as ‖(I − P_V) P_W‖ ≤ slack.
bool subspace_contains(const Subspace& v, const Subspace& w, double slack = 1e-8);

/// sin of the largest principal angle between equal-dimension subspaces.
double principal_angle_sine(const Subspace& v, const Subspace& w);

/// Hermitian-part check ‖A − A†‖ ≤ slack · max(1, ‖A‖).
bool is_hermitian(const Matrix& a, double slack = 1e-10);

}  // namespace qms
