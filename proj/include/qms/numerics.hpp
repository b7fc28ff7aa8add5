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

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "qms/errors.hpp"

namespace qms {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr cplx kI{0.0, 1.0};

/// Numerical thresholds shared by every analysis. All rank decisions are
/// relative to the largest singular value of the matrix being tested.
struct Tolerances {
    double nullspace_rel = 1e-9;
    double psd_floor = 1e-10;
    double expm_rel = 1e-12;
    double convergence_abs = 1e-8;
    // Band around 0 (generator) in which an eigenvalue counts as zero.
    double zero_band = 1e-9;
    // Band below modulus 1 (channel) / above real part 0 (generator) for the
    // peripheral spectrum.
    double peripheral_band = 1e-9;

    /// Throws ValidationError when any field is non-positive or nullspace_rel >= 1.
    void validate() const;
};

struct EigenPair {
    cplx value;
    Vector vector;
};

void require_square(const Matrix& m, const char* what);
void require_finite(const Matrix& m, const char* what);

/// exp(t M) by scaling and squaring with a degree <= 13 Padé approximant.
Matrix matrix_exponential(const Matrix& m, double t = 1.0);

/// Orthonormal basis (as columns) of ker(M). Singular values at or below
/// nullspace_rel * max(sigma_max, scale) count as zero; the zero matrix has a
/// full kernel. Pass the norm of the parent operator as `scale` when `m` is a
/// compression whose entries may all be rounding noise.
Matrix nullspace(const Matrix& m, const Tolerances& tol = {}, double scale = 0.0);

/// Orthonormal basis of the column space, same relative rank rule as nullspace.
Matrix range_basis(const Matrix& m, const Tolerances& tol = {});

/// The `k` right singular vectors with the smallest singular values, plus the
/// largest of those singular values relative to sigma_max in `rel_sigma`.
Matrix smallest_singular_subspace(const Matrix& m, Eigen::Index k, double* rel_sigma = nullptr);

/// Orthonormal basis of ker((M - lambda I)^power).
///
/// The kernel chain ker(A) ⊆ ker(A^2) ⊆ ... is built one level at a time as
/// ker(A^{p+1}) = { v : A v ∈ ker(A^p) }, each level using the relative
/// nullspace rule on an unpowered matrix. The chain stops as soon as it
/// stabilizes, which gives the same space as the full power.
Matrix generalized_eigenspace(const Matrix& m, cplx lambda, int power, const Tolerances& tol = {},
                              double scale = 0.0);

/// All eigenpairs with unit-norm right eigenvectors.
std::vector<EigenPair> eigen_full(const Matrix& m);

/// Eigenvalues only (cheaper for large superoperators).
std::vector<cplx> eigenvalues(const Matrix& m);

double spectral_abscissa(const Matrix& m);
double spectral_radius(const Matrix& m);
double spectral_abscissa(const std::vector<cplx>& eigs);
double spectral_radius(const std::vector<cplx>& eigs);

double spectral_norm(const Matrix& m);

/// Sum of singular values of a Hermitian-or-not matrix.
double trace_norm(const Matrix& m);

/// Eigenvalues of the Hermitian part (M + M†)/2, ascending.
RealVector hermitian_eigenvalues(const Matrix& m);

Matrix kron(const Matrix& a, const Matrix& b);

/// Orthonormalizes the columns of `v` by modified Gram–Schmidt with one
/// reorthogonalization pass; columns that become numerically dependent
/// (norm below rel_drop times their original norm) are dropped.
Matrix orthonormalize(const Matrix& v, double rel_drop = 1e-10);

}  // namespace qms
