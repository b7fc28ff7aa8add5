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

#include "qms/operators.hpp"

#include <cmath>
#include <string>

namespace qms {

HilbertSpace HilbertSpace::abstract(Eigen::Index dim) {
    HilbertSpace h{dim, SpaceKind::abstract, {}};
    h.validate();
    return h;
}

HilbertSpace HilbertSpace::truncated_fock(Eigen::Index dim) {
    HilbertSpace h{dim, SpaceKind::truncated_fock,
                   "Fock basis e_0..e_" + std::to_string(dim - 1) + ", top-left corner truncation"};
    h.validate();
    return h;
}

void HilbertSpace::validate() const {
    if (dim < 1) throw ValidationError("Hilbert space dimension must be >= 1", "dim");
}

Operator::Operator(HilbertSpace space, Matrix matrix)
    : space_(std::move(space)), matrix_(std::move(matrix)) {
    space_.validate();
    if (matrix_.rows() != space_.dim || matrix_.cols() != space_.dim)
        throw ValidationError("operator shape " + std::to_string(matrix_.rows()) + "x" +
                              std::to_string(matrix_.cols()) + " does not match dim " +
                              std::to_string(space_.dim));
    require_finite(matrix_, "Operator");
}

bool is_hermitian(const Matrix& a, double slack) {
    if (a.rows() != a.cols()) return false;
    return (a - a.adjoint()).norm() <= slack * std::max(1.0, a.norm());
}

DensityMatrix::DensityMatrix(HilbertSpace space, const Matrix& matrix, double leakage,
                             const Tolerances& tol)
    : space_(std::move(space)), leakage_(leakage) {
    space_.validate();
    if (matrix.rows() != space_.dim || matrix.cols() != space_.dim)
        throw ValidationError("density matrix shape does not match space");
    require_finite(matrix, "DensityMatrix");
    if ((matrix - matrix.adjoint()).norm() > 1e-10)
        throw ValidationError("density matrix is not Hermitian");
    if (std::abs(matrix.trace() - 1.0) > 1e-9)
        throw ValidationError("density matrix trace deviates from 1 by " +
                              std::to_string(std::abs(matrix.trace() - 1.0)));
    const Matrix herm = 0.5 * (matrix + matrix.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> es(herm);
    const auto& w = es.eigenvalues();
    if (w.minCoeff() < -tol.psd_floor)
        throw ValidationError("density matrix has eigenvalue " + std::to_string(w.minCoeff()) +
                              " below -psd_floor");
    if (w.minCoeff() < 0.0) {
        RealVector clipped = w.cwiseMax(0.0);
        leakage_ += (clipped - w).sum();
        matrix_ = es.eigenvectors() * clipped.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
    } else {
        matrix_ = herm;
    }
}

DensityMatrix DensityMatrix::from_psd_projection(HilbertSpace space, const Matrix& matrix,
                                                 double expected_trace) {
    space.validate();
    if (matrix.rows() != space.dim || matrix.cols() != space.dim)
        throw ValidationError("density matrix shape does not match space");
    require_finite(matrix, "DensityMatrix");
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (matrix + matrix.adjoint()));
    const RealVector w = es.eigenvalues();
    const RealVector clipped = w.cwiseMax(0.0);
    const double mass = clipped.sum();
    if (!(mass > 0.0)) throw NumericalError("PSD projection removed all mass");
    DensityMatrix out;
    out.space_ = std::move(space);
    out.matrix_ = es.eigenvectors() * (clipped / mass).cast<cplx>().asDiagonal() *
                  es.eigenvectors().adjoint();
    out.leakage_ = (clipped - w).sum() + std::abs(expected_trace - w.sum());
    return out;
}

Subspace::Subspace(HilbertSpace space, Matrix basis)
    : space_(std::move(space)), basis_(std::move(basis)) {
    space_.validate();
    if (basis_.rows() != space_.dim)
        throw ValidationError("subspace basis rows do not match ambient dimension");
    if (basis_.cols() > space_.dim) throw ValidationError("subspace basis has too many columns");
    const auto k = basis_.cols();
    if (k > 0) {
        const double defect = (basis_.adjoint() * basis_ - Matrix::Identity(k, k)).norm();
        if (defect > 1e-10)
            throw ValidationError("subspace basis is not orthonormal (defect " +
                                  std::to_string(defect) + ")");
    }
    projector_ = basis_ * basis_.adjoint();
}

Subspace Subspace::zero(const HilbertSpace& space) { return {space, Matrix(space.dim, 0)}; }

Subspace Subspace::full(const HilbertSpace& space) {
    return {space, Matrix::Identity(space.dim, space.dim)};
}

Subspace Subspace::span(const HilbertSpace& space, const Matrix& vectors, const Tolerances& tol) {
    if (vectors.rows() != space.dim) throw ValidationError("span: vector length mismatch");
    if (vectors.cols() == 0) return zero(space);
    return {space, range_basis(vectors, tol)};
}

Subspace Subspace::coordinate(const HilbertSpace& space, const std::vector<Eigen::Index>& indices) {
    Matrix b = Matrix::Zero(space.dim, static_cast<Eigen::Index>(indices.size()));
    for (std::size_t j = 0; j < indices.size(); ++j) {
        const auto i = indices[j];
        if (i < 0 || i >= space.dim) throw ValidationError("coordinate index out of range");
        b(i, static_cast<Eigen::Index>(j)) = 1.0;
    }
    return {space, b};
}

FockOperators fock_operators(Eigen::Index d) {
    if (d < 2) throw ValidationError("fock_operators requires d >= 2", "dim");
    const auto space = HilbertSpace::truncated_fock(d);
    Matrix a = Matrix::Zero(d, d);
    Matrix n = Matrix::Zero(d, d);
    for (Eigen::Index k = 1; k < d; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
    for (Eigen::Index k = 0; k < d; ++k) n(k, k) = static_cast<double>(k);
    Matrix adag = a.adjoint();
    return {Operator(space, a), Operator(space, adag), Operator(space, n)};
}

Subspace support_projection(const HilbertSpace& space, const Matrix& a, const Tolerances& tol) {
    if (a.rows() != space.dim || a.cols() != space.dim)
        throw ValidationError("support_projection: shape mismatch");
    if (!is_hermitian(a)) throw ValidationError("support_projection: operator is not Hermitian");
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (a + a.adjoint()));
    const auto& w = es.eigenvalues();
    const double top = w.size() ? w.maxCoeff() : 0.0;
    if (!(top > 0.0)) return Subspace::zero(space);
    std::vector<Eigen::Index> keep;
    for (Eigen::Index i = 0; i < w.size(); ++i)
        if (w(i) > tol.nullspace_rel * top) keep.push_back(i);
    Matrix basis(space.dim, static_cast<Eigen::Index>(keep.size()));
    for (std::size_t j = 0; j < keep.size(); ++j)
        basis.col(static_cast<Eigen::Index>(j)) = es.eigenvectors().col(keep[j]);
    return {space, basis};
}

Subspace support_projection(const Operator& a, const Tolerances& tol) {
    return support_projection(a.space(), a.matrix(), tol);
}

namespace {
void require_same_space(const Subspace& v, const Subspace& w) {
    if (!v.space().same_as(w.space())) throw ValidationError("subspaces live in different spaces");
}
}  // namespace

Subspace subspace_complement(const Subspace& v) {
    const auto d = v.ambient_dim();
    if (v.is_zero()) return Subspace::full(v.space());
    if (v.is_full()) return Subspace::zero(v.space());
    Eigen::BDCSVD<Matrix> svd(v.basis().adjoint(), Eigen::ComputeFullV);
    return {v.space(), svd.matrixV().rightCols(d - v.dim())};
}

Subspace subspace_sum(const Subspace& v, const Subspace& w, const Tolerances& tol) {
    require_same_space(v, w);
    return support_projection(v.space(), v.projector() + w.projector(), tol);
}

Subspace subspace_intersection(const Subspace& v, const Subspace& w, const Tolerances& tol) {
    require_same_space(v, w);
    return subspace_complement(
        subspace_sum(subspace_complement(v), subspace_complement(w), tol));
}

bool subspace_contains(const Subspace& v, const Subspace& w, double slack) {
    require_same_space(v, w);
    if (w.is_zero()) return true;
    const auto d = v.ambient_dim();
    const Matrix defect = (Matrix::Identity(d, d) - v.projector()) * w.basis();
    return spectral_norm(defect) <= slack;
}

double principal_angle_sine(const Subspace& v, const Subspace& w) {
    require_same_space(v, w);
    if (v.dim() != w.dim())
        throw ValidationError("principal_angle_sine: subspaces differ in dimension");
    if (v.is_zero()) return 0.0;
    const auto d = v.ambient_dim();
    return spectral_norm((Matrix::Identity(d, d) - v.projector()) * w.basis());
}

}  // namespace qms
