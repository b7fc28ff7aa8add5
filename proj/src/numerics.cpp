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

#include "qms/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

namespace qms {

namespace {

// Higham (2005) degree thresholds and Padé numerator coefficients.
constexpr std::array<double, 5> kTheta = {1.495585217958292e-2, 2.539398330063230e-1,
                                          9.504178996162932e-1, 2.097847961257068e0,
                                          5.371920351148152e0};

constexpr std::array<double, 4> kB3 = {120., 60., 12., 1.};
constexpr std::array<double, 6> kB5 = {30240., 15120., 3360., 420., 30., 1.};
constexpr std::array<double, 8> kB7 = {17297280., 8648640., 1995840., 277200.,
                                       25200.,    1512.,    56.,      1.};
constexpr std::array<double, 10> kB9 = {17643225600., 8821612800., 2075673600., 302702400.,
                                        30270240.,    2162160.,    110880.,     3960.,
                                        90.,          1.};
constexpr std::array<double, 14> kB13 = {
    64764752532480000., 32382376266240000., 7771770303897600., 1187353796428800.,
    129060195264000.,   10559470521600.,    670442572800.,     33522128640.,
    1323241920.,        40840800.,          960960.,           16380.,
    182.,               1.};

double one_norm(const Matrix& a) { return a.cwiseAbs().colwise().sum().maxCoeff(); }

template <std::size_t N>
void pade_low(const Matrix& a, const std::array<double, N>& b, Matrix& u, Matrix& v) {
    const auto n = a.rows();
    const Matrix id = Matrix::Identity(n, n);
    const Matrix a2 = a * a;
    Matrix even = b[0] * id;
    Matrix odd = b[1] * id;
    Matrix power = id;
    for (std::size_t k = 2; k < N; k += 2) {
        power = power * a2;
        even += b[k] * power;
        if (k + 1 < N) odd += b[k + 1] * power;
    }
    u = a * odd;
    v = even;
}

void pade13(const Matrix& a, Matrix& u, Matrix& v) {
    const auto& b = kB13;
    const auto n = a.rows();
    const Matrix id = Matrix::Identity(n, n);
    const Matrix a2 = a * a;
    const Matrix a4 = a2 * a2;
    const Matrix a6 = a4 * a2;
    Matrix inner = b[13] * a6 + b[11] * a4 + b[9] * a2;
    u = a * (a6 * inner + b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * id);
    inner = b[12] * a6 + b[10] * a4 + b[8] * a2;
    v = a6 * inner + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * id;
}

Eigen::BDCSVD<Matrix> svd_of(const Matrix& m, unsigned options) {
    Eigen::BDCSVD<Matrix> svd(m, options);
    if (svd.info() != Eigen::Success) throw NumericalError("singular value decomposition failed");
    return svd;
}

}  // namespace

void Tolerances::validate() const {
    const auto positive = [](double v, const char* name) {
        if (!(v > 0.0) || !std::isfinite(v))
            throw ValidationError(std::string("tolerance must be positive and finite: ") + name,
                                  std::string("tolerances.") + name);
    };
    positive(nullspace_rel, "nullspace_rel");
    positive(psd_floor, "psd_floor");
    positive(expm_rel, "expm_rel");
    positive(convergence_abs, "convergence_abs");
    positive(zero_band, "zero_band");
    positive(peripheral_band, "peripheral_band");
    if (nullspace_rel >= 1.0)
        throw ValidationError("nullspace_rel must be < 1", "tolerances.nullspace_rel");
}

void require_square(const Matrix& m, const char* what) {
    if (m.rows() != m.cols() || m.rows() == 0)
        throw ValidationError(std::string(what) + ": expected a non-empty square matrix, got " +
                              std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
}

void require_finite(const Matrix& m, const char* what) {
    if (!m.allFinite()) throw ValidationError(std::string(what) + ": non-finite entries");
}

Matrix matrix_exponential(const Matrix& m, double t) {
    require_square(m, "matrix_exponential");
    require_finite(m, "matrix_exponential");
    if (!std::isfinite(t)) throw ValidationError("matrix_exponential: non-finite time");

    const Matrix a = t * m;
    const double norm = one_norm(a);
    Matrix u, v;
    int squarings = 0;
    if (norm <= kTheta[0]) {
        pade_low(a, kB3, u, v);
    } else if (norm <= kTheta[1]) {
        pade_low(a, kB5, u, v);
    } else if (norm <= kTheta[2]) {
        pade_low(a, kB7, u, v);
    } else if (norm <= kTheta[3]) {
        pade_low(a, kB9, u, v);
    } else {
        squarings = std::max(0, static_cast<int>(std::ceil(std::log2(norm / kTheta[4]))));
        pade13(std::ldexp(1.0, -squarings) * a, u, v);
    }
    Eigen::PartialPivLU<Matrix> lu(v - u);
    Matrix result = lu.solve(v + u);
    for (int s = 0; s < squarings; ++s) result = result * result;
    if (!result.allFinite()) throw NumericalError("matrix_exponential: overflow");
    return result;
}

Matrix nullspace(const Matrix& m, const Tolerances& tol, double scale) {
    require_finite(m, "nullspace");
    const auto cols = m.cols();
    if (m.rows() == 0) return Matrix::Identity(cols, cols);
    const auto svd = svd_of(m, Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    const double smax = s.size() ? s(0) : 0.0;
    const double cut = tol.nullspace_rel * std::max(smax, scale);
    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) > cut) ++rank;
    if (smax == 0.0) rank = 0;
    return svd.matrixV().rightCols(cols - rank);
}

Matrix range_basis(const Matrix& m, const Tolerances& tol) {
    require_finite(m, "range_basis");
    if (m.cols() == 0) return Matrix(m.rows(), 0);
    const auto svd = svd_of(m, Eigen::ComputeThinU);
    const auto& s = svd.singularValues();
    const double smax = s.size() ? s(0) : 0.0;
    Eigen::Index rank = 0;
    if (smax > 0.0)
        for (Eigen::Index i = 0; i < s.size(); ++i)
            if (s(i) > tol.nullspace_rel * smax) ++rank;
    return svd.matrixU().leftCols(rank);
}

Matrix smallest_singular_subspace(const Matrix& m, Eigen::Index k, double* rel_sigma) {
    require_finite(m, "smallest_singular_subspace");
    const auto cols = m.cols();
    if (k < 0 || k > cols) throw ValidationError("smallest_singular_subspace: bad dimension");
    const auto svd = svd_of(m, Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    if (rel_sigma) {
        const double smax = s.size() ? s(0) : 0.0;
        // Singular values beyond min(rows, cols) are exactly zero.
        const Eigen::Index first = cols - k;
        const double sk = (k == 0 || first >= s.size()) ? 0.0 : s(first);
        *rel_sigma = smax > 0.0 ? sk / smax : 0.0;
    }
    return svd.matrixV().rightCols(k);
}

Matrix generalized_eigenspace(const Matrix& m, cplx lambda, int power, const Tolerances& tol,
                              double scale) {
    require_square(m, "generalized_eigenspace");
    if (power < 1) throw ValidationError("generalized_eigenspace: power must be >= 1");
    const auto n = m.rows();
    const Matrix a = m - lambda * Matrix::Identity(n, n);
    Matrix basis = nullspace(a, tol, scale);
    for (int p = 2; p <= power && basis.cols() > 0 && basis.cols() < n; ++p) {
        const Matrix off_kernel = Matrix::Identity(n, n) - basis * basis.adjoint();
        Matrix next = nullspace(off_kernel * a, tol, scale);
        if (next.cols() <= basis.cols()) break;
        basis = std::move(next);
    }
    return basis;
}

std::vector<EigenPair> eigen_full(const Matrix& m) {
    require_square(m, "eigen_full");
    require_finite(m, "eigen_full");
    Eigen::ComplexEigenSolver<Matrix> solver(m, true);
    if (solver.info() != Eigen::Success)
        throw NumericalError("eigen_full: QR iteration did not converge");
    std::vector<EigenPair> out;
    out.reserve(static_cast<std::size_t>(m.rows()));
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Vector v = solver.eigenvectors().col(i);
        const double nv = v.norm();
        if (nv > 0) v /= nv;
        out.push_back({solver.eigenvalues()(i), std::move(v)});
    }
    return out;
}

std::vector<cplx> eigenvalues(const Matrix& m) {
    require_square(m, "eigenvalues");
    require_finite(m, "eigenvalues");
    Eigen::ComplexEigenSolver<Matrix> solver(m, false);
    if (solver.info() != Eigen::Success)
        throw NumericalError("eigenvalues: QR iteration did not converge");
    const auto& ev = solver.eigenvalues();
    return {ev.data(), ev.data() + ev.size()};
}

double spectral_abscissa(const std::vector<cplx>& eigs) {
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& e : eigs) best = std::max(best, e.real());
    return best;
}

double spectral_radius(const std::vector<cplx>& eigs) {
    double best = 0.0;
    for (const auto& e : eigs) best = std::max(best, std::abs(e));
    return best;
}

double spectral_abscissa(const Matrix& m) { return spectral_abscissa(eigenvalues(m)); }
double spectral_radius(const Matrix& m) { return spectral_radius(eigenvalues(m)); }

double spectral_norm(const Matrix& m) {
    if (m.size() == 0) return 0.0;
    Eigen::BDCSVD<Matrix> svd(m);
    return svd.singularValues()(0);
}

double trace_norm(const Matrix& m) {
    if (m.size() == 0) return 0.0;
    if ((m - m.adjoint()).norm() <= 1e-14 * std::max(1.0, m.norm())) {
        Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
        return es.eigenvalues().cwiseAbs().sum();
    }
    Eigen::BDCSVD<Matrix> svd(m);
    return svd.singularValues().sum();
}

RealVector hermitian_eigenvalues(const Matrix& m) {
    require_square(m, "hermitian_eigenvalues");
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw NumericalError("Hermitian eigensolve failed");
    return es.eigenvalues();
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

Matrix orthonormalize(const Matrix& v, double rel_drop) {
    Matrix q(v.rows(), v.cols());
    Eigen::Index kept = 0;
    for (Eigen::Index j = 0; j < v.cols(); ++j) {
        Vector w = v.col(j);
        const double original = w.norm();
        if (original == 0.0) continue;
        for (int pass = 0; pass < 2; ++pass)
            for (Eigen::Index i = 0; i < kept; ++i) w -= q.col(i).dot(w) * q.col(i);
        const double remaining = w.norm();
        if (remaining <= rel_drop * original) continue;
        q.col(kept++) = w / remaining;
    }
    return q.leftCols(kept);
}

}  // namespace qms
