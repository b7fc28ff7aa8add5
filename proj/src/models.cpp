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

#include "qms/models.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qms/semigroup.hpp"

namespace qms {

namespace {

Matrix power(const Matrix& a, int k) {
    Matrix out = Matrix::Identity(a.rows(), a.cols());
    for (int i = 0; i < k; ++i) out = out * a;
    return out;
}

// ‖L(X)‖_F / max(1, ‖X‖_F) for the Schrödinger generator of `spec`.
double invariance_residual(const GKLSSpec& spec, const Matrix& rho) {
    const Superoperator gen = build_schrodinger_generator(spec);
    return gen.apply(rho).norm() / std::max(1.0, rho.norm());
}

}  // namespace

void TwoPhotonParams::validate() const {
    const std::string base = "model.two-photon.";
    if (!std::isfinite(lambda) || lambda < 0.0) throw ValidationError("lambda must be a finite value ≥ 0", base + "lambda");
    if (!std::isfinite(mu) || mu <= 0.0) throw ValidationError("mu must be a finite value > 0", base + "mu");
    if (!std::isfinite(omega)) throw ValidationError("omega must be finite", base + "omega");
    if (dim < 8 || dim % 2 != 0) throw ValidationError("dim must be even and at least 8", base + "dim");
    if (nu() >= 1.0) throw ValidationError("nu = lambda/mu must be below 1", base + "lambda");
}

GKLSSpec build_two_photon(const TwoPhotonParams& p) {
    p.validate();
    const auto space = HilbertSpace::truncated_fock(p.dim);
    const auto ops = fock_operators(p.dim);
    const Matrix a2 = ops.a.matrix() * ops.a.matrix();
    const Matrix ad2 = ops.a_dag.matrix() * ops.a_dag.matrix();
    GKLSSpec spec{Operator(space, p.omega * ad2 * a2), {Operator(space, p.mu * a2)}};
    if (p.lambda > 0.0) spec.jumps.emplace_back(space, p.lambda * ad2);
    return spec;
}

double two_photon_g_residual(const TwoPhotonParams& p) {
    const GKLSSpec spec = build_two_photon(p);
    const Matrix built = generator_pair_from_gkls(spec).g.matrix();
    double worst = 0.0;
    for (Eigen::Index j = 0; j + 2 < p.dim; ++j)
        for (Eigen::Index k = 0; k + 2 < p.dim; ++k) {
            cplx expected = 0.0;
            if (j == k) {
                const double n = static_cast<double>(j);
                const double down = n * (n - 1.0);          // a†²a²
                const double up = (n + 1.0) * (n + 2.0);    // a²a†²
                expected = -0.5 * p.lambda * p.lambda * up - 0.5 * p.mu * p.mu * down - kI * p.omega * down;
            }
            worst = std::max(worst, std::abs(built(j, k) - expected));
        }
    return worst;
}

TwoPhotonReference two_photon_reference_states(const TwoPhotonParams& p) {
    p.validate();
    if (p.lambda == 0.0)
        throw ValidationError("reference states need lambda > 0; use the lambda = 0 family", "model.two-photon.lambda");
    const auto space = HilbertSpace::truncated_fock(p.dim);
    const double nu2 = p.nu() * p.nu();
    Matrix even = Matrix::Zero(p.dim, p.dim);
    Matrix odd = Matrix::Zero(p.dim, p.dim);
    double weight = 1.0;
    for (Eigen::Index k = 0; 2 * k + 1 < p.dim; ++k, weight *= nu2) {
        even(2 * k, 2 * k) = weight;
        odd(2 * k + 1, 2 * k + 1) = weight;
    }
    // Both series lose Σ_{k ≥ dim/2} (1 − ν²)ν^{2k} = ν^dim of their mass.
    const double leakage = std::pow(p.nu(), static_cast<double>(p.dim));
    return {DensityMatrix(space, even / even.trace(), leakage), DensityMatrix(space, odd / odd.trace(), leakage),
            leakage};
}

DensityMatrix two_photon_lambda0_invariant(double alpha, cplx z, const TwoPhotonParams& p) {
    p.validate();
    if (p.lambda != 0.0) throw ValidationError("the lambda = 0 family needs lambda = 0", "model.two-photon.lambda");
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw ValidationError("alpha must lie in [0, 1]", "alpha");
    if (std::norm(z) > alpha * (1.0 - alpha) + 1e-12)
        throw ValidationError("|z|^2 exceeds alpha(1 - alpha); the matrix is not positive", "z");
    const auto space = HilbertSpace::truncated_fock(p.dim);
    Matrix rho = Matrix::Zero(p.dim, p.dim);
    rho(0, 0) = alpha;
    rho(1, 1) = 1.0 - alpha;
    rho(0, 1) = z;
    rho(1, 0) = std::conj(z);
    const double residual = invariance_residual(build_two_photon(p), rho);
    if (residual > 1e-10)
        throw NumericalError("lambda = 0 state is not invariant (residual " + std::to_string(residual) + ")");
    return DensityMatrix(space, rho);
}

FixedPointResult two_photon_fixed_point(cplx a00, cplx a01, cplx a10, cplx a11, const TwoPhotonParams& p) {
    p.validate();
    if (p.lambda != 0.0) throw ValidationError("the fixed-point recursion needs lambda = 0", "model.two-photon.lambda");
    const auto d = p.dim;
    const double mu2 = p.mu * p.mu;
    Matrix a = Matrix::Zero(d, d);
    a(0, 0) = a00;
    a(0, 1) = a01;
    a(1, 0) = a10;
    a(1, 1) = a11;
    auto h = [](Eigen::Index n) { return static_cast<double>(n) * static_cast<double>(n - 1); };
    for (Eigen::Index j = 2; j < d; ++j)
        for (Eigen::Index k = 2; k < d; ++k) {
            const cplx denom = 0.5 * mu2 * (h(k) + h(j)) - kI * p.omega * (h(j) - h(k));
            a(j, k) = mu2 * std::sqrt(h(j) * h(k)) * a(j - 2, k - 2) / denom;
        }
    const GKLSSpec spec = build_two_photon(p);
    const Superoperator heis = build_heisenberg_generator(spec);
    const double residual = heis.apply(a).norm();
    return {Operator(spec.space(), a), residual};
}

const char* to_string(Boundary b) {
    return b == Boundary::reflecting ? "reflecting" : "absorbing-truncate";
}

void GenericQMSParams::validate() const {
    const std::string base = "model.generic-qms.";
    if (dim < 2) throw ValidationError("dim must be at least 2", base + "dim");
    if (gamma.rows() != gamma.cols()) throw ValidationError("gamma must be square", base + "gamma");
    if (gamma.rows() < dim) throw ValidationError("gamma must cover at least dim levels", base + "gamma");
    if (!gamma.allFinite()) throw ValidationError("gamma has non-finite entries", base + "gamma");
    for (Eigen::Index m = 0; m < gamma.rows(); ++m)
        for (Eigen::Index j = 0; j < gamma.cols(); ++j)
            if (m != j && gamma(m, j) < 0.0)
                throw ValidationError("negative rate gamma[" + std::to_string(m) + "][" + std::to_string(j) + "]",
                                      base + "gamma");
    for (double k : kappa)
        if (!std::isfinite(k)) throw ValidationError("kappa has non-finite entries", base + "kappa");
}

Eigen::MatrixXd adjusted_rates(const GenericQMSParams& p) {
    p.validate();
    const auto d = p.dim;
    const auto top = d - 1;
    Eigen::MatrixXd r = Eigen::MatrixXd::Zero(d, d);
    for (Eigen::Index m = 0; m < d; ++m)
        for (Eigen::Index j = 0; j < p.gamma.cols(); ++j) {
            if (j == m) continue;
            const Eigen::Index target = std::min(j, top);
            if (target != m) r(m, target) += p.gamma(m, j);
        }
    if (p.boundary == Boundary::absorbing_truncate) r.row(top).setZero();
    for (Eigen::Index m = 0; m < d; ++m) r(m, m) = -(r.row(m).sum() - r(m, m));
    return r;
}

GenericQMS build_generic_qms(const GenericQMSParams& p) {
    const Eigen::MatrixXd rates = adjusted_rates(p);
    const auto d = p.dim;
    const auto space = HilbertSpace::truncated_fock(d);
    Matrix g = Matrix::Zero(d, d);
    Matrix h = Matrix::Zero(d, d);
    for (Eigen::Index m = 0; m < d; ++m) {
        const double kappa = m < static_cast<Eigen::Index>(p.kappa.size()) ? p.kappa[static_cast<std::size_t>(m)] : 0.0;
        g(m, m) = cplx(0.5 * rates(m, m), -kappa);
        h(m, m) = kappa;
    }
    std::vector<Operator> jumps;
    for (Eigen::Index m = 0; m < d; ++m)
        for (Eigen::Index j = 0; j < d; ++j)
            if (m != j && rates(m, j) > 0.0) {
                Matrix l = Matrix::Zero(d, d);
                l(j, m) = std::sqrt(rates(m, j));
                jumps.emplace_back(space, l);
            }
    GeneratorPair pair{Operator(space, g), jumps};
    GKLSSpec spec{Operator(space, h), jumps};
    return {pair, spec, rates};
}

Eigen::MatrixXd diagonal_restriction(const Superoperator& gen) {
    const Superoperator heis = to_heisenberg(gen);
    const auto d = heis.dim();
    Eigen::MatrixXd out(d, d);
    for (Eigen::Index j = 0; j < d; ++j) {
        const Matrix image = heis.matrix().col(j + j * d).reshaped(d, d);
        out.col(j) = image.diagonal().real();
    }
    return out;
}

double diagonal_preservation_defect(const Superoperator& gen) {
    const auto d = gen.dim();
    double worst = 0.0;
    for (Eigen::Index j = 0; j < d; ++j) {
        Matrix image = gen.matrix().col(j + j * d).reshaped(d, d);
        image.diagonal().setZero();
        worst = std::max(worst, image.cwiseAbs().maxCoeff());
    }
    return worst;
}

void KPhotonParams::validate() const {
    const std::string base = "model.k-photon.";
    if (k < 1) throw ValidationError("k must be at least 1", base + "k");
    if (!std::isfinite(alpha)) throw ValidationError("alpha must be finite", base + "alpha");
    if (dim < 4 * k) throw ValidationError("dim must be at least 4k", base + "dim");
}

KPhotonModel build_k_photon(const KPhotonParams& p) {
    p.validate();
    const auto d = p.dim;
    const auto space = HilbertSpace::truncated_fock(d);
    const auto ops = fock_operators(d);
    const double alpha_k = std::pow(p.alpha, p.k);
    const Matrix l = power(ops.a.matrix(), p.k) - alpha_k * Matrix::Identity(d, d);
    KPhotonModel out{GKLSSpec{Operator(space, Matrix::Zero(d, d)), {Operator(space, l)}}, Matrix(), {}, 1.0};

    if (p.alpha == 0.0) {
        out.kernel_basis = Matrix::Identity(d, p.k);
        for (int r = 0; r < p.k; ++r) out.residuals.push_back((l * out.kernel_basis.col(r)).norm());
        return out;
    }
    const double pi = std::acos(-1.0);
    Matrix coherent(d, p.k);
    for (int r = 0; r < p.k; ++r) {
        const cplx ar = p.alpha * std::exp(kI * (2.0 * pi * r / p.k));
        cplx term = 1.0;
        for (Eigen::Index n = 0; n < d; ++n) {
            coherent(n, r) = term;
            term *= ar / std::sqrt(static_cast<double>(n + 1));
        }
        const double norm2 = coherent.col(r).squaredNorm();
        out.truncation_mass = std::min(out.truncation_mass, norm2 * std::exp(-p.alpha * p.alpha));
        coherent.col(r) /= std::sqrt(norm2);
        out.residuals.push_back((l * coherent.col(r)).norm());
    }
    if (out.truncation_mass < 1.0 - 1e-6)
        throw ValidationError("dim too small: truncated coherent vectors keep only " +
                                  std::to_string(out.truncation_mass) + " of their mass",
                              "model.k-photon.dim");
    out.kernel_basis = orthonormalize(coherent);
    return out;
}

double lyapunov_value(const GKLSSpec& spec, const Matrix& rho) {
    if (spec.jumps.empty()) throw ValidationError("lyapunov_value needs a jump operator");
    const Matrix& l = spec.jumps.front().matrix();
    return (l * rho * l.adjoint()).trace().real();
}

std::vector<double> lyapunov_series(const GKLSSpec& spec, const Matrix& rho, const std::vector<double>& times) {
    const Superoperator gen = build_schrodinger_generator(spec);
    std::vector<double> out;
    for (const auto& state : evolve_series(gen, rho, times)) out.push_back(lyapunov_value(spec, state));
    return out;
}

}  // namespace qms
