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

// --- two-photon absorption and emission ---

struct TwoPhotonParams {
    double lambda = 0.0;
    double mu = 1.0;
    double omega = 0.0;
    Eigen::Index dim = 16;

    double nu() const noexcept { return lambda / mu; }
    /// lambda ≥ 0, mu > 0, nu < 1, dim even and ≥ 8.
    void validate() const;
};

/// H = ω a†²a², jumps {μa², λa†²}; the second jump is dropped when λ = 0.
GKLSSpec build_two_photon(const TwoPhotonParams& p);

/// max |(−iH − ½ΣL†L)_{jk} − G_{jk}| over j, k < dim − 2, with G the closed form
/// −λ²/2 a²a†² − μ²/2 a†²a² − iω a†²a² evaluated on the untruncated ladder.
double two_photon_g_residual(const TwoPhotonParams& p);

struct TwoPhotonReference {
    DensityMatrix rho_e;
    DensityMatrix rho_o;
    /// 1 − truncated mass of the geometric series (largest of the two).
    double leakage = 0.0;
};

/// ρ_e ∝ Σ ν^{2k}|e_{2k}⟩⟨e_{2k}| and ρ_o ∝ Σ ν^{2k}|e_{2k+1}⟩⟨e_{2k+1}|, renormalized on the truncation.
TwoPhotonReference two_photon_reference_states(const TwoPhotonParams& p);

/// α|e0⟩⟨e0| + (1−α)|e1⟩⟨e1| + z|e0⟩⟨e1| + z̄|e1⟩⟨e0| for λ = 0; checked invariant within 1e-10.
DensityMatrix two_photon_lambda0_invariant(double alpha, cplx z, const TwoPhotonParams& p);

struct FixedPointResult {
    Operator op;
    double residual = 0.0;  // ‖L(A)‖_F with the Heisenberg generator of the truncation
};

/// Heisenberg fixed point for λ = 0 from its four seed entries A00, A01, A10, A11.
FixedPointResult two_photon_fixed_point(cplx a00, cplx a01, cplx a10, cplx a11, const TwoPhotonParams& p);

// --- generic QMS from a classical rate matrix ---

enum class Boundary { reflecting, absorbing_truncate };

const char* to_string(Boundary b);

struct GenericQMSParams {
    /// N×N rates with N ≥ dim; off-diagonal entries ≥ 0, the diagonal is recomputed.
    Eigen::MatrixXd gamma;
    /// κ_m for m < dim; missing entries are zero.
    std::vector<double> kappa;
    Eigen::Index dim = 0;
    Boundary boundary = Boundary::reflecting;

    void validate() const;
};

struct GenericQMS {
    GeneratorPair pair;
    GKLSSpec spec;
    /// dim×dim rate matrix after the boundary adjustment, rows summing to zero.
    Eigen::MatrixXd rates;
};

GenericQMS build_generic_qms(const GenericQMSParams& p);

/// Rate matrix after the boundary adjustment, without building operators.
Eigen::MatrixXd adjusted_rates(const GenericQMSParams& p);

/// The matrix Γ with L(Σ f(j)|e_j⟩⟨e_j|) = Σ (Γf)(m)|e_m⟩⟨e_m| (Heisenberg picture).
Eigen::MatrixXd diagonal_restriction(const Superoperator& gen);

/// Largest off-diagonal entry produced by the generator from a diagonal matrix unit.
double diagonal_preservation_defect(const Superoperator& gen);

// --- k-photon absorption ---

struct KPhotonParams {
    int k = 1;
    double alpha = 0.0;
    Eigen::Index dim = 16;

    void validate() const;
};

struct KPhotonModel {
    GKLSSpec spec;
    /// Orthonormal basis of the span of the truncated coherent vectors |α_r⟩.
    Matrix kernel_basis;
    /// ‖L|α_r⟩‖ per normalized truncated coherent vector.
    std::vector<double> residuals;
    /// Smallest truncated mass e^{−|α|²}Σ_{n<dim}|α|^{2n}/n!.
    double truncation_mass = 1.0;
};

/// H = 0, single jump a^k − α^k I.
KPhotonModel build_k_photon(const KPhotonParams& p);

/// V(ρ) = tr(LρL†) for the first jump of `spec`.
double lyapunov_value(const GKLSSpec& spec, const Matrix& rho);

/// V(Φ*_t(ρ)) on a time grid.
std::vector<double> lyapunov_series(const GKLSSpec& spec, const Matrix& rho, const std::vector<double>& times);

}  // namespace qms
