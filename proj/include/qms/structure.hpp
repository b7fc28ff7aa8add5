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
#include <optional>
#include <vector>

#include "qms/semigroup.hpp"

namespace qms {

/// Orthogonal split H = R+ ⊕ T ⊕ R0. In finite dimension R0 = {0} and T = R+⊥.
struct RecurrentSplit {
    Subspace r_plus;
    Subspace transient;
    Subspace null_recurrent;
    /// tr((I−P)Φ*_t(I/d)(I−P)) on the diagnostic grid.
    std::vector<double> diagnostic_times;
    std::vector<double> transient_mass;
    bool transient_decaying = true;
};

struct AbsorptionEstimate {
    Operator op;
    double residual = 0.0;       // ‖Φ_T(P_V) − A(V)‖ at the largest checked T
    bool monotone_ok = true;     // Φ_t(P_V) non-decreasing on the grid
    bool enclosure_ok = true;    // false: V is not an enclosure, result is best effort
    double sandwich_defect = 0.0;  // violation of P_V ≤ A(V) ≤ I (max eigenvalue excess)
};

struct ErgodicityCheck {
    bool attractive = false;
    double deviation = 0.0;  // ‖A(R+) − I‖
};

struct RateCandidate {
    double t0 = 0.0;
    double kappa = 0.0;
};

/// Certificate 0 ≤ Φ_{t0}(I − P_{R+}) ≤ κ (I − P_{R+}) with κ < 1.
struct RateCertificate {
    double t0 = 0.0;
    double kappa = 0.0;
    double rate = 0.0;  // −ln(κ)/t0; +inf when κ = 0
    bool valid = false;
    bool trivial = false;  // R+ is the whole space, κ = 0 by convention
    std::vector<RateCandidate> candidates;
    /// max over the test grid of λ_max(Φ_t(I−P) − κ^{⌊t/t0⌋}(I−P)).
    double bound_violation = 0.0;
    std::vector<double> check_times;
};

struct BetaBlock {
    Subspace subspace;
    /// One admissible choice of mutually orthogonal minimal enclosures; seed dependent.
    std::vector<Subspace> chosen_factors;
};

struct EnclosureDecomposition {
    std::vector<Subspace> alpha_blocks;
    std::vector<DensityMatrix> alpha_states;  // unique invariant state of each α-block
    std::vector<BetaBlock> beta_blocks;
    double residual = 0.0;
    std::uint64_t seed = 0;
    /// False whenever a β-block is present: the factor choice is not unique.
    bool canonical = true;
};

enum class NfdMode { discrete, continuous };

struct NFDStage {
    Subspace subspace_t;     // H_{T_i}
    double sigma = 0.0;      // σ(T_{R_i}): spectral radius (discrete) or abscissa (continuous)
    Subspace cumulative_s;   // H_{S_{i+1}}
};

struct NFDResult {
    NfdMode mode = NfdMode::discrete;
    std::vector<NFDStage> stages;
    /// Index of the first GAS cumulative subspace: 0 is the seed itself,
    /// i > 0 the cumulative subspace after stage i−1.
    std::size_t gas_stage = 0;
};

enum class GasReason { contains_r_plus, spectral_radius_below_one, neither };

const char* to_string(GasReason r);

struct GASVerdict {
    bool is_gas = false;
    GasReason reason = GasReason::neither;
    bool contains_r_plus = false;
    double sigma_r1 = 0.0;     // spectral radius of exp(L*) compressed to V⊥ (t0 = 1)
    double abscissa_r1 = 0.0;  // spectral abscissa of L* compressed to V⊥
};

Subspace positive_recurrent_subspace(const Superoperator& gen, const Tolerances& tol = {});
Subspace positive_recurrent_subspace(const InvariantStateSet& states, const Tolerances& tol = {});

RecurrentSplit transient_split(const Superoperator& gen, const Tolerances& tol = {});

/// Decay scale used to place diagnostic times: the spectral gap, or 1 when there is none.
double decay_scale(const Superoperator& gen, const Tolerances& tol = {});

AbsorptionEstimate absorption_operator(const Superoperator& gen, const Subspace& v,
                                       const Tolerances& tol = {});

/// A(V) = E(P_V) only, without the time-domain diagnostics.
Operator absorption_limit(const Superoperator& gen, const Subspace& v, const Tolerances& tol = {});

ErgodicityCheck check_ergodic(const Superoperator& gen, const Tolerances& tol = {});

/// Default t0 grid: 8 geometric points over [0.1, 10] / gap.
std::vector<double> default_t0_grid(const Superoperator& gen, const Tolerances& tol = {});

RateCertificate rate_certificate(const Superoperator& gen, const std::vector<double>& t0_candidates,
                                 const Tolerances& tol = {});

/// Largest relative violation of the enclosure conditions P⊥ L_l P = 0 and
/// P⊥ (−iH − ½ΣL†L) P = 0.
double enclosure_defect(const GKLSSpec& spec, const Subspace& v);
/// Superoperator form: ‖(I − 𝒫) S 𝒫‖ / max(1, ‖S‖) with 𝒫(X) = P X P; works for
/// generators and channels in either picture.
double enclosure_defect(const Superoperator& s, const Subspace& v);

bool is_enclosure(const GKLSSpec& spec, const Subspace& v, double slack = 1e-9);
bool is_enclosure(const Superoperator& s, const Subspace& v, double slack = 1e-9);

EnclosureDecomposition minimal_enclosures(const Superoperator& gen, std::uint64_t seed = 20240601,
                                          const Tolerances& tol = {});

/// Nested-face decomposition. A channel input runs the discrete recipe; a
/// generator input runs the continuous one (abscissa in place of spectral
/// radius, 0 in place of 1).
NFDResult nfd(const Superoperator& channel_or_gen, const Subspace& seed, const Tolerances& tol = {});

GASVerdict is_gas(const Superoperator& gen, const Subspace& v, const Tolerances& tol = {});

/// Σ_α tr(P_α ρ) ρ_α for ρ block-diagonal with respect to a canonical decomposition of H.
DensityMatrix block_diagonal_limit(const Superoperator& gen, const DensityMatrix& rho,
                                   const EnclosureDecomposition& decomposition,
                                   const Tolerances& tol = {});

}  // namespace qms
