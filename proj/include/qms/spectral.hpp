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

struct SpectralReport {
    std::vector<cplx> eigenvalues;  // descending real part
    Eigen::Index zero_multiplicity = 0;
    std::optional<cplx> lambda2;     // nullopt: no decaying eigenvalue
    std::optional<double> gap;
    bool irreducible = false;
    bool primitive = false;
};

struct ConvergenceBound {
    double c = 0.0;
    double C = 0.0;
    double grid_max_t = 0.0;
    std::vector<double> grid;
    /// Largest ratio ‖Φ*_t(ρ) − ρ_∞‖₁ / (C e^{−ct}) over the random-state check.
    double worst_ratio = 0.0;
    bool verified = false;
};

/// Largest real part among eigenvalues with Re < −zero_band, negated.
std::optional<double> spectral_gap_value(const std::vector<cplx>& eigs, const Tolerances& tol = {});

bool is_irreducible(const Superoperator& gen, const Tolerances& tol = {});
bool is_irreducible(const InvariantStateSet& states, const Tolerances& tol = {});

bool is_primitive(const Superoperator& gen, double t, const Tolerances& tol = {});

SpectralReport spectral_gap(const Superoperator& gen, const Tolerances& tol = {});

ConvergenceBound convergence_bound(const Superoperator& gen, double c, const Tolerances& tol = {},
                                   std::uint64_t seed = 20240601);

/// Random density matrix from a Ginibre sample G: GG†/tr(GG†).
Matrix random_density(Eigen::Index d, std::uint64_t& state);

}  // namespace qms
