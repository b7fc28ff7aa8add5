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
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "qms/classical.hpp"
#include "qms/models.hpp"

namespace qms::cli {

using json = nlohmann::ordered_json;

struct CustomGKLSParams {
    Eigen::Index dim = 0;
    Matrix hamiltonian;
    std::vector<Matrix> jumps;
};

enum class Spacing { linear, geometric };

struct TimeGrid {
    double t_max = 10.0;
    int points = 51;
    Spacing spacing = Spacing::linear;

    std::vector<double> times() const;
};

/// Subspace selector used by the nfd and gas analyses.
struct SubspaceChoice {
    enum class Kind { zero, r_plus, full, indices } kind = Kind::r_plus;
    std::vector<Eigen::Index> indices;
};

struct AnalysisConfig {
    std::string model_name;
    std::variant<TwoPhotonParams, GenericQMSParams, KPhotonParams, CustomGKLSParams> model;
    /// Present when the generic-qms block was given as a birth–death chain.
    std::optional<BirthDeathChain> chain;
    Tolerances tolerances;
    std::vector<std::string> analyses;
    TimeGrid time_grid;
    std::uint64_t seed = 20240601;

    std::vector<double> rate_t0;                 // empty: default grid
    SubspaceChoice nfd_seed{SubspaceChoice::Kind::zero, {}};
    bool nfd_discrete = false;
    double nfd_t0 = 1.0;
    SubspaceChoice gas_subspace;
    double convergence_c_fraction = 0.5;
    std::string initial_state = "mixed";

    /// The configuration after defaults are applied, in canonical key order.
    json echo;
};

const std::vector<std::string>& known_analyses();

/// Parses and validates a configuration document. Throws ValidationError with
/// a dotted field path on the first problem found.
AnalysisConfig parse_config(const json& doc);
AnalysisConfig load_config(const std::string& path);

/// Birth–death chain behind a generic-qms model: the explicit chain block, or
/// the super- and sub-diagonals of a tridiagonal gamma.
BirthDeathChain chain_of(const AnalysisConfig& config);

}  // namespace qms::cli
