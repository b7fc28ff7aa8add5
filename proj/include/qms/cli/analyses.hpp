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

#include <optional>
#include <string>
#include <vector>

#include "qms/cli/report.hpp"
#include "qms/spectral.hpp"
#include "qms/structure.hpp"

namespace qms::cli {

struct BuiltModel {
    GKLSSpec spec;
    std::optional<KPhotonModel> k_photon;
    json info;
    std::vector<std::pair<std::string, std::string>> warnings;
};

BuiltModel build_model(const AnalysisConfig& config);

/// A built model plus lazily computed quantities shared between analyses.
class ModelContext {
public:
    explicit ModelContext(const AnalysisConfig& config);
    ModelContext(const AnalysisConfig& config, BuiltModel built);

    const AnalysisConfig& config() const noexcept { return config_; }
    const GKLSSpec& spec() const noexcept { return spec_; }
    const Superoperator& generator() const noexcept { return gen_; }
    const std::optional<KPhotonModel>& k_photon() const noexcept { return k_photon_; }
    const json& info() const noexcept { return info_; }
    const Tolerances& tol() const noexcept { return config_.tolerances; }

    const std::vector<cplx>& eigenvalues();
    const InvariantStateSet& states();
    const Subspace& r_plus();

    void warn(const std::string& code, const std::string& message);
    const json& warnings() const noexcept { return warnings_; }

    Subspace resolve(const SubspaceChoice& choice);

private:
    const AnalysisConfig& config_;
    GKLSSpec spec_;
    Superoperator gen_;
    std::optional<KPhotonModel> k_photon_;
    json info_;
    json warnings_ = json::array();
    std::optional<std::vector<cplx>> eigs_;
    std::optional<InvariantStateSet> states_;
    std::optional<Subspace> r_plus_;
};

json run_analysis(const std::string& name, ModelContext& ctx);

struct EvolveTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

/// Initial operator from a state spec: mixed, fock:n, random, unit:j,k.
Matrix initial_state(const std::string& spec, Eigen::Index dim, std::uint64_t seed);

EvolveTable evolve_table(ModelContext& ctx, const std::vector<double>& times, const std::string& state);
std::string to_csv(const EvolveTable& table);

}  // namespace qms::cli
