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

#include "qms/models.hpp"

namespace qms {

/// Birth–death rates on levels 0..N−1: birth[i] = γ_{i,i+1}, death[i] = γ_{i,i−1}.
/// death[0] is ignored; birth[N−1] leaves the horizon.
struct BirthDeathChain {
    std::vector<double> birth;
    std::vector<double> death;

    Eigen::Index horizon() const noexcept { return static_cast<Eigen::Index>(birth.size()); }
    void validate() const;

    static BirthDeathChain constant(double up, double down, Eigen::Index horizon);
    /// up_i = b0 + b1·i, down_i = d0 + d1·i.
    static BirthDeathChain linear(double b0, double b1, double d0, double d1, Eigen::Index horizon);
    /// up_i = bc·(i+1)^bp, down_i = dc·i^dp.
    static BirthDeathChain polynomial(double bc, double bp, double dc, double dp, Eigen::Index horizon);
    /// up_i = b0·rb^i, down_i = d0·rd^i.
    static BirthDeathChain geometric(double b0, double rb, double d0, double rd, Eigen::Index horizon);
};

enum class Trend { diverging, converging, flat };
enum class Recurrence { positive_recurrent, not_positive_recurrent, inconclusive_at_horizon };

const char* to_string(Trend t);
const char* to_string(Recurrence r);

struct SeriesTrend {
    double partial_sum = 0.0;  // may be +inf when the partial sum overflows
    double log_partial_sum = 0.0;
    double slope = 0.0;        // d log S / d log n over the last decade
    Trend trend = Trend::flat;
};

/// Optional asymptotic limits of consecutive term ratios; a limit ≠ 1 decides
/// the series by the ratio test instead of the horizon trend.
struct RatioHook {
    std::optional<double> a_limit;
    std::optional<double> b_limit;
};

struct RecurrenceVerdict {
    Recurrence classification = Recurrence::inconclusive_at_horizon;
    SeriesTrend sum_a;  // Σ_n Π_{i≤n} p_{i,i−1}/p_{i,i+1}
    SeriesTrend sum_b;  // Σ_n Π_{i≤n} p_{i−1,i}/p_{i,i−1}
};

struct StationaryMeasure {
    std::vector<double> pi;
    double s_partial = 0.0;
    /// max_n |π(n)γ_{n,n+1} − π(n+1)γ_{n+1,n}|.
    double detailed_balance_residual = 0.0;
    /// ‖πᵀQ‖_∞ for the truncated rate matrix Q with a reflecting top level.
    double generator_residual = 0.0;
    std::string warning;
};

/// Embedded jump-chain probabilities, reflecting at the top level.
Eigen::MatrixXd transition_matrix(const BirthDeathChain& chain);

/// Generator Q on the first `levels` levels, reflecting at the top.
Eigen::MatrixXd rate_matrix(const BirthDeathChain& chain, Eigen::Index levels);

/// Partial sums of Σ_i [1/γ_{i,i+1} + γ_{i,i−1}/(γ_{i,i+1}γ_{i−1,i}) + ⋯].
SeriesTrend reuter_nonexplosion(const BirthDeathChain& chain, Eigen::Index horizon);

RecurrenceVerdict positive_recurrence(const BirthDeathChain& chain, Eigen::Index horizon,
                                      const RatioHook& hook = {});

/// π(n) ∝ Π_{k≤n} γ_{k−1,k}/γ_{k,k−1} on `levels` levels: the stationary law of the
/// continuous-time chain. Unless `force`, the chain must classify as positive recurrent
/// at its own horizon.
StationaryMeasure stationary_measure(const BirthDeathChain& chain, Eigen::Index levels, bool force = false);

/// π(n) ∝ Π_{k≤n} p_{k−1,k}/p_{k,k−1} with embedded-chain probabilities: the
/// stationary law of the jump chain.
StationaryMeasure embedded_stationary_measure(const BirthDeathChain& chain, Eigen::Index levels);

/// Rate matrix of the chain as generic-QMS input (tridiagonal, N×N).
GenericQMSParams generic_qms_params(const BirthDeathChain& chain, Eigen::Index dim,
                                    Boundary boundary = Boundary::reflecting);

struct ConsistencyReport {
    Eigen::Index dim = 0;
    double off_diagonal_mass = 0.0;
    double max_population_error = 0.0;
    bool irreducible = false;
    std::vector<double> populations;
    std::vector<double> pi;
};

/// Invariant state of the generic QMS against the classical π. Throws
/// CertificationError when the state is not diagonal within 1e-9 or the
/// populations differ from π by more than 1e-8.
ConsistencyReport quantum_classical_consistency(const BirthDeathChain& chain, Eigen::Index dim,
                                                const Tolerances& tol = {});

}  // namespace qms
