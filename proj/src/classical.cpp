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

#include "qms/classical.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "qms/semigroup.hpp"
#include "qms/spectral.hpp"

namespace qms {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_add(double a, double b) {
    if (a == kNegInf) return b;
    if (b == kNegInf) return a;
    const double hi = std::max(a, b);
    return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

// Trend of Σ_{n<N} exp(log_terms[n]) from the partial sums over the last decade.
SeriesTrend trend_of(const std::vector<double>& log_terms) {
    SeriesTrend out;
    const std::size_t n = log_terms.size();
    if (n == 0) {
        out.log_partial_sum = kNegInf;
        return out;
    }
    const std::size_t start = std::max<std::size_t>(1, n / 10);
    double log_s = kNegInf;
    double log_s_start = kNegInf;
    for (std::size_t i = 0; i < n; ++i) {
        log_s = log_add(log_s, log_terms[i]);
        if (i + 1 == start) log_s_start = log_s;
    }
    out.log_partial_sum = log_s;
    out.partial_sum = std::exp(log_s);
    if (log_s == kNegInf || start == n) return out;
    if (log_s_start == kNegInf) {
        out.slope = std::numeric_limits<double>::infinity();
        out.trend = Trend::diverging;
        return out;
    }
    const double growth = log_s - log_s_start;
    out.slope = growth / std::log(static_cast<double>(n) / static_cast<double>(start));
    if (out.slope >= 0.05)
        out.trend = Trend::diverging;
    else if (std::expm1(growth) <= 1e-15)
        out.trend = Trend::flat;
    else
        out.trend = Trend::converging;
    return out;
}

void apply_ratio_hook(SeriesTrend& s, const std::optional<double>& limit) {
    if (!limit || *limit == 1.0) return;
    s.trend = *limit < 1.0 ? Trend::converging : Trend::diverging;
}

bool finite_sum(Trend t) { return t != Trend::diverging; }

double log_ratio(double num, double den) { return std::log(num) - std::log(den); }

StationaryMeasure normalize_log_measure(const std::vector<double>& log_w, double s_log) {
    StationaryMeasure out;
    double hi = kNegInf;
    for (double v : log_w) hi = std::max(hi, v);
    double total = 0.0;
    for (double v : log_w) total += std::exp(v - hi);
    for (double v : log_w) out.pi.push_back(std::exp(v - hi) / total);
    out.s_partial = std::exp(s_log);
    return out;
}

BirthDeathChain truncated(const BirthDeathChain& chain, Eigen::Index levels) {
    BirthDeathChain out;
    out.birth.assign(chain.birth.begin(), chain.birth.begin() + levels);
    out.death.assign(chain.death.begin(), chain.death.begin() + levels);
    out.birth.back() = 0.0;
    return out;
}

void check_levels(const BirthDeathChain& chain, Eigen::Index levels) {
    if (levels < 1 || levels > chain.horizon())
        throw ValidationError("levels must lie in [1, horizon = " + std::to_string(chain.horizon()) + "]",
                              "classical.levels");
}

void fill_residuals(StationaryMeasure& m, const BirthDeathChain& chain) {
    const auto n = static_cast<Eigen::Index>(m.pi.size());
    for (Eigen::Index i = 0; i + 1 < n; ++i)
        m.detailed_balance_residual =
            std::max(m.detailed_balance_residual, std::abs(m.pi[i] * chain.birth[i] - m.pi[i + 1] * chain.death[i + 1]));
    const Eigen::MatrixXd q = rate_matrix(chain, n);
    const Eigen::RowVectorXd pi = Eigen::Map<const Eigen::RowVectorXd>(m.pi.data(), n);
    m.generator_residual = (pi * q).cwiseAbs().maxCoeff();
}

}  // namespace

const char* to_string(Trend t) {
    switch (t) {
        case Trend::diverging: return "diverging";
        case Trend::converging: return "converging";
        case Trend::flat: return "flat";
    }
    return "flat";
}

const char* to_string(Recurrence r) {
    switch (r) {
        case Recurrence::positive_recurrent: return "positive-recurrent";
        case Recurrence::not_positive_recurrent: return "not-positive-recurrent";
        case Recurrence::inconclusive_at_horizon: return "inconclusive-at-horizon";
    }
    return "inconclusive-at-horizon";
}

void BirthDeathChain::validate() const {
    if (birth.empty()) throw ValidationError("chain needs at least one level", "classical.chain.horizon");
    if (birth.size() != death.size())
        throw ValidationError("birth and death rate lists differ in length", "classical.chain");
    for (std::size_t i = 0; i < birth.size(); ++i) {
        if (!std::isfinite(birth[i]) || birth[i] < 0.0)
            throw ValidationError("birth rate " + std::to_string(i) + " must be finite and ≥ 0", "classical.chain.birth");
        if (!std::isfinite(death[i]) || death[i] < 0.0)
            throw ValidationError("death rate " + std::to_string(i) + " must be finite and ≥ 0", "classical.chain.death");
    }
}

BirthDeathChain BirthDeathChain::constant(double up, double down, Eigen::Index horizon) {
    return linear(up, 0.0, down, 0.0, horizon);
}

BirthDeathChain BirthDeathChain::linear(double b0, double b1, double d0, double d1, Eigen::Index horizon) {
    BirthDeathChain c;
    for (Eigen::Index i = 0; i < horizon; ++i) {
        const auto x = static_cast<double>(i);
        c.birth.push_back(b0 + b1 * x);
        c.death.push_back(i == 0 ? 0.0 : d0 + d1 * x);
    }
    c.validate();
    return c;
}

BirthDeathChain BirthDeathChain::polynomial(double bc, double bp, double dc, double dp, Eigen::Index horizon) {
    BirthDeathChain c;
    for (Eigen::Index i = 0; i < horizon; ++i) {
        const auto x = static_cast<double>(i);
        c.birth.push_back(bc * std::pow(x + 1.0, bp));
        c.death.push_back(i == 0 ? 0.0 : dc * std::pow(x, dp));
    }
    c.validate();
    return c;
}

BirthDeathChain BirthDeathChain::geometric(double b0, double rb, double d0, double rd, Eigen::Index horizon) {
    BirthDeathChain c;
    for (Eigen::Index i = 0; i < horizon; ++i) {
        const auto x = static_cast<double>(i);
        c.birth.push_back(b0 * std::pow(rb, x));
        c.death.push_back(i == 0 ? 0.0 : d0 * std::pow(rd, x));
    }
    c.validate();
    return c;
}

Eigen::MatrixXd transition_matrix(const BirthDeathChain& chain) {
    chain.validate();
    const auto n = chain.horizon();
    Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double up = i + 1 < n ? chain.birth[i] : 0.0;
        const double down = i > 0 ? chain.death[i] : 0.0;
        const double total = up + down;
        if (total == 0.0) {
            p(i, i) = 1.0;
            continue;
        }
        if (up > 0.0) p(i, i + 1) = up / total;
        if (down > 0.0) p(i, i - 1) = down / total;
    }
    return p;
}

Eigen::MatrixXd rate_matrix(const BirthDeathChain& chain, Eigen::Index levels) {
    chain.validate();
    check_levels(chain, levels);
    Eigen::MatrixXd q = Eigen::MatrixXd::Zero(levels, levels);
    for (Eigen::Index i = 0; i < levels; ++i) {
        if (i + 1 < levels) q(i, i + 1) = chain.birth[i];
        if (i > 0) q(i, i - 1) = chain.death[i];
        q(i, i) = -(q.row(i).sum());
    }
    return q;
}

SeriesTrend reuter_nonexplosion(const BirthDeathChain& chain, Eigen::Index horizon) {
    chain.validate();
    check_levels(chain, horizon);
    if (horizon == 1) {
        SeriesTrend degenerate;
        degenerate.partial_sum = chain.birth[0] > 0.0 ? 1.0 / chain.birth[0] : std::numeric_limits<double>::infinity();
        degenerate.log_partial_sum = std::log(degenerate.partial_sum);
        degenerate.trend = Trend::diverging;
        return degenerate;
    }
    std::vector<double> log_terms;
    double log_t = kNegInf;
    for (Eigen::Index i = 0; i < horizon; ++i) {
        if (!(chain.birth[i] > 0.0))
            throw ValidationError("Reuter series needs positive birth rates", "classical.chain.birth");
        const double inner = i == 0 || chain.death[i] == 0.0 ? kNegInf : std::log(chain.death[i]) + log_t;
        log_t = log_add(0.0, inner) - std::log(chain.birth[i]);
        log_terms.push_back(log_t);
    }
    return trend_of(log_terms);
}

RecurrenceVerdict positive_recurrence(const BirthDeathChain& chain, Eigen::Index horizon, const RatioHook& hook) {
    chain.validate();
    check_levels(chain, horizon);
    for (Eigen::Index i = 0; i + 1 < horizon; ++i)
        if (!(chain.birth[i] > 0.0 && chain.death[i + 1] > 0.0))
            throw ValidationError("reducible chain: p(" + std::to_string(i) + "," + std::to_string(i + 1) +
                                      ") p(" + std::to_string(i + 1) + "," + std::to_string(i) + ") = 0",
                                  "classical.chain");
    auto p_up = [&](Eigen::Index i) {
        return i == 0 ? 1.0 : chain.birth[i] / (chain.birth[i] + chain.death[i]);
    };
    auto p_down = [&](Eigen::Index i) { return chain.death[i] / (chain.birth[i] + chain.death[i]); };

    // Interior levels only: the top level's upward rate leaves the horizon.
    std::vector<double> log_a, log_b;
    double la = 0.0, lb = 0.0;
    for (Eigen::Index i = 1; i + 1 < horizon; ++i) {
        la += log_ratio(p_down(i), p_up(i));
        lb += log_ratio(p_up(i - 1), p_down(i));
        log_a.push_back(la);
        log_b.push_back(lb);
    }
    RecurrenceVerdict out{Recurrence::inconclusive_at_horizon, trend_of(log_a), trend_of(log_b)};
    apply_ratio_hook(out.sum_a, hook.a_limit);
    apply_ratio_hook(out.sum_b, hook.b_limit);
    if (log_a.size() < 10 && !(hook.a_limit && hook.b_limit)) return out;
    if (finite_sum(out.sum_a.trend))
        out.classification = Recurrence::not_positive_recurrent;
    else if (finite_sum(out.sum_b.trend))
        out.classification = Recurrence::positive_recurrent;
    return out;
}

StationaryMeasure stationary_measure(const BirthDeathChain& chain, Eigen::Index levels, bool force) {
    chain.validate();
    check_levels(chain, levels);
    std::string warning;
    if (chain.horizon() > 1) {
        const auto verdict = positive_recurrence(chain, chain.horizon());
        if (verdict.classification != Recurrence::positive_recurrent) {
            warning = std::string("chain classified ") + to_string(verdict.classification) + " at horizon " +
                      std::to_string(chain.horizon());
            if (!force) throw ValidationError(warning + "; stationary measure not defined", "classical.chain");
        }
    }
    std::vector<double> log_w{0.0};
    double log_s = 0.0;
    for (Eigen::Index k = 1; k < levels; ++k) {
        if (chain.death[k] == 0.0 && chain.birth[k - 1] > 0.0)
            throw ValidationError("reducible chain: level " + std::to_string(k) + " has no death rate",
                                  "classical.chain.death");
        const double step = chain.birth[k - 1] == 0.0 ? kNegInf : log_ratio(chain.birth[k - 1], chain.death[k]);
        log_w.push_back(log_w.back() + step);
        log_s = log_add(log_s, log_w.back());
    }
    if (!std::isfinite(std::exp(log_s)))
        throw NumericalError("normalizing sum S diverges within the horizon (log S = " + std::to_string(log_s) + ")");
    StationaryMeasure out = normalize_log_measure(log_w, log_s);
    out.warning = warning;
    fill_residuals(out, chain);
    return out;
}

StationaryMeasure embedded_stationary_measure(const BirthDeathChain& chain, Eigen::Index levels) {
    chain.validate();
    check_levels(chain, levels);
    const BirthDeathChain window = truncated(chain, levels);
    const Eigen::MatrixXd p = transition_matrix(window);
    std::vector<double> log_w{0.0};
    double log_s = 0.0;
    for (Eigen::Index k = 1; k < levels; ++k) {
        if (p(k, k - 1) == 0.0) throw ValidationError("reducible chain", "classical.chain.death");
        log_w.push_back(log_w.back() + log_ratio(p(k - 1, k), p(k, k - 1)));
        log_s = log_add(log_s, log_w.back());
    }
    StationaryMeasure out = normalize_log_measure(log_w, log_s);
    const Eigen::RowVectorXd pi = Eigen::Map<const Eigen::RowVectorXd>(out.pi.data(), levels);
    out.generator_residual = (pi * p - pi).cwiseAbs().maxCoeff();
    return out;
}

GenericQMSParams generic_qms_params(const BirthDeathChain& chain, Eigen::Index dim, Boundary boundary) {
    chain.validate();
    check_levels(chain, dim);
    const auto n = chain.horizon();
    GenericQMSParams p;
    p.gamma = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        if (i + 1 < n) p.gamma(i, i + 1) = chain.birth[i];
        if (i > 0) p.gamma(i, i - 1) = chain.death[i];
    }
    p.dim = dim;
    p.boundary = boundary;
    return p;
}

ConsistencyReport quantum_classical_consistency(const BirthDeathChain& chain, Eigen::Index dim,
                                                const Tolerances& tol) {
    const GenericQMS model = build_generic_qms(generic_qms_params(chain, dim));
    const Superoperator gen = build_schrodinger_generator(model.spec);
    const InvariantStateSet states = invariant_states(gen, tol);
    const Matrix& rho = states.canonical_state.matrix();
    const StationaryMeasure measure = stationary_measure(chain, dim, true);

    ConsistencyReport out;
    out.dim = dim;
    out.irreducible = is_irreducible(states, tol);
    Matrix off = rho;
    off.diagonal().setZero();
    out.off_diagonal_mass = off.norm();
    for (Eigen::Index n = 0; n < dim; ++n) {
        out.populations.push_back(rho(n, n).real());
        out.pi.push_back(measure.pi[static_cast<std::size_t>(n)]);
        out.max_population_error = std::max(out.max_population_error, std::abs(out.populations.back() - out.pi.back()));
    }
    if (out.off_diagonal_mass > 1e-9)
        throw CertificationError("invariant state is not diagonal (off-diagonal mass " +
                                 std::to_string(out.off_diagonal_mass) + ")");
    if (out.max_population_error > 1e-8)
        throw CertificationError("invariant populations differ from the classical measure by " +
                                 std::to_string(out.max_population_error));
    return out;
}

}  // namespace qms
