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

#include "qms/structure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <string>

#include "qms/spectral.hpp"

namespace qms {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Matrix hermitize(const Matrix& a) { return 0.5 * (a + a.adjoint()); }

double max_eig(const Matrix& a) { return hermitian_eigenvalues(a).maxCoeff(); }

std::vector<double> geometric_grid(double lo, double hi, int points) {
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(points));
    if (points == 1) return {hi};
    const double ratio = std::pow(hi / lo, 1.0 / (points - 1));
    double t = lo;
    for (int i = 0; i < points; ++i, t *= ratio) out.push_back(i + 1 == points ? hi : t);
    return out;
}

// Real coordinates of a complex matrix: [Re vec(X); Im vec(X)].
Eigen::VectorXd realify(const Matrix& x) {
    const Vector v = vec(x);
    Eigen::VectorXd out(2 * v.size());
    out << v.real(), v.imag();
    return out;
}

Matrix complexify(const Eigen::VectorXd& r, Eigen::Index k) {
    const auto n = k * k;
    Vector v(n);
    v.real() = r.head(n);
    v.imag() = r.tail(n);
    return unvec(v, k);
}

// Real-orthonormal Hermitian basis of the *-closed complex span of `mats`.
std::vector<Matrix> hermitian_basis(const std::vector<Matrix>& mats, Eigen::Index k,
                                    const Tolerances& tol) {
    if (mats.empty()) return {};
    Eigen::MatrixXd r(2 * k * k, 2 * static_cast<Eigen::Index>(mats.size()));
    for (std::size_t j = 0; j < mats.size(); ++j) {
        const Matrix& b = mats[j];
        r.col(2 * static_cast<Eigen::Index>(j)) = realify(0.5 * (b + b.adjoint()));
        r.col(2 * static_cast<Eigen::Index>(j) + 1) = realify((b - b.adjoint()) / (2.0 * kI));
    }
    Eigen::BDCSVD<Eigen::MatrixXd> svd(r, Eigen::ComputeThinU);
    const auto& s = svd.singularValues();
    std::vector<Matrix> out;
    if (s.size() == 0 || s(0) <= 0.0) return out;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) > tol.nullspace_rel * s(0)) out.push_back(hermitize(complexify(svd.matrixU().col(i), k)));
    return out;
}

// Hermitian basis of the centre of the algebra spanned by `basis`.
std::vector<Matrix> centre_of(const std::vector<Matrix>& basis, Eigen::Index k,
                              const Tolerances& tol) {
    const auto f = static_cast<Eigen::Index>(basis.size());
    Eigen::MatrixXd a(2 * k * k * f, f);
    for (Eigen::Index j = 0; j < f; ++j)
        for (Eigen::Index l = 0; l < f; ++l) {
            const Matrix comm = basis[j] * basis[l] - basis[l] * basis[j];
            a.block(l * 2 * k * k, j, 2 * k * k, 1) = realify(comm);
        }
    Eigen::BDCSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    Eigen::Index rank = 0;
    if (s.size() && s(0) > 1e-12)
        for (Eigen::Index i = 0; i < s.size(); ++i)
            if (s(i) > tol.nullspace_rel * s(0)) ++rank;
    const Eigen::MatrixXd coeffs = svd.matrixV().rightCols(f - rank);
    std::vector<Matrix> out;
    for (Eigen::Index c = 0; c < coeffs.cols(); ++c) {
        Matrix z = Matrix::Zero(k, k);
        for (Eigen::Index j = 0; j < f; ++j) z += coeffs(j, c) * basis[j];
        out.push_back(hermitize(z));
    }
    return out;
}

// Orthonormal bases of the eigenspaces of a Hermitian matrix, clustering
// eigenvalues closer than 1e-6 of the spectral spread.
std::vector<Matrix> spectral_projections(const Matrix& z) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(z));
    const auto& w = es.eigenvalues();
    const double scale = std::max(w.cwiseAbs().maxCoeff(), 1e-300);
    std::vector<Matrix> out;
    Eigen::Index start = 0;
    for (Eigen::Index i = 1; i <= w.size(); ++i) {
        if (i == w.size() || w(i) - w(i - 1) > 1e-6 * scale) {
            out.push_back(es.eigenvectors().middleCols(start, i - start));
            start = i;
        }
    }
    return out;
}

Matrix random_combination(const std::vector<Matrix>& basis, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Matrix z = Matrix::Zero(basis.front().rows(), basis.front().cols());
    for (const auto& b : basis) z += gauss(rng) * b;
    return z;
}

struct Certified {
    double defect = 0.0;
    DensityMatrix state;
};

// An output block must be an enclosure whose compressed generator has a
// one-dimensional kernel spanned by a faithful state.
Certified certify_block(const Superoperator& schr, const Subspace& v, const Tolerances& tol,
                        const std::string& label) {
    const double defect = enclosure_defect(schr, v);
    if (defect > 1e-9)
        throw CertificationError(label + " is not an enclosure (defect " + std::to_string(defect) + ")");
    const auto k = v.dim();
    const Matrix local = compress_superoperator(schr.matrix(), v.basis());
    const Matrix kernel = nullspace(local, tol, schr.matrix().norm());
    if (kernel.cols() != 1)
        throw CertificationError(label + " is not minimal: restricted kernel has dimension " +
                                 std::to_string(kernel.cols()));
    Matrix rho = unvec(kernel.col(0), k);
    rho /= rho.trace();
    rho = hermitize(rho);
    const RealVector w = hermitian_eigenvalues(rho);
    if (w.minCoeff() <= tol.nullspace_rel * w.maxCoeff())
        throw CertificationError(label + " invariant state is not faithful (min eigenvalue " +
                                 std::to_string(w.minCoeff()) + ")");
    const Matrix embedded = v.basis() * rho * v.basis().adjoint();
    return {defect, DensityMatrix::from_psd_projection(schr.space(), embedded, 1.0)};
}

struct Signature {
    std::vector<Eigen::Index> alpha;
    std::vector<std::pair<Eigen::Index, std::size_t>> beta;
    bool operator==(const Signature&) const = default;
};

Signature signature_of(const EnclosureDecomposition& d) {
    Signature s;
    for (const auto& a : d.alpha_blocks) s.alpha.push_back(a.dim());
    for (const auto& b : d.beta_blocks) s.beta.emplace_back(b.subspace.dim(), b.chosen_factors.size());
    std::sort(s.alpha.begin(), s.alpha.end());
    std::sort(s.beta.begin(), s.beta.end());
    return s;
}

EnclosureDecomposition decompose_once(const Superoperator& schr, const Subspace& r_plus,
                                      const std::vector<Matrix>& fixed_basis,
                                      const std::vector<Matrix>& centre, std::uint64_t seed,
                                      const Tolerances& tol) {
    const auto& space = schr.space();
    const Matrix& q = r_plus.basis();
    const auto r = r_plus.dim();
    std::mt19937_64 rng(seed);

    EnclosureDecomposition out;
    out.seed = seed;
    std::vector<Matrix> blocks;
    if (centre.size() <= 1)
        blocks.push_back(Matrix::Identity(r, r));
    else
        blocks = spectral_projections(random_combination(centre, rng));

    std::vector<Subspace> pieces;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        const Matrix& local = blocks[b];
        std::vector<Matrix> restricted;
        restricted.reserve(fixed_basis.size());
        for (const auto& f : fixed_basis) restricted.push_back(local.adjoint() * f * local);
        const auto herm = hermitian_basis(restricted, local.cols(), tol);
        Subspace block(space, q * local);
        const std::string label = "block " + std::to_string(b) + " (dim " + std::to_string(block.dim()) + ")";
        if (herm.size() <= 1) {
            auto cert = certify_block(schr, block, tol, "alpha " + label);
            out.residual = std::max(out.residual, cert.defect);
            out.alpha_blocks.push_back(block);
            out.alpha_states.push_back(std::move(cert.state));
            pieces.push_back(block);
            continue;
        }
        BetaBlock beta{block, {}};
        for (const Matrix& factor : spectral_projections(random_combination(herm, rng))) {
            Subspace piece(space, q * local * factor);
            auto cert = certify_block(schr, piece, tol, "beta factor of " + label);
            out.residual = std::max(out.residual, cert.defect);
            beta.chosen_factors.push_back(piece);
            pieces.push_back(piece);
        }
        out.beta_blocks.push_back(std::move(beta));
    }
    for (std::size_t i = 0; i < pieces.size(); ++i)
        for (std::size_t j = i + 1; j < pieces.size(); ++j) {
            const double overlap = spectral_norm(pieces[i].basis().adjoint() * pieces[j].basis());
            if (overlap > 1e-8)
                throw CertificationError("decomposition pieces " + std::to_string(i) + " and " +
                                         std::to_string(j) + " are not orthogonal");
            out.residual = std::max(out.residual, overlap);
        }
    out.canonical = out.beta_blocks.empty();
    return out;
}

Matrix complement_basis(const Subspace& v) { return subspace_complement(v).basis(); }

}  // namespace

const char* to_string(GasReason r) {
    switch (r) {
        case GasReason::contains_r_plus: return "contains_r_plus";
        case GasReason::spectral_radius_below_one: return "spectral_radius_below_one";
        case GasReason::neither: return "neither";
    }
    return "neither";
}

Subspace positive_recurrent_subspace(const InvariantStateSet& states, const Tolerances& tol) {
    return support_projection(states.canonical_state.space(), states.canonical_state.matrix(), tol);
}

Subspace positive_recurrent_subspace(const Superoperator& gen, const Tolerances& tol) {
    return positive_recurrent_subspace(invariant_states(gen, tol), tol);
}

double decay_scale(const Superoperator& gen, const Tolerances& tol) {
    const auto gap = spectral_gap_value(eigenvalues(gen.matrix()), tol);
    return gap ? *gap : 1.0;
}

RecurrentSplit transient_split(const Superoperator& gen, const Tolerances& tol) {
    const Superoperator schr = to_schrodinger(gen);
    const auto d = schr.dim();
    Subspace r_plus = positive_recurrent_subspace(schr, tol);
    Subspace transient = subspace_complement(r_plus);
    RecurrentSplit out{r_plus, transient, Subspace::zero(schr.space()), {}, {}, true};
    if (transient.is_zero()) return out;
    const double scale = decay_scale(schr, tol);
    out.diagnostic_times = {0.0};
    for (double t : {1.0, 2.0, 4.0, 8.0, 16.0}) out.diagnostic_times.push_back(t / scale);
    const auto states = evolve_series(schr, Matrix::Identity(d, d) / static_cast<double>(d),
                                      out.diagnostic_times);
    for (const auto& s : states) out.transient_mass.push_back((transient.projector() * s).trace().real());
    for (std::size_t i = 1; i < out.transient_mass.size(); ++i)
        if (out.transient_mass[i] > out.transient_mass[i - 1] + 1e-12) out.transient_decaying = false;
    return out;
}

Operator absorption_limit(const Superoperator& gen, const Subspace& v, const Tolerances& tol) {
    const Superoperator heis = to_heisenberg(gen);
    const ErgodicProjection e = ergodic_projection(heis, tol);
    return {gen.space(), hermitize(e.apply(v.projector()))};
}

AbsorptionEstimate absorption_operator(const Superoperator& gen, const Subspace& v,
                                       const Tolerances& tol) {
    const Superoperator heis = to_heisenberg(gen);
    const auto d = heis.dim();
    AbsorptionEstimate out{absorption_limit(heis, v, tol)};
    out.enclosure_ok = is_enclosure(heis, v);
    const Matrix& a = out.op.matrix();
    out.sandwich_defect = std::max({0.0, max_eig(v.projector() - a), max_eig(a - Matrix::Identity(d, d))});

    const double scale = decay_scale(heis, tol);
    std::vector<double> times;
    for (double t : {0.5, 1.0, 2.0, 4.0, 8.0, 10.0, 16.0, 32.0, 50.0, 100.0}) times.push_back(t / scale);
    const auto series = evolve_series(heis, v.projector(), times);
    out.residual = spectral_norm(series.back() - a);
    Matrix previous = v.projector();
    for (const auto& m : series) {
        if (hermitian_eigenvalues(m - previous).minCoeff() < -tol.psd_floor) out.monotone_ok = false;
        previous = m;
    }
    return out;
}

ErgodicityCheck check_ergodic(const Superoperator& gen, const Tolerances& tol) {
    const auto d = gen.dim();
    const Subspace r_plus = positive_recurrent_subspace(gen, tol);
    const Operator a = absorption_limit(gen, r_plus, tol);
    ErgodicityCheck out;
    out.deviation = spectral_norm(a.matrix() - Matrix::Identity(d, d));
    out.attractive = out.deviation <= tol.convergence_abs;
    return out;
}

std::vector<double> default_t0_grid(const Superoperator& gen, const Tolerances& tol) {
    const double scale = decay_scale(gen, tol);
    return geometric_grid(0.1 / scale, 10.0 / scale, 8);
}

RateCertificate rate_certificate(const Superoperator& gen, const std::vector<double>& t0_candidates,
                                 const Tolerances& tol) {
    for (double t0 : t0_candidates)
        if (!(t0 > 0.0) || !std::isfinite(t0))
            throw ValidationError("rate_certificate: t0 candidates must be positive", "t0");
    const auto d = gen.dim();
    const Subspace r_plus = positive_recurrent_subspace(gen, tol);
    RateCertificate out;
    if (r_plus.is_full()) {
        out.t0 = t0_candidates.empty() ? 1.0 : t0_candidates.front();
        out.kappa = 0.0;
        out.rate = kInf;
        out.valid = true;
        out.trivial = true;
        return out;
    }
    if (t0_candidates.empty()) throw ValidationError("rate_certificate: no t0 candidates", "t0");
    const Superoperator heis = to_heisenberg(gen);
    const Matrix outside = Matrix::Identity(d, d) - r_plus.projector();

    double best_rate = -1.0;
    std::size_t best = 0;
    double smallest_kappa = kInf;
    for (std::size_t i = 0; i < t0_candidates.size(); ++i) {
        const double t0 = t0_candidates[i];
        const Matrix y = evolve(heis, outside, t0);
        const double kappa = std::max(0.0, max_eig(y));
        out.candidates.push_back({t0, kappa});
        if (kappa < smallest_kappa) {
            smallest_kappa = kappa;
            if (best_rate < 0.0) best = i;
        }
        if (kappa < 1.0 - 1e-9) {
            const double rate = kappa > 0.0 ? -std::log(kappa) / t0 : kInf;
            // ties within rounding keep the earlier (shorter) t0
            if (best_rate < 0.0 || rate > best_rate * (1.0 + 1e-9)) {
                best_rate = rate;
                best = i;
            }
        }
    }
    out.t0 = out.candidates[best].t0;
    out.kappa = out.candidates[best].kappa;
    out.rate = out.kappa > 0.0 ? -std::log(out.kappa) / out.t0 : kInf;
    out.valid = best_rate >= 0.0;
    if (!out.valid) return out;

    out.check_times = geometric_grid(out.t0 / 8.0, 20.0 * out.t0, 24);
    const auto series = evolve_series(heis, outside, out.check_times);
    for (std::size_t i = 0; i < series.size(); ++i) {
        const double n = std::floor(out.check_times[i] / out.t0);
        const double bound = std::pow(out.kappa, n);
        out.bound_violation = std::max(out.bound_violation, max_eig(series[i] - bound * outside));
    }
    out.valid = out.bound_violation <= 1e-7;
    return out;
}

double enclosure_defect(const GKLSSpec& spec, const Subspace& v) {
    spec.validate();
    if (!spec.space().same_as(v.space())) throw ValidationError("enclosure_defect: dimension mismatch");
    const auto d = v.ambient_dim();
    const Matrix& p = v.projector();
    const Matrix outside = Matrix::Identity(d, d) - p;
    Matrix g = -kI * spec.hamiltonian.matrix();
    for (const auto& l : spec.jumps) g -= 0.5 * l.matrix().adjoint() * l.matrix();
    double scale = std::max(1.0, g.norm());
    double defect = (outside * g * p).norm();
    for (const auto& l : spec.jumps) {
        scale = std::max(scale, l.matrix().norm());
        defect = std::max(defect, (outside * l.matrix() * p).norm());
    }
    return defect / scale;
}

double enclosure_defect(const Superoperator& s, const Subspace& v) {
    if (!s.space().same_as(v.space())) throw ValidationError("enclosure_defect: dimension mismatch");
    if (v.is_zero() || v.is_full()) return 0.0;
    const Superoperator schr = to_schrodinger(s);
    const Matrix w = kron(v.basis().conjugate(), v.basis());
    const Matrix image = schr.matrix() * w;
    const Matrix leaked = image - w * (w.adjoint() * image);
    return leaked.norm() / std::max(1.0, schr.matrix().norm());
}

bool is_enclosure(const GKLSSpec& spec, const Subspace& v, double slack) {
    return enclosure_defect(spec, v) <= slack;
}

bool is_enclosure(const Superoperator& s, const Subspace& v, double slack) {
    return enclosure_defect(s, v) <= slack;
}

EnclosureDecomposition minimal_enclosures(const Superoperator& gen, std::uint64_t seed,
                                          const Tolerances& tol) {
    if (!gen.is_generator()) throw ValidationError("minimal_enclosures expects a generator");
    const Superoperator schr = to_schrodinger(gen);
    const Subspace r_plus = positive_recurrent_subspace(schr, tol);
    if (r_plus.is_zero()) throw CertificationError("positive recurrent subspace is empty");
    if (!is_enclosure(schr, r_plus))
        throw CertificationError("positive recurrent subspace failed the enclosure test");

    const auto r = r_plus.dim();
    const Matrix heis_local = compress_superoperator(to_heisenberg(schr).matrix(), r_plus.basis());
    const Matrix fixed = nullspace(heis_local, tol, schr.matrix().norm());
    std::vector<Matrix> raw;
    for (Eigen::Index j = 0; j < fixed.cols(); ++j) raw.push_back(unvec(fixed.col(j), r));
    const auto fixed_basis = hermitian_basis(raw, r, tol);
    if (fixed_basis.empty()) throw CertificationError("fixed-point algebra on R+ is empty");
    const auto centre = centre_of(fixed_basis, r, tol);

    constexpr std::uint64_t kStride = 0x9E3779B97F4A7C15ULL;
    EnclosureDecomposition first = decompose_once(schr, r_plus, fixed_basis, centre, seed, tol);
    const Signature expected = signature_of(first);
    for (std::uint64_t k = 1; k < 3; ++k) {
        const auto again = decompose_once(schr, r_plus, fixed_basis, centre, seed + k * kStride, tol);
        if (!(signature_of(again) == expected))
            throw CertificationError("decomposition block structure depends on the random probe seed");
    }
    return first;
}

NFDResult nfd(const Superoperator& channel_or_gen, const Subspace& seed, const Tolerances& tol) {
    const Superoperator schr = to_schrodinger(channel_or_gen);
    if (!schr.space().same_as(seed.space())) throw ValidationError("nfd: seed dimension mismatch");
    if (!is_enclosure(schr, seed))
        throw ValidationError("nfd: seed subspace is not invariant (defect " +
                              std::to_string(enclosure_defect(schr, seed)) + ")", "seed");
    NFDResult out;
    out.mode = schr.is_generator() ? NfdMode::continuous : NfdMode::discrete;
    const double stable_edge = out.mode == NfdMode::discrete ? 1.0 : 0.0;

    const double scale = schr.matrix().norm();
    Subspace s = seed;
    bool gas_found = false;
    while (!s.is_full()) {
        const Matrix q = complement_basis(s);
        const auto di = q.cols();
        const Matrix local = compress_superoperator(schr.matrix(), q);
        const auto eigs = eigenvalues(local);
        const double sigma = out.mode == NfdMode::discrete ? spectral_radius(eigs) : spectral_abscissa(eigs);
        if (!out.stages.empty() && !(sigma < out.stages.back().sigma))
            throw NumericalError("nfd: sigma did not decrease (gap " +
                                 std::to_string(out.stages.back().sigma - sigma) + ")");
        if (!gas_found && sigma < stable_edge - tol.peripheral_band) {
            out.gas_stage = out.stages.size();
            gas_found = true;
        }
        const Matrix peak = generalized_eigenspace(local, sigma, static_cast<int>(di * di), tol, scale);
        if (peak.cols() == 0)
            throw NumericalError("nfd: no generalized eigenvector at sigma = " + std::to_string(sigma));
        Matrix columns(di, 2 * di * peak.cols());
        for (Eigen::Index j = 0; j < peak.cols(); ++j) {
            const Matrix x = unvec(peak.col(j), di);
            columns.middleCols(2 * j * di, di) = x;
            columns.middleCols((2 * j + 1) * di, di) = x.adjoint();
        }
        Subspace face(s.space(), q * range_basis(columns, tol));
        Subspace next = subspace_sum(s, face, tol);
        if (next.dim() <= s.dim()) throw NumericalError("nfd: stage did not enlarge the invariant subspace");
        out.stages.push_back({face, sigma, next});
        s = std::move(next);
    }
    if (!gas_found) out.gas_stage = out.stages.size();
    return out;
}

GASVerdict is_gas(const Superoperator& gen, const Subspace& v, const Tolerances& tol) {
    if (!gen.is_generator()) throw ValidationError("is_gas expects a generator");
    const Superoperator schr = to_schrodinger(gen);
    if (!is_enclosure(schr, v))
        throw ValidationError("is_gas: subspace is not an enclosure", "subspace");
    GASVerdict out;
    const Subspace r_plus = positive_recurrent_subspace(schr, tol);
    out.contains_r_plus = subspace_contains(v, r_plus);
    if (v.is_full()) {
        out.sigma_r1 = 0.0;
        out.abscissa_r1 = -kInf;
    } else {
        const Matrix local = compress_superoperator(schr.matrix(), complement_basis(v));
        out.abscissa_r1 = spectral_abscissa(local);
        out.sigma_r1 = spectral_radius(matrix_exponential(local, 1.0));
    }
    const bool discrete_gas = out.sigma_r1 < 1.0 - tol.peripheral_band;
    const bool continuous_gas = out.abscissa_r1 < -tol.peripheral_band;
    if (discrete_gas != out.contains_r_plus || continuous_gas != out.contains_r_plus) {
        std::ostringstream msg;
        msg << "GAS criteria disagree: contains R+ = " << out.contains_r_plus
            << ", sigma = " << out.sigma_r1 << ", abscissa = " << out.abscissa_r1;
        throw CertificationError(msg.str());
    }
    out.is_gas = out.contains_r_plus;
    out.reason = out.is_gas ? GasReason::contains_r_plus : GasReason::neither;
    return out;
}

DensityMatrix block_diagonal_limit(const Superoperator& gen, const DensityMatrix& rho,
                                   const EnclosureDecomposition& decomposition,
                                   const Tolerances& tol) {
    (void)tol;
    if (!gen.space().same_as(rho.space())) throw ValidationError("block_diagonal_limit: dimension mismatch");
    if (!decomposition.beta_blocks.empty())
        throw ValidationError("block_diagonal_limit needs a unique decomposition (no beta blocks)");
    const auto d = gen.dim();
    Eigen::Index covered = 0;
    Matrix diagonal = Matrix::Zero(d, d);
    for (const auto& block : decomposition.alpha_blocks) {
        covered += block.dim();
        diagonal += block.projector() * rho.matrix() * block.projector();
    }
    if (covered != d)
        throw ValidationError("block_diagonal_limit requires R+ to be the whole space (no transient part)");
    const double off_block = (rho.matrix() - diagonal).norm();
    if (off_block > 1e-8)
        throw ValidationError("state has off-block-diagonal mass " + std::to_string(off_block));
    Matrix limit = Matrix::Zero(d, d);
    for (std::size_t a = 0; a < decomposition.alpha_blocks.size(); ++a) {
        const double weight = (decomposition.alpha_blocks[a].projector() * rho.matrix()).trace().real();
        limit += weight * decomposition.alpha_states[a].matrix();
    }
    return DensityMatrix::from_psd_projection(gen.space(), limit, 1.0);
}

}  // namespace qms
