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

#include "qms/lindblad.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace qms {

Vector vec(const Matrix& x) { return Eigen::Map<const Vector>(x.data(), x.size()); }

Matrix unvec(const Vector& v, Eigen::Index d) {
    if (v.size() != d * d) throw ValidationError("unvec: length is not d^2");
    return Eigen::Map<const Matrix>(v.data(), d, d);
}

Matrix sandwich(const Matrix& a, const Matrix& b) { return kron(b.transpose(), a); }

const char* to_string(Picture p) {
    return p == Picture::heisenberg ? "heisenberg" : "schrodinger";
}

void GKLSSpec::validate(bool allow_trivial) const {
    const auto d = hamiltonian.dim();
    if (!is_hermitian(hamiltonian.matrix()))
        throw ValidationError("Hamiltonian is not Hermitian", "hamiltonian");
    for (std::size_t l = 0; l < jumps.size(); ++l)
        if (jumps[l].dim() != d)
            throw ValidationError("jump operator " + std::to_string(l) + " has dimension " +
                                      std::to_string(jumps[l].dim()) + ", expected " +
                                      std::to_string(d),
                                  "jumps[" + std::to_string(l) + "]");
    if (!allow_trivial && jumps.empty() && hamiltonian.matrix().norm() == 0.0)
        throw ValidationError("generator is identically zero");
}

void GeneratorPair::validate() const {
    const auto d = g.dim();
    for (std::size_t l = 0; l < jumps.size(); ++l)
        if (jumps[l].dim() != d)
            throw ValidationError("jump operator " + std::to_string(l) + " dimension mismatch",
                                  "jumps[" + std::to_string(l) + "]");
}

DissipativityReport check_dissipativity(const GeneratorPair& pair, double slack) {
    pair.validate();
    const auto d = pair.g.dim();
    DissipativityReport report;
    Matrix sum_ll = Matrix::Zero(d, d);
    for (const auto& l : pair.jumps) sum_ll += l.matrix().adjoint() * l.matrix();
    report.max_value = -std::numeric_limits<double>::infinity();
    for (Eigen::Index u = 0; u < d; ++u) {
        const double value = pair.g.matrix()(u, u).real() + 0.5 * sum_ll(u, u).real();
        report.max_value = std::max(report.max_value, value);
        if (value > slack) report.offending.push_back(u);
    }
    const Matrix& g = pair.g.matrix();
    report.markov_defect = (g + g.adjoint() + sum_ll).norm();
    report.dissipative = report.offending.empty();
    return report;
}

Superoperator::Superoperator(HilbertSpace space, Matrix matrix, Picture picture, SuperKind kind,
                             std::optional<double> time)
    : space_(std::move(space)), matrix_(std::move(matrix)), picture_(picture), kind_(kind),
      time_(time) {
    space_.validate();
    const auto n = space_.dim * space_.dim;
    if (matrix_.rows() != n || matrix_.cols() != n)
        throw ValidationError("superoperator must be d^2 x d^2");
    require_finite(matrix_, "Superoperator");
}

Superoperator Superoperator::generator(HilbertSpace space, Matrix matrix, Picture picture) {
    return {std::move(space), std::move(matrix), picture, SuperKind::generator, std::nullopt};
}

Superoperator Superoperator::channel(HilbertSpace space, Matrix matrix, Picture picture, double t) {
    return {std::move(space), std::move(matrix), picture, SuperKind::channel, t};
}

Matrix Superoperator::apply(const Matrix& x) const {
    if (x.rows() != dim() || x.cols() != dim())
        throw ValidationError("Superoperator::apply: operand shape mismatch");
    return unvec(matrix_ * vec(x), dim());
}

double Superoperator::trace_defect() const {
    const auto d = dim();
    const Vector id = vec(Matrix::Identity(d, d));
    const double shift = kind_ == SuperKind::channel ? 1.0 : 0.0;
    if (picture_ == Picture::schrodinger)
        return (id.adjoint() * matrix_ - shift * id.adjoint()).norm();
    return (matrix_ * id - shift * id).norm();
}

Superoperator build_schrodinger_generator(const GKLSSpec& spec) {
    spec.validate();
    const auto d = spec.space().dim;
    const Matrix id = Matrix::Identity(d, d);
    const Matrix& h = spec.hamiltonian.matrix();
    Matrix m = -kI * (sandwich(h, id) - sandwich(id, h));
    for (const auto& jump : spec.jumps) {
        const Matrix& l = jump.matrix();
        const Matrix ll = l.adjoint() * l;
        m += sandwich(l, l.adjoint()) - 0.5 * sandwich(ll, id) - 0.5 * sandwich(id, ll);
    }
    auto gen = Superoperator::generator(spec.space(), std::move(m), Picture::schrodinger);
    if (gen.trace_defect() > 1e-9 * std::max(1.0, gen.matrix().norm()))
        throw NumericalError("assembled Schrödinger generator is not trace-annihilating");
    return gen;
}

Superoperator build_heisenberg_generator(const GKLSSpec& spec) {
    return adjoint(build_schrodinger_generator(spec));
}

Superoperator build_from_generator_pair(const GeneratorPair& pair) {
    pair.validate();
    const auto d = pair.g.dim();
    const Matrix id = Matrix::Identity(d, d);
    const Matrix& g = pair.g.matrix();
    Matrix m = sandwich(id, g) + sandwich(g.adjoint(), id);
    for (const auto& jump : pair.jumps) {
        const Matrix& l = jump.matrix();
        m += sandwich(l.adjoint(), l);
    }
    return Superoperator::generator(pair.space(), std::move(m), Picture::heisenberg);
}

GeneratorPair generator_pair_from_gkls(const GKLSSpec& spec) {
    spec.validate();
    Matrix g = -kI * spec.hamiltonian.matrix();
    for (const auto& jump : spec.jumps) g -= 0.5 * jump.matrix().adjoint() * jump.matrix();
    return {Operator(spec.space(), std::move(g)), spec.jumps};
}

Superoperator adjoint(const Superoperator& s) {
    const Picture flipped =
        s.picture() == Picture::heisenberg ? Picture::schrodinger : Picture::heisenberg;
    if (s.is_generator()) return Superoperator::generator(s.space(), s.matrix().adjoint(), flipped);
    return Superoperator::channel(s.space(), s.matrix().adjoint(), flipped, *s.time());
}

Matrix compress_superoperator(const Matrix& s, const Matrix& q) {
    const Matrix w = kron(q.conjugate(), q);
    return w.adjoint() * s * w;
}

Superoperator to_schrodinger(const Superoperator& s) {
    return s.picture() == Picture::schrodinger ? s : adjoint(s);
}

Superoperator to_heisenberg(const Superoperator& s) {
    return s.picture() == Picture::heisenberg ? s : adjoint(s);
}

Superoperator channel_at(const Superoperator& gen, double t) {
    if (!gen.is_generator()) throw ValidationError("channel_at expects a generator");
    if (!(t >= 0.0)) throw ValidationError("channel_at: negative time");
    return Superoperator::channel(gen.space(), matrix_exponential(gen.matrix(), t), gen.picture(),
                                  t);
}

Matrix choi_matrix(const Superoperator& channel) {
    const Superoperator s = to_schrodinger(channel);
    const auto d = s.dim();
    Matrix choi(d * d, d * d);
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j)
            choi.block(i * d, j * d, d, d) = unvec(s.matrix().col(i + j * d), d);
    return choi;
}

CptpReport verify_cptp(const Superoperator& channel, const Tolerances& tol) {
    if (channel.is_generator())
        throw ValidationError("verify_cptp expects a channel, got a generator");
    CptpReport r;
    r.trace_dev = channel.trace_defect();
    r.choi_min_eig = hermitian_eigenvalues(choi_matrix(channel)).minCoeff();
    r.pass = r.choi_min_eig >= -tol.psd_floor && r.trace_dev <= 1e-8;
    return r;
}

}  // namespace qms
