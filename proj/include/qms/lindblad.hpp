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
#include <vector>

#include "qms/operators.hpp"

namespace qms {

// Vectorization is column-stacking throughout: vec(A X B) = (Bᵀ ⊗ A) vec(X).

Vector vec(const Matrix& x);
Matrix unvec(const Vector& v, Eigen::Index d);
/// Matrix of the map X ↦ A X B.
Matrix sandwich(const Matrix& a, const Matrix& b);

enum class Picture { heisenberg, schrodinger };
enum class SuperKind { generator, channel };

const char* to_string(Picture p);

/// Hamiltonian and jump operators of a GKLS generator.
struct GKLSSpec {
    Operator hamiltonian;
    std::vector<Operator> jumps;

    const HilbertSpace& space() const noexcept { return hamiltonian.space(); }
    /// H Hermitian within 1e-10 (relative) and all dimensions consistent.
    /// The zero generator (H = 0, no jumps) is rejected unless `allow_trivial`.
    void validate(bool allow_trivial = true) const;
};

/// The pair (G, {L_l}) of the form-generator ⟨v, AGu⟩ + ⟨Gv, Au⟩ + Σ⟨L_l v, A L_l u⟩.
struct GeneratorPair {
    Operator g;
    std::vector<Operator> jumps;

    const HilbertSpace& space() const noexcept { return g.space(); }
    void validate() const;
};

/// Per-basis-vector check of Re⟨u,Gu⟩ + ½Σ‖L_l u‖² ≤ slack.
struct DissipativityReport {
    double max_value = 0.0;
    std::vector<Eigen::Index> offending;  // basis indices violating the bound
    double markov_defect = 0.0;           // ‖G + G† + Σ L†L‖
    bool dissipative = true;
};

DissipativityReport check_dissipativity(const GeneratorPair& pair, double slack = 1e-9);

class Superoperator {
public:
    static Superoperator generator(HilbertSpace space, Matrix matrix, Picture picture);
    static Superoperator channel(HilbertSpace space, Matrix matrix, Picture picture, double t);

    const HilbertSpace& space() const noexcept { return space_; }
    const Matrix& matrix() const noexcept { return matrix_; }
    Picture picture() const noexcept { return picture_; }
    SuperKind kind() const noexcept { return kind_; }
    bool is_generator() const noexcept { return kind_ == SuperKind::generator; }
    /// Time parameter of a channel; nullopt for generators.
    std::optional<double> time() const noexcept { return time_; }
    Eigen::Index dim() const noexcept { return space_.dim; }

    Matrix apply(const Matrix& x) const;

    /// Generator: Schrödinger ‖vec(I)†M‖, Heisenberg ‖M vec(I)‖.
    /// Channel: same with the identity map subtracted.
    double trace_defect() const;

private:
    Superoperator(HilbertSpace space, Matrix matrix, Picture picture, SuperKind kind,
                  std::optional<double> time);
    HilbertSpace space_;
    Matrix matrix_;
    Picture picture_;
    SuperKind kind_;
    std::optional<double> time_;
};

/// ρ ↦ −i[H,ρ] + Σ_l (L_l ρ L_l† − ½{L_l†L_l, ρ}).
Superoperator build_schrodinger_generator(const GKLSSpec& spec);
/// Dual of build_schrodinger_generator.
Superoperator build_heisenberg_generator(const GKLSSpec& spec);
/// A ↦ A G + G† A + Σ_l L_l† A L_l.
Superoperator build_from_generator_pair(const GeneratorPair& pair);
/// G = −½ Σ L†L − iH with the same jumps.
GeneratorPair generator_pair_from_gkls(const GKLSSpec& spec);

/// Hilbert–Schmidt adjoint; flips the picture.
Superoperator adjoint(const Superoperator& s);

/// exp(t·gen) as a channel in the same picture.
Superoperator channel_at(const Superoperator& gen, double t);

/// Σ_ij E_ij ⊗ Φ(E_ij) of the Schrödinger-picture map (Heisenberg inputs are dualized first).
Matrix choi_matrix(const Superoperator& channel);

struct CptpReport {
    double trace_dev = 0.0;
    double choi_min_eig = 0.0;
    bool pass = false;
};

CptpReport verify_cptp(const Superoperator& channel, const Tolerances& tol = {});

/// Matrix of X ↦ Q† S(Q X Q†) Q on k×k operators, Q a d×k isometry.
Matrix compress_superoperator(const Matrix& s, const Matrix& q);

/// Schrödinger-picture version of any superoperator (adjoint when Heisenberg).
Superoperator to_schrodinger(const Superoperator& s);
Superoperator to_heisenberg(const Superoperator& s);

}  // namespace qms
