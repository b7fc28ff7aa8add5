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

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qms/classical.hpp"
#include "qms/models.hpp"
#include "qms/spectral.hpp"
#include "qms/structure.hpp"

namespace py = pybind11;
using namespace qms;
using namespace pybind11::literals;

namespace {

Picture picture_of(const std::string& name) {
    if (name == "schrodinger") return Picture::schrodinger;
    if (name == "heisenberg") return Picture::heisenberg;
    throw ValidationError("picture must be 'schrodinger' or 'heisenberg'", "picture");
}

GKLSSpec make_spec(const Matrix& hamiltonian, const std::vector<Matrix>& jumps) {
    require_square(hamiltonian, "hamiltonian");
    const auto space = HilbertSpace::abstract(hamiltonian.rows());
    GKLSSpec spec{Operator(space, hamiltonian), {}};
    for (const auto& l : jumps) spec.jumps.emplace_back(space, l);
    spec.validate();
    return spec;
}

Subspace subspace_of(const Superoperator& gen, const Matrix& basis) {
    return Subspace::span(gen.space(), basis);
}

py::dict decomposition_dict(const EnclosureDecomposition& d) {
    py::list alpha, states, beta;
    for (const auto& b : d.alpha_blocks) alpha.append(b.basis());
    for (const auto& s : d.alpha_states) states.append(s.matrix());
    for (const auto& b : d.beta_blocks) {
        py::list factors;
        for (const auto& f : b.chosen_factors) factors.append(f.basis());
        beta.append(py::dict("basis"_a = b.subspace.basis(), "factors"_a = factors));
    }
    return py::dict("alpha_blocks"_a = alpha, "alpha_states"_a = states, "beta_blocks"_a = beta,
                    "residual"_a = d.residual, "seed"_a = d.seed, "canonical"_a = d.canonical);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Structure and ergodicity of finite-dimensional quantum Markov semigroups.";

    static py::exception<ValidationError> validation_error(m, "ValidationError", PyExc_ValueError);
    static py::exception<CertificationError> certification_error(m, "CertificationError", PyExc_RuntimeError);
    static py::exception<NumericalError> numerical_error(m, "NumericalError", PyExc_ArithmeticError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const ValidationError& e) {
            const std::string msg = e.field().empty() ? e.what() : e.field() + ": " + e.what();
            PyErr_SetString(validation_error.ptr(), msg.c_str());
        } catch (const CertificationError& e) {
            PyErr_SetString(certification_error.ptr(), e.what());
        } catch (const NumericalError& e) {
            PyErr_SetString(numerical_error.ptr(), e.what());
        }
    });

    py::class_<GKLSSpec>(m, "Model", "Hamiltonian plus jump operators on a finite space.")
        .def(py::init(&make_spec), "hamiltonian"_a, "jumps"_a = std::vector<Matrix>{})
        .def_property_readonly("dim", [](const GKLSSpec& s) { return s.space().dim; })
        .def_property_readonly("hamiltonian", [](const GKLSSpec& s) { return s.hamiltonian.matrix(); })
        .def_property_readonly("jumps",
                               [](const GKLSSpec& s) {
                                   std::vector<Matrix> out;
                                   for (const auto& j : s.jumps) out.push_back(j.matrix());
                                   return out;
                               })
        .def(
            "generator",
            [](const GKLSSpec& s, const std::string& picture) {
                return picture_of(picture) == Picture::schrodinger ? build_schrodinger_generator(s)
                                                                   : build_heisenberg_generator(s);
            },
            "picture"_a = "schrodinger")
        .def("__repr__", [](const GKLSSpec& s) {
            return "<qmsergo.Model dim=" + std::to_string(s.space().dim) + " jumps=" + std::to_string(s.jumps.size()) +
                   ">";
        });

    py::class_<Superoperator>(m, "Superoperator", "Vectorized (column-stacking) generator or channel.")
        .def_property_readonly("matrix", &Superoperator::matrix)
        .def_property_readonly("dim", &Superoperator::dim)
        .def_property_readonly("picture", [](const Superoperator& s) { return std::string(to_string(s.picture())); })
        .def_property_readonly("is_generator", &Superoperator::is_generator)
        .def("apply", &Superoperator::apply, "x"_a)
        .def("adjoint", [](const Superoperator& s) { return adjoint(s); })
        .def("channel", [](const Superoperator& s, double t) { return channel_at(s, t); }, "t"_a)
        .def("evolve", [](const Superoperator& s, const Matrix& x, double t) { return evolve(s, x, t); }, "x"_a,
             "t"_a)
        .def("__repr__", [](const Superoperator& s) {
            return std::string("<qmsergo.Superoperator ") + (s.is_generator() ? "generator" : "channel") +
                   " picture=" + to_string(s.picture()) + " dim=" + std::to_string(s.dim()) + ">";
        });

    m.def("two_photon", [](double lambda, double mu, double omega, Eigen::Index dim) {
        return build_two_photon({lambda, mu, omega, dim});
    }, "lam"_a, "mu"_a = 1.0, "omega"_a = 0.0, "dim"_a = 16);
    m.def("k_photon", [](int k, double alpha, Eigen::Index dim) {
        return build_k_photon({k, alpha, dim}).spec;
    }, "k"_a, "alpha"_a, "dim"_a);
    m.def("birth_death_qms", [](const std::vector<double>& birth, const std::vector<double>& death, Eigen::Index dim,
                                const std::string& boundary) {
        const Boundary b = boundary == "reflecting" ? Boundary::reflecting
                           : boundary == "absorbing-truncate"
                               ? Boundary::absorbing_truncate
                               : throw ValidationError("unknown boundary '" + boundary + "'", "boundary");
        return build_generic_qms(generic_qms_params(BirthDeathChain{birth, death}, dim, b)).spec;
    }, "birth"_a, "death"_a, "dim"_a, "boundary"_a = "reflecting");

    m.def("matrix_exponential", &matrix_exponential, "m"_a, "t"_a = 1.0);
    m.def("nullspace", [](const Matrix& a) { return nullspace(a); }, "m"_a);
    m.def("verify_cptp", [](const Superoperator& channel) {
        const auto r = verify_cptp(channel);
        return py::dict("trace_dev"_a = r.trace_dev, "choi_min_eig"_a = r.choi_min_eig, "passed"_a = r.pass);
    }, "channel"_a);

    m.def("invariant_states", [](const Superoperator& gen) {
        const auto s = invariant_states(gen);
        return py::dict("kernel_basis"_a = s.kernel_basis, "canonical_state"_a = s.canonical_state.matrix(),
                        "leakage"_a = s.canonical_state.leakage(), "semisimple"_a = s.projection.semisimple_ok);
    }, "generator"_a);
    m.def("ergodic_projection", [](const Superoperator& gen) { return ergodic_projection(gen).matrix; },
          "generator"_a);
    m.def("positive_recurrent_subspace",
          [](const Superoperator& gen) { return positive_recurrent_subspace(gen).basis(); }, "generator"_a);
    m.def("check_ergodic", [](const Superoperator& gen) {
        const auto c = check_ergodic(gen);
        return py::dict("attractive"_a = c.attractive, "deviation"_a = c.deviation);
    }, "generator"_a);
    m.def("rate_certificate", [](const Superoperator& gen, std::vector<double> t0) {
        if (t0.empty()) t0 = default_t0_grid(gen);
        const auto c = rate_certificate(gen, t0);
        return py::dict("valid"_a = c.valid, "trivial"_a = c.trivial, "t0"_a = c.t0, "kappa"_a = c.kappa,
                        "rate"_a = c.rate, "bound_violation"_a = c.bound_violation);
    }, "generator"_a, "t0"_a = std::vector<double>{});
    m.def("minimal_enclosures", [](const Superoperator& gen, std::uint64_t seed) {
        return decomposition_dict(minimal_enclosures(gen, seed));
    }, "generator"_a, "seed"_a = 20240601);
    m.def("is_enclosure", [](const Superoperator& gen, const Matrix& basis) {
        return is_enclosure(gen, subspace_of(gen, basis));
    }, "generator"_a, "basis"_a);
    m.def("is_gas", [](const Superoperator& gen, const Matrix& basis) {
        const auto v = is_gas(gen, subspace_of(gen, basis));
        return py::dict("is_gas"_a = v.is_gas, "reason"_a = to_string(v.reason),
                        "contains_r_plus"_a = v.contains_r_plus, "sigma_r1"_a = v.sigma_r1);
    }, "generator"_a, "basis"_a);
    m.def("nfd", [](const Superoperator& op, const Matrix& seed_basis) {
        const auto r = nfd(op, subspace_of(op, seed_basis));
        py::list stages;
        for (const auto& s : r.stages)
            stages.append(py::dict("sigma"_a = s.sigma, "face"_a = s.subspace_t.basis(),
                                   "cumulative"_a = s.cumulative_s.basis()));
        return py::dict("mode"_a = r.mode == NfdMode::discrete ? "discrete" : "continuous", "stages"_a = stages,
                        "gas_stage"_a = r.gas_stage);
    }, "channel_or_generator"_a, "seed_basis"_a);

    m.def("spectral_gap", [](const Superoperator& gen) {
        const auto r = spectral_gap(gen);
        return py::dict("eigenvalues"_a = r.eigenvalues, "zero_multiplicity"_a = r.zero_multiplicity,
                        "gap"_a = r.gap, "irreducible"_a = r.irreducible, "primitive"_a = r.primitive);
    }, "generator"_a);
    m.def("is_primitive", [](const Superoperator& gen, double t) { return is_primitive(gen, t); }, "generator"_a,
          "t"_a = 1.0);
    m.def("convergence_bound", [](const Superoperator& gen, double c, std::uint64_t seed) {
        const auto b = convergence_bound(gen, c, {}, seed);
        return py::dict("c"_a = b.c, "C"_a = b.C, "grid"_a = b.grid, "worst_ratio"_a = b.worst_ratio,
                        "verified"_a = b.verified);
    }, "generator"_a, "c"_a, "seed"_a = 20240601);

    m.def("stationary_measure", [](const std::vector<double>& birth, const std::vector<double>& death,
                                   Eigen::Index levels, bool force) {
        const auto pi = stationary_measure(BirthDeathChain{birth, death}, levels, force).pi;
        return Eigen::Map<const Eigen::VectorXd>(pi.data(), static_cast<Eigen::Index>(pi.size())).eval();
    }, "birth"_a, "death"_a, "levels"_a, "force"_a = false);
    m.def("positive_recurrence", [](const std::vector<double>& birth, const std::vector<double>& death) {
        const BirthDeathChain chain{birth, death};
        return std::string(to_string(positive_recurrence(chain, chain.horizon()).classification));
    }, "birth"_a, "death"_a);
}
