# Copyright 2026 The qmsergo Authors
# SPDX-License-Identifier: Apache-2.0
"""Structure and ergodicity of finite-dimensional quantum Markov semigroups."""

from ._core import (
    CertificationError,
    Model,
    NumericalError,
    Superoperator,
    ValidationError,
    birth_death_qms,
    check_ergodic,
    convergence_bound,
    ergodic_projection,
    invariant_states,
    is_enclosure,
    is_gas,
    is_primitive,
    k_photon,
    matrix_exponential,
    minimal_enclosures,
    nfd,
    nullspace,
    positive_recurrence,
    positive_recurrent_subspace,
    rate_certificate,
    spectral_gap,
    stationary_measure,
    two_photon,
    verify_cptp,
)

__version__ = "0.1.0"

__all__ = [
    "CertificationError",
    "Model",
    "NumericalError",
    "Superoperator",
    "ValidationError",
    "birth_death_qms",
    "check_ergodic",
    "convergence_bound",
    "ergodic_projection",
    "invariant_states",
    "is_enclosure",
    "is_gas",
    "is_primitive",
    "k_photon",
    "matrix_exponential",
    "minimal_enclosures",
    "nfd",
    "nullspace",
    "positive_recurrence",
    "positive_recurrent_subspace",
    "rate_certificate",
    "spectral_gap",
    "stationary_measure",
    "two_photon",
    "verify_cptp",
]
