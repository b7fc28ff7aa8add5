# Copyright 2026 The qmsergo Authors
# SPDX-License-Identifier: Apache-2.0
import numpy as np
import pytest

import qmsergo


def amplitude_damping(gamma=1.0):
    h = np.zeros((2, 2), dtype=complex)
    lower = np.array([[0, np.sqrt(gamma)], [0, 0]], dtype=complex)
    return qmsergo.Model(h, [lower])


def test_matrix_exponential_diagonal():
    m = np.diag([1.0, -2.0]).astype(complex)
    out = qmsergo.matrix_exponential(m, 0.5)
    assert np.allclose(out, np.diag(np.exp([0.5, -1.0])), atol=1e-13)


def test_channel_is_cptp():
    gen = amplitude_damping().generator()
    report = qmsergo.verify_cptp(gen.channel(0.7))
    assert report["passed"]
    assert report["trace_dev"] < 1e-12


def test_amplitude_damping_invariant_state():
    gen = amplitude_damping(1.0).generator()
    states = qmsergo.invariant_states(gen)
    assert len(states["kernel_basis"]) == 1
    assert np.allclose(states["canonical_state"], np.diag([1.0, 0.0]), atol=1e-10)
    basis = qmsergo.positive_recurrent_subspace(gen)
    assert basis.shape == (2, 1)
    assert abs(abs(basis[0, 0]) - 1.0) < 1e-10


def test_evolve_population():
    gen = amplitude_damping(1.0).generator()
    rho = np.diag([0.0, 1.0]).astype(complex)
    out = gen.evolve(rho, 1.0)
    assert abs(out[1, 1] - np.exp(-1.0)) < 1e-10


def test_spectral_gap():
    report = qmsergo.spectral_gap(amplitude_damping(2.0).generator())
    assert report["zero_multiplicity"] == 1
    assert abs(report["gap"] - 1.0) < 1e-9


def test_two_photon_lambda_zero_is_not_canonical():
    gen = qmsergo.two_photon(0.0, 1.0, 1.0, 10).generator()
    dec = qmsergo.minimal_enclosures(gen, seed=7)
    assert len(dec["beta_blocks"]) == 1
    assert not dec["canonical"]


def test_k_photon_model():
    model = qmsergo.k_photon(2, 1.0, 20)
    assert model.dim == 20
    assert len(model.jumps) >= 1


def test_classical_stationary_measure():
    pi = qmsergo.stationary_measure([1.0] * 50, [2.0] * 50, 6)
    assert abs(pi.sum() - 1.0) < 1e-12
    assert abs(pi[1] / pi[0] - 0.5) < 1e-12
    assert qmsergo.positive_recurrence([1.0] * 200, [2.0] * 200) == "positive-recurrent"


def test_validation_error_is_value_error():
    with pytest.raises(ValueError):
        qmsergo.Model(np.zeros((2, 3), dtype=complex), [])
    with pytest.raises(qmsergo.ValidationError):
        qmsergo.two_photon(-1.0, 1.0, 1.0, 8)
