"""State constructors, validation, and the text round-trip."""

import math

import numpy as np
import pytest

from cvteleport.exceptions import DomainError
from cvteleport.states import (
    MAX_FOCK_INDEX,
    Coherent,
    FockVector,
    describe,
    fock,
    superposition01,
)


def test_coherent_coerces_to_complex():
    state = Coherent(1.5)
    assert state.alpha == 1.5 + 0j
    assert isinstance(state.alpha, complex)


def test_coherent_rejects_non_finite():
    with pytest.raises(DomainError):
        Coherent(complex(np.inf, 0))
    with pytest.raises(DomainError):
        Coherent(complex(0, np.nan))


def test_fock_basis_states():
    state = fock(3)
    assert state.cutoff == 4
    np.testing.assert_array_equal(state.coeffs, [0, 0, 0, 1])
    with pytest.raises(DomainError):
        fock(-1)
    with pytest.raises(DomainError):
        fock(MAX_FOCK_INDEX + 1)


def test_superposition01_is_balanced():
    state = superposition01()
    np.testing.assert_allclose(state.coeffs, [1 / math.sqrt(2)] * 2, rtol=1e-15)


def test_fock_vector_norm_enforced():
    with pytest.raises(DomainError):
        FockVector(np.array([1.0, 1.0]))
    ok = FockVector.normalized(np.array([1.0, 1.0]))
    np.testing.assert_allclose(np.linalg.norm(ok.coeffs), 1.0, rtol=1e-15)
    with pytest.raises(DomainError):
        FockVector.normalized(np.zeros(3))


def test_fock_vector_is_immutable():
    state = superposition01()
    with pytest.raises((ValueError, RuntimeError)):
        state.coeffs[0] = 0.0


def test_fock_vector_size_limits():
    with pytest.raises(DomainError):
        FockVector(np.zeros(0))
    too_long = np.zeros(MAX_FOCK_INDEX + 2)
    too_long[0] = 1.0
    with pytest.raises(DomainError):
        FockVector(too_long)


def test_fock_vector_rejects_non_finite():
    with pytest.raises(DomainError):
        FockVector(np.array([np.nan, 0.0]))


@pytest.mark.parametrize(
    "state,expected",
    [
        (Coherent(0.25 - 1.5j), "coh:0.25,-1.5"),
        (fock(0), "fock:0"),
        (fock(7), "fock:7"),
        (superposition01(), "superpos01"),
    ],
)
def test_describe_known_forms(state, expected):
    assert describe(state) == expected


def test_describe_general_vector_round_trips():
    from cvteleport.cli import parse_state

    state = FockVector.normalized(np.array([1.0, 0.5 + 0.5j, -0.25]))
    text = describe(state)
    assert text.startswith("vec:")
    back = parse_state(text)
    np.testing.assert_allclose(back.coeffs, state.coeffs, atol=1e-11)
