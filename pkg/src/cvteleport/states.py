"""Input-state descriptions for the teleportation channel.

Two pure-state families are supported: coherent states, and states given by
their Fock-basis coefficient vector.  The Fock index is the photon number, so
a coefficient vector of length N spans photon numbers 0 .. N-1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Union

import numpy as np

from .exceptions import DomainError

__all__ = [
    "Coherent",
    "FockVector",
    "StateSpec",
    "MAX_FOCK_INDEX",
    "fock",
    "superposition01",
    "describe",
]

# Factorial-scale amplitudes stay comfortably inside double range up to here;
# the displacement evaluator enforces the same bound.
MAX_FOCK_INDEX = 50

_NORM_TOL = 1e-12


@dataclass(frozen=True)
class Coherent:
    """Coherent state |alpha>."""

    alpha: complex

    def __post_init__(self):
        a = complex(self.alpha)
        if not (math.isfinite(a.real) and math.isfinite(a.imag)):
            raise DomainError("coherent amplitude must be finite")
        object.__setattr__(self, "alpha", a)


@dataclass(frozen=True, eq=False)
class FockVector:
    """Pure state sum_n c_n |n> with unit-norm coefficients.

    The constructor requires the Euclidean norm to be 1 within 1e-12; use
    :meth:`normalized` to build one from an unnormalized vector.
    """

    coeffs: np.ndarray = field(repr=False)

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=np.complex128).reshape(-1).copy()
        if c.size < 1:
            raise DomainError("coefficient vector must have at least one entry")
        if c.size > MAX_FOCK_INDEX + 1:
            raise DomainError(
                f"fock index above supported cutoff {MAX_FOCK_INDEX}"
            )
        if not np.all(np.isfinite(c.view(float))):
            raise DomainError("coefficients must be finite")
        norm = float(np.linalg.norm(c))
        if abs(norm - 1.0) > _NORM_TOL:
            raise DomainError(
                f"coefficients must have unit norm within {_NORM_TOL:g}; "
                f"got norm {norm!r} (use FockVector.normalized)"
            )
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def normalized(cls, coeffs) -> "FockVector":
        c = np.asarray(coeffs, dtype=np.complex128).reshape(-1)
        norm = float(np.linalg.norm(c))
        if norm == 0.0:
            raise DomainError("cannot normalize the zero vector")
        return cls(c / norm)

    @property
    def cutoff(self) -> int:
        """Number of Fock coefficients (max photon number + 1)."""
        return int(self.coeffs.size)

    def __repr__(self):
        return f"FockVector(cutoff={self.cutoff})"


StateSpec = Union[Coherent, FockVector]


def fock(n: int) -> FockVector:
    """Number state |n>."""
    if n < 0:
        raise DomainError(f"photon number must be >= 0, got {n}")
    if n > MAX_FOCK_INDEX:
        raise DomainError(f"fock index above supported cutoff {MAX_FOCK_INDEX}")
    c = np.zeros(n + 1, dtype=np.complex128)
    c[n] = 1.0
    return FockVector(c)


def superposition01() -> FockVector:
    """The balanced superposition (|0> + |1>)/sqrt(2)."""
    return FockVector(np.array([1.0, 1.0]) / math.sqrt(2))


def _fmt(x: float) -> str:
    return format(float(x), ".12g")


def describe(state: StateSpec) -> str:
    """Compact, re-parseable text form of a state (see the CLI grammar)."""
    if isinstance(state, Coherent):
        return f"coh:{_fmt(state.alpha.real)},{_fmt(state.alpha.imag)}"
    c = state.coeffs
    hot = np.flatnonzero(np.abs(c) > 0)
    if hot.size == 1 and abs(c[hot[0]] - 1.0) < 1e-12:
        return f"fock:{hot[0]}"
    if c.size == 2 and np.allclose(c, [1 / math.sqrt(2)] * 2, atol=1e-12):
        return "superpos01"
    parts = []
    for z in c:
        if z.imag == 0:
            parts.append(_fmt(z.real))
        else:
            sign = "+" if z.imag >= 0 else "-"
            parts.append(f"{_fmt(z.real)}{sign}{_fmt(abs(z.imag))}i")
    return "vec:" + ";".join(parts)
