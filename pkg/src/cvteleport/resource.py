"""Two-mode Gaussian resource states and the bounds they imply.

The shared resource for the teleportation protocol is the two-parameter
Gaussian Wigner function

    W_AB(alpha, beta) = (4 (c^2 - s^2) / pi^2)
                        * exp(-2 c (|alpha|^2 + |beta|^2)
                              - 2 s (alpha beta + conj(alpha beta)))

with c > |s| for normalizability and c <= sqrt(1 + s^2) for physicality;
equality there is the pure two-mode squeezed state (c, s) =
(cosh 2r, sinh 2r).  Everything the protocol does to an input state is
controlled by the single combination t = 2 / (c + s): the measured-outcome
noise is the isotropic Gaussian ``g_distribution`` of per-quadrature
variance t/4.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .exceptions import DomainError, InternalConsistencyError
from .numerics import QuadratureSpec, gauss_legendre_1d
from .phase_space import wigner
from .states import Coherent, FockVector, StateSpec

__all__ = [
    "ResourceParams",
    "Correlation",
    "ResourceClass",
    "from_squeeze",
    "classify",
    "wigner_ab",
    "g_distribution",
    "g_tilde",
    "i_integral",
    "separable_fidelity",
    "overlap_bound",
    "violated_inequality",
    "gaussian_pair_overlap",
]

_BOUNDARY_TOL = 1e-12
_PURITY_RTOL = 1e-4


@dataclass(frozen=True)
class ResourceParams:
    """Parameters (c, s) of the two-mode Gaussian resource.

    ``squeeze`` records the squeeze parameter when the instance was built by
    :func:`from_squeeze`.
    """

    c: float
    s: float
    squeeze: float | None = None

    def __post_init__(self):
        if not (math.isfinite(self.c) and math.isfinite(self.s)):
            raise DomainError("resource parameters must be finite")

    @property
    def t(self) -> float:
        """Outcome-noise scale t = 2/(c+s); positive for every valid resource."""
        denom = self.c + self.s
        if denom == 0:
            return math.inf
        return 2.0 / denom


class Correlation(enum.Enum):
    """Whether the cross-correlations help the protocol (t < 2 helps)."""

    RIGHT_SORT = "RightSort"
    BOUNDARY = "Boundary"
    WRONG_SORT_OR_SEPARABLE = "WrongSortOrSeparable"


@dataclass(frozen=True)
class ResourceClass:
    valid: bool
    pure: bool
    separable: bool
    correlation: Correlation

    def __post_init__(self):
        if self.pure and not self.valid:
            raise DomainError("a pure resource must be valid")


def from_squeeze(r: float) -> ResourceParams:
    """Pure two-mode squeezed resource with squeeze parameter r >= 0.

    Yields (c, s) = (cosh 2r, sinh 2r), hence t = 2 e^{-2r} exactly.
    """
    if r < 0:
        raise DomainError(f"squeeze parameter must be >= 0, got {r}")
    return ResourceParams(c=math.cosh(2 * r), s=math.sinh(2 * r), squeeze=r)


def classify(params: ResourceParams) -> ResourceClass:
    """Validity / purity / separability / correlation class of (c, s).

    Purity sits on the curve c = sqrt(1 + s^2); a relative band of 1e-4
    absorbs parameters quoted to a few decimals.  The separability boundary
    c = 1 - |s| uses a 1e-12 tolerance.  Classification is invariant under
    s -> -s except for the correlation sort, which flips once c + s crosses
    the t = 2 line.
    """
    c, s = params.c, params.s
    ceiling = math.sqrt(1.0 + s * s)
    valid = (abs(s) < c) and (c <= ceiling * (1.0 + _PURITY_RTOL))
    pure = valid and abs(c - ceiling) <= _PURITY_RTOL * ceiling
    separable = c <= 1.0 - abs(s) + _BOUNDARY_TOL
    t = params.t
    if not math.isfinite(t) or t <= 0:
        corr = Correlation.WRONG_SORT_OR_SEPARABLE
    elif abs(t - 2.0) <= _BOUNDARY_TOL:
        corr = Correlation.BOUNDARY
    elif t < 2.0:
        corr = Correlation.RIGHT_SORT
    else:
        corr = Correlation.WRONG_SORT_OR_SEPARABLE
    return ResourceClass(valid=valid, pure=pure, separable=separable, correlation=corr)


def violated_inequality(params: ResourceParams) -> str | None:
    """Human-readable reason a parameter pair is invalid, or None."""
    c, s = params.c, params.s
    if not abs(s) < c:
        return f"|s| < c violated (c={c!r}, s={s!r})"
    ceiling = math.sqrt(1.0 + s * s)
    if c > ceiling * (1.0 + _PURITY_RTOL):
        return f"c <= sqrt(1+s^2) violated (c={c!r}, ceiling={ceiling!r})"
    return None


def _require_valid(params: ResourceParams):
    reason = violated_inequality(params)
    if reason is not None:
        raise DomainError(f"invalid resource parameters: {reason}")


def wigner_ab(params: ResourceParams, alpha, beta):
    """Two-mode resource Wigner function W_AB(alpha, beta) (vectorized)."""
    _require_valid(params)
    alpha = np.asarray(alpha, dtype=np.complex128)
    beta = np.asarray(beta, dtype=np.complex128)
    c, s = params.c, params.s
    norm = 4.0 * (c * c - s * s) / np.pi**2
    quad = np.abs(alpha) ** 2 + np.abs(beta) ** 2
    cross = 2.0 * (alpha * beta).real
    out = norm * np.exp(-2.0 * c * quad - 2.0 * s * cross)
    return float(out) if out.ndim == 0 else out


def g_distribution(params: ResourceParams, nu):
    """Density of the protocol's effective outcome noise.

        G(nu) = ((c+s)/pi) exp(-(c+s) |nu|^2) = (2/(pi t)) exp(-2|nu|^2/t)

    An isotropic Gaussian of per-quadrature variance t/4.
    """
    kappa = params.c + params.s
    if kappa <= 0:
        raise DomainError(
            f"outcome-noise density needs c + s > 0, got c+s={kappa!r}"
        )
    nu = np.asarray(nu, dtype=np.complex128)
    out = (kappa / np.pi) * np.exp(-kappa * (nu.real**2 + nu.imag**2))
    return float(out) if out.ndim == 0 else out


def g_tilde(params: ResourceParams, nu):
    """Fourier transform of :func:`g_distribution` under the Wigner pairing:
    exp(-t |nu|^2 / 2)."""
    kappa = params.c + params.s
    if kappa <= 0:
        raise DomainError(
            f"outcome-noise transform needs c + s > 0, got c+s={kappa!r}"
        )
    nu = np.asarray(nu, dtype=np.complex128)
    out = np.exp(-(nu.real**2 + nu.imag**2) / kappa)
    return float(out) if out.ndim == 0 else out


# ---------------------------------------------------------------------------
# Gaussian-kernel overlap integrals
# ---------------------------------------------------------------------------

def _pair_extent(state: StateSpec) -> float:
    if isinstance(state, Coherent):
        return abs(state.alpha) + 5.0
    return max(6.0, math.sqrt(4.0 * (state.cutoff - 1)) + 3.0)


def _pair_order(radius: float, gamma: float, states) -> int:
    """Per-axis order resolving both kernel and state features."""
    kernel_scale = 1.0 / math.sqrt(2.0 * gamma) if gamma > 0 else math.inf
    feature = kernel_scale
    for st in states:
        if isinstance(st, FockVector):
            feature = min(feature, 0.5 / math.sqrt(st.cutoff))
        else:
            feature = min(feature, 0.5)
    feature = min(feature, 0.5)
    return max(128, int(math.ceil(math.pi * radius * 2.5 / feature)))


def gaussian_pair_overlap(
    state_a: StateSpec,
    state_b: StateSpec,
    gamma: float,
    flip_a: bool = False,
    spec: QuadratureSpec | None = None,
) -> float:
    """integral d^2a d^2b e^{-gamma |a-b|^2} W_A(map(a)) W_B(b).

    ``flip_a`` evaluates W_A at -conj(a) (phase-space transpose of mode A).
    The kernel factorizes per axis, so the 4-D integral contracts to three
    matrix products on the 2-D tensor grid.
    """
    if gamma < 0:
        raise DomainError(f"kernel exponent must be >= 0, got {gamma}")
    if spec is None:
        radius = max(_pair_extent(state_a), _pair_extent(state_b))
        order = _pair_order(radius, gamma, (state_a, state_b))
    else:
        radius, order = spec.radial_cutoff, spec.order
    x, w = gauss_legendre_1d(order, radius)
    grid = x[:, None] + 1j * x[None, :]
    wa = wigner(state_a, -np.conj(grid) if flip_a else grid)
    wb = wigner(state_b, grid)
    kern = np.exp(-gamma * (x[:, None] - x[None, :]) ** 2)
    wa_w = wa * w[:, None] * w[None, :]
    wb_w = wb * w[:, None] * w[None, :]
    return float(np.sum((kern.T @ wa_w @ kern) * wb_w))


def overlap_bound(t: float) -> float:
    """Largest possible value (1 + t/2)^{-1} of :func:`i_integral`.

    This is the top of the spectrum of the Gaussian-kernel operator acting
    on the difference mode: its eigenvalues are
    (1+t/2)^{-1} ((1-t/2)/(1+t/2))^k for k = 0, 1, ...
    """
    if t < 0:
        raise DomainError(f"kick width t must be >= 0, got {t}")
    return 1.0 / (1.0 + t / 2.0)


def i_integral(state_a: StateSpec, state_b: StateSpec, t: float) -> float:
    """Gaussian-kernel overlap of a product state with itself across modes:

        I = integral e^{-t |alpha - beta|^2 / 2} W_A(alpha) W_B(beta)

    Bounded above by (1 + t/2)^{-1}; a pure product saturates the bound only
    when both factors are the same coherent state.
    """
    if t < 0:
        raise DomainError(f"kick width t must be >= 0, got {t}")
    value = gaussian_pair_overlap(state_a, state_b, gamma=t / 2.0)
    if value > overlap_bound(t) + 1e-4:
        raise InternalConsistencyError(
            f"overlap {value!r} grossly exceeds the bound {overlap_bound(t)!r}; "
            "quadrature resolution is inadequate for these states"
        )
    return value


def separable_fidelity(state_a: StateSpec, state_b: StateSpec) -> float:
    """Best average fidelity a separable resource built from this product
    can reach:

        F = integral e^{-|alpha - beta|^2} W_A(-conj(alpha)) W_B(beta)

    Never exceeds 1/2; coherent pairs |alpha> (x) |-conj(alpha)> saturate it.
    """
    return gaussian_pair_overlap(state_a, state_b, gamma=1.0, flip_a=True)
