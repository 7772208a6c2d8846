"""Quasiprobability representations of the supported states.

Conventions
-----------
A phase-space point is ``nu = x + i p`` and the vacuum has quadrature
variance 1/4, so the coherent-state Wigner function is
``(2/pi) exp(-2|nu - alpha|^2)``.  The displacement operator is
``D(nu) = exp(nu a^dag - conj(nu) a)``; with this pairing the characteristic
function ``C(nu) = <D(nu)>`` and the Wigner function form a Fourier pair
under the kernel ``exp(nu conj(mu) - conj(nu) mu)``.

The whole family of Gaussian-smoothed Wigner functions is exposed through
:func:`s_ordered`; ``t = 0`` is the Wigner function itself and ``t = 1`` is
the Husimi function.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .exceptions import DomainError, InternalConsistencyError
from .numerics import QuadratureSpec, gauss_legendre_1d, integrate_plane, laguerre_assoc
from .states import MAX_FOCK_INDEX, Coherent, FockVector, StateSpec

__all__ = [
    "QuasiDistKind",
    "displacement_element",
    "characteristic_fn",
    "wigner",
    "husimi_q",
    "s_ordered",
    "quasidist",
    "smoothing_spec",
    "smoothed_on_grid",
]

# Spurious imaginary parts of the Wigner double sum below the first threshold
# are discarded; between the two we warn; above the second we refuse.
_IMAG_DISCARD = 1e-10
_IMAG_ESCALATE = 1e-8


def _check_index(label: str, n: int):
    if n < 0:
        raise DomainError(f"{label} must be >= 0, got {n}")
    if n > MAX_FOCK_INDEX:
        raise DomainError(
            f"{label} {n} above supported cutoff {MAX_FOCK_INDEX} "
            "(factorial overflow guard)"
        )


def _sqrt_fact_ratio(small: int, large: int) -> float:
    """sqrt(small! / large!) computed through lgamma to avoid overflow."""
    return math.exp(0.5 * (math.lgamma(small + 1) - math.lgamma(large + 1)))


def displacement_element(m: int, n: int, nu):
    """Fock matrix element <m| D(nu) |n> of the displacement operator.

    Closed form (for m >= n; the other order follows from D(nu)^dag = D(-nu)):

        <m|D(nu)|n> = sqrt(n!/m!) nu^{m-n} e^{-|nu|^2/2} L_n^{(m-n)}(|nu|^2)

    Parameters
    ----------
    m, n : int
        Row and column photon numbers, each <= 50.
    nu : complex or ndarray
        Displacement amplitude(s).

    Returns
    -------
    complex or ndarray
    """
    _check_index("row index", m)
    _check_index("column index", n)
    nu = np.asarray(nu, dtype=np.complex128)
    scalar = nu.ndim == 0
    absq = nu.real**2 + nu.imag**2
    damp = np.exp(-0.5 * absq)
    if m >= n:
        d = m - n
        out = _sqrt_fact_ratio(n, m) * nu**d * damp * laguerre_assoc(n, d, absq)
    else:
        d = n - m
        out = (
            _sqrt_fact_ratio(m, n)
            * (-np.conj(nu)) ** d
            * damp
            * laguerre_assoc(m, d, absq)
        )
    return complex(out) if scalar else out


def _fock_bilinear(coeffs: np.ndarray, nu: np.ndarray, parity: bool) -> np.ndarray:
    """sum_{m,n} conj(c_m) c_n [(-1)^n] <m|D(nu)|n>, vectorized over nu.

    Each unordered index pair shares one Laguerre evaluation; zero
    coefficients are skipped, so sparse vectors (number states) stay cheap.
    """
    absq = nu.real**2 + nu.imag**2
    damp = np.exp(-0.5 * absq)
    total = np.zeros(nu.shape, dtype=np.complex128)
    cbar = np.conj(coeffs)
    hot = [k for k in range(coeffs.size) if coeffs[k] != 0]
    for i, lo in enumerate(hot):
        for hi in hot[i:]:
            d = hi - lo
            base = _sqrt_fact_ratio(lo, hi) * damp * laguerre_assoc(lo, d, absq)
            sign_lo = (-1.0) ** lo if parity else 1.0
            if d == 0:
                total += (cbar[lo] * coeffs[lo] * sign_lo) * base
                continue
            sign_hi = (-1.0) ** hi if parity else 1.0
            # row hi >= col lo carries nu^d; the transpose carries (-conj nu)^d
            total += (cbar[hi] * coeffs[lo] * sign_lo) * base * nu**d
            total += (cbar[lo] * coeffs[hi] * sign_hi) * base * (-np.conj(nu)) ** d
    return total


def characteristic_fn(state: StateSpec, nu):
    """Characteristic function C(nu) = <D(nu)> of a supported state."""
    nu = np.asarray(nu, dtype=np.complex128)
    scalar = nu.ndim == 0
    if isinstance(state, Coherent):
        a = state.alpha
        out = np.exp(
            -0.5 * (nu.real**2 + nu.imag**2) + nu * np.conj(a) - np.conj(nu) * a
        )
    else:
        out = _fock_bilinear(state.coeffs, nu, parity=False)
    return complex(out) if scalar else out


def _real_part_checked(values: np.ndarray, label: str) -> np.ndarray:
    worst = float(np.max(np.abs(values.imag))) if values.size else 0.0
    if worst > _IMAG_ESCALATE:
        raise InternalConsistencyError(
            f"{label} produced imaginary residue {worst:.3e} (limit {_IMAG_ESCALATE:g})"
        )
    if worst > _IMAG_DISCARD:
        warnings.warn(
            f"{label} imaginary residue {worst:.3e} above discard threshold",
            RuntimeWarning,
            stacklevel=3,
        )
    return values.real


def wigner(state: StateSpec, nu):
    """Wigner function W(nu) of a supported state.

    Coherent states use the closed Gaussian form.  Fock-coefficient states
    use the displaced-parity double sum

        W(nu) = (2/pi) sum_{m,n} conj(c_m) c_n (-1)^n <m|D(2 nu)|n>,

    one audited code path for every vector; the diagonal Laguerre closed form
    survives only as a test oracle.  The result is real up to roundoff; the
    imaginary residue is checked and discarded.
    """
    nu = np.asarray(nu, dtype=np.complex128)
    scalar = nu.ndim == 0
    if isinstance(state, Coherent):
        d = nu - state.alpha
        out = (2.0 / np.pi) * np.exp(-2.0 * (d.real**2 + d.imag**2))
    else:
        raw = (2.0 / np.pi) * _fock_bilinear(state.coeffs, 2.0 * nu, parity=True)
        out = _real_part_checked(np.asarray(raw), "wigner double sum")
    return float(out) if scalar else out


def husimi_q(state: StateSpec, beta):
    """Husimi function Q(beta) = |<beta|psi>|^2 / pi (nonnegative)."""
    beta = np.asarray(beta, dtype=np.complex128)
    scalar = beta.ndim == 0
    if isinstance(state, Coherent):
        d = beta - state.alpha
        out = np.exp(-(d.real**2 + d.imag**2)) / np.pi
    else:
        # <beta|psi> = e^{-|beta|^2/2} sum_n c_n conj(beta)^n / sqrt(n!)
        c = state.coeffs
        bc = np.conj(beta)
        poly = np.zeros(beta.shape, dtype=np.complex128)
        for n in range(c.size - 1, -1, -1):
            poly = poly * bc + c[n] / math.exp(0.5 * math.lgamma(n + 1))
        out = np.exp(-(beta.real**2 + beta.imag**2)) * np.abs(poly) ** 2 / np.pi
    return float(out) if scalar else out


# ---------------------------------------------------------------------------
# Gaussian smoothing family
# ---------------------------------------------------------------------------

_ORDER_LADDER = (64, 96, 128, 192, 256, 384, 512, 768, 1024, 1536, 2048)


def _state_scale(state: StateSpec) -> float:
    """Smallest phase-space feature size of the state's Wigner function."""
    if isinstance(state, Coherent):
        return 0.5
    nmax = int(state.cutoff) - 1
    return 0.5 / math.sqrt(nmax + 1.0)


def smoothing_spec(state: StateSpec, t: float, radial_cutoff: float = 6.0) -> QuadratureSpec:
    """Quadrature spec resolving both the state and an e^{-2|.|^2/t} kernel.

    The kernel's per-quadrature width sqrt(t)/2 shrinks with t, so the node
    count must grow like 1/sqrt(t); orders are quantized to a small ladder so
    node sets are cached.
    """
    feature = min(math.sqrt(t) / 2.0, _state_scale(state)) if t > 0 else _state_scale(state)
    wanted = int(math.ceil(math.pi * radial_cutoff * 2.5 / feature))
    for order in _ORDER_LADDER:
        if order >= wanted:
            return QuadratureSpec(radial_cutoff, order)
    return QuadratureSpec(radial_cutoff, _ORDER_LADDER[-1])


def smoothed_on_grid(
    state: StateSpec,
    xs: np.ndarray,
    ys: np.ndarray,
    t: float,
    spec: QuadratureSpec | None = None,
) -> np.ndarray:
    """Evaluate s_ordered(state, x + i y, t) on a separable grid.

    Exploits the axis factorization of the Gaussian kernel: one Wigner
    evaluation on the quadrature grid plus two small matrix products per
    call.  Matches the pointwise :func:`s_ordered` to roundoff.
    """
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    if t < 0:
        raise DomainError(f"smoothing width t must be >= 0, got {t}")
    if t == 0:
        return wigner(state, xs[:, None] + 1j * ys[None, :])
    if spec is None:
        spec = smoothing_spec(state, t)
    if spec.scheme != "tensor-cartesian":
        raise DomainError("grid smoothing requires the tensor-cartesian scheme")
    u, w = gauss_legendre_1d(spec.order, spec.radial_cutoff)
    wq = wigner(state, u[:, None] + 1j * u[None, :])
    ax = np.exp(-2.0 * (xs[:, None] - u[None, :]) ** 2 / t) * w[None, :]
    ay = np.exp(-2.0 * (ys[:, None] - u[None, :]) ** 2 / t) * w[None, :]
    return (2.0 / (np.pi * t)) * (ax @ wq @ ay.T)


def s_ordered(state: StateSpec, nu, t: float):
    """Gaussian-smoothed Wigner function with smoothing variance t/4.

        W_t(nu) = (2 / pi t) integral d^2mu e^{-2|nu - mu|^2 / t} W(mu)

    ``t = 0`` returns the Wigner function; ``t = 1`` equals the Husimi
    function.  Evaluated with :func:`integrate_plane` on a spec wide and fine
    enough for both the state and the kernel.
    """
    if t < 0:
        raise DomainError(f"smoothing width t must be >= 0, got {t}")
    if t == 0:
        return wigner(state, nu)
    nu = np.asarray(nu, dtype=np.complex128)
    scalar = nu.ndim == 0
    pts = np.atleast_1d(nu)
    spec = smoothing_spec(state, t)
    out = np.empty(pts.shape, dtype=float)
    for i, point in enumerate(pts.ravel()):
        out.ravel()[i] = integrate_plane(
            lambda mu: np.exp(-2.0 * np.abs(point - mu) ** 2 / t)
            * wigner(state, mu),
            spec,
        ) * (2.0 / (np.pi * t))
    return float(out.ravel()[0]) if scalar else out.reshape(nu.shape)


@dataclass(frozen=True)
class QuasiDistKind:
    """Which member of the smoothing family: t=0 Wigner, t=1 Husimi."""

    t: float

    def __post_init__(self):
        if self.t < 0:
            raise DomainError(f"smoothing width t must be >= 0, got {self.t}")


WIGNER_KIND = QuasiDistKind(0.0)
HUSIMI_KIND = QuasiDistKind(1.0)


def quasidist(state: StateSpec, nu, kind: QuasiDistKind):
    """Evaluate the quasidistribution selected by ``kind``."""
    if kind.t == 0:
        return wigner(state, nu)
    if kind.t == 1:
        return husimi_q(state, nu)
    return s_ordered(state, nu, kind.t)
