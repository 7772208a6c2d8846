"""Shared numerical kernel: orthogonal-polynomial recurrences, quadrature
over the complex plane, and reproducible random streams.

Conventions used throughout the package: a phase-space point is a complex
number ``nu = x + i p`` and plane integrals are over ``d^2 nu = dx dp``.  The
quadrature schemes integrate over a finite square (or disc) of half-width
``radial_cutoff``; every integrand in this package carries Gaussian decay, so
the truncation error is controlled by the caller's choice of cutoff.

Random streams are counter-based (Philox).  A stream is addressed by a
:class:`StreamKey`; distinct keys give statistically independent streams and
the sequence drawn from a key is a pure function of the key and the draw
index, independent of process or thread layout.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Literal

import numpy as np

from .exceptions import DomainError, NumericalError

__all__ = [
    "QuadratureSpec",
    "StreamKey",
    "ConvergenceReport",
    "laguerre_assoc",
    "legendre",
    "plane_nodes",
    "integrate_plane",
    "make_stream",
    "block_stream",
    "gaussian_pair",
]


# ---------------------------------------------------------------------------
# orthogonal polynomials
# ---------------------------------------------------------------------------

def laguerre_assoc(n: int, k: int, x):
    """Associated Laguerre polynomial L_n^{(k)}(x) by upward recurrence.

    Parameters
    ----------
    n : int
        Degree, n >= 0.
    k : int
        Superscript order, k >= 0.
    x : float or ndarray
        Evaluation point(s).

    Returns
    -------
    float or ndarray
        L_n^{(k)}(x), same shape as ``x``.

    Notes
    -----
    Uses the stable three-term recurrence

        (i+1) L_{i+1}^{(k)} = (2i + k + 1 - x) L_i^{(k)} - (i + k) L_{i-1}^{(k)}

    upward from L_0 = 1, L_1 = 1 + k - x.
    """
    if n < 0 or k < 0:
        raise DomainError(f"laguerre_assoc requires n, k >= 0, got n={n}, k={k}")
    x = np.asarray(x, dtype=float)
    scalar = x.ndim == 0
    prev = np.ones_like(x)
    if n == 0:
        return float(prev) if scalar else prev
    cur = 1.0 + k - x
    for i in range(1, n):
        prev, cur = cur, ((2 * i + k + 1 - x) * cur - (i + k) * prev) / (i + 1)
    return float(cur) if scalar else cur


def legendre(n: int, x):
    """Legendre polynomial P_n(x) by the Bonnet recurrence."""
    if n < 0:
        raise DomainError(f"legendre requires n >= 0, got n={n}")
    x = np.asarray(x, dtype=float)
    scalar = x.ndim == 0
    prev = np.ones_like(x)
    if n == 0:
        return float(prev) if scalar else prev
    cur = x.copy()
    for i in range(1, n):
        prev, cur = cur, ((2 * i + 1) * x * cur - i * prev) / (i + 1)
    return float(cur) if scalar else cur


# ---------------------------------------------------------------------------
# plane quadrature
# ---------------------------------------------------------------------------

Scheme = Literal["tensor-cartesian", "polar"]


@dataclass(frozen=True)
class QuadratureSpec:
    """Rule for integrating a function of one complex variable over the plane.

    ``tensor-cartesian`` lays Gauss-Legendre nodes on each axis of the square
    [-radial_cutoff, radial_cutoff]^2; ``polar`` combines a radial
    Gauss-Legendre rule on [0, radial_cutoff] with a uniform angular rule.
    ``order`` is the node count per axis (or per radial/angular direction).
    """

    radial_cutoff: float = 6.0
    order: int = 64
    scheme: Scheme = "tensor-cartesian"

    def __post_init__(self):
        if not self.radial_cutoff > 0:
            raise DomainError(f"radial_cutoff must be > 0, got {self.radial_cutoff}")
        if self.order < 2:
            raise DomainError(f"order must be >= 2, got {self.order}")
        if self.scheme not in ("tensor-cartesian", "polar"):
            raise DomainError(f"unknown quadrature scheme {self.scheme!r}")


@dataclass(frozen=True)
class ConvergenceReport:
    """Self-comparison of a quadrature value against the half-order rule."""

    value: float
    half_order_value: float

    @property
    def difference(self) -> float:
        return abs(self.value - self.half_order_value)


@lru_cache(maxsize=64)
def _gauss_legendre(order: int):
    x, w = np.polynomial.legendre.leggauss(order)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def gauss_legendre_1d(order: int, halfwidth: float):
    """Gauss-Legendre nodes and weights scaled to [-halfwidth, halfwidth]."""
    x, w = _gauss_legendre(order)
    return x * halfwidth, w * halfwidth


def plane_nodes(spec: QuadratureSpec = QuadratureSpec()):
    """Nodes (complex) and weights for the rule described by ``spec``."""
    if spec.scheme == "tensor-cartesian":
        x, w = gauss_legendre_1d(spec.order, spec.radial_cutoff)
        nodes = (x[:, None] + 1j * x[None, :]).ravel()
        weights = (w[:, None] * w[None, :]).ravel()
        return nodes, weights
    # polar: radial GL on [0, R] with Jacobian r, uniform angles
    u, wu = _gauss_legendre(spec.order)
    r = 0.5 * spec.radial_cutoff * (u + 1.0)
    wr = 0.5 * spec.radial_cutoff * wu * r
    theta = 2.0 * np.pi * np.arange(spec.order) / spec.order
    wt = 2.0 * np.pi / spec.order
    nodes = (r[:, None] * np.exp(1j * theta)[None, :]).ravel()
    weights = (wr[:, None] * np.full((1, spec.order), wt)).ravel()
    return nodes, weights


def _evaluate(f: Callable, nodes: np.ndarray) -> np.ndarray:
    try:
        vals = np.asarray(f(nodes), dtype=float)
        if vals.shape != nodes.shape:
            raise ValueError
    except (TypeError, ValueError):
        vals = np.array([float(f(z)) for z in nodes])
    bad = ~np.isfinite(vals)
    if np.any(bad):
        where = nodes[bad][0]
        raise NumericalError(
            f"integrand returned a non-finite value at node {where!r}"
        )
    return vals


def integrate_plane(
    f: Callable,
    spec: QuadratureSpec = QuadratureSpec(),
    report: bool = False,
):
    """Integrate a real-valued function of a complex point over the plane.

    Parameters
    ----------
    f : callable
        Maps a complex ndarray to a real ndarray of the same shape (a scalar
        fallback path exists but is slow).  Must decay fast enough that the
        square/disc of half-width ``spec.radial_cutoff`` captures the mass;
        that is the caller's responsibility.
    spec : QuadratureSpec
        Rule to use.
    report : bool
        When true, also return a :class:`ConvergenceReport` comparing against
        the half-order rule.

    Returns
    -------
    float, or (float, ConvergenceReport)
    """
    nodes, weights = plane_nodes(spec)
    value = float(np.dot(weights, _evaluate(f, nodes)))
    if not report:
        return value
    half = QuadratureSpec(spec.radial_cutoff, max(2, spec.order // 2), spec.scheme)
    hnodes, hweights = plane_nodes(half)
    hvalue = float(np.dot(hweights, _evaluate(f, hnodes)))
    return value, ConvergenceReport(value=value, half_order_value=hvalue)


# ---------------------------------------------------------------------------
# reproducible random streams
# ---------------------------------------------------------------------------

_U64 = 1 << 64


@dataclass(frozen=True)
class StreamKey:
    """Address of an independent, reproducible random stream.

    Distinct (seed, stream_id) pairs give statistically independent streams;
    the same pair always reproduces the same sequence regardless of worker
    layout, because the generator is counter-based.
    """

    seed: int
    stream_id: int = 0


def make_stream(key: StreamKey) -> np.random.Generator:
    """Generator for the stream addressed by ``key``."""
    return block_stream(key, 0)


def block_stream(key: StreamKey, block_index: int) -> np.random.Generator:
    """Generator for a block-offset sub-stream of ``key``.

    Blocks live at disjoint counter offsets (spaced 2^128 draws apart), so a
    run partitioned into fixed-size blocks produces identical numbers no
    matter how many workers consume the blocks.
    """
    if block_index < 0:
        raise DomainError("block_index must be >= 0")
    philox = np.random.Philox(
        key=np.array([key.seed % _U64, key.stream_id % _U64], dtype=np.uint64),
        counter=block_index << 128,
    )
    return np.random.Generator(philox)


def gaussian_pair(gen: np.random.Generator) -> tuple[float, float]:
    """Next two independent standard normal deviates from ``gen``."""
    z = gen.standard_normal(2)
    return float(z[0]), float(z[1])
