"""Monte Carlo simulation of the continuous-variable teleportation protocol.

One protocol round: draw the shared mode pair (alpha, beta) from the
resource Wigner function, draw the input amplitude nu from the input
Wigner function, record the measurement outcome xi = nu + conj(alpha),
and displace Bob's mode to beta_out = beta + xi.  The output amplitude is
the input shifted by the effective noise beta + conj(alpha), whose density
is exactly the resource's outcome-noise Gaussian of per-quadrature
variance t/4.

The simulation is a genuinely classical process: every density it samples
is nonnegative, so the run is a local-hidden-variable account of the
statistics it produces.

Sampling is organized in fixed-size blocks, each drawn from its own
counter-offset stream, so results are bit-identical for any worker count.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .exceptions import DomainError, InternalConsistencyError, UnsupportedSamplerError
from .numerics import StreamKey, block_stream, gaussian_pair
from .phase_space import wigner
from .resource import ResourceParams, violated_inequality, wigner_ab
from .states import Coherent, StateSpec, describe

__all__ = [
    "BLOCK_SIZE",
    "TeleportRunResult",
    "ResidualEntry",
    "as_stream_key",
    "resource_cholesky",
    "sample_resource",
    "sample_input",
    "run_protocol",
    "estimate_fidelity",
    "empirical_g_check",
]

BLOCK_SIZE = 1 << 16


def as_stream_key(seed) -> StreamKey:
    """Accept a bare integer seed or a full StreamKey."""
    if isinstance(seed, StreamKey):
        return seed
    return StreamKey(int(seed), 0)


def resource_cholesky(params: ResourceParams) -> tuple[np.ndarray, np.ndarray]:
    """Cholesky factors of the x-quadrature and p-quadrature covariance
    blocks of the resource.

    Inverting the x-block quadratic form [[4c, 4s], [4s, 4c]] gives the
    covariance [[c, -s], [-s, c]] / (4(c^2-s^2)); the p-block is the same
    with the cross term's sign flipped.
    """
    reason = violated_inequality(params)
    if reason is not None:
        raise DomainError(f"cannot sample an invalid resource: {reason}")
    c, s = params.c, params.s
    denom = 4.0 * (c * c - s * s)
    cov_x = np.array([[c, -s], [-s, c]]) / denom
    cov_p = np.array([[c, s], [s, c]]) / denom
    return np.linalg.cholesky(cov_x), np.linalg.cholesky(cov_p)


def sample_resource(params: ResourceParams, gen: np.random.Generator) -> tuple[complex, complex]:
    """One (alpha, beta) draw from the resource Wigner function.

    Consumes exactly four standard normals in the fixed order
    (x-pair, p-pair), matching the vectorized block sampler.
    """
    lx, lp = resource_cholesky(params)
    zx = np.array(gaussian_pair(gen))
    zp = np.array(gaussian_pair(gen))
    x = lx @ zx
    p = lp @ zp
    return complex(x[0], p[0]), complex(x[1], p[1])


def sample_input(state: StateSpec, gen: np.random.Generator) -> complex:
    """One draw from the input Wigner function.

    Only coherent inputs have a nonnegative Wigner function here; for
    anything else the Wigner function is not a density and the
    heterodyne-based cheat sampler is the right tool.
    """
    if not isinstance(state, Coherent):
        raise UnsupportedSamplerError(
            f"cannot sample the Wigner function of {describe(state)!r}: it is "
            "not a probability density; use the cheat subcommand / cheat_run "
            "sampler instead"
        )
    z1, z2 = gaussian_pair(gen)
    return state.alpha + complex(z1, z2) / 2.0


@dataclass(frozen=True)
class TeleportRunResult:
    """Fidelity estimate and moment diagnostics from one seeded run.

    The raw sample arrays ride along for deeper diagnostics; the moment
    fields are what the protocol theory constrains directly.
    """

    n_samples: int
    fidelity_mean: float
    fidelity_stderr: float
    xi_mean: complex
    xi_quadrature_variances: tuple[float, float]
    g_quadrature_variances: tuple[float, float]
    seed: StreamKey
    params: ResourceParams
    state: StateSpec
    nu: np.ndarray
    alpha: np.ndarray
    beta_out: np.ndarray

    def __post_init__(self):
        if self.n_samples >= 2 and not self.fidelity_stderr > 0:
            raise InternalConsistencyError(
                f"stderr must be positive for n >= 2, got {self.fidelity_stderr!r}"
            )
        if not -2.0 <= self.fidelity_mean <= 2.0:
            raise InternalConsistencyError(
                f"fidelity estimator is bounded by [-2, 2], got {self.fidelity_mean!r}"
            )

    @property
    def xi(self) -> np.ndarray:
        """Measurement outcomes nu + conj(alpha)."""
        return self.nu + np.conj(self.alpha)

    @property
    def noise(self) -> np.ndarray:
        """Effective displacement noise beta_out - nu = beta + conj(alpha)."""
        return self.beta_out - self.nu


def _sample_block(
    state: Coherent,
    lx: np.ndarray,
    lp: np.ndarray,
    key: StreamKey,
    block_index: int,
    size: int,
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    gen = block_stream(key, block_index)
    z = gen.standard_normal((size, 6))
    xs = z[:, 0:2] @ lx.T
    ps = z[:, 2:4] @ lp.T
    alpha = xs[:, 0] + 1j * ps[:, 0]
    beta = xs[:, 1] + 1j * ps[:, 1]
    nu = state.alpha + 0.5 * (z[:, 4] + 1j * z[:, 5])
    return nu, alpha, beta


def estimate_fidelity(beta_out: np.ndarray, state: StateSpec) -> tuple[float, float]:
    """Mean and standard error of the unbiased per-sample fidelity
    estimator pi * W_in(beta_out); each term lies in [-2, 2]."""
    beta_out = np.asarray(beta_out, dtype=np.complex128)
    if beta_out.size < 2:
        raise DomainError("fidelity estimation needs at least two samples")
    values = math.pi * wigner(state, beta_out)
    mean = float(np.mean(values))
    stderr = float(np.std(values, ddof=1) / math.sqrt(values.size))
    return mean, stderr


def run_protocol(
    state: StateSpec,
    params: ResourceParams,
    n: int,
    seed,
    workers: int = 1,
    verify_densities: bool = False,
) -> TeleportRunResult:
    """Simulate ``n`` protocol rounds and estimate the average fidelity.

    The result is a pure function of (state, params, n, seed): ``workers``
    only parallelizes block generation, and blocks are merged in index
    order from disjoint counter-addressed streams.

    ``verify_densities`` additionally evaluates every sampled density and
    asserts nonnegativity — the local-hidden-variable bona fides of the run.
    """
    if n < 2:
        raise DomainError(f"need at least 2 samples, got {n}")
    if workers < 1:
        raise DomainError(f"workers must be >= 1, got {workers}")
    key = as_stream_key(seed)
    if not isinstance(state, Coherent):
        # Surface the sampler restriction before doing any work.
        sample_input(state, block_stream(key, 0))
    lx, lp = resource_cholesky(params)

    n_blocks = (n + BLOCK_SIZE - 1) // BLOCK_SIZE
    sizes = [min(BLOCK_SIZE, n - i * BLOCK_SIZE) for i in range(n_blocks)]

    def make(i: int):
        return _sample_block(state, lx, lp, key, i, sizes[i])

    if workers == 1 or n_blocks == 1:
        parts = [make(i) for i in range(n_blocks)]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(make, range(n_blocks)))

    nu = np.concatenate([p[0] for p in parts])
    alpha = np.concatenate([p[1] for p in parts])
    beta = np.concatenate([p[2] for p in parts])
    xi = nu + np.conj(alpha)
    beta_out = beta + xi

    if verify_densities:
        resource_density = wigner_ab(params, alpha, beta)
        input_density = wigner(state, nu)
        if np.min(resource_density) <= 0 or np.min(input_density) <= 0:
            raise InternalConsistencyError(
                "a sampled phase-space density evaluated non-positive; the run "
                "would not be a valid hidden-variable account"
            )

    mean, stderr = estimate_fidelity(beta_out, state)
    noise = beta_out - nu
    return TeleportRunResult(
        n_samples=n,
        fidelity_mean=mean,
        fidelity_stderr=stderr,
        xi_mean=complex(np.mean(xi)),
        xi_quadrature_variances=(
            float(np.var(xi.real, ddof=1)),
            float(np.var(xi.imag, ddof=1)),
        ),
        g_quadrature_variances=(
            float(np.var(noise.real, ddof=1)),
            float(np.var(noise.imag, ddof=1)),
        ),
        seed=key,
        params=params,
        state=state,
        nu=nu,
        alpha=alpha,
        beta_out=beta_out,
    )


@dataclass(frozen=True)
class ResidualEntry:
    """One moment comparison between a sample run and theory."""

    name: str
    observed: float
    expected: float
    zscore: float


def empirical_g_check(result: TeleportRunResult) -> list[ResidualEntry]:
    """Compare run moments against the outcome-noise theory.

    The effective noise has per-quadrature variance t/4; the measurement
    outcome xi has mean equal to the input amplitude and per-quadrature
    variance 1/4 + c / (4(c^2 - s^2)).
    """
    params = result.params
    if not isinstance(result.state, Coherent):
        raise DomainError("moment check is defined for coherent-input runs")
    n = result.n_samples
    c, s = params.c, params.s
    t4 = params.t / 4.0
    xi_var = 0.25 + c / (4.0 * (c * c - s * s))
    alpha_in = result.state.alpha

    entries = []

    def add_var(name, observed, expected):
        se = expected * math.sqrt(2.0 / (n - 1))
        entries.append(ResidualEntry(name, observed, expected, (observed - expected) / se))

    def add_mean(name, observed, expected, var):
        se = math.sqrt(var / n)
        entries.append(ResidualEntry(name, observed, expected, (observed - expected) / se))

    add_var("g re variance", result.g_quadrature_variances[0], t4)
    add_var("g im variance", result.g_quadrature_variances[1], t4)
    add_var("xi re variance", result.xi_quadrature_variances[0], xi_var)
    add_var("xi im variance", result.xi_quadrature_variances[1], xi_var)
    add_mean("xi re mean", result.xi_mean.real, alpha_in.real, xi_var)
    add_mean("xi im mean", result.xi_mean.imag, alpha_in.imag, xi_var)
    return entries
