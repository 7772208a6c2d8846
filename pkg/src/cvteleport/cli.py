"""Command-line front end.

Subcommands map one-to-one onto the library's headline results: closed-form
versus quadrature fidelities, the seeded protocol simulation, resource
classification, the kick-threshold scan, classicality verdicts, the
optimal-input search, and fidelity tables for plotting.

Output is a single JSON object (keys: command, config, results,
diagnostics, version) or RFC-4180 CSV preceded by one `#` metadata line
carrying the schema and the regenerating config.  The config echo is
complete: feeding it back reproduces the identical run.  Worker count is
deliberately not part of the echo — it never affects results.

Exit codes: 0 success, 1 usage error, 2 domain error, 3 numerical error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import re
import sys
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .exceptions import CVTeleportError, DomainError, NumericalError
from .fidelity import (
    FidelityCurve,
    closed_form,
    fidelity_coherent,
    fidelity_numeric,
    max_fidelity,
)
from .hv_model import cheat_run, min_kick_threshold, threshold_fidelity, verdict
from .resource import ResourceParams, classify, from_squeeze, violated_inequality
from .simulate import empirical_g_check, run_protocol
from .states import Coherent, FockVector, StateSpec, describe, superposition01

__all__ = ["main", "parse_state", "build_parser"]


class UsageError(Exception):
    """Bad flags or flag combinations; exits with code 1."""


_UNSIGNED = r"(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?"
_NUM = rf"[+-]?{_UNSIGNED}"
_VEC_ELEMENT = re.compile(rf"(?P<re>{_NUM})(?:(?P<sign>[+-])(?P<im>{_UNSIGNED})i)?")


def _syntax_error(text: str, pos: int, expected: str):
    raise DomainError(
        f"syntax error in state {text!r} at position {pos}: expected {expected}"
    )


def parse_state(text: str) -> StateSpec:
    """Parse the state mini-language.

    Grammar: ``coh:<re>[,<im>]`` | ``fock:<n>`` | ``superpos01`` |
    ``vec:<c0>;<c1>;...`` with each element ``<re>``, ``<re>+<im>i``, or
    ``<re>-<im>i``.  Vectors are normalized; a deviation of the input norm
    from 1 beyond 1e-6 prints a warning to stderr.
    """
    if text == "superpos01":
        return superposition01()
    if text.startswith("coh:"):
        body = text[4:]
        parts = body.split(",")
        if len(parts) > 2:
            _syntax_error(text, 4 + len(parts[0]) + 1 + len(parts[1]) + 1,
                          "at most one comma")
        if not re.fullmatch(_NUM, parts[0] or ""):
            _syntax_error(text, 4, "a real number")
        imag = 0.0
        if len(parts) == 2:
            if not re.fullmatch(_NUM, parts[1] or ""):
                _syntax_error(text, 4 + len(parts[0]) + 1, "a real number")
            imag = float(parts[1])
        return Coherent(complex(float(parts[0]), imag))
    if text.startswith("fock:"):
        body = text[5:]
        if not re.fullmatch(r"\d+", body or ""):
            _syntax_error(text, 5, "a nonnegative integer")
        n = int(body)
        if n > 50:
            raise DomainError(f"fock index {n} exceeds the supported maximum of 50")
        coeffs = np.zeros(n + 1, dtype=np.complex128)
        coeffs[n] = 1.0
        return FockVector(coeffs)
    if text.startswith("vec:"):
        body = text[4:]
        if not body:
            raise DomainError("empty vec: at least one coefficient is required")
        values = []
        pos = 4
        for element in body.split(";"):
            match = _VEC_ELEMENT.fullmatch(element)
            if match is None:
                _syntax_error(text, pos, "<re>, <re>+<im>i, or <re>-<im>i")
            imag = 0.0
            if match.group("im") is not None:
                imag = float(match.group("im"))
                if match.group("sign") == "-":
                    imag = -imag
            values.append(complex(float(match.group("re")), imag))
            pos += len(element) + 1
        coeffs = np.asarray(values, dtype=np.complex128)
        norm = float(np.linalg.norm(coeffs))
        if norm == 0.0:
            raise DomainError("vec coefficients must not all be zero")
        if abs(norm - 1.0) > 1e-6:
            print(
                f"warning: normalizing state vector (input norm {norm:.9g})",
                file=sys.stderr,
            )
        return FockVector(coeffs / norm)
    _syntax_error(text, 0, "one of 'coh:', 'fock:', 'superpos01', 'vec:'")


# ---------------------------------------------------------------------------
# Output plumbing
# ---------------------------------------------------------------------------

@dataclass
class Emission:
    command: str
    config: dict
    results: dict
    diagnostics: dict = field(default_factory=dict)
    columns: list = field(default_factory=list)
    rows: list = field(default_factory=list)


def _sig(value, digits: int):
    """Round to ``digits`` significant decimals (round-half-even)."""
    if isinstance(value, float):
        if not math.isfinite(value):
            return value
        return float(format(value, f".{digits}g"))
    return value


def _sig_tree(obj, digits: int):
    if isinstance(obj, dict):
        return {k: _sig_tree(v, digits) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_sig_tree(v, digits) for v in obj]
    return _sig(obj, digits)


def _emit_json(emission: Emission) -> str:
    payload = {
        "command": emission.command,
        "config": emission.config,
        "results": emission.results,
        "diagnostics": emission.diagnostics,
        "version": __version__,
    }
    return json.dumps(payload, indent=2) + "\n"


def _csv_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _emit_csv(emission: Emission) -> str:
    buffer = io.StringIO()
    quoted = io.StringIO()
    csv.writer(quoted, lineterminator="").writerow(emission.columns)
    meta = (
        f"# cvteleport {emission.command} v{__version__} "
        f"columns={quoted.getvalue()} "
        f"config={json.dumps(emission.config, separators=(',', ':'), sort_keys=True)}"
    )
    buffer.write(meta + "\r\n")
    writer = csv.writer(buffer)
    writer.writerow(emission.columns)
    for row in emission.rows:
        writer.writerow([_csv_cell(v) for v in row])
    return buffer.getvalue()


# ---------------------------------------------------------------------------
# Shared flag handling
# ---------------------------------------------------------------------------

def _resolve_t(args) -> tuple[float, dict]:
    """Apply the --t xor --r contract; returns t and its config echo."""
    has_t = getattr(args, "t", None) is not None
    has_r = getattr(args, "r", None) is not None
    if has_t == has_r:
        raise UsageError("exactly one of --t / --r is required")
    if has_r:
        return 2.0 * math.exp(-2.0 * args.r), {"r": args.r}
    if args.t < 0:
        raise DomainError(f"--t must be >= 0, got {args.t}")
    return args.t, {"t": args.t}


def _params_for_t(t: float) -> ResourceParams:
    """The pure resource with noise scale t: c = 1/t + t/4, s = 1/t - t/4."""
    if t <= 0:
        raise DomainError(f"simulation needs t > 0, got {t}")
    return ResourceParams(c=1.0 / t + t / 4.0, s=1.0 / t - t / 4.0)


def _common_config(args, t_echo: dict | None = None, state: str | None = None) -> dict:
    config = {}
    if state is not None:
        config["state"] = state
    if t_echo:
        config.update(t_echo)
    for name in ("seed", "samples", "cutoff"):
        if hasattr(args, name):
            config[name] = getattr(args, name)
    config["digits"] = args.digits
    config["format"] = args.format
    return config


def _check_run_config(args):
    if getattr(args, "samples", None) is not None and args.samples < 100:
        raise UsageError(f"--samples must be >= 100, got {args.samples}")
    if args.digits < 1:
        raise UsageError(f"--digits must be >= 1, got {args.digits}")


# ---------------------------------------------------------------------------
# Subcommand handlers
# ---------------------------------------------------------------------------

def _cmd_fidelity(args) -> Emission:
    state = parse_state(args.state)
    t, t_echo = _resolve_t(args)
    if args.t_stop is not None:
        if args.t_step is None or args.t_step <= 0:
            raise UsageError("--t-stop needs a positive --t-step")
        count = int(math.floor((args.t_stop - t) / args.t_step + 1e-9)) + 1
        if count < 1:
            raise UsageError("--t-stop must not be below the starting t")
        grid = [t + i * args.t_step for i in range(count)]
    else:
        grid = [t]
    config = _common_config(args, t_echo, args.state)
    if args.t_stop is not None:
        config["t_stop"] = args.t_stop
        config["t_step"] = args.t_step
    rows = []
    for ti in grid:
        known = closed_form(state, ti)
        quad = fidelity_numeric(state, ti)
        diff = abs(known - quad) if known is not None else None
        rows.append([
            _sig(float(ti), args.digits),
            _sig(known, args.digits),
            _sig(quad, args.digits),
            _sig(diff, args.digits),
        ])
    return Emission(
        command="fidelity",
        config=config,
        results={"rows": [
            dict(zip(("t", "closed_form", "quadrature", "abs_difference"), row))
            for row in rows
        ]},
        columns=["t", "closed_form", "quadrature", "abs_difference"],
        rows=rows,
    )


def _cmd_simulate(args) -> Emission:
    state = parse_state(args.state)
    t, t_echo = _resolve_t(args)
    params = from_squeeze(args.r) if "r" in t_echo else _params_for_t(t)
    result = run_protocol(state, params, args.samples, args.seed, workers=args.workers)
    target = fidelity_coherent(t)
    zscore = (result.fidelity_mean - target) / result.fidelity_stderr
    config = _common_config(args, t_echo, args.state)
    checks = [
        {
            "name": entry.name,
            "observed": _sig(entry.observed, args.digits),
            "expected": _sig(entry.expected, args.digits),
            "zscore": _sig(entry.zscore, args.digits),
        }
        for entry in empirical_g_check(result)
    ]
    results = {
        "fidelity_mean": _sig(result.fidelity_mean, args.digits),
        "fidelity_stderr": _sig(result.fidelity_stderr, args.digits),
        "closed_form_target": _sig(target, args.digits),
        "zscore": _sig(zscore, args.digits),
        "t": _sig(t, args.digits),
        "n_samples": result.n_samples,
    }
    columns = ["fidelity_mean", "fidelity_stderr", "closed_form_target", "zscore",
               "t", "n_samples"]
    return Emission(
        command="simulate",
        config=config,
        results=results,
        diagnostics={"moment_checks": checks},
        columns=columns,
        rows=[[results[c] for c in columns]],
    )


def _cmd_cheat(args) -> Emission:
    state = parse_state(args.state)
    estimate = cheat_run(state, args.samples, args.seed, workers=args.workers)
    target = threshold_fidelity(state)
    zscore = (estimate.mean - target) / estimate.stderr
    config = _common_config(args, None, args.state)
    results = {
        "cheat_mean": _sig(estimate.mean, args.digits),
        "cheat_stderr": _sig(estimate.stderr, args.digits),
        "threshold_fidelity": _sig(target, args.digits),
        "zscore": _sig(zscore, args.digits),
        "n_samples": args.samples,
    }
    columns = ["cheat_mean", "cheat_stderr", "threshold_fidelity", "zscore", "n_samples"]
    return Emission(
        command="cheat",
        config=config,
        results=results,
        columns=columns,
        rows=[[results[c] for c in columns]],
    )


def _cmd_resource(args) -> Emission:
    has_cs = args.c is not None or args.s is not None
    has_r = args.r is not None
    if has_cs == has_r or (has_cs and (args.c is None or args.s is None)):
        raise UsageError("provide either --c and --s together, or --r alone")
    if has_r:
        params = from_squeeze(args.r)
        config_extra = {"r": args.r}
    else:
        params = ResourceParams(c=args.c, s=args.s)
        config_extra = {"c": args.c, "s": args.s}
    cls = classify(params)
    t = params.t if (params.c + params.s) > 0 else None
    coherent_fid = fidelity_coherent(t) if t is not None else None
    config = _common_config(args)
    config.update(config_extra)
    results = {
        "c": _sig(params.c, args.digits),
        "s": _sig(params.s, args.digits),
        "t": _sig(t, args.digits),
        "valid": cls.valid,
        "pure": cls.pure,
        "separable": cls.separable,
        "correlation": cls.correlation.value,
        "coherent_fidelity": _sig(coherent_fid, args.digits),
    }
    columns = list(results.keys())
    return Emission(
        command="resource",
        config=config,
        results=results,
        diagnostics={"violated_inequality": violated_inequality(params)},
        columns=columns,
        rows=[[results[c] for c in columns]],
    )


def _cmd_kick_scan(args) -> Emission:
    state = parse_state(args.state)
    steps = int(round(args.t_max / args.t_step))
    t_grid = np.round(np.arange(steps + 1) * args.t_step, 12)
    report = min_kick_threshold(
        state,
        t_grid=t_grid,
        extent=args.extent,
        resolution=args.resolution,
        epsilon=args.epsilon,
    )
    config = _common_config(args, None, args.state)
    config.update({
        "t_max": args.t_max,
        "t_step": args.t_step,
        "extent": args.extent,
        "resolution": args.resolution,
        "epsilon": args.epsilon,
    })
    scan = [
        {"t": _sig(float(t), args.digits), "min_wigner": _sig(float(m), args.digits)}
        for t, m in zip(report.t_grid, report.min_wigner_per_t)
    ]
    results = {
        "t_star": _sig(report.t_star, args.digits),
        "threshold_fidelity": _sig(threshold_fidelity(state), args.digits),
        "scan": scan,
    }
    return Emission(
        command="kick-scan",
        config=config,
        results=results,
        diagnostics={"grid_points": len(scan)},
        columns=["t", "min_wigner"],
        rows=[[entry["t"], entry["min_wigner"]] for entry in scan],
    )


def _cmd_verdict(args) -> Emission:
    state = parse_state(args.state)
    outcome = verdict(state, args.achieved)
    config = _common_config(args, None, args.state)
    config["achieved"] = args.achieved
    results = {
        "classification": outcome.classification.value,
        "threshold": _sig(outcome.threshold, args.digits),
        "achieved": _sig(outcome.achieved, args.digits),
    }
    columns = ["classification", "threshold", "achieved"]
    return Emission(
        command="verdict",
        config=config,
        results=results,
        diagnostics={
            "non_gaussian": outcome.non_gaussian,
            "wigner_floor": _sig(outcome.wigner_floor, args.digits),
        },
        columns=columns,
        rows=[[results[c] for c in columns]],
    )


def _cmd_max_fidelity(args) -> Emission:
    t, t_echo = _resolve_t(args)
    result = max_fidelity(t, args.cutoff)
    config = _common_config(args, t_echo)
    results = {
        "value": _sig(result.value, args.digits),
        "coherent_ceiling": _sig(fidelity_coherent(t), args.digits),
        "best_alpha_re": _sig(result.best_alpha.real, args.digits),
        "best_alpha_im": _sig(result.best_alpha.imag, args.digits),
        "coherent_overlap": _sig(result.coherent_overlap, args.digits),
    }
    columns = list(results.keys())
    coeffs = [
        [_sig(float(c.real), args.digits), _sig(float(c.imag), args.digits)]
        for c in result.coeffs
    ]
    return Emission(
        command="max-fidelity",
        config=config,
        results=results,
        diagnostics={
            "iterations": result.iterations,
            "restarts_converged": result.restarts_converged,
            "coeffs": coeffs,
        },
        columns=columns,
        rows=[[results[c] for c in columns]],
    )


def _cmd_table(args) -> Emission:
    if not args.state:
        raise UsageError("table needs at least one --state")
    states = [parse_state(s) for s in args.state]
    if args.t_step <= 0:
        raise UsageError("--t-step must be positive")
    steps = int(math.floor((args.t_max - args.t_min) / args.t_step + 1e-9))
    t_grid = np.round(args.t_min + np.arange(steps + 1) * args.t_step, 12)
    curves = [FidelityCurve.for_state(state, t_grid) for state in states]
    config = _common_config(args)
    config.update({
        "state": list(args.state),
        "t_min": args.t_min,
        "t_max": args.t_max,
        "t_step": args.t_step,
    })
    results = {
        "t_grid": [_sig(float(t), args.digits) for t in t_grid],
        "curves": [
            {
                "state": curve.state,
                "method": curve.method.value,
                "values": [_sig(float(v), args.digits) for v in curve.values],
            }
            for curve in curves
        ],
    }
    columns = ["t"] + [curve.state for curve in curves]
    rows = []
    for i, t in enumerate(results["t_grid"]):
        rows.append([t] + [c["values"][i] for c in results["curves"]])
    return Emission(
        command="table",
        config=config,
        results=results,
        diagnostics={"states": [describe(s) for s in states]},
        columns=columns,
        rows=rows,
    )


# ---------------------------------------------------------------------------
# Parser assembly
# ---------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _add_common(sub, samples=False, cutoff=False, t_flags=False, state=False,
                workers=False):
    if state:
        sub.add_argument("--state", required=True, help="state expression")
    if t_flags:
        sub.add_argument("--t", type=float, default=None,
                         help="noise scale t (exclusive with --r)")
        sub.add_argument("--r", type=float, default=None,
                         help="squeeze parameter; t = 2 exp(-2r)")
    sub.add_argument("--seed", type=int, default=42, help="random seed")
    if samples:
        sub.add_argument("--samples", type=int, default=1_000_000,
                         help="Monte Carlo sample count (>= 100)")
    if cutoff:
        sub.add_argument("--cutoff", type=int, default=12,
                         help="Fock-space dimension for searches")
    if workers:
        sub.add_argument("--workers", type=int, default=1,
                         help="worker threads; never affects results")
    sub.add_argument("--format", choices=("csv", "json"), default="json",
                     help="output format")
    sub.add_argument("--digits", type=int, default=12,
                     help="significant decimal digits in results")


def build_parser() -> _Parser:
    parser = _Parser(
        prog="cvteleport",
        description="Phase-space teleportation fidelities, simulation, and "
                    "classicality verdicts.",
    )
    parser.add_argument("--version", action="version", version=f"cvteleport {__version__}")
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("fidelity", help="closed form vs quadrature fidelity")
    _add_common(p, t_flags=True, state=True)
    p.add_argument("--t-stop", dest="t_stop", type=float, default=None,
                   help="end of an inclusive t grid starting at --t")
    p.add_argument("--t-step", dest="t_step", type=float, default=None,
                   help="grid step used with --t-stop")
    p.set_defaults(handler=_cmd_fidelity)

    p = subs.add_parser("simulate", help="Monte Carlo protocol run")
    _add_common(p, samples=True, t_flags=True, state=True, workers=True)
    p.set_defaults(handler=_cmd_simulate)

    p = subs.add_parser("cheat", help="heterodyne cheat-strategy run")
    _add_common(p, samples=True, state=True, workers=True)
    p.set_defaults(handler=_cmd_cheat)

    p = subs.add_parser("resource", help="classify a two-mode resource")
    p.add_argument("--c", type=float, default=None, help="resource parameter c")
    p.add_argument("--s", type=float, default=None, help="resource parameter s")
    p.add_argument("--r", type=float, default=None, help="squeeze parameter")
    _add_common(p)
    p.set_defaults(handler=_cmd_resource)

    p = subs.add_parser("kick-scan", help="minimum-kick threshold scan")
    _add_common(p, state=True)
    p.add_argument("--t-max", dest="t_max", type=float, default=1.2)
    p.add_argument("--t-step", dest="t_step", type=float, default=0.01)
    p.add_argument("--extent", type=float, default=4.0)
    p.add_argument("--resolution", type=float, default=0.05)
    p.add_argument("--epsilon", type=float, default=1e-9)
    p.set_defaults(handler=_cmd_kick_scan)

    p = subs.add_parser("verdict", help="classicality verdict for a fidelity")
    _add_common(p, state=True)
    p.add_argument("--achieved", type=float, required=True,
                   help="achieved average fidelity in [0, 1]")
    p.set_defaults(handler=_cmd_verdict)

    p = subs.add_parser("max-fidelity", help="optimal-input fidelity search")
    _add_common(p, cutoff=True, t_flags=True)
    p.set_defaults(handler=_cmd_max_fidelity)

    p = subs.add_parser("table", help="F(t) curves for plotting")
    p.add_argument("--state", action="append", default=[],
                   help="state expression; repeatable")
    p.add_argument("--t-min", dest="t_min", type=float, default=0.0)
    p.add_argument("--t-max", dest="t_max", type=float, default=4.0)
    p.add_argument("--t-step", dest="t_step", type=float, default=0.05)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--format", choices=("csv", "json"), default="json")
    p.add_argument("--digits", type=int, default=12)
    p.set_defaults(handler=_cmd_table)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        _check_run_config(args)
        emission = args.handler(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except NumericalError as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return 3
    except CVTeleportError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    text = _emit_csv(emission) if args.format == "csv" else _emit_json(emission)
    sys.stdout.write(text)
    return 0
