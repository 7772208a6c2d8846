#!/usr/bin/env python3
"""Monte Carlo teleportation runs compared against the closed form.

Simulates the measure-displace protocol on coherent-state input for a few
squeeze strengths, prints the sampled mean fidelity with its standard
error, and shows the added-noise moment diagnostics for the last run.
"""

import math

from cvteleport.fidelity import fidelity_coherent
from cvteleport.resource import from_squeeze
from cvteleport.simulate import empirical_g_check, run_protocol
from cvteleport.states import Coherent

N_SAMPLES = 200_000
SEED = 7


def main():
    state = Coherent(0.4 + 0.2j)
    print(f"Input {state!r}, {N_SAMPLES:,} rounds per run, seed {SEED}")
    print()
    print("    r       t    closed form    sampled mean      stderr     z")
    print("-" * 66)
    last_result = None
    for r in (0.0, 0.25, 0.5, 1.0, 1.5):
        t = 2.0 * math.exp(-2.0 * r)
        params = from_squeeze(r)
        result = run_protocol(state, params, N_SAMPLES, SEED)
        target = fidelity_coherent(t)
        z = (result.fidelity_mean - target) / result.fidelity_stderr
        print(f"{r:6.2f} {t:7.4f} {target:14.6f} {result.fidelity_mean:15.6f}"
              f" {result.fidelity_stderr:11.6f} {z:+6.2f}")
        last_result = result

    print()
    print("r = 0 is the classical bound F = 2/3; fidelity rises toward 1 as")
    print("the two-mode resource is squeezed harder.")

    print()
    print("Added-noise moment checks at r = 1.5 (expect |z| < 5):")
    for check in empirical_g_check(last_result):
        print(f"  {check.name:>15s}: observed {check.observed:+.6f}"
              f"  expected {check.expected:+.6f}  z = {check.zscore:+.2f}")


if __name__ == "__main__":
    main()
