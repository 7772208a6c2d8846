#!/usr/bin/env python3
"""Classify two-mode Gaussian resources by their (c, s) covariance pair.

Walks a gallery of parameter pairs through the classifier and prints, for
each: validity, purity, separability, correlation sign, the implied noise
scale t = 2/(c+s), and the coherent-state fidelity the resource supports.
"""

from cvteleport.fidelity import fidelity_coherent
from cvteleport.resource import ResourceParams, classify, from_squeeze, violated_inequality

GALLERY = [
    ("vacuum (r = 0)", from_squeeze(0.0)),
    ("squeezed r = 0.5", from_squeeze(0.5)),
    ("squeezed r = 1.5", from_squeeze(1.5)),
    ("mixed, right-sorted", ResourceParams(c=1.1, s=0.6)),
    ("separable thermal", ResourceParams(c=0.8, s=0.1)),
    ("wrong-sorted entangled", ResourceParams(c=1.1, s=-0.5)),
    ("uncertainty violator", ResourceParams(c=2.0, s=0.5)),
    ("overstrong correlation", ResourceParams(c=0.5, s=0.7)),
]


def main():
    print(f"{'label':>24s} {'c':>6s} {'s':>6s} {'valid':>6s} {'pure':>5s}"
          f" {'separable':>10s} {'correlation':>21s} {'t':>8s} {'F_coh':>8s}")
    print("-" * 104)
    for label, params in GALLERY:
        cls = classify(params)
        if cls.valid:
            t = params.t
            fid = fidelity_coherent(t)
            t_text = f"{t:8.4f}" if t != float("inf") else "     inf"
            f_text = f"{fid:8.4f}"
        else:
            t_text = f_text = "       -"
        print(f"{label:>24s} {params.c:6.2f} {params.s:6.2f} {str(cls.valid):>6s}"
              f" {str(cls.pure):>5s} {str(cls.separable):>10s}"
              f" {cls.correlation.value:>21s} {t_text} {f_text}")

    print()
    print("Invalid pairs fail a physicality inequality:")
    for label, params in GALLERY:
        reason = violated_inequality(params)
        if reason is not None:
            print(f"  {label}: {reason}")

    print()
    print("A wrong-sorted resource (s < 0) is entangled yet adds MORE noise than")
    print("no entanglement at all when wired into this protocol: its correlations")
    print("fight the displacement instead of cancelling it.  Flipping s re-sorts")
    print("the correlations and recovers the useful noise scale.")
    a = ResourceParams(c=1.1, s=-0.5)
    b = ResourceParams(c=1.1, s=0.5)
    print(f"  t(c=1.1, s=-0.5) = {a.t:.6f}  (worse than vacuum t = 2)")
    print(f"  t(c=1.1, s=+0.5) = {b.t:.6f}  (beats the classical bound)")


if __name__ == "__main__":
    main()
