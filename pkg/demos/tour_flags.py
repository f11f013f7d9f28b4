#!/usr/bin/env python3
"""Flag h-vectors, descent-class dominance, and what they say about a
small complex.

Run:  python3 demos/tour_flags.py
"""

from __future__ import annotations

from earlab.complexes import build_complex, f_h_vectors, face_poset
from earlab.flags import (
    corollary_gap_coefficients,
    descent_classes,
    dominates,
    flag_f_and_h,
    verify_flag_inequalities,
    w_set,
    weak_leq_by_switches,
)
from earlab.posets import rank_select, with_bounds


def banner(text: str) -> None:
    print()
    print(text)
    print("-" * len(text))


def main() -> None:
    banner("Descent classes of S_4")
    classes = descent_classes(4)
    for S in sorted(classes, key=lambda s: (len(s), sorted(s))):
        print(f"  S={set(S) if S else '{}'}: {len(classes[S])} words")

    banner("Dominance is a matching in the weak order")
    S, T = frozenset({1, 3}), frozenset({1})
    dom, inj = dominates(S, T, 4)
    print(f"does D_{set(S)} dominate D_{set(T)}? {dom}")
    for tau, sigma in sorted(inj.items()):
        ladder = weak_leq_by_switches(tau, sigma)
        print(f"  {tau} -> {sigma}  (reachable by switches: {ladder})")
    rev, _ = dominates(T, S, 4)
    print(f"reverse direction: {rev} (the classes have different sizes)")

    banner("The w-statistic separates selections")
    for sel in [{1}, {1, 2}, {2}]:
        print(f"  w({set(sel)}) on [4] = {set(w_set(sel, 4)) or '{}'}")

    banner("Flag inequalities on a small ball")
    c = build_complex([["a", "b", "c"], ["a", "b", "d"]])
    fp = face_poset(c, include_empty=True, graded=True)
    p = with_bounds(rank_select(fp, range(1, c.dim + 1)))
    rep = verify_flag_inequalities(p)
    print(f"rank subsets live in [1, {rep['rho'] - 1}]")
    for row in rep["pairs"]:
        print(
            f"  h_{row['T'] or '{}'} = {row['h_T']} <= h_{row['S']} = {row['h_S']}"
            f"  ok={row['ok']}"
        )
    print(f"violations: {rep['violations']}")

    banner("Flag gaps expand in the h-vector of the underlying complex")
    _, hK = f_h_vectors(c)
    d = c.dim
    full = with_bounds(rank_select(fp, range(1, c.dim + 2)))
    _, fh = flag_f_and_h(full)
    S, T = frozenset({1}), frozenset()
    a = corollary_gap_coefficients(S, T, d)
    lhs = fh.get(S) - fh.get(T)
    rhs = sum(ai * hK[i] for i, ai in enumerate(a))
    print(f"coefficients a_i for the pair ({set(S)}, {{}}): {a}")
    print(f"h_S - h_T = {lhs}, expansion gives {rhs}")


if __name__ == "__main__":
    main()
