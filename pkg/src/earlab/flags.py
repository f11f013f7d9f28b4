"""Flag f/h vectors, g-vectors, M-vector tests, weak order, dominance.

Conventions used throughout:
  * A graded bounded poset of rank rho has flag subsets S ⊆ [rho-1].
  * Permutations live in S_rho; descent positions are 1-based.
  * Dominance of S over T means an injection D_T -> D_S that moves every
    permutation weakly up in the (right) weak order. The production
    comparison is inversion-set containment; a breadth-first search over
    switches backs it as a test oracle.

The h-vector side: g = the first differences of the lower half of h, and
the M-vector test is the Macaulay binomial growth bound, all in exact
integer arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations
from math import comb
from typing import Iterable, Mapping, Optional, Sequence

from .complexes import SimplicialComplex, boundary_complex, reduced_euler
from .errors import (
    BadParams,
    Inconsistent,
    LengthMismatch,
    NotBall,
    RangeError,
    SizeLimit,
)
from .labelings import EdgeLabeling, descent_set
from .posets import Poset, maximal_chains

__all__ = [
    "FlagVector",
    "flag_f_and_h",
    "flag_h_from_descents",
    "h_from_flag_h",
    "g_vector",
    "macaulay_pseudopower",
    "is_m_vector",
    "g_and_m_check",
    "verify_h_inequalities",
    "inversion_mask",
    "weak_leq",
    "weak_leq_by_switches",
    "descent_classes",
    "dominates",
    "w_set",
    "verify_flag_inequalities",
    "ball_flag_reciprocity",
    "flag_f_from_complex_fvector",
    "corollary_gap_coefficients",
    "DOMINANCE_CAP",
]

DOMINANCE_CAP = 8


@dataclass(frozen=True)
class FlagVector:
    """Map from rank subsets to counts; kind is 'f' or 'h'."""

    kind: str
    rho: int
    entries: Mapping[frozenset[int], int]

    def __getitem__(self, S: Iterable[int]) -> int:
        return self.entries[frozenset(S)]

    def get(self, S: Iterable[int], default: int = 0) -> int:
        return self.entries.get(frozenset(S), default)

    def to_json_field(self) -> dict[str, int]:
        def key(S: frozenset[int]) -> str:
            return ",".join(str(i) for i in sorted(S)) if S else "-"

        return {key(S): v for S, v in sorted(self.entries.items(), key=lambda kv: (len(kv[0]), sorted(kv[0])))}


def _rank_layers(p: Poset) -> dict[int, list[int]]:
    layers: dict[int, list[int]] = {}
    for i, r in enumerate(p.ranks):
        layers.setdefault(r, []).append(i)
    return layers


def flag_f_and_h(p: Poset) -> tuple[FlagVector, FlagVector]:
    """Flag f and h of a bounded graded poset, by chain DP and
    inclusion-exclusion; the f = Σ h round trip is asserted."""
    if not (p.graded and p.bounded):
        raise BadParams("flag vectors need a graded bounded poset")
    rho = p.rank_of(p.top)
    layers = _rank_layers(p)
    f_entries: dict[frozenset[int], int] = {}
    for k in range(0, rho):
        for S in combinations(range(1, rho), k):
            # chains hitting exactly the ranks in S, counted layer by layer
            counts = {p._bottom: 1}
            for s in S:
                nxt: dict[int, int] = {}
                for j in layers.get(s, []):
                    total = 0
                    for i, c in counts.items():
                        if p.leq_i(i, j):
                            total += c
                    if total:
                        nxt[j] = total
                counts = nxt
                if not counts:
                    break
            f_entries[frozenset(S)] = sum(counts.values())
    h_entries: dict[frozenset[int], int] = {}
    for S in f_entries:
        h_entries[S] = sum(
            (-1) ** (len(S) - len(T)) * f_entries[frozenset(T)]
            for k in range(len(S) + 1)
            for T in combinations(sorted(S), k)
        )
    for S in f_entries:
        back = sum(
            h_entries[frozenset(T)]
            for k in range(len(S) + 1)
            for T in combinations(sorted(S), k)
        )
        if back != f_entries[S]:
            raise Inconsistent("flag f/h round trip failed")
    return (
        FlagVector("f", rho, f_entries),
        FlagVector("h", rho, h_entries),
    )


def flag_h_from_descents(p: Poset, lab: EdgeLabeling) -> FlagVector:
    """Histogram of descent sets of maximal-chain label words."""
    if not (p.graded and p.bounded):
        raise BadParams("need a graded bounded poset")
    rho = p.rank_of(p.top)
    entries: dict[frozenset[int], int] = {
        frozenset(S): 0 for k in range(rho) for S in combinations(range(1, rho), k)
    }
    for c in maximal_chains(p):
        S = descent_set(lab.word(c.elements))
        entries[S] = entries.get(S, 0) + 1
    return FlagVector("h", rho, entries)


def h_from_flag_h(fh: FlagVector) -> tuple[int, ...]:
    """h_i = Σ over |S| = i of h_S."""
    h = [0] * fh.rho
    for S, v in fh.entries.items():
        h[len(S)] += v
    return tuple(h)


# -- h-vector side -------------------------------------------------------------


def g_vector(h: Sequence[int]) -> tuple[int, ...]:
    """g_i = h_i - h_{i-1} on the lower half (g_0 = h_0)."""
    d = len(h) - 1
    out = [h[0]]
    for i in range(1, d // 2 + 1):
        out.append(h[i] - h[i - 1])
    return tuple(out)


def macaulay_pseudopower(a: int, i: int) -> int:
    """a^<i> via the greedy binomial representation of a in degree i."""
    if a < 0 or i < 1:
        raise BadParams("need a >= 0 and i >= 1")
    if a == 0:
        return 0
    rep = []
    deg = i
    rest = a
    while rest > 0 and deg >= 1:
        n = deg
        while comb(n + 1, deg) <= rest:
            n += 1
        rep.append((n, deg))
        rest -= comb(n, deg)
        deg -= 1
    return sum(comb(n + 1, d + 1) for n, d in rep)


def is_m_vector(seq: Sequence[int]) -> bool:
    """Macaulay growth test: an O-sequence starts at 1 and each entry obeys
    the pseudopower bound from the one before."""
    if not seq:
        return False
    if seq[0] != 1:
        return False
    if any(x < 0 for x in seq):
        return False
    for i in range(1, len(seq)):
        if i == 1:
            continue  # degree-1 entries are unconstrained
        if seq[i] > macaulay_pseudopower(seq[i - 1], i - 1):
            return False
    return True


def g_and_m_check(h: Sequence[int]) -> tuple[tuple[int, ...], bool]:
    g = g_vector(h)
    return g, is_m_vector(g)


def verify_h_inequalities(h: Sequence[int]) -> tuple[bool, list[str]]:
    """The two h-vector consequences: h_i ≤ h_{d-i} and, below d/2,
    h_i ≤ h_{i+1}. Returns (ok, failures)."""
    d = len(h) - 1
    bad = []
    for i in range(d // 2 + 1):
        if h[i] > h[d - i]:
            bad.append(f"symmetry: h_{i} = {h[i]} > h_{d - i} = {h[d - i]}")
    i = 0
    while i < d / 2:
        if h[i] > h[i + 1]:
            bad.append(f"growth: h_{i} = {h[i]} > h_{i + 1} = {h[i + 1]}")
        i += 1
    return (not bad), bad


# -- weak order and dominance ---------------------------------------------------


def _pair_index(m: int) -> dict[tuple[int, int], int]:
    pairs = {}
    k = 0
    for a in range(1, m + 1):
        for b in range(a + 1, m + 1):
            pairs[(a, b)] = k
            k += 1
    return pairs


def inversion_mask(perm: Sequence[int]) -> int:
    """Bitmask over value pairs (a, b), a < b, set when a appears after b."""
    m = len(perm)
    pos = {v: i for i, v in enumerate(perm)}
    if len(pos) != m or set(pos) != set(range(1, m + 1)):
        raise BadParams(f"{perm!r} is not a permutation of 1..{m}")
    idx = _pair_index(m)
    mask = 0
    for a in range(1, m + 1):
        for b in range(a + 1, m + 1):
            if pos[a] > pos[b]:
                mask |= 1 << idx[(a, b)]
    return mask


def weak_leq(sigma: Sequence[int], tau: Sequence[int]) -> bool:
    """σ ≤ τ in the weak order, by inversion-set containment."""
    if len(sigma) != len(tau):
        raise LengthMismatch("permutations must have the same length")
    a, b = inversion_mask(sigma), inversion_mask(tau)
    return a & ~b == 0


def weak_leq_by_switches(sigma: Sequence[int], tau: Sequence[int]) -> bool:
    """Oracle: walk ascent switches upward from σ looking for τ."""
    if len(sigma) != len(tau):
        raise LengthMismatch("permutations must have the same length")
    start, goal = tuple(sigma), tuple(tau)
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for w in frontier:
            if w == goal:
                return True
            for i in range(len(w) - 1):
                if w[i] < w[i + 1]:
                    u = w[:i] + (w[i + 1], w[i]) + w[i + 2 :]
                    if u not in seen:
                        seen.add(u)
                        nxt.append(u)
        frontier = nxt
    return goal in seen


@lru_cache(maxsize=None)
def descent_classes(m: int) -> dict[frozenset[int], list[tuple[int, ...]]]:
    """All of S_m grouped by descent set."""
    if m > DOMINANCE_CAP:
        raise SizeLimit(f"descent classes capped at m = {DOMINANCE_CAP}")
    out: dict[frozenset[int], list[tuple[int, ...]]] = {}
    for perm in permutations(range(1, m + 1)):
        out.setdefault(descent_set(perm), []).append(perm)
    return out


def _hopcroft_karp(adj: list[list[int]], n_right: int) -> list[int]:
    """Maximum matching; returns match_left (index into right side or -1)."""
    INF = float("inf")
    n_left = len(adj)
    match_l = [-1] * n_left
    match_r = [-1] * n_right
    while True:
        dist = [INF] * n_left
        queue = [u for u in range(n_left) if match_l[u] == -1]
        for u in queue:
            dist[u] = 0
        head = 0
        found = False
        while head < len(queue):
            u = queue[head]
            head += 1
            for v in adj[u]:
                w = match_r[v]
                if w == -1:
                    found = True
                elif dist[w] is INF:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        if not found:
            break

        def try_augment(u: int) -> bool:
            for v in adj[u]:
                w = match_r[v]
                if w == -1 or (dist[w] == dist[u] + 1 and try_augment(w)):
                    match_l[u] = v
                    match_r[v] = u
                    return True
            dist[u] = INF
            return False

        for u in range(n_left):
            if match_l[u] == -1:
                try_augment(u)
    return match_l


def dominates(
    S: Iterable[int], T: Iterable[int], m: int
) -> tuple[bool, Optional[dict[tuple[int, ...], tuple[int, ...]]]]:
    """Does S dominate T in S_m? Decided by maximum bipartite matching on
    the weak-order relation between descent classes; the injection comes
    back as the witness."""
    if m > DOMINANCE_CAP:
        raise SizeLimit(f"dominance capped at m = {DOMINANCE_CAP}")
    Sf, Tf = frozenset(S), frozenset(T)
    bad = [i for i in Sf | Tf if not 1 <= i <= m - 1]
    if bad:
        raise BadParams(f"rank positions {bad} outside [1, {m - 1}]")
    classes = descent_classes(m)
    left = classes.get(Tf, [])
    right = classes.get(Sf, [])
    if not left:
        return True, {}
    if len(left) > len(right):
        return False, None
    right_masks = [inversion_mask(s) for s in right]
    adj: list[list[int]] = []
    for tau in left:
        tm = inversion_mask(tau)
        adj.append([j for j, sm in enumerate(right_masks) if tm & ~sm == 0])
    match_l = _hopcroft_karp(adj, len(right))
    if any(v == -1 for v in match_l):
        return False, None
    return True, {left[u]: right[v] for u, v in enumerate(match_l)}


def w_set(S: Iterable[int], n: int) -> frozenset[int]:
    """{ i in [n] : exactly one of i, i+1 lies in S }."""
    Sf = frozenset(S)
    bad = [i for i in Sf if not 1 <= i <= n]
    if bad:
        raise BadParams(f"{bad} outside [1, {n}]")
    return frozenset(i for i in range(1, n + 1) if (i in Sf) + (i + 1 in Sf) == 1)


def verify_flag_inequalities(
    p: Poset, *, m_cap: int = DOMINANCE_CAP, audit: bool = False
) -> dict:
    """Check h_T ≤ h_S for every dominating pair (S, T) of rank subsets.

    ``p`` must be graded and bounded (callers add bounds to rank selections
    first). In audit mode violations are recorded, not raised; the caller
    inspects the report either way.
    """
    if not (p.graded and p.bounded):
        raise BadParams("need a graded bounded poset")
    rho = p.rank_of(p.top)
    if rho > m_cap:
        raise SizeLimit(f"rank {rho} exceeds the dominance cap {m_cap}")
    _, fh = flag_f_and_h(p)
    subsets = [frozenset(S) for k in range(rho) for S in combinations(range(1, rho), k)]
    pairs = []
    violations = 0
    for S in subsets:
        for T in subsets:
            if S == T:
                continue
            dom, _inj = dominates(S, T, rho)
            if not dom:
                continue
            hS, hT = fh.get(S), fh.get(T)
            ok = hT <= hS
            if not ok:
                violations += 1
            pairs.append(
                {
                    "S": sorted(S),
                    "T": sorted(T),
                    "h_S": hS,
                    "h_T": hT,
                    "ok": ok,
                }
            )
    report = {
        "rho": rho,
        "pairs": pairs,
        "violations": violations,
        "audit": audit,
    }
    return report


# -- ball flag reciprocity -------------------------------------------------------


def _poly_add_term(
    poly: dict[frozenset[int], int],
    coeff: int,
    plain: frozenset[int],
    shifted: frozenset[int],
) -> None:
    """Add coeff * Π_{i in plain} ν_i * Π_{i in shifted} (ν_i - 1)."""
    shifted_list = sorted(shifted)
    for k in range(len(shifted_list) + 1):
        for U in combinations(shifted_list, k):
            key = plain | frozenset(U)
            sign = (-1) ** (len(shifted_list) - k)
            poly[key] = poly.get(key, 0) + coeff * sign


def ball_flag_reciprocity(
    ear: SimplicialComplex,
    colors: Mapping[str, int],
    d: int,
    boundary: Optional[SimplicialComplex] = None,
) -> bool:
    """The flag reciprocity identity for a rank-colored (d-1)-ball or sphere:
    interior flag f against ν-1 factors (plus the reduced-Euler correction,
    which vanishes for balls) equals complementary flag h against ν factors,
    compared coefficient by coefficient."""
    if ear.is_void or ear.dim != d - 1 or not ear.pure:
        raise NotBall(f"expected a pure complex of dimension {d - 1}")
    full = frozenset(range(1, d + 1))
    for f in ear.facets:
        if frozenset(colors[v] for v in f) != full:
            raise NotBall("facet misses a rank color")
    bd = boundary if boundary is not None else boundary_complex(ear)
    ear_faces = ear.faces()
    bd_faces = bd.faces() if not bd.is_void else {frozenset()}
    interior = [f for f in ear_faces if f and f not in bd_faces]

    def color_set(face: frozenset[str]) -> frozenset[int]:
        cs = frozenset(colors[v] for v in face)
        if len(cs) != len(face):
            raise NotBall("two vertices of one face share a color")
        return cs

    # flag f of the ball and of its interior
    fS: dict[frozenset[int], int] = {}
    for f in ear_faces:
        cs = color_set(f)
        fS[cs] = fS.get(cs, 0) + 1
    f_int: dict[frozenset[int], int] = {}
    for f in interior:
        cs = color_set(f)
        f_int[cs] = f_int.get(cs, 0) + 1
    # flag h of the ball by inclusion-exclusion
    hS: dict[frozenset[int], int] = {}
    for k in range(d + 1):
        for S in combinations(range(1, d + 1), k):
            Sf = frozenset(S)
            hS[Sf] = sum(
                (-1) ** (len(Sf) - len(T)) * fS.get(frozenset(T), 0)
                for j in range(len(S) + 1)
                for T in combinations(S, j)
            )
    lhs: dict[frozenset[int], int] = {}
    rhs: dict[frozenset[int], int] = {}
    for k in range(d + 1):
        for S in combinations(range(1, d + 1), k):
            Sf = frozenset(S)
            comp = full - Sf
            _poly_add_term(lhs, f_int.get(Sf, 0), frozenset(), comp)
            _poly_add_term(rhs, hS.get(full - Sf, 0), comp, frozenset())
    chi = reduced_euler(ear)
    if chi:
        # boundaryless case: the reduced Euler characteristic enters once,
        # against the full product of (ν_i - 1) factors
        _poly_add_term(lhs, chi * (-1) ** (d - 1), frozenset(), full)
    lhs = {k: v for k, v in lhs.items() if v}
    rhs = {k: v for k, v in rhs.items() if v}
    return lhs == rhs


# -- flag counts from the f-vector of a complex -----------------------------------


def flag_f_from_complex_fvector(fK: Sequence[int], S: Iterable[int]) -> int:
    """Chains in the face poset with ranks S, from the f-vector alone:
    b_1 = f_{a_1}; b_i = b_{i-1} * C(a_{i-1}, a_i) along S written as a
    decreasing word."""
    word = sorted(set(S), reverse=True)
    if not word:
        return 1
    if word[0] >= len(fK) or word[-1] < 1:
        raise RangeError(f"ranks {word} out of range for f-vector of length {len(fK)}")
    b = fK[word[0]]
    for prev, cur in zip(word, word[1:]):
        b *= comb(prev, cur)
    return b


def corollary_gap_coefficients(
    S: Iterable[int], T: Iterable[int], d: int
) -> tuple[int, ...]:
    """Coefficients a_0..a_{d+1} with
    h_S(Δ) - h_T(Δ) = Σ_i a_i h_i(K)
    for every d-dimensional complex K, where Δ is the order complex of the
    face poset of K minus the empty face. Exact integer algebra: expand both
    flag h's into flag f's, collapse each flag f to a multiple of one
    f-entry of K via the product rule, then convert f-entries to h-entries
    by the triangular binomial transform.
    """
    Sf, Tf = frozenset(S), frozenset(T)
    if any(not 1 <= i <= d - 1 for i in Sf | Tf):
        raise BadParams(f"rank sets must lie in [1, {d - 1}]")
    gamma: dict[int, int] = {}

    def add_flag_h(R: frozenset[int], sign: int) -> None:
        rl = sorted(R)
        for k in range(len(rl) + 1):
            for U in combinations(rl, k):
                s = sign * (-1) ** (len(R) - len(U))
                if not U:
                    gamma[0] = gamma.get(0, 0) + s
                    continue
                word = sorted(U, reverse=True)
                c = 1
                for prev, cur in zip(word, word[1:]):
                    c *= comb(prev, cur)
                top = word[0]
                gamma[top] = gamma.get(top, 0) + s * c

    add_flag_h(Sf, +1)
    add_flag_h(Tf, -1)
    dprime = d + 1  # K has h_0..h_{d+1}
    a = []
    for i in range(dprime + 1):
        a.append(
            sum(
                g * comb(dprime - i, k - i)
                for k, g in gamma.items()
                if 0 <= k - i <= dprime - i
            )
        )
    return tuple(a)
