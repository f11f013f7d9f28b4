"""Simplicial complexes: shellings, f/h-vectors, exact homology, CM, balls.

Complexes are stored by their facets (maximal faces) over string vertices.
The two degenerate complexes both occur here and are kept distinct: the
void complex (no faces at all, ``facets == ()``) and the empty complex
``{∅}`` (one empty facet), which plays the role of a sphere of dimension -1.

All homology is reduced and over the rationals, computed by fraction-free
integer elimination, so there are no floating-point numbers anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Iterable, Mapping, Optional, Sequence

from .errors import (
    BadParams,
    Inconsistent,
    NotCertified,
    NotPure,
    NotShelling,
    SizeLimit,
)
from .posets import Poset, build_poset, maximal_chains

__all__ = [
    "SimplicialComplex",
    "ShellingOrder",
    "Certificate",
    "build_complex",
    "order_complex",
    "face_poset",
    "face_name",
    "f_h_vectors",
    "verify_shelling",
    "h_from_shelling",
    "search_shelling",
    "boundary_complex",
    "homology_ranks",
    "exact_rank",
    "is_cm_and_2cm",
    "certify_sphere_or_ball",
    "link_of",
    "deletion",
    "skeleton",
    "join_complexes",
    "union_complexes",
    "intersection_complexes",
    "is_subcomplex",
    "complex_to_json",
    "complex_from_json",
]


class SimplicialComplex:
    """An abstract simplicial complex given by its facets."""

    __slots__ = ("vertices", "facets", "dim", "pure")

    def __init__(self, vertices: tuple[str, ...], facets: tuple[frozenset[str], ...]):
        self.vertices = vertices
        self.facets = facets
        self.dim = max((len(f) for f in facets), default=0) - 1
        self.pure = len({len(f) for f in facets}) <= 1

    @property
    def is_void(self) -> bool:
        return not self.facets

    @property
    def is_irrelevant(self) -> bool:
        """True for the one-face complex {∅}."""
        return len(self.facets) == 1 and not next(iter(self.facets))

    def faces(self) -> set[frozenset[str]]:
        """Every face, the empty set included (unless void)."""
        out: set[frozenset[str]] = set()
        for f in self.facets:
            fl = sorted(f)
            for k in range(len(fl) + 1):
                out.update(frozenset(c) for c in combinations(fl, k))
        return out

    def faces_of_dim(self, k: int) -> list[frozenset[str]]:
        return sorted(
            (f for f in self.faces() if len(f) == k + 1),
            key=lambda f: sorted(f),
        )

    def has_face(self, face: Iterable[str]) -> bool:
        s = frozenset(face)
        return any(s <= f for f in self.facets)

    def facet_key(self, f: frozenset[str]) -> tuple[str, ...]:
        return tuple(sorted(f))

    def __eq__(self, other):
        return isinstance(other, SimplicialComplex) and set(self.facets) == set(
            other.facets
        )

    def __hash__(self):
        return hash(frozenset(self.facets))

    def __repr__(self):
        return f"SimplicialComplex(dim {self.dim}, {len(self.facets)} facets)"


def build_complex(facets: Iterable[Iterable[str]]) -> SimplicialComplex:
    """Normalize facets (dedupe, drop faces contained in others)."""
    raw = {frozenset(str(v) for v in f) for f in facets}
    maximal = [f for f in raw if not any(f < g for g in raw)]
    maximal.sort(key=lambda f: (len(f), sorted(f)))
    vertices = tuple(sorted({v for f in maximal for v in f}))
    return SimplicialComplex(vertices, tuple(maximal))


def order_complex(p: Poset) -> SimplicialComplex:
    """Chains of p as faces. The caller strips bounds if it wants to."""
    return build_complex([c.elements for c in maximal_chains(p)])


def face_name(face: Iterable[str]) -> str:
    xs = sorted(face)
    return "+".join(xs) if xs else "0"


def face_poset(
    c: SimplicialComplex, include_empty: bool = False, graded: bool = False
) -> Poset:
    """Faces under inclusion; names via face_name. Rank ends up being
    cardinality (minus one without the empty face). Pass ``graded=True``
    when a rank function is needed downstream; non-pure complexes may then
    be rejected."""
    faces = c.faces()
    if not include_empty:
        faces = {f for f in faces if f}
    names = {f: face_name(f) for f in faces}
    covers = []
    for f in faces:
        for v in sorted(f):
            sub = f - {v}
            if sub in names:
                covers.append((names[sub], names[f]))
    return build_poset(list(names.values()), covers, graded=graded)


def _f_vector(c: SimplicialComplex) -> list[int]:
    """f_i = number of faces of cardinality i, so f_0 = 1 for the empty face."""
    if c.is_void:
        return [0]
    counts = [0] * (c.dim + 2)
    for f in c.faces():
        counts[len(f)] += 1
    return counts


def reduced_euler(c: SimplicialComplex) -> int:
    f = _f_vector(c)
    return sum((-1) ** (i - 1) * f[i] for i in range(len(f)))


def f_h_vectors(c: SimplicialComplex) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """(f, h) with the h-vector from the standard binomial transform.

    The identity h_d = (-1)^(d+1) * reduced Euler characteristic is asserted
    on the way out; it cannot fail, it is here to catch transform bugs.
    """
    if not c.pure:
        raise NotPure("h-vector needs a pure complex")
    if c.is_void:
        raise BadParams("void complex has no h-vector")
    f = _f_vector(c)
    d = c.dim + 1
    h = []
    for k in range(d + 1):
        h.append(sum((-1) ** (k - i) * comb(d - i, k - i) * f[i] for i in range(k + 1)))
    chi = reduced_euler(c)
    if h[d] != (-1) ** (d + 1) * chi:
        raise Inconsistent("h_d does not match the Euler characteristic")
    return tuple(f), tuple(h)


# -- shellings ----------------------------------------------------------------


@dataclass(frozen=True)
class ShellingOrder:
    """A verified shelling: facet order plus restriction faces."""

    complex: SimplicialComplex
    order: tuple[int, ...]
    restrictions: tuple[frozenset[str], ...]

    def facet_sequence(self) -> list[frozenset[str]]:
        return [self.complex.facets[i] for i in self.order]


def verify_shelling(c: SimplicialComplex, order: Sequence[int]) -> ShellingOrder:
    """Check the pairwise shelling criterion and compute restriction faces.

    ``order`` is a permutation of facet indices. For every i < j some k < j
    must satisfy F_i ∩ F_j ⊆ F_k ∩ F_j with |F_k ∩ F_j| = |F_j| - 1.
    r(F_j) collects the vertices x with F_j - x inside the earlier union.
    """
    if not c.pure:
        raise NotPure("shellings are defined here for pure complexes only")
    if c.is_void:
        raise BadParams("void complex cannot be shelled")
    n = len(c.facets)
    if sorted(order) != list(range(n)):
        raise BadParams("order must be a permutation of all facet indices")
    seq = [c.facets[i] for i in order]
    for j in range(1, n):
        fj = seq[j]
        for i in range(j):
            inter = seq[i] & fj
            ok = False
            for k in range(j):
                ik = seq[k] & fj
                if inter <= ik and len(ik) == len(fj) - 1:
                    ok = True
                    break
            if not ok:
                raise NotShelling(
                    f"facets {sorted(seq[i])} and {sorted(fj)} violate the "
                    "pairwise criterion",
                    i=order[i],
                    j=order[j],
                )
    restrictions = [frozenset()]
    for j in range(1, n):
        fj = seq[j]
        earlier = seq[:j]
        r = frozenset(
            x for x in fj if any(fj - {x} <= g for g in earlier)
        )
        restrictions.append(r)
    return ShellingOrder(c, tuple(order), tuple(restrictions))


def h_from_shelling(s: ShellingOrder) -> tuple[int, ...]:
    """Histogram of restriction-face sizes."""
    d = s.complex.dim + 1
    h = [0] * (d + 1)
    for r in s.restrictions:
        h[len(r)] += 1
    return tuple(h)


def search_shelling(
    c: SimplicialComplex, cap: int = 16
) -> Optional[ShellingOrder]:
    """Backtracking shelling search (None when there is none).

    Exhaustive, so refuses complexes with more than ``cap`` facets.
    """
    if not c.pure or c.is_void:
        return None
    n = len(c.facets)
    if n > cap:
        raise SizeLimit(f"shelling search capped at {cap} facets ({n} given)")
    facets = list(c.facets)

    def extends(prefix: list[int], j: int) -> bool:
        fj = facets[j]
        for i in prefix:
            inter = facets[i] & fj
            if not any(
                inter <= (facets[k] & fj) and len(facets[k] & fj) == len(fj) - 1
                for k in prefix
            ):
                return False
        return True

    prefix: list[int] = []
    used = [False] * n

    def rec() -> bool:
        if len(prefix) == n:
            return True
        for j in range(n):
            if not used[j] and extends(prefix, j):
                used[j] = True
                prefix.append(j)
                if rec():
                    return True
                prefix.pop()
                used[j] = False
        return False

    if not rec():
        return None
    return verify_shelling(c, prefix)


# -- boundary, links, constructions -------------------------------------------


def boundary_complex(c: SimplicialComplex) -> SimplicialComplex:
    """Complex generated by the codimension-1 faces lying in exactly one facet."""
    if not c.pure:
        raise NotPure("boundary of a non-pure complex is not defined here")
    if c.is_void:
        return c
    counts: dict[frozenset[str], int] = {}
    for f in c.facets:
        for v in f:
            ridge = f - {v}
            counts[ridge] = counts.get(ridge, 0) + 1
    ridges = [r for r, k in counts.items() if k == 1]
    if not ridges:
        return SimplicialComplex((), ())
    return build_complex(ridges)


def link_of(c: SimplicialComplex, face: Iterable[str]) -> SimplicialComplex:
    s = frozenset(face)
    facets = [f - s for f in c.facets if s <= f]
    if not facets:
        return SimplicialComplex((), ())
    return build_complex(facets)


def deletion(c: SimplicialComplex, vertex: str) -> SimplicialComplex:
    facets = [f for f in c.facets if vertex not in f]
    kept = [f - {vertex} for f in c.facets if vertex in f]
    return build_complex(facets + kept)


def skeleton(c: SimplicialComplex, k: int) -> SimplicialComplex:
    """The k-skeleton (faces of dimension at most k)."""
    if c.is_void or k < -1:
        return SimplicialComplex((), ())
    faces = [f for f in c.faces() if len(f) <= k + 1]
    return build_complex(faces)


def join_complexes(a: SimplicialComplex, b: SimplicialComplex) -> SimplicialComplex:
    """Simplicial join; vertex sets must be disjoint."""
    if set(a.vertices) & set(b.vertices):
        raise BadParams("join needs disjoint vertex sets")
    if a.is_void or b.is_void:
        return SimplicialComplex((), ())
    return build_complex([f | g for f in a.facets for g in b.facets])


def union_complexes(*cs: SimplicialComplex) -> SimplicialComplex:
    facets = [f for c in cs for f in c.facets]
    if not facets:
        return SimplicialComplex((), ())
    return build_complex(facets)


def intersection_complexes(a: SimplicialComplex, b: SimplicialComplex) -> SimplicialComplex:
    """Faces common to both; generated by pairwise facet intersections."""
    if a.is_void or b.is_void:
        return SimplicialComplex((), ())
    pieces = {f & g for f in a.facets for g in b.facets}
    return build_complex(pieces)


def is_subcomplex(small: SimplicialComplex, big: SimplicialComplex) -> bool:
    return all(big.has_face(f) for f in small.facets)


# -- exact homology ------------------------------------------------------------


def exact_rank(rows: list[dict[int, int]]) -> int:
    """Rank of an integer sparse matrix. Fraction-free elimination with gcd
    normalization; exact, no floats."""
    from math import gcd

    work = [dict(r) for r in rows if r]
    rank = 0
    while work:
        # pick the sparsest row, pivot on its smallest column
        work.sort(key=len)
        pivot = work.pop(0)
        rank += 1
        col = min(pivot)
        pval = pivot[col]
        nxt = []
        for r in work:
            v = r.get(col)
            if v is None:
                nxt.append(r)
                continue
            merged: dict[int, int] = {}
            for k, x in r.items():
                merged[k] = pval * x
            for k, x in pivot.items():
                merged[k] = merged.get(k, 0) - v * x
            merged = {k: x for k, x in merged.items() if x}
            if merged:
                g = 0
                for x in merged.values():
                    g = gcd(g, x)
                if g > 1:
                    merged = {k: x // g for k, x in merged.items()}
                nxt.append(merged)
        work = nxt
    return rank


def _boundary_matrix(
    upper: list[frozenset[str]], lower_index: dict[frozenset[str], int]
) -> list[dict[int, int]]:
    rows = []
    for f in upper:
        fl = sorted(f)
        row: dict[int, int] = {}
        for i, v in enumerate(fl):
            sub = frozenset(fl) - {v}
            row[lower_index[sub]] = (-1) ** i
        rows.append(row)
    return rows


def homology_ranks(c: SimplicialComplex) -> tuple[int, ...]:
    """Reduced Betti numbers (β̃_0, …, β̃_dim) over the rationals."""
    if c.is_void or c.is_irrelevant:
        return ()
    by_dim: dict[int, list[frozenset[str]]] = {}
    for f in c.faces():
        by_dim.setdefault(len(f) - 1, []).append(f)
    for k in by_dim:
        by_dim[k].sort(key=lambda f: sorted(f))
    d = c.dim
    # rank of ∂_k : C_k -> C_{k-1}, with C_{-1} the empty-face line
    ranks: dict[int, int] = {}
    for k in range(0, d + 1):
        lower = by_dim.get(k - 1, [])
        upper = by_dim.get(k, [])
        if not upper:
            ranks[k] = 0
            continue
        lower_index = {f: i for i, f in enumerate(lower)}
        ranks[k] = exact_rank(_boundary_matrix(upper, lower_index))
    ranks[d + 1] = 0
    betti = []
    for k in range(0, d + 1):
        dim_ck = len(by_dim.get(k, []))
        betti.append(dim_ck - ranks[k] - ranks[k + 1])
    return tuple(betti)


def is_cm_and_2cm(c: SimplicialComplex) -> tuple[bool, bool]:
    """Cohen-Macaulayness over the rationals by link homology, and the
    doubly-CM refinement (vertex deletions keep dimension and stay CM)."""
    cm = _is_cm(c)
    if not cm:
        return False, False
    two = True
    for v in c.vertices:
        dv = deletion(c, v)
        if dv.is_void or dv.dim != c.dim or not _is_cm(dv):
            two = False
            break
    return True, two


def _is_cm(c: SimplicialComplex) -> bool:
    if c.is_void:
        return False
    if c.is_irrelevant:
        return True
    for f in sorted(c.faces(), key=lambda f: (len(f), sorted(f))):
        lk = link_of(c, f)
        if lk.is_void:
            continue
        h = homology_ranks(lk)
        for i in range(len(h) - 1):
            if h[i] != 0:
                return False
        # links in a CM complex must have the right dimension too
        if lk.dim != c.dim - len(f):
            return False
    return True


# -- sphere / ball certificates -------------------------------------------------


@dataclass(frozen=True)
class Certificate:
    """Evidence that a complex is a sphere or a ball.

    ``kind`` is "SPHERE" or "BALL". ``criteria`` lists the checks that fired,
    in order. Ambient polytopality of reference spheres is an assumption
    recorded in the criteria, not something this code proves.
    """

    kind: str
    criteria: tuple[str, ...]
    betti: tuple[int, ...] = ()
    shelling: Optional[ShellingOrder] = None
    boundary: Optional["Certificate"] = None

    def to_json(self) -> dict:
        out: dict = {"kind": self.kind, "criteria": list(self.criteria)}
        out["betti"] = list(self.betti)
        if self.shelling is not None:
            out["shelling"] = list(self.shelling.order)
            out["restrictions"] = [
                sorted(r) for r in self.shelling.restrictions
            ]
        if self.boundary is not None:
            out["boundary"] = self.boundary.to_json()
        return out


def _is_closed_pseudomanifold(c: SimplicialComplex) -> bool:
    if c.is_void or not c.pure:
        return False
    if c.dim == 0:
        return len(c.facets) == 2
    counts: dict[frozenset[str], int] = {}
    for f in c.facets:
        for v in f:
            ridge = f - {v}
            counts[ridge] = counts.get(ridge, 0) + 1
    if any(k != 2 for k in counts.values()):
        return False
    # strong connectivity through ridges
    n = len(c.facets)
    seen = {0}
    stack = [0]
    while stack:
        i = stack.pop()
        for j in range(n):
            if j not in seen and len(c.facets[i] & c.facets[j]) == len(c.facets[i]) - 1:
                seen.add(j)
                stack.append(j)
    return len(seen) == n


def certify_sphere_or_ball(
    c: SimplicialComplex,
    shelling: Optional[Sequence[int]] = None,
    *,
    facet_cap: int = 16,
) -> Certificate:
    """Certify SPHERE or BALL, else raise NotCertified.

    SPHERE: closed pseudomanifold with reduced homology (0,…,0,1); in
    dimension 0, exactly two points; the {∅} complex is the (-1)-sphere.
    BALL: shellable (order given or found by bounded search), homology all
    zero, boundary certified SPHERE; in dimension 0, one point.
    """
    if c.is_void:
        raise NotCertified("void complex")
    if c.is_irrelevant:
        return Certificate("SPHERE", ("empty-complex-is-minus-one-sphere",))
    if not c.pure:
        raise NotCertified("not pure")
    betti = homology_ranks(c)
    sphere_betti = tuple([0] * c.dim + [1])
    if betti == sphere_betti and _is_closed_pseudomanifold(c):
        return Certificate(
            "SPHERE", ("closed-pseudomanifold", "homology-of-sphere"), betti
        )
    if any(betti):
        raise NotCertified(f"homology {betti} fits neither sphere nor ball")
    if c.dim == 0:
        if len(c.facets) == 1:
            return Certificate("BALL", ("single-point",), betti)
        raise NotCertified("several points form neither a sphere nor a ball")
    if shelling is not None:
        sh = verify_shelling(c, shelling)
        how = "shelling-given"
    else:
        sh = search_shelling(c, cap=facet_cap)
        how = "shelling-found"
        if sh is None:
            raise NotCertified("no shelling found")
    bd = boundary_complex(c)
    if bd.is_void:
        raise NotCertified("acyclic closed complex is not a ball")
    bcert = certify_sphere_or_ball(bd, facet_cap=facet_cap)
    if bcert.kind != "SPHERE":
        raise NotCertified("boundary did not certify as a sphere")
    return Certificate(
        "BALL",
        (how, "homology-trivial", "boundary-is-sphere"),
        betti,
        shelling=sh,
        boundary=bcert,
    )


# -- serialization ---------------------------------------------------------------


def complex_to_json(c: SimplicialComplex) -> dict:
    return {
        "schema": "earlab.complex/1",
        "vertices": list(c.vertices),
        "facets": [sorted(f) for f in c.facets],
    }


def complex_from_json(data: Mapping) -> SimplicialComplex:
    try:
        facets = [list(f) for f in data["facets"]]
        declared = [str(v) for v in data.get("vertices", [])]
    except (KeyError, TypeError) as exc:
        raise BadParams(f"malformed complex JSON: {exc}") from exc
    c = build_complex(facets)
    if declared and set(declared) != set(c.vertices):
        extra = sorted(set(declared) - set(c.vertices))
        missing = sorted(set(c.vertices) - set(declared))
        raise Inconsistent(
            f"vertex list disagrees with facets (unused {extra}, undeclared {missing})"
        )
    return c
