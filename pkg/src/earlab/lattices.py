"""Lattice operations and built-in families (Boolean, partition, flats).

A Lattice wraps a bounded Poset and serves join/meet. Small lattices (at
most EAGER_LIMIT elements) get full precomputed tables, which doubles as a
proof that every pair really has a least upper / greatest lower bound;
larger ones compute lazily with memoization so partition lattices up to
n = 8 stay usable.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, Mapping, Optional, Sequence

from .errors import (
    BadParams,
    Inconsistent,
    NotGeometric,
    NotMChain,
    SizeLimit,
)
from .posets import (
    Poset,
    build_poset,
    induced_subposet,
    maximal_chains,
    poset_from_json,
    poset_to_json,
)

__all__ = [
    "Lattice",
    "boolean_lattice",
    "partition_lattice",
    "sublattice_generated",
    "closure_under_ops",
    "is_distributive",
    "is_mchain",
    "check_mchain",
    "is_geometric",
    "check_geometric",
    "lattice_to_json",
    "lattice_from_json",
    "EAGER_LIMIT",
]

EAGER_LIMIT = 300


class Lattice:
    """A finite lattice: bounded poset plus join/meet.

    ``mchain`` is an optional distinguished maximal chain carried along for
    the supersolvable constructions; it is data, not something the lattice
    verifies on its own (see check_mchain).
    """

    __slots__ = ("poset", "mchain", "_join", "_meet", "_eager")

    def __init__(self, poset: Poset, mchain: Optional[Sequence[str]] = None):
        if not poset.bounded:
            raise Inconsistent("a lattice needs a unique bottom and top")
        self.poset = poset
        self.mchain = tuple(mchain) if mchain is not None else None
        self._join: dict[tuple[int, int], int] = {}
        self._meet: dict[tuple[int, int], int] = {}
        self._eager = poset.n <= EAGER_LIMIT
        if self._eager:
            for i in range(poset.n):
                for j in range(i + 1, poset.n):
                    self.join_i(i, j)
                    self.meet_i(i, j)

    # -- operations --------------------------------------------------------

    def join_i(self, i: int, j: int) -> int:
        if i == j:
            return i
        if i > j:
            i, j = j, i
        key = (i, j)
        got = self._join.get(key)
        if got is None:
            got = self._bound(i, j, upper=True)
            self._join[key] = got
        return got

    def meet_i(self, i: int, j: int) -> int:
        if i == j:
            return i
        if i > j:
            i, j = j, i
        key = (i, j)
        got = self._meet.get(key)
        if got is None:
            got = self._bound(i, j, upper=False)
            self._meet[key] = got
        return got

    def _bound(self, i: int, j: int, upper: bool) -> int:
        p = self.poset
        if upper:
            mask = p.up_mask(i) & p.up_mask(j)
        else:
            mask = p.down_mask(i) & p.down_mask(j)
        if mask == 0:
            raise Inconsistent(
                f"{p.elements[i]!r}, {p.elements[j]!r} have no common "
                f"{'upper' if upper else 'lower'} bound"
            )
        # the extremal element of the bound set, if unique
        found = -1
        m = mask
        k = 0
        while m:
            if m & 1:
                inner = (p.down_mask(k) if upper else p.up_mask(k)) & mask
                if inner == (1 << k):
                    if found >= 0:
                        raise Inconsistent(
                            f"{p.elements[i]!r}, {p.elements[j]!r} have no unique "
                            f"{'least upper' if upper else 'greatest lower'} bound"
                        )
                    found = k
            m >>= 1
            k += 1
        return found

    def join(self, x: str, y: str) -> str:
        p = self.poset
        return p.elements[self.join_i(p.index(x), p.index(y))]

    def meet(self, x: str, y: str) -> str:
        p = self.poset
        return p.elements[self.meet_i(p.index(x), p.index(y))]

    def join_of(self, names: Iterable[str]) -> str:
        """Join of a collection (bottom for the empty collection)."""
        p = self.poset
        acc = p._bottom
        for x in names:
            acc = self.join_i(acc, p.index(x))
        return p.elements[acc]

    def atoms(self) -> tuple[str, ...]:
        p = self.poset
        return tuple(p.elements[i] for i in p.covers_up_of(p._bottom))

    def coatoms(self) -> tuple[str, ...]:
        p = self.poset
        return tuple(p.elements[i] for i in p.covers_down_of(p._top))

    @property
    def bottom(self) -> str:
        return self.poset.bottom

    @property
    def top(self) -> str:
        return self.poset.top

    @property
    def rank(self) -> int:
        return self.poset.rank_of(self.poset.top)

    def __repr__(self):
        return f"Lattice({self.poset.n} elements, rank {self.rank})"


# -- families --------------------------------------------------------------


def subset_name(s: Iterable[int]) -> str:
    """Canonical name for a subset of [r]: sorted digits, '0' when empty."""
    digits = sorted(s)
    return "".join(str(d) for d in digits) if digits else "0"


def subset_of_name(name: str) -> frozenset[int]:
    return frozenset() if name == "0" else frozenset(int(ch) for ch in name)


def boolean_lattice(r: int) -> Lattice:
    """All subsets of [r] ordered by inclusion."""
    if r < 1:
        raise BadParams("rank must be at least 1")
    if r > 9:
        raise SizeLimit("boolean lattice supported up to rank 9")
    elements = []
    covers = []
    universe = list(range(1, r + 1))
    for k in range(r + 1):
        for s in combinations(universe, k):
            elements.append(subset_name(s))
            for extra in universe:
                if extra not in s:
                    covers.append((subset_name(s), subset_name(set(s) | {extra})))
    mchain = [subset_name(range(1, k + 1)) for k in range(r + 1)]
    return Lattice(build_poset(elements, covers), mchain=mchain)


def partition_name(blocks: Iterable[Iterable[int]]) -> str:
    bs = sorted(tuple(sorted(b)) for b in blocks)
    return "/".join("".join(str(x) for x in b) for b in bs)


def partition_blocks(name: str) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(int(ch) for ch in part) for part in name.split("/"))


def _set_partitions(n: int):
    """All set partitions of [n], via restricted growth strings."""

    def rec(i, blocks):
        if i > n:
            yield [tuple(b) for b in blocks]
            return
        for b in blocks:
            b.append(i)
            yield from rec(i + 1, blocks)
            b.pop()
        blocks.append([i])
        yield from rec(i + 1, blocks)
        blocks.pop()

    yield from rec(1, [])


def partition_lattice(n: int) -> Lattice:
    """Set partitions of [n] ordered by refinement (finer below coarser)."""
    if not 2 <= n <= 8:
        raise SizeLimit("partition lattice supported for 2 <= n <= 8")
    elements = []
    covers = []
    for blocks in _set_partitions(n):
        name = partition_name(blocks)
        elements.append(name)
        # covers above: merge any two blocks
        for a in range(len(blocks)):
            for b in range(a + 1, len(blocks)):
                merged = [blk for k, blk in enumerate(blocks) if k not in (a, b)]
                merged.append(tuple(sorted(blocks[a] + blocks[b])))
                covers.append((name, partition_name(merged)))
    mchain = [
        partition_name([tuple(range(1, k + 1))] + [(j,) for j in range(k + 1, n + 1)])
        for k in range(1, n + 1)
    ]
    return Lattice(build_poset(elements, covers), mchain=mchain)


# -- sublattices and structure tests ----------------------------------------


def closure_under_ops(lat: Lattice, seed: Iterable[str]) -> list[str]:
    """Smallest join- and meet-closed subset containing seed, 0-hat, 1-hat.

    Returned sorted by element name.
    """
    p = lat.poset
    current = {p.index(x) for x in seed}
    current.add(p._bottom)
    current.add(p._top)
    frontier = list(current)
    while frontier:
        new = set()
        members = list(current)
        for i in frontier:
            for j in members:
                for k in (lat.join_i(i, j), lat.meet_i(i, j)):
                    if k not in current:
                        new.add(k)
        current |= new
        frontier = list(new)
    return sorted(p.elements[i] for i in current)


def sublattice_generated(lat: Lattice, chains: Iterable[Iterable[str]]) -> Lattice:
    """The sublattice generated by the given chains (plus the bounds)."""
    seed = [x for c in chains for x in c]
    names = closure_under_ops(lat, seed)
    return Lattice(induced_subposet(lat.poset, names))


def _distributive_on(lat: Lattice, names: Sequence[str]) -> Optional[tuple[str, str, str]]:
    """First triple violating x ∧ (y ∨ z) = (x ∧ y) ∨ (x ∧ z), else None."""
    idx = [lat.poset.index(x) for x in names]
    for i in idx:
        for j in idx:
            for k in idx:
                lhs = lat.meet_i(i, lat.join_i(j, k))
                rhs = lat.join_i(lat.meet_i(i, j), lat.meet_i(i, k))
                if lhs != rhs:
                    e = lat.poset.elements
                    return (e[i], e[j], e[k])
    return None


def is_distributive(lat: Lattice) -> bool:
    """Brute-force distributivity over all triples."""
    return _distributive_on(lat, lat.poset.elements) is None


def check_mchain(lat: Lattice, chain: Sequence[str]) -> None:
    """Verify that ``chain`` is an M-chain: a maximal chain whose pairwise
    sublattice with every maximal chain is distributive.

    Raises NotMChain with a witness on failure. Distributivity of each
    generated sublattice is checked only on that sublattice, which suffices:
    sublattices of distributive lattices are distributive, so checking the
    maximal chains covers all chains.
    """
    p = lat.poset
    c = list(chain)
    if not c or c[0] != p.bottom or c[-1] != p.top:
        raise NotMChain("candidate chain must run from bottom to top")
    for a, b in zip(c, c[1:]):
        if p.index(b) not in p.covers_up_of(p.index(a)):
            raise NotMChain(f"candidate chain is not saturated at {a!r} < {b!r}")
    for d in maximal_chains(p):
        names = closure_under_ops(lat, list(c) + list(d.elements))
        bad = _distributive_on(lat, names)
        if bad is not None:
            raise NotMChain(
                "sublattice generated with chain "
                f"{'<'.join(d.elements)} is not distributive "
                f"(witness triple {bad})"
            )


def is_mchain(lat: Lattice, chain: Sequence[str]) -> bool:
    try:
        check_mchain(lat, chain)
    except NotMChain:
        return False
    return True


def check_geometric(lat: Lattice) -> None:
    """Geometric = graded + atomistic + semimodular; raise NotGeometric."""
    p = lat.poset
    if not p.graded:
        raise NotGeometric("lattice is not graded")
    atom_idx = [p.index(a) for a in lat.atoms()]
    for i, x in enumerate(p.elements):
        below = [a for a in atom_idx if p.leq_i(a, i)]
        if lat.join_of(p.elements[a] for a in below) != x:
            raise NotGeometric(f"{x!r} is not a join of atoms")
    for i in range(p.n):
        for j in range(i + 1, p.n):
            lhs = p.ranks[i] + p.ranks[j]
            rhs = p.ranks[lat.join_i(i, j)] + p.ranks[lat.meet_i(i, j)]
            if lhs < rhs:
                raise NotGeometric(
                    f"rank submodularity fails at {p.elements[i]!r}, {p.elements[j]!r}"
                )


def is_geometric(lat: Lattice) -> bool:
    try:
        check_geometric(lat)
    except NotGeometric:
        return False
    return True


# -- serialization -----------------------------------------------------------


def lattice_to_json(lat: Lattice, include_tables: bool = False) -> dict:
    out = poset_to_json(lat.poset)
    out["schema"] = "earlab.lattice/1"
    if lat.mchain is not None:
        out["mchain"] = list(lat.mchain)
    if include_tables:
        p = lat.poset
        joins = {}
        meets = {}
        for i in range(p.n):
            for j in range(i + 1, p.n):
                key = f"{p.elements[i]}|{p.elements[j]}"
                joins[key] = p.elements[lat.join_i(i, j)]
                meets[key] = p.elements[lat.meet_i(i, j)]
        out["joins"] = joins
        out["meets"] = meets
    return out


def lattice_from_json(data: Mapping) -> Lattice:
    p = poset_from_json(data)
    mchain = data.get("mchain")
    lat = Lattice(p, mchain=mchain)
    for field, op in (("joins", lat.join), ("meets", lat.meet)):
        table = data.get(field)
        if table is None:
            continue
        for key, val in table.items():
            parts = key.split("|")
            if len(parts) != 2:
                raise BadParams(f"bad {field} key {key!r}")
            if op(parts[0], parts[1]) != val:
                raise Inconsistent(
                    f"stored {field} entry {key!r} -> {val!r} disagrees with the order"
                )
    return lat
