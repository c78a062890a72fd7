"""Matroids on the ground set 1..n, stored by their basis family.

Subsets are handled internally as bitmasks (element ``i`` is bit ``i - 1``);
public functions accept any iterable of element labels and return sorted
tuples.  Every constructor reduces its input to a validated basis family.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import GuardExceeded, MatroidError

#: largest ground set for which 2^n tables are built
SUBSET_GUARD = 20
#: largest ground set for exact canonical labelling
CANONICAL_GUARD = 10


def to_mask(s: Iterable[int]) -> int:
    mask = 0
    for e in s:
        mask |= 1 << (e - 1)
    return mask


def to_set(mask: int) -> tuple[int, ...]:
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def _check_subset(n: int, s: Iterable[int]) -> int:
    s = tuple(s)
    for e in s:
        if not isinstance(e, (int, np.integer)) or not 1 <= e <= n:
            raise MatroidError(f"element {e!r} outside ground set 1..{n}")
    return to_mask(s)


@dataclass(frozen=True)
class Matroid:
    """A matroid given by its bases; construct with :func:`from_bases` and friends."""

    n: int
    r: int
    basis_masks: tuple[int, ...]

    @property
    def ground_mask(self) -> int:
        return (1 << self.n) - 1

    @property
    def bases(self) -> tuple[tuple[int, ...], ...]:
        return tuple(to_set(b) for b in self.basis_masks)

    @property
    def num_bases(self) -> int:
        return len(self.basis_masks)

    @cached_property
    def basis_set(self) -> frozenset[int]:
        return frozenset(self.basis_masks)

    @cached_property
    def rank_table(self) -> list[int]:
        """rank of every subset, indexed by bitmask."""
        if self.n > SUBSET_GUARD:
            raise GuardExceeded(f"n={self.n} exceeds subset guard {SUBSET_GUARD}")
        size = 1 << self.n
        masks = np.arange(size, dtype=np.int64)
        pc = np.zeros(size, dtype=np.int8)
        for i in range(self.n):
            pc += ((masks >> i) & 1).astype(np.int8)
        ranks = np.zeros(size, dtype=np.int8)
        for b in self.basis_masks:
            np.maximum(ranks, pc[masks & b], out=ranks)
        return ranks.tolist()

    def rank_of_mask(self, mask: int) -> int:
        if self.n <= SUBSET_GUARD:
            return self.rank_table[mask]
        return max(popcount(mask & b) for b in self.basis_masks)

    def closure_of_mask(self, mask: int) -> int:
        rk = self.rank_of_mask(mask)
        out = mask
        for i in range(self.n):
            bit = 1 << i
            if not mask & bit and self.rank_of_mask(mask | bit) == rk:
                out |= bit
        return out

    @cached_property
    def loops_mask(self) -> int:
        used = 0
        for b in self.basis_masks:
            used |= b
        return self.ground_mask & ~used

    @cached_property
    def coloops_mask(self) -> int:
        common = self.ground_mask
        for b in self.basis_masks:
            common &= b
        return common

    @cached_property
    def circuit_masks(self) -> tuple[int, ...]:
        """Minimal dependent sets, by a sweep over all subsets."""
        rt = self.rank_table
        out = []
        for mask in range(1, 1 << self.n):
            k = popcount(mask)
            if rt[mask] != k - 1:
                continue
            if all(rt[mask & ~(1 << i)] == k - 1 for i in range(self.n) if mask >> i & 1):
                out.append(mask)
        return tuple(sorted(out, key=lambda m: (popcount(m), to_set(m))))

    @property
    def circuits(self) -> tuple[tuple[int, ...], ...]:
        return tuple(to_set(c) for c in self.circuit_masks)

    def is_independent(self, s: Iterable[int]) -> bool:
        mask = to_mask(s)
        return self.rank_of_mask(mask) == popcount(mask)

    def __repr__(self):
        return f"Matroid(n={self.n}, r={self.r}, bases={len(self.basis_masks)})"


@dataclass(frozen=True)
class FlatEntry:
    flat: tuple[int, ...]
    rank: int
    mobius: int


@dataclass(frozen=True)
class FlatLattice:
    flats: tuple[FlatEntry, ...]

    def mobius(self, flat: Iterable[int]) -> int:
        key = tuple(sorted(flat))
        for entry in self.flats:
            if entry.flat == key:
                return entry.mobius
        raise KeyError(f"{key} is not a flat")

    def of_rank(self, k: int) -> list[FlatEntry]:
        return [f for f in self.flats if f.rank == k]

    @property
    def top(self) -> FlatEntry:
        return self.flats[-1]

    def __len__(self):
        return len(self.flats)

    def __iter__(self):
        return iter(self.flats)


@dataclass(frozen=True)
class GraphInput:
    """A multigraph on vertices 1..num_vertices; edge ``i`` becomes matroid element ``i``."""

    num_vertices: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(tuple(e) for e in self.edges))
        for u, v in self.edges:
            if not (1 <= u <= self.num_vertices and 1 <= v <= self.num_vertices):
                raise MatroidError(f"edge ({u}, {v}) has an endpoint outside 1..{self.num_vertices}")

    def components(self, vertices: Iterable[int] | None = None) -> int:
        verts = list(range(1, self.num_vertices + 1)) if vertices is None else list(vertices)
        vset = set(verts)
        parent = {v: v for v in verts}

        def find(v):
            while parent[v] != v:
                parent[v] = parent[parent[v]]
                v = parent[v]
            return v

        count = len(verts)
        for u, v in self.edges:
            if u in vset and v in vset:
                ru, rv = find(u), find(v)
                if ru != rv:
                    parent[ru] = rv
                    count -= 1
        return count

    def induced(self, vertices: Iterable[int]) -> "GraphInput":
        """Induced subgraph, vertices relabelled 1..k in increasing order."""
        verts = sorted(vertices)
        index = {v: i + 1 for i, v in enumerate(verts)}
        edges = tuple((index[u], index[v]) for u, v in self.edges if u in index and v in index)
        return GraphInput(len(verts), edges)


# -- constructors -------------------------------------------------------------


def _sorted_masks(masks: Iterable[int]) -> tuple[int, ...]:
    return tuple(sorted(set(masks), key=to_set))


def _exchange_witness(masks: Sequence[int], n: int):
    """First (B1, B2, x) violating basis exchange, or None."""
    basis_set = set(masks)
    # swaps[B][x] = elements y outside B with B - x + y a basis
    swaps = {}
    for b in masks:
        row = {}
        for i in range(n):
            xbit = 1 << i
            if not b & xbit:
                continue
            ys = 0
            rest = b & ~xbit
            for j in range(n):
                ybit = 1 << j
                if not b & ybit and (rest | ybit) in basis_set:
                    ys |= ybit
            row[xbit] = ys
        swaps[b] = row
    for b1 in masks:
        row = swaps[b1]
        for b2 in masks:
            if b1 == b2:
                continue
            target = b2 & ~b1
            diff = b1 & ~b2
            while diff:
                xbit = diff & -diff
                diff ^= xbit
                if not row[xbit] & target:
                    return b1, b2, xbit.bit_length()
    return None


def from_bases(n: int, bases: Iterable[Iterable[int]], *, validate: bool = True) -> Matroid:
    """Matroid on 1..n with the given bases.

    Raises MatroidError on unequal basis sizes or a basis-exchange failure,
    naming the offending pair.
    """
    if n < 0:
        raise MatroidError("n must be non-negative")
    masks = _sorted_masks(_check_subset(n, b) for b in bases)
    if not masks:
        raise MatroidError("a matroid needs at least one basis")
    sizes = {popcount(b) for b in masks}
    if len(sizes) != 1:
        small = min(masks, key=popcount)
        large = max(masks, key=popcount)
        raise MatroidError(
            f"bases have unequal cardinalities: {list(to_set(small))} and {list(to_set(large))}"
        )
    if validate:
        witness = _exchange_witness(masks, n)
        if witness is not None:
            b1, b2, x = witness
            raise MatroidError(
                f"basis exchange fails for B1={list(to_set(b1))}, B2={list(to_set(b2))}, x={x}"
            )
    return Matroid(n, sizes.pop(), masks)


def _from_masks(n: int, masks: Iterable[int]) -> Matroid:
    masks = _sorted_masks(masks)
    return Matroid(n, popcount(masks[0]), masks)


def uniform(r: int, n: int) -> Matroid:
    if not 0 <= r <= n:
        raise MatroidError(f"uniform matroid needs 0 <= r <= n, got r={r}, n={n}")
    return _from_masks(n, (to_mask(c) for c in itertools.combinations(range(1, n + 1), r)))


def from_circuits(
    n: int, circuits: Iterable[Iterable[int]], *, rank: int | None = None, guard: int = SUBSET_GUARD
) -> Matroid:
    """Matroid whose circuits are generated by ``circuits`` under circuit elimination.

    With ``rank`` given, every (rank+1)-subset is declared dependent as well,
    which is how "the rank-r matroid with these small circuits" is meant.
    """
    if n > guard:
        raise GuardExceeded(f"n={n} exceeds subset guard {guard}")
    dependent = {_check_subset(n, c) for c in circuits}
    if 0 in dependent:
        raise MatroidError("the empty set cannot be a circuit")
    if rank is not None:
        if not 0 <= rank <= n:
            raise MatroidError(f"rank {rank} out of range")
        dependent.update(to_mask(c) for c in itertools.combinations(range(1, n + 1), rank + 1))

    def minimal(family):
        fam = sorted(family, key=popcount)
        out = []
        for d in fam:
            if not any(c & d == c for c in out):
                out.append(d)
        return out

    circ = minimal(dependent)
    changed = True
    while changed:
        changed = False
        for c1, c2 in itertools.combinations(list(circ), 2):
            common = c1 & c2
            while common:
                ebit = common & -common
                common ^= ebit
                s = (c1 | c2) & ~ebit
                if not any(c & s == c for c in circ):
                    circ = minimal(circ + [s])
                    changed = True
            if changed:
                break

    independent_max = []
    size = 1 << n
    independent = [not any(c & m == c for c in circ) for m in range(size)]
    for m in range(size):
        if not independent[m]:
            continue
        if all(m >> i & 1 or not independent[m | 1 << i] for i in range(n)):
            independent_max.append(m)
    sizes = {popcount(b) for b in independent_max}
    if len(sizes) != 1:
        raise MatroidError(
            "circuit family does not define a matroid: maximal independent sets of sizes "
            f"{sorted(sizes)}"
        )
    witness = _exchange_witness(independent_max, n)
    if witness is not None:
        b1, b2, x = witness
        raise MatroidError(
            f"circuit family does not define a matroid: exchange fails for "
            f"{list(to_set(b1))}, {list(to_set(b2))}, x={x}"
        )
    return _from_masks(n, independent_max)


def from_graph(g: GraphInput) -> Matroid:
    """Cycle matroid: bases are the maximal spanning forests."""
    n = len(g.edges)
    rank = g.num_vertices - g.components()
    bases = []
    for combo in itertools.combinations(range(n), rank):
        parent = list(range(g.num_vertices + 1))

        def find(v):
            while parent[v] != v:
                parent[v] = parent[parent[v]]
                v = parent[v]
            return v

        for idx in combo:
            u, v = g.edges[idx]
            ru, rv = find(u), find(v)
            if ru == rv:
                break
            parent[ru] = rv
        else:
            bases.append(sum(1 << i for i in combo))
    return _from_masks(n, bases)


def paving_matroid(n: int, r: int, copoints: Iterable[Iterable[int]]) -> Matroid:
    """Rank-r paving matroid from its non-trivial copoints (hyperplanes of size >= r)."""
    hyper = [_check_subset(n, c) for c in copoints]
    for h in hyper:
        if popcount(h) < r:
            raise MatroidError(f"non-trivial copoint {list(to_set(h))} has fewer than {r} elements")
    for h1, h2 in itertools.combinations(hyper, 2):
        if popcount(h1 & h2) >= r - 1:
            raise MatroidError(
                f"copoints {list(to_set(h1))} and {list(to_set(h2))} meet in >= {r - 1} elements"
            )
    bases = [
        to_mask(c)
        for c in itertools.combinations(range(1, n + 1), r)
        if not any(to_mask(c) & h == to_mask(c) for h in hyper)
    ]
    return from_bases(n, [to_set(b) for b in bases])


# -- oracles ------------------------------------------------------------------


def rank(m: Matroid, s: Iterable[int]) -> int:
    return m.rank_of_mask(_check_subset(m.n, s))


def closure(m: Matroid, s: Iterable[int]) -> tuple[int, ...]:
    return to_set(m.closure_of_mask(_check_subset(m.n, s)))


def flat_masks(m: Matroid) -> list[int]:
    rt = m.rank_table
    out = []
    for mask in range(1 << m.n):
        rk = rt[mask]
        if all(mask >> i & 1 or rt[mask | 1 << i] > rk for i in range(m.n)):
            out.append(mask)
    return out


def flat_lattice(m: Matroid) -> FlatLattice:
    """All flats, ordered by rank then lexicographically, with Möbius values from the bottom."""
    rt = m.rank_table
    flats = sorted(flat_masks(m), key=lambda f: (rt[f], to_set(f)))
    mu: dict[int, int] = {}
    for x in flats:
        if x == flats[0]:
            mu[x] = 1
        else:
            mu[x] = -sum(v for y, v in mu.items() if y & x == y)
    return FlatLattice(tuple(FlatEntry(to_set(f), rt[f], mu[f]) for f in flats))


def dual(m: Matroid) -> Matroid:
    full = m.ground_mask
    return _from_masks(m.n, (full & ~b for b in m.basis_masks))


def _relabel_masks(masks: Iterable[int], keep: int) -> tuple[list[int], tuple[int, ...]]:
    """Compress the bits of ``keep`` to 1..k preserving order."""
    labels = to_set(keep)
    positions = {lab - 1: i for i, lab in enumerate(labels)}
    out = []
    for mask in masks:
        new = 0
        for old, i in positions.items():
            if mask >> old & 1:
                new |= 1 << i
        out.append(new)
    return out, labels


def minor(
    m: Matroid, delete: Iterable[int] = (), contract: Iterable[int] = ()
) -> tuple[Matroid, tuple[int, ...]]:
    """``m / contract \\ delete`` relabelled to 1..n'.

    Returns the minor and the tuple of original labels, so that element ``i``
    of the minor is ``labels[i - 1]`` of ``m``.  A dependent contraction set is
    handled by contracting a maximal independent subset and deleting the rest.
    """
    dmask = _check_subset(m.n, delete)
    cmask = _check_subset(m.n, contract)
    if dmask & cmask:
        raise MatroidError("delete and contract sets must be disjoint")
    indep = 0
    for i in range(m.n):
        bit = 1 << i
        if cmask & bit and m.rank_of_mask(indep | bit) > popcount(indep):
            indep |= bit
    keep = m.ground_mask & ~dmask & ~cmask
    candidates = {b & ~indep & keep for b in m.basis_masks if b & indep == indep}
    top = max(popcount(b) for b in candidates)
    new_masks, labels = _relabel_masks([b for b in candidates if popcount(b) == top], keep)
    return _from_masks(len(labels), new_masks), labels


def restriction(m: Matroid, subset: Iterable[int]) -> Matroid:
    keep = _check_subset(m.n, subset)
    return minor(m, delete=to_set(m.ground_mask & ~keep))[0]


def contraction(m: Matroid, subset: Iterable[int]) -> Matroid:
    return minor(m, contract=subset)[0]


def restriction_mask(m: Matroid, keep: int) -> Matroid:
    return restriction(m, to_set(keep))


def contraction_mask(m: Matroid, cmask: int) -> Matroid:
    return contraction(m, to_set(cmask))


def direct_sum(m1: Matroid, m2: Matroid) -> Matroid:
    shift = m1.n
    return _from_masks(m1.n + m2.n, (b1 | b2 << shift for b1 in m1.basis_masks for b2 in m2.basis_masks))


def relabel(m: Matroid, mapping: Sequence[int]) -> Matroid:
    """Apply the permutation sending element ``i`` to ``mapping[i - 1]``."""
    if sorted(mapping) != list(range(1, m.n + 1)):
        raise MatroidError("relabelling must be a permutation of 1..n")
    return _from_masks(m.n, (to_mask(mapping[e - 1] for e in to_set(b)) for b in m.basis_masks))


def simplify(m: Matroid) -> tuple[Matroid, tuple[int, ...]]:
    """Delete loops and all but the smallest element of each parallel class."""
    loops = m.loops_mask
    drop = loops
    for i in range(m.n):
        ibit = 1 << i
        if ibit & drop:
            continue
        for j in range(i + 1, m.n):
            jbit = 1 << j
            if not jbit & drop and m.rank_of_mask(ibit | jbit) == 1:
                drop |= jbit
    return minor(m, delete=to_set(drop))


def is_simple(m: Matroid) -> bool:
    return all(popcount(c) >= 3 for c in m.circuit_masks)


def base_polytope_vertices(m: Matroid) -> list[tuple[int, ...]]:
    return sorted(tuple(b >> i & 1 for i in range(m.n)) for b in m.basis_masks)


# -- canonical form -----------------------------------------------------------


def _clone_classes(m: Matroid) -> list[int]:
    """Class id per element position; clones are elements whose swap fixes the bases."""
    n = m.n
    basis_set = m.basis_set
    cls = list(range(n))

    def swapped(b, i, j):
        bi, bj = b >> i & 1, b >> j & 1
        if bi == bj:
            return b
        return b ^ (1 << i) ^ (1 << j)

    for i in range(n):
        if cls[i] != i:
            continue
        for j in range(i + 1, n):
            if cls[j] == j and all(swapped(b, i, j) in basis_set for b in m.basis_masks):
                cls[j] = i
    return cls


def _refine(m: Matroid, cells: list[list[int]]) -> list[list[int]]:
    while True:
        color = {}
        for idx, cell in enumerate(cells):
            for e in cell:
                color[e] = idx
        sig = {}
        for e in color:
            ebit = 1 << e
            sig[e] = tuple(
                sorted(
                    tuple(sorted(color[i] for i in range(m.n) if b >> i & 1))
                    for b in m.basis_masks
                    if b & ebit
                )
            )
        new_cells = []
        for cell in cells:
            groups: dict[tuple, list[int]] = {}
            for e in cell:
                groups.setdefault(sig[e], []).append(e)
            for key in sorted(groups):
                new_cells.append(groups[key])
        if len(new_cells) == len(cells):
            return new_cells
        cells = new_cells


def _canonical_encoding(m: Matroid) -> tuple[int, ...]:
    clones = _clone_classes(m)
    best: list[tuple[int, ...] | None] = [None]

    def leaf(cells):
        pos = {cell[0]: i for i, cell in enumerate(cells)}
        enc = []
        for b in m.basis_masks:
            new = 0
            for e, p in pos.items():
                if b >> e & 1:
                    new |= 1 << p
            enc.append(new)
        enc = tuple(sorted(enc))
        if best[0] is None or enc < best[0]:
            best[0] = enc

    def search(cells):
        cells = _refine(m, cells)
        target = next((i for i, c in enumerate(cells) if len(c) > 1), None)
        if target is None:
            leaf(cells)
            return
        cell = cells[target]
        seen = set()
        for v in cell:
            if clones[v] in seen:
                continue
            seen.add(clones[v])
            rest = [e for e in cell if e != v]
            search(cells[:target] + [[v], rest] + cells[target + 1 :])

    search([list(range(m.n))] if m.n else [])
    if m.n == 0:
        return tuple(m.basis_masks)
    return best[0]


def canonical_key(m: Matroid, guard: int = CANONICAL_GUARD) -> bytes:
    """Isomorphism-class key.

    Exact (equal iff isomorphic) for n <= guard.  Above the guard the key is an
    invariant hash prefixed with ``h:``; isomorphic matroids still share it but
    distinct classes may collide.
    """
    if m.n <= guard:
        enc = _canonical_encoding(m)
        return f"{m.n}:{m.r}:".encode() + ",".join(format(b, "x") for b in enc).encode()
    profile = sorted((f.rank, len(f.flat)) for f in flat_lattice(m))
    return f"h:{m.n}:{m.r}:{m.num_bases}:{profile}".encode()


def structural_key(m: Matroid) -> bytes:
    return f"s:{m.n}:{m.r}:".encode() + ",".join(format(b, "x") for b in m.basis_masks).encode()
