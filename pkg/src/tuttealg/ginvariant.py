"""Derksen's G-invariant, its closed forms and specialisations, and freedom matroids.

A rank sequence is written as a string of ``0``/``1`` characters, e.g.
``"110100"``; the formal symbol [110100] is that string.  Symbols are
ordered by the lexicographic order on such strings, which is a linear
extension of the dominance order.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from typing import Iterable, Mapping

from .errors import CrossCheckError, GuardExceeded, MatroidError
from .linalg import rational_rank
from .matroid import (
    SUBSET_GUARD,
    Matroid,
    _from_masks,
    flat_masks,
    popcount,
    to_mask,
    to_set,
)
from .polynomial import Polynomial
from .tutte import shift_to_tutte, tutte

PERMUTATION_GUARD = 9

RankSequence = str


def check_sequence(seq: str, n: int | None = None, r: int | None = None) -> str:
    if isinstance(seq, (list, tuple)):
        seq = "".join(str(int(b)) for b in seq)
    if not isinstance(seq, str) or set(seq) - {"0", "1"}:
        raise MatroidError(f"{seq!r} is not a 0/1 sequence")
    if n is not None and len(seq) != n:
        raise MatroidError(f"sequence {seq} has length {len(seq)}, expected {n}")
    if r is not None and seq.count("1") != r:
        raise MatroidError(f"sequence {seq} has {seq.count('1')} ones, expected {r}")
    return seq


def all_sequences(n: int, r: int) -> list[str]:
    """Every length-n sequence with r ones, in descending lexicographic order (top first)."""
    out = []
    for ones in itertools.combinations(range(n), r):
        bits = ["0"] * n
        for i in ones:
            bits[i] = "1"
        out.append("".join(bits))
    return sorted(out, reverse=True)


def top_sequence(n: int, r: int) -> str:
    return "1" * r + "0" * (n - r)


def dual_sequence(seq: str) -> str:
    return "".join("1" if b == "0" else "0" for b in reversed(seq))


@dataclass(frozen=True)
class SymbolVector:
    """Rational combination of symbols [s] with a fixed length n and number of ones r."""

    n: int
    r: int
    coefficients: Mapping[str, object] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for s, c in self.coefficients.items():
            s = check_sequence(s, self.n, self.r)
            if c:
                clean[s] = clean.get(s, 0) + c
        object.__setattr__(self, "coefficients", {s: c for s, c in clean.items() if c})

    def __getitem__(self, seq: str):
        return self.coefficients.get(seq, 0)

    def __add__(self, other: "SymbolVector") -> "SymbolVector":
        self._same_shape(other)
        out = dict(self.coefficients)
        for s, c in other.coefficients.items():
            out[s] = out.get(s, 0) + c
        return type(self)(self.n, self.r, out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c) -> "SymbolVector":
        return type(self)(self.n, self.r, {s: v * c for s, v in self.coefficients.items()})

    def _same_shape(self, other):
        if (self.n, self.r) != (other.n, other.r):
            raise MatroidError("symbol vectors of different shapes")

    def __eq__(self, other):
        if not isinstance(other, SymbolVector):
            return NotImplemented
        return (self.n, self.r) == (other.n, other.r) and dict(self.coefficients) == dict(other.coefficients)

    def __hash__(self):
        return hash((self.n, self.r, frozenset(self.coefficients.items())))

    def support(self) -> list[str]:
        """Symbols with non-zero coefficient, ascending."""
        return sorted(self.coefficients)

    def __str__(self):
        if not self.coefficients:
            return "0"
        out = ""
        for s in self.support():
            c = self.coefficients[s]
            sign = "-" if c < 0 else "+"
            body = f"{abs(c)} [{s}]"
            out = (("-" if sign == "-" else "") + body) if not out else f"{out} {sign} {body}"
        return out


class GInvariant(SymbolVector):
    """Integer symbol vector produced by counting permutations."""

    @property
    def total(self) -> int:
        return sum(self.coefficients.values())


# -- computing G ---------------------------------------------------------------


def rank_sequence(m: Matroid, perm: Iterable[int]) -> str:
    perm = list(perm)
    if sorted(perm) != list(range(1, m.n + 1)):
        raise MatroidError("perm must be a permutation of 1..n")
    bits = []
    mask = 0
    prev = 0
    for e in perm:
        mask |= 1 << (e - 1)
        rk = m.rank_of_mask(mask)
        bits.append("1" if rk > prev else "0")
        prev = rk
    return "".join(bits)


def g_invariant_permutations(m: Matroid, guard: int = PERMUTATION_GUARD) -> GInvariant:
    if m.n > guard:
        raise GuardExceeded(f"n={m.n} exceeds permutation guard {guard}")
    rt = m.rank_table
    counts: dict[str, int] = {}
    for perm in itertools.permutations(range(m.n)):
        mask = 0
        prev = 0
        bits = []
        for i in perm:
            mask |= 1 << i
            rk = rt[mask]
            bits.append("1" if rk > prev else "0")
            prev = rk
        s = "".join(bits)
        counts[s] = counts.get(s, 0) + 1
    return GInvariant(m.n, m.r, counts)


def g_invariant_chains(m: Matroid) -> GInvariant:
    """Count maximal chains of subsets by their rank-increment sequence.

    Frontier of size-j subsets, each carrying prefix -> number of chains; a
    prefix is stored as an int with a leading 1 marker bit.
    """
    rt = m.rank_table
    n = m.n
    frontier: dict[int, dict[int, int]] = {0: {1: 1}}
    for _ in range(n):
        nxt: dict[int, dict[int, int]] = {}
        for s, prefixes in frontier.items():
            rs = rt[s]
            for i in range(n):
                bit = 1 << i
                if s & bit:
                    continue
                t = s | bit
                step = rt[t] - rs
                target = nxt.setdefault(t, {})
                for p, c in prefixes.items():
                    q = (p << 1) | step
                    target[q] = target.get(q, 0) + c
        frontier = nxt
    (final,) = frontier.values() if n else ({1: 1},)
    counts = {format(p, "b")[1:]: c for p, c in final.items()}
    return GInvariant(n, m.r, counts)


def g_invariant(m: Matroid, method: str = "chain-dp") -> GInvariant:
    if method == "permutations":
        return g_invariant_permutations(m)
    if method == "chain-dp":
        return g_invariant_chains(m)
    if method == "both":
        a, b = g_invariant_permutations(m), g_invariant_chains(m)
        if a != b:
            raise CrossCheckError(f"G by permutations {a} differs from chain count {b}")
        return a
    raise MatroidError(f"unknown G-invariant method {method!r}")


def g_dual(g: SymbolVector) -> SymbolVector:
    """Replace every [s] by [s*], s reversed with 0s and 1s swapped."""
    return type(g)(g.n, g.n - g.r, {dual_sequence(s): c for s, c in g.coefficients.items()})


# -- paving closed forms -------------------------------------------------------


def _paving_symbol(n: int, r: int, i: int) -> str:
    """1^(r-1) 0^(i-r) 1 0^(n-i): leading r-1 ones and the last one at position i."""
    return "1" * (r - 1) + "0" * (i - r) + "1" + "0" * (n - i)


def paving_g_from_sizes(n: int, r: int, sizes: Iterable[int], trivial: int) -> GInvariant:
    """G of a rank-r paving matroid from its non-trivial copoint sizes and trivial copoint count."""
    if r < 1:
        raise MatroidError("paving closed form needs r >= 1")
    counts: dict[str, int] = {}

    def add(s, c):
        counts[s] = counts.get(s, 0) + c

    add(top_sequence(n, r), trivial * factorial(r - 1) * factorial(n - r + 1))
    for x in sizes:
        if x < r:
            raise MatroidError(f"non-trivial copoint size {x} < r = {r}")
        for i in range(r, x + 2):
            c = factorial(x) // factorial(x - i + 1) * (n - x) * factorial(n - i)
            add(_paving_symbol(n, r, i), c)
    return GInvariant(n, r, counts)


def paving_g(n: int, r: int, copoints: Iterable[Iterable[int]]) -> GInvariant:
    """G of the paving matroid with the given non-trivial copoints."""
    hyper = [to_mask(c) for c in copoints]
    for a, b in itertools.combinations(hyper, 2):
        if popcount(a & b) >= r - 1:
            raise MatroidError(
                f"copoints {list(to_set(a))} and {list(to_set(b))} meet in >= {r - 1} elements: not paving"
            )
    trivial = sum(
        1
        for c in itertools.combinations(range(n), r - 1)
        if not any(sum(1 << i for i in c) & h == sum(1 << i for i in c) for h in hyper)
    )
    return paving_g_from_sizes(n, r, [popcount(h) for h in hyper], trivial)


def sparse_paving_g(n: int, r: int, alpha: int) -> GInvariant:
    unit = factorial(r) * factorial(n - r)
    counts = {top_sequence(n, r): (comb(n, r) - alpha) * unit}
    if alpha:
        counts[_paving_symbol(n, r, r + 1)] = alpha * unit
    return GInvariant(n, r, counts)


def nontrivial_copoints(m: Matroid) -> list[tuple[int, ...]]:
    """Rank-(r-1) flats with at least r elements."""
    rt = m.rank_table
    return [to_set(f) for f in flat_masks(m) if rt[f] == m.r - 1 and popcount(f) >= m.r]


# -- specialisation -------------------------------------------------------------


def specialize_corank_nullity(g: SymbolVector, variables=("x", "y")) -> Polynomial:
    """The factorial-weighted specialisation; applied to G(M) it gives R(M; x, y)."""
    n, r = g.n, g.r
    out: dict[tuple[int, int], Fraction] = {}
    for s, c in g.coefficients.items():
        wt = 0
        for k in range(n + 1):
            if k:
                wt += s[k - 1] == "1"
            key = (r - wt, k - wt)
            out[key] = out.get(key, 0) + Fraction(c, factorial(k) * factorial(n - k))
    return Polynomial(out, variables)


def specialize(g: SymbolVector) -> Polynomial:
    """Specialisation to Tutte polynomials: the corank-nullity map followed by x -> x-1, y -> y-1."""
    return shift_to_tutte(specialize_corank_nullity(g).terms)


def specialize_to_tutte(g: GInvariant) -> Polynomial:
    t = specialize(g)
    if not t.is_integral():
        raise CrossCheckError(f"specialisation has non-integer coefficients: {t}")
    return t


# -- freedom matroids -----------------------------------------------------------


def freedom_matroid(seq: str) -> Matroid:
    """F(seq): bases are the r-sets c_1 < ... < c_r with c_j >= b_j, b the positions of the ones."""
    seq = check_sequence(seq)
    n = len(seq)
    ones = [i + 1 for i, b in enumerate(seq) if b == "1"]
    masks = [
        to_mask(c)
        for c in itertools.combinations(range(1, n + 1), len(ones))
        if all(cj >= bj for cj, bj in zip(c, ones))
    ]
    return _from_masks(n, masks)


def _extend_rank_table(table: list[int], k: int, kind: str, flat: int = 0) -> list[int]:
    """Add element k+1 (bit k) to a matroid on k elements given by its rank table.

    kind: "loop", "coloop", or "free" (principal extension placing the new
    element freely on the flat given as a bitmask).
    """
    size = 1 << k
    out = table + [0] * size
    bit = 1 << k
    for s in range(size):
        if kind == "loop":
            out[s | bit] = table[s]
        elif kind == "coloop":
            out[s | bit] = table[s] + 1
        else:
            out[s | bit] = table[s] if table[s | flat] == table[s] else table[s] + 1
    return out


def _closure_in_table(table: list[int], k: int, s: int) -> int:
    rk = table[s]
    out = s
    for i in range(k):
        if not s >> i & 1 and table[s | 1 << i] == rk:
            out |= 1 << i
    return out


def freedom_matroid_incremental(seq: str) -> Matroid:
    """F(seq) built element by element: loops before the first one, each one-position
    added as an isthmus, every zero placed freely in the closure of the isthmuses so far
    (the whole matroid after the last one)."""
    seq = check_sequence(seq)
    n = len(seq)
    if n > SUBSET_GUARD:
        raise GuardExceeded(f"n={n} exceeds subset guard")
    table = [0]
    isthmuses = 0
    seen_one = False
    total_ones = seq.count("1")
    ones_so_far = 0
    for k, b in enumerate(seq):
        if b == "1":
            table = _extend_rank_table(table, k, "coloop")
            isthmuses |= 1 << k
            seen_one = True
            ones_so_far += 1
        elif not seen_one:
            table = _extend_rank_table(table, k, "loop")
        else:
            if ones_so_far == total_ones:
                flat = (1 << k) - 1
            else:
                flat = _closure_in_table(table, k, isthmuses)
            table = _extend_rank_table(table, k, "free", flat)
    full = (1 << n) - 1
    r = table[full]
    bases = [s for s in range(1 << n) if popcount(s) == r and table[s] == r]
    return _from_masks(n, bases)


def dominates(s: str, t: str) -> bool:
    """s ⊵ t: every prefix of s has at least as many ones as the same prefix of t."""
    if len(s) != len(t) or s.count("1") != t.count("1"):
        raise MatroidError("dominance compares sequences of equal length and weight")
    a = b = 0
    for x, y in zip(s, t):
        a += x == "1"
        b += y == "1"
        if a < b:
            return False
    return True


dominance = dominates


_freedom_g_cache: dict[str, GInvariant] = {}


def freedom_g(seq: str) -> GInvariant:
    if seq not in _freedom_g_cache:
        _freedom_g_cache[seq] = g_invariant_chains(freedom_matroid(seq))
    return _freedom_g_cache[seq]


def freedom_expansion(n: int, r: int) -> dict[str, SymbolVector]:
    """Each symbol [s] as a rational combination of G(F(t)).

    The result maps s to a SymbolVector whose coefficient at t is the weight of
    G(F(t)).  Solved by back-substitution down the lexicographic order.
    """
    seqs = all_sequences(n, r)
    expansion: dict[str, SymbolVector] = {}
    for t in seqs:
        g = freedom_g(t)
        for s, c in g.coefficients.items():
            if not dominates(s, t):
                raise CrossCheckError(f"[{s}] occurs in G(F({t})) but does not dominate it")
        diag = g[t]
        if not diag:
            raise CrossCheckError(f"zero diagonal entry for {t}")
        vec = SymbolVector(n, r, {t: Fraction(1)})
        for s, c in g.coefficients.items():
            if s != t:
                vec = vec - expansion[s].scale(c)
        expansion[t] = vec.scale(Fraction(1, diag))
    return expansion


def in_freedom_basis(g: SymbolVector) -> SymbolVector:
    """Coordinates of a symbol vector with respect to the basis {G(F(t))}."""
    expansion = freedom_expansion(g.n, g.r)
    out = SymbolVector(g.n, g.r, {})
    for s, c in g.coefficients.items():
        out = out + expansion[s].scale(c)
    return out


def recombine(coords: SymbolVector) -> SymbolVector:
    """Σ_t coords[t] G(F(t)) as a symbol vector."""
    out = SymbolVector(coords.n, coords.r, {})
    for t, c in coords.coefficients.items():
        out = out + freedom_g(t).scale(c)
    return out


_freedom_tutte_cache: dict[str, Polynomial] = {}


def freedom_tutte(seq: str) -> Polynomial:
    if seq not in _freedom_tutte_cache:
        _freedom_tutte_cache[seq] = tutte(freedom_matroid(seq), "subset-expansion")
    return _freedom_tutte_cache[seq]


def clear_caches() -> None:
    """Forget memoised freedom-matroid and deletion–contraction results."""
    from .tutte import _memo

    _freedom_g_cache.clear()
    _freedom_tutte_cache.clear()
    _memo.clear()


def tutte_in_freedom_basis(m: Matroid) -> dict[str, Fraction]:
    """Coefficients c_t with T(M) = Σ c_t T(F(t)), read off from G(M).

    The decomposition is the one induced by the G-expansion; because the
    specialisation has a kernel it is one of many valid decompositions.
    """
    coords = in_freedom_basis(g_invariant(m))
    combined = Polynomial({}, ("x", "y"))
    for t, c in coords.coefficients.items():
        combined = combined + freedom_tutte(t) * c
    target = tutte(m, "subset-expansion")
    if combined != target:
        raise CrossCheckError(f"freedom recombination {combined} differs from T(M) = {target}")
    return dict(coords.coefficients)


def tutte_span_dimension(n: int, r: int) -> int:
    """Dimension of the span of all T(F(s)) with s of length n and weight r."""
    polys = [freedom_tutte(s) for s in all_sequences(n, r)]
    monomials = sorted({e for p in polys for e in p.terms})
    rows = [[p.coeff(*e) for e in monomials] for p in polys]
    return rational_rank(rows)


def verify_syzygy(v: SymbolVector) -> bool:
    return specialize(v).is_zero()


def freedom_tutte_relation(coeffs: Mapping[str, object]) -> bool:
    total = Polynomial({}, ("x", "y"))
    for s, c in coeffs.items():
        total = total + freedom_tutte(check_sequence(s)) * c
    return total.is_zero()


# -- the F-invariant -------------------------------------------------------------

F_GUARD = 2_000_000


def is_m_generic(m: Matroid, f: Mapping[int, int] | Iterable[int]) -> bool:
    """True when exactly one basis minimises the total weight Σ_{b in B} f(b)."""
    if isinstance(f, Mapping):
        weights = [f[i] for i in range(1, m.n + 1)]
    else:
        weights = list(f)
    if len(weights) != m.n or any(w < 1 for w in weights):
        raise MatroidError("f must assign a positive integer to every element")
    return _generic(m, weights)


def _generic(m: Matroid, weights) -> bool:
    best = None
    ties = 0
    for b in m.basis_masks:
        total = sum(w for i, w in enumerate(weights) if b >> i & 1)
        if best is None or total < best:
            best, ties = total, 1
        elif total == best:
            ties += 1
    return ties == 1


def f_invariant_truncated(m: Matroid, k: int, guard: int = F_GUARD) -> dict[tuple[int, ...], int]:
    """Number of M-generic f with values in 1..k, keyed by exponent vector.

    The key (a_1, ..., a_k) records how many elements take each value, i.e.
    the monomial x_1^a_1 ... x_k^a_k of the F-invariant.
    """
    if k ** m.n > guard:
        raise GuardExceeded(f"{k}^{m.n} functions exceed guard {guard}")
    out: dict[tuple[int, ...], int] = {}
    for values in itertools.product(range(1, k + 1), repeat=m.n):
        if _generic(m, values):
            key = tuple(values.count(v) for v in range(1, k + 1))
            out[key] = out.get(key, 0) + 1
    return out


def g_from_paving_matroid(m: Matroid) -> GInvariant:
    """Closed form applied to a paving matroid's own copoints."""
    return paving_g(m.n, m.r, nontrivial_copoints(m))
