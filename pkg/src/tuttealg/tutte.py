"""Tutte, corank-nullity and chromatic polynomials."""

from __future__ import annotations

from math import comb

from .errors import CrossCheckError, MatroidError
from .matroid import (
    CANONICAL_GUARD,
    GraphInput,
    Matroid,
    canonical_key,
    from_graph,
    minor,
    popcount,
    structural_key,
)
from .polynomial import Polynomial

METHODS = ("subset-expansion", "deletion-contraction", "activities")

_memo: dict[bytes, Polynomial] = {}


def _corank_nullity_counts(m: Matroid) -> dict[tuple[int, int], int]:
    rt = m.rank_table
    counts: dict[tuple[int, int], int] = {}
    for mask in range(1 << m.n):
        rk = rt[mask]
        key = (m.r - rk, popcount(mask) - rk)
        counts[key] = counts.get(key, 0) + 1
    return counts


def corank_nullity(m: Matroid, variables=("u", "v")) -> Polynomial:
    """R(M; u, v) = Σ_A u^(r - r(A)) v^(|A| - r(A))."""
    return Polynomial(_corank_nullity_counts(m), variables)


def shift_to_tutte(counts: dict[tuple[int, int], object], variables=("x", "y")) -> Polynomial:
    """Expand Σ c_ij (x-1)^i (y-1)^j into the monomial basis."""
    out: dict[tuple[int, int], object] = {}
    for (i, j), c in counts.items():
        for a in range(i + 1):
            ca = comb(i, a) * (-1) ** (i - a)
            for b in range(j + 1):
                key = (a, b)
                out[key] = out.get(key, 0) + c * ca * comb(j, b) * (-1) ** (j - b)
    return Polynomial(out, variables)


def tutte_subset_expansion(m: Matroid) -> Polynomial:
    return shift_to_tutte(_corank_nullity_counts(m))


def tutte_deletion_contraction(m: Matroid) -> Polynomial:
    """T(M) = T(M\\e) + T(M/e) on the smallest element that is neither loop nor coloop.

    Memoised on the canonical key (structural key above the canonical guard).
    """
    key = canonical_key(m) if m.n <= CANONICAL_GUARD else structural_key(m)
    hit = _memo.get(key)
    if hit is not None:
        return hit
    special = m.loops_mask | m.coloops_mask
    pivot = next((i + 1 for i in range(m.n) if not special >> i & 1), None)
    if pivot is None:
        loops = popcount(m.loops_mask)
        coloops = popcount(m.coloops_mask)
        result = Polynomial({(coloops, loops): 1}, ("x", "y"))
    else:
        deleted, _ = minor(m, delete=[pivot])
        contracted, _ = minor(m, contract=[pivot])
        result = tutte_deletion_contraction(deleted) + tutte_deletion_contraction(contracted)
    _memo[key] = result
    return result


def _activities(m: Matroid) -> dict[tuple[int, int], int]:
    basis_set = m.basis_set
    n = m.n
    counts: dict[tuple[int, int], int] = {}
    for b in m.basis_masks:
        internal = 0
        external = 0
        for i in range(n):
            ebit = 1 << i
            if b & ebit:
                # fundamental cocircuit of e: e and every f outside B with B - e + f a basis
                rest = b & ~ebit
                if all(
                    (rest | 1 << j) not in basis_set for j in range(i) if not b >> j & 1
                ):
                    internal += 1
            else:
                # fundamental circuit of e: e and every f in B with B - f + e a basis
                if all(
                    ((b & ~(1 << j)) | ebit) not in basis_set for j in range(i) if b >> j & 1
                ):
                    external += 1
        counts[(internal, external)] = counts.get((internal, external), 0) + 1
    return counts


def tutte_activities(m: Matroid) -> Polynomial:
    """Σ over bases of x^(internal activity) y^(external activity), label order 1..n."""
    return Polynomial(_activities(m), ("x", "y"))


_DISPATCH = {
    "subset-expansion": tutte_subset_expansion,
    "deletion-contraction": tutte_deletion_contraction,
    "activities": tutte_activities,
}


def tutte_all(m: Matroid) -> dict[str, Polynomial]:
    results = {name: fn(m) for name, fn in _DISPATCH.items()}
    _agree(results)
    return results


def _agree(results: dict[str, Polynomial]) -> None:
    names = list(results)
    first = results[names[0]]
    for name in names[1:]:
        if results[name] != first:
            raise CrossCheckError(f"Tutte methods disagree: {names[0]}={first}, {name}={results[name]}")


def tutte(m: Matroid, method: str | None = None) -> Polynomial:
    """T(M; x, y).

    With no method, the subset expansion and deletion–contraction are both
    computed and compared; ``method="all"`` adds the activities expansion.
    """
    if method is None:
        results = {
            "subset-expansion": tutte_subset_expansion(m),
            "deletion-contraction": tutte_deletion_contraction(m),
        }
        _agree(results)
        return results["subset-expansion"]
    if method == "all":
        return tutte_all(m)["subset-expansion"]
    try:
        return _DISPATCH[method](m)
    except KeyError:
        raise MatroidError(f"unknown Tutte method {method!r}; choose from {METHODS}") from None


def tutte_to_char(m: Matroid, var: str = "λ") -> Polynomial:
    """χ(M; λ) = (-1)^r T(M; 1 - λ, 0)."""
    t = tutte_subset_expansion(m)
    lam = Polynomial.variable(var, (var,))
    return t.substitute(1 - lam, Polynomial.constant(0, (var,))) * (-1) ** m.r


def chromatic_poly(g: GraphInput, var: str = "x") -> Polynomial:
    """P(G; x) = x^c(G) χ(M(G); x); zero when G has a loop."""
    if any(u == v for u, v in g.edges):
        return Polynomial({}, (var,))
    chi = tutte_to_char(from_graph(g), var)
    return chi * Polynomial.univariate({g.components(): 1}, var)


def count_colorings(g: GraphInput, k: int) -> int:
    """Brute-force number of proper k-colourings."""
    from itertools import product

    total = 0
    for coloring in product(range(k), repeat=g.num_vertices):
        if all(coloring[u - 1] != coloring[v - 1] for u, v in g.edges):
            total += 1
    return total
