"""Broken circuits, nbc-sets and the characteristic polynomial."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import CrossCheckError, MatroidError
from .matroid import Matroid, flat_lattice, popcount, to_set
from .polynomial import Polynomial


def _require_loopless(m: Matroid) -> None:
    if m.loops_mask:
        raise MatroidError(f"matroid has loops {list(to_set(m.loops_mask))}; nbc-sets are undefined")


def broken_circuit_masks(m: Matroid) -> list[int]:
    _require_loopless(m)
    out = {c & (c - 1) for c in m.circuit_masks}  # clears the lowest bit = the minimum element
    return sorted(out, key=lambda b: (popcount(b), to_set(b)))


def broken_circuits(m: Matroid) -> list[tuple[int, ...]]:
    return [to_set(b) for b in broken_circuit_masks(m)]


@dataclass(frozen=True)
class NbcCatalog:
    """nbc-sets grouped by the flat they span."""

    by_flat: dict[tuple[int, ...], tuple[tuple[int, ...], ...]]

    @property
    def sets(self) -> list[tuple[int, ...]]:
        out = [s for group in self.by_flat.values() for s in group]
        return sorted(out, key=lambda s: (len(s), s))

    def of_size(self, k: int) -> list[tuple[int, ...]]:
        return [s for s in self.sets if len(s) == k]

    def whitney_numbers(self) -> list[int]:
        """w_k = number of nbc-sets of size k, for k = 0..r."""
        sizes = [len(s) for s in self.sets]
        top = max(sizes, default=0)
        return [sizes.count(k) for k in range(top + 1)]

    def count(self, flat) -> int:
        return len(self.by_flat.get(tuple(sorted(flat)), ()))


def _is_nbc_by_closure(m: Matroid, mask: int) -> bool:
    """Each element must be the minimum of the closure of itself and all larger chosen elements."""
    elems = to_set(mask)
    for t in range(len(elems)):
        tail = 0
        for e in elems[t:]:
            tail |= 1 << (e - 1)
        cl = m.closure_of_mask(tail)
        if cl & -cl != 1 << (elems[t] - 1):
            return False
    return True


def nbc_sets(m: Matroid) -> NbcCatalog:
    """All nbc-sets of a loopless matroid.

    Both the broken-circuit containment test and the closure-minimum test are
    applied to every subset; disagreement raises CrossCheckError.
    """
    broken = broken_circuit_masks(m)
    rt = m.rank_table
    groups: dict[int, list[int]] = {}
    for mask in range(1 << m.n):
        by_containment = rt[mask] == popcount(mask) and not any(b & mask == b for b in broken)
        by_closure = _is_nbc_by_closure(m, mask)
        if by_containment != by_closure:
            raise CrossCheckError(f"nbc tests disagree on {list(to_set(mask))}")
        if by_containment:
            groups.setdefault(m.closure_of_mask(mask), []).append(mask)
    by_flat = {}
    for flat in sorted(groups, key=lambda f: (rt[f], to_set(f))):
        members = sorted(groups[flat], key=lambda s: (popcount(s), to_set(s)))
        by_flat[to_set(flat)] = tuple(to_set(s) for s in members)
    return NbcCatalog(by_flat)


def char_poly_mobius(m: Matroid, var: str = "λ") -> Polynomial:
    if m.loops_mask:
        return Polynomial({}, (var,))
    return Polynomial.univariate(
        _sum_by_degree((m.r - f.rank, f.mobius) for f in flat_lattice(m)), var
    )


def char_poly_whitney(m: Matroid, var: str = "λ") -> Polynomial:
    if m.loops_mask:
        return Polynomial({}, (var,))
    w = nbc_sets(m).whitney_numbers()
    return Polynomial.univariate({m.r - k: (-1) ** k * wk for k, wk in enumerate(w)}, var)


def _sum_by_degree(pairs) -> dict[int, int]:
    out: dict[int, int] = {}
    for d, c in pairs:
        out[d] = out.get(d, 0) + c
    return out


def char_poly(m: Matroid, var: str = "λ") -> Polynomial:
    """χ(M; λ), by the Möbius sum over flats and by nbc counts; the two must agree.

    A matroid with a loop has χ = 0.
    """
    by_mobius = char_poly_mobius(m, var)
    if m.loops_mask:
        return by_mobius
    by_nbc = char_poly_whitney(m, var)
    if by_mobius != by_nbc:
        raise CrossCheckError(f"Möbius sum {by_mobius} differs from nbc count {by_nbc}")
    return by_mobius
