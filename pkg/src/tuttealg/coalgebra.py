"""Restriction–contraction comultiplication and the convolution identities it explains."""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .matroid import (
    CANONICAL_GUARD,
    GraphInput,
    Matroid,
    canonical_key,
    contraction_mask,
    direct_sum,
    popcount,
    restriction_mask,
    structural_key,
)
from .polynomial import Polynomial
from .tutte import chromatic_poly, corank_nullity

#: seed for the default pseudorandom sample points
DEFAULT_SEED = 20240917


def _key(m: Matroid, grouped: bool) -> bytes:
    return canonical_key(m) if grouped else structural_key(m)


@dataclass
class TensorSum:
    """Σ multiplicity · (left ⊗ right) over isomorphism classes of pairs."""

    terms: Counter = field(default_factory=Counter)
    representatives: dict[tuple[bytes, bytes], tuple[Matroid, Matroid]] = field(default_factory=dict)
    grouped: bool = True

    def add(self, left: Matroid, right: Matroid, mult: int = 1) -> None:
        key = (_key(left, self.grouped), _key(right, self.grouped))
        self.terms[key] += mult
        self.representatives.setdefault(key, (left, right))

    @property
    def total(self) -> int:
        return sum(self.terms.values())

    def __len__(self):
        return len(self.terms)

    def items(self):
        for key, mult in sorted(self.terms.items()):
            yield mult, self.representatives[key]


def comultiply(m: Matroid) -> TensorSum:
    """ΔM = Σ_A M|A ⊗ M/A, grouped by isomorphism class when n is within the canonical guard.

    Beyond the guard each subset contributes its own (structurally keyed) term.
    """
    out = TensorSum(grouped=m.n <= CANONICAL_GUARD)
    for a in range(1 << m.n):
        out.add(restriction_mask(m, a), contraction_mask(m, a))
    return out


def coproduct_triples(m: Matroid) -> tuple[Counter, Counter]:
    """Both iterated coproducts as multisets of isomorphism-class triples.

    (Δ⊗id)Δ M = Σ_{B⊆A} (M|A)|B ⊗ (M|A)/B ⊗ M/A and
    (id⊗Δ)Δ M = Σ_{B, C⊆E-B} M|B ⊗ (M/B)|C ⊗ (M/B)/C.
    """
    left: Counter = Counter()
    right: Counter = Counter()
    for a in range(1 << m.n):
        ma = restriction_mask(m, a)
        rest = canonical_key(contraction_mask(m, a))
        for b in range(1 << ma.n):
            left[(canonical_key(restriction_mask(ma, b)), canonical_key(contraction_mask(ma, b)), rest)] += 1
        mc = contraction_mask(m, a)
        first = canonical_key(ma)
        for c in range(1 << mc.n):
            right[(first, canonical_key(restriction_mask(mc, c)), canonical_key(contraction_mask(mc, c)))] += 1
    return left, right


def product_of_coproducts(m1: Matroid, m2: Matroid) -> Counter:
    """Pairwise direct-sum product of ΔM1 and ΔM2, as a multiset of class pairs."""
    out: Counter = Counter()
    d1, d2 = comultiply(m1), comultiply(m2)
    for k1, c1 in d1.terms.items():
        a, b = d1.representatives[k1]
        for k2, c2 in d2.terms.items():
            c, d = d2.representatives[k2]
            out[(canonical_key(direct_sum(a, c)), canonical_key(direct_sum(b, d)))] += c1 * c2
    return out


# -- the corank-nullity convolution ------------------------------------------------

_R_VARS = ("x", "y", "λ", "ξ")


def sample_points(count: int, dims: int, seed: int = DEFAULT_SEED) -> list[tuple[Fraction, ...]]:
    """Deterministic rational sample points with small numerators and denominators."""
    rng = random.Random(seed)
    return [
        tuple(Fraction(rng.randint(-9, 9), rng.randint(1, 7)) for _ in range(dims))
        for _ in range(count)
    ]


def _convolution_terms(m: Matroid):
    rt = m.rank_table
    for a in range(1 << m.n):
        ra = rt[a]
        yield (
            m.r - ra,
            popcount(a) - ra,
            corank_nullity(restriction_mask(m, a)),
            corank_nullity(contraction_mask(m, a)),
        )


def r_convolution_sides(m: Matroid, x, y, lam, xi):
    """Both sides of the corank-nullity convolution identity.

    With R(M; u, v) = Σ_A u^(r - r(A)) v^(|A| - r(A)) the identity reads

        R(M; λξ, xy) = Σ_A λ^(r-r(A)) (-y)^(|A|-r(A)) R(M|A; -λ, -x) R(M/A; ξ, y).

    Works for numbers and for polynomials alike.
    """
    lhs = corank_nullity(m).evaluate(lam * xi, x * y)
    rhs = 0
    for corank, nullity, r_rest, r_con in _convolution_terms(m):
        rhs = rhs + lam**corank * (-y) ** nullity * r_rest.evaluate(-lam, -x) * r_con.evaluate(xi, y)
    return lhs, rhs


def verify_R_convolution(
    m: Matroid, samples: Iterable[Sequence] | None = None, *, symbolic: bool = False
) -> bool:
    """Check the corank-nullity convolution identity exactly.

    Numerically at each sample point (x, y, λ, ξ), or with ``symbolic=True``
    as an identity of polynomials in four variables.
    """
    if symbolic:
        x, y, lam, xi = (Polynomial.variable(v, _R_VARS) for v in _R_VARS)
        lhs, rhs = r_convolution_sides(m, x, y, lam, xi)
        return lhs == rhs
    if samples is None:
        samples = sample_points(10, 4)
    for point in samples:
        x, y, lam, xi = (Fraction(v) for v in point)
        lhs, rhs = r_convolution_sides(m, x, y, lam, xi)
        if lhs != rhs:
            return False
    return True


# -- the chromatic convolution --------------------------------------------------------


def chromatic_convolution_sides(g: GraphInput, x, y):
    """P(G; x+y) and Σ_U P(G|U; x) P(G|(V-U); y) over vertex subsets U."""
    lhs = chromatic_poly(g).evaluate(x + y)
    verts = list(range(1, g.num_vertices + 1))
    rhs = 0
    for mask in range(1 << g.num_vertices):
        inside = [v for v in verts if mask >> (v - 1) & 1]
        outside = [v for v in verts if not mask >> (v - 1) & 1]
        rhs = rhs + chromatic_poly(g.induced(inside)).evaluate(x) * chromatic_poly(g.induced(outside)).evaluate(y)
    return lhs, rhs


def verify_chromatic_convolution(
    g: GraphInput, samples: Iterable[Sequence] | None = None, *, symbolic: bool = False
) -> bool:
    if symbolic:
        x, y = (Polynomial.variable(v, ("x", "y")) for v in ("x", "y"))
        lhs, rhs = chromatic_convolution_sides(g, x, y)
        return lhs == rhs
    if samples is None:
        samples = sample_points(5, 2)
    for point in samples:
        x, y = (Fraction(v) for v in point)
        lhs, rhs = chromatic_convolution_sides(g, x, y)
        if lhs != rhs:
            return False
    return True
