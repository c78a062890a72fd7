"""Exterior algebra elements and the Orlik–Solomon algebra A(M).

Monomials are sorted tuples of element labels; every sign comes from the
parity of a sorted merge, so each monomial has exactly one stored form.
Elements of A(M) are represented by their normal form on nbc-monomials.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import CrossCheckError, MatroidError
from .linalg import rational_rank
from .matroid import Matroid, flat_lattice, is_simple, popcount, to_mask, to_set
from .nbc import NbcCatalog, broken_circuit_masks, char_poly, nbc_sets
from .polynomial import Polynomial

Monomial = tuple[int, ...]


def glex_key(mono: Monomial) -> tuple[int, Monomial]:
    return (len(mono), mono)


class ExteriorElement:
    """Finite rational combination of exterior monomials e_T."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Iterable[int], object] | None = None):
        clean: dict[Monomial, Fraction] = {}
        for mono, c in (terms or {}).items():
            mono = tuple(mono)
            if list(mono) != sorted(set(mono)):
                sign, mono = _sort_with_sign(mono)
                c = sign * c
                if mono is None:
                    continue
            c = Fraction(c)
            total = clean.get(mono, 0) + c
            if total:
                clean[mono] = total
            else:
                clean.pop(mono, None)
        self.terms = clean

    @classmethod
    def monomial(cls, *elems: int, coeff=1) -> "ExteriorElement":
        return cls({tuple(elems): coeff})

    @classmethod
    def one(cls) -> "ExteriorElement":
        return cls({(): 1})

    @classmethod
    def generator(cls, i: int) -> "ExteriorElement":
        return cls({(i,): 1})

    def is_zero(self) -> bool:
        return not self.terms

    def grades(self) -> set[int]:
        return {len(m) for m in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.grades()) <= 1

    @property
    def grade(self) -> int:
        gs = self.grades()
        if len(gs) != 1:
            raise ValueError("grade is defined only for non-zero homogeneous elements")
        return gs.pop()

    def __add__(self, other: "ExteriorElement") -> "ExteriorElement":
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return ExteriorElement(out)

    def __neg__(self):
        return ExteriorElement({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, scalar):
        if isinstance(scalar, ExteriorElement):
            return wedge(self, scalar)
        return ExteriorElement({m: c * scalar for m, c in self.terms.items()})

    __rmul__ = __mul__

    def __xor__(self, other):
        return wedge(self, other)

    def __eq__(self, other):
        if isinstance(other, ExteriorElement):
            return self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __str__(self):
        if not self.terms:
            return "0"
        out = ""
        for mono in sorted(self.terms, key=glex_key):
            c = self.terms[mono]
            name = "e" + "".join(str(i) if i < 10 else f"{{{i}}}" for i in mono) if mono else "1"
            sign = "-" if c < 0 else "+"
            a = abs(c)
            body = name if a == 1 else f"{a}*{name}"
            if not out:
                out = ("-" if sign == "-" else "") + body
            else:
                out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"ExteriorElement({str(self)!r})"


def _sort_with_sign(seq: Iterable[int]) -> tuple[int, Monomial | None]:
    """Sign of the sorting permutation and the sorted tuple; (0, None) on a repeat."""
    seq = list(seq)
    if len(set(seq)) != len(seq):
        return 0, None
    inversions = sum(1 for i in range(len(seq)) for j in range(i + 1, len(seq)) if seq[i] > seq[j])
    return (-1) ** inversions, tuple(sorted(seq))


def _merge_sign(s: Monomial, t: Monomial) -> int:
    crossings = 0
    j = 0
    for a in s:
        while j < len(t) and t[j] < a:
            j += 1
        crossings += j
    return -1 if crossings & 1 else 1


def wedge(a: ExteriorElement, b: ExteriorElement) -> ExteriorElement:
    out: dict[Monomial, Fraction] = {}
    for s, cs in a.terms.items():
        sset = set(s)
        for t, ct in b.terms.items():
            if sset.intersection(t):
                continue
            mono = tuple(sorted(s + t))
            out[mono] = out.get(mono, 0) + _merge_sign(s, t) * cs * ct
    return ExteriorElement(out)


def wedge_all(elements: Iterable[ExteriorElement]) -> ExteriorElement:
    result = ExteriorElement.one()
    for e in elements:
        result = wedge(result, e)
    return result


def boundary(a: ExteriorElement) -> ExteriorElement:
    out: dict[Monomial, Fraction] = {}
    for mono, c in a.terms.items():
        for j in range(len(mono)):
            face = mono[:j] + mono[j + 1 :]
            out[face] = out.get(face, 0) + (-1) ** j * c
    return ExteriorElement(out)


@dataclass
class OsContext:
    """A simple matroid together with what is needed to compute in A(M)."""

    matroid: Matroid
    catalog: NbcCatalog = field(init=False)
    circuits: tuple[tuple[int, ...], ...] = field(init=False)
    _broken: list[int] = field(init=False, repr=False)
    _nbc: set[int] = field(init=False, repr=False)
    _cache: dict[Monomial, ExteriorElement] = field(init=False, repr=False, default_factory=dict)

    def __post_init__(self):
        m = self.matroid
        if not is_simple(m):
            raise MatroidError("the Orlik–Solomon context needs a simple matroid; call simplify() first")
        self.catalog = nbc_sets(m)
        self.circuits = m.circuits
        self._broken = broken_circuit_masks(m)
        self._nbc = {to_mask(s) for s in self.catalog.sets}

    def is_nbc(self, mono: Monomial) -> bool:
        return to_mask(mono) in self._nbc

    def is_dependent(self, mono: Monomial) -> bool:
        mask = to_mask(mono)
        return self.matroid.rank_of_mask(mask) < popcount(mask)

    def _rewrite_step(self, mono: Monomial) -> dict[Monomial, int]:
        """One use of a boundary relation: ω_I as a combination of glex-smaller monomials."""
        mask = to_mask(mono)
        witness = min(
            (b for b in self._broken if b & mask == b), key=lambda b: glex_key(to_set(b))
        )
        circuit = next(c for c in self.matroid.circuit_masks if c & (c - 1) == witness)
        m_elem = to_set(circuit & -circuit)[0]
        full = tuple(sorted(mono + (m_elem,)))
        p = full.index(m_elem)
        # 0 = ∂e_full = Σ_j (-1)^j e_{full - full[j]}; solve for the j = p term
        out = {}
        for j in range(len(full)):
            if j == p:
                continue
            face = full[:j] + full[j + 1 :]
            out[face] = -1 if (j - p) % 2 == 0 else 1
        return out

    def normal_form(self, mono: Monomial) -> ExteriorElement:
        mono = tuple(mono)
        cached = self._cache.get(mono)
        if cached is not None:
            return cached
        result: dict[Monomial, Fraction] = {}
        work: dict[Monomial, Fraction] = {mono: Fraction(1)}
        while work:
            top = max(work, key=glex_key)
            c = work.pop(top)
            if not c:
                continue
            if self.is_nbc(top):
                result[top] = result.get(top, 0) + c
            elif self.is_dependent(top):
                continue
            else:
                for face, s in self._rewrite_step(top).items():
                    work[face] = work.get(face, 0) + s * c
        nf = ExteriorElement(result)
        self._cache[mono] = nf
        return nf

    def reduce(self, a: ExteriorElement) -> ExteriorElement:
        out = ExteriorElement()
        for mono, c in a.terms.items():
            out = out + self.normal_form(mono) * c
        return out


def reduce_to_nbc(ctx: OsContext, a: ExteriorElement) -> ExteriorElement:
    """The representative of ``a`` modulo I(M) supported on nbc-monomials."""
    return ctx.reduce(a)


def os_dimensions(ctx: OsContext) -> tuple[dict[tuple[int, ...], int], dict[int, int]]:
    """(dimension per flat, dimension per degree), checked against |μ(∅, X)|."""
    m = ctx.matroid
    per_flat = {}
    per_degree: dict[int, int] = {}
    for entry in flat_lattice(m):
        count = ctx.catalog.count(entry.flat)
        expected = (-1) ** entry.rank * entry.mobius
        if count != expected:
            raise CrossCheckError(
                f"flat {entry.flat}: {count} nbc-sets but (-1)^r μ = {expected}"
            )
        per_flat[entry.flat] = count
        per_degree[entry.rank] = per_degree.get(entry.rank, 0) + count
    return per_flat, per_degree


def hilbert_series(ctx: OsContext, var: str = "t") -> Polynomial:
    """Σ dim A^k t^k, checked against (-t)^r χ(M; -1/t)."""
    _, per_degree = os_dimensions(ctx)
    series = Polynomial.univariate(per_degree, var)
    chi = char_poly(ctx.matroid).coefficients()
    r = ctx.matroid.r
    # (-t)^r χ(-1/t) = Σ_d c_d (-1)^r (-1)^d t^(r-d)
    via_chi = Polynomial.univariate(
        {r - d: c * (-1) ** (r + d) for d, c in chi.items()}, var
    )
    if series != via_chi:
        raise CrossCheckError(f"Hilbert series {series} differs from (-t)^r χ(-1/t) = {via_chi}")
    return series


@dataclass(frozen=True)
class DegreeOneMapReport:
    """Outcome of checking a degree-1 substitution between two Orlik–Solomon algebras."""

    homomorphism: bool
    surjective: bool
    hilbert_match: bool
    failing_circuits: tuple[tuple[int, ...], ...] = ()

    @property
    def isomorphism(self) -> bool:
        return self.homomorphism and self.surjective and self.hilbert_match

    def __bool__(self):
        return self.homomorphism


def verify_degree1_map(
    src: OsContext, dst: OsContext, images: Mapping[int, ExteriorElement]
) -> DegreeOneMapReport:
    """Check that e_i -> images[i] carries I(src) into I(dst).

    The map is extended multiplicatively; it respects the ideals iff every
    ∂e_C for a circuit C of ``src`` maps to zero in A(dst).  Surjectivity in
    degree 1 and equality of Hilbert series are reported alongside.
    """
    n = src.matroid.n
    missing = [i for i in range(1, n + 1) if i not in images]
    if missing:
        raise MatroidError(f"no image given for elements {missing}")
    for i, img in images.items():
        if not img.is_zero() and img.grades() != {1}:
            raise MatroidError(f"image of e{i} is not of degree 1: {img}")
    failing = []
    for circuit in src.circuits:
        mapped = ExteriorElement()
        for j in range(len(circuit)):
            face = circuit[:j] + circuit[j + 1 :]
            mapped = mapped + wedge_all(images[e] for e in face) * ((-1) ** j)
        if not dst.reduce(mapped).is_zero():
            failing.append(circuit)
    m = dst.matroid.n
    rows = [[images[i].terms.get((k,), Fraction(0)) for k in range(1, m + 1)] for i in range(1, n + 1)]
    surjective = rational_rank(rows) == m
    hilbert_match = hilbert_series(src) == hilbert_series(dst)
    return DegreeOneMapReport(not failing, surjective, hilbert_match, tuple(failing))


def ideal_dimension_oracle(m: Matroid, k: int) -> int:
    """dim A^k(M) from linear algebra in Λ^k: C(n, k) minus the rank of I(M) ∩ Λ^k.

    I(M) ∩ Λ^k is spanned by e_S ∧ ∂e_C over circuits C and monomials S with
    |S| + |C| - 1 = k.  Independent of the nbc machinery.
    """
    n = m.n
    columns = {mono: i for i, mono in enumerate(combinations(range(1, n + 1), k))}
    rows = []
    for circuit in m.circuits:
        size = k - (len(circuit) - 1)
        if size < 0:
            continue
        gen = boundary(ExteriorElement.monomial(*circuit))
        for s in combinations(range(1, n + 1), size):
            prod = wedge(ExteriorElement.monomial(*s), gen)
            if prod.is_zero():
                continue
            row = [Fraction(0)] * len(columns)
            for mono, c in prod.terms.items():
                row[columns[mono]] = c
            rows.append(row)
    return len(columns) - rational_rank(rows)
