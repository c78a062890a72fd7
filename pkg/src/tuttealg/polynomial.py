"""Sparse multivariate polynomials with exact coefficients.

Coefficients are Python ints or :class:`fractions.Fraction`; a polynomial is a
map from exponent tuples to non-zero coefficients, tagged with the names of
its variables.  Univariate and bivariate polynomials are the one- and
two-variable cases of the same class.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping

Exponent = tuple[int, ...]


def _normalize(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c.numerator)
    return c


class Polynomial:
    __slots__ = ("variables", "_terms")

    def __init__(self, terms: Mapping[Exponent, Rational] | None = None, variables: Iterable[str] = ("x",)):
        self.variables = tuple(variables)
        k = len(self.variables)
        clean: dict[Exponent, Rational] = {}
        for exp, c in (terms or {}).items():
            if isinstance(exp, int):
                exp = (exp,)
            exp = tuple(exp)
            if len(exp) != k or any(e < 0 for e in exp):
                raise ValueError(f"bad exponent {exp!r} for variables {self.variables}")
            if c:
                clean[exp] = _normalize(clean.get(exp, 0) + c)
                if not clean[exp]:
                    del clean[exp]
        self._terms = clean

    # -- constructors -------------------------------------------------------

    @classmethod
    def constant(cls, c, variables: Iterable[str] = ("x",)) -> "Polynomial":
        variables = tuple(variables)
        return cls({(0,) * len(variables): c}, variables)

    @classmethod
    def variable(cls, name: str, variables: Iterable[str]) -> "Polynomial":
        variables = tuple(variables)
        i = variables.index(name)
        exp = tuple(1 if j == i else 0 for j in range(len(variables)))
        return cls({exp: 1}, variables)

    @classmethod
    def univariate(cls, coeffs: Mapping[int, Rational], var: str = "x") -> "Polynomial":
        return cls({(d,): c for d, c in coeffs.items()}, (var,))

    # -- access -------------------------------------------------------------

    @property
    def terms(self) -> dict[Exponent, Rational]:
        return dict(self._terms)

    def coeff(self, *exp: int):
        return self._terms.get(tuple(exp), 0)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=-1)

    def is_zero(self) -> bool:
        return not self._terms

    def is_integral(self) -> bool:
        return all(isinstance(c, int) for c in self._terms.values())

    def coefficients(self) -> dict[int, Rational]:
        """Degree -> coefficient map for a univariate polynomial."""
        if len(self.variables) != 1:
            raise ValueError("coefficients() needs a univariate polynomial")
        return {e[0]: c for e, c in self._terms.items()}

    def rename(self, *variables: str) -> "Polynomial":
        if len(variables) != len(self.variables):
            raise ValueError("wrong number of variable names")
        return Polynomial(self._terms, variables)

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.variables != self.variables:
                raise ValueError(f"variable mismatch: {self.variables} vs {other.variables}")
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(other, self.variables)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        return Polynomial(out, self.variables)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial({e: -c for e, c in self._terms.items()}, self.variables)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[Exponent, Rational] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Polynomial(out, self.variables)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = Polynomial.constant(1, self.variables)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.variables == other.variables and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == Polynomial.constant(other, self.variables)._terms
        return NotImplemented

    def __hash__(self):
        return hash((self.variables, frozenset(self._terms.items())))

    # -- evaluation ---------------------------------------------------------

    def __call__(self, *values):
        return self.evaluate(*values)

    def evaluate(self, *values):
        """Evaluate at numbers, or compose with polynomials sharing one variable set."""
        if len(values) != len(self.variables):
            raise ValueError("wrong number of arguments")
        if any(isinstance(v, Polynomial) for v in values):
            return self.substitute(*values)
        total = 0
        for exp, c in self._terms.items():
            term = c
            for v, e in zip(values, exp):
                if e:
                    term = term * v**e
            total += term
        return _normalize(Fraction(total)) if isinstance(total, Fraction) else total

    def substitute(self, *polys: "Polynomial") -> "Polynomial":
        """Compose: replace the i-th variable by ``polys[i]``."""
        target = next(p.variables for p in polys if isinstance(p, Polynomial))
        polys = tuple(p if isinstance(p, Polynomial) else Polynomial.constant(p, target) for p in polys)
        powers: list[dict[int, Polynomial]] = [{0: Polynomial.constant(1, target)} for _ in polys]

        def power(i: int, e: int) -> Polynomial:
            cache = powers[i]
            if e not in cache:
                cache[e] = power(i, e - 1) * polys[i]
            return cache[e]

        result = Polynomial({}, target)
        for exp, c in self._terms.items():
            term = Polynomial.constant(c, target)
            for i, e in enumerate(exp):
                if e:
                    term = term * power(i, e)
            result = result + term
        return result

    # -- printing -----------------------------------------------------------

    def sorted_terms(self) -> list[tuple[Exponent, Rational]]:
        """Terms in descending lexicographic exponent order."""
        return sorted(self._terms.items(), key=lambda t: t[0], reverse=True)

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for exp, c in self.sorted_terms():
            mono = "".join(
                v if e == 1 else f"{v}^{e}" for v, e in zip(self.variables, exp) if e
            )
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if not mono:
                body = str(a)
            elif a == 1:
                body = mono
            elif isinstance(a, Fraction):
                body = f"({a}){mono}"
            else:
                body = f"{a}{mono}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"Polynomial({str(self)!r}, variables={self.variables})"


def univariate(coeffs: Mapping[int, Rational], var: str = "x") -> Polynomial:
    return Polynomial.univariate(coeffs, var)


def bivariate(coeffs: Mapping[tuple[int, int], Rational], variables=("x", "y")) -> Polynomial:
    return Polynomial(coeffs, variables)
