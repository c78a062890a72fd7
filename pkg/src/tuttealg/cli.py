"""Command-line interface: ``tuttealg <subcommand> [flags] MATROID``.

MATROID is a path to a JSON document, ``-`` for stdin, or ``@NAME`` for a
built-in fixture (K, M1, M2, P, Q, L, MK4; graphs K4 and TRIANGLE).
Exit status: 0 success, 1 input error, 2 cross-check failure.
"""

from __future__ import annotations

import argparse
import contextlib
import json
import re
import sys
from fractions import Fraction
from typing import Any, Callable

from . import fixtures
from .coalgebra import DEFAULT_SEED, comultiply, sample_points, verify_chromatic_convolution, verify_R_convolution
from .documents import DocumentError, parse, parse_graph
from .errors import CrossCheckError, MatroidError
from .ginvariant import (
    SymbolVector,
    all_sequences,
    check_sequence,
    f_invariant_truncated,
    freedom_expansion,
    freedom_tutte_relation,
    g_dual,
    g_from_paving_matroid,
    g_invariant,
    specialize_to_tutte,
    tutte_in_freedom_basis,
    tutte_span_dimension,
    verify_syzygy,
)
from .matroid import GraphInput, Matroid, is_simple, uniform
from .nbc import char_poly, nbc_sets
from .orlik_solomon import ExteriorElement, OsContext, hilbert_series, os_dimensions, reduce_to_nbc
from .polynomial import Polynomial
from .tutte import METHODS, tutte, tutte_all

GRAPHS = {"K4": fixtures.K4_GRAPH, "TRIANGLE": fixtures.TRIANGLE}


class Result:
    """Text lines for humans plus a JSON-ready payload."""

    def __init__(self, text: str | list[str], data: Any, ok: bool = True):
        self.lines = [text] if isinstance(text, str) else list(text)
        self.data = data
        self.ok = ok


# -- inputs ----------------------------------------------------------------------


def _read(source: str) -> str:
    if source == "-":
        return sys.stdin.read()
    try:
        with open(source, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise DocumentError(f"cannot read {source}: {exc.strerror}") from None


def load_matroid(source: str) -> Matroid:
    if source.startswith("@"):
        name = source[1:]
        if name in fixtures.NAMED:
            return fixtures.NAMED[name]()
        if name in GRAPHS:
            from .matroid import from_graph

            return from_graph(GRAPHS[name])
        raise DocumentError(f"unknown fixture {name!r}")
    return parse(_read(source))


def load_graph(source: str) -> GraphInput:
    if source.startswith("@"):
        try:
            return GRAPHS[source[1:]]
        except KeyError:
            raise DocumentError(f"unknown graph fixture {source[1:]!r}") from None
    return parse_graph(_read(source))


_TERM = re.compile(r"\s*([+-])?\s*(?:(\d+(?:/\d+)?)\s*\*?\s*)?(e(?:\d|\{\d+\})+|1)\s*")


def parse_element(text: str) -> ExteriorElement:
    """Parse e.g. ``e23``, ``e13 - e12`` or ``2*e1{10} + 1/2*e4``."""
    pos = 0
    terms: dict[tuple[int, ...], Fraction] = {}
    text = text.strip()
    if not text:
        raise DocumentError("empty exterior element")
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or (pos and not m.group(1)):
            raise DocumentError(f"cannot parse exterior element at position {pos}: {text[pos:]!r}")
        sign = -1 if m.group(1) == "-" else 1
        coeff = Fraction(m.group(2)) if m.group(2) else Fraction(1)
        name = m.group(3)
        mono = () if name == "1" else tuple(int(a or b) for a, b in re.findall(r"\{(\d+)\}|(\d)", name[1:]))
        terms[mono] = terms.get(mono, 0) + sign * coeff
        pos = m.end()
    # repeated labels square to zero; ExteriorElement drops them
    return ExteriorElement(terms)


_SYMBOL = re.compile(r"\s*([+-])?\s*(\d+(?:/\d+)?)?\s*\*?\s*\[([01]+)\]\s*")


def parse_symbols(text: str) -> dict[str, Fraction]:
    """Parse e.g. ``[1010100] - [1011000] + 2 [1101000]``."""
    pos = 0
    out: dict[str, Fraction] = {}
    text = text.strip()
    while pos < len(text):
        m = _SYMBOL.match(text, pos)
        if not m or (pos and not m.group(1)):
            raise DocumentError(f"cannot parse symbol vector at position {pos}: {text[pos:]!r}")
        sign = -1 if m.group(1) == "-" else 1
        coeff = Fraction(m.group(2)) if m.group(2) else Fraction(1)
        out[m.group(3)] = out.get(m.group(3), 0) + sign * coeff
        pos = m.end()
    if not out:
        raise DocumentError("empty symbol vector")
    return out


def _vector(coeffs: dict[str, Fraction]) -> SymbolVector:
    seqs = list(coeffs)
    n, r = len(seqs[0]), seqs[0].count("1")
    return SymbolVector(n, r, coeffs)


# -- JSON helpers -------------------------------------------------------------------


def _num(c) -> int | str:
    c = Fraction(c)
    return c.numerator if c.denominator == 1 else str(c)


def poly_json(p: Polynomial) -> dict:
    return {
        "text": str(p),
        "variables": list(p.variables),
        "terms": [[list(e), _num(c)] for e, c in sorted(p.terms.items(), reverse=True)],
    }


def symbols_json(v: SymbolVector) -> dict:
    return {
        "text": str(v),
        "n": v.n,
        "r": v.r,
        "coefficients": {s: _num(v[s]) for s in v.support()},
    }


def describe(m: Matroid) -> str:
    if m.num_bases and m == uniform(m.r, m.n):
        return f"U{m.r},{m.n}"
    return "M(" + ",".join("".join(map(str, b)) or "∅" for b in m.bases) + f"; n={m.n})"


def _fmt_set(s) -> str:
    return "".join(str(e) if e < 10 else f"{{{e}}}" for e in s) or "∅"


# -- subcommands ---------------------------------------------------------------------


def cmd_charpoly(args) -> Result:
    p = char_poly(load_matroid(args.matroid))
    return Result(str(p), poly_json(p))


def cmd_tutte(args) -> Result:
    m = load_matroid(args.matroid)
    if args.method == "all":
        results = tutte_all(m)
        lines = [f"{name}: {p}" for name, p in results.items()] + ["methods agree"]
        return Result(lines, {"methods": {k: poly_json(p) for k, p in results.items()}, "agree": True})
    p = tutte(m, args.method)
    return Result(str(p), poly_json(p))


def cmd_nbc(args) -> Result:
    m = load_matroid(args.matroid)
    cat = nbc_sets(m)
    data = {
        "whitney_numbers": cat.whitney_numbers(),
        "sets": [list(s) for s in cat.sets],
    }
    lines = ["whitney numbers: " + " ".join(map(str, cat.whitney_numbers()))]
    if args.by_flat:
        groups = sorted(cat.by_flat.items(), key=lambda kv: (len(kv[0]), kv[0]))
        data["by_flat"] = [{"flat": list(f), "sets": [list(s) for s in sets]} for f, sets in groups]
        for f, sets in groups:
            lines.append(f"{_fmt_set(f)}: " + " ".join(_fmt_set(s) for s in sets))
    else:
        for k in range(len(cat.whitney_numbers())):
            lines.append(f"size {k}: " + " ".join(_fmt_set(s) for s in cat.of_size(k)))
    return Result(lines, data)


def _os_context(source: str) -> OsContext:
    m = load_matroid(source)
    if not is_simple(m):
        raise MatroidError("Orlik–Solomon commands need a simple matroid (no loops or parallel elements)")
    return OsContext(m)


def cmd_os_hilbert(args) -> Result:
    h = hilbert_series(_os_context(args.matroid))
    return Result(str(h), poly_json(h))


def cmd_os_dims(args) -> Result:
    per_flat, per_degree = os_dimensions(_os_context(args.matroid))
    flats = sorted(per_flat.items(), key=lambda kv: (len(kv[0]), kv[0]))
    lines = ["by degree: " + " ".join(str(per_degree[k]) for k in sorted(per_degree))]
    lines += [f"{_fmt_set(f)}: {d}" for f, d in flats]
    data = {
        "by_degree": [per_degree[k] for k in sorted(per_degree)],
        "by_flat": [{"flat": list(f), "dim": d} for f, d in flats],
    }
    return Result(lines, data)


def cmd_os_reduce(args) -> Result:
    ctx = _os_context(args.matroid)
    a = parse_element(args.element)
    bad = [e for mono in a.terms for e in mono if not 1 <= e <= ctx.matroid.n]
    if bad:
        raise DocumentError(f"element labels {sorted(set(bad))} outside 1..{ctx.matroid.n}")
    nf = reduce_to_nbc(ctx, a)
    data = {"text": str(nf), "terms": [[list(mono), _num(c)] for mono, c in nf.terms.items()]}
    return Result(str(nf), data)


def cmd_g_invariant(args) -> Result:
    m = load_matroid(args.matroid)
    g = g_invariant(m, args.method)
    data = {"g": symbols_json(g)}
    lines = [str(g)]
    if args.closed_form:
        closed = g_from_paving_matroid(m)
        agree = closed == g
        data["closed_form"] = symbols_json(closed)
        data["agree"] = agree
        lines.append(f"closed form: {closed}")
        if not agree:
            raise CrossCheckError(f"paving closed form {closed} differs from {g}")
        lines.append("closed form agrees")
    return Result(lines, data)


def cmd_specialize(args) -> Result:
    m = load_matroid(args.matroid)
    p = specialize_to_tutte(g_invariant(m))
    return Result(str(p), poly_json(p))


def cmd_g_dual(args) -> Result:
    g = g_dual(g_invariant(load_matroid(args.matroid)))
    return Result(str(g), symbols_json(g))


def cmd_freedom_expand(args) -> Result:
    exp = freedom_expansion(args.n, args.r)
    lines = []
    data = {}
    for s in all_sequences(args.n, args.r):
        vec = exp[s]
        text = " + ".join(f"({_num(c)}) G(F({t}))" for t, c in sorted(vec.coefficients.items(), reverse=True))
        lines.append(f"[{s}] = {text}")
        data[s] = {t: _num(c) for t, c in vec.coefficients.items()}
    return Result(lines, data)


def cmd_tutte_freedom_basis(args) -> Result:
    coords = tutte_in_freedom_basis(load_matroid(args.matroid))
    order = sorted(coords, reverse=True)
    lines = [f"{t}: {_num(coords[t])}" for t in order]
    return Result(lines, {t: _num(coords[t]) for t in order})


def cmd_span_dim(args) -> Result:
    d = tutte_span_dimension(args.n, args.r)
    return Result(str(d), {"n": args.n, "r": args.r, "dimension": d})


def cmd_verify_syzygy(args) -> Result:
    text = args.vector or " ".join(f"{c:+d} [{s}]" for s, c in fixtures.QL_SYZYGY.items())
    coeffs = parse_symbols(text)
    for s in coeffs:
        check_sequence(s)
    if args.tutte_relation:
        ok = freedom_tutte_relation(coeffs)
        return Result(f"tutte relation holds: {str(ok).lower()}", {"holds": ok}, ok)
    vec = _vector(coeffs)
    ok = verify_syzygy(vec)
    return Result(f"{vec}\nsyzygy: {str(ok).lower()}".split("\n"), {"vector": symbols_json(vec), "syzygy": ok}, ok)


def cmd_f_invariant(args) -> Result:
    counts = f_invariant_truncated(load_matroid(args.matroid), args.max_value)
    items = sorted(counts.items(), reverse=True)
    lines = [f"{c} " + " ".join(f"x{i}^{a}" for i, a in enumerate(e, 1) if a) for e, c in items]
    return Result(lines, {"terms": [[list(e), c] for e, c in items]})


def cmd_comultiply(args) -> Result:
    d = comultiply(load_matroid(args.matroid))
    lines = [f"{mult} {describe(a)} ⊗ {describe(b)}" for mult, (a, b) in d.items()]
    lines.append(f"total {d.total} over {len(d)} classes")
    data = {
        "terms": [
            {"multiplicity": mult, "left": [list(x) for x in a.bases], "left_n": a.n,
             "right": [list(x) for x in b.bases], "right_n": b.n}
            for mult, (a, b) in d.items()
        ],
        "total": d.total,
    }
    return Result(lines, data)


def cmd_verify_convolution(args) -> Result:
    m = load_matroid(args.matroid)
    samples = sample_points(args.samples, 4, args.seed)
    ok = verify_R_convolution(m, samples)
    data = {"numeric": ok, "samples": args.samples, "seed": args.seed}
    lines = [f"numeric ({args.samples} points, seed {args.seed}): {str(ok).lower()}"]
    if args.symbolic:
        sym = verify_R_convolution(m, symbolic=True)
        data["symbolic"] = sym
        lines.append(f"symbolic: {str(sym).lower()}")
        ok = ok and sym
    return Result(lines, data, ok)


def cmd_verify_chromatic(args) -> Result:
    g = load_graph(args.graph)
    samples = sample_points(args.samples, 2, args.seed)
    ok = verify_chromatic_convolution(g, samples)
    data = {"numeric": ok, "samples": args.samples, "seed": args.seed}
    lines = [f"numeric ({args.samples} points, seed {args.seed}): {str(ok).lower()}"]
    if args.symbolic:
        sym = verify_chromatic_convolution(g, symbolic=True)
        data["symbolic"] = sym
        lines.append(f"symbolic: {str(sym).lower()}")
        ok = ok and sym
    return Result(lines, data, ok)


# -- parser ------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tuttealg", description="Exact matroid invariants.")
    parser.add_argument("--format", choices=("text", "json"), default="text")
    sub = parser.add_subparsers(dest="command", metavar="SUBCOMMAND")

    def add(name: str, fn: Callable, help_: str, matroid: bool = True) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_)
        p.add_argument("--format", choices=("text", "json"), default=argparse.SUPPRESS)
        if matroid:
            p.add_argument("matroid", help="JSON document, '-' for stdin, or @NAME")
        p.set_defaults(func=fn)
        return p

    add("charpoly", cmd_charpoly, "characteristic polynomial")
    p = add("tutte", cmd_tutte, "Tutte polynomial")
    p.add_argument("--method", choices=METHODS + ("all",), default=None)
    p = add("nbc", cmd_nbc, "nbc-sets and Whitney numbers")
    p.add_argument("--by-flat", action="store_true")
    add("os-hilbert", cmd_os_hilbert, "Hilbert series of the Orlik–Solomon algebra")
    add("os-dims", cmd_os_dims, "Orlik–Solomon dimensions by degree and flat")
    p = add("os-reduce", cmd_os_reduce, "nbc normal form of an exterior element")
    p.add_argument("--element", required=True, help="e.g. 'e23' or 'e13 - 2*e12'")
    p = add("g-invariant", cmd_g_invariant, "G-invariant")
    p.add_argument("--method", choices=("chain-dp", "permutations", "both"), default="chain-dp")
    p.add_argument("--closed-form", action="store_true", help="compare with the paving closed form")
    add("specialize", cmd_specialize, "Tutte polynomial via the G-invariant")
    add("g-dual", cmd_g_dual, "G-invariant of the dual, from G")
    p = add("freedom-expand", cmd_freedom_expand, "symbols in the freedom basis", matroid=False)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    add("tutte-freedom-basis", cmd_tutte_freedom_basis, "Tutte polynomial as a combination of freedom matroids")
    p = add("span-dim", cmd_span_dim, "dimension of the Tutte span", matroid=False)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p = add("verify-syzygy", cmd_verify_syzygy, "check a symbol vector specializes to zero", matroid=False)
    p.add_argument("vector", nargs="?", help="e.g. '[1010100] - [1011000]'")
    p.add_argument("--tutte-relation", action="store_true",
                   help="read the coefficients as a relation among freedom Tutte polynomials")
    p = add("f-invariant", cmd_f_invariant, "truncated F-invariant")
    p.add_argument("--max-value", type=int, default=3)
    add("comultiply", cmd_comultiply, "restriction–contraction coproduct")
    p = add("verify-convolution", cmd_verify_convolution, "corank-nullity convolution identity")
    p.add_argument("--samples", type=int, default=10)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--symbolic", action="store_true")
    p = add("verify-chromatic", cmd_verify_chromatic, "chromatic convolution identity", matroid=False)
    p.add_argument("graph", help="graph document, '-' for stdin, or @K4 / @TRIANGLE")
    p.add_argument("--samples", type=int, default=5)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--symbolic", action="store_true")
    return parser


def run(argv: list[str], out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
            args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse has printed usage (and the error) already
        return 0 if exc.code == 0 else 1
    if not getattr(args, "func", None):
        parser.print_usage(err)
        return 1
    try:
        result = args.func(args)
    except CrossCheckError as exc:
        print(f"cross-check failed: {exc}", file=err)
        return 2
    except (MatroidError, ValueError, KeyError, TypeError) as exc:
        print(f"error: {exc}", file=err)
        return 1
    if args.format == "json":
        json.dump(result.data, out, ensure_ascii=False, sort_keys=False)
        out.write("\n")
    else:
        for line in result.lines:
            print(line, file=out)
    if not result.ok:
        print("verification failed", file=err)
        return 2
    return 0


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
