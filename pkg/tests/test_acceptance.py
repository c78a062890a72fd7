"""Acceptance suite: one PASS/FAIL line per criterion.

Run with ``pytest tests/test_acceptance.py`` (lines are repeated in the
terminal summary) or directly with ``python tests/test_acceptance.py``.
Time limits are wall-clock and measured with cold caches.
"""

import itertools
import random
import sys
import time
from fractions import Fraction
from math import factorial
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from tuttealg import clear_caches
from tuttealg.coalgebra import sample_points, verify_chromatic_convolution, verify_R_convolution
from tuttealg.fixtures import QL_FREEDOM_RELATION, QL_SYZYGY, K, M1, M2, MK4, P, corpus
from tuttealg.ginvariant import (
    SymbolVector,
    all_sequences,
    freedom_matroid,
    freedom_matroid_incremental,
    freedom_tutte,
    freedom_tutte_relation,
    g_dual,
    g_invariant,
    g_invariant_chains,
    g_invariant_permutations,
    paving_g,
    sparse_paving_g,
    specialize_to_tutte,
    tutte_in_freedom_basis,
    tutte_span_dimension,
    verify_syzygy,
)
from tuttealg.matroid import GraphInput, dual
from tuttealg.nbc import char_poly_mobius, char_poly_whitney, nbc_sets
from tuttealg.orlik_solomon import (
    ExteriorElement,
    OsContext,
    boundary,
    hilbert_series,
    os_dimensions,
    reduce_to_nbc,
    verify_degree1_map,
    wedge,
)
from tuttealg.polynomial import Polynomial, univariate
from tuttealg.tutte import (
    tutte,
    tutte_activities,
    tutte_deletion_contraction,
    tutte_subset_expansion,
)

RESULTS: dict[int, str] = {}


def record(number, title, checks, elapsed=None, limit=None):
    """Print and store the outcome line; fail the test when any check is false."""
    failed = [name for name, ok in checks if not ok]
    if limit is not None and elapsed > limit:
        failed.append(f"took {elapsed:.2f} s, limit {limit} s")
    timing = f" [{elapsed:.2f} s" + (f" / {limit} s]" if limit else "]") if elapsed is not None else ""
    status = "PASS" if not failed else "FAIL"
    line = f"criterion {number:2d}: {status}  {title}{timing}"
    if failed:
        line += "  -- " + "; ".join(failed)
    RESULTS[number] = line
    print(line)
    assert not failed, line


def timed(fn):
    clear_caches()
    start = time.perf_counter()
    value = fn()
    return value, time.perf_counter() - start


def e(*elems):
    return ExteriorElement.monomial(*elems)


# 1 ---------------------------------------------------------------------------------


def test_criterion_01_char_poly_of_k():
    expected = "λ^3 - 6λ^2 + 11λ - 6"
    (mob, whit), elapsed = timed(lambda: (char_poly_mobius(K()), char_poly_whitney(K())))
    record(1, "χ(K) by Möbius sum and by nbc counts", [
        ("Möbius", str(mob) == expected),
        ("nbc count", str(whit) == expected),
    ], elapsed, 1.0)


# 2 ---------------------------------------------------------------------------------


def test_criterion_02_nbc_catalog_of_k():
    cat = nbc_sets(K())
    top = cat.of_size(3)
    record(2, "nbc catalog of K", [
        ("sizes", cat.whitney_numbers() == [1, 6, 11, 6]),
        ("size-3 sets", set(top) == {(1, 2, 4), (1, 2, 5), (1, 2, 6), (1, 3, 4), (1, 3, 5), (1, 3, 6)}),
        ("contain 1", all(1 in s for s in top)),
    ])


# 3 ---------------------------------------------------------------------------------


def test_criterion_03_orlik_solomon_of_k():
    ctx = OsContext(K())
    per_flat, _ = os_dimensions(ctx)
    h = hilbert_series(ctx)
    t = Polynomial.variable("t", ("t",))
    chi = char_poly_mobius(K())
    via_chi = sum((-t) ** (3 - k) * c for (k,), c in chi.terms.items())  # (-t)^3 χ(-1/t)
    record(3, "A(K): flat dimensions, Hilbert series, ω23 normal form", [
        ("dim A^123 = 2", per_flat[(1, 2, 3)] == 2),
        ("dim A^E = 6", per_flat[(1, 2, 3, 4, 5, 6)] == 6),
        ("H = 1+6t+11t²+6t³", h == univariate({0: 1, 1: 6, 2: 11, 3: 6}, "t")),
        ("H = (-t)^3 χ(-1/t)", h == via_chi),
        ("ω23 -> ω13 - ω12", reduce_to_nbc(ctx, e(2, 3)) == e(1, 3) - e(1, 2)),
    ])


# 4 ---------------------------------------------------------------------------------


def test_criterion_04_six_points():
    images = {i: e(i) for i in (1, 2, 3, 6)}
    images[4] = e(3) - e(5) + e(6)
    images[5] = e(4) - e(5) + e(6)
    report = verify_degree1_map(OsContext(M1()), OsContext(M2()), images)
    expected = "λ^3 - 6λ^2 + 13λ - 8"
    record(4, "six points: equal χ and the degree-one isomorphism Φ", [
        ("χ(M1)", str(char_poly_mobius(M1())) == expected),
        ("χ(M2)", str(char_poly_mobius(M2())) == expected),
        ("Φ respects ideals", report.homomorphism),
        ("Hilbert match", report.hilbert_match),
    ])


# 5 ---------------------------------------------------------------------------------


def test_criterion_05_g_of_k4():
    expected = SymbolVector(6, 3, {"111000": 576, "110100": 144})
    m = MK4()
    (brute, dp, closed), elapsed = timed(
        lambda: (g_invariant_permutations(m), g_invariant_chains(m), sparse_paving_g(6, 3, 4))
    )
    record(5, "G(M(K4)) by permutations, chain DP and sparse-paving form", [
        ("permutations", brute == expected),
        ("chain DP", dp == expected),
        ("closed form", closed == expected),
    ], elapsed, 5.0)


# 6 ---------------------------------------------------------------------------------


def test_criterion_06_g_of_p():
    expected = SymbolVector(6, 3, {"110010": 48, "110100": 132, "111000": 540})
    record(6, "G(P) by general computation and paving form", [
        ("general", g_invariant(P(), "both") == expected),
        ("closed form", paving_g(6, 3, [(1, 2, 3, 4), (4, 5, 6)]) == expected),
    ])


# 7 ---------------------------------------------------------------------------------


def test_criterion_07_specialization_on_corpus():
    fixtures = corpus()

    def run():
        return {name: specialize_to_tutte(g_invariant(m)) == tutte(m) for name, m in fixtures.items()}

    outcome, elapsed = timed(run)
    record(7, f"Sp(G(M)) = T(M) on {len(fixtures)} matroids with n <= 8", [
        (f"{name}", ok) for name, ok in outcome.items()
    ] + [("corpus size >= 12", len(fixtures) >= 12), ("n <= 8", all(m.n <= 8 for m in fixtures.values()))],
        elapsed, 60.0)


# 8 ---------------------------------------------------------------------------------


def test_criterion_08_k4_in_freedom_basis():
    coeffs = tutte_in_freedom_basis(MK4())
    x_y = ("x", "y")
    recombined = sum((freedom_tutte(s) * c for s, c in coeffs.items()), Polynomial({}, x_y))
    record(8, "T(M(K4)) = -3 T(F(111000)) + 4 T(F(110100))", [
        ("coefficients", coeffs == {"111000": -3, "110100": 4}),
        ("recombination", recombined == tutte(MK4())),
    ])


# 9 ---------------------------------------------------------------------------------


def test_criterion_09_syzygy_and_relation():
    record(9, "kernel vector and five-term freedom relation", [
        ("syzygy", verify_syzygy(SymbolVector(7, 3, QL_SYZYGY))),
        ("relation", freedom_tutte_relation(QL_FREEDOM_RELATION)),
        ("coefficients (1,-1,-1,2,-1)", [QL_FREEDOM_RELATION[s] for s in sorted(QL_FREEDOM_RELATION)] == [1, -1, -1, 2, -1]),
    ])


# 10 --------------------------------------------------------------------------------


def test_criterion_10_span_dimensions():
    (d63, d73), elapsed = timed(lambda: (tutte_span_dimension(6, 3), tutte_span_dimension(7, 3)))
    record(10, "dim T(6,3) = 10 and dim T(7,3) = 13", [
        ("(6,3)", d63 == 10 == 3 * 3 + 1),
        ("(7,3)", d73 == 13 == 3 * 4 + 1),
    ], elapsed, 60.0)


# 11 --------------------------------------------------------------------------------


def _swap(p):
    return Polynomial({(j, i): c for (i, j), c in p.terms.items()}, ("x", "y"))


def _random_element(rng, grade):
    out = ExteriorElement()
    for _ in range(3):
        mono = tuple(sorted(rng.sample(range(1, 9), grade)))
        out = out + e(*mono) * Fraction(rng.randint(-5, 5), rng.randint(1, 3))
    return out


def test_criterion_11_property_suite():
    checks = []
    for name, m in corpus().items():
        g = g_invariant(m)
        top = "1" * m.r + "0" * (m.n - m.r)
        t = tutte_subset_expansion(m)
        checks += [
            (f"{name}: Σg = n!", g.total == factorial(m.n)),
            (f"{name}: g_top = r!(n-r)!b", g[top] == factorial(m.r) * factorial(m.n - m.r) * m.num_bases),
            (f"{name}: T(M*) = T(M; y, x)", tutte(dual(m)) == _swap(t)),
            (f"{name}: three Tutte methods", t == tutte_deletion_contraction(m) == tutte_activities(m)),
            (f"{name}: g_dual", g_dual(g) == g_invariant(dual(m))),
        ]
    rng = random.Random(20240917)
    dd = deriv = True
    for _ in range(100):
        p, q = rng.randint(0, 4), rng.randint(0, 4)
        a, b = _random_element(rng, p), _random_element(rng, q)
        dd &= boundary(boundary(a)).is_zero()
        deriv &= boundary(wedge(a, b)) == wedge(boundary(a), b) + wedge(a, boundary(b)) * (-1) ** p
    checks += [("∂∂ = 0 on 100 random elements", dd), ("derivation law on 100 random pairs", deriv)]
    record(11, "property suite on the corpus and 100 random exterior elements", checks)


# 12 --------------------------------------------------------------------------------


def _graphs_up_to_isomorphism(v):
    pairs = list(itertools.combinations(range(1, v + 1), 2))
    seen = set()
    for k in range(len(pairs) + 1):
        for edges in itertools.combinations(pairs, k):
            key = min(
                tuple(sorted(tuple(sorted((p[a - 1], p[b - 1]))) for a, b in edges))
                for p in itertools.permutations(range(1, v + 1))
            )
            if key not in seen:
                seen.add(key)
                yield GraphInput(v, edges)


def test_criterion_12_convolutions():
    samples = sample_points(10, 4)
    checks = []
    for name, m in corpus().items():
        checks.append((f"{name}: numeric", verify_R_convolution(m, samples)))
        if m.n <= 6:
            checks.append((f"{name}: symbolic", verify_R_convolution(m, symbolic=True)))
    count = 0
    for v in range(1, 6):
        for g in _graphs_up_to_isomorphism(v):
            count += 1
            checks.append((f"graph {g.edges} on {v}", verify_chromatic_convolution(g, symbolic=True)))
    record(12, f"R-convolution on the corpus, chromatic convolution on {count} graphs (<= 5 vertices)", checks)


# 13 --------------------------------------------------------------------------------


def test_criterion_13_freedom_characterization():
    checks = []
    total = 0
    for n in range(8):
        for r in range(n + 1):
            for s in all_sequences(n, r):
                total += 1
                if freedom_matroid(s) != freedom_matroid_incremental(s):
                    checks.append((s, False))
    checks.append((f"{total} sequences", True))
    record(13, f"basis rule c_j >= b_j equals incremental construction ({total} sequences, n <= 7)", checks)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-s"]))
