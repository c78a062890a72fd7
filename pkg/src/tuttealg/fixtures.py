"""Named matroids and graphs used throughout the tests and the CLI."""

from __future__ import annotations

from .matroid import GraphInput, Matroid, from_circuits, from_graph, paving_matroid, uniform

# K4 with edges numbered so that its triangles are 123, 156, 246, 345
K4_GRAPH = GraphInput(4, ((1, 2), (2, 3), (1, 3), (3, 4), (1, 4), (2, 4)))
TRIANGLE = GraphInput(3, ((1, 2), (2, 3), (1, 3)))

K_CIRCUITS = ((1, 2, 3), (1, 5, 6), (2, 4, 6), (3, 4, 5))


def K() -> Matroid:
    """Rank-3 simple matroid with 3-point lines 123, 156, 246, 345 (the cycle matroid of K4)."""
    return from_circuits(6, K_CIRCUITS)


def M1() -> Matroid:
    """Six points in rank 3 with two disjoint 3-point lines 123 and 456."""
    return from_circuits(6, [(1, 2, 3), (4, 5, 6)], rank=3)


def M2() -> Matroid:
    """Six points in rank 3 with 3-point lines 123 and 345 meeting in 3."""
    return from_circuits(6, [(1, 2, 3), (3, 4, 5)], rank=3)


def P() -> Matroid:
    """A 4-point line 1234 and a 3-point line 456 meeting at 4."""
    return paving_matroid(6, 3, [(1, 2, 3, 4), (4, 5, 6)])


def Q() -> Matroid:
    """K with a seventh element parallel to 3."""
    return from_circuits(7, K_CIRCUITS + ((3, 7), (1, 2, 7), (4, 5, 7)), rank=3)


def L() -> Matroid:
    """A 4-point line 1234 and a 3-point line 156 with 7 parallel to 6."""
    return from_circuits(
        7, [(1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4), (1, 5, 6), (6, 7), (1, 5, 7)], rank=3
    )


def P1() -> Matroid:
    """Rank-3 sparse paving on 1..7 with copoints 123, 145, 356, 467."""
    return paving_matroid(7, 3, [(1, 2, 3), (1, 4, 5), (3, 5, 6), (4, 6, 7)])


def P2() -> Matroid:
    """Rank-3 sparse paving on 1..7 with copoints 123, 145, 356, 167."""
    return paving_matroid(7, 3, [(1, 2, 3), (1, 4, 5), (3, 5, 6), (1, 6, 7)])


def MK4() -> Matroid:
    return from_graph(K4_GRAPH)


NAMED = {
    "K": K,
    "M1": M1,
    "M2": M2,
    "P": P,
    "Q": Q,
    "L": L,
    "P1": P1,
    "P2": P2,
    "MK4": MK4,
}

# Freedom-matroid syzygy from the pair Q, L: G(Q) - G(L) = 24 times this vector
QL_SYZYGY = {"1010100": 1, "1011000": -1, "1100100": -1, "1101000": 1}
QL_FREEDOM_RELATION = {"1010100": 1, "1011000": -1, "1100100": -1, "1101000": 2, "1110000": -1}


def corpus() -> dict[str, Matroid]:
    """Small matroids (n <= 8) covering every constructor."""
    from .ginvariant import freedom_matroid
    from .matroid import direct_sum, dual

    k = K()
    return {
        "U13": uniform(1, 3),
        "U24": uniform(2, 4),
        "U36": uniform(3, 6),
        "U02": uniform(0, 2),
        "K": k,
        "K*": dual(k),
        "M1": M1(),
        "M2": M2(),
        "P": P(),
        "P*": dual(P()),
        "Q": Q(),
        "L": L(),
        "U23+U13": direct_sum(uniform(2, 3), uniform(1, 3)),
        "U12+U11+loop": direct_sum(direct_sum(uniform(1, 2), uniform(1, 1)), uniform(0, 1)),
        "F(110100)": freedom_matroid("110100"),
        "F(0101100)": freedom_matroid("0101100"),
        "F(10101000)": freedom_matroid("10101000"),
    }
