"""Exact matroid invariants: characteristic and Tutte polynomials, Orlik–Solomon
algebras, the G-invariant and the restriction–contraction coalgebra."""

from .errors import CrossCheckError, GuardExceeded, MatroidError
from .polynomial import Polynomial
from .matroid import (
    FlatLattice,
    GraphInput,
    Matroid,
    canonical_key,
    closure,
    contraction,
    direct_sum,
    dual,
    flat_lattice,
    from_bases,
    from_circuits,
    from_graph,
    minor,
    paving_matroid,
    rank,
    restriction,
    simplify,
    uniform,
)
from .nbc import broken_circuits, char_poly, nbc_sets
from .orlik_solomon import (
    ExteriorElement,
    OsContext,
    boundary,
    hilbert_series,
    os_dimensions,
    reduce_to_nbc,
    verify_degree1_map,
    wedge,
)
from .tutte import chromatic_poly, corank_nullity, tutte
from .ginvariant import (
    SymbolVector,
    clear_caches,
    dominates,
    f_invariant_truncated,
    freedom_expansion,
    freedom_matroid,
    freedom_tutte_relation,
    g_dual,
    g_invariant,
    paving_g,
    specialize_to_tutte,
    sparse_paving_g,
    tutte_in_freedom_basis,
    tutte_span_dimension,
    verify_syzygy,
)
from .coalgebra import comultiply, verify_chromatic_convolution, verify_R_convolution
from .documents import parse, serialize

__version__ = "0.1.0"
