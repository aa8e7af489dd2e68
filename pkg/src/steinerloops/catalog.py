"""Built-in generators and named fixtures.

Fixture labels follow the package conventions: system points are 0-based,
so a point printed as P_i in the classical presentations appears here as
i - 1, and the hex labels 0..e of the order-15 system map to 0..14 in
reading order.
"""

from __future__ import annotations

import numpy as np

from .design_core import (
    SteinerLoop,
    TripleSystem,
    are_isomorphic,
    census,
    validate_system,
)
from .errors import UnknownKey
from .schreier import FactorSystem
from .steiner_operator import LatinSquare


def pg(n: int) -> TripleSystem:
    """Point-line design of the projective space of dimension n over GF(2):
    points are the nonzero (n+1)-bit vectors, lines are the xor-triples."""
    if n < 1:
        raise ValueError("projective dimension must be >= 1")
    m = (1 << (n + 1)) - 1
    triples = []
    for a in range(1, m + 1):
        for b in range(a + 1, m + 1):
            c = a ^ b
            if c > b:
                triples.append((a - 1, b - 1, c - 1))
    return TripleSystem(m, triples)


def ag(n: int) -> TripleSystem:
    """Point-line design of the affine space of dimension n over GF(3):
    points are base-3 vectors, lines are the zero-sum triples."""
    if n < 1:
        raise ValueError("affine dimension must be >= 1")
    v = 3**n

    def third(a, b):
        c = 0
        mult = 1
        for _ in range(n):
            c += (-(a % 3) - (b % 3)) % 3 * mult
            a //= 3
            b //= 3
            mult *= 3
        return c

    triples = []
    for a in range(v):
        for b in range(a + 1, v):
            c = third(a, b)
            if c > b:
                triples.append((a, b, c))
    return TripleSystem(v, triples)


# order-15 system #2 of the standard enumeration of the 80 order-15 systems
_STS15_2_TRIPLES = (
    (0, 1, 2), (0, 3, 4), (0, 5, 6), (0, 7, 8), (0, 9, 10), (0, 11, 12), (0, 13, 14),
    (1, 3, 5), (1, 4, 6), (1, 7, 9), (1, 8, 10), (1, 11, 13), (1, 12, 14),
    (2, 3, 6), (2, 4, 5), (2, 7, 10), (2, 8, 9), (2, 11, 14), (2, 12, 13),
    (3, 7, 11), (3, 8, 12), (3, 9, 13), (3, 10, 14),
    (4, 7, 12), (4, 8, 11), (4, 9, 14), (4, 10, 13),
    (5, 7, 14), (5, 8, 13), (5, 9, 12), (5, 10, 11),
    (6, 7, 13), (6, 8, 14), (6, 9, 11), (6, 10, 12),
)

# seven-point plane with the labeling used by the worked extension example
_FANO_LABELED_TRIPLES = (
    (0, 1, 2), (0, 3, 4), (0, 5, 6), (1, 3, 5), (1, 4, 6), (2, 3, 6), (2, 4, 5),
)

# nine-point affine plane with the grid labeling of the worked examples
_STS9_LABELED_TRIPLES = (
    (0, 1, 2), (3, 4, 5), (6, 7, 8),
    (0, 3, 6), (1, 4, 7), (2, 5, 8),
    (0, 4, 8), (1, 5, 6), (2, 3, 7),
    (2, 4, 6), (1, 3, 8), (0, 5, 7),
)

# multiplication table of the order-10 loop of the labeled nine-point system
_STS9_LOOP_TABLE = (
    (0, 1, 2, 3, 4, 5, 6, 7, 8, 9),
    (1, 0, 3, 2, 7, 9, 8, 4, 6, 5),
    (2, 3, 0, 1, 9, 8, 7, 6, 5, 4),
    (3, 2, 1, 0, 8, 7, 9, 5, 4, 6),
    (4, 7, 9, 8, 0, 6, 5, 1, 3, 2),
    (5, 9, 8, 7, 6, 0, 4, 3, 2, 1),
    (6, 8, 7, 9, 5, 4, 0, 2, 1, 3),
    (7, 4, 6, 5, 1, 3, 2, 0, 9, 8),
    (8, 6, 5, 4, 3, 2, 1, 9, 0, 7),
    (9, 5, 4, 6, 2, 1, 3, 8, 7, 0),
)

# chosen symmetric square with identity diagonal for the order-19 doubling
_PHI_11 = (
    (0, 7, 6, 5, 4, 9, 8, 2, 1, 3),
    (7, 0, 5, 6, 2, 8, 9, 4, 3, 1),
    (6, 5, 0, 7, 8, 2, 1, 3, 4, 9),
    (5, 6, 7, 0, 1, 3, 4, 9, 8, 2),
    (4, 2, 8, 1, 0, 5, 3, 7, 9, 6),
    (9, 8, 2, 3, 5, 0, 7, 1, 6, 4),
    (8, 9, 1, 4, 3, 7, 0, 6, 2, 5),
    (2, 4, 3, 9, 7, 1, 6, 0, 5, 8),
    (1, 3, 4, 8, 9, 6, 2, 5, 0, 7),
    (3, 1, 9, 2, 6, 4, 5, 8, 7, 0),
)

# the block forced by _PHI_11 in the order-19 doubling
_PHI_OM1 = (
    (0, 1, 2, 3, 4, 5, 6, 7, 8, 9),
    (8, 9, 6, 4, 3, 7, 2, 5, 0, 1),
    (7, 4, 5, 9, 1, 2, 8, 0, 6, 3),
    (9, 8, 7, 5, 6, 3, 4, 2, 1, 0),
    (4, 7, 8, 6, 0, 9, 3, 1, 2, 5),
    (3, 2, 1, 0, 5, 4, 9, 8, 7, 6),
    (2, 3, 0, 1, 9, 8, 7, 6, 5, 4),
    (1, 0, 3, 2, 7, 6, 5, 4, 9, 8),
    (6, 5, 4, 8, 2, 1, 0, 9, 3, 7),
    (5, 6, 9, 7, 8, 0, 1, 3, 4, 2),
)

# point permutation (465)(789) of the labeled nine-point system, 0-based
_BETA_465_789 = (0, 1, 2, 5, 3, 4, 7, 8, 6)


def _sts13_cyclic() -> TripleSystem:
    """Cyclic order-13 system developed from the base blocks {0,1,4}, {0,2,7}."""
    triples = set()
    for base in ((0, 1, 4), (0, 2, 7)):
        for s in range(13):
            triples.add(tuple(sorted((x + s) % 13 for x in base)))
    return TripleSystem(13, sorted(triples))


def _pasch_quads(s: TripleSystem):
    """All Pasch configurations as 4-sets of triple indices, sorted."""
    quads = set()
    third = s.third_table
    for p in range(s.v):
        pairs = s.others[p]
        for i in range(len(pairs)):
            a, b = int(pairs[i, 0]), int(pairs[i, 1])
            for j in range(i + 1, len(pairs)):
                c, d = int(pairs[j, 0]), int(pairs[j, 1])
                for (x, y), (u, w) in (((a, c), (b, d)), ((a, d), (b, c))):
                    e = int(third[x, y])
                    if e == int(third[u, w]):
                        quad = frozenset(
                            (
                                int(s.pair_triple[p, a]),
                                int(s.pair_triple[p, c]),
                                int(s.pair_triple[x, y]),
                                int(s.pair_triple[u, w]),
                            )
                        )
                        quads.add(quad)
    return sorted(tuple(sorted(q)) for q in quads)


def _pasch_switch(s: TripleSystem, quad) -> TripleSystem:
    """Replace the four triples of a Pasch configuration by its complement:
    swapping the two points of any diagonal (a pair not covered inside the
    configuration) yields the unique other cover of the same pairs."""
    config = [s.triples[i] for i in quad]
    pts = sorted({p for t in config for p in t})
    covered = {
        frozenset((t[i], t[j])) for t in config for i in range(3) for j in range(i + 1, 3)
    }
    swap = None
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            if frozenset((pts[i], pts[j])) not in covered:
                swap = {pts[i]: pts[j], pts[j]: pts[i]}
                break
        if swap:
            break
    fresh = [tuple(sorted(swap.get(p, p) for p in t)) for t in config]
    rest = [t for i, t in enumerate(s.triples) if i not in set(quad)]
    return TripleSystem(s.v, rest + fresh)


def _sts13_pair():
    """The cyclic order-13 system and its unique non-isomorphic companion,
    reached deterministically by switching the first Pasch configuration
    that changes the isomorphism type."""
    a = _sts13_cyclic()
    for quad in _pasch_quads(a):
        b = _pasch_switch(a, quad)
        if are_isomorphic(a, b) is None:
            return a, b
    raise RuntimeError("no Pasch switch changed the isomorphism type")


def _f_sts15_example() -> FactorSystem:
    q = fixture("fano_labeled").loop()
    tri = q.system().triples
    support = {(2, 4, 5), (2, 3, 6)}
    return FactorSystem(q, 1, [1 if t in support else 0 for t in tri])


def _f_sts9(support) -> FactorSystem:
    q = fixture("sts9_labeled").loop()
    tri = q.system().triples
    return FactorSystem(q, 1, [1 if t == support else 0 for t in tri])


_PROVENANCE = {
    "sts15_2": "order-15 system #2 of the standard 80-system enumeration",
    "fano_labeled": "seven-point plane, labeling of the order-15 extension example",
    "sts9_labeled": "nine-point affine plane, grid labeling of the worked examples",
    "sts9_loop_table": "order-10 loop of the labeled nine-point system",
    "phi_11": "symmetric identity-diagonal square of the order-19 doubling example",
    "phi_om1": "derived off-diagonal block of the order-19 doubling example",
    "f_sts15_example": "factor system over the labeled plane giving order-15 system #2",
    "f1_sts9": "factor system over the nine-point system, support on one triple",
    "f2_sts9": "image of f1_sts9 under the point map (465)(789)",
    "beta_465_789": "automorphism (465)(789) of the labeled nine-point system",
    "sts13_a": "external: cyclic order-13 system from difference base blocks",
    "sts13_b": "external: the second order-13 system, via a Pasch trade",
}

_EXTERNAL = frozenset({"sts13_a", "sts13_b"})

_cache: dict = {}


def _build(key: str):
    if key == "sts15_2":
        return validate_system(15, _STS15_2_TRIPLES)
    if key == "fano_labeled":
        return validate_system(7, _FANO_LABELED_TRIPLES)
    if key == "sts9_labeled":
        return validate_system(9, _STS9_LABELED_TRIPLES)
    if key == "sts9_loop_table":
        return SteinerLoop(np.array(_STS9_LOOP_TABLE, dtype=np.int32))
    if key == "phi_11":
        return LatinSquare(_PHI_11)
    if key == "phi_om1":
        return LatinSquare(_PHI_OM1)
    if key == "f_sts15_example":
        return _f_sts15_example()
    if key == "f1_sts9":
        return _f_sts9((2, 5, 8))
    if key == "f2_sts9":
        return _f_sts9((2, 3, 7))
    if key == "beta_465_789":
        return _BETA_465_789
    if key in ("sts13_a", "sts13_b"):
        a, b = _sts13_pair()
        _cache["sts13_a"], _cache["sts13_b"] = a, b
        return _cache[key]
    raise UnknownKey(key)


def fixture(key: str):
    """Return the named fixture object (cached; all fixtures are immutable)."""
    if key not in _cache:
        _cache[key] = _build(key)
    return _cache[key]


def fixture_keys():
    return tuple(sorted(_PROVENANCE))


def fixture_provenance(key: str) -> str:
    if key not in _PROVENANCE:
        raise UnknownKey(key)
    if key in _EXTERNAL:
        return _PROVENANCE[key]
    return f"built-in: {_PROVENANCE[key]}"


def pasch_configurations(s: TripleSystem):
    """All Pasch configurations of s as sorted 4-tuples of triple indices."""
    return _pasch_quads(s)


__all__ = [
    "pg",
    "ag",
    "fixture",
    "fixture_keys",
    "fixture_provenance",
    "pasch_configurations",
    "census",
]
