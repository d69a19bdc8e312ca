"""Embedding connected signed graphs with least eigenvalue >= -2 into root
systems.

For such a graph, A + 2I is positive semidefinite, hence the Gram matrix of n
norm-2 vectors with integer inner products.  Those vectors are handled
intrinsically (the form is all we need; the factor B with A + 2I = B B^T is
never formed, its entries are irrational in general).  Their reflection
closure is an irreducible root system, classified and mapped onto a canonical
model, and the canonical inclusions A_k in D_{k+1}, E_6/E_7 in E_8 place every
vertex vector inside D_m or E_8.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exactlin import Definiteness, RatMatrix, definiteness
from .roots import (
    DynkinType,
    FormSpace,
    RootSet,
    ambient_root,
    closure,
    gen,
    isometry_to_canonical,
    lattice_root,
)
from .spectra import SignedGraph, is_connected, shifted_gram_rows

Q = Fraction

LEAST_EIGENVALUE_DIAGNOSTIC = "least eigenvalue below -2"


@dataclass(frozen=True)
class EmbeddingCertificate:
    """Per-vertex roots in a canonical ambient system whose pairwise inner
    products reproduce A + 2I; independently checkable by verify_certificate."""

    intrinsic_type: DynkinType
    ambient_type: DynkinType
    vectors: tuple[tuple[Fraction, ...], ...]
    root_count: int


def check_least_eigenvalue(g: SignedGraph) -> Definiteness:
    """Exact trichotomy of A + 2I; Indefinite means the least eigenvalue of
    the signed adjacency lies below -2."""
    return definiteness(RatMatrix(shifted_gram_rows(g, 2)))


def _ambient_type(intrinsic: DynkinType) -> DynkinType:
    if intrinsic.family == "A":
        return DynkinType("D", intrinsic.rank + 1)
    if intrinsic.family == "D":
        return intrinsic
    return DynkinType("E", 8)


def embed(g: SignedGraph) -> EmbeddingCertificate:
    """Roots v_1..v_n with Gram matrix A + 2I, placed inside D_m or E_8.

    Raises ValueError for a disconnected graph or one whose least eigenvalue
    lies below -2.
    """
    if not is_connected(g):
        raise ValueError("embedding requires a connected graph")
    grid = tuple(tuple(row) for row in shifted_gram_rows(g, 2))
    if definiteness(RatMatrix(grid)) is Definiteness.INDEFINITE:
        raise ValueError(LEAST_EIGENVALUE_DIAGNOSTIC)
    space = FormSpace._trusted(grid)
    generators = [
        lattice_root(space, [1 if k == i else 0 for k in range(g.n)]) for i in range(g.n)
    ]
    seed = RootSet.of(space, generators, validate=False)
    phi = closure(seed)
    intrinsic, iso = isometry_to_canonical(phi)
    ambient = _ambient_type(intrinsic)
    vectors = tuple(iso.apply(v).coords for v in generators)
    cert = EmbeddingCertificate(
        intrinsic_type=intrinsic,
        ambient_type=ambient,
        vectors=vectors,
        root_count=len(phi),
    )
    assert verify_certificate(g, cert), "freshly built certificate failed verification"
    return cert


def verify_certificate(g: SignedGraph, cert: EmbeddingCertificate) -> bool:
    """Recompute everything the certificate claims; False on any mismatch.

    Checks that the pairwise inner products of the vectors equal A + 2I
    entrywise, that the ambient slot is D_m or E8, and that every vector is a
    root of the canonical ambient system.  Pure recomputation, sharing no
    state with embed.
    """
    if len(cert.vectors) != g.n:
        return False
    t = cert.ambient_type
    if not (t.family == "D" or (t.family == "E" and t.rank == 8)):
        return False
    dim = t.ambient_dim
    vecs = [tuple(Q(x) for x in v) for v in cert.vectors]
    if any(len(v) != dim for v in vecs):
        return False
    expected = shifted_gram_rows(g, 2)
    for i in range(g.n):
        for j in range(i, g.n):
            if sum(a * b for a, b in zip(vecs[i], vecs[j])) != expected[i][j]:
                return False
    ambient = gen(t)
    space = ambient.space
    return all(ambient_root(space, v) in ambient for v in vecs)
