"""Exact-arithmetic toolkit for simply laced (ADE) root systems: canonical
generators, reflection closure, base extraction, classification with explicit
isometries, and embedding of signed graphs with least eigenvalue >= -2."""

from .embed import EmbeddingCertificate, check_least_eigenvalue, embed, verify_certificate
from .errors import InvariantError
from .exactlin import (
    Definiteness,
    RatMatrix,
    definiteness,
    kernel_basis,
    rank,
    short_vectors,
    solve,
)
from .roots import (
    AmbientSpace,
    DynkinType,
    FormSpace,
    Isometry,
    ReducibleType,
    Root,
    RootSet,
    ambient_root,
    classify,
    closure,
    components,
    find_base,
    gen,
    graph_of,
    inner_product,
    is_obtuse,
    is_root_system,
    isometry_to_canonical,
    lattice_root,
    parse_type,
    reflect,
    signed_graph_of,
    signed_permute,
)
from .spectra import SignedGraph, SmithType, adjacency, affine_marks, smith_classify

__all__ = [
    "AmbientSpace",
    "Definiteness",
    "DynkinType",
    "EmbeddingCertificate",
    "FormSpace",
    "InvariantError",
    "Isometry",
    "RatMatrix",
    "ReducibleType",
    "Root",
    "RootSet",
    "SignedGraph",
    "SmithType",
    "adjacency",
    "affine_marks",
    "ambient_root",
    "check_least_eigenvalue",
    "classify",
    "closure",
    "components",
    "definiteness",
    "embed",
    "find_base",
    "gen",
    "graph_of",
    "inner_product",
    "is_obtuse",
    "is_root_system",
    "isometry_to_canonical",
    "kernel_basis",
    "lattice_root",
    "parse_type",
    "rank",
    "reflect",
    "short_vectors",
    "signed_graph_of",
    "signed_permute",
    "smith_classify",
    "solve",
    "verify_certificate",
]
