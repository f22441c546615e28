"""Exact structures on Nakayama module categories.

Combinatorial classification of exact structures (Artin-Wedderburn,
Jordan-Hoelder, diamond) with a brute-force finite-field oracle for
cross-validation on small instances.
"""

from .intervals import (
    AlgebraSpec,
    ArSeq,
    ExtCase,
    ExtShape,
    Interval,
    Shape,
    ar_sequences,
    build_algebra,
    cyclic_algebra,
    ext_shape,
    hereditary_linear,
    hom_nonzero,
    indecomposables,
    linear_algebra,
    submodules_of,
    tau,
)
from .structures import (
    ExactStructure,
    e_projectives,
    e_simples,
    enumerate_structures,
    is_aw_fast,
    seq_in_E,
)

__all__ = [
    "AlgebraSpec",
    "ArSeq",
    "ExactStructure",
    "ExtCase",
    "ExtShape",
    "Interval",
    "Shape",
    "ar_sequences",
    "build_algebra",
    "cyclic_algebra",
    "e_projectives",
    "e_simples",
    "enumerate_structures",
    "ext_shape",
    "hereditary_linear",
    "hom_nonzero",
    "indecomposables",
    "is_aw_fast",
    "linear_algebra",
    "seq_in_E",
    "submodules_of",
    "tau",
]
