"""Exact structures on a Nakayama module category as AR-sequence subsets.

A structure is a bit mask over the almost split sequences (bit k set
means the k-th sequence, in end order, is admissible).  Membership of
an arbitrary nonsplit extension reduces to a required-subset test
against that mask.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

from .errors import NotAnExtension, TooManyStructures
from .intervals import (
    AlgebraSpec,
    Interval,
    ar_sequences,
    ext_shape,
    hom_nonzero,
    indecomposables,
    proper_sub_quot_pairs,
    tau,
)

STRUCTURE_CAP = 20


@lru_cache(maxsize=None)
def ar_index(alg: AlgebraSpec) -> dict[Interval, int]:
    """End interval -> position of its almost split sequence."""
    return {seq.end: k for k, seq in enumerate(ar_sequences(alg))}


@lru_cache(maxsize=None)
def required_ar_mask(alg: AlgebraSpec, sub: Interval, quot: Interval) -> int:
    """Mask of sequences forced admissible by the extension (sub, quot).

    A sequence ending at u is forced whenever sub maps nonzero to the
    translate of u and u maps nonzero to quot.
    """
    if ext_shape(alg, sub, quot) is None:
        raise NotAnExtension(
            f"no nonsplit extension of {alg.label(quot)} by {alg.label(sub)}"
        )
    mask = 0
    for k, seq in enumerate(ar_sequences(alg)):
        if hom_nonzero(alg, sub, seq.sub) and hom_nonzero(alg, seq.end, quot):
            mask |= 1 << k
    return mask


@dataclass(frozen=True)
class ExactStructure:
    """The exact structure generated by a subset of AR sequences."""

    alg: AlgebraSpec
    mask: int

    def __post_init__(self):
        n_ar = len(ar_sequences(self.alg))
        if not 0 <= self.mask < (1 << n_ar):
            raise ValueError(f"mask {self.mask:#x} out of range for {n_ar} sequences")

    @classmethod
    def split(cls, alg: AlgebraSpec) -> "ExactStructure":
        return cls(alg, 0)

    @classmethod
    def maximal(cls, alg: AlgebraSpec) -> "ExactStructure":
        return cls(alg, (1 << len(ar_sequences(alg))) - 1)

    @classmethod
    def from_ends(cls, alg: AlgebraSpec, ends) -> "ExactStructure":
        idx = ar_index(alg)
        mask = 0
        for end in ends:
            mask |= 1 << idx[Interval(*end)]
        return cls(alg, mask)

    @classmethod
    def from_hex(cls, alg: AlgebraSpec, text: str) -> "ExactStructure":
        return cls(alg, int(text, 16))

    @property
    def b_hex(self) -> str:
        return format(self.mask, "x")

    def context(self, p: int):
        from .reps import nakayama_context

        return nakayama_context(self.alg, p)

    def ends(self) -> list[Interval]:
        return [
            seq.end
            for k, seq in enumerate(ar_sequences(self.alg))
            if self.mask >> k & 1
        ]

    def size(self) -> int:
        return bin(self.mask).count("1")

    def contains_ar(self, end: Interval) -> bool:
        return self.mask >> ar_index(self.alg)[end] & 1 == 1


def seq_in_E(E: ExactStructure, sub: Interval, quot: Interval) -> bool:
    """Is the nonsplit extension of quot by sub admissible in E?"""
    required = required_ar_mask(E.alg, sub, quot)
    return required & ~E.mask == 0


@lru_cache(maxsize=None)
def _e_simples_cached(alg: AlgebraSpec, mask: int) -> tuple[Interval, ...]:
    E = ExactStructure(alg, mask)
    out = []
    for m in indecomposables(alg):
        if all(
            not seq_in_E(E, s, q) for s, q in proper_sub_quot_pairs(alg, m)
        ):
            out.append(m)
    return tuple(out)


def e_simples(E: ExactStructure) -> list[Interval]:
    """Intervals with no proper nonzero admissible subobject."""
    return list(_e_simples_cached(E.alg, E.mask))


def e_projectives(E: ExactStructure) -> list[Interval]:
    """Projectives plus non-projectives whose AR sequence is excluded."""
    idx = ar_index(E.alg)
    out = []
    for m in indecomposables(E.alg):
        k = idx.get(m)
        if k is None or not E.mask >> k & 1:
            out.append(m)
    return out


def is_aw_fast(E: ExactStructure) -> bool:
    """Splitting/semisimple/radical equivalence, decided combinatorially.

    Fails exactly when some admissible AR sequence has a simple-in-E
    top module.
    """
    simples = set(e_simples(E))
    for k, seq in enumerate(ar_sequences(E.alg)):
        if E.mask >> k & 1 and seq.mid_top in simples:
            return False
    return True


def enumerate_structures(alg: AlgebraSpec, cap: int = STRUCTURE_CAP) -> Iterator[ExactStructure]:
    """All structures in ascending mask order (lexicographic on bits)."""
    n_ar = len(ar_sequences(alg))
    if n_ar > cap:
        raise TooManyStructures(f"{n_ar} AR sequences exceeds cap {cap}")
    for mask in range(1 << n_ar):
        yield ExactStructure(alg, mask)
