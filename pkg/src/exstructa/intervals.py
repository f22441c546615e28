"""Interval combinatorics of Nakayama algebras.

An algebra is given by its quiver shape (linear or cyclic, arrows
i -> i+1) and the list of projective lengths.  Indecomposable modules
are intervals (top vertex, length); all Hom/Ext data reduces to index
arithmetic on these pairs.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import NamedTuple, Optional

from .errors import KupischViolation, ProjectiveHasNoTau, WindingUnsupported


class Shape(enum.Enum):
    LINEAR = "linear"
    CYCLIC = "cyclic"


class Interval(NamedTuple):
    """Uniserial module with the given top vertex and length."""

    top: int
    length: int


@dataclass(frozen=True)
class AlgebraSpec:
    shape: Shape
    n: int
    kupisch: tuple[int, ...]

    def proj_length(self, vertex: int) -> int:
        return self.kupisch[vertex - 1]

    def next_vertex(self, v: int) -> int:
        return v % self.n + 1

    def vertex_at(self, m: Interval, offset: int) -> int:
        return (m.top - 1 + offset) % self.n + 1

    def socle_vertex(self, m: Interval) -> int:
        return self.vertex_at(m, m.length - 1)

    def is_valid_interval(self, m: Interval) -> bool:
        return (
            1 <= m.top <= self.n
            and 1 <= m.length <= self.proj_length(m.top)
        )

    def is_projective(self, m: Interval) -> bool:
        return m.length == self.proj_length(m.top)

    def label(self, m: Interval) -> str:
        return f"({m.top},{m.length})"


@dataclass(frozen=True)
class ArSeq:
    """Almost split sequence sub >-> mid_top (+) mid_small ->> end."""

    end: Interval
    sub: Interval
    mid_top: Interval
    mid_small: Optional[Interval]


class ExtCase(enum.Enum):
    INDECOMPOSABLE = "indecomposable"
    TWO_TERMS = "two_terms"


@dataclass(frozen=True)
class ExtShape:
    """Shape of the middle of the basis extension of (sub, quot)."""

    case: ExtCase
    top: Interval
    overlap: Optional[Interval]


def build_algebra(shape: Shape, n: int, kupisch) -> AlgebraSpec:
    """Validate a projective-length list and return the algebra."""
    lengths = tuple(int(x) for x in kupisch)
    if n < 1 or len(lengths) != n:
        raise KupischViolation(f"need {n} projective lengths, got {len(lengths)}")
    if any(l < 1 for l in lengths):
        raise KupischViolation("projective lengths must be >= 1")
    if shape == Shape.LINEAR:
        if lengths[-1] != 1:
            raise KupischViolation("last projective of a linear algebra is simple")
        for i in range(n):
            if lengths[i] > n - i:
                raise KupischViolation(
                    f"projective at vertex {i + 1} overruns the quiver"
                )
        for i in range(n - 1):
            if lengths[i + 1] < lengths[i] - 1:
                raise KupischViolation(
                    f"lengths at vertices {i + 1},{i + 2} drop by more than one"
                )
    else:
        if any(l > n for l in lengths):
            raise WindingUnsupported(
                "cyclic algebras with projectives longer than the cycle "
                "are not supported"
            )
        for i in range(n):
            j = (i + 1) % n
            if lengths[j] < lengths[i] - 1:
                raise KupischViolation(
                    f"lengths at vertices {i + 1},{j + 1} drop by more than one"
                )
    return AlgebraSpec(shape, n, lengths)


def linear_algebra(kupisch) -> AlgebraSpec:
    return build_algebra(Shape.LINEAR, len(tuple(kupisch)), kupisch)


def cyclic_algebra(kupisch) -> AlgebraSpec:
    return build_algebra(Shape.CYCLIC, len(tuple(kupisch)), kupisch)


def hereditary_linear(n: int) -> AlgebraSpec:
    return linear_algebra(tuple(range(n, 0, -1)))


def indecomposables(alg: AlgebraSpec) -> list[Interval]:
    """All interval modules, ordered lexicographically by (top, length)."""
    return [
        Interval(c, l)
        for c in range(1, alg.n + 1)
        for l in range(1, alg.proj_length(c) + 1)
    ]


def tau(alg: AlgebraSpec, m: Interval) -> Interval:
    """Translate of a non-projective interval: shift the top one step."""
    if alg.is_projective(m):
        raise ProjectiveHasNoTau(f"{alg.label(m)} is projective")
    shifted = Interval(alg.next_vertex(m.top), m.length)
    assert alg.is_valid_interval(shifted)
    return shifted


def ar_sequences(alg: AlgebraSpec) -> list[ArSeq]:
    """One almost split sequence per non-projective, in end order."""
    out = []
    for end in indecomposables(alg):
        if alg.is_projective(end):
            continue
        mid_small = (
            Interval(alg.next_vertex(end.top), end.length - 1)
            if end.length > 1
            else None
        )
        out.append(
            ArSeq(
                end=end,
                sub=tau(alg, end),
                mid_top=Interval(end.top, end.length + 1),
                mid_small=mid_small,
            )
        )
    return out


def hom_nonzero(alg: AlgebraSpec, src: Interval, tgt: Interval) -> bool:
    """Nonzero morphism test: some quotient of src is a submodule of tgt.

    With j the offset of src's top inside tgt, the overlap must reach
    tgt's socle without running past src's socle.
    """
    j = (src.top - tgt.top) % alg.n
    return j <= tgt.length - 1 and tgt.length - j <= src.length


def ext_shape(alg: AlgebraSpec, sub: Interval, quot: Interval) -> Optional[ExtShape]:
    """Shape of the nonsplit extension of quot by sub, if one exists.

    The extension space is at most one-dimensional; the middle is the
    glued interval, plus the overlap interval when sub and quot overlap
    properly.  Returns None when the space vanishes.
    """
    j = (sub.top - quot.top) % alg.n
    if j == 0 or j > quot.length:
        return None
    top_len = j + sub.length
    if quot.length >= top_len:
        return None
    if alg.shape == Shape.CYCLIC and top_len > alg.n:
        return None
    top = Interval(quot.top, top_len)
    if not alg.is_valid_interval(top):
        return None
    if j == quot.length:
        return ExtShape(ExtCase.INDECOMPOSABLE, top, None)
    return ExtShape(ExtCase.TWO_TERMS, top, Interval(sub.top, quot.length - j))


def submodules_of(alg: AlgebraSpec, m: Interval) -> list[Optional[Interval]]:
    """The totally ordered chain of submodules, largest first, ending in 0."""
    chain: list[Optional[Interval]] = [
        Interval(alg.vertex_at(m, x), m.length - x) for x in range(m.length)
    ]
    chain.append(None)
    return chain


def proper_sub_quot_pairs(alg: AlgebraSpec, m: Interval) -> list[tuple[Interval, Interval]]:
    """(submodule, quotient) pairs for every proper nonzero submodule."""
    return [
        (Interval(alg.vertex_at(m, x), m.length - x), Interval(m.top, x))
        for x in range(1, m.length)
    ]
