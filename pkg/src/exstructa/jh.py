"""Composition series, Jordan-Hoelder / diamond / Artin-Wedderburn
decisions, and the length function.

Category-level verdicts quantify over all objects within a total
dimension bound over the chosen finite field; reports carry that
qualification since nothing here transfers beyond it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import NotJordanHolder
from .lattice import (
    ObjectLattice,
    as_cids,
    active_middle_multisets,
    aw_flags,
    diamond_violation,
    has_nonsplit_admissible_sub,
    jh_verdict,
    multiset_is_semisimple,
    object_multisets,
    series_lengths,
)

DEFAULT_DIM_BOUND = 6
SERIES_CAP = 10000


@dataclass
class CompositionSeries:
    """Chain of subobject families with the classes of its factors."""

    chain: tuple[int, ...]  # family indices inside the object lattice
    factors: tuple[int, ...]  # class id of each simple factor, in order

    def __len__(self):
        return len(self.factors)


@dataclass
class SeriesResult:
    series: list[CompositionSeries]
    truncated: bool = False


@dataclass
class ClassificationRow:
    b_hex: str
    b_size: int
    is_aw_fast: Optional[bool]
    is_aw_brute: bool
    is_jh: bool
    is_diamond: Optional[bool]
    e_simple_count: int
    counting_identity_holds: bool
    aw_violation: str = ""
    jh_witness: str = ""


def _object_label(ctx, cids) -> str:
    return "+".join(ctx.label(c) for c in cids)


def _lattice(structure, cids, p, bound) -> ObjectLattice:
    return ObjectLattice(structure.context(p), cids, bound)




def composition_series(structure, x, p: int, cap: int = SERIES_CAP, bound: int = 8) -> SeriesResult:
    """Every composition series of x, as chains of subobject families."""
    ctx = structure.context(p)
    cids = as_cids(ctx, x)
    lat = ObjectLattice(ctx, cids, bound)
    esimp = ctx.e_simple_cids(structure.mask)
    adm = lat.element_mask(structure.mask)
    steps_from: dict[int, list[tuple[int, int]]] = {}
    for u, v, req, qcid in lat.cover_rows():
        if req & ~structure.mask == 0 and qcid in esimp and adm[u] and adm[v]:
            steps_from.setdefault(u, []).append((v, qcid))
    out: list[CompositionSeries] = []
    truncated = False

    def walk(node, chain, factors):
        nonlocal truncated
        if truncated:
            return
        if node == lat.full_idx:
            out.append(CompositionSeries(tuple(chain), tuple(factors)))
            if len(out) >= cap:
                truncated = True
            return
        for nxt, qcid in sorted(steps_from.get(node, ())):
            walk(nxt, chain + [nxt], factors + [qcid])

    walk(lat.zero_idx, [lat.zero_idx], [])
    return SeriesResult(out, truncated)


def jh_object(structure, x, p: int, bound: int = 8):
    """Do all composition series of x agree?  Returns (bool, witness)."""
    ctx = structure.context(p)
    cids = as_cids(ctx, x)
    lat = ObjectLattice(ctx, cids, bound)
    esimp = ctx.e_simple_cids(structure.mask)
    ok, wit = jh_verdict(lat, structure.mask, esimp)
    if ok:
        return True, None
    series = []
    for key, chain in wit:
        factors = []
        for a, b in zip(chain, chain[1:]):
            qc = lat.pair_data(a, b).qcls
            factors.append(qc[0][0])
        series.append(CompositionSeries(tuple(chain), tuple(factors)))
    return False, tuple(series)


def jh_category(structure, dim_bound: int, p: int):
    """Conjunction of the object-level verdict over all objects in bound."""
    ctx = structure.context(p)
    esimp = ctx.e_simple_cids(structure.mask)
    for cids in object_multisets(ctx, dim_bound):
        if multiset_is_semisimple(ctx, cids):
            continue
        lat = ObjectLattice(ctx, cids, dim_bound)
        ok, wit = jh_verdict(lat, structure.mask, esimp)
        if not ok:
            labels = tuple(
                tuple(sorted(ctx.label(c) for c in key)) for key, _ in wit
            )
            return False, (_object_label(ctx, cids), labels)
    return True, None


def diamond_check(structure, dim_bound: int, p: int):
    """Diamond axiom over all objects in bound; (bool, first violation)."""
    ctx = structure.context(p)
    esimp = ctx.e_simple_cids(structure.mask)
    for cids in object_multisets(ctx, dim_bound):
        if multiset_is_semisimple(ctx, cids):
            continue
        lat = ObjectLattice(ctx, cids, dim_bound)
        bad = diamond_violation(lat, structure.mask, esimp)
        if bad is not None:
            return False, (_object_label(ctx, cids), bad[0])
    return True, None


def _sorted_by_dim(ctx, multisets):
    return sorted(multisets, key=lambda cids: (sum(ctx.class_dim(c) for c in cids), cids))


def _aw_verdict(ctx, mask: int, esimp, dim_bound: int, get_lattice):
    """Splitting/semisimple/radical equivalence as the arguments use it.

    Semisimple objects must admit no nonsplit admissible subobject (the
    splitting-vs-semisimple direction, checked on every object whose
    summands are simple in the structure); the radical condition is
    checked where the radical carries the decision: indecomposables and
    middles of admissible basis extensions.
    """
    for cids in _sorted_by_dim(ctx, object_multisets(ctx, dim_bound)):
        if not all(c in esimp for c in cids):
            continue
        if multiset_is_semisimple(ctx, cids):
            continue
        lat = get_lattice(cids)
        if has_nonsplit_admissible_sub(lat, mask):
            return False, "semisimple-but-nonsplit@" + _object_label(ctx, cids)
    domain = {(c,) for c in range(len(ctx.class_labels)) if ctx.class_dim(c) <= dim_bound}
    domain.update(active_middle_multisets(ctx, mask, dim_bound))
    for cids in _sorted_by_dim(ctx, domain):
        if multiset_is_semisimple(ctx, cids):
            continue
        lat = get_lattice(cids)
        a1, a2, a3 = aw_flags(lat, mask, esimp)
        if not (a1 == a2 == a3):
            return False, _aw_violation_tag(_object_label(ctx, cids), a1, a2, a3)
    return True, ""


def aw_bruteforce(structure, dim_bound: int, p: int):
    """Objectwise splitting/semisimple/radical equivalence.

    Returns (bool, rows) with one (object label, AW1, AW2, AW3) row per
    object.  The verdict is false when splitting and semisimplicity
    disagree anywhere, or when the radical test disagrees on an
    indecomposable or on the middle of an admissible basis extension.
    """
    ctx = structure.context(p)
    esimp = ctx.e_simple_cids(structure.mask)
    rows = []
    cache: dict[tuple, ObjectLattice] = {}

    def get_lattice(cids):
        if cids not in cache:
            cache[cids] = ObjectLattice(ctx, cids, dim_bound)
        return cache[cids]

    for cids in object_multisets(ctx, dim_bound):
        if multiset_is_semisimple(ctx, cids):
            rows.append((_object_label(ctx, cids), True, True, True))
            continue
        a1, a2, a3 = aw_flags(get_lattice(cids), structure.mask, esimp)
        rows.append((_object_label(ctx, cids), a1, a2, a3))
    verdict, _ = _aw_verdict(ctx, structure.mask, esimp, dim_bound, get_lattice)
    return verdict, rows


def length(structure, x, p: int, bound: int = 8) -> int:
    """Common composition series length; refuses when series disagree."""
    ctx = structure.context(p)
    cids = as_cids(ctx, x)
    lat = ObjectLattice(ctx, cids, bound)
    esimp = ctx.e_simple_cids(structure.mask)
    spans = series_lengths(lat, structure.mask, esimp)
    if spans is None:
        raise NotJordanHolder("object admits no composition series in this structure")
    lo, hi = spans
    ok, _ = jh_verdict(lat, structure.mask, esimp)
    if lo != hi or not ok:
        raise NotJordanHolder(
            f"series lengths range from {lo} to {hi}", min_length=lo, max_length=hi
        )
    return lo


# ---------------------------------------------------------------------------
# batch classification


def _aw_violation_tag(label, a1, a2, a3) -> str:
    pattern = []
    if a2 and not a1:
        pattern.append("semisimple-but-nonsplit")
    if a3 and not a2:
        pattern.append("zero-radical-but-not-semisimple")
    if a3 and not a1:
        pattern.append("zero-radical-but-nonsplit")
    if a1 and not a3:
        pattern.append("split-but-nonzero-radical")
    if a1 and not a2:
        pattern.append("split-but-not-semisimple")
    if a2 and not a3:
        pattern.append("semisimple-but-nonzero-radical")
    return ",".join(pattern) + "@" + label


def classify_structures(structures, p: int, dim_bound: int, with_diamond: bool = True):
    """One classification row per structure, shared object tables.

    All structures must live on the same algebra or fixture; object
    lattices are built once and reused across the whole mask list.
    """
    if not structures:
        return []
    ctx = structures[0].context(p)
    n_classes = len(ctx.class_labels)
    objects = _sorted_by_dim(ctx, object_multisets(ctx, dim_bound))
    cache: dict[tuple, ObjectLattice] = {}

    def get_lattice(cids):
        if cids not in cache:
            cache[cids] = ObjectLattice(ctx, cids, dim_bound)
        return cache[cids]

    rows = []
    for s in structures:
        esimp = ctx.e_simple_cids(s.mask)
        aw_ok, aw_tag = _aw_verdict(ctx, s.mask, esimp, dim_bound, get_lattice)
        jh_ok, dia_ok = True, True
        jh_tag = ""
        for cids in objects:
            if multiset_is_semisimple(ctx, cids):
                continue
            lat = get_lattice(cids)
            if jh_ok:
                ok, wit = jh_verdict(lat, s.mask, esimp)
                if not ok:
                    jh_ok = False
                    sides = [
                        "+".join(sorted(ctx.label(c) for c in key)) for key, _ in wit
                    ]
                    jh_tag = f"{_object_label(ctx, cids)}:{sides[0]}|{sides[1]}"
            if with_diamond and dia_ok:
                if diamond_violation(lat, s.mask, esimp) is not None:
                    dia_ok = False
            if not jh_ok and (not with_diamond or not dia_ok):
                break
        fast = None
        if hasattr(s, "alg"):
            from .structures import is_aw_fast

            fast = is_aw_fast(s)
        count = len(esimp)
        rows.append(
            ClassificationRow(
                b_hex=s.b_hex,
                b_size=s.size(),
                is_aw_fast=fast,
                is_aw_brute=aw_ok,
                is_jh=jh_ok,
                is_diamond=dia_ok if with_diamond else None,
                e_simple_count=count,
                counting_identity_holds=(count == n_classes - s.size()),
                aw_violation=aw_tag,
                jh_witness=jh_tag,
            )
        )
    return rows
