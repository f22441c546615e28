"""Posets of admissible subobjects over a finite field.

Elements are canonical submodule families whose inclusion into the
object is admissible; the order relation demands admissibility of the
connecting inclusion itself.  Generalized meet and join are sets of
maximal/minimal bounds, not single objects.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import DimensionBound
from .lattice import ObjectLattice, as_cids
from .oracle import SUBMODULE_DIM_BOUND
from .reps import QuiverRep


@dataclass
class SubobjectPoset:
    structure: object
    lat: ObjectLattice
    elements: list[int]  # family indices, ascending dimension

    @property
    def ctx(self):
        return self.lat.ctx

    @property
    def mask(self) -> int:
        return self.structure.mask

    @property
    def zero(self) -> int:
        return self.lat.zero_idx

    @property
    def full(self) -> int:
        return self.lat.full_idx

    def leq(self, u: int, v: int) -> bool:
        return self.lat.leq(u, v, self.mask)

    def label(self, u: int) -> str:
        cls = self.lat.fam_class(u)
        if not cls:
            return "0"
        return "+".join(
            self.ctx.label(c) for c, k in cls for _ in range(k)
        )

    def proper(self) -> list[int]:
        return [u for u in self.elements if u not in (self.zero, self.full)]

    def maximal_proper(self) -> list[int]:
        return self.lat.maximal_elements(self.mask, self.ctx.e_simple_cids(self.mask))

    def covers(self) -> list[tuple[int, int]]:
        """Cover relations of the poset (no intermediate element)."""
        out = []
        elems = self.elements
        for u in elems:
            for v in elems:
                if u == v or not self.leq(u, v):
                    continue
                if any(
                    w not in (u, v) and self.leq(u, w) and self.leq(w, v)
                    for w in elems
                ):
                    continue
                out.append((u, v))
        return out

    def to_dot(self) -> str:
        lines = ["digraph subobjects {", "  rankdir=BT;"]
        for u in self.elements:
            lines.append(f'  n{u} [label="{self.label(u)}"];')
        for u, v in self.covers():
            lines.append(f"  n{u} -> n{v};")
        lines.append("}")
        return "\n".join(lines)


def build_poset(structure, x, p: int, bound: int = SUBMODULE_DIM_BOUND) -> SubobjectPoset:
    """Admissible-subobject poset of the object x under the structure."""
    ctx = structure.context(p)
    lat = _lattice_for(ctx, x, bound)
    adm = lat.element_mask(structure.mask)
    elements = [u for u in range(lat.n) if adm[u]]
    return SubobjectPoset(structure, lat, elements)


def _lattice_for(ctx, x, bound) -> ObjectLattice:
    if isinstance(x, ObjectLattice):
        return x
    if isinstance(x, QuiverRep):
        return ObjectLattice(ctx, (), bound, rep=x)
    return ObjectLattice(ctx, as_cids(ctx, x), bound)


def int_x(poset: SubobjectPoset, subs: list[int]) -> list[int]:
    """Maximal common admissible subobjects of the given elements."""
    if not subs:
        return [poset.zero]
    common = poset.lat.common_subobjects(list(subs), poset.mask)
    return poset.lat.maximal_within(common, poset.mask)


def sum_x(poset: SubobjectPoset, subs: list[int]) -> list[int]:
    """Minimal common admissible superobjects within the poset."""
    lat, mask = poset.lat, poset.mask
    if not subs:
        return [poset.zero]
    adm = lat.element_mask(mask)
    ups = [
        w
        for w in range(lat.n)
        if adm[w] and all(lat.leq(s, w, mask) for s in subs)
    ]
    return lat.minimal_within(ups, mask)


def rad_e(poset: SubobjectPoset) -> list[int]:
    """Generalized intersection of the maximal proper subobjects."""
    maxes = poset.maximal_proper()
    if not maxes:
        return [poset.zero]
    return int_x(poset, maxes)


def is_semisimple(structure, x, p: int) -> bool:
    """Is the object a direct sum of simples of the structure?"""
    ctx = structure.context(p)
    esimp = ctx.e_simple_cids(structure.mask)
    return all(c in esimp for c in as_cids(ctx, x))


def fourth_iso_check(structure, x, u: Optional[int] = None, p: int = 2, bound: int = SUBMODULE_DIM_BOUND):
    """Verify the interval-over-u / quotient-poset bijection.

    For each admissible subobject u of x (or one given element) the map
    M -> M/u must carry {M : u <= M <= x} bijectively onto the poset of
    the quotient, preserving order both ways.  Returns (bool, detail).
    """
    poset = build_poset(structure, x, p, bound)
    lat, mask, ctx = poset.lat, poset.mask, poset.ctx
    targets = [u] if u is not None else poset.elements
    for elem in targets:
        ses = lat.pair_ses(elem, lat.full_idx)
        quot = ses.quot
        if quot.total_dim > bound:
            raise DimensionBound("quotient exceeds bound")
        qlat = ObjectLattice(ctx, (), bound, rep=quot)
        qadm = qlat.element_mask(mask)
        interval = [m for m in poset.elements if lat.leq(elem, m, mask)]
        image = {}
        for m in interval:
            fam = _push_family(lat, m, ses)
            idx = qlat.key_index.get(_family_key(fam))
            if idx is None or not qadm[idx]:
                return False, f"image of element {m} not an admissible subobject"
            image[m] = idx
        if len(set(image.values())) != len(interval):
            return False, "correspondence not injective"
        if set(image.values()) != {i for i in range(qlat.n) if qadm[i]}:
            return False, "correspondence not surjective"
        for m1 in interval:
            for m2 in interval:
                fwd = lat.leq(m1, m2, mask)
                bwd = qlat.leq(image[m1], image[m2], mask)
                if fwd != bwd:
                    return False, f"order not preserved at ({m1},{m2})"
    return True, ""


def _push_family(lat: ObjectLattice, m: int, ses) -> tuple:
    """Image of family m under the quotient projection of the sequence."""
    from . import gfp

    out = []
    for i in range(lat.rep.quiver.n):
        rows = lat.families[m][i]
        proj = ses.epic.blocks[i]
        img = gfp.matmul(rows, proj.T, lat.p) if rows.size else gfp.zeros(0, proj.shape[0])
        out.append(gfp.rref(img, lat.p)[0])
    return tuple(out)


def _family_key(fam) -> bytes:
    from .oracle import family_key

    return family_key(fam)


def schur_check(structure, p: int, sample_objects=None, bound: int = SUBMODULE_DIM_BOUND):
    """Simple objects admit no proper admissible subobject or quotient,
    and embeddings of simples stay admissible monics under composition.

    Returns (n_cases, failures).
    """
    from .lattice import object_multisets
    from .oracle import admissible_monic

    ctx = structure.context(p)
    esimp = ctx.e_simple_cids(structure.mask)
    failures = []
    cases = 0
    for s_cid in sorted(esimp):
        lat = ObjectLattice(ctx, (s_cid,), bound)
        adm = lat.element_mask(structure.mask)
        cases += 1
        proper = [
            u
            for u in range(lat.n)
            if adm[u] and u not in (lat.zero_idx, lat.full_idx)
        ]
        if proper:
            failures.append(f"simple {ctx.label(s_cid)} has a proper admissible subobject")
    targets = sample_objects or [
        cids for cids in object_multisets(ctx, bound) if len(cids) <= 2
    ]
    for cids in targets:
        lat = ObjectLattice(ctx, tuple(cids), bound)
        adm = lat.element_mask(structure.mask)
        for u in range(lat.n):
            if not adm[u] or u == lat.zero_idx:
                continue
            cls = lat.fam_class(u)
            if len(cls) != 1 or cls[0][1] != 1 or cls[0][0] not in esimp:
                continue
            # nonzero admissible morphism out of a simple: must be adm monic
            ses = lat.pair_ses(u, lat.full_idx)
            cases += 1
            if not admissible_monic(structure, ses.monic, bound=bound):
                failures.append(
                    f"embedding of {ctx.label(cls[0][0])} into {'+'.join(ctx.label(c) for c in cids)}"
                )
    return cases, failures
