"""Per-object subobject tables over GF(p).

For one object X the lattice holds every arrow-stable graded subspace
family together with structure-independent pair data: the class of the
quotient, whether the inclusion splits, and the mask of AR sequences
the inclusion forces.  A fixed exact structure then reduces every
question (element of the poset, order, cover, radical) to bitmask
tests, so one table serves all structures on the algebra.
"""

from __future__ import annotations

from collections import Counter
from typing import NamedTuple, Optional

import numpy as np

from . import gfp
from .errors import DimensionBound
from .intervals import Interval, Shape
from .oracle import (
    SUBMODULE_DIM_BOUND,
    enumerate_submodules,
    family_dim,
    family_key,
    family_vector_masks,
)
from .reps import (
    QuiverRep,
    SesInstance,
    composite_matrices,
    rep_of_multiset,
    ses_from_monic,
    _subrep_from_rows,
    quotient_with_projection,
    gfp_solve_blocks,
    RepMorphism,
)


class PairData(NamedTuple):
    qcls: tuple  # sorted (cid, mult) pairs of the quotient class
    req: int  # AR sequences forced by the inclusion
    split: bool


def as_cids(ctx, x) -> tuple[int, ...]:
    """Normalize an object given as interval(s), label(s) or id(s)."""
    if isinstance(x, (Interval, str, int)):
        items = [x]
    elif isinstance(x, (list, tuple)):
        items = list(x)
    else:
        items = [x]
    out = []
    for item in items:
        if isinstance(item, int):
            out.append(item)
        else:
            out.append(ctx.cid_of(item))
    return tuple(sorted(out))


def is_semisimple_rep(rep: QuiverRep) -> bool:
    return not any(m.any() for m in rep.mats.values())


def multiset_is_semisimple(ctx, cids) -> bool:
    """All summands are vertex simples, so every subobject question splits."""
    return all(is_semisimple_rep(ctx.rep_of(c)) for c in set(cids))


class ObjectLattice:
    """All submodule families of one object, with lazy pair data."""

    def __init__(self, ctx, cids, bound: int = SUBMODULE_DIM_BOUND, rep: QuiverRep = None):
        self.ctx = ctx
        self.p = ctx.p
        if rep is not None:
            self.rep = rep
            self.cids = tuple(
                sorted(c for c, k in ctx.decompose(rep).items() for _ in range(k))
            )
        else:
            self.cids = tuple(sorted(cids))
            self.rep = rep_of_multiset(ctx, self.cids)
        if self.rep.total_dim > bound:
            raise DimensionBound(
                f"object dimension {self.rep.total_dim} exceeds bound {bound}"
            )
        self.families = enumerate_submodules(self.rep, bound)
        self.n = len(self.families)
        self.key_index = {family_key(f): i for i, f in enumerate(self.families)}
        self.dims = np.array([family_dim(f) for f in self.families])
        self.vec_masks = [family_vector_masks(f, self.p) for f in self.families]
        self.zero_idx = 0
        self.full_idx = self.n - 1
        assert self.dims[self.zero_idx] == 0
        assert self.dims[self.full_idx] == self.rep.total_dim
        self._comp = (
            composite_matrices(self.rep, ctx.alg) if ctx.kind == "nakayama" else None
        )
        self._fam_cls: dict[int, tuple] = {}
        self._pair: dict[tuple[int, int], PairData] = {}
        self._contained_pairs: Optional[list[tuple[int, int]]] = None
        self._cover_rows: Optional[list[tuple[int, int, int, int]]] = None
        self._subrep_cache: dict[int, tuple] = {}
        self._split_cache: dict[int, list] = {}
        self._adm_cache: dict[int, np.ndarray] = {}
        if self.p == 2:
            # packed rows per family and per composite, for fast rank counts
            self._fam_packed = [
                [gfp.pack_rows(m) for m in fam] for fam in self.families
            ]
            self._comp_packed = (
                {key: gfp.pack_rows(m) for key, m in self._comp.items()}
                if self._comp is not None
                else None
            )
        else:
            self._fam_packed = None
            self._comp_packed = None

    # -- basic relations -----------------------------------------------------
    def contains(self, u: int, v: int) -> bool:
        """Is family u contained in family v vertexwise?"""
        mu, mv = self.vec_masks[u], self.vec_masks[v]
        return all(a & ~b == 0 for a, b in zip(mu, mv))

    def contained_pairs(self) -> list[tuple[int, int]]:
        """All ordered pairs (u, v) with u strictly inside v."""
        if self._contained_pairs is None:
            out = []
            for vi in range(self.n):
                for ui in range(self.n):
                    if ui == vi or self.dims[ui] >= self.dims[vi]:
                        continue
                    if self.contains(ui, vi):
                        out.append((ui, vi))
            self._contained_pairs = out
        return self._contained_pairs

    # -- classes ----------------------------------------------------------------
    def fam_class(self, i: int) -> tuple:
        """Sorted (cid, mult) class of the subrepresentation at family i."""
        if i not in self._fam_cls:
            if self.ctx.kind == "nakayama":
                rows = self._fam_packed[i] if self.p == 2 else list(self.families[i])
                cnt = self._rank_class_of_rows(rows, None)
            else:
                sub, _ = self._subrep(i)
                cnt = self.ctx.decompose(sub)
            self._fam_cls[i] = tuple(sorted(cnt.items()))
        return self._fam_cls[i]

    def quotient_class(self, u: int, v: int) -> tuple:
        """Class of family v modulo family u (u must sit inside v)."""
        if self.ctx.kind == "nakayama":
            if self.p == 2:
                cnt = self._rank_class_of_rows(self._fam_packed[v], self._fam_packed[u])
            else:
                cnt = self._rank_class_of_rows(
                    list(self.families[v]), list(self.families[u])
                )
            return tuple(sorted(cnt.items()))
        quot = self._quotient_rep(u, v)
        return tuple(sorted(self.ctx.decompose(quot).items()))

    def _rank_class_of_rows(self, v_rows, u_rows) -> Counter:
        """Nakayama class from composite ranks of (V + U)/U, no solves."""
        alg = self.ctx.alg
        p = self.p
        packed = p == 2

        def n_of(c, t):
            if packed:
                v_c = v_rows[c - 1]
                if t == 0:
                    img = v_c
                else:
                    op = self._comp_packed.get((c, t))
                    if op is None:
                        return 0
                    img = gfp.mul_packed(v_c, op)
                if u_rows is None:
                    return gfp.rank2(img)
                tv = alg.vertex_at(Interval(c, 1), t)
                u_t = u_rows[tv - 1]
                if not u_t:
                    return gfp.rank2(img)
                return gfp.rank2(img + u_t) - len(u_t)
            v_c = v_rows[c - 1]
            comp = self._comp.get((c, t))
            if comp is None:
                if t == 0:
                    img = v_c
                else:
                    return 0
            else:
                img = gfp.matmul(v_c, comp.T, p) if v_c.size else v_c
            tv = alg.vertex_at(Interval(c, 1), t)
            if u_rows is None:
                return gfp.rank(img, p)
            u_t = u_rows[tv - 1]
            if u_t.shape[0] == 0:
                return gfp.rank(img, p)
            if img.shape[0] == 0:
                return 0
            return gfp.rank(np.vstack([img, u_t]), p) - u_t.shape[0]

        def m_of(c, t):
            return n_of(c, t) - n_of(c, t + 1)

        out = Counter()
        for c in range(1, alg.n + 1):
            prev = (c - 2) % alg.n + 1
            for length in range(1, alg.proj_length(c) + 1):
                mult = m_of(c, length - 1)
                if not (alg.shape == Shape.LINEAR and c == 1):
                    mult -= m_of(prev, length)
                if mult:
                    out[self.ctx.cid_of(Interval(c, length))] = mult
        return out

    # -- concrete reps (built on demand) -----------------------------------------
    def _subrep(self, i: int):
        if i not in self._subrep_cache:
            self._subrep_cache[i] = _subrep_from_rows(self.rep, list(self.families[i]))
        return self._subrep_cache[i]

    def pair_ses(self, u: int, v: int) -> SesInstance:
        """The concrete sequence (U at u) >-> (V at v) ->> V/U."""
        vrep, v_incl = self._subrep(v)
        u_in_v = []
        for i in range(self.rep.quiver.n):
            basis = v_incl.blocks[i]
            urows = self.families[u][i]
            if urows.shape[0] == 0:
                u_in_v.append(gfp.zeros(0, vrep.dims[i]))
                continue
            coords = gfp.solve(basis, urows.T, self.p)
            if coords is None:
                raise ValueError("family not contained")
            u_in_v.append(coords.T % self.p)
        usub, u_incl = _subrep_from_rows(vrep, u_in_v)
        return ses_from_monic(u_incl)

    def _quotient_rep(self, u: int, v: int) -> QuiverRep:
        return self.pair_ses(u, v).quot

    # -- pair data ------------------------------------------------------------------
    def pair_data(self, u: int, v: int) -> PairData:
        key = (u, v)
        if key in self._pair:
            return self._pair[key]
        if u == v:
            data = PairData((), 0, True)
            self._pair[key] = data
            return data
        ucls = self.fam_class(u)
        qcls = self.quotient_class(u, v)
        vcls = self.fam_class(v)
        merged = Counter(dict(ucls))
        merged.update(dict(qcls))
        split = tuple(sorted(merged.items())) == vcls
        if split:
            data = PairData(qcls, 0, True)
        else:
            candidates = [
                (zc, yc)
                for zc, _ in qcls
                for yc, _ in ucls
                if self.ctx.ext_candidate(zc, yc)
            ]
            if not candidates:
                raise AssertionError("nonsplit inclusion without extension candidates")
            if len(candidates) == 1:
                req = self.ctx.req_mask(*candidates[0])
            else:
                req = 0
                nonzero = False
                for zc, yc in self._nonzero_component_pairs(u, v, candidates):
                    req |= self.ctx.req_mask(zc, yc)
                    nonzero = True
                if not nonzero:
                    raise AssertionError("class test and components disagree on splitting")
            data = PairData(qcls, req, False)
        self._pair[key] = data
        return data

    def _split_parts(self, u: int):
        """Summand rows of family u in ambient coordinates, per class.

        One explicit decomposition per element, shared by every pair
        involving it.
        """
        if u not in self._split_cache:
            sub, incl = self._subrep(u)
            parts = []
            for cid, s_incl, _ in self.ctx.explicit_decompose(sub):
                rows = []
                for i in range(self.rep.quiver.n):
                    cols = gfp.matmul(incl.blocks[i], s_incl.blocks[i], self.p)
                    rows.append(cols.T % self.p)
                parts.append((cid, rows))
            self._split_cache[u] = parts
        return self._split_cache[u]

    def _nonzero_component_pairs(self, u: int, v: int, candidates):
        """Class pairs whose extension component does not vanish.

        Component sequences are realized as subquotients: pull back to a
        quotient summand by lifting its rows, push out to a sub summand
        by quotienting the complementary rows, then compare classes.
        """
        u_parts = self._split_parts(u)
        ses = self.pair_ses(u, v)
        _, v_incl = self._subrep(v)
        q_parts = []
        for cid, s_incl, _ in self.ctx.explicit_decompose(ses.quot):
            rows = []
            for i in range(self.rep.quiver.n):
                zq = s_incl.blocks[i].T % self.p  # summand rows in quotient coords
                if zq.shape[0] == 0:
                    rows.append(gfp.zeros(0, self.rep.dims[i]))
                    continue
                lift = gfp.solve(ses.epic.blocks[i], zq.T, self.p)
                amb = gfp.matmul(v_incl.blocks[i], lift, self.p).T
                rows.append(amb % self.p)
            q_parts.append((cid, rows))
        out = set()
        cand = set(candidates)
        u_all = [rows for _, rows in u_parts]
        for zc, z_rows in q_parts:
            # preimage family of the quotient summand
            pre = []
            for i in range(self.rep.quiver.n):
                stack = [self.families[u][i], z_rows[i]]
                stacked = (
                    np.vstack([m for m in stack if m.size])
                    if any(m.size for m in stack)
                    else gfp.zeros(0, self.rep.dims[i])
                )
                pre.append(gfp.rref(stacked, self.p)[0])
            pre_rows = (
                [gfp.pack_rows(m) for m in pre] if self.p == 2 else pre
            )
            for idx, (yc, _) in enumerate(u_parts):
                if (zc, yc) not in cand or (zc, yc) in out:
                    continue
                ker = []
                for i in range(self.rep.quiver.n):
                    others = [
                        rows[i] for jdx, rows in enumerate(u_all) if jdx != idx
                    ]
                    stacked = (
                        np.vstack([m for m in others if m.size])
                        if any(m.size for m in others)
                        else gfp.zeros(0, self.rep.dims[i])
                    )
                    ker.append(gfp.rref(stacked, self.p)[0])
                ker_rows = (
                    [gfp.pack_rows(m) for m in ker] if self.p == 2 else ker
                )
                if self.ctx.kind == "nakayama":
                    cls = tuple(
                        sorted(self._rank_class_of_rows(pre_rows, ker_rows).items())
                    )
                else:
                    cls = self._generic_subquotient_class(pre, ker)
                expect = Counter({yc: 1, zc: 1})
                if zc == yc:
                    expect = Counter({zc: 2})
                if cls != tuple(sorted(expect.items())):
                    out.add((zc, yc))
        return out

    def _generic_subquotient_class(self, pre, ker) -> tuple:
        prerep, pincl = _subrep_from_rows(self.rep, list(pre))
        ker_in_pre = []
        for i in range(self.rep.quiver.n):
            rows = ker[i]
            if rows.shape[0] == 0:
                ker_in_pre.append(gfp.zeros(0, prerep.dims[i]))
                continue
            coords = gfp.solve(pincl.blocks[i], rows.T, self.p)
            ker_in_pre.append(coords.T % self.p)
        quot, _ = quotient_with_projection(prerep, ker_in_pre)
        return tuple(sorted(self.ctx.decompose(quot).items()))

    def req(self, u: int, v: int) -> int:
        return self.pair_data(u, v).req

    # -- per-structure views -----------------------------------------------------------
    def element_mask(self, mask: int) -> np.ndarray:
        """Admissible-subobject indicator per family."""
        if mask not in self._adm_cache:
            out = np.zeros(self.n, dtype=bool)
            for u in range(self.n):
                out[u] = self.pair_data(u, self.full_idx).req & ~mask == 0
            self._adm_cache[mask] = out
        return self._adm_cache[mask]

    def leq(self, u: int, v: int, mask: int) -> bool:
        if u == v:
            return True
        return (
            self.dims[u] < self.dims[v]
            and self.contains(u, v)
            and self.pair_data(u, v).req & ~mask == 0
        )

    def cover_rows(self) -> list[tuple[int, int, int, int]]:
        """(u, v, req, quotient cid) for pairs with indecomposable quotient."""
        if self._cover_rows is None:
            rows = []
            indec_dimvecs = {}
            n_classes = len(self.ctx.class_labels)
            for cid in range(n_classes):
                indec_dimvecs.setdefault(self.ctx.class_dimvec(cid), []).append(cid)
            for u, v in self.contained_pairs():
                dvec = tuple(
                    self.families[v][i].shape[0] - self.families[u][i].shape[0]
                    for i in range(self.rep.quiver.n)
                )
                if dvec not in indec_dimvecs:
                    continue
                qcls = self.pair_data(u, v).qcls
                if len(qcls) == 1 and qcls[0][1] == 1:
                    rows.append((u, v, self.pair_data(u, v).req, qcls[0][0]))
            self._cover_rows = rows
        return self._cover_rows

    def maximal_elements(self, mask: int, esimp: frozenset) -> list[int]:
        """Proper nonzero admissible subobjects with simple-in-E cokernel."""
        adm = self.element_mask(mask)
        out = []
        for u in range(self.n):
            if u in (self.zero_idx, self.full_idx) or not adm[u]:
                continue
            d = self.pair_data(u, self.full_idx)
            if len(d.qcls) == 1 and d.qcls[0][1] == 1 and d.qcls[0][0] in esimp:
                out.append(u)
        return out

    def common_subobjects(self, tops: list[int], mask: int) -> list[int]:
        """Admissible subobjects of X lying admissibly inside every top."""
        adm = self.element_mask(mask)
        out = []
        for w in range(self.n):
            if not adm[w]:
                continue
            ok = True
            for t in tops:
                if w == t:
                    continue
                if not (
                    self.dims[w] <= self.dims[t]
                    and self.contains(w, t)
                    and self.pair_data(w, t).req & ~mask == 0
                ):
                    ok = False
                    break
            if ok:
                out.append(w)
        return out

    def maximal_within(self, members: list[int], mask: int) -> list[int]:
        """Maximal elements of a subset under the admissible order."""
        out = []
        mem = set(members)
        for w in members:
            if any(w != x and self.leq(w, x, mask) for x in mem):
                continue
            out.append(w)
        return out

    def minimal_within(self, members: list[int], mask: int) -> list[int]:
        out = []
        mem = set(members)
        for w in members:
            if any(w != x and self.leq(x, w, mask) for x in mem):
                continue
            out.append(w)
        return out


def jh_verdict(lat: ObjectLattice, mask: int, esimp: frozenset):
    """All composition series agree?  Returns (bool, witness chains).

    Dynamic pass over admissible cover steps; at most two distinct
    factor multisets are tracked per element, which is enough to decide
    and to produce two offending chains.
    """
    adm = lat.element_mask(mask)
    steps_into: dict[int, list[tuple[int, int]]] = {}
    for u, v, req, qcid in lat.cover_rows():
        if req & ~mask == 0 and qcid in esimp and adm[u] and adm[v]:
            steps_into.setdefault(v, []).append((u, qcid))
    fm: dict[int, list[tuple[tuple, tuple]]] = {lat.zero_idx: [((), (lat.zero_idx,))]}
    order = sorted(range(lat.n), key=lambda i: (lat.dims[i], i))
    for v in order:
        if v == lat.zero_idx or not adm[v]:
            continue
        found: list[tuple[tuple, tuple]] = []
        for u, qcid in steps_into.get(v, ()):
            for key, chain in fm.get(u, ()):
                new_key = tuple(sorted(key + (qcid,)))
                if all(new_key != k for k, _ in found):
                    found.append((new_key, chain + (v,)))
                if len(found) >= 2:
                    break
            if len(found) >= 2:
                break
        if found:
            fm[v] = found
    top = fm.get(lat.full_idx, [])
    if len(top) >= 2:
        return False, (top[0], top[1])
    return True, None


def series_lengths(lat: ObjectLattice, mask: int, esimp: frozenset):
    """(min, max) composition series length, or None when none exists."""
    adm = lat.element_mask(mask)
    steps_into: dict[int, list[int]] = {}
    for u, v, req, qcid in lat.cover_rows():
        if req & ~mask == 0 and qcid in esimp and adm[u] and adm[v]:
            steps_into.setdefault(v, []).append(u)
    lo: dict[int, int] = {lat.zero_idx: 0}
    hi: dict[int, int] = {lat.zero_idx: 0}
    order = sorted(range(lat.n), key=lambda i: (lat.dims[i], i))
    for v in order:
        if v == lat.zero_idx or not adm[v]:
            continue
        cands = [u for u in steps_into.get(v, ()) if u in lo]
        if cands:
            lo[v] = min(lo[u] for u in cands) + 1
            hi[v] = max(hi[u] for u in cands) + 1
    if lat.full_idx not in lo:
        return None
    return lo[lat.full_idx], hi[lat.full_idx]


def aw_flags(lat: ObjectLattice, mask: int, esimp: frozenset):
    """(AW1, AW2, AW3) for the object of the lattice under the structure."""
    adm = lat.element_mask(mask)
    aw1 = all(
        lat.pair_data(u, lat.full_idx).split
        for u in range(lat.n)
        if adm[u]
    )
    aw2 = all(c in esimp for c in lat.cids)
    maxes = lat.maximal_elements(mask, esimp)
    if not maxes:
        aw3 = True
    else:
        common = lat.common_subobjects(maxes, mask)
        aw3 = common == [lat.zero_idx]
    return aw1, aw2, aw3


def has_nonsplit_admissible_sub(lat: ObjectLattice, mask: int) -> bool:
    """Some admissible proper subobject inclusion fails to split."""
    for u in range(lat.n):
        d = lat.pair_data(u, lat.full_idx)
        if not d.split and d.req & ~mask == 0:
            return True
    return False


def active_middle_multisets(ctx, mask: int, dim_bound: int) -> list[tuple]:
    """Middle classes of the admissible nonsplit basis extensions."""
    n = len(ctx.class_labels)
    out = set()
    for quot_cid in range(n):
        for sub_cid in range(n):
            if not ctx.ext_candidate(quot_cid, sub_cid):
                continue
            if ctx.req_mask(quot_cid, sub_cid) & ~mask:
                continue
            mid = ctx.basis_extension(quot_cid, sub_cid).mid
            cls = ctx.decompose(mid)
            cids = tuple(sorted(c for c, k in cls.items() for _ in range(k)))
            if sum(ctx.class_dim(c) for c in cids) <= dim_bound:
                out.add(cids)
    return sorted(out)


def diamond_violation(lat: ObjectLattice, mask: int, esimp: frozenset):
    """First diamond-axiom violation at this object, or None.

    Pairs that are isomorphic both as modules and in their cokernel are
    skipped: for those the factor-matching argument carries no
    information and the axiom is not used by the series comparison.
    """
    maxes = lat.maximal_elements(mask, esimp)
    for ai in range(len(maxes)):
        for bi in range(ai + 1, len(maxes)):
            a, b = maxes[ai], maxes[bi]
            if lat.fam_class(a) == lat.fam_class(b) and (
                lat.pair_data(a, lat.full_idx).qcls
                == lat.pair_data(b, lat.full_idx).qcls
            ):
                continue
            common = lat.common_subobjects([a, b], mask)
            for y in lat.maximal_within(common, mask):
                qa = lat.pair_data(y, a)
                qb = lat.pair_data(y, b)
                for part, name in ((qa, a), (qb, b)):
                    if not (
                        len(part.qcls) == 1
                        and part.qcls[0][1] == 1
                        and part.qcls[0][0] in esimp
                    ):
                        return ("quotient not simple", a, b, y)
                xa = lat.pair_data(a, lat.full_idx).qcls
                xb = lat.pair_data(b, lat.full_idx).qcls
                left = tuple(sorted([xa[0][0], qa.qcls[0][0]]))
                right = tuple(sorted([xb[0][0], qb.qcls[0][0]]))
                if left != right:
                    return ("factor sets differ", a, b, y)
    return None


def object_multisets(ctx, dim_bound: int):
    """All nonempty class multisets with total dimension within bound."""
    n = len(ctx.class_labels)
    dims = [ctx.class_dim(c) for c in range(n)]
    out = []

    def rec(start, left, acc):
        if acc:
            out.append(tuple(acc))
        for j in range(start, n):
            if dims[j] <= left:
                acc.append(j)
                rec(j, left - dims[j], acc)
                acc.pop()

    rec(0, dim_bound, [])
    return sorted(set(out))
