"""Brute-force ground truth over GF(p).

Submodule enumeration, short-exact-sequence component decomposition,
admissibility of concrete monics, and the closure data of structures
given by AR-sequence subsets.  Everything here works from explicit
matrices; the combinatorial layer is validated against it.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import product

import numpy as np

from . import gfp
from .errors import DimensionBound, NotMonic
from .intervals import Interval
from .reps import (
    QuiverRep,
    RepMorphism,
    SesInstance,
    all_homs,
    hom_space,
    is_split_ses,
    pullback_ses,
    pushout_ses,
    rep_of_multiset,
    ses_from_monic,
)

SUBMODULE_DIM_BOUND = 7
AXIOM_DIM_BOUND = 5

Family = tuple  # per-vertex RREF row bases, one ndarray per vertex


def family_key(fam: Family) -> bytes:
    return b"!".join(m.astype(np.int8).tobytes() + bytes([m.shape[1] % 251]) for m in fam)


def family_dim(fam: Family) -> int:
    return sum(m.shape[0] for m in fam)


def enumerate_submodules(rep: QuiverRep, bound: int = SUBMODULE_DIM_BOUND) -> list[Family]:
    """Every arrow-stable graded subspace family, canonically presented.

    Families are tuples of per-vertex RREF bases, sorted by total
    dimension then by key, so output order is deterministic.
    """
    if rep.total_dim > bound:
        raise DimensionBound(
            f"total dimension {rep.total_dim} exceeds bound {bound}"
        )
    q, p = rep.quiver, rep.p
    per_vertex = [gfp.all_subspaces(d, p) for d in rep.dims]
    arrows_by_last = [[] for _ in range(q.n)]
    for a in q.arrows:
        s, t = q.v_index(a.src), q.v_index(a.tgt)
        arrows_by_last[max(s, t)].append((a.name, s, t))
    out: list[Family] = []

    if p == 2:
        packed = [[gfp.pack_rows(m) for m in cands] for cands in per_vertex]
        piv = [[gfp.pivots_of(rows) for rows in cands] for cands in packed]
        mat_packed = {a.name: gfp.pack_rows(rep.mats[a.name]) for a in q.arrows}

        def assign2(i, chosen):
            if i == q.n:
                out.append(tuple(per_vertex[k][j] for k, j in enumerate(chosen)))
                return
            for ci in range(len(per_vertex[i])):
                ok = True
                for name, s, t in arrows_by_last[i]:
                    src_i = ci if s == i else chosen[s]
                    tgt_i = ci if t == i else chosen[t]
                    rows = packed[s][src_i]
                    if not rows:
                        continue
                    tgt_piv = piv[t][tgt_i]
                    for img in gfp.mul_packed(rows, mat_packed[name]):
                        if gfp.reduce2(img, tgt_piv):
                            ok = False
                            break
                    if not ok:
                        break
                if ok:
                    assign2(i + 1, chosen + [ci])

        assign2(0, [])
        out.sort(key=lambda f: (family_dim(f), family_key(f)))
        return out

    def assign(i, chosen):
        if i == q.n:
            out.append(tuple(chosen))
            return
        for cand in per_vertex[i]:
            ok = True
            for name, s, t in arrows_by_last[i]:
                u_s = cand if s == i else chosen[s]
                u_t = cand if t == i else chosen[t]
                if u_s.shape[0] == 0:
                    continue
                img = gfp.matmul(u_s, rep.mats[name].T, p)
                if not gfp.row_space_contains(img, u_t, p):
                    ok = False
                    break
            if ok:
                assign(i + 1, chosen + [cand])

    assign(0, [])
    out.sort(key=lambda f: (family_dim(f), family_key(f)))
    return out


def family_vector_masks(fam: Family, p: int) -> tuple[int, ...]:
    """Per-vertex bitmask over all ambient vectors lying in the subspace."""
    if p == 2:
        return tuple(gfp.span_bits(gfp.pack_rows(m)) for m in fam)
    masks = []
    for m in fam:
        bits = 0
        for vec in gfp.span_vectors(m, p):
            code = 0
            for x in vec:
                code = code * p + x
            bits |= 1 << code
        masks.append(bits)
    return tuple(masks)


# ---------------------------------------------------------------------------
# extension search (independent of the combinatorial shape formulas)


def _middle_candidates(ctx, dimvec):
    """Catalog multisets with the given dimension vector."""
    n = len(ctx.class_labels)
    vecs = [ctx.class_dimvec(c) for c in range(n)]
    found = []

    def rec(i, remaining, acc):
        if all(x == 0 for x in remaining):
            found.append(tuple(acc))
            return
        if i == n:
            return
        vec = vecs[i]
        max_k = min(
            (r // v for r, v in zip(remaining, vec) if v), default=0
        )
        if all(v == 0 for v in vec):
            max_k = 0
        for k in range(max_k, -1, -1):
            nxt = tuple(r - k * v for r, v in zip(remaining, vec))
            if any(x < 0 for x in nxt):
                continue
            rec(i + 1, nxt, acc + [i] * k)

    rec(0, tuple(dimvec), [])
    return found


def nonsplit_extension_search(ctx, sub_cid: int, quot_cid: int) -> SesInstance | None:
    """Exhaustive search for a nonsplit sequence sub >-> M ->> quot."""
    sub_rep = ctx.rep_of(sub_cid)
    quot_rep = ctx.rep_of(quot_cid)
    dimvec = tuple(a + b for a, b in zip(sub_rep.dims, quot_rep.dims))
    for mid_cids in _middle_candidates(ctx, dimvec):
        mid = rep_of_multiset(ctx, list(mid_cids))
        for monic in all_homs(sub_rep, mid):
            if monic.is_zero() or not monic.is_injective():
                continue
            ses = ses_from_monic(monic)
            try:
                cls = ctx.decompose(ses.quot)
            except Exception:
                continue
            if cls != Counter({quot_cid: 1}):
                continue
            for h in all_homs(ses.quot, quot_rep):
                if not (h.is_injective() and h.is_surjective()):
                    continue
                full = SesInstance(monic, h.compose(ses.epic))
                if not is_split_ses(full):
                    return full
                break
    return None


def ext_dim_by_presentation(ctx, quot_cid: int, sub_cid: int) -> int:
    """dim Ext^1(quot, sub) from the projective presentation of quot.

    Nakayama only: the cover of an interval is the projective at its
    top, with uniserial syzygy.
    """
    alg = ctx.alg
    q = ctx.class_labels[quot_cid]
    big = alg.proj_length(q.top)
    if q.length == big:
        return 0
    p0 = ctx.rep_of(ctx.cid_of(Interval(q.top, big)))
    omega = ctx.rep_of(ctx.cid_of(Interval(alg.vertex_at(q, q.length), big - q.length)))
    s = ctx.rep_of(sub_cid)
    quot_rep = ctx.rep_of(quot_cid)
    return (
        len(hom_space(omega, s))
        - len(hom_space(p0, s))
        + len(hom_space(quot_rep, s))
    )


# ---------------------------------------------------------------------------
# components and admissibility


def ses_components(ctx, ses: SesInstance) -> list[tuple[int, int, int, int, bool]]:
    """Component data (quot summand, sub summand, classes, nonsplit flag).

    Each entry is (j, i, quot_cid, sub_cid, nonzero) for the j-th quot
    summand and i-th sub summand; the component sequence is the pullback
    along the summand inclusion followed by the pushout along the
    summand projection.
    """
    sub_dec = ctx.explicit_decompose(ses.sub)
    quot_dec = ctx.explicit_decompose(ses.quot)
    out = []
    for j, (zc, z_incl, _) in enumerate(quot_dec):
        pulled, _ = pullback_ses(ses, z_incl)
        for i, (yc, _, y_proj) in enumerate(sub_dec):
            comp, _ = pushout_ses(pulled, y_proj)
            out.append((j, i, zc, yc, not is_split_ses(comp)))
    return out


def ses_required_mask(ctx, ses: SesInstance) -> int:
    """AR sequences forced by the sequence.

    Class arithmetic settles the split and single-candidate cases;
    only sequences with several candidate component pairs need the
    full component decomposition.
    """
    sub_cls = ctx.decompose(ses.sub)
    quot_cls = ctx.decompose(ses.quot)
    mid_cls = ctx.decompose(ses.mid)
    if sub_cls + quot_cls == mid_cls:
        return 0
    candidates = [
        (zc, yc)
        for zc in quot_cls
        for yc in sub_cls
        if ctx.ext_candidate(zc, yc)
    ]
    if not candidates:
        raise AssertionError("nonsplit sequence without extension candidates")
    if len(candidates) == 1:
        return ctx.req_mask(*candidates[0])
    mask = 0
    for _, _, zc, yc, nonzero in ses_components(ctx, ses):
        if nonzero:
            mask |= ctx.req_mask(zc, yc)
    return mask


def required_ar_mask_oracle(ctx, ses: SesInstance) -> int:
    """AR sequences forced by the sequence, via explicit base changes.

    Sequence k is required when some hom-basis pair (sub -> translate,
    end -> quot) produces a nonsplit pullback-pushout; bilinearity of
    the construction makes basis pairs sufficient.
    """
    mask = 0
    for k in range(ctx.n_ar):
        tau_rep = ctx.rep_of(ctx.ar_sub_cid(k))
        end_rep = ctx.rep_of(ctx.ar_end_cid(k))
        gs = hom_space(end_rep, ses.quot)
        fs = hom_space(ses.sub, tau_rep)
        if not gs or not fs:
            continue
        hit = False
        for g in gs:
            pulled, _ = pullback_ses(ses, g)
            for f in fs:
                comp, _ = pushout_ses(pulled, f)
                if not is_split_ses(comp):
                    hit = True
                    break
            if hit:
                break
        if hit:
            mask |= 1 << k
    return mask


def admissible_ses(ctx, mask: int, ses: SesInstance) -> bool:
    return ses_required_mask(ctx, ses) & ~mask == 0


def admissible_monic(structure, f: RepMorphism, bound: int = SUBMODULE_DIM_BOUND) -> bool:
    """Is the injective morphism an admissible monic of the structure?"""
    if f.target.total_dim > bound:
        raise DimensionBound(f"target dimension {f.target.total_dim} exceeds {bound}")
    if not f.is_injective():
        raise NotMonic("admissibility test needs an injective morphism")
    ctx = structure.context(f.p)
    ses = ses_from_monic(f)
    return admissible_ses(ctx, structure.mask, ses)


# ---------------------------------------------------------------------------
# closed structures as active component sets


@dataclass(frozen=True)
class Subfunctor:
    """Active extension components of the structure generated by B."""

    ctx_key: tuple
    mask: int
    active: frozenset  # pairs (quot_cid, sub_cid)

    def is_active(self, quot_cid: int, sub_cid: int) -> bool:
        return (quot_cid, sub_cid) in self.active


def subfunctor_closure(ctx, mask: int) -> Subfunctor:
    """Active pairs of E(B): candidates whose forced sequences lie in B."""
    active = set()
    n = len(ctx.class_labels)
    for quot_cid in range(n):
        for sub_cid in range(n):
            if not ctx.ext_candidate(quot_cid, sub_cid):
                continue
            if ctx.oracle_req_mask(quot_cid, sub_cid) & ~mask == 0:
                active.add((quot_cid, sub_cid))
    return Subfunctor(ctx.cache_key(), mask, frozenset(active))


def subfunctor_socle_mask(ctx, subf: Subfunctor) -> int:
    """Mask of AR sequences whose own component pair is active."""
    mask = 0
    for k in range(ctx.n_ar):
        if subf.is_active(ctx.ar_end_cid(k), ctx.ar_sub_cid(k)):
            mask |= 1 << k
    return mask


def check_propagation_closed(ctx, subf: Subfunctor) -> list[str]:
    """Pullback-pushout propagation must stay inside the active set.

    Returns a list of violation descriptions (empty when closed).
    """
    bad = []
    n = len(ctx.class_labels)
    for quot_cid, sub_cid in sorted(subf.active):
        ses = ctx.basis_extension(quot_cid, sub_cid)
        for z2 in range(n):
            gs = hom_space(ctx.rep_of(z2), ses.quot)
            if not gs:
                continue
            for y2 in range(n):
                fs = hom_space(ses.sub, ctx.rep_of(y2))
                if not fs:
                    continue
                for g in gs:
                    pulled, _ = pullback_ses(ses, g)
                    for f in fs:
                        comp, _ = pushout_ses(pulled, f)
                        if not is_split_ses(comp) and not subf.is_active(z2, y2):
                            bad.append(
                                f"active ({ctx.label(quot_cid)},{ctx.label(sub_cid)}) "
                                f"propagates outside to ({ctx.label(z2)},{ctx.label(y2)})"
                            )
    return bad
