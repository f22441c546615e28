"""Explicit quiver representations over a small prime field.

This is the ground-truth layer: modules are vertex-graded vector
spaces with one matrix per arrow, morphisms are vertexwise matrices
commuting with the arrows, and short exact sequences are concrete
kernel-cokernel pairs.  Everything downstream (subobject posets,
composition series, axiom validation) is computed from this data.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import NamedTuple, Optional, Sequence

import numpy as np

from . import gfp
from .errors import DecompositionFailed, NotAnExtension, NotMonic, UnrecognizedModule
from .intervals import (
    AlgebraSpec,
    ExtCase,
    Interval,
    Shape,
    ar_sequences,
    ext_shape,
    indecomposables,
)
from .structures import required_ar_mask


class Arrow(NamedTuple):
    name: str
    src: int
    tgt: int


@dataclass(frozen=True)
class Quiver:
    vertices: tuple[int, ...]
    arrows: tuple[Arrow, ...]
    relations: tuple[tuple[str, ...], ...]

    def v_index(self, v: int) -> int:
        return self.vertices.index(v)

    @property
    def n(self) -> int:
        return len(self.vertices)


@dataclass
class QuiverRep:
    quiver: Quiver
    p: int
    dims: tuple[int, ...]
    mats: dict[str, np.ndarray]

    def __post_init__(self):
        for a in self.quiver.arrows:
            m = np.asarray(self.mats[a.name], dtype=np.int64) % self.p
            self.mats[a.name] = m
            want = (self.dims[self.quiver.v_index(a.tgt)], self.dims[self.quiver.v_index(a.src)])
            if m.shape != want:
                raise ValueError(f"arrow {a.name}: shape {m.shape}, expected {want}")

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    def is_zero(self) -> bool:
        return self.total_dim == 0

    def dim_at(self, v: int) -> int:
        return self.dims[self.quiver.v_index(v)]

    def validate_relations(self) -> None:
        for path in self.quiver.relations:
            m = self.path_matrix(path)
            if m.any():
                raise ValueError(f"relation {path} does not vanish")

    def path_matrix(self, path: Sequence[str]) -> np.ndarray:
        """Composite along a path given in travel order (first arrow first)."""
        m = self.mats[path[0]]
        for name in path[1:]:
            m = gfp.matmul(self.mats[name], m, self.p)
        return m

    def key(self) -> bytes:
        parts = [bytes(self.dims)]
        for a in self.quiver.arrows:
            parts.append(self.mats[a.name].astype(np.int8).tobytes())
        return b"|".join(parts)


@dataclass
class RepMorphism:
    source: QuiverRep
    target: QuiverRep
    blocks: tuple[np.ndarray, ...]

    def __post_init__(self):
        q = self.source.quiver
        fixed = []
        for i in range(q.n):
            b = np.asarray(self.blocks[i], dtype=np.int64) % self.source.p
            want = (self.target.dims[i], self.source.dims[i])
            if b.shape != want:
                raise ValueError(f"block at vertex {q.vertices[i]}: {b.shape} != {want}")
            fixed.append(b)
        self.blocks = tuple(fixed)

    @property
    def p(self) -> int:
        return self.source.p

    def validate(self) -> None:
        q = self.source.quiver
        for a in q.arrows:
            s, t = q.v_index(a.src), q.v_index(a.tgt)
            lhs = gfp.matmul(self.target.mats[a.name], self.blocks[s], self.p)
            rhs = gfp.matmul(self.blocks[t], self.source.mats[a.name], self.p)
            if ((lhs - rhs) % self.p).any():
                raise ValueError(f"morphism does not commute with arrow {a.name}")

    def is_injective(self) -> bool:
        return all(
            gfp.rank(b, self.p) == self.source.dims[i]
            for i, b in enumerate(self.blocks)
        )

    def is_surjective(self) -> bool:
        return all(
            gfp.rank(b, self.p) == self.target.dims[i]
            for i, b in enumerate(self.blocks)
        )

    def is_zero(self) -> bool:
        return not any(b.any() for b in self.blocks)

    def compose(self, other: "RepMorphism") -> "RepMorphism":
        """self after other (other first)."""
        return RepMorphism(
            other.source,
            self.target,
            tuple(
                gfp.matmul(self.blocks[i], other.blocks[i], self.p)
                for i in range(len(self.blocks))
            ),
        )


def identity_morphism(x: QuiverRep) -> RepMorphism:
    return RepMorphism(x, x, tuple(gfp.eye(d) for d in x.dims))


def zero_rep(quiver: Quiver, p: int) -> QuiverRep:
    dims = tuple(0 for _ in quiver.vertices)
    mats = {a.name: gfp.zeros(0, 0) for a in quiver.arrows}
    return QuiverRep(quiver, p, dims, mats)


@dataclass
class SesInstance:
    """Concrete kernel-cokernel pair sub >-> mid ->> quot."""

    monic: RepMorphism
    epic: RepMorphism

    def __post_init__(self):
        if self.monic.target is not self.epic.source:
            if self.monic.target.key() != self.epic.source.key():
                raise ValueError("monic target and epic source differ")
        self.validate()

    @property
    def sub(self) -> QuiverRep:
        return self.monic.source

    @property
    def mid(self) -> QuiverRep:
        return self.monic.target

    @property
    def quot(self) -> QuiverRep:
        return self.epic.target

    def validate(self) -> None:
        self.monic.validate()
        self.epic.validate()
        if not self.monic.is_injective():
            raise ValueError("monic not injective")
        if not self.epic.is_surjective():
            raise ValueError("epic not surjective")
        if self.sub.total_dim + self.quot.total_dim != self.mid.total_dim:
            raise ValueError("dimension mismatch in sequence")
        comp = self.epic.compose(self.monic)
        if not comp.is_zero():
            raise ValueError("composite of monic and epic is nonzero")


# ---------------------------------------------------------------------------
# constructions


def sum_with_maps(reps: Sequence[QuiverRep]):
    """Direct sum with canonical inclusions and projections."""
    if not reps:
        raise ValueError("empty direct sum; use zero_rep")
    q, p = reps[0].quiver, reps[0].p
    nv = q.n
    offsets = []
    dims = [0] * nv
    for r in reps:
        offsets.append(tuple(dims))
        for i in range(nv):
            dims[i] += r.dims[i]
    mats = {}
    for a in q.arrows:
        s, t = q.v_index(a.src), q.v_index(a.tgt)
        m = gfp.zeros(dims[t], dims[s])
        for r, off in zip(reps, offsets):
            blk = r.mats[a.name]
            m[off[t] : off[t] + r.dims[t], off[s] : off[s] + r.dims[s]] = blk
        mats[a.name] = m
    total = QuiverRep(q, p, tuple(dims), mats)
    incls, projs = [], []
    for r, off in zip(reps, offsets):
        inc, prj = [], []
        for i in range(nv):
            e = gfp.zeros(dims[i], r.dims[i])
            for j in range(r.dims[i]):
                e[off[i] + j, j] = 1
            inc.append(e)
            prj.append(e.T.copy())
        incls.append(RepMorphism(r, total, tuple(inc)))
        projs.append(RepMorphism(total, r, tuple(prj)))
    return total, incls, projs


def direct_sum_ses(a: SesInstance, b: SesInstance) -> SesInstance:
    sub, si, sp = sum_with_maps([a.sub, b.sub])
    mid, mi, mp = sum_with_maps([a.mid, b.mid])
    quot, qi, _ = sum_with_maps([a.quot, b.quot])
    monic_blocks = []
    epic_blocks = []
    for i in range(a.sub.quiver.n):
        monic_blocks.append(
            mi[0].blocks[i] @ a.monic.blocks[i] @ sp[0].blocks[i]
            + mi[1].blocks[i] @ b.monic.blocks[i] @ sp[1].blocks[i]
        )
        epic_blocks.append(
            qi[0].blocks[i] @ a.epic.blocks[i] @ mp[0].blocks[i]
            + qi[1].blocks[i] @ b.epic.blocks[i] @ mp[1].blocks[i]
        )
    monic = RepMorphism(sub, mid, tuple(m % a.sub.p for m in monic_blocks))
    epic = RepMorphism(mid, quot, tuple(m % a.sub.p for m in epic_blocks))
    return SesInstance(monic, epic)


_HOM_CACHE: dict[tuple, list] = {}


def hom_space(x: QuiverRep, y: QuiverRep) -> list[RepMorphism]:
    """Basis of Hom(x, y): solve all commutation constraints.

    Results are cached by matrix content, so catalog pairs are solved
    once per process.
    """
    cache_key = (x.quiver, x.p, x.key(), y.key())
    cached = _HOM_CACHE.get(cache_key)
    if cached is not None:
        return [RepMorphism(x, y, blocks) for blocks in cached]
    q, p = x.quiver, x.p
    nv = q.n
    offs, tot = [], 0
    for i in range(nv):
        offs.append(tot)
        tot += y.dims[i] * x.dims[i]
    if tot == 0:
        _HOM_CACHE[cache_key] = []
        return []
    rows = []
    for a in q.arrows:
        s, t = q.v_index(a.src), q.v_index(a.tgt)
        ya, xa = y.mats[a.name], x.mats[a.name]
        for i in range(y.dims[t]):
            for j in range(x.dims[s]):
                row = gfp.zeros(1, tot)[0]
                for k in range(x.dims[t]):
                    row[offs[t] + i * x.dims[t] + k] -= xa[k, j]
                for k in range(y.dims[s]):
                    row[offs[s] + k * x.dims[s] + j] += ya[i, k]
                rows.append(row % p)
    mat = np.array(rows, dtype=np.int64) if rows else gfp.zeros(0, tot)
    basis = gfp.nullspace(mat, p)
    out = []
    stored = []
    for vec in basis:
        blocks = []
        for i in range(nv):
            n_entries = y.dims[i] * x.dims[i]
            blk = vec[offs[i] : offs[i] + n_entries].reshape(y.dims[i], x.dims[i])
            blocks.append(blk.copy())
        stored.append(tuple(blocks))
        out.append(RepMorphism(x, y, tuple(blocks)))
    _HOM_CACHE[cache_key] = stored
    return out


def hom_dim(x: QuiverRep, y: QuiverRep) -> int:
    return len(hom_space(x, y))


def all_homs(x: QuiverRep, y: QuiverRep) -> list[RepMorphism]:
    """Every morphism x -> y (span of the basis; includes zero)."""
    basis = hom_space(x, y)
    p = x.p
    out = []
    for coeffs in product(range(p), repeat=len(basis)):
        blocks = tuple(
            sum(
                (c * b.blocks[i] for c, b in zip(coeffs, basis)),
                gfp.zeros(y.dims[i], x.dims[i]),
            )
            % p
            for i in range(x.quiver.n)
        )
        out.append(RepMorphism(x, y, blocks))
    return out


def kernel_with_inclusion(f: RepMorphism) -> tuple[QuiverRep, RepMorphism]:
    """Kernel subrepresentation with its inclusion."""
    x, q, p = f.source, f.source.quiver, f.p
    bases = [gfp.nullspace(f.blocks[i], p) for i in range(q.n)]
    return _subrep_from_rows(x, bases)


def image_rows(f: RepMorphism) -> list[np.ndarray]:
    """Canonical per-vertex row bases of the image."""
    return [gfp.rref(b.T, f.p)[0] for b in f.blocks]


def _subrep_from_rows(x: QuiverRep, rows: list[np.ndarray]):
    """Subrepresentation spanned by given per-vertex rows (must be stable)."""
    q, p = x.quiver, x.p
    bases = [gfp.rref(r, p)[0] if r.size else gfp.zeros(0, x.dims[i]) for i, r in enumerate(rows)]
    dims = tuple(b.shape[0] for b in bases)
    mats = {}
    for a in q.arrows:
        s, t = q.v_index(a.src), q.v_index(a.tgt)
        img = gfp.matmul(x.mats[a.name], bases[s].T, p)
        coords = gfp.solve(bases[t].T, img, p) if dims[t] else gfp.zeros(0, dims[s])
        if coords is None:
            raise ValueError("rows are not arrow-stable")
        mats[a.name] = coords.reshape(dims[t], dims[s])
    sub = QuiverRep(q, p, dims, mats)
    incl = RepMorphism(sub, x, tuple(b.T.copy() for b in bases))
    return sub, incl


def quotient_with_projection(x: QuiverRep, rows: list[np.ndarray]):
    """Quotient by the subrepresentation spanned by rows, with projection."""
    q, p = x.quiver, x.p
    projs, sections = [], []
    for i in range(q.n):
        r, pivots = gfp.rref(rows[i], p) if rows[i].size else (gfp.zeros(0, x.dims[i]), ())
        free = [c for c in range(x.dims[i]) if c not in pivots]
        # reduce a vector by the pivot rows, then read off free coordinates
        proj = gfp.zeros(len(free), x.dims[i])
        for k, fc in enumerate(free):
            proj[k, fc] = 1
            for rr, pc in enumerate(pivots):
                proj[k, pc] = (-r[rr, fc]) % p
        sec = gfp.zeros(x.dims[i], len(free))
        for k, fc in enumerate(free):
            sec[fc, k] = 1
        projs.append(proj)
        sections.append(sec)
    dims = tuple(pr.shape[0] for pr in projs)
    mats = {}
    for a in q.arrows:
        s, t = q.v_index(a.src), q.v_index(a.tgt)
        mats[a.name] = gfp.matmul(
            projs[t], gfp.matmul(x.mats[a.name], sections[s], p), p
        )
    quot = QuiverRep(q, p, dims, mats)
    projection = RepMorphism(x, quot, tuple(projs))
    return quot, projection


def ses_from_monic(f: RepMorphism) -> SesInstance:
    if not f.is_injective():
        raise NotMonic("cokernel sequence needs an injective morphism")
    rows = image_rows(f)
    _, projection = quotient_with_projection(f.target, rows)
    return SesInstance(f, projection)


def pullback_ses(ses: SesInstance, g: RepMorphism):
    """Base change along g into the quotient; returns (new ses, map to mid)."""
    b, z, p = ses.mid, g.source, ses.mid.p
    q = b.quiver
    total, _, (pb, pz) = sum_with_maps([b, z])
    # kernel of (epic, -g) : B (+) Z -> Q
    rows = []
    for i in range(q.n):
        m = np.hstack([ses.epic.blocks[i], (-g.blocks[i]) % p])
        rows.append(gfp.nullspace(m, p))
    pull, incl = _subrep_from_rows(total, rows)
    to_b = pb.compose(incl)
    to_z = pz.compose(incl)
    # sub includes via (monic, 0)
    lift = gfp_solve_blocks(
        incl.blocks,
        [
            np.vstack([ses.monic.blocks[i], gfp.zeros(z.dims[i], ses.sub.dims[i])])
            for i in range(q.n)
        ],
        p,
    )
    monic = RepMorphism(ses.sub, pull, lift)
    return SesInstance(monic, to_z), to_b


def pushout_ses(ses: SesInstance, f: RepMorphism):
    """Cobase change along f out of the sub; returns (new ses, map from mid)."""
    b, y, p = ses.mid, f.target, ses.mid.p
    q = b.quiver
    total, (ib, iy), _ = sum_with_maps([b, y])
    # rows of the antidiagonal image (monic, -f)(sub) inside B (+) Y
    anti = [
        np.hstack([ses.monic.blocks[i].T, (-f.blocks[i].T) % p]) % p
        for i in range(q.n)
    ]
    _, projection = quotient_with_projection(total, anti)
    from_b = projection.compose(ib)
    from_y = projection.compose(iy)
    # quotient map descends as (epic, 0)
    desc = _descend(
        projection,
        [
            np.hstack([ses.epic.blocks[i], gfp.zeros(ses.quot.dims[i], y.dims[i])]) % p
            for i in range(q.n)
        ],
        ses.quot,
        p,
    )
    return SesInstance(from_y, desc), from_b


def _descend(projection: RepMorphism, block_list, target: QuiverRep, p: int) -> RepMorphism:
    """Factor a map through a quotient projection (must vanish on kernel)."""
    blocks = []
    for i, blk in enumerate(block_list):
        pr = projection.blocks[i]
        sol = gfp.solve(pr.T, blk.T, p)
        if sol is None:
            raise ValueError("map does not descend to the quotient")
        blocks.append(sol.T % p)
    return RepMorphism(projection.target, target, tuple(blocks))


def gfp_solve_blocks(basis_blocks, target_blocks, p):
    """Coordinates of target columns in basis columns, per vertex."""
    out = []
    for basis, tgt in zip(basis_blocks, target_blocks):
        if basis.shape[1] == 0:
            if tgt.size and tgt.any():
                raise ValueError("cannot express nonzero columns in empty basis")
            out.append(gfp.zeros(0, tgt.shape[1]))
            continue
        sol = gfp.solve(basis, tgt, p)
        if sol is None:
            raise ValueError("columns not in span")
        out.append(sol)
    return tuple(out)


def is_split_ses(ses: SesInstance) -> bool:
    """Retraction search: does some r with r . monic = id exist?"""
    a, b, p = ses.sub, ses.mid, ses.mid.p
    q = b.quiver
    nv = q.n
    offs, tot = [], 0
    for i in range(nv):
        offs.append(tot)
        tot += a.dims[i] * b.dims[i]
    if tot == 0:
        return True
    rows, rhs = [], []
    for arr in q.arrows:
        s, t = q.v_index(arr.src), q.v_index(arr.tgt)
        aa, ba = a.mats[arr.name], b.mats[arr.name]
        for i in range(a.dims[t]):
            for j in range(b.dims[s]):
                row = gfp.zeros(1, tot)[0]
                for k in range(a.dims[s]):
                    row[offs[s] + k * b.dims[s] + j] += aa[i, k]
                for k in range(b.dims[t]):
                    row[offs[t] + i * b.dims[t] + k] -= ba[k, j]
                rows.append(row % p)
                rhs.append(0)
    for i in range(nv):
        mb = ses.monic.blocks[i]
        for r_i in range(a.dims[i]):
            for c in range(a.dims[i]):
                row = gfp.zeros(1, tot)[0]
                for k in range(b.dims[i]):
                    row[offs[i] + r_i * b.dims[i] + k] = mb[k, c]
                rows.append(row % p)
                rhs.append(1 if r_i == c else 0)
    mat = np.array(rows, dtype=np.int64)
    vec = np.array(rhs, dtype=np.int64).reshape(-1, 1)
    return gfp.solve(mat, vec, p) is not None


# ---------------------------------------------------------------------------
# Nakayama context


def nakayama_quiver(alg: AlgebraSpec) -> Quiver:
    n = alg.n
    arrows = []
    last = n if alg.shape == Shape.CYCLIC else n - 1
    for i in range(1, last + 1):
        arrows.append(Arrow(f"a{i}", i, alg.next_vertex(i)))
    relations = []
    for i in range(1, n + 1):
        l = alg.proj_length(i)
        if alg.shape == Shape.LINEAR and i + l > n:
            continue
        path = tuple(f"a{alg.vertex_at(Interval(i, 1), k)}" for k in range(l))
        relations.append(path)
    return Quiver(tuple(range(1, n + 1)), tuple(arrows), tuple(relations))


class NakayamaContext:
    """Catalog of interval representations of one algebra over GF(p)."""

    kind = "nakayama"

    def __init__(self, alg: AlgebraSpec, p: int):
        self.alg = alg
        self.p = p
        self.quiver = nakayama_quiver(alg)
        self.class_labels: list[Interval] = indecomposables(alg)
        self._cid = {m: i for i, m in enumerate(self.class_labels)}
        self._ar = ar_sequences(alg)
        self.n_ar = len(self._ar)
        self._rep_cache: dict[int, QuiverRep] = {}
        self._ar_ses_cache: dict[int, SesInstance] = {}
        self._hom_cache: dict[tuple[int, int], list[RepMorphism]] = {}
        self._basis_ses_cache: dict[tuple[int, int], SesInstance] = {}
        self._oracle_req_cache: dict[tuple[int, int], int] = {}

    # -- catalog ----------------------------------------------------------
    def cid_of(self, m: Interval) -> int:
        return self._cid[Interval(*m)]

    def label(self, cid: int) -> str:
        m = self.class_labels[cid]
        return f"({m.top},{m.length})"

    def class_dim(self, cid: int) -> int:
        return self.class_labels[cid].length

    def class_dimvec(self, cid: int) -> tuple[int, ...]:
        return tuple(self.rep_of(cid).dims)

    def rep_of(self, cid: int) -> QuiverRep:
        if cid not in self._rep_cache:
            self._rep_cache[cid] = interval_to_rep(self, self.class_labels[cid])
        return self._rep_cache[cid]

    def hom_basis(self, src_cid: int, tgt_cid: int) -> list[RepMorphism]:
        key = (src_cid, tgt_cid)
        if key not in self._hom_cache:
            self._hom_cache[key] = hom_space(self.rep_of(src_cid), self.rep_of(tgt_cid))
        return self._hom_cache[key]

    # -- AR data ----------------------------------------------------------
    def ar_end_cid(self, k: int) -> int:
        return self.cid_of(self._ar[k].end)

    def ar_sub_cid(self, k: int) -> int:
        return self.cid_of(self._ar[k].sub)

    def ar_ses(self, k: int) -> SesInstance:
        if k not in self._ar_ses_cache:
            seq = self._ar[k]
            self._ar_ses_cache[k] = realize_extension(self, seq.sub, seq.end)
        return self._ar_ses_cache[k]

    # -- structure data ---------------------------------------------------
    def cache_key(self) -> tuple:
        return (self.alg, self.p)

    def ext_candidate(self, quot_cid: int, sub_cid: int) -> bool:
        return ext_shape(self.alg, self.class_labels[sub_cid], self.class_labels[quot_cid]) is not None

    def req_mask(self, quot_cid: int, sub_cid: int) -> int:
        return required_ar_mask(self.alg, self.class_labels[sub_cid], self.class_labels[quot_cid])

    def basis_extension(self, quot_cid: int, sub_cid: int) -> SesInstance:
        key = (quot_cid, sub_cid)
        if key not in self._basis_ses_cache:
            self._basis_ses_cache[key] = realize_extension(
                self, self.class_labels[sub_cid], self.class_labels[quot_cid]
            )
        return self._basis_ses_cache[key]

    def oracle_req_mask(self, quot_cid: int, sub_cid: int) -> int:
        """Forced sequences computed by explicit base change (no shape table)."""
        key = (quot_cid, sub_cid)
        if key not in self._oracle_req_cache:
            from .oracle import required_ar_mask_oracle

            self._oracle_req_cache[key] = required_ar_mask_oracle(
                self, self.basis_extension(quot_cid, sub_cid)
            )
        return self._oracle_req_cache[key]

    def e_simple_cids(self, mask: int) -> frozenset[int]:
        from .structures import ExactStructure, e_simples

        return frozenset(self.cid_of(m) for m in e_simples(ExactStructure(self.alg, mask)))

    # -- decomposition ----------------------------------------------------
    def decompose(self, rep: QuiverRep) -> Counter:
        return nakayama_class(self, rep)

    def explicit_decompose(self, rep: QuiverRep):
        return nakayama_explicit_decompose(self, rep)


@lru_cache(maxsize=None)
def nakayama_context(alg: AlgebraSpec, p: int) -> NakayamaContext:
    return NakayamaContext(alg, p)


def interval_to_rep(ctx: NakayamaContext, m: Interval) -> QuiverRep:
    """Uniserial representation: one basis vector per composition factor."""
    alg, q = ctx.alg, ctx.quiver
    dims = [0] * alg.n
    for x in range(m.length):
        dims[alg.vertex_at(m, x) - 1] += 1
    if any(d > 1 for d in dims):
        raise ValueError("winding interval cannot be realized")
    mats = {}
    inside = {alg.vertex_at(m, x): x for x in range(m.length)}
    for a in q.arrows:
        blk = gfp.zeros(dims[a.tgt - 1], dims[a.src - 1])
        x = inside.get(a.src)
        if x is not None and x < m.length - 1 and inside.get(a.tgt) == x + 1:
            blk[0, 0] = 1
        mats[a.name] = blk
    rep = QuiverRep(q, ctx.p, tuple(dims), mats)
    rep.validate_relations()
    return rep


def rep_of_multiset(ctx, cids: Sequence[int]) -> QuiverRep:
    reps = [ctx.rep_of(c) for c in sorted(cids)]
    if not reps:
        return zero_rep(ctx.quiver, ctx.p)
    if len(reps) == 1:
        return reps[0]
    total, _, _ = sum_with_maps(reps)
    return total


def composite_matrices(rep: QuiverRep, alg: AlgebraSpec) -> dict[tuple[int, int], np.ndarray]:
    """(vertex, steps) -> composite arrow matrix starting at vertex."""
    out = {}
    for c in range(1, alg.n + 1):
        m = gfp.eye(rep.dims[c - 1])
        out[(c, 0)] = m
        v = c
        for t in range(1, alg.n + 1):
            nxt = alg.next_vertex(v)
            if alg.shape == Shape.LINEAR and v == alg.n:
                break
            arrow = f"a{v}"
            m = gfp.matmul(rep.mats[arrow], m, rep.p)
            out[(c, t)] = m
            v = nxt
    return out


def nakayama_class(ctx: NakayamaContext, rep: QuiverRep) -> Counter:
    """Krull-Schmidt class from composite ranks.

    N(c,t) = rank of the t-step composite from vertex c counts summands
    containing that path segment; differencing isolates each interval.
    """
    alg = ctx.alg
    comp = composite_matrices(rep, alg)

    def n_of(c, t):
        m = comp.get((c, t))
        if m is None:
            return rep.dims[c - 1] if t == 0 else 0
        return gfp.rank(m, rep.p)

    def m_of(c, t):
        return n_of(c, t) - n_of(c, t + 1)

    out = Counter()
    for c in range(1, alg.n + 1):
        prev = (c - 2) % alg.n + 1
        for length in range(1, alg.proj_length(c) + 1):
            mult = m_of(c, length - 1)
            if not (alg.shape == Shape.LINEAR and c == 1):
                mult -= m_of(prev, length)
            if mult < 0:
                raise UnrecognizedModule("negative multiplicity from rank data")
            if mult:
                out[ctx.cid_of(Interval(c, length))] = mult
    if sum(ctx.class_dim(cid) * k for cid, k in out.items()) != rep.total_dim:
        raise UnrecognizedModule("rank decomposition does not account for all of the module")
    return out


def nakayama_explicit_decompose(ctx: NakayamaContext, rep: QuiverRep):
    """Peel maximal-length interval summands with explicit split maps."""
    alg, p = ctx.alg, ctx.p
    out = []
    cur = rep
    incl_cur = identity_morphism(rep)
    proj_cur = identity_morphism(rep)
    while cur.total_dim:
        cls = nakayama_class(ctx, cur)
        best = max(
            cls, key=lambda cid: (ctx.class_labels[cid].length, -ctx.class_labels[cid].top)
        )
        m = ctx.class_labels[best]
        comp = composite_matrices(cur, alg)
        c_l = comp.get((m.top, m.length), gfp.zeros(0, cur.dims[m.top - 1]))
        if c_l.shape[0] == 0:
            c_l = gfp.zeros(1, cur.dims[m.top - 1])
        c_l1 = comp.get((m.top, m.length - 1), gfp.eye(cur.dims[m.top - 1]))
        gen = None
        for vec in gfp.span_vectors(gfp.nullspace(c_l, p), p):
            v = np.array(vec, dtype=np.int64)
            if v.any() and gfp.matmul(c_l1, v.reshape(-1, 1), p).any():
                gen = v
                break
        if gen is None:
            raise DecompositionFailed("no generator of maximal length found")
        summand = ctx.rep_of(best)
        blocks = [gfp.zeros(cur.dims[i], summand.dims[i]) for i in range(alg.n)]
        vec = gen.reshape(-1, 1)
        for x in range(m.length):
            v = alg.vertex_at(m, x)
            blocks[v - 1] = vec % p
            if x < m.length - 1:
                vec = gfp.matmul(cur.mats[f"a{v}"], vec, p)
        incl = RepMorphism(summand, cur, tuple(blocks))
        retraction = _find_retraction(incl)
        if retraction is None:
            raise DecompositionFailed("maximal chain did not split off")
        out.append((best, incl_cur.compose(incl), retraction.compose(proj_cur)))
        # complement: kernel of the retraction
        ker, k_incl = kernel_with_inclusion(retraction)
        # idempotent onto the kernel, expressed in kernel coordinates
        idem = [
            (gfp.eye(cur.dims[i]) - incl.blocks[i] @ retraction.blocks[i]) % p
            for i in range(alg.n)
        ]
        pi_blocks = gfp_solve_blocks(k_incl.blocks, idem, p)
        pi = RepMorphism(cur, ker, pi_blocks)
        incl_cur = incl_cur.compose(k_incl)
        proj_cur = pi.compose(proj_cur)
        cur = ker
    return out


def _find_retraction(incl: RepMorphism) -> Optional[RepMorphism]:
    """RepMorphism r with r . incl = id, or None."""
    a, b, p = incl.source, incl.target, incl.p
    q = b.quiver
    nv = q.n
    offs, tot = [], 0
    for i in range(nv):
        offs.append(tot)
        tot += a.dims[i] * b.dims[i]
    if tot == 0:
        return RepMorphism(b, a, tuple(gfp.zeros(a.dims[i], b.dims[i]) for i in range(nv)))
    rows, rhs = [], []
    for arr in q.arrows:
        s, t = q.v_index(arr.src), q.v_index(arr.tgt)
        aa, ba = a.mats[arr.name], b.mats[arr.name]
        for i in range(a.dims[t]):
            for j in range(b.dims[s]):
                row = gfp.zeros(1, tot)[0]
                for k in range(a.dims[s]):
                    row[offs[s] + k * b.dims[s] + j] += aa[i, k]
                for k in range(b.dims[t]):
                    row[offs[t] + i * b.dims[t] + k] -= ba[k, j]
                rows.append(row % p)
                rhs.append(0)
    for i in range(nv):
        mb = incl.blocks[i]
        for r_i in range(a.dims[i]):
            for c in range(a.dims[i]):
                row = gfp.zeros(1, tot)[0]
                for k in range(b.dims[i]):
                    row[offs[i] + r_i * b.dims[i] + k] = mb[k, c]
                rows.append(row % p)
                rhs.append(1 if r_i == c else 0)
    mat = np.array(rows, dtype=np.int64)
    vec = np.array(rhs, dtype=np.int64).reshape(-1, 1)
    sol = gfp.solve(mat, vec, p)
    if sol is None:
        return None
    blocks = []
    for i in range(nv):
        n_entries = a.dims[i] * b.dims[i]
        blocks.append(sol[offs[i] : offs[i] + n_entries, 0].reshape(a.dims[i], b.dims[i]))
    return RepMorphism(b, a, tuple(blocks))


def realize_extension(ctx: NakayamaContext, sub: Interval, quot: Interval) -> SesInstance:
    """Concrete nonsplit sequence sub >-> middle ->> quot from the shape data."""
    alg, p = ctx.alg, ctx.p
    shape = ext_shape(alg, sub, quot)
    if shape is None:
        raise NotAnExtension(
            f"no nonsplit extension of {alg.label(quot)} by {alg.label(sub)}"
        )
    j = (sub.top - quot.top) % alg.n
    top_rep = interval_to_rep(ctx, shape.top)
    sub_rep = interval_to_rep(ctx, sub)
    quot_rep = interval_to_rep(ctx, quot)
    parts = [top_rep]
    if shape.overlap is not None:
        parts.append(interval_to_rep(ctx, shape.overlap))
    if len(parts) == 1:
        mid, incls, projs = parts[0], None, None
        monic_blocks = [gfp.zeros(mid.dims[i], sub_rep.dims[i]) for i in range(alg.n)]
        epic_blocks = [gfp.zeros(quot_rep.dims[i], mid.dims[i]) for i in range(alg.n)]
        for x in range(sub.length):
            v = alg.vertex_at(sub, x)
            monic_blocks[v - 1][0, 0] = 1
        for t in range(quot.length):
            v = alg.vertex_at(shape.top, t)
            epic_blocks[v - 1][0, 0] = 1
        monic = RepMorphism(sub_rep, mid, tuple(monic_blocks))
        epic = RepMorphism(mid, quot_rep, tuple(epic_blocks))
        return SesInstance(monic, epic)
    mid, incls, projs = sum_with_maps(parts)
    over = shape.overlap
    monic_blocks = [gfp.zeros(mid.dims[i], sub_rep.dims[i]) for i in range(alg.n)]
    epic_blocks = [gfp.zeros(quot_rep.dims[i], mid.dims[i]) for i in range(alg.n)]
    for x in range(sub.length):
        v = alg.vertex_at(sub, x)
        col = gfp.zeros(mid.dims[v - 1], 1)
        col += incls[0].blocks[v - 1]  # into the glued interval (position j + x there)
        if x < over.length:
            col += incls[1].blocks[v - 1]
        monic_blocks[v - 1] = col % p
    for t in range(shape.top.length):
        v = alg.vertex_at(shape.top, t)
        if t < quot.length:
            epic_blocks[v - 1] += projs[0].blocks[v - 1]
    for y in range(over.length):
        v = alg.vertex_at(over, y)
        epic_blocks[v - 1] = (epic_blocks[v - 1] - projs[1].blocks[v - 1]) % p
    monic = RepMorphism(sub_rep, mid, tuple(b % p for b in monic_blocks))
    epic = RepMorphism(mid, quot_rep, tuple(b % p for b in epic_blocks))
    return SesInstance(monic, epic)


# ---------------------------------------------------------------------------
# generic catalogs (shared by fixtures)


def fingerprint_decompose(ctx, rep: QuiverRep) -> Counter:
    """Multiplicities from Hom-dimension fingerprints against the catalog."""
    n = len(ctx.class_labels)
    d = ctx.hom_dim_table()
    v = [hom_dim(ctx.rep_of(i), rep) for i in range(n)]
    sol = _solve_fraction([[Fraction(d[i][j]) for j in range(n)] for i in range(n)], v)
    if sol is None:
        raise UnrecognizedModule("fingerprint system inconsistent")
    counts = Counter()
    for j, x in enumerate(sol):
        if x.denominator != 1 or x < 0:
            raise UnrecognizedModule("non-integral multiplicities")
        if x:
            counts[j] = int(x)
    if sum(ctx.rep_of(j).total_dim * k for j, k in counts.items()) != rep.total_dim:
        raise UnrecognizedModule("fingerprint multiplicities do not match dimension")
    return counts


def _solve_fraction(mat, rhs):
    n = len(mat)
    a = [row[:] + [Fraction(rhs[i])] for i, row in enumerate(mat)]
    cols = len(a[0]) - 1
    r = 0
    piv = []
    for c in range(cols):
        pr = next((i for i in range(r, n) if a[i][c] != 0), None)
        if pr is None:
            continue
        a[r], a[pr] = a[pr], a[r]
        a[r] = [x / a[r][c] for x in a[r]]
        for i in range(n):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        piv.append(c)
        r += 1
    for i in range(r, n):
        if a[i][cols] != 0:
            return None
    sol = [Fraction(0)] * cols
    for i, c in enumerate(piv):
        sol[c] = a[i][cols]
    return sol


def generic_explicit_decompose(ctx, rep: QuiverRep):
    """Split off catalog summands by scanning monos with retractions."""
    p = ctx.p
    out = []
    cur = rep
    incl_cur = identity_morphism(rep)
    proj_cur = identity_morphism(rep)
    order = sorted(range(len(ctx.class_labels)), key=lambda c: -ctx.rep_of(c).total_dim)
    while cur.total_dim:
        found = False
        for cid in order:
            cand = ctx.rep_of(cid)
            if cand.total_dim > cur.total_dim:
                continue
            for f in all_homs(cand, cur):
                if f.is_zero() or not f.is_injective():
                    continue
                r = _find_retraction(f)
                if r is None:
                    continue
                out.append((cid, incl_cur.compose(f), r.compose(proj_cur)))
                ker, k_incl = kernel_with_inclusion(r)
                idem = [
                    (gfp.eye(cur.dims[i]) - f.blocks[i] @ r.blocks[i]) % p
                    for i in range(cur.quiver.n)
                ]
                pi = RepMorphism(cur, ker, gfp_solve_blocks(k_incl.blocks, idem, p))
                incl_cur = incl_cur.compose(k_incl)
                proj_cur = pi.compose(proj_cur)
                cur = ker
                found = True
                break
            if found:
                break
        if not found:
            raise DecompositionFailed("no catalog summand splits off")
    return out
