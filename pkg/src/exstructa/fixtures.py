"""Generic bound-quiver fixtures with explicit module catalogs.

A fixture lists a quiver with relations, every indecomposable as a
concrete representation, and every almost split sequence as concrete
matrices.  Two fixtures ship built in: the three-vertex quivers with a
sink (1 -> 2 <- 3) and with a source (2 <- 1 -> 3).
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import gfp
from .errors import ExtNotMultiplicityFree
from .oracle import (
    enumerate_submodules,
    nonsplit_extension_search,
    required_ar_mask_oracle,
    ses_required_mask,
)
from .reps import (
    Arrow,
    Quiver,
    QuiverRep,
    RepMorphism,
    SesInstance,
    all_homs,
    fingerprint_decompose,
    generic_explicit_decompose,
    hom_space,
    is_split_ses,
    pushout_ses,
    ses_from_monic,
    sum_with_maps,
    zero_rep,
    _subrep_from_rows,
)


@dataclass(frozen=True)
class GenericFixture:
    name: str
    vertices: tuple[int, ...]
    arrows: tuple[tuple[str, int, int], ...]
    relations: tuple[tuple[str, ...], ...]
    modules: tuple[tuple[str, tuple[int, ...], tuple[tuple[str, tuple], ...]], ...]
    ar_sequences: tuple[dict, ...] = field(hash=False)

    def key(self) -> str:
        return self.name + ":" + str(hash(self.to_json()))

    def to_json(self) -> str:
        doc = {
            "name": self.name,
            "vertices": list(self.vertices),
            "arrows": [{"name": a, "src": s, "tgt": t} for a, s, t in self.arrows],
            "relations": [list(r) for r in self.relations],
            "modules": [
                {
                    "name": name,
                    "dims": list(dims),
                    "matrices": {a: [list(map(int, row)) for row in m] for a, m in mats},
                }
                for name, dims, mats in self.modules
            ],
            "ar_sequences": [
                {
                    "sub": s["sub"],
                    "middles": list(s["middles"]),
                    "quot": s["quot"],
                    "monic": {str(v): m for v, m in s["monic"].items()},
                    "epic": {str(v): m for v, m in s["epic"].items()},
                }
                for s in self.ar_sequences
            ],
        }
        return json.dumps(doc, sort_keys=True, indent=1)

    @classmethod
    def from_json(cls, text: str) -> "GenericFixture":
        doc = json.loads(text)
        return cls(
            name=doc["name"],
            vertices=tuple(doc["vertices"]),
            arrows=tuple((a["name"], a["src"], a["tgt"]) for a in doc["arrows"]),
            relations=tuple(tuple(r) for r in doc.get("relations", [])),
            modules=tuple(
                (
                    m["name"],
                    tuple(m["dims"]),
                    tuple(
                        (a, tuple(tuple(row) for row in mat))
                        for a, mat in sorted(m.get("matrices", {}).items())
                    ),
                )
                for m in doc["modules"]
            ),
            ar_sequences=tuple(
                {
                    "sub": s["sub"],
                    "middles": tuple(s["middles"]),
                    "quot": s["quot"],
                    "monic": {int(v): m for v, m in s["monic"].items()},
                    "epic": {int(v): m for v, m in s["epic"].items()},
                }
                for s in doc["ar_sequences"]
            ),
        )


@dataclass(frozen=True)
class FixtureStructure:
    """Exact structure on a fixture given by its AR-sequence subset."""

    fixture: GenericFixture
    mask: int

    @property
    def b_hex(self) -> str:
        return format(self.mask, "x")

    def size(self) -> int:
        return bin(self.mask).count("1")

    def context(self, p: int) -> "FixtureContext":
        return fixture_context(self.fixture, p)


class FixtureContext:
    """Catalog context for a fixture over GF(p)."""

    kind = "generic"

    def __init__(self, fixture: GenericFixture, p: int):
        self.fixture = fixture
        self.p = p
        self.quiver = Quiver(
            fixture.vertices,
            tuple(Arrow(*a) for a in fixture.arrows),
            fixture.relations,
        )
        self.class_labels = [name for name, _, _ in fixture.modules]
        self._cid = {name: i for i, name in enumerate(self.class_labels)}
        self._reps: list[QuiverRep] = []
        for name, dims, mats in fixture.modules:
            given = dict(mats)
            full = {}
            for a in self.quiver.arrows:
                s, t = self.quiver.v_index(a.src), self.quiver.v_index(a.tgt)
                if a.name in given:
                    full[a.name] = np.array(given[a.name], dtype=np.int64)
                else:
                    full[a.name] = gfp.zeros(dims[t], dims[s])
            rep = QuiverRep(self.quiver, p, tuple(dims), full)
            rep.validate_relations()
            self._reps.append(rep)
        self._ar = [self._build_ar(s) for s in fixture.ar_sequences]
        self.n_ar = len(self._ar)
        self._hom_cache: dict[tuple[int, int], list[RepMorphism]] = {}
        self._hom_dims: list[list[int]] | None = None
        self._basis_cache: dict[tuple[int, int], SesInstance | None] = {}
        self._req_cache: dict[tuple[int, int], int] = {}
        self._esimple_cache: dict[int, frozenset] = {}
        self._indec_family_reqs: list[list[int]] | None = None

    # -- construction -------------------------------------------------------
    def _build_ar(self, s: dict) -> tuple[int, int, SesInstance]:
        sub = self.rep_of(self._cid[s["sub"]])
        quot = self.rep_of(self._cid[s["quot"]])
        mids = [self.rep_of(self._cid[m]) for m in s["middles"]]
        mid = mids[0] if len(mids) == 1 else sum_with_maps(mids)[0]
        monic_blocks = []
        epic_blocks = []
        for i, v in enumerate(self.quiver.vertices):
            mb = s["monic"].get(v)
            eb = s["epic"].get(v)
            monic_blocks.append(
                np.array(mb, dtype=np.int64)
                if mb is not None
                else gfp.zeros(mid.dims[i], sub.dims[i])
            )
            epic_blocks.append(
                np.array(eb, dtype=np.int64)
                if eb is not None
                else gfp.zeros(quot.dims[i], mid.dims[i])
            )
        ses = SesInstance(
            RepMorphism(sub, mid, tuple(monic_blocks)),
            RepMorphism(mid, quot, tuple(epic_blocks)),
        )
        if is_split_ses(ses):
            raise ValueError(f"fixture sequence ending at {s['quot']} splits")
        return (self._cid[s["quot"]], self._cid[s["sub"]], ses)

    # -- catalog --------------------------------------------------------------
    def cid_of(self, name: str) -> int:
        return self._cid[name]

    def label(self, cid: int) -> str:
        return self.class_labels[cid]

    def cache_key(self) -> tuple:
        return (self.fixture.key(), self.p)

    def class_dim(self, cid: int) -> int:
        return self._reps[cid].total_dim

    def class_dimvec(self, cid: int) -> tuple[int, ...]:
        return tuple(self._reps[cid].dims)

    def rep_of(self, cid: int) -> QuiverRep:
        return self._reps[cid]

    def hom_basis(self, src_cid: int, tgt_cid: int) -> list[RepMorphism]:
        key = (src_cid, tgt_cid)
        if key not in self._hom_cache:
            self._hom_cache[key] = hom_space(self._reps[src_cid], self._reps[tgt_cid])
        return self._hom_cache[key]

    def hom_dim_table(self) -> list[list[int]]:
        if self._hom_dims is None:
            n = len(self.class_labels)
            self._hom_dims = [
                [len(self.hom_basis(i, j)) for j in range(n)] for i in range(n)
            ]
        return self._hom_dims

    # -- AR data ----------------------------------------------------------------
    def ar_end_cid(self, k: int) -> int:
        return self._ar[k][0]

    def ar_sub_cid(self, k: int) -> int:
        return self._ar[k][1]

    def ar_ses(self, k: int) -> SesInstance:
        return self._ar[k][2]

    # -- structure data -----------------------------------------------------------
    def ext_candidate(self, quot_cid: int, sub_cid: int) -> bool:
        return self.basis_extension_or_none(quot_cid, sub_cid) is not None

    def basis_extension_or_none(self, quot_cid: int, sub_cid: int):
        key = (quot_cid, sub_cid)
        if key not in self._basis_cache:
            for qc, sc, ses in self._ar:
                if (qc, sc) == key:
                    self._basis_cache[key] = ses
                    break
            else:
                self._basis_cache[key] = nonsplit_extension_search(self, sub_cid, quot_cid)
        return self._basis_cache[key]

    def basis_extension(self, quot_cid: int, sub_cid: int) -> SesInstance:
        ses = self.basis_extension_or_none(quot_cid, sub_cid)
        if ses is None:
            raise ValueError("no nonsplit extension for this pair")
        return ses

    def oracle_req_mask(self, quot_cid: int, sub_cid: int) -> int:
        key = (quot_cid, sub_cid)
        if key not in self._req_cache:
            self._req_cache[key] = required_ar_mask_oracle(
                self, self.basis_extension(quot_cid, sub_cid)
            )
        return self._req_cache[key]

    # the fixture has no separate fast path; forced sets are oracle data
    req_mask = oracle_req_mask

    def e_simple_cids(self, mask: int) -> frozenset[int]:
        if mask not in self._esimple_cache:
            reqs = self._indec_family_req_masks()
            out = frozenset(
                cid
                for cid in range(len(self.class_labels))
                if all(r & ~mask for r in reqs[cid])
            )
            self._esimple_cache[mask] = out
        return self._esimple_cache[mask]

    def _indec_family_req_masks(self) -> list[list[int]]:
        """Forced-sequence masks of every proper nonzero submodule family."""
        if self._indec_family_reqs is None:
            out = []
            for cid in range(len(self.class_labels)):
                rep = self._reps[cid]
                reqs = []
                for fam in enumerate_submodules(rep):
                    d = sum(m.shape[0] for m in fam)
                    if d == 0 or d == rep.total_dim:
                        continue
                    sub, incl = _subrep_from_rows(rep, list(fam))
                    reqs.append(ses_required_mask(self, ses_from_monic(incl)))
                out.append(reqs)
            self._indec_family_reqs = out
        return self._indec_family_reqs

    # -- decomposition ---------------------------------------------------------
    def decompose(self, rep: QuiverRep) -> Counter:
        return fingerprint_decompose(self, rep)

    def explicit_decompose(self, rep: QuiverRep):
        return generic_explicit_decompose(self, rep)


@lru_cache(maxsize=None)
def _fixture_context_cached(key: str, p: int, fixture_json: str) -> FixtureContext:
    return FixtureContext(GenericFixture.from_json(fixture_json), p)


def fixture_context(fixture: GenericFixture, p: int) -> FixtureContext:
    return _fixture_context_cached(fixture.key(), p, fixture.to_json())


def verify_multiplicity_free(ctx: FixtureContext) -> None:
    """Every extension space must be at most one-dimensional.

    Scans all nonsplit sequences per end pair and checks they agree up
    to scalar and middle isomorphism with the basis one.
    """
    n = len(ctx.class_labels)
    for quot_cid in range(n):
        for sub_cid in range(n):
            basis = ctx.basis_extension_or_none(quot_cid, sub_cid)
            if basis is None:
                continue
            for other in _all_nonsplit_extensions(ctx, sub_cid, quot_cid):
                if not _scalar_equivalent(basis, other):
                    raise ExtNotMultiplicityFree(
                        f"two classes of extensions of {ctx.label(quot_cid)} "
                        f"by {ctx.label(sub_cid)}"
                    )


def _all_nonsplit_extensions(ctx, sub_cid, quot_cid):
    from .oracle import _middle_candidates
    from .reps import rep_of_multiset

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
                if h.is_injective() and h.is_surjective():
                    full = SesInstance(monic, h.compose(ses.epic))
                    if not is_split_ses(full):
                        yield full
                    break


def _scalar_equivalent(a: SesInstance, b: SesInstance) -> bool:
    """Same extension class up to a nonzero scalar on the subobject."""
    p = a.mid.p
    for lam in range(1, p):
        scaled = RepMorphism(
            a.sub, a.mid, tuple((lam * blk) % p for blk in a.monic.blocks)
        )
        rescaled = SesInstance(scaled, a.epic)
        if _strictly_equivalent(rescaled, b):
            return True
    return False


def _strictly_equivalent(a: SesInstance, b: SesInstance) -> bool:
    """Mid isomorphism commuting with fixed ends."""
    for h in all_homs(a.mid, b.mid):
        if not (h.is_injective() and h.is_surjective()):
            continue
        if all(
            not ((h.blocks[i] @ a.monic.blocks[i] - b.monic.blocks[i]) % a.mid.p).any()
            and not ((b.epic.blocks[i] @ h.blocks[i] - a.epic.blocks[i]) % a.mid.p).any()
            for i in range(a.mid.quiver.n)
        ):
            return True
    return False


# ---------------------------------------------------------------------------
# built-in fixtures


def fixture_sink_a3() -> GenericFixture:
    """Quiver 1 -> 2 <- 3: sequences S2 > P1+P3 > I2, P3 > I2 > S1, P1 > I2 > S3."""
    return GenericFixture(
        name="a3-sink",
        vertices=(1, 2, 3),
        arrows=(("a", 1, 2), ("b", 3, 2)),
        relations=(),
        modules=(
            ("S1", (1, 0, 0), ()),
            ("S2", (0, 1, 0), ()),
            ("S3", (0, 0, 1), ()),
            ("P1", (1, 1, 0), (("a", ((1,),)),)),
            ("P3", (0, 1, 1), (("b", ((1,),)),)),
            ("I2", (1, 1, 1), (("a", ((1,),)), ("b", ((1,),)))),
        ),
        ar_sequences=(
            {
                "sub": "S2",
                "middles": ("P1", "P3"),
                "quot": "I2",
                "monic": {2: [[1], [1]]},
                "epic": {1: [[1]], 2: [[1, -1]], 3: [[-1]]},
            },
            {
                "sub": "P3",
                "middles": ("I2",),
                "quot": "S1",
                "monic": {2: [[1]], 3: [[1]]},
                "epic": {1: [[1]]},
            },
            {
                "sub": "P1",
                "middles": ("I2",),
                "quot": "S3",
                "monic": {1: [[1]], 2: [[1]]},
                "epic": {3: [[1]]},
            },
        ),
    )


def fixture_source_a3() -> GenericFixture:
    """Quiver 2 <- 1 -> 3: sequences S2 > P1 > I3, S3 > P1 > I2, P1 > I2+I3 > S1."""
    return GenericFixture(
        name="a3-source",
        vertices=(1, 2, 3),
        arrows=(("a", 1, 2), ("b", 1, 3)),
        relations=(),
        modules=(
            ("S1", (1, 0, 0), ()),
            ("S2", (0, 1, 0), ()),
            ("S3", (0, 0, 1), ()),
            ("P1", (1, 1, 1), (("a", ((1,),)), ("b", ((1,),)))),
            ("I2", (1, 1, 0), (("a", ((1,),)),)),
            ("I3", (1, 0, 1), (("b", ((1,),)),)),
        ),
        ar_sequences=(
            {
                "sub": "S2",
                "middles": ("P1",),
                "quot": "I3",
                "monic": {2: [[1]]},
                "epic": {1: [[1]], 3: [[1]]},
            },
            {
                "sub": "S3",
                "middles": ("P1",),
                "quot": "I2",
                "monic": {3: [[1]]},
                "epic": {1: [[1]], 2: [[1]]},
            },
            {
                "sub": "P1",
                "middles": ("I2", "I3"),
                "quot": "S1",
                "monic": {1: [[1], [1]], 2: [[1]], 3: [[1]]},
                "epic": {1: [[1, -1]]},
            },
        ),
    )


BUILTIN_FIXTURES = {
    "a3-sink": fixture_sink_a3,
    "a3-source": fixture_source_a3,
}
