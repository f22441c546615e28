"""Desk-scale validation that a structure behaves like an exact structure.

Checks, over all objects within a dimension bound: identities are
admissible, admissible inclusions compose (both directions), and base
change along every hom-basis morphism preserves admissibility.  Reports
the first counterexample per axiom instead of raising.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .lattice import ObjectLattice, multiset_is_semisimple, object_multisets
from .oracle import admissible_ses
from .reps import hom_space, pullback_ses, pushout_ses

AXIOM_DIM_BOUND = 5


@dataclass
class AxiomReport:
    checked: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def summary(self) -> str:
        counts = ", ".join(f"{k}={v}" for k, v in sorted(self.checked.items()))
        if self.passed:
            return f"pass ({counts})"
        return f"FAIL: {self.failures[0]} ({counts})"


def validate_exact_axioms(structure, dim_bound: int = AXIOM_DIM_BOUND, p: int = 2) -> AxiomReport:
    ctx = structure.context(p)
    mask = structure.mask
    report = AxiomReport(checked={"A0": 0, "A1": 0, "A1op": 0, "A2": 0, "A2op": 0})
    indec_reps = [ctx.rep_of(c) for c in range(len(ctx.class_labels))]
    for cids in object_multisets(ctx, dim_bound):
        if multiset_is_semisimple(ctx, cids):
            # all inclusions split; base change of split sequences splits
            continue
        lat = ObjectLattice(ctx, cids, dim_bound)
        label = "+".join(ctx.label(c) for c in cids)
        adm = lat.element_mask(mask)
        # A0: identity and zero inclusions admissible
        report.checked["A0"] += 1
        if not (adm[lat.zero_idx] and adm[lat.full_idx]):
            report.failures.append(f"A0 fails at {label}")
        # A1: admissible chains compose
        adm_pairs = [
            (u, v)
            for (u, v) in lat.contained_pairs()
            if lat.pair_data(u, v).req & ~mask == 0
        ]
        below = {}
        for u, v in adm_pairs:
            below.setdefault(v, []).append(u)
        for v, w in adm_pairs:
            for u in below.get(v, ()):
                report.checked["A1"] += 1
                if lat.pair_data(u, w).req & ~mask:
                    report.failures.append(
                        f"A1 fails at {label}: {u} <= {v} <= {w}"
                    )
        # A1op: composite of the two projections is again admissible
        for u in range(lat.n):
            if not adm[u] or u == lat.full_idx:
                continue
            ses_u = lat.pair_ses(u, lat.full_idx)
            qlat = ObjectLattice(ctx, (), dim_bound, rep=ses_u.quot)
            qadm = qlat.element_mask(mask)
            for vbar in range(qlat.n):
                if not qadm[vbar] or vbar == qlat.full_idx:
                    continue
                v = _preimage_index(lat, u, ses_u, qlat, vbar)
                report.checked["A1op"] += 1
                if v is None or lat.pair_data(v, lat.full_idx).req & ~mask:
                    report.failures.append(
                        f"A1op fails at {label}: kernel of composed epi not admissible"
                    )
        # A2 / A2op: base change along hom-basis morphisms
        for u, v in adm_pairs:
            d = lat.pair_data(u, v)
            if d.split:
                continue  # base change of a split sequence splits
            ses = lat.pair_ses(u, v)
            for w_rep in indec_reps:
                for f in hom_space(ses.sub, w_rep):
                    out, _ = pushout_ses(ses, f)
                    report.checked["A2"] += 1
                    if not admissible_ses(ctx, mask, out):
                        report.failures.append(
                            f"A2 fails at {label}: pushout leaves the structure"
                        )
                for g in hom_space(w_rep, ses.quot):
                    out, _ = pullback_ses(ses, g)
                    report.checked["A2op"] += 1
                    if not admissible_ses(ctx, mask, out):
                        report.failures.append(
                            f"A2op fails at {label}: pullback leaves the structure"
                        )
        if report.failures:
            break
    return report


def _preimage_index(lat: ObjectLattice, u: int, ses_u, qlat: ObjectLattice, vbar: int):
    """Index of the preimage family of a quotient-lattice element."""
    import numpy as np

    from . import gfp
    from .oracle import family_key

    rows = []
    for i in range(lat.rep.quiver.n):
        qrows = qlat.families[vbar][i]
        proj = ses_u.epic.blocks[i]
        # preimage = lift of the quotient rows plus the kernel rows
        lifts = gfp.solve(proj, qrows.T, lat.p)
        parts = [lat.families[u][i]]
        if lifts is not None and lifts.size:
            parts.append(lifts.T % lat.p)
        stacked = np.vstack([m for m in parts if m.size]) if any(
            m.size for m in parts
        ) else gfp.zeros(0, lat.rep.dims[i])
        rows.append(gfp.rref(stacked, lat.p)[0])
    return lat.key_index.get(family_key(tuple(rows)))
