"""Cross-validation suites: fast combinatorics against the field oracle.

Each suite returns (passed, lines); the CLI prints the lines and folds
the results into its exit code.  Verdicts are certified only up to the
stated dimension bound and field, and the report lines say so.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor

from .axioms import validate_exact_axioms
from .fixtures import FixtureStructure, fixture_sink_a3, fixture_source_a3
from .intervals import AlgebraSpec, Shape, build_algebra, indecomposables
from .jh import classify_structures
from .reps import nakayama_context
from .structures import ExactStructure, enumerate_structures


def all_linear_algebras(max_n: int) -> list[AlgebraSpec]:
    """Every admissible projective-length list on up to max_n vertices."""
    out = []

    def rec(n, acc):
        if len(acc) == n:
            out.append(build_algebra(Shape.LINEAR, n, list(reversed(acc))))
            return
        cap = min(acc[-1] + 1, len(acc) + 1)
        for l in range(1, cap + 1):
            rec(n, acc + [l])

    for n in range(1, max_n + 1):
        rec(n, [1])
    return out


def cyclic_battery(max_total: int = 8) -> list[AlgebraSpec]:
    out = []

    def rec(n, acc, left):
        if len(acc) == n:
            if acc[0] >= acc[-1] - 1:
                out.append(build_algebra(Shape.CYCLIC, n, acc))
            return
        lo = max(1, acc[-1] - 1) if acc else 1
        for l in range(lo, min(n, left) + 1):
            rec(n, acc + [l], left - l)

    for n in range(1, max_total + 1):
        rec(n, [], max_total)
    return out


# ---------------------------------------------------------------------------
# suites


def suite_eb(cfg) -> tuple[bool, list[str]]:
    """Forced-sequence sets: combinatorial criterion vs explicit base change."""
    lines = []
    ok = True
    algebras = all_linear_algebras(cfg.max_n) + cyclic_battery(8)
    pairs_checked = 0
    for alg in algebras:
        for p in (2, 3):
            ctx = nakayama_context(alg, p)
            n = len(ctx.class_labels)
            for qc, sc in itertools.product(range(n), repeat=2):
                if not ctx.ext_candidate(qc, sc):
                    continue
                pairs_checked += 1
                fast = ctx.req_mask(qc, sc)
                oracle = ctx.oracle_req_mask(qc, sc)
                if fast != oracle:
                    ok = False
                    lines.append(
                        f"eb DISAGREEMENT {alg.shape.value}:{alg.kupisch} p={p} "
                        f"quot={ctx.label(qc)} sub={ctx.label(sc)} "
                        f"fast={fast:#x} oracle={oracle:#x}"
                    )
    lines.append(
        f"suite eb: {'pass' if ok else 'FAIL'} "
        f"({len(algebras)} algebras, {pairs_checked} extension pairs, GF(2) and GF(3))"
    )
    return ok, lines


def _aw_one(args):
    shape_value, n, kupisch, p, dim_bound = args
    alg = build_algebra(Shape(shape_value), n, kupisch)
    rows = classify_structures(
        list(enumerate_structures(alg)), p, dim_bound, with_diamond=False
    )
    bad = []
    for r in rows:
        consistent = (
            r.is_aw_fast == r.is_aw_brute == r.is_jh == r.counting_identity_holds
        )
        if not consistent:
            bad.append(
                f"{shape_value}:{kupisch} B={r.b_hex}: fast={r.is_aw_fast} "
                f"brute={r.is_aw_brute} jh={r.is_jh} counting={r.counting_identity_holds}"
            )
    return (f"{shape_value}:{kupisch}", len(rows), bad)


def suite_aw(cfg) -> tuple[bool, list[str]]:
    """Fast Artin-Wedderburn test vs brute force vs series vs counting."""
    from .cli import threads

    lines = []
    ok = True
    algebras = all_linear_algebras(cfg.max_n)
    jobs = [
        (alg.shape.value, alg.n, alg.kupisch, cfg.field, cfg.dim_bound)
        for alg in algebras
    ]
    n_workers = threads()
    if n_workers > 1:
        with ProcessPoolExecutor(max_workers=n_workers) as pool:
            results = list(pool.map(_aw_one, jobs))
    else:
        results = [_aw_one(j) for j in jobs]
    n_structures = 0
    for label, count, bad in results:
        n_structures += count
        if bad:
            ok = False
            lines.extend("aw DISAGREEMENT " + b for b in bad)
    lines.append(
        f"suite aw: {'pass' if ok else 'FAIL'} "
        f"({len(algebras)} algebras, {n_structures} structures, "
        f"dim<={cfg.dim_bound}, GF({cfg.field}))"
    )
    return ok, lines


def suite_counting(cfg) -> tuple[bool, list[str]]:
    """Simple count equals indecomposables minus sequences, iff series agree."""
    lines = []
    ok = True
    checked = 0
    for alg in all_linear_algebras(min(cfg.max_n, 3)) + cyclic_battery(6):
        rows = classify_structures(
            list(enumerate_structures(alg)), cfg.field, cfg.dim_bound, with_diamond=False
        )
        for r in rows:
            checked += 1
            if r.counting_identity_holds != r.is_jh:
                ok = False
                lines.append(
                    f"counting DISAGREEMENT {alg.shape.value}:{alg.kupisch} B={r.b_hex}"
                )
    lines.append(
        f"suite counting: {'pass' if ok else 'FAIL'} ({checked} structures)"
    )
    return ok, lines


def axiom_battery(cfg):
    a2 = build_algebra(Shape.LINEAR, 2, [2, 1])
    a3 = build_algebra(Shape.LINEAR, 3, [3, 2, 1])
    c22 = build_algebra(Shape.CYCLIC, 2, [2, 2])
    cases = []
    cases += [ExactStructure(a2, m) for m in range(2)]
    cases += [ExactStructure(a3, m) for m in (0, 1, 2, 5, 7)]
    cases += [ExactStructure(c22, m) for m in range(4)]
    sink = fixture_sink_a3()
    source = fixture_source_a3()
    cases += [FixtureStructure(sink, m) for m in (1, 6)]
    cases += [FixtureStructure(source, m) for m in (3,)]
    return cases


def suite_axioms(cfg) -> tuple[bool, list[str]]:
    lines = []
    ok = True
    for structure in axiom_battery(cfg):
        report = validate_exact_axioms(structure, cfg.axiom_bound, cfg.field)
        label = getattr(structure, "alg", None)
        if label is not None:
            name = f"{label.shape.value}:{label.kupisch}"
        else:
            name = structure.fixture.name
        lines.append(f"axioms {name} B={structure.b_hex}: {report.summary()}")
        ok = ok and report.passed
    lines.append(f"suite axioms: {'pass' if ok else 'FAIL'} (dim<={cfg.axiom_bound})")
    return ok, lines


SUITES = {
    "axioms": suite_axioms,
    "eb": suite_eb,
    "aw": suite_aw,
    "counting": suite_counting,
}


def run_suites(which: str, cfg) -> bool:
    names = list(SUITES) if which == "all" else [which]
    ok = True
    for name in names:
        passed, lines = SUITES[name](cfg)
        for line in lines:
            print(line)
        ok = ok and passed
    return ok
