"""Command line interface: classify, verify, graph.

Exit codes: 0 all requested checks pass, 1 a check failed, 2 bad usage
or configuration.  Outputs (CSV, Markdown, DOT) carry no timestamps, so
reruns are byte-identical.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path

from .axioms import AXIOM_DIM_BOUND, validate_exact_axioms
from .errors import ExstructaError
from .fixtures import BUILTIN_FIXTURES, FixtureStructure, GenericFixture, fixture_context
from .intervals import (
    AlgebraSpec,
    Interval,
    Shape,
    ar_sequences,
    build_algebra,
    indecomposables,
    tau,
)
from .jh import DEFAULT_DIM_BOUND, classify_structures
from .posets import build_poset
from .reps import nakayama_context
from .structures import ExactStructure, enumerate_structures
from .verify import run_suites

THREADS_ENV = "EXSTRUCTA_THREADS"


@dataclass
class JobConfig:
    algebra: str = ""
    field: int = 2
    dim_bound: int = DEFAULT_DIM_BOUND
    axiom_bound: int = AXIOM_DIM_BOUND
    structures: str = "all"
    checks: tuple[str, ...] = ("aw", "jh", "diamond")
    max_n: int = 4
    out_dir: str = ""

    @classmethod
    def from_file(cls, path: str) -> "JobConfig":
        doc = json.loads(Path(path).read_text())
        cfg = cls()
        for key, value in doc.items():
            if not hasattr(cfg, key):
                raise ExstructaError(f"unknown config key {key!r}")
            if key == "checks":
                value = tuple(value)
            setattr(cfg, key, value)
        return cfg


def threads() -> int:
    try:
        return max(1, int(os.environ.get(THREADS_ENV, "1")))
    except ValueError:
        return 1


def resolve_algebra(text: str):
    """Preset string or file path -> AlgebraSpec or GenericFixture."""
    if text in BUILTIN_FIXTURES:
        return BUILTIN_FIXTURES[text]()
    for prefix, shape in (("linear:", Shape.LINEAR), ("cyclic:", Shape.CYCLIC)):
        if text.startswith(prefix):
            lengths = [int(x) for x in text[len(prefix):].split(",") if x]
            return build_algebra(shape, len(lengths), lengths)
    path = Path(text)
    if path.exists():
        doc = json.loads(path.read_text())
        if "modules" in doc:
            return GenericFixture.from_json(path.read_text())
        shape = Shape(doc["shape"])
        return build_algebra(shape, len(doc["kupisch"]), doc["kupisch"])
    raise ExstructaError(f"unknown algebra or fixture {text!r}")


def structures_for(target, selection: str):
    if isinstance(target, AlgebraSpec):
        if selection == "all":
            return list(enumerate_structures(target))
        return [ExactStructure.from_hex(target, h) for h in selection.split(",")]
    ctx = fixture_context(target, 2)
    if selection == "all":
        return [FixtureStructure(target, m) for m in range(1 << ctx.n_ar)]
    return [FixtureStructure(target, int(h, 16)) for h in selection.split(",")]


# ---------------------------------------------------------------------------
# classify


ROW_FIELDS = [
    "structure_hex",
    "n_sequences",
    "is_aw_fast",
    "is_aw_brute",
    "is_jh",
    "is_diamond",
    "e_simple_count",
    "counting_identity_holds",
    "aw_violation",
    "jh_witness",
]


def _row_record(row) -> dict:
    return {
        "structure_hex": row.b_hex,
        "n_sequences": str(row.b_size),
        "is_aw_fast": "" if row.is_aw_fast is None else str(row.is_aw_fast),
        "is_aw_brute": str(row.is_aw_brute),
        "is_jh": str(row.is_jh),
        "is_diamond": "" if row.is_diamond is None else str(row.is_diamond),
        "e_simple_count": str(row.e_simple_count),
        "counting_identity_holds": str(row.counting_identity_holds),
        "aw_violation": row.aw_violation,
        "jh_witness": row.jh_witness,
    }


def rows_to_csv(rows) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=ROW_FIELDS, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(_row_record(row))
    return buf.getvalue()


def rows_to_markdown(rows) -> str:
    lines = ["| " + " | ".join(ROW_FIELDS) + " |"]
    lines.append("|" + "|".join(["---"] * len(ROW_FIELDS)) + "|")
    for row in rows:
        rec = _row_record(row)
        lines.append("| " + " | ".join(rec[f] for f in ROW_FIELDS) + " |")
    return "\n".join(lines) + "\n"


def cmd_classify(cfg: JobConfig) -> int:
    target = resolve_algebra(cfg.algebra)
    structs = structures_for(target, cfg.structures)
    rows = classify_structures(
        structs, cfg.field, cfg.dim_bound, with_diamond="diamond" in cfg.checks
    )
    csv_text = rows_to_csv(rows)
    md_text = rows_to_markdown(rows)
    if cfg.out_dir:
        out = Path(cfg.out_dir)
        out.mkdir(parents=True, exist_ok=True)
        (out / "classification.csv").write_text(csv_text)
        (out / "classification.md").write_text(md_text)
    sys.stdout.write(md_text)
    return 0


# ---------------------------------------------------------------------------
# graph


def ar_quiver_dot(alg: AlgebraSpec) -> str:
    lines = ["digraph ar_quiver {"]
    for m in indecomposables(alg):
        lines.append(f'  "n{m.top}_{m.length}" [label="({m.top},{m.length})"];')
    for m in indecomposables(alg):
        longer = Interval((m.top - 2) % alg.n + 1, m.length + 1)
        if alg.shape == Shape.LINEAR and m.top == 1:
            longer = None
        if longer is not None and alg.is_valid_interval(longer):
            lines.append(f'  "n{m.top}_{m.length}" -> "n{longer.top}_{longer.length}";')
        if m.length > 1:
            lines.append(
                f'  "n{m.top}_{m.length}" -> "n{m.top}_{m.length - 1}";'
            )
    for m in indecomposables(alg):
        if not alg.is_projective(m):
            t = tau(alg, m)
            lines.append(
                f'  "n{m.top}_{m.length}" -> "n{t.top}_{t.length}" [style=dotted];'
            )
    lines.append("}")
    return "\n".join(lines) + "\n"


def parse_object(text: str):
    """Object syntax: "1,2+2,1" for intervals or "P1+S2" for fixtures."""
    parts = [p.strip() for p in text.split("+") if p.strip()]
    if all("," in p for p in parts):
        return [Interval(*[int(x) for x in p.split(",")]) for p in parts]
    return parts


def cmd_graph(cfg: JobConfig, target_kind: str, obj: str, structure_hex: str, out_file: str) -> int:
    target = resolve_algebra(cfg.algebra)
    if target_kind == "ar":
        if not isinstance(target, AlgebraSpec):
            raise ExstructaError("ar-quiver export needs an interval algebra")
        dot = ar_quiver_dot(target)
    else:
        if not obj:
            raise ExstructaError("poset export needs --object")
        if isinstance(target, AlgebraSpec):
            structure = ExactStructure.from_hex(target, structure_hex or "0")
        else:
            structure = FixtureStructure(target, int(structure_hex or "0", 16))
        poset = build_poset(structure, parse_object(obj), cfg.field, cfg.dim_bound)
        dot = poset.to_dot() + "\n"
    if out_file:
        Path(out_file).write_text(dot)
    else:
        sys.stdout.write(dot)
    return 0


# ---------------------------------------------------------------------------
# entry point


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="exstructa")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", default="")
        p.add_argument("--algebra", default="")
        p.add_argument("--field", type=int, default=2, choices=[2, 3])
        p.add_argument("--dim-bound", type=int, default=DEFAULT_DIM_BOUND)
        p.add_argument("--out", default="")

    c = sub.add_parser("classify", help="classify exact structures")
    common(c)
    c.add_argument("--structures", default="all")
    c.add_argument("--no-diamond", action="store_true")

    v = sub.add_parser("verify", help="run cross-validation suites")
    common(v)
    v.add_argument(
        "--suite", default="all", choices=["all", "axioms", "eb", "aw", "counting"]
    )
    v.add_argument("--max-n", type=int, default=4)
    v.add_argument("--axiom-bound", type=int, default=AXIOM_DIM_BOUND)

    g = sub.add_parser("graph", help="emit DOT graphs")
    common(g)
    g.add_argument("--target", required=True, choices=["ar", "poset"])
    g.add_argument("--object", default="")
    g.add_argument("--structure", default="")
    return parser


def config_from_args(args) -> JobConfig:
    cfg = JobConfig.from_file(args.config) if args.config else JobConfig()
    if args.algebra:
        cfg.algebra = args.algebra
    cfg.field = args.field
    cfg.dim_bound = args.dim_bound
    if args.out:
        cfg.out_dir = args.out
    if getattr(args, "structures", ""):
        cfg.structures = args.structures
    if getattr(args, "no_diamond", False):
        cfg.checks = tuple(c for c in cfg.checks if c != "diamond")
    if getattr(args, "max_n", None):
        cfg.max_n = args.max_n
    if getattr(args, "axiom_bound", None):
        cfg.axiom_bound = args.axiom_bound
    return cfg


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    try:
        cfg = config_from_args(args)
        if args.command == "classify":
            if not cfg.algebra:
                raise ExstructaError("classify needs --algebra")
            return cmd_classify(cfg)
        if args.command == "verify":
            ok = run_suites(args.suite, cfg)
            return 0 if ok else 1
        if args.command == "graph":
            return cmd_graph(cfg, args.target, args.object, args.structure, cfg.out_dir)
        raise ExstructaError(f"unknown command {args.command}")
    except ExstructaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
