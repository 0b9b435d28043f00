"""Command-line front end.

Exit codes: 0 success, 1 input or validation error, 2 a mathematical
counterexample was found, 3 an internal severe diagnostic fired.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from pathlib import Path

from . import corpus
from .core import SemiringError, SevereDiagnostic, parse_semiring, serialize_semiring
from .greens import greens_additive, starred_greens
from .rees import build_rees, coordinatize, parse_rees, serialize_rees, validate_sandwich
from .report import (
    analysis,
    blattice_dict,
    dumps,
    partition_text,
    rectangular_dict,
    semiring_dict,
)
from .structure import blattice_decompose, decompose_rectangular
from .theorems import THEOREMS, check_equivalence

OK, INPUT_ERROR, REFUTED, SEVERE = 0, 1, 2, 3


class UsageError(Exception):
    pass


class Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


def _read(path: str) -> tuple[str, dict]:
    try:
        data = Path(path).read_bytes()
    except OSError as exc:
        raise SemiringError(f"cannot read {path}: {exc.strerror}") from None
    digest = {"path": path, "sha256": hashlib.sha256(data).hexdigest()}
    try:
        return data.decode("ascii"), digest
    except UnicodeDecodeError:
        raise SemiringError(f"{path} is not 7-bit text") from None


def _load(path: str):
    text, digest = _read(path)
    S = parse_semiring(text)
    if S.name is None:
        S = S.with_name(Path(path).stem)
    return S, digest


# ---------------------------------------------------------------------------
# subcommands: each returns (exit code, sections, text lines)


def cmd_validate(args):
    S, digest = _load(args.file)
    return OK, [digest], {"semiring": semiring_dict(S)}, [f"{args.file}: valid semiring of order {S.order}"]


def cmd_analyze(args):
    S, digest = _load(args.file)
    doc = analysis(S)
    lines = [f"semiring {S.name} (order {S.order})", "classification:"]
    for k, v in doc["classification"].items():
        mark = "yes" if v["holds"] else "no "
        lines.append(f"  {k:<30} {mark}  {v['evidence']}".rstrip())
    for label, G in (("greens (additive)", greens_additive(S)), ("greens (starred)", starred_greens(S))):
        lines.append(f"{label}:")
        for rel in "LRHDJ":
            lines.append(f"  {rel}: {partition_text(G.relation(rel))}")
        if not G.lr_commute:
            lines.append("  note: L∘R != R∘L")
    prof = doc["profile"]
    lines.append(f"E+: {prof['add_idempotent']}")
    lines.append(f"Reg+: {prof['add_regular']}")
    lines.append(f"quasi index: {prof['quasi_index']}")
    lines.append(f"cr witness: {prof['cr_witness']}")
    return OK, [digest], doc, lines


def cmd_decompose(args):
    S, digest = _load(args.file)
    if args.rectangular:
        d = decompose_rectangular(S)
        doc = {"rectangular": rectangular_dict(d)}
        lines = [
            f"band part (E+ = {list(d.band_ids)}):",
            serialize_semiring(d.band_part).rstrip(),
            f"skew part (H+ class {list(d.skew_ids)}):",
            serialize_semiring(d.skew_part).rstrip(),
            f"iso: {list(d.iso.mapping)} verified={d.iso.verified}",
        ]
    else:
        d = blattice_decompose(S)
        doc = {"blattice": blattice_dict(d)}
        lines = [f"partition: {partition_text(d.congruence.partition)}", "quotient:",
                 serialize_semiring(d.quotient).rstrip()]
        for c in d.components:
            lines.append(f"component {list(c.members)}:")
            lines.append(serialize_semiring(c.semiring).rstrip())
    return OK, [digest], doc, lines


def cmd_rees_build(args):
    text, digest = _read(args.spec)
    spec = parse_rees(text)
    bad = validate_sandwich(spec)
    if bad:
        raise SemiringError(f"invalid Rees spec: {'; '.join(bad[:5])}")
    M, triples = build_rees(spec)
    doc = {
        "semiring": semiring_dict(M),
        "smr": serialize_semiring(M),
        "elements": [[spec.I.labels[i], a, spec.L.labels[lam]] for i, a, lam in triples],
        "o_is_identity": {"I": spec.I.o_is_identity(), "L": spec.L.o_is_identity()},
    }
    return OK, [digest], doc, [serialize_semiring(M).rstrip()]


def cmd_rees_coordinatize(args):
    S, digest = _load(args.file)
    spec, iso = coordinatize(S)
    text = serialize_rees(spec)
    doc = {"spec": text, "iso": list(iso.mapping), "verified": iso.verified}
    return OK, [digest], doc, [text.rstrip(), f"iso: {list(iso.mapping)} verified={iso.verified}"]


def _theorem_ids(arg: str | None) -> list[str]:
    if arg is None or arg == "all":
        return list(THEOREMS)
    ids = [t.strip() for t in arg.split(",")]
    for t in ids:
        if t not in THEOREMS:
            raise SemiringError(f"unknown theorem id {t!r}; known: {', '.join(THEOREMS)}")
    return ids


def cmd_theorems(args):
    S, digest = _load(args.file)
    verdicts = [check_equivalence(S, t) for t in _theorem_ids(args.only)]
    lines = []
    for v in verdicts:
        lines.append(f"{v.theorem}: {v.bits()} {'equivalent' if v.equivalent else 'COUNTEREXAMPLE'}")
        for label, c in v.conditions:
            lines.append(f"  [{'x' if c.holds else ' '}] {label}" + (f"  ({c.evidence})" if c.evidence else ""))
    code = OK if all(v.equivalent for v in verdicts) else REFUTED
    return code, [digest], {"theorems": [v.as_dict() for v in verdicts]}, lines


def cmd_sweep(args):
    ids = _theorem_ids(args.theorems)
    if not 1 <= args.max_order <= corpus.EXHAUSTIVE_MAX:
        raise SemiringError(f"--max-order must be in 1..{corpus.EXHAUSTIVE_MAX}")
    items = corpus.census_items(args.max_order, up_to_iso=not args.labeled)
    items += corpus.constructed_corpus(16, seed=args.seed)
    records, lines, failures = [], [], []
    for it in items:
        for t in ids:
            v = check_equivalence(it.semiring, t)
            records.append({"item": it.name, "theorem": t, "bits": v.bits(), "equivalent": v.equivalent})
            if not args.quiet:
                lines.append(f"{it.name} {t} {v.bits()} {'ok' if v.equivalent else 'COUNTEREXAMPLE'}")
            if not v.equivalent:
                failures.append({"item": it.name, "theorem": t, "detail": v.detail,
                                 "smr": serialize_semiring(it.semiring)})
                lines.append(f"  counterexample: {v.detail}")
    counts = corpus.census_counts(args.max_order)
    lines.append(f"items: {len(items)}  checks: {len(records)}  counterexamples: {len(failures)}")
    doc = {
        "census_counts": {str(k): v for k, v in counts.items()},
        "items": len(items),
        "checks": len(records),
        "counterexamples": failures,
        "results": records if not args.quiet else [],
    }
    return (REFUTED if failures else OK), [], doc, lines


def cmd_corpus_export(args):
    out = Path(args.dir)
    written = []

    def write(rel: str, text: str):
        p = out / rel
        p.parent.mkdir(parents=True, exist_ok=True)
        p.write_text(text, encoding="ascii", newline="\n")
        written.append(rel)

    for it in corpus.named_items():
        write(f"named/{it.name}.smr", serialize_semiring(it.semiring))
    for n in range(1, args.max_order + 1):
        for k, S in enumerate(corpus.enumerate_semirings(n, up_to_iso=True)):
            write(f"census/order{n}/{k:04d}.smr", serialize_semiring(S))
    for k, spec in enumerate(corpus.rees_spec_corpus(seed=args.seed)):
        write(f"rees/spec{k:02d}.rees", serialize_rees(spec))
    counts = corpus.census_counts(args.max_order)
    manifest = {
        "census_counts": {str(k): v for k, v in counts.items()},
        "named": [it.name for it in corpus.named_items()],
        "rees_specs": len(corpus.rees_spec_corpus(seed=args.seed)),
        "seed": args.seed,
    }
    write("manifest.json", json.dumps(manifest, indent=2) + "\n")
    lines = [f"wrote {len(written)} files to {out}"]
    lines += [f"order {k}: {v['labeled']} labeled, {v['up_to_iso']} up to isomorphism" for k, v in counts.items()]
    return OK, [], {"files": len(written), "manifest": manifest}, lines


# ---------------------------------------------------------------------------


def build_parser() -> Parser:
    common = Parser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--seed", type=int, default=0, help="seed for sampled Rees specs")
    common.add_argument("--quiet", action="store_true")

    p = Parser(prog="finsemiring", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=Parser)

    s = sub.add_parser("validate", parents=[common], help="parse and check an SMR file")
    s.add_argument("file")
    s.set_defaults(fn=cmd_validate)

    s = sub.add_parser("analyze", parents=[common], help="classification, Green's relations, regularity")
    s.add_argument("file")
    s.set_defaults(fn=cmd_analyze)

    s = sub.add_parser("decompose", parents=[common], help="b-lattice or rectangular decomposition")
    s.add_argument("file")
    g = s.add_mutually_exclusive_group()
    g.add_argument("--blattice", action="store_true", help="J*+ decomposition (default)")
    g.add_argument("--rectangular", action="store_true", help="band x skew-ring decomposition")
    s.set_defaults(fn=cmd_decompose)

    rees = sub.add_parser("rees", help="Rees matrix semirings")
    rsub = rees.add_subparsers(dest="rees_command", required=True, parser_class=Parser)
    s = rsub.add_parser("build", parents=[common], help="build a semiring from a REES spec")
    s.add_argument("spec")
    s.set_defaults(fn=cmd_rees_build)
    s = rsub.add_parser("coordinatize", parents=[common], help="Rees coordinates of a completely simple semiring")
    s.add_argument("file")
    s.set_defaults(fn=cmd_rees_coordinatize)

    s = sub.add_parser("theorems", parents=[common], help="check the characterization theorems on one semiring")
    s.add_argument("file")
    s.add_argument("--only", help="comma-separated theorem ids")
    s.set_defaults(fn=cmd_theorems)

    s = sub.add_parser("sweep", parents=[common], help="census + corpus theorem sweep")
    s.add_argument("--max-order", type=int, default=3)
    s.add_argument("--theorems", default="all")
    s.add_argument("--labeled", action="store_true", help="sweep every labeled table, not one per iso class")
    s.set_defaults(fn=cmd_sweep)

    c = sub.add_parser("corpus", help="corpus utilities")
    csub = c.add_subparsers(dest="corpus_command", required=True, parser_class=Parser)
    s = csub.add_parser("export", parents=[common], help="write named items, census and Rees specs")
    s.add_argument("--dir", required=True)
    s.add_argument("--max-order", type=int, default=3)
    s.set_defaults(fn=cmd_corpus_export)
    return p


def run(argv: list[str], out=None) -> int:
    out = out or sys.stdout
    fmt, quiet = "text", False
    try:
        args = build_parser().parse_args(argv)
        fmt, quiet = args.format, args.quiet
        code, inputs, sections, lines = args.fn(args)
        status = "ok" if code == OK else "refuted"
    except UsageError as exc:
        code, inputs, sections, lines, status = INPUT_ERROR, [], {"error": str(exc)}, [str(exc)], "usage"
    except SemiringError as exc:
        code, inputs, sections, lines, status = INPUT_ERROR, [], {"error": str(exc)}, [f"error: {exc}"], "error"
    except SevereDiagnostic as exc:
        code, inputs, sections, lines, status = SEVERE, [], {"error": str(exc)}, [f"SEVERE: {exc}"], "severe"
    if fmt == "json":
        doc = {"command": list(argv), "inputs": inputs, "status": status, "exit_code": code, **sections}
        out.write(dumps(doc))
    else:
        text_lines = lines[-1:] if quiet and lines and code == OK else lines
        out.write("\n".join(text_lines) + "\n")
    return code


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
