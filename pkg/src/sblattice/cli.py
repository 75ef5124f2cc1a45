"""Command-line entry point.

Exit status: 0 completed (an UNSAT verdict counts as completed), 1 a
verification or property failure, 2 a budget overflow, 3 invalid input.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from . import __version__
from .errors import BudgetExceeded, InvalidInput, NotVerified, SBLatticeError
from .families import dominance, dominance_counterexample_interval, parse_family
from .io import (
    dumps,
    lattice_to_dict,
    load_json,
    load_poset,
    poset_to_dict,
    rows_to_tsv,
    structure_from_dict,
    to_dot,
)
from .labeling import (
    DEFAULT_SEARCH_BUDGET,
    LabeledLattice,
    equivalence_crosscheck,
    sb_exists,
    verify_index2,
)
from .poset import DEFAULT_CHAIN_BUDGET, Poset, mobius_table
from .report import family_report, parallel_classification
from .topology import (
    DEFAULT_FACE_BUDGET,
    ROW_FIELDS,
    SimplicialComplex,
    betti_numbers,
    interval_order_complex,
    reduced_euler,
)

log = logging.getLogger("sblattice")

EXIT_OK, EXIT_FAIL, EXIT_BUDGET, EXIT_INPUT = 0, 1, 2, 3


def _positive(text: str) -> int:
    value = int(text)
    if value <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return value


class _Parser(argparse.ArgumentParser):
    """Usage errors are invalid input (exit 3), not argparse's default 2."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--family", help="boolean:n, jp:<file>, young:mu/lambda, weak:sym:n, weak:dih:m, "
                                         "tamari:n, dominance:n, dominance-counterexample")
    common.add_argument("--input", help="poset / labeled lattice / complex JSON file")
    common.add_argument("--out", help="write output here instead of stdout")
    common.add_argument("--format", choices=["json", "dot", "tsv", "text"], default="json")
    common.add_argument("--chain-budget", type=_positive, default=DEFAULT_CHAIN_BUDGET)
    common.add_argument("--face-budget", type=_positive, default=DEFAULT_FACE_BUDGET)
    common.add_argument("--search-budget", type=_positive, default=DEFAULT_SEARCH_BUDGET)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--jobs", type=_positive, default=1)
    common.add_argument("-v", "--verbose", action="store_true")

    parser = _Parser(prog="sblattice", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"sblattice {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("gen", parents=[common], help="emit a family lattice")
    sub.add_parser("verify", parents=[common], help="index-2 and full SB verification")
    sub.add_parser("mobius", parents=[common], help="all-pairs Möbius table")
    sub.add_parser("classify", parents=[common], help="per-interval homotopy prediction vs oracles")
    h = sub.add_parser("homology", parents=[common], help="reduced Betti numbers")
    h.add_argument("--interval", help="u,v: use the order complex of the open interval (u, v)")
    sub.add_parser("sb-exists", parents=[common], help="search for an SB-labeling")
    r = sub.add_parser("report", parents=[common], help="full certification suite")
    r.add_argument("--samples", type=_positive, default=10, help="seeded random relabelings to cross-check")
    return parser


def _config(args) -> dict:
    keys = ("command", "family", "input", "format", "chain_budget", "face_budget", "search_budget", "seed")
    return {k: getattr(args, k, None) for k in keys}


def _load(args) -> Poset | LabeledLattice:
    if args.family and args.input:
        raise InvalidInput("give --family or --input, not both")
    if args.family:
        spec = args.family
        if spec == "dominance-counterexample":
            view, _ = dominance_counterexample_interval()
            return view.to_poset()[0]
        if spec.startswith("dominance:"):
            try:
                return dominance(int(spec.split(":", 1)[1]))[0]
            except ValueError as exc:
                raise InvalidInput(f"bad family identifier {spec!r}") from exc
        return parse_family(spec, load_poset)
    if args.input:
        return structure_from_dict(load_json(args.input))
    raise InvalidInput("one of --family or --input is required")


def _need_lattice(obj) -> LabeledLattice:
    if not isinstance(obj, LabeledLattice):
        raise InvalidInput("this command needs a labeled lattice")
    return obj


def _emit(args, text: str) -> None:
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_gen(args) -> int:
    obj = _load(args)
    if args.format == "dot":
        if isinstance(obj, LabeledLattice):
            _emit(args, to_dot(obj.poset, obj.payloads, obj.labeling))
        else:
            _emit(args, to_dot(obj))
    else:
        _emit(args, dumps(lattice_to_dict(obj) if isinstance(obj, LabeledLattice) else poset_to_dict(obj)))
    return EXIT_OK


def cmd_verify(args) -> int:
    lat = _need_lattice(_load(args))
    check = equivalence_crosscheck(lat, args.chain_budget)
    if args.format == "text":
        text = check.index2.to_text() + "\n" + check.full.to_text() + "\n"
        text += f"verdicts agree: {check.agree}\n"
    else:
        text = dumps({
            "tool": "sblattice",
            "version": __version__,
            "config": _config(args),
            "family": lat.family_tag,
            "agree": check.agree,
            "index2": check.index2.to_dict(),
            "full_sb": check.full.to_dict(),
        })
    _emit(args, text)
    if not check.agree:
        log.error("verifiers disagree: this is a toolkit bug")
        return EXIT_FAIL
    return EXIT_OK if check.index2.passed else EXIT_FAIL


def cmd_mobius(args) -> int:
    obj = _load(args)
    p = obj.poset if isinstance(obj, LabeledLattice) else obj
    table = mobius_table(p)
    rows = [{"u": u, "v": v, "mobius": m} for (u, v), m in sorted(table.items())]
    if args.format in ("tsv", "text"):
        _emit(args, rows_to_tsv(rows, ("u", "v", "mobius")))
    else:
        _emit(args, dumps({"tool": "sblattice", "version": __version__, "config": _config(args), "rows": rows}))
    return EXIT_OK


def cmd_classify(args) -> int:
    lat = _need_lattice(_load(args))
    rows = parallel_classification(lat, args.jobs, args.face_budget)
    if args.format in ("tsv", "text"):
        _emit(args, rows_to_tsv(rows, ROW_FIELDS))
    else:
        _emit(args, dumps({"tool": "sblattice", "version": __version__, "config": _config(args),
                           "family": lat.family_tag, "rows": rows}))
    return EXIT_OK if all(r["match"] for r in rows) else EXIT_FAIL


def cmd_homology(args) -> int:
    if args.interval:
        obj = _load(args)
        p = obj.poset if isinstance(obj, LabeledLattice) else obj
        try:
            u, v = (int(t) for t in args.interval.split(","))
        except ValueError as exc:
            raise InvalidInput("--interval expects u,v") from exc
        complex_ = interval_order_complex(p, u, v)
    else:
        if not args.input:
            raise InvalidInput("homology needs --input complex.json or --interval u,v")
        complex_ = SimplicialComplex.from_dict(load_json(args.input))
    betti = betti_numbers(complex_, args.face_budget)
    out = {
        "reduced_betti": {str(k): b for k, b in betti.as_dict().items()},
        "reduced_euler": reduced_euler(complex_, args.face_budget),
    }
    if args.format == "text":
        _emit(args, f"reduced Betti: {betti}\nreduced Euler: {out['reduced_euler']}\n")
    else:
        _emit(args, dumps(out))
    return EXIT_OK


def cmd_sb_exists(args) -> int:
    obj = _load(args)
    p = obj.poset if isinstance(obj, LabeledLattice) else obj
    result = sb_exists(p, args.search_budget, args.chain_budget)
    out = {"tool": "sblattice", "version": __version__, "config": _config(args)}
    out.update(result.to_dict())
    if args.format == "text":
        _emit(args, f"{result.status} after {result.nodes} search nodes\n")
    else:
        _emit(args, dumps(out))
    if result.status == "UNKNOWN":
        return EXIT_BUDGET
    if result.status == "SAT":
        witness = LabeledLattice(p, result.labeling, tuple(str(i) for i in range(p.n)), "witness")
        if not verify_index2(witness, args.chain_budget).passed:
            log.error("SAT witness fails verification: this is a toolkit bug")
            return EXIT_FAIL
    return EXIT_OK


def cmd_report(args) -> int:
    lat = _need_lattice(_load(args))
    report = family_report(lat, seed=args.seed, samples=args.samples, jobs=args.jobs,
                           chain_budget=args.chain_budget, face_budget=args.face_budget,
                           config=_config(args) | {"samples": args.samples})
    if args.format == "text":
        lines = [f"{lat.family_tag}: {'PASS' if report['passed'] else 'FAIL'}"]
        for c in report["checks"]:
            flag = "PASS" if c["passed"] else "FAIL"
            if c["partial"]:
                flag += " (partial)"
            lines.append(f"  {flag:<16} {c['name']}  {c['detail']}")
        _emit(args, "\n".join(lines) + "\n")
    else:
        _emit(args, dumps(report))
    return EXIT_OK if report["passed"] else EXIT_FAIL


COMMANDS = {
    "gen": cmd_gen,
    "verify": cmd_verify,
    "mobius": cmd_mobius,
    "classify": cmd_classify,
    "homology": cmd_homology,
    "sb-exists": cmd_sb_exists,
    "report": cmd_report,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        return COMMANDS[args.command](args)
    except BudgetExceeded as exc:
        log.error("budget exhausted: %s", exc)
        return EXIT_BUDGET
    except InvalidInput as exc:
        log.error("invalid input: %s", exc)
        return EXIT_INPUT
    except NotVerified as exc:
        log.error("%s", exc)
        return EXIT_FAIL
    except SBLatticeError as exc:
        log.error("%s", exc)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
