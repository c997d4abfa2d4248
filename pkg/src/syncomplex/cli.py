"""Command-line front end.

Data goes to stdout and diagnostics to stderr.  Exit status is 0 on
success, 1 when a verification or search disagrees with the expected
values, and 2 on malformed input or a violated precondition.
"""

from __future__ import annotations

import argparse
import logging
import sys
import time
from pathlib import Path

from . import automata, search, semigroups, witnesses
from .transforms import parse

log = logging.getLogger("syncomplex")

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _write(text: str, out: str | None = None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None


def cmd_semigroup(args) -> int:
    elems = witnesses.build(args.family, args.n, args.k)
    S = semigroups.TransformationSemigroup(elems, n=args.n, check=False)
    _write(S.to_json() + "\n" if args.format == "json" else S.dumps(), args.out)
    return EXIT_OK


def cmd_witness(args) -> int:
    dfa = witnesses.witness_dfa(args.cls, args.n)
    _write(dfa.to_dot() if args.format == "dot" else dfa.dumps(), args.out)
    return EXIT_OK


def cmd_classify(args) -> int:
    dfa = automata.loads(_read(args.file))
    report = automata.classify(dfa)
    lines = [
        report.summary(),
        f"finite: {str(report.is_finite).lower()}",
        f"cofinite: {str(report.is_cofinite).lower()}",
        f"reverse_definite: {str(report.is_reverse_definite).lower()}",
        f"definite: {str(report.is_definite).lower()}",
        f"sigma: {report.sigma}",
        f"structural: {report.structural_evidence}",
        "idempotents: " + " ".join(map(str, report.algebraic_evidence.idempotents)),
    ]
    _write("\n".join(lines) + "\n")
    return EXIT_OK


def cmd_syntactic(args) -> int:
    dfa = automata.loads(_read(args.file))
    S = automata.syntactic_semigroup(dfa)
    _write(S.to_json() + "\n" if args.format == "json" else S.dumps())
    return EXIT_OK


def cmd_decompose(args) -> int:
    t = parse(args.t)
    if t.n != args.n:
        raise UsageError(f"{t} has degree {t.n}, expected {args.n}")
    d = witnesses.decompose(t, args.family)
    _write(f"t: {t}\nbase: {d.base}\nshift: {d.shift}\nk: {d.shift_power}\n")
    return EXIT_OK if d.recompose() == t else EXIT_MISMATCH


def cmd_verify(args) -> int:
    report = witnesses.verify_bounds(args.n)
    _write(report.table())
    return EXIT_OK if report.ok else EXIT_MISMATCH


def cmd_search_max(args) -> int:
    report = search.max_non_permutational(
        args.n,
        budget_nodes=args.budget_nodes,
        budget_seconds=args.budget_seconds,
        best_effort=args.best_effort,
    )
    log.info("search elapsed %.3fs", report.elapsed)
    text = report.to_text()
    status = EXIT_OK
    if args.oracle:
        oracle = search.oracle_max_size(args.n)
        text += f"oracle_max_size: {oracle} {'OK' if oracle == report.max_size else 'MISMATCH'}\n"
        if oracle != report.max_size:
            status = EXIT_MISMATCH
    _write(text)
    if report.complete and not report.matches_conjecture:
        status = EXIT_MISMATCH
    return status


def _size_table() -> str:
    columns = ["A", "G", "Aprime", "Gprime", "B", "H"]
    rows = [["n"] + [f"|{c}_n|" for c in columns]]
    for n in range(2, 7):
        row = [str(n)]
        for tag in columns:
            try:
                row.append(str(len(witnesses.build(tag, n))))
            except witnesses.FamilyError:
                row.append("-")
        rows.append(row)
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    return "\n".join("  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in rows) + "\n"


def _examples_table() -> str:
    lines = ["generators marked with *"]
    for name, listing in witnesses.examples(4).items():
        lines.append(f"{name} = {{{', '.join(listing)}}}")
    return "\n".join(lines) + "\n"


def cmd_table(args) -> int:
    _write(_size_table() if args.which == "sizes" else _examples_table())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="syncomplex",
        description="Syntactic semigroups of finite/cofinite, reverse definite and definite languages.",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="log diagnostics to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("semigroup", help="emit a named family")
    p.add_argument("--family", required=True, choices=witnesses.FAMILIES)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.add_argument("--out")
    p.set_defaults(func=cmd_semigroup)

    p = sub.add_parser("witness", help="emit a witness DFA")
    p.add_argument("--class", dest="cls", required=True,
                   choices=["finite", "cofinite", "reverse-definite", "definite"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--format", choices=["doc", "dot"], default="doc")
    p.add_argument("--out")
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("classify", help="classify the language of a DFA document")
    p.add_argument("file")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("syntactic", help="syntactic semigroup of a DFA document")
    p.add_argument("file")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_syntactic)

    p = sub.add_parser("decompose", help="factor a map as generator times a shift power")
    p.add_argument("--family", required=True, choices=["A", "B"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--t", required=True)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("verify", help="check every bound and generator claim for one n")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("search-max", help="largest non-permutational semigroup search")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--budget-nodes", type=int)
    p.add_argument("--budget-seconds", type=float)
    p.add_argument("--oracle", action="store_true", help="cross-check with the all-subsets oracle (n <= 3)")
    p.add_argument("--best-effort", action="store_true", help="allow n = 5; result may be incomplete")
    p.set_defaults(func=cmd_search_max)

    p = sub.add_parser("table", help="size table or the n = 4 example listings")
    p.add_argument("--which", choices=["sizes", "examples"], default="sizes")
    p.set_defaults(func=cmd_table)
    return parser


def _configure_logging(verbose: bool) -> None:
    # own handler on the package logger; basicConfig is a no-op once the root has handlers
    for h in [h for h in log.handlers if getattr(h, "_syncomplex", False)]:
        log.removeHandler(h)
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("%(levelname)s %(name)s: %(message)s"))
    handler._syncomplex = True
    log.addHandler(handler)
    log.setLevel(logging.INFO if verbose else logging.WARNING)
    log.propagate = False


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _configure_logging(args.verbose)
    started = time.monotonic()
    try:
        status = args.func(args)
    except (UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    log.info("%s finished in %.3fs", args.command, time.monotonic() - started)
    return status


if __name__ == "__main__":
    sys.exit(main())
