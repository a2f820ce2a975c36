"""``qf`` command-line tool.

Exit codes: 0 success, 1 claim failure or no isomorphism, 2 axiom violation,
3 parse or usage error.  Standard output is deterministic; timings go to
standard error.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from .claims import CLAIMS, run_claim
from .constructors import (FAMILIES, NotCommuting, adjoin_common_fixed_point, build,
                           extract_common_fixed_point, extract_unchecked)
from .io import (ParseError, class_label, format_labeled_table, format_permutation_list,
                 format_table, parse_quandle)
from .iso import find_isomorphism
from .perm import format_cycles, parse_cycles
from .quandle import QuandleAxiomError, infer_cyclic_type, profile
from .search import MODES, RULES, SearchParams, enumerate_quandles
from .structure import (NonTransitiveAssociation, association_classes, common_fixed_points,
                        connectivity, fixed_set_partition, orbits, quotient)

EXIT_OK, EXIT_FAIL, EXIT_AXIOM, EXIT_USAGE = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


class _Out:
    """Collects records and renders them as human text or key=value lines."""

    def __init__(self, fmt: str):
        self.machine = fmt == "machine"

    def kv(self, key: str, value, human: str = None) -> None:
        if self.machine:
            print(f"{key}={value}")
        else:
            print(human if human is not None else f"{key.replace('_', ' ')}: {value}")

    def text(self, body: str) -> None:
        """Free-form block, printed as is in both formats."""
        sys.stdout.write(body if body.endswith("\n") else body + "\n")


def _yn(b: bool) -> str:
    return "yes" if b else "no"


def _load(path: str):
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"{path}: {exc.strerror}") from None
    try:
        return parse_quandle(text)
    except ParseError as exc:
        raise UsageError(f"{path}:{exc.line}:{exc.column}: {exc.message}") from None


def _emit_quandle(q, args) -> None:
    text = format_table(q) if args.output_format == "table" else format_permutation_list(q)
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)


def _jobs(args) -> int:
    if args.jobs is not None:
        if args.jobs < 1:
            raise UsageError("--jobs must be >= 1")
        return args.jobs
    env = os.environ.get("QF_DEFAULT_JOBS")
    if not env:
        return 1
    try:
        jobs = int(env)
    except ValueError:
        raise UsageError(f"QF_DEFAULT_JOBS must be an integer, got {env!r}") from None
    if jobs < 1:
        raise UsageError("QF_DEFAULT_JOBS must be >= 1")
    return jobs


def _summary(q, out: _Out) -> None:
    f = infer_cyclic_type(q)
    conn = connectivity(q).connected
    out.kv("order", q.n)
    out.kv("profile", profile(q))
    if f is None:
        out.kv("cyclic_type", "none", "cyclic type: no")
    else:
        out.kv("cyclic_type", f"{q.n},{f}", f"cyclic type ({q.n},{f})")
    out.kv("connected", _yn(conn), "connected" if conn else "not connected")


def cmd_check(args, out):
    _summary(_load(args.path), out)
    return EXIT_OK


def cmd_info(args, out):
    q = _load(args.path)
    _summary(q, out)
    out.kv("orbits", " ".join(class_label(o) for o in orbits(q)))
    out.kv("common_fixed_points", class_label(common_fixed_points(q)))
    out.kv("fixed_set_classes", " ".join(class_label(c) for c in fixed_set_partition(q)))
    try:
        assoc = " ".join(class_label(c) for c in association_classes(q))
        out.kv("association_classes", assoc)
    except NonTransitiveAssociation as exc:
        out.kv("association_classes", "non-transitive " + ",".join(map(str, exc.triple)),
               f"association classes: not transitive ({exc})")
    for i, m in enumerate(q.mus, start=1):
        out.kv(f"mu_{i}", format_cycles(m), f"mu_{i}: {format_cycles(m)}")
    return EXIT_OK


def cmd_construct(args, out):
    try:
        q = build(args.family, *args.params)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _emit_quandle(q, args)
    return EXIT_OK


def _parse_partition(text: str) -> list:
    try:
        return [[int(x) for x in block.split(",")] for block in text.split(";") if block.strip()]
    except ValueError:
        raise UsageError(f"bad partition {text!r}; write classes like 1,3;2,4;5,6") from None


def cmd_quotient(args, out):
    q = _load(args.path)
    if args.partition:
        part = _parse_partition(args.partition)
    elif args.by == "fixed-sets":
        part = fixed_set_partition(q)
    else:
        try:
            part = association_classes(q)
        except NonTransitiveAssociation as exc:
            raise UsageError(str(exc)) from None
    try:
        qq = quotient(q, part)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    labels = sorted(sorted(c) for c in part)
    out.text(format_labeled_table(qq, labels))
    return EXIT_OK


def cmd_iso(args, out):
    q1, q2 = _load(args.first), _load(args.second)
    w = find_isomorphism(q1, q2)
    if w is None:
        out.kv("isomorphic", "no", "not isomorphic")
        return EXIT_FAIL
    out.kv("isomorphic", "yes", "isomorphic")
    out.kv("alpha", format_cycles(w.alpha))
    out.kv("mapping", w.mapping_line(), w.mapping_line())
    return EXIT_OK


def cmd_adjoin(args, out):
    q = _load(args.path)
    try:
        mu = parse_cycles(args.mu, q.n)
    except ValueError as exc:
        raise UsageError(f"--mu: {exc}") from None
    _emit_quandle(adjoin_common_fixed_point(q, mu), args)
    return EXIT_OK


def cmd_extract(args, out):
    q = _load(args.path)
    try:
        res = extract_unchecked(q, args.g0) if args.unchecked else extract_common_fixed_point(q, args.g0)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _emit_quandle(res, args)
    return EXIT_OK


def cmd_enumerate(args, out):
    try:
        params = SearchParams(args.n, args.f, mode=args.mode, budget_nodes=args.budget_nodes,
                              budget_seconds=args.budget_seconds, disabled=frozenset(args.no_prune),
                              jobs=_jobs(args), ignore_precheck=args.ignore_precheck)
        r = enumerate_quandles(params)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if out.machine:
        out.kv("mode", r.mode)
        out.kv("feasibility", r.feasibility)
        for k, c in enumerate(r.classes, start=1):
            out.kv(f"class_{k}.connected", _yn(c.connected))
            out.kv(f"class_{k}.automorphisms", c.automorphisms)
            out.kv(f"class_{k}.labelings", c.labelings)
            out.kv(f"class_{k}.found", c.labeled_found)
        out.kv("nodes", r.stats.nodes)
        for rule, cnt in sorted(r.stats.prunes.items()):
            out.kv(f"prune.{rule}", cnt)
    else:
        print(f"n={r.n} f={r.f} mode={r.mode} {r.feasibility}")
        print(f"{'class':>5}  {'connected':>9}  {'|Aut|':>6}  {'labelings':>9}  {'found':>6}")
        for k, c in enumerate(r.classes, start=1):
            print(f"{k:>5}  {_yn(c.connected):>9}  {c.automorphisms:>6}  {c.labelings:>9}  "
                  f"{c.labeled_found:>6}")
        print(f"nodes {r.stats.nodes}; prunes "
              + (", ".join(f"{k} {v}" for k, v in sorted(r.stats.prunes.items())) or "none"))
        for note in r.stats.notes:
            print(f"note: {note}")
    if args.show_tables:
        for k, c in enumerate(r.classes, start=1):
            out.text(f"# class {k}\n" + format_table(c.representative))
    print(r.machine_line())
    print(f"elapsed {r.stats.seconds:.3f}s", file=sys.stderr)
    return EXIT_OK


def cmd_reproduce(args, out):
    ids = list(CLAIMS) if args.claim == "all" else [args.claim]
    if args.claim != "all" and args.claim not in CLAIMS:
        raise UsageError(f"unknown claim {args.claim!r}; choose from {', '.join(CLAIMS)} or all")
    jobs = _jobs(args)
    failed = 0
    for cid in ids:
        res = run_claim(cid, jobs)
        failed += not res.passed
        if out.machine:
            print(f"claim={cid} status={res.status}")
        else:
            print(f"{res.status} {cid}: {res.title}")
            for line in res.evidence:
                print(f"    {line}")
        print(f"{cid} took {res.seconds:.3f}s", file=sys.stderr)
    if len(ids) > 1:
        out.kv("summary", f"{len(ids) - failed}/{len(ids)} passed",
               f"{len(ids) - failed}/{len(ids)} claims passed")
    return EXIT_FAIL if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("human", "machine"), default=argparse.SUPPRESS,
                        help="output style (default human)")

    p = _Parser(prog="qf", description="Quandles of cyclic type: check, build, compare, enumerate.")
    p.add_argument("--format", choices=("human", "machine"), default="human")
    sub = p.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    def verb(name, fn, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(fn=fn)
        return sp

    def writer(sp):
        sp.add_argument("--output-format", choices=("table", "perms"), default="table")
        sp.add_argument("-o", "--output", help="write here instead of standard output")

    sp = verb("check", cmd_check, "verify the axioms and summarise")
    sp.add_argument("path", help="quandle file, or - for standard input")

    sp = verb("info", cmd_info, "structural summary")
    sp.add_argument("path")

    sp = verb("construct", cmd_construct, "build a named family member")
    sp.add_argument("family", choices=sorted(FAMILIES))
    sp.add_argument("params", nargs="*", type=int)
    writer(sp)

    sp = verb("quotient", cmd_quotient, "quotient by a congruence")
    sp.add_argument("path")
    sp.add_argument("--partition", help="classes like 1,3;2,4;5,6")
    sp.add_argument("--by", choices=("associates", "fixed-sets"), default="associates")

    sp = verb("iso", cmd_iso, "find an isomorphism")
    sp.add_argument("first")
    sp.add_argument("second")

    sp = verb("adjoin", cmd_adjoin, "adjoin a common fixed point")
    sp.add_argument("path")
    sp.add_argument("--mu", required=True, help="commuting permutation in cycle notation")
    writer(sp)

    sp = verb("extract", cmd_extract, "remove a common fixed point")
    sp.add_argument("path")
    sp.add_argument("--g0", type=int, required=True)
    sp.add_argument("--unchecked", action="store_true",
                    help="skip the cyclic-type range hypotheses")
    writer(sp)

    sp = verb("enumerate", cmd_enumerate, "classify cyclic-type quandles of order n")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--f", type=int, required=True)
    sp.add_argument("--mode", choices=MODES, default="auto")
    sp.add_argument("--budget-nodes", type=int, default=SearchParams.budget_nodes)
    sp.add_argument("--budget-seconds", type=float, default=SearchParams.budget_seconds)
    sp.add_argument("--no-prune", action="append", default=[], metavar="RULE",
                    choices=RULES + ("closed-form", "structured", "all"))
    sp.add_argument("--ignore-precheck", action="store_true",
                    help="search even when a closed-form rule says the cell is empty")
    sp.add_argument("--jobs", type=int)
    sp.add_argument("--show-tables", action="store_true")

    sp = verb("reproduce", cmd_reproduce, "run a classification claim (or all)")
    sp.add_argument("claim", help="claim id or all: " + ", ".join(CLAIMS))
    sp.add_argument("--jobs", type=int)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    out = _Out(args.format)
    try:
        return args.fn(args, out)
    except UsageError as exc:
        print(f"qf: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except QuandleAxiomError as exc:
        if out.machine:
            print("valid=no")
        else:
            print("not a quandle:")
        for v in exc.violations:
            out.kv("violation", f"{v.kind}:{','.join(map(str, v.indices))}", f"  {v}")
        return EXIT_AXIOM
    except NotCommuting as exc:
        print(f"qf: {exc}", file=sys.stderr)
        return EXIT_AXIOM
    except BrokenPipeError:  # pragma: no cover
        return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
