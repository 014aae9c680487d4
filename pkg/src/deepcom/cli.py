"""Command-line front end.

Exit codes: 0 success, 1 usage/parse/file error, 2 cap exceeded,
3 verification or theorem cross-check failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from .abelian import AbelianInvariants
from .classify import classify
from .cohomology import COHOMOLOGY_CAP, bogomolov_multiplier, deep_commuting_graph
from .errors import (CapExceeded, DeepComError, InternalVerificationFailure, NotACocycle,
                     TheoremViolation)
from .extensions import (BUILTIN_EXTENSIONS, ORACLE_CAP, builtin_extension,
                         commuting_pair_density, commuting_probability, dcom_oracle,
                         load_extension_file)
from .families import REALIZE_CAP
from .graphs import (commuting_graph, emit, enhanced_power_graph, graph_equal,
                     relative_commuting_graph)
from .group import abelianization, center, derived_subgroup
from .homs import automorphisms, is_isomorphic
from .speclang import realize

EXIT_OK, EXIT_USAGE, EXIT_CAP, EXIT_VERIFY = 0, 1, 2, 3
SCHEMA = 1
CSV_HEADER = ("name", "order", "kappa", "schur", "bogomolov", "class")

SPEC_HELP = """group spec grammar:
  spec   := atom ("x" atom)*
  atom   := C<n> | D<n> | Q<n> | SD<n> | S<n> | A<n> | V4 | sg64_182 | table:<path>
  D<n> is dihedral of order n; Q<n> generalized quaternion (n = 2^m >= 8);
  SD<n> semidihedral (n = 2^m >= 16); S<n>, A<n> act on n points.
  Quote a table path containing blanks: table:"my group.json".
examples: C2xC4, D8, V4 x C3, table:klein.json"""


class VerificationFailed(Exception):
    pass


class _UsageError(DeepComError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass
class AnalysisReport:
    group: str
    order: int
    center_order: int
    derived_order: int
    abelianization: list
    kappa: str
    schur: list
    bogomolov: list
    m0_order: int
    edges: dict
    classification: str
    checks: dict = field(default_factory=dict)
    schema: int = SCHEMA

    def to_dict(self) -> dict:
        d = asdict(self)
        return {"schema": d.pop("schema"), **d}

    @classmethod
    def from_dict(cls, d: dict) -> AnalysisReport:
        return cls(**d)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False) + "\n"

    def to_text(self) -> str:
        e = self.edges
        lines = [
            f"group: {self.group}",
            f"order: {self.order}",
            f"center order: {self.center_order}",
            f"derived subgroup order: {self.derived_order}",
            f"abelianization: {self.abelianization}",
            f"kappa: {self.kappa}",
            f"schur multiplier M: {self.schur}",
            f"bogomolov multiplier B0: {self.bogomolov}",
            f"|M0|: {self.m0_order}",
            f"edges: EPow {e['epow']}, DCom {e['dcom']}, Com {e['com']}",
            f"classification: {self.classification}",
        ]
        lines += [f"check {name}: {verdict}" for name, verdict in self.checks.items()]
        return "\n".join(lines) + "\n"


def analyze_group(G, cap: int = COHOMOLOGY_CAP) -> AnalysisReport:
    rep = classify(G, cap)
    mult = bogomolov_multiplier(G, cap)
    return AnalysisReport(
        group=G.name, order=G.order,
        center_order=len(center(G)), derived_order=len(derived_subgroup(G)),
        abelianization=abelianization(G).to_list(),
        kappa=str(commuting_probability(G)),
        schur=rep.schur.to_list(), bogomolov=rep.bogomolov.to_list(), m0_order=mult.m0_order,
        edges={"epow": rep.epow_edges, "dcom": rep.dcom_edges, "com": rep.com_edges},
        classification=rep.label, checks=dict(rep.checks),
    )


def _realize(args, spec: str):
    return realize(spec, cap=args.max_order)


def _write(args, text: str) -> None:
    if getattr(args, "out", None):
        try:
            Path(args.out).write_text(text, encoding="utf-8")
        except OSError as exc:
            raise _UsageError(f"cannot write {args.out}: {exc}") from None
    else:
        sys.stdout.write(text)


def cmd_analyze(args) -> int:
    report = analyze_group(_realize(args, args.spec), args.cohomology_cap)
    _write(args, report.to_json() if args.json else report.to_text())
    return EXIT_OK


def _load_extension(arg: str):
    if arg in BUILTIN_EXTENSIONS:
        return builtin_extension(arg)
    return load_extension_file(arg)


def cmd_graph(args) -> int:
    G = _realize(args, args.spec)
    if args.kind == "relcom":
        if not args.extension:
            raise _UsageError("--kind relcom needs --extension FILE (or one of "
                              + ", ".join(BUILTIN_EXTENSIONS) + ")")
        ext = _load_extension(args.extension)
        if G.order > 64 or is_isomorphic(G, ext.base, cap=max(64, G.order)) is None:
            raise _UsageError(f"the extension's base group is not isomorphic to {G.name}")
        graph = relative_commuting_graph(ext)
    elif args.kind == "com":
        graph = commuting_graph(G)
    elif args.kind == "epow":
        graph = enhanced_power_graph(G)
    else:
        graph = deep_commuting_graph(G, args.cohomology_cap)
    _write(args, emit(graph, args.format))
    return EXIT_OK


def cmd_multiplier(args) -> int:
    G = _realize(args, args.spec)
    mult = bogomolov_multiplier(G, args.cohomology_cap)
    if args.json:
        _write(args, json.dumps({"schema": SCHEMA, "group": G.name, **mult.to_dict()}, indent=2) + "\n")
    else:
        lines = [f"group: {G.name}", f"M = {mult.schur}", f"B0 = {mult.bogomolov}",
                 f"|M0| = {mult.m0_order}"]
        for d in mult.per_prime:
            lines.append(f"p = {d.p}, k = {d.k}: {d.z2_generators} cocycle generators, "
                         f"M_p = {AbelianInvariants.from_prime_powers([d.p ** e for e in d.schur_exponents])}, "
                         f"B0_p = {AbelianInvariants.from_prime_powers([d.p ** e for e in d.bogomolov_exponents])}")
        _write(args, "\n".join(lines) + "\n")
    return EXIT_OK


def _census_row(args, spec: str) -> tuple:
    G = _realize(args, spec)
    rep = classify(G, args.cohomology_cap)
    return (spec, G.order, str(commuting_probability(G)), str(rep.schur), str(rep.bogomolov),
            rep.label)


def cmd_census(args) -> int:
    with ThreadPoolExecutor(max_workers=max(1, args.threads)) as pool:
        rows = list(pool.map(lambda s: _census_row(args, s), args.specs))
    buf = io.StringIO()
    if args.csv:
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        writer.writerows(rows)
    else:
        table = [CSV_HEADER] + [tuple(str(c) for c in r) for r in rows]
        widths = [max(len(r[i]) for r in table) for i in range(len(CSV_HEADER))]
        for r in table:
            buf.write("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() + "\n")
    _write(args, buf.getvalue())
    return EXIT_OK


def verify_group(G, cap: int = COHOMOLOGY_CAP) -> list[str]:
    """Run the oracle and every cross-check; returns the list of passed checks."""
    if G.order > ORACLE_CAP:
        raise CapExceeded(f"verify runs the oracle, limited to order {ORACLE_CAP}")
    passed = []
    dcom = deep_commuting_graph(G, cap)
    if not graph_equal(dcom_oracle(G), dcom):
        raise VerificationFailed("oracle graph differs from the pairing-based DCom")
    passed.append("oracle")
    rep = classify(G, cap)
    passed += [k for k, v in rep.checks.items() if v == "ok"]
    adj = dcom.to_matrix()
    for alpha in automorphisms(G, cap=max(64, G.order)):
        a = np.array(alpha)
        if not np.array_equal(adj[a[:, None], a[None, :]], adj):
            raise VerificationFailed("DCom is not invariant under an automorphism")
    passed.append("automorphism_invariance")
    if commuting_probability(G) != commuting_pair_density(G):
        raise VerificationFailed("class count ratio differs from commuting pair density")
    passed.append("commuting_probability")
    return passed


def cmd_verify(args) -> int:
    G = _realize(args, args.spec)
    passed = verify_group(G, args.cohomology_cap)
    if args.verbose:
        for name in passed:
            print(f"{name}: ok")
    print("OK")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-order", type=int, default=REALIZE_CAP, metavar="N",
                        help=f"largest group the spec may realize (default {REALIZE_CAP})")
    common.add_argument("--cohomology-cap", type=int, default=COHOMOLOGY_CAP, metavar="N",
                        help=f"largest group for cocycle computations (default {COHOMOLOGY_CAP}; "
                             "order 60 takes seconds, order 64 a few seconds per prime)")
    common.add_argument("--threads", type=int, default=1, metavar="N",
                        help="worker threads; output does not depend on it")

    parser = _Parser(prog="deepcom", description="Commuting, enhanced power and deep commuting "
                     "graphs of small finite groups.", epilog=SPEC_HELP,
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, help_text):
        return sub.add_parser(name, parents=[common], help=help_text, epilog=SPEC_HELP,
                              formatter_class=argparse.RawDescriptionHelpFormatter)

    p = add("analyze", "full report for one group")
    p.add_argument("spec")
    p.add_argument("--json", action="store_true")
    p.add_argument("--out", metavar="PATH")
    p.set_defaults(func=cmd_analyze)

    p = add("graph", "emit one of the graphs")
    p.add_argument("spec")
    p.add_argument("--kind", choices=("com", "epow", "dcom", "relcom"), default="dcom")
    p.add_argument("--format", choices=("dot", "json", "edgelist"), default="dot")
    p.add_argument("--out", metavar="PATH")
    p.add_argument("--extension", metavar="FILE",
                   help="extension file for --kind relcom, or one of " + ", ".join(BUILTIN_EXTENSIONS))
    p.set_defaults(func=cmd_graph)

    p = add("multiplier", "Schur and Bogomolov multipliers")
    p.add_argument("spec")
    p.add_argument("--json", action="store_true")
    p.add_argument("--out", metavar="PATH")
    p.set_defaults(func=cmd_multiplier)

    p = add("census", "one summary row per group")
    p.add_argument("specs", nargs="+")
    p.add_argument("--csv", action="store_true")
    p.add_argument("--out", metavar="PATH")
    p.set_defaults(func=cmd_census)

    p = add("verify", "brute-force oracle plus all theorem cross-checks")
    p.add_argument("spec")
    p.add_argument("-v", "--verbose", action="store_true")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CapExceeded as exc:
        print(f"deepcom: cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (TheoremViolation, InternalVerificationFailure, NotACocycle, VerificationFailed) as exc:
        print(f"deepcom: verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except DeepComError as exc:
        print(f"deepcom: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
