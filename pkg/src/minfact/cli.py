"""Command-line front end.

Subcommands: enumerate, bijection, verify, pmf, compare, sample.

Exit codes: 0 success (and all settled identity checks passing), 1 settled
identity failure, 2 parse error, 3 cap exceeded, 4 domain error.  Identical
invocations (same flags, same seed) produce byte-identical output at any
--threads value.
"""

from __future__ import annotations

import argparse
import json
import sys

from minfact.errors import (
    CapExceededError,
    DomainError,
    MinfactError,
    ParseError,
)
from minfact import __version__
from minfact.bijections import (
    EdgeTree,
    alpha,
    alpha_inverse,
    e_inverse,
    e_map,
    triple_of,
)
from minfact.distributions import (
    compare_report,
    compare_report_text,
    pmf_limit_table,
    pmf_montecarlo,
    pmf_oracle_dfs,
    pmf_oracle_tree,
    pmf_theorem1_table,
)
from minfact.factorizations import enumerate_factorizations, parse_factorization
from minfact.trees import VertexTree, enumerate_trees, sample_tree
from minfact.verify import report_json, report_text, run_suite, settled_all_pass

EXIT_OK = 0
EXIT_SETTLED_FAIL = 1
EXIT_PARSE = 2
EXIT_CAP = 3
EXIT_DOMAIN = 4


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="minfact",
        description=(
            "Exact computation for minimal transposition factorizations of "
            "the n-cycle, their tree bijections, and the joint law of the "
            "associated statistics."
        ),
    )
    parser.add_argument("--version", action="version", version=f"minfact {__version__}")

    def add_common(target: argparse.ArgumentParser, suppress: bool) -> None:
        # The common flags are accepted both before and after the
        # subcommand; the after-subcommand copies use SUPPRESS defaults so
        # they only override the root values when given explicitly.
        kw = {"default": argparse.SUPPRESS} if suppress else {}
        target.add_argument(
            "--threads",
            type=int,
            **(kw or {"default": None}),
            help="worker threads (default: MINFACT_THREADS or CPU count)",
        )
        target.add_argument(
            "--format",
            choices=("json", "csv", "text"),
            **(kw or {"default": "text"}),
            help="output format (default text)",
        )
        target.add_argument(
            "--output", **(kw or {"default": None}), help="write output to this path"
        )

    add_common(parser, suppress=False)
    common = argparse.ArgumentParser(add_help=False)
    add_common(common, suppress=True)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=argparse.ArgumentParser)

    p = sub.add_parser("enumerate", parents=[common], help="enumerate factorizations or trees")
    p.add_argument("--what", choices=("factorizations", "trees"), required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument(
        "--stats",
        action="store_true",
        help="append the statistic triple to each object",
    )

    p = sub.add_parser("bijection", parents=[common], help="convert between representations")
    p.add_argument(
        "--direction",
        choices=("e-map", "e-inverse", "alpha", "alpha-inverse"),
        default="e-map",
    )
    p.add_argument("--input", required=True, help="factorization text or tree JSON")
    p.add_argument("--n", type=int, default=None, help="cycle size for factorization text")
    p.add_argument(
        "--roundtrip",
        action="store_true",
        help="apply both directions and assert the round trip",
    )

    p = sub.add_parser("verify", parents=[common], help="run the identity verification suite")
    p.add_argument("--suite", choices=("settled", "contested", "all"), default="all")
    p.add_argument("--n-max", type=int, default=7)
    p.add_argument("--t-order", type=int, default=7)

    p = sub.add_parser("pmf", parents=[common], help="joint law of the first two appearance counts")
    p.add_argument("--n", type=int, required=True)
    p.add_argument(
        "--source",
        choices=("oracle-tree", "oracle-dfs", "theorem1", "limit", "montecarlo"),
        default="oracle-tree",
    )
    p.add_argument("--samples", type=int, default=100000)
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("compare", parents=[common], help="cross-source pmf comparison report")
    p.add_argument("--n-max", type=int, required=True)

    p = sub.add_parser("sample", parents=[common], help="sample uniform random trees")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--samples", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument(
        "--stats",
        action="store_true",
        help="append the (deg_1, deg_2', |L_1|) triple to each tree",
    )
    return parser


def _tree_triple(tree: VertexTree) -> tuple[int, int, int]:
    return (tree.degree(1), tree.deg2_prime(), len(tree.l_path(1)))


def _cmd_enumerate(args) -> tuple[int, str]:
    lines = []
    count = 0
    if args.what == "factorizations":
        for f in enumerate_factorizations(args.n):
            count += 1
            if args.stats:
                lines.append(f"{f} {triple_of(f)}")
            else:
                lines.append(str(f))
    else:
        for tree in enumerate_trees(args.n):
            count += 1
            if args.stats:
                lines.append(f"{tree.to_json()} {_tree_triple(tree)}")
            else:
                lines.append(tree.to_json())
    lines.append(f"count {count}")
    return EXIT_OK, "\n".join(lines) + "\n"


def _parse_bijection_input(args):
    text = args.input.strip()
    if text.startswith("{"):
        data = json.loads(text)
        if "labels" in data:
            return VertexTree.from_json(text)
        return EdgeTree.from_json(text)
    return parse_factorization(text, args.n)


def _cmd_bijection(args) -> tuple[int, str]:
    try:
        obj = _parse_bijection_input(args)
    except (json.JSONDecodeError, KeyError) as exc:
        raise ParseError(f"cannot parse bijection input: {exc}") from exc
    direction = args.direction
    if direction == "e-map":
        fact = obj
        tree = e_map(fact)
        if args.roundtrip:
            back = e_inverse(tree)
            if back != fact:
                raise DomainError(f"round trip failed: {fact} -> {back}")
            return EXIT_OK, f"{tree.to_json()}\n{back}\nOK\n"
        return EXIT_OK, tree.to_json() + "\n"
    if direction == "e-inverse":
        fact = e_inverse(obj)
        if args.roundtrip:
            back = e_map(fact)
            if back != obj:
                raise DomainError("round trip failed")
            return EXIT_OK, f"{fact}\n{back.to_json()}\nOK\n"
        return EXIT_OK, str(fact) + "\n"
    if direction == "alpha":
        tree = alpha(obj)
        if args.roundtrip:
            back = alpha_inverse(tree)
            if back != obj:
                raise DomainError("round trip failed")
            return EXIT_OK, f"{tree.to_json()}\n{back.to_json()}\nOK\n"
        return EXIT_OK, tree.to_json() + "\n"
    tree = alpha_inverse(obj)
    if args.roundtrip:
        back = alpha(tree)
        if back != obj:
            raise DomainError("round trip failed")
        return EXIT_OK, f"{tree.to_json()}\n{back.to_json()}\nOK\n"
    return EXIT_OK, tree.to_json() + "\n"


def _cmd_verify(args) -> tuple[int, str]:
    verdicts = run_suite(args.suite, args.n_max, args.t_order)
    if args.format == "json":
        out = report_json(verdicts) + "\n"
    else:
        out = report_text(verdicts)
    code = EXIT_OK if settled_all_pass(verdicts) else EXIT_SETTLED_FAIL
    return code, out


def _cmd_pmf(args) -> tuple[int, str]:
    source = args.source
    if source == "oracle-tree":
        table = pmf_oracle_tree(args.n)
    elif source == "oracle-dfs":
        table = pmf_oracle_dfs(args.n)
    elif source == "theorem1":
        table = pmf_theorem1_table(args.n)
    elif source == "limit":
        table = pmf_limit_table(args.n)
    else:
        table = pmf_montecarlo(args.n, args.samples, args.seed)
    if args.format == "json":
        return EXIT_OK, table.to_json() + "\n"
    if args.format == "csv":
        return EXIT_OK, table.to_csv()
    return EXIT_OK, table.to_text()


def _cmd_compare(args) -> tuple[int, str]:
    report = compare_report(args.n_max)
    if args.format == "json":
        return EXIT_OK, json.dumps(report, separators=(",", ":")) + "\n"
    return EXIT_OK, compare_report_text(report)


def _cmd_sample(args) -> tuple[int, str]:
    if args.n < 2:
        raise DomainError(f"need n >= 2, got {args.n}")
    if args.samples < 1:
        raise DomainError(f"need samples >= 1, got {args.samples}")
    lines = []
    for index in range(args.samples):
        tree = sample_tree(args.n, args.seed, index)
        if args.stats:
            lines.append(f"{tree.to_json()} {_tree_triple(tree)}")
        else:
            lines.append(tree.to_json())
    return EXIT_OK, "\n".join(lines) + "\n"


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.threads is not None:
        import os

        os.environ["MINFACT_THREADS"] = str(max(1, args.threads))
    handlers = {
        "enumerate": _cmd_enumerate,
        "bijection": _cmd_bijection,
        "verify": _cmd_verify,
        "pmf": _cmd_pmf,
        "compare": _cmd_compare,
        "sample": _cmd_sample,
    }
    try:
        code, out = handlers[args.command](args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except CapExceededError as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except DomainError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except MinfactError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    if args.output:
        with open(args.output, "w") as handle:
            handle.write(out)
    else:
        sys.stdout.write(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
