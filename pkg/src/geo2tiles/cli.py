"""Command-line surface for the toolkit.

Deterministic text I/O: data goes to stdout, diagnostics to stderr. Exit
codes: 0 success/verified, 1 mismatch or invalid input, 2 usage error,
3 resource limit. GEO2TILES_MAX_NODES, when set, caps the default solver
node budget and is echoed in the output.
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import Optional

from geo2tiles import gadgets, geography, layout, reduction, render, tiles

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3

MAX_NODES_ENV = "GEO2TILES_MAX_NODES"
DEFAULT_MAX_NODES = 5_000_000


def _env_max_nodes(cli_value: Optional[int], out) -> int:
    if cli_value is not None:
        return cli_value
    raw = os.environ.get(MAX_NODES_ENV)
    if raw is not None:
        try:
            value = int(raw)
        except ValueError:
            print(f"error: {MAX_NODES_ENV}={raw!r} is not an integer",
                  file=sys.stderr)
            raise SystemExit(EXIT_USAGE)
        print(f"max-nodes {value} (from {MAX_NODES_ENV})", file=out)
        return value
    return DEFAULT_MAX_NODES


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="geo2tiles",
        description="Solve, compile, and verify tile-sliding game boards "
                    "built from geography-style graph games.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve-tt", help="solve a tile board file")
    s.add_argument("tt_file")
    s.add_argument("--pv", action="store_true",
                   help="print the principal line of play")
    s.add_argument("--max-nodes", type=int, default=None)

    s = sub.add_parser("solve-gg", help="solve a graph game file")
    s.add_argument("gg_file")

    s = sub.add_parser("reduce", help="compile a graph game into a board")
    s.add_argument("gg_file")
    s.add_argument("-o", "--output", required=True, metavar="TT_FILE")
    s.add_argument("--area-report", action="store_true",
                   help="print per-structure cell counts as key<TAB>value")

    s = sub.add_parser("verify",
                       help="check winner equivalence over a corpus")
    group = s.add_mutually_exclusive_group(required=True)
    group.add_argument("--corpus", metavar="DIR",
                       help="directory of .gg instance files")
    group.add_argument("--random", action="store_true",
                       help="generate the corpus on the fly")
    s.add_argument("--count", type=int, default=200)
    s.add_argument("--max-vertices", type=int, default=8)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--max-nodes", type=int, default=None)
    s.add_argument("--figures", metavar="DIR", default=None,
                   help="also render report figures into DIR")

    s = sub.add_parser("gen", help="generate a random strict instance")
    s.add_argument("--vertices", type=int, required=True)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("-o", "--output", required=True, metavar="GG_FILE")

    s = sub.add_parser("render", help="render a board file")
    s.add_argument("tt_file")
    s.add_argument("--svg", metavar="OUT", default=None)

    s = sub.add_parser("gadget-check",
                       help="verify gadget behavioural contracts")
    s.add_argument("--file", metavar="GADGET_FILE", default=None,
                   help="check one gadget file instead of the catalog")
    return p


def _read(path: str, err) -> Optional[str]:
    try:
        with open(path, "r", encoding="utf-8") as f:
            return f.read()
    except OSError as e:
        print(f"error: cannot read {path}: {e}", file=err)
        return None


def run(argv: list[str], out=None, err=None) -> int:
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    try:
        if args.command == "solve-tt":
            return _cmd_solve_tt(args, out, err)
        if args.command == "solve-gg":
            return _cmd_solve_gg(args, out, err)
        if args.command == "reduce":
            return _cmd_reduce(args, out, err)
        if args.command == "verify":
            return _cmd_verify(args, out, err)
        if args.command == "gen":
            return _cmd_gen(args, out, err)
        if args.command == "render":
            return _cmd_render(args, out, err)
        if args.command == "gadget-check":
            return _cmd_gadget_check(args, out, err)
    except SystemExit as e:
        return int(e.code or 0)
    except (tiles.BoardParseError, geography.GeoParseError,
            gadgets.GadgetParseError) as e:
        print(f"error: {e}", file=err)
        return EXIT_INVALID
    except geography.InvalidInstance as e:
        for v in e.violations:
            print(f"error: {v}", file=err)
        return EXIT_INVALID
    except (layout.RoutingFailed, layout.UnsupportedDegree,
            reduction.LintFailed, reduction.NoIsolatedSpace,
            geography.NormalizationFailed, geography.GenerationFailed,
            tiles.IllegalMove, ValueError) as e:
        print(f"error: {e}", file=err)
        return EXIT_INVALID
    except geography.ResourceExhausted as e:
        print(f"error: {e}", file=err)
        return EXIT_RESOURCE
    raise AssertionError(f"unhandled command {args.command}")


def _cmd_solve_tt(args, out, err) -> int:
    text = _read(args.tt_file, err)
    if text is None:
        return EXIT_INVALID
    board = tiles.parse_board(text)
    max_nodes = _env_max_nodes(args.max_nodes, out)
    res = tiles.solve(board, max_nodes=max_nodes)
    if res.exhausted:
        print(f"error: search aborted after {res.nodes_expanded} nodes",
              file=err)
        return EXIT_RESOURCE
    print(f"winner {res.winner.value}", file=out)
    if args.pv:
        line = " ".join(m.text() for m in res.principal_line or ())
        print(f"pv {line}", file=out)
    return EXIT_OK


def _cmd_solve_gg(args, out, err) -> int:
    text = _read(args.gg_file, err)
    if text is None:
        return EXIT_INVALID
    inst = geography.parse_instance(text)
    report = geography.validate(inst, "relaxed")
    if not report.ok:
        for v in report.violations:
            print(f"error: {v}", file=err)
        return EXIT_INVALID
    res = geography.gg_solve(geography.GeoPosition.initial(inst))
    print(f"winner {res.winner.value}", file=out)
    return EXIT_OK


def _cmd_reduce(args, out, err) -> int:
    text = _read(args.gg_file, err)
    if text is None:
        return EXIT_INVALID
    inst = geography.parse_instance(text)
    trace = reduction.reduce_instance(inst)
    with open(args.output, "w", encoding="utf-8") as f:
        f.write(tiles.format_board(trace.board))
    if args.area_report:
        for key, value in trace.area_report():
            print(f"{key}\t{value}", file=out)
    return EXIT_OK


def _cmd_verify(args, out, err) -> int:
    max_nodes = _env_max_nodes(args.max_nodes, out)
    corpus: list[tuple[str, geography.GeoInstance]] = []
    if args.corpus:
        try:
            names = sorted(n for n in os.listdir(args.corpus)
                           if n.endswith(".gg"))
        except OSError as e:
            print(f"error: {e}", file=err)
            return EXIT_INVALID
        for name in names:
            text = _read(os.path.join(args.corpus, name), err)
            if text is None:
                return EXIT_INVALID
            corpus.append((name, geography.parse_instance(text)))
    else:
        print(f"seed {args.seed}", file=err)
        for i in range(args.count):
            inst = geography.generate(args.max_vertices, args.seed + i)
            corpus.append((f"rand{i:04d}", inst))
    for inst_id, inst in corpus:
        rep = geography.validate(inst, "strict")
        if not rep.ok:
            for v in rep.violations:
                print(f"error: {inst_id}: {v}", file=err)
            return EXIT_INVALID
    report = reduction.verify_equivalence(corpus, max_nodes=max_nodes)
    out.write(report.to_tsv())
    if args.figures:
        for path in render.write_verify_figures(report, args.figures):
            print(f"wrote {path}", file=err)
    return EXIT_OK if report.all_match else EXIT_INVALID


def _cmd_gen(args, out, err) -> int:
    inst = geography.generate(args.vertices, args.seed)
    with open(args.output, "w", encoding="utf-8") as f:
        f.write(geography.format_instance(inst))
    print(f"seed {args.seed}", file=out)
    return EXIT_OK


def _cmd_render(args, out, err) -> int:
    text = _read(args.tt_file, err)
    if text is None:
        return EXIT_INVALID
    board = tiles.parse_board(text)
    if args.svg:
        with open(args.svg, "w", encoding="utf-8") as f:
            f.write(render.render_svg(board))
    else:
        out.write(render.render_ascii(board))
    return EXIT_OK


def _cmd_gadget_check(args, out, err) -> int:
    if args.file:
        text = _read(args.file, err)
        if text is None:
            return EXIT_INVALID
        specs = [gadgets.parse_gadget(text)]
    else:
        specs = gadgets.builtin_catalog()
    failures = 0
    cases = 0
    for i, g in enumerate(specs):
        report = gadgets.check_contract(g)
        for c in report.cases:
            cases += 1
            mark = "pass" if c.passed else "FAIL"
            got = c.got.value if c.got else "-"
            print(f"{g.kind.value} {g.owner.value} {g.variant} #{i}: "
                  f"{c.description}: expected {c.expected.value} "
                  f"got {got} {mark}", file=out)
            if not c.passed:
                failures += 1
    print(f"summary\t{len(specs)} specs\t{cases} cases\t"
          f"{failures} failures", file=out)
    return EXIT_OK if failures == 0 else EXIT_INVALID


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
