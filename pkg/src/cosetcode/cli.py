"""Command-line front end.

Subcommands:
  family   generate a parity-check matrix and its generator set as text
  report   storage-code report for one family (JSON or CSV)
  sweep    hs(s, r) grid with the rate bound check (CSV or JSON)
  verify   run the lemma/property suites; nonzero exit on any failure
  guess    seeded guessing-game simulation on one family's graph

All machine-readable output is exact integers/rationals; identical flags
and seed give byte-identical files. The memory cap guarding the 2^16 stress
tier defaults to 1 GiB (--memory-cap or COSETCODE_MEMORY_CAP to override).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import __version__, bitlin, codefam, cosetgraph, permring, storage
from .codefam import FamilySpec
from .storage import BoundViolationError


def _family_spec(args: argparse.Namespace) -> FamilySpec:
    kwargs = {"family": args.kind, "r": args.r}
    if args.kind == "hs":
        if args.s is None:
            raise SystemExit("error: --kind hs requires --s")
        kwargs["s"] = args.s
    if args.kind == "padded_hamming":
        if args.m is None:
            raise SystemExit("error: --kind padded_hamming requires --m")
        kwargs["m"] = args.m
    if getattr(args, "allow_small_r", False):
        kwargs["allow_small_r"] = True
    try:
        return FamilySpec(**kwargs)
    except ValueError as exc:
        raise SystemExit(f"error: {exc}")


def cmd_family(args: argparse.Namespace) -> int:
    spec = _family_spec(args)
    matrix = spec.check_matrix()
    if args.output is None:
        sys.stdout.write(bitlin.matrix_to_text(matrix))
        return 0
    base = Path(args.output)
    matrix_path = base.with_name(base.name + ".matrix.txt")
    gens_path = base.with_name(base.name + ".generators.txt")
    bitlin.write_matrix_text(matrix, matrix_path)
    gens_path.write_text(spec.generators().to_lines())
    print(f"wrote {matrix_path}")
    print(f"wrote {gens_path}")
    return 0


def cmd_report(args: argparse.Namespace) -> int:
    spec = _family_spec(args)
    try:
        report = storage.storage_report(spec)
    except bitlin.CapacityError as exc:
        raise SystemExit(f"error: {exc}")
    if args.format == "csv":
        text = storage.reports_to_csv([report])
    else:
        text = storage.report_to_json(report)
    _emit(text, args.output)
    return 0


def cmd_sweep(args: argparse.Namespace) -> int:
    pairs = list(storage.DEFAULT_SWEEP_GRID)
    if args.pair is not None:
        # an explicitly empty grid ("--pair ''") is a valid request
        pairs = [tuple(map(int, p.split(","))) for p in args.pair if p.strip()]
    if args.stress:
        pairs.append(storage.STRESS_PAIR)
    try:
        reports = storage.theorem_sweep(pairs, check=False)
    except bitlin.CapacityError as exc:
        raise SystemExit(f"error: {exc}")
    if args.format == "json":
        text = storage.reports_to_json(reports)
    else:
        text = storage.reports_to_csv(reports)
    _emit(text, args.output)
    failures = [rep for rep in reports if not rep.bound_met]
    for rep in failures:
        print(f"BOUND VIOLATED: {rep.spec.label()}", file=sys.stderr)
    mono = storage.rate_monotonicity(reports)
    for s in sorted(mono):
        note = "nondecreasing" if mono[s] else "NOT monotone"
        print(f"# rate vs r at s={s}: {note}", file=sys.stderr)
    return 1 if failures else 0


def cmd_guess(args: argparse.Namespace) -> int:
    spec = _family_spec(args)
    graph = cosetgraph.build_graph(spec.generators())
    outcome = storage.guessing_equivalence(graph, args.trials, args.seed)
    print(f"graph: {spec.label()}  N={graph.n_vertices}")
    print(f"trials: {outcome.trials}  successes: {outcome.successes}")
    print(f"mismatches: {outcome.mismatches}")
    print(
        "exact P_s: "
        f"{outcome.success_probability.numerator}/{outcome.success_probability.denominator}"
    )
    return 0 if outcome.mismatches == 0 else 1


def _suite_permring(r: int, cases: int, seed: int, fault: bool) -> tuple[int, int]:
    import numpy as np

    rng = np.random.default_rng(seed)
    passed = failed = 0

    def check(ok: bool) -> None:
        nonlocal passed, failed
        if ok:
            passed += 1
        else:
            failed += 1

    exh_r = min(r, 4)
    for v in range(1 << exh_r):
        for w in range(1 << exh_r):
            gv = permring.PermSum(exh_r, (v,))
            gw = permring.PermSum(exh_r, (w,))
            check(permring.mul(gv, gw) == permring.PermSum(exh_r, (v ^ w,)))
    for _ in range(cases):
        size = min(2 * int(rng.integers(0, 4)) + 1, (1 << r) - 1)
        supp = rng.choice(1 << r, size=size, replace=False)
        a = permring.PermSum(r, tuple(int(x) for x in supp))
        ok = permring.self_inverse_check(a)
        if fault:
            ok = not ok
            fault = False
        check(ok)
    return passed, failed


def _suite_blocks(r: int, cases: int, seed: int, fault: bool) -> tuple[int, int]:
    import numpy as np

    rng = np.random.default_rng(seed)
    passed = failed = 0
    for _ in range(cases):
        n_cols = int(rng.integers(1, (1 << r) + 1))
        cols = rng.choice(1 << r, size=n_cols, replace=False)
        gens = codefam.GeneratorSet(r, tuple(int(c) for c in cols))
        ell = int(rng.integers(0, r + 1))
        rebuilt = cosetgraph.reassemble(cosetgraph.block_decompose(gens, ell))
        direct = permring.materialize(cosetgraph.adjacency_sum(gens))
        if fault:
            flip = rebuilt.copy()
            flip.set(0, 0, flip.get(0, 0) ^ 1)
            rebuilt = flip
            fault = False
        if rebuilt == direct:
            passed += 1
        else:
            failed += 1
    return passed, failed


def _suite_graphs(r: int, cases: int, seed: int, fault: bool) -> tuple[int, int]:
    passed = failed = 0
    checks = [
        cosetgraph.is_triangle_free(codefam.h2_generators(max(r, 4))),
        cosetgraph.is_connected(codefam.h2_generators(max(r, 4))),
        not cosetgraph.is_connected(codefam.padded_hamming_generators(2, 1)),
        not cosetgraph.is_triangle_free(
            codefam.GeneratorSet(2, (0b10, 0b01, 0b11))
        ),
    ]
    if fault:
        checks[0] = not checks[0]
    for ok in checks:
        if ok:
            passed += 1
        else:
            failed += 1
    return passed, failed


def _suite_guessing(r: int, cases: int, seed: int, fault: bool) -> tuple[int, int]:
    spec = FamilySpec("zero_code", r=min(r, 6))
    graph = cosetgraph.build_graph(spec.generators())
    outcome = storage.guessing_equivalence(graph, max(cases, 1), seed)
    bad = outcome.mismatches + (1 if fault else 0)
    return outcome.matches, bad


SUITES = {
    "permring": _suite_permring,
    "blocks": _suite_blocks,
    "graphs": _suite_graphs,
    "guessing": _suite_guessing,
}


def cmd_verify(args: argparse.Namespace) -> int:
    names = [args.suite] if args.suite else list(SUITES)
    any_failed = False
    for name in names:
        if name not in SUITES:
            raise SystemExit(f"error: unknown suite {name!r} (choose from {list(SUITES)})")
        passed, failed = SUITES[name](args.r, args.cases, args.seed, args.inject_fault)
        status = "ok" if failed == 0 else "FAIL"
        print(f"suite {name}: {passed} passed, {failed} failed [{status}]")
        any_failed |= failed > 0
    return 1 if any_failed else 0


def _emit(text: str, output: str | None) -> None:
    if output is None:
        sys.stdout.write(text)
    else:
        Path(output).write_text(text)
        print(f"wrote {output}")


def _add_family_args(p: argparse.ArgumentParser) -> None:
    p.add_argument(
        "--kind", required=True, choices=codefam.FAMILIES, help="family to build"
    )
    p.add_argument("--r", required=True, type=int, help="Hamming order parameter")
    p.add_argument("--s", type=int, help="recursion depth (hs only)")
    p.add_argument("--m", type=int, help="zero-padding rows (padded_hamming only)")
    p.add_argument(
        "--allow-small-r",
        action="store_true",
        help="permit r < 4 for h2/h3/hs; triangle-freeness is re-checked, not assumed",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cosetcode",
        description="Coset-graph storage codes: families, ranks, verification.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument(
        "--memory-cap",
        type=int,
        default=None,
        metavar="BYTES",
        help="allocation cap (default 1 GiB or COSETCODE_MEMORY_CAP)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_family = sub.add_parser("family", help="write a check matrix + generator set")
    _add_family_args(p_family)
    p_family.add_argument("-o", "--output", help="output path base (default: stdout)")
    p_family.set_defaults(func=cmd_family)

    p_report = sub.add_parser("report", help="storage-code report for one family")
    _add_family_args(p_report)
    p_report.add_argument("--format", choices=("json", "csv"), default="json")
    p_report.add_argument("-o", "--output")
    p_report.set_defaults(func=cmd_report)

    p_sweep = sub.add_parser("sweep", help="hs(s, r) sweep with rate bound check")
    p_sweep.add_argument(
        "--pair",
        action="append",
        metavar="S,R",
        help="explicit (s, r) pair; repeatable; default grid s in {2,3}, r in 4..8",
    )
    p_sweep.add_argument(
        "--stress",
        action="store_true",
        help="add the (4, 4) stress tier (N = 65536, dense elimination)",
    )
    p_sweep.add_argument("--format", choices=("csv", "json"), default="csv")
    p_sweep.add_argument("-o", "--output")
    p_sweep.set_defaults(func=cmd_sweep)

    p_verify = sub.add_parser("verify", help="run the lemma/property suites")
    p_verify.add_argument("--suite", choices=tuple(SUITES), help="run one suite only")
    p_verify.add_argument("--r", type=int, default=4)
    p_verify.add_argument("--cases", type=int, default=200)
    p_verify.add_argument("--seed", type=int, default=2024)
    p_verify.add_argument(
        "--inject-fault",
        action="store_true",
        help="debug: flip one checked bit so the suite must fail",
    )
    p_verify.set_defaults(func=cmd_verify)

    p_guess = sub.add_parser("guess", help="seeded guessing-game simulation")
    _add_family_args(p_guess)
    p_guess.add_argument("--trials", required=True, type=int)
    p_guess.add_argument("--seed", type=int, default=2024)
    p_guess.set_defaults(func=cmd_guess)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.memory_cap is not None:
        if args.memory_cap <= 0:
            raise SystemExit("error: --memory-cap must be positive")
        bitlin.set_memory_cap(args.memory_cap)
    if getattr(args, "trials", None) is not None and args.trials <= 0:
        raise SystemExit("error: --trials must be positive")
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
