"""Command-line front end: one subcommand per module.

Exit codes: 0 all checks passed, 1 a check failed, 2 inconclusive (a limit
was hit), 64 usage error.  Every report embeds the tool version, the full
configuration, the seed and the wall-clock time, and is written (to stdout
or ``--out``) on exits 0-2.  The log level comes from ``FPGROUPS_LOG_LEVEL``.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import time
from pathlib import Path

from . import __version__
from .coset import EnumLimits, LimitExceeded, enumerate_cosets, schreier_transversal
from .presentation import PresentationSyntaxError, format_word, parse_presentation, parse_subgroup
from .pseries import delta_orders, is_prime
from .schreier import subgroup_presentation, tietze_simplify

log = logging.getLogger("fpgroups")

EXIT_OK, EXIT_FAIL, EXIT_INCONCLUSIVE, EXIT_USAGE = 0, 1, 2, 64
STATUS = {EXIT_OK: "pass", EXIT_FAIL: "fail", EXIT_INCONCLUSIVE: "inconclusive"}
COMMANDS = ("coset-enum", "subgroup-presentation", "p-series", "omega-run", "triangle-lab", "wiegold-verify")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _positive(kind):
    def conv(text):
        try:
            v = kind(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
        if v <= 0:
            raise argparse.ArgumentTypeError(f"must be positive: {text!r}")
        return v

    return conv


def _nonneg_int(text):
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0: {text!r}")
    return v


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _load_presentation(path: str):
    try:
        return parse_presentation(_read(path))
    except PresentationSyntaxError as exc:
        raise UsageError(f"{path}: {exc}") from None


def _load_subgroup(path: str, alphabet):
    try:
        return parse_subgroup(_read(path), alphabet)
    except (PresentationSyntaxError, ValueError) as exc:
        raise UsageError(f"{path}: {exc}") from None


def _limits(args) -> EnumLimits:
    return EnumLimits(max_cosets=args.max_cosets, max_time=args.max_time)


def _add_limits(p):
    p.add_argument("--max-cosets", type=_positive(int), default=200_000)
    p.add_argument("--max-time", type=_positive(float), default=60.0, help="seconds per enumeration")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="fpgroups", description="Finitely presented group toolkit.")
    parser.add_argument("--version", action="version", version=f"fpgroups {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p):
        p.add_argument("--out", help="write the JSON report here instead of stdout")
        p.add_argument("--seed", type=int, default=0, help="recorded in every report")

    p = sub.add_parser("coset-enum", help="Todd-Coxeter coset enumeration")
    p.add_argument("--presentation", required=True)
    p.add_argument("--subgroup", required=True)
    _add_limits(p)
    common(p)

    p = sub.add_parser("subgroup-presentation", help="Reidemeister-Schreier presentation of a subgroup")
    p.add_argument("--presentation", required=True)
    p.add_argument("--subgroup", required=True)
    p.add_argument("--simplify-budget", type=_nonneg_int, default=10_000)
    _add_limits(p)
    common(p)

    p = sub.add_parser("p-series", help="orders |G/δ^p_i(G)|")
    p.add_argument("--presentation", required=True)
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--depth", type=_nonneg_int, required=True)
    _add_limits(p)
    common(p)

    p = sub.add_parser("omega-run", help="finite prefix of the branch construction")
    p.add_argument("--presentation", required=True)
    p.add_argument("--subgroup", required=True)
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--bits", required=True)
    p.add_argument("--schedule", required=True)
    p.add_argument("--report-depth", type=_nonneg_int)
    _add_limits(p)
    common(p)

    p = sub.add_parser("triangle-lab", help="Cayley-ball experiments in a hyperbolic triangle group")
    p.add_argument("--spec", default="2,4,8")
    p.add_argument("--radius", type=_nonneg_int, required=True)
    p.add_argument("--tol", type=_positive(float), default=1e-6)
    p.add_argument("--reflections", action="store_true", help="use the reflection generators a, b, c")
    p.add_argument("--max-order", type=_positive(int), default=16)
    p.add_argument("--slimness-samples", type=_nonneg_int, default=0)
    p.add_argument("--quasifit", metavar="WORD")
    p.add_argument("--max-power", type=_positive(int), default=8)
    p.add_argument("--aperiodic", metavar="WORD")
    p.add_argument("--Lambda", type=_nonneg_int, default=0)
    p.add_argument("--t", type=_positive(float), default=2.0)
    p.add_argument("--period-cap", type=_positive(int), default=3)
    p.add_argument("--export-ball", metavar="FILE", help="adjacency list (vertex, word, generator, vertex) as JSON")
    common(p)

    p = sub.add_parser("wiegold-verify", help="recompute the Z2*Z4 / (2,4,8) chain")
    p.add_argument("--max-cosets", type=_positive(int), default=200_000)
    p.add_argument("--max-time", type=_positive(float), default=60.0)
    p.add_argument("--radius", type=_nonneg_int, default=8)
    p.add_argument("--json", metavar="OUT", help="write the JSON report here")
    p.add_argument("--seed", type=int, default=0)
    return parser


def _cmd_coset_enum(args):
    pr = _load_presentation(args.presentation)
    gens = _load_subgroup(args.subgroup, pr.alphabet)
    try:
        t = enumerate_cosets(pr, gens, _limits(args))
    except LimitExceeded as exc:
        return EXIT_INCONCLUSIVE, {"limit": exc.kind, "message": str(exc)}
    reps = schreier_transversal(t)
    return EXIT_OK, {
        "index": t.index(),
        "n_defined": t.n_defined,
        "n_coincidences": t.n_coincidences,
        "transversal": [format_word(w, pr.alphabet) for w in reps],
    }


def _cmd_subgroup_presentation(args):
    pr = _load_presentation(args.presentation)
    gens = _load_subgroup(args.subgroup, pr.alphabet)
    try:
        t = enumerate_cosets(pr, gens, _limits(args))
    except LimitExceeded as exc:
        return EXIT_INCONCLUSIVE, {"limit": exc.kind, "message": str(exc)}
    raw = subgroup_presentation(pr, t)
    sp = tietze_simplify(raw, budget=args.simplify_budget)
    out = sp.summary()
    out.update(
        index=t.index(),
        n_raw_generators=raw.ngens,
        n_raw_relators=raw.n_raw_relators,
        generators={n: format_word(w, pr.alphabet) for n, w in zip(sp.presentation.alphabet.names, sp.gen_words)},
        relators=[format_word(r, sp.presentation.alphabet) for r in sp.relators],
    )
    return EXIT_OK, out


def _check_prime(p):
    if not is_prime(p):
        raise UsageError(f"--prime {p} is not a prime")


def _cmd_p_series(args):
    _check_prime(args.prime)
    pr = _load_presentation(args.presentation)
    rep = delta_orders(pr, args.prime, args.depth, _limits(args))
    return (EXIT_INCONCLUSIVE if rep.truncated else EXIT_OK), rep.to_dict()


def _cmd_omega_run(args):
    from .omega import ScheduleError, StepRefused, parse_schedule, run_omega

    _check_prime(args.prime)
    pr = _load_presentation(args.presentation)
    gens = _load_subgroup(args.subgroup, pr.alphabet)
    if any(b not in "01" for b in args.bits):
        raise UsageError("--bits must be a string of 0s and 1s")
    try:
        schedule = parse_schedule(_read(args.schedule), pr.alphabet)
        run = run_omega(pr, gens, args.prime, args.bits, schedule, _limits(args), args.report_depth)
    except ScheduleError as exc:
        raise UsageError(f"schedule: {exc}") from None
    except (StepRefused, LimitExceeded) as exc:
        return EXIT_INCONCLUSIVE, {"reason": str(exc)}
    audit = run.audit()
    return (EXIT_INCONCLUSIVE if run.report.truncated else EXIT_OK), audit


def _cmd_triangle_lab(args):
    from . import triangle as tl

    try:
        spec = tl.TriangleGroupSpec.parse(args.spec)
    except ValueError as exc:
        raise UsageError(f"--spec: {exc}") from None
    out: dict = {"residuals": tl.relation_residuals(spec)}
    try:
        ball = tl.triangle_ball(spec, args.radius, orientation=not args.reflections, dedup_tol=args.tol)
    except tl.BallAmbiguity as exc:
        return EXIT_INCONCLUSIVE, {**out, "ball_error": str(exc)}
    out["ball"] = {
        "radius": ball.radius,
        "n_vertices": ball.n_vertices,
        "generators": [ball.letter_name(a) for a in ball.letters],
        "sphere_sizes": [int((ball.dist == k).sum()) for k in range(ball.radius + 1)],
    }
    out["torsion"] = tl.torsion_profile(ball, args.max_order, tl.IDENTITY_TOL).to_dict()
    if args.slimness_samples:
        out["slimness"] = tl.empirical_slimness(ball, args.slimness_samples, args.seed).to_dict()
    try:
        if args.quasifit:
            out["quasifit"] = tl.quasigeodesic_fit(ball, ball.parse(args.quasifit), args.max_power).to_dict()
        if args.aperiodic:
            scan = tl.aperiodicity_scan(ball, ball.parse(args.aperiodic), args.Lambda, args.t, args.period_cap)
            out["aperiodic"] = scan.to_dict()
    except tl.BallAmbiguity as exc:
        return EXIT_INCONCLUSIVE, {**out, "ball_error": str(exc)}
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.export_ball:
        Path(args.export_ball).write_text(json.dumps([[v, ball.word_text(v), g, w] for v, g, w in ball.edges()]))
        out["ball_export"] = args.export_ball
    code = EXIT_OK
    if "aperiodic" in out and out["aperiodic"]["verdict"] == "undecided":
        code = EXIT_INCONCLUSIVE
    return code, out


def _cmd_wiegold(args):
    from .wiegold import run_pipeline

    rep = run_pipeline(EnumLimits(max_cosets=args.max_cosets, max_time=args.max_time), radius=args.radius)
    print(rep.to_text())
    code = {"pass": EXIT_OK, "fail": EXIT_FAIL, "incomplete": EXIT_INCONCLUSIVE}[rep.verdict]
    return code, rep.to_dict()


HANDLERS = {
    "coset-enum": _cmd_coset_enum,
    "subgroup-presentation": _cmd_subgroup_presentation,
    "p-series": _cmd_p_series,
    "omega-run": _cmd_omega_run,
    "triangle-lab": _cmd_triangle_lab,
    "wiegold-verify": _cmd_wiegold,
}


def _config(args) -> dict:
    return {k: v for k, v in sorted(vars(args).items()) if k != "command"}


def main(argv=None) -> int:
    logging.basicConfig(level=os.environ.get("FPGROUPS_LOG_LEVEL", "WARNING").upper(), stream=sys.stderr)
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        args = build_parser().parse_args(argv)
        start = time.perf_counter()
        code, result = HANDLERS[args.command](args)
    except UsageError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_USAGE
    report = {
        "tool": "fpgroups",
        "version": __version__,
        "command": args.command,
        "config": _config(args),
        "seed": args.seed,
        "wall_clock_s": round(time.perf_counter() - start, 6),
        "status": STATUS[code],
        "exit_code": code,
        "result": result,
    }
    text = json.dumps(report, indent=2, sort_keys=True)
    dest = getattr(args, "out", None) or getattr(args, "json", None)
    if dest:
        Path(dest).write_text(text + "\n", encoding="utf-8")
        log.info("report written to %s", dest)
    elif args.command != "wiegold-verify":
        print(text)
    return code


def _entry(command):
    def run(argv=None) -> int:
        argv = sys.argv[1:] if argv is None else list(argv)
        return main([command, *argv])

    run.__name__ = command.replace("-", "_") + "_main"
    return run


coset_enum_main = _entry("coset-enum")
subgroup_presentation_main = _entry("subgroup-presentation")
p_series_main = _entry("p-series")
omega_run_main = _entry("omega-run")
triangle_lab_main = _entry("triangle-lab")
wiegold_verify_main = _entry("wiegold-verify")


if __name__ == "__main__":
    sys.exit(main())
