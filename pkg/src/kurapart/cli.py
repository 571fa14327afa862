"""Command-line front end.

Subcommands: simulate (trajectory CSV plus sync report), analyze (classify
one partition), search (classify every bipartition), verify (built-in
consistency checks).  Exit codes: 0 success, 1 failed verification, 2 I/O
trouble, 3 invalid input, 4 integration failure.  Data files are written
atomically: content lands in a temp file that is renamed into place, so a
failed run leaves no partial output.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import tempfile
from typing import Sequence

import numpy as np

from . import bipartition_analysis as ban
from . import dynamics as dyn
from . import graph_core as gc
from .errors import (
    BadParameterError,
    KurapartError,
    NoCertificateError,
    NonFiniteStateError,
    StepUnderflowError,
    TooShortError,
)

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_IO = 2
EXIT_INVALID = 3
EXIT_INTEGRATION = 4

RANDOM_INIT_ALGORITHM = "numpy PCG64, uniform [0, 2*pi)"


def _atomic_write(path: str, data: str) -> None:
    target = os.path.abspath(path)
    fd, tmp = tempfile.mkstemp(dir=os.path.dirname(target), prefix=".tmp.", suffix=".part")
    try:
        with os.fdopen(fd, "w") as handle:
            handle.write(data)
        os.replace(tmp, target)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _load_graph(args: argparse.Namespace) -> tuple[gc.Graph, gc.VertexPartition | None]:
    if getattr(args, "graph", None) and getattr(args, "builtin", None):
        raise BadParameterError("pass either --graph or --builtin, not both")
    if getattr(args, "graph", None):
        with open(args.graph, "r") as handle:
            return gc.read_edge_list(handle.read()), None
    if getattr(args, "builtin", None):
        return _builtin(args.builtin)
    raise BadParameterError("a graph is required: --graph FILE or --builtin NAME")


def _builtin(name: str) -> tuple[gc.Graph, gc.VertexPartition | None]:
    if name == "latoro":
        return gc.latoro_profile_graph()
    if name == "kura-eg":
        return gc.right_angle_profile_graph()
    if name == "petersen":
        return gc.petersen_graph(), None
    kind, sep, arg = name.partition(":")
    if not sep:
        raise BadParameterError(f"unknown builtin {name!r}")
    try:
        value = int(arg)
    except ValueError:
        raise BadParameterError(f"builtin {name!r} needs an integer argument") from None
    if kind == "linear":
        return gc.linear_family_graph(value)
    if kind == "star":
        return gc.star_graph(value)
    if kind == "cycle":
        return gc.cycle_graph(value), None
    if kind == "complete":
        return gc.complete_graph(value), None
    if kind == "path":
        return gc.path_graph(value), None
    raise BadParameterError(f"unknown builtin {name!r}")


def _load_partition(
    args: argparse.Namespace, builtin_part: gc.VertexPartition | None
) -> gc.VertexPartition | None:
    if getattr(args, "partition", None):
        with open(args.partition, "r") as handle:
            return gc.partition_from_json(handle.read())
    return builtin_part


def _integrator_config(args: argparse.Namespace) -> dyn.IntegratorConfig:
    return dyn.IntegratorConfig(
        t_end=args.t_end,
        method=args.method,
        dt=args.dt,
        rel_tol=args.rel_tol,
        abs_tol=args.abs_tol,
        record_every=args.record_every,
    )


def _certificate_for(
    g: gc.Graph, part: gc.VertexPartition | None
) -> ban.Condition2Certificate:
    if part is None:
        raise BadParameterError("a 2-block partition is required to derive a certificate")
    result = ban.classify_bipartition(g, part)
    if result.certificate is None:
        raise NoCertificateError(
            f"classification {result.classification.value} carries no certificate"
        )
    return result.certificate


def _initial_state(
    args: argparse.Namespace,
    g: gc.Graph,
    part: gc.VertexPartition | None,
    cert: ban.Condition2Certificate | None,
) -> np.ndarray:
    chosen = [
        args.init_equal is not None,
        args.init_blocks is not None,
        args.init_random,
        args.init_cert,
    ]
    if sum(chosen) != 1:
        raise BadParameterError(
            "pick exactly one of --init-equal, --init-blocks, --init-random, --init-cert"
        )
    if args.init_equal is not None:
        return np.full(g.n, args.init_equal)
    if args.init_blocks is not None:
        if part is None:
            raise BadParameterError("--init-blocks needs a partition")
        try:
            values = [float(x) for x in args.init_blocks.split(",")]
        except ValueError:
            raise BadParameterError(f"bad --init-blocks value {args.init_blocks!r}") from None
        if len(values) != part.k:
            raise BadParameterError(
                f"--init-blocks gave {len(values)} values for {part.k} blocks"
            )
        state = np.empty(g.n)
        for value, block in zip(values, part.blocks):
            for v in block:
                state[v - 1] = value
        return state
    if args.init_random:
        rng = np.random.Generator(np.random.PCG64(args.seed))
        return rng.uniform(0.0, 2.0 * math.pi, size=g.n)
    assert cert is not None
    return ban.certificate_to_solution(cert, c=0.0).start


def _sync_report_json(
    traj: dyn.Trajectory, args: argparse.Namespace, params: dyn.ModelParams
) -> str:
    exact = dyn.exact_sync_partition(traj, tol=args.sync_tol)
    payload: dict = {
        "model": {"alpha": params.alpha, "omega": params.omega, "lambda": params.coupling},
        "exact": {
            "tol": args.sync_tol,
            "blocks": [list(b) for b in exact.blocks],
        },
    }
    try:
        report = dyn.asymptotic_sync_clusters(
            traj,
            tail_fraction=args.tail_fraction,
            tol=args.tail_tol,
            exact_tol=args.sync_tol,
        )
    except TooShortError as exc:
        payload["exact"]["chained_pairs"] = []
        payload["tail"] = None
        payload["tail_skipped"] = str(exc)
        return json.dumps(payload, indent=2, sort_keys=True)
    payload["exact"]["chained_pairs"] = [
        [i, j, d] for i, j, d in report.chained_pairs
    ]
    payload["tail"] = {
        "fraction": report.tail_fraction,
        "tol": report.tail_tol,
        "start": report.tail_start,
        "clusters": [list(b) for b in report.clusters.blocks],
        "max_deviation": list(report.tail_max_deviation),
        "pairs": [[i, j, label, dev] for i, j, label, dev in report.pair_classes],
    }
    return json.dumps(payload, indent=2, sort_keys=True)


def cmd_simulate(args: argparse.Namespace) -> int:
    g, builtin_part = _load_graph(args)
    part = _load_partition(args, builtin_part)
    cert = None
    if args.init_cert or args.alpha_from_cert:
        cert = _certificate_for(g, part)
    if args.alpha is not None:
        alpha = args.alpha
    elif cert is not None:
        alpha = cert.alpha
    else:
        raise BadParameterError("--alpha is required (or --alpha-from-cert)")
    params = dyn.ModelParams(alpha=alpha, omega=args.omega, coupling=args.coupling)
    cfg = _integrator_config(args)
    init = _initial_state(args, g, part, cert)
    traj = dyn.integrate(g, init, params, cfg)
    _atomic_write(args.out, dyn.trajectory_to_csv(traj))
    report_path = args.report or os.path.splitext(args.out)[0] + ".sync.json"
    _atomic_write(report_path, _sync_report_json(traj, args, params) + "\n")
    return EXIT_OK


def cmd_analyze(args: argparse.Namespace) -> int:
    g, builtin_part = _load_graph(args)
    part = _load_partition(args, builtin_part)
    if part is None:
        raise BadParameterError("analyze needs --partition or a builtin with one")
    if part.k == 2:
        result = ban.classify_bipartition(g, part)
        residual = None
        if result.certificate is not None:
            try:
                residual = ban.verify_certificate(g, part, result.certificate)
            except BadParameterError:
                residual = None  # degenerate lag outside the model range
        payload = ban.classification_report(part, result, residual=residual)
    else:
        gamma = gc.is_equitable(g, part)
        payload = {
            "blocks": [list(b) for b in part.blocks],
            "classification": "Equitable" if gamma is not None else "NotEquitable",
            "gamma": [list(row) for row in gamma.gamma] if gamma is not None else None,
        }
    text = json.dumps(payload, indent=2, sort_keys=True)
    if args.report:
        _atomic_write(args.report, text + "\n")
    else:
        print(text)
    return EXIT_OK


def cmd_search(args: argparse.Namespace) -> int:
    g, _ = _load_graph(args)
    jobs = args.jobs if args.jobs is not None else (os.cpu_count() or 1)
    report = ban.search_all_bipartitions(g, force=args.force, jobs=jobs)
    text = ban.format_search_report(report)
    if args.out:
        _atomic_write(args.out, text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _check(label: str, ok: bool, detail: str, failures: list[str]) -> None:
    print(f"{label}: {detail} {'PASS' if ok else 'FAIL'}")
    if not ok:
        failures.append(label)


def _verify_linear(p: int, failures: list[str]) -> None:
    from fractions import Fraction

    g, part = gc.linear_family_graph(p)
    result = ban.classify_bipartition(g, part)
    cert = result.certificate
    ok = (
        result.classification is ban.Classification.CONDITION2_UNIQUE
        and cert is not None
        and cert.mu1 == Fraction(-2, p)
        and cert.mu2 == Fraction(-1)
        and cert.r == Fraction(-2)
    )
    _check(
        f"linear p={p} gains",
        ok,
        f"mu1={cert.mu1 if cert else '?'} mu2={cert.mu2 if cert else '?'} r={cert.r if cert else '?'}",
        failures,
    )
    if cert is None:
        return
    alpha_ref = math.atan(math.sqrt(3 * p * p - 4 * p - 4) / (p - 2))
    offset_ref = math.acos((p + 2) / (2.0 * p))
    _check(
        f"linear p={p} angles",
        abs(cert.alpha - alpha_ref) <= 1e-12 and abs(cert.offset - offset_ref) <= 1e-12,
        f"alpha={cert.alpha:.17g} offset={cert.offset:.17g}",
        failures,
    )
    slope_gap = abs(p * math.sin(cert.beta) - float(cert.r) * math.sin(cert.alpha))
    _check(f"linear p={p} slope identity", slope_gap <= 1e-12, f"gap={slope_gap:.3g}", failures)
    residual = ban.verify_certificate(g, part, cert)
    _check(f"linear p={p} residual", residual <= 1e-9, f"residual={residual:.3g}", failures)


def _verify_latoro(failures: list[str]) -> None:
    from fractions import Fraction

    g, part = gc.latoro_profile_graph()
    result = ban.classify_bipartition(g, part)
    cert = result.certificate
    ok = (
        result.classification is ban.Classification.CONDITION2_UNIQUE
        and cert is not None
        and (cert.mu1, cert.mu2, cert.r) == (Fraction(-1, 2), Fraction(-1), Fraction(-2))
    )
    _check("latoro gains", ok, "mu1=-1/2 mu2=-1 r=-2 expected", failures)
    if cert is None:
        return
    alpha_ref = math.atan(math.sqrt(7.0))
    _check(
        "latoro lag",
        abs(cert.alpha - alpha_ref) <= 1e-12,
        f"alpha={cert.alpha:.17g}",
        failures,
    )
    residual = ban.verify_certificate(g, part, cert)
    _check("latoro residual", residual <= 1e-9, f"residual={residual:.3g}", failures)


def _verify_regular(d: int, alpha: float, failures: list[str]) -> None:
    g = gc.complete_graph(d + 1)
    grid = np.linspace(0.0, 10.0, 101)
    params = dyn.ModelParams(alpha=alpha)
    analytic = dyn.analytic_regular_solution(d, alpha, g.n, grid)
    residual = dyn.residual_max(g, analytic, params)
    _check(f"regular d={d} residual", residual <= 1e-14, f"residual={residual:.3g}", failures)
    cfg = dyn.IntegratorConfig(t_end=10.0)
    traj = dyn.integrate(g, np.zeros(g.n), params, cfg, t_eval=grid)
    gap = float(np.abs(traj.states - analytic.states).max())
    _check(f"regular d={d} integration", gap <= 1e-8, f"max deviation={gap:.3g}", failures)


def _verify_kura_eg(failures: list[str]) -> None:
    from fractions import Fraction

    g, part = gc.right_angle_profile_graph()
    result = ban.classify_bipartition(g, part)
    cert = result.certificate
    ok = (
        result.classification is ban.Classification.BOUNDARY
        and cert is not None
        and (cert.mu1, cert.mu2, cert.r) == (Fraction(1, 2), Fraction(1, 2), Fraction(0))
        and cert.mu_equal
    )
    _check("kura-eg boundary", ok, "mu1=mu2=1/2 r=0 expected", failures)
    if cert is None:
        return
    _check(
        "kura-eg angles",
        abs(cert.alpha - math.pi / 2) <= 1e-12
        and abs(cert.offset - 2 * math.pi / 3) <= 1e-12,
        f"alpha={cert.alpha:.17g} offset={cert.offset:.17g}",
        failures,
    )
    residual = ban.verify_certificate(g, part, cert)
    _check("kura-eg residual", residual <= 1e-9, f"residual={residual:.3g}", failures)


def cmd_verify(args: argparse.Namespace) -> int:
    failures: list[str] = []
    if args.example in ("linear", "all"):
        _verify_linear(args.p, failures)
    if args.example in ("latoro", "all"):
        _verify_latoro(failures)
    if args.example in ("regular", "all"):
        _verify_regular(args.d, args.alpha if args.alpha is not None else 0.5, failures)
    if args.example in ("kura-eg", "all"):
        _verify_kura_eg(failures)
    if failures:
        print(f"verify: FAIL ({len(failures)} check(s))")
        return EXIT_VERIFY_FAILED
    print("verify: PASS")
    return EXIT_OK


def _add_graph_args(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--graph", help="edge list file: 'u v' lines, optional 'n N' header")
    sub.add_argument(
        "--builtin",
        help="named graph: linear:<p>, latoro, kura-eg, star:<n>, cycle:<n>, "
        "complete:<n>, path:<n>, petersen",
    )


def _add_model_args(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--alpha", type=float, help="phase lag in (0, pi/2]")
    sub.add_argument("--omega", type=float, default=0.0, help="common drift (default 0)")
    sub.add_argument(
        "--lambda", dest="coupling", type=float, default=1.0, help="coupling gain (default 1)"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kurapart",
        description="Phase-locked structure analysis for lagged oscillator networks on graphs",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    sim = subs.add_parser("simulate", help="integrate and write trajectory plus sync report")
    _add_graph_args(sim)
    _add_model_args(sim)
    sim.add_argument("--partition", help="partition JSON file")
    sim.add_argument("--method", choices=("rk4", "rk45"), default="rk45")
    sim.add_argument("--dt", type=float, help="fixed step (rk4 only)")
    sim.add_argument("--rel-tol", type=float, default=1e-9)
    sim.add_argument("--abs-tol", type=float, default=1e-11)
    sim.add_argument("--t-end", type=float, default=10.0)
    sim.add_argument("--record-every", type=int, default=1)
    sim.add_argument("--init-equal", type=float, help="all phases start at this value")
    sim.add_argument("--init-blocks", help="comma-separated value per partition block")
    sim.add_argument("--init-random", action="store_true", help=RANDOM_INIT_ALGORITHM)
    sim.add_argument("--seed", type=int, default=0)
    sim.add_argument(
        "--init-cert", action="store_true", help="start on the certified closed form"
    )
    sim.add_argument(
        "--alpha-from-cert",
        action="store_true",
        help="take the lag from the partition's certificate",
    )
    sim.add_argument("--sync-tol", type=float, default=1e-6)
    sim.add_argument("--tail-fraction", type=float, default=0.2)
    sim.add_argument("--tail-tol", type=float, default=1e-4)
    sim.add_argument("--out", required=True, help="trajectory CSV path")
    sim.add_argument("--report", help="sync report path (default: <out>.sync.json)")
    sim.set_defaults(func=cmd_simulate)

    ana = subs.add_parser("analyze", help="classify one partition")
    _add_graph_args(ana)
    ana.add_argument("--partition", help="partition JSON file")
    ana.add_argument("--report", help="write JSON here instead of stdout")
    ana.set_defaults(func=cmd_analyze)

    sea = subs.add_parser("search", help="classify every bipartition")
    _add_graph_args(sea)
    sea.add_argument("--jobs", type=int, help="worker processes (default: cpu count)")
    sea.add_argument("--force", action="store_true", help="ignore the size cap")
    sea.add_argument("--out", help="write the text report here instead of stdout")
    sea.set_defaults(func=cmd_search)

    ver = subs.add_parser("verify", help="self-checks on the named constructions")
    ver.add_argument(
        "--example",
        choices=("linear", "latoro", "regular", "kura-eg", "all"),
        default="all",
    )
    ver.add_argument("--p", type=int, default=4, help="linear family size (even, >= 4)")
    ver.add_argument("--d", type=int, default=3, help="regular degree")
    ver.add_argument("--alpha", type=float, help="lag for the regular check (default 0.5)")
    ver.set_defaults(func=cmd_verify)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (StepUnderflowError, NonFiniteStateError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INTEGRATION
    except KurapartError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
