"""Command-line front end.

Subcommands: ``classify`` a single channel, ``scan`` the subclass simplex,
``contours`` for iso-correlation lines and the coexistence band, ``gaussian``
for the random-rotation plane, ``verify`` for the numeric check suite.

Exit codes: 0 success, 1 verification failure, 2 validation error, 3 I/O
error.  Artifacts go to ``--out`` (stdout when omitted); the one-line run
summary goes to stderr so artifacts stay clean on stdout.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

from .analytic import (
    InputState,
    PhaseLabel,
    classify_subclass,
    holevo_covariant,
    optimize_symmetric,
    symmetric_entropy,
)
from .channel import (
    Channel,
    subclass_params_from_matrix,
    symmetric_params_from_matrix,
)
from .errors import ValidationError
from .gaussian import GaussianModelParams, classify_gaussian, reduce_to_subclass
from .oracle import report_passed, run_verification_suite
from .phasediag import (
    ScanGrid,
    boundaries_to_json_obj,
    coexistence_band,
    contours_to_json_obj,
    correlation_contours,
    extract_boundaries,
    points_to_rows,
    scan_gaussian,
    scan_subclass,
)
from .serialize import channel_from_doc, parse_channel_doc

__all__ = ["main"]

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_VALIDATION = 2
EXIT_IO = 3

_PRESETS = {
    "fig1": {"command": "scan", "grid": (512, 512), "format": "csv"},
    "fig2": {"command": "contours", "grid": (512, 512), "levels": (0.43, 0.5),
             "format": "json"},
    "fig3": {"command": "gaussian", "grid": (512, 512), "format": "csv"},
}

_WITNESS_TOL = 1e-9


def _parse_grid(text: str) -> tuple[int, int]:
    try:
        nx, _, ny = text.partition("x")
        return int(nx), int(ny if ny else nx)
    except ValueError:
        raise ValidationError(f"grid must be 'NxM' or 'N', got {text!r}") from None


def _parse_levels(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(v) for v in text.split(","))
    except ValueError:
        raise ValidationError(f"levels must be comma-separated floats, got {text!r}") from None


def _load_channel_doc(spec: str) -> dict:
    """Accept an inline JSON object or a path to a JSON file."""
    text = spec
    if not spec.lstrip().startswith("{"):
        if not os.path.exists(spec):
            raise ValidationError(
                f"channel spec {spec!r} is neither inline JSON nor an existing file"
            )
        with open(spec, encoding="utf-8") as fh:
            text = fh.read()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"malformed channel JSON: {exc}") from exc
    return doc


def _emit(text: str, out_path: str | None) -> None:
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _summary(msg: str) -> None:
    print(msg, file=sys.stderr)


def _threads(args) -> int | None:
    if args.threads is not None:
        return args.threads
    env = os.environ.get("QMEM_THREADS", "")
    return int(env) if env else None


def _classify_result(doc: dict):
    """(phase value, theta, phi, entropy_bits, correlation) for a channel doc."""
    family, params = parse_channel_doc(doc)
    if family == "gaussian":
        gp = GaussianModelParams(p1=params.get("p1", -1.0),
                                 sigma=params.get("sigma", -1.0),
                                 theta0=params.get("theta0", 0.0))
        res = classify_gaussian(gp)
        channel = Channel.from_subclass(reduce_to_subclass(gp))
        return (res.label.value, res.state.theta, res.state.phi,
                res.entropy_bits, channel.correlation_measure())

    channel = channel_from_doc(doc)
    sub = subclass_params_from_matrix(channel.probs)
    if sub is not None:
        res = classify_subclass(sub)
        return (res.label.value, res.state.theta, res.state.phi,
                res.entropy_bits, channel.correlation_measure())

    sym = symmetric_params_from_matrix(channel.probs)  # raises ValidationError otherwise
    state, entropy = optimize_symmetric(sym)
    label = "other"
    for cand_label, cand_state in (
        (PhaseLabel.PRODUCT, InputState(0.0, 0.0)),
        (PhaseLabel.ENT_PHI0, InputState(math.pi / 4, 0.0)),
        (PhaseLabel.ENT_PHIHALF, InputState(math.pi / 4, math.pi / 2)),
    ):
        if abs(symmetric_entropy(sym, cand_state) - entropy) <= _WITNESS_TOL:
            label = cand_label.value
            state = cand_state
            break
    return (label, state.theta, state.phi, entropy, channel.correlation_measure())


def cmd_classify(args) -> int:
    doc = _load_channel_doc(args.channel)
    phase, theta, phi, entropy, corr = _classify_result(doc)
    result = {
        "phase": phase,
        "theta": theta,
        "phi": phi,
        "entropy_bits": entropy,
        "holevo_bits": holevo_covariant(entropy),
        "correlation": corr,
    }
    _emit(json.dumps(result, indent=2) + "\n", args.out)
    _summary(f"classified: phase={phase} holevo_bits={result['holevo_bits']:.6g}")
    return EXIT_OK


def _points_json(points):
    fields = ("x", "y", "p", "q", "r", "phase", "entropy_bits",
              "holevo_bits", "correlation")
    return [
        {f: (getattr(pt, f).value if f == "phase" else getattr(pt, f)) for f in fields}
        for pt in points
    ]


def _emit_scan(points, args) -> None:
    if args.format == "csv":
        _emit("\n".join(points_to_rows(points)) + "\n", args.out)
    else:
        obj = {"points": _points_json(points),
               "boundaries": boundaries_to_json_obj(extract_boundaries(points))}
        _emit(json.dumps(obj) + "\n", args.out)


def cmd_scan(args) -> int:
    nx, ny = args.grid
    points = scan_subclass(ScanGrid.subclass(nx, ny), threads=_threads(args))
    _emit_scan(points, args)
    _summary(f"scan: {len(points)} points on a {nx}x{ny} subclass grid")
    return EXIT_OK


def cmd_gaussian(args) -> int:
    nx, ny = args.grid
    points = scan_gaussian(ScanGrid.gaussian(nx, ny), threads=_threads(args))
    _emit_scan(points, args)
    _summary(f"gaussian scan: {len(points)} points on a {nx}x{ny} grid")
    return EXIT_OK


def cmd_contours(args) -> int:
    nx, ny = args.grid
    points = scan_subclass(ScanGrid.subclass(nx, ny), threads=_threads(args))
    contours = correlation_contours(points, args.levels)
    _emit(json.dumps(contours_to_json_obj(contours)) + "\n", args.out)
    band = coexistence_band(points, n_bins=max(100, nx))
    if band is None:
        _summary(f"contours: {len(points)} points, levels {list(args.levels)}, no coexistence band")
    else:
        _summary(
            f"contours: {len(points)} points, levels {list(args.levels)}, "
            f"coexistence band [{band.c_low:.4f}, {band.c_high:.4f}]"
        )
    return EXIT_OK


def cmd_verify(args) -> int:
    report = run_verification_suite(seed=args.seed)
    _emit(json.dumps(report, indent=2) + "\n", args.out)
    ok = report_passed(report)
    n_pass = sum(1 for c in report["checks"] if c["pass"])
    _summary(f"verify: {n_pass}/{len(report['checks'])} checks passed")
    return EXIT_OK if ok else EXIT_VERIFY


_COMMANDS = {
    "classify": cmd_classify,
    "scan": cmd_scan,
    "contours": cmd_contours,
    "gaussian": cmd_gaussian,
    "verify": cmd_verify,
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qmem",
        description="Correlated two-qubit Pauli channels: classification, "
                    "phase-diagram sweeps, and verification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("classify", "classify the optimal input of a single channel"),
        ("scan", "sweep the subclass (q, r) simplex"),
        ("contours", "iso-correlation contours and coexistence band"),
        ("gaussian", "sweep the random-rotation (p1, sigma) plane"),
        ("verify", "run the numeric verification suite"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--channel", help="channel JSON document (inline or file path)")
        p.add_argument("--grid", default=None, help="grid resolution NxM (default 128x128)")
        p.add_argument("--levels", default=None, help="comma-separated contour levels")
        p.add_argument("--out", default=None, help="output artifact path (default stdout)")
        p.add_argument("--format", default=None, choices=("csv", "json"))
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--threads", type=int, default=None,
                       help="scan parallelism (env QMEM_THREADS as fallback)")
        p.add_argument("--preset", default=None, choices=("fig1", "fig2", "fig3"))
    return parser


def _resolve_config(args) -> None:
    """Merge preset defaults under explicit flags and apply final defaults."""
    preset = _PRESETS.get(args.preset) if args.preset else None
    if preset:
        if preset["command"] != args.command:
            raise ValidationError(
                f"preset {args.preset!r} belongs to the {preset['command']!r} command"
            )
        if args.grid is None:
            args.grid = preset["grid"]
        if args.format is None:
            args.format = preset["format"]
        if args.levels is None and "levels" in preset:
            args.levels = preset["levels"]
    if isinstance(args.grid, str):
        args.grid = _parse_grid(args.grid)
    if args.grid is None:
        args.grid = (128, 128)
    if isinstance(args.levels, str):
        args.levels = _parse_levels(args.levels)
    if args.command == "contours" and args.levels is None:
        raise ValidationError("contours requires --levels (or --preset fig2)")
    if args.command == "classify" and not args.channel:
        raise ValidationError("classify requires --channel")
    if args.format is None:
        args.format = "csv" if args.command in ("scan", "gaussian") else "json"


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        _resolve_config(args)
        return _COMMANDS[args.command](args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
