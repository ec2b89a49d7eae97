"""Command-line front end.

Subcommands::

    wavelab riemann  --left TAU U P --right TAU U P
    wavelab interact --kind IIIa --left 2 --right 2
    wavelab atlas    --panel groupIII --out curves/
    wavelab verify

Exit status is 0 on success, 1 when a verification property fails and 2 on
invalid input.  JSON documents have the top-level keys ``gamma``, ``input``,
``result`` and ``residuals``; floats carry 17 significant digits so that
parsing reproduces the binary values exactly.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import atlas, interactions, riemann, verification
from .gas import GasConstants, PrimitiveState, derive_constants
from .interactions import IncomingPair, InteractionKind
from .kernels import DomainError
from .waves import WaveFamily, apply_wave_primitive

__all__ = ["main", "build_parser", "RunConfig", "dumps_json", "parse_grid",
           "riemann_record", "interaction_record", "atlas_records", "verify_record"]

EXIT_OK = 0
EXIT_PROPERTY_FAILURE = 1
EXIT_INPUT_ERROR = 2


class InputError(ValueError):
    """Invalid command-line input; reported with exit status 2."""


@dataclass(frozen=True)
class RunConfig:
    """Settings shared by all subcommands."""

    gamma: float | None
    tol: float = 1e-12
    grid_n: int | None = None
    grid_xmax: float | None = None
    seed: int = 0
    output_format: str = "json"
    out: Path | None = None

    def gas(self) -> GasConstants:
        return derive_constants(1.4 if self.gamma is None else self.gamma)


# --- serialization -------------------------------------------------------------

def _float(x: float) -> str:
    if not math.isfinite(x):
        return "null"
    text = format(x, ".17g")
    # Keep a marker of floatness so that 1.0 does not come back as int 1.
    if all(ch not in text for ch in ".eE"):
        text += ".0"
    return text


def _encode(obj, indent: int, level: int) -> str:
    pad = "\n" + " " * (indent * (level + 1))
    end = "\n" + " " * (indent * level)
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return _float(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{json.dumps(str(k))}: {_encode(v, indent, level + 1)}" for k, v in obj.items()]
        return "{" + pad + ("," + pad).join(items) + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in obj):
            return "[" + ", ".join(_encode(v, indent, level + 1) for v in obj) + "]"
        return "[" + pad + ("," + pad).join(_encode(v, indent, level + 1) for v in obj) + end + "]"
    if hasattr(obj, "item"):  # numpy scalar
        return _encode(obj.item(), indent, level)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps_json(obj, indent: int = 2) -> str:
    """Serialize records deterministically with 17-significant-digit floats."""
    return _encode(obj, indent, 0) + "\n"


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_float(v) if isinstance(v, float) else v for v in row])
    return buf.getvalue()


def _flatten(prefix: str, obj, out: list) -> None:
    if isinstance(obj, dict):
        for k, v in obj.items():
            _flatten(f"{prefix}.{k}" if prefix else str(k), v, out)
    elif isinstance(obj, (list, tuple)):
        for i, v in enumerate(obj):
            _flatten(f"{prefix}[{i}]", v, out)
    else:
        out.append((prefix, "" if obj is None else obj))


# --- records ---------------------------------------------------------------------

def _state(s: PrimitiveState | None):
    return None if s is None else {"tau": s.tau, "u": s.u, "p": s.p}


def _recomposition_error(left, right, sol, gas) -> float:
    """Relative mismatch after applying the three computed waves to ``left``."""
    state = apply_wave_primitive(WaveFamily.BACKWARD, sol.B, left, gas)
    state = apply_wave_primitive(WaveFamily.CONTACT, sol.C, state, gas)
    state = apply_wave_primitive(WaveFamily.FORWARD, sol.F, state, gas)
    scale = math.sqrt(right.tau * right.p)
    return max(abs(state.tau - right.tau) / right.tau, abs(state.p - right.p) / right.p,
               abs(state.u - right.u) / scale)


def riemann_record(left: PrimitiveState, right: PrimitiveState, gas: GasConstants, tol: float) -> dict:
    sol = riemann.solve(left, right, gas, tol=tol)
    residuals = {k: float(v) for k, v in sol.residuals.items()}
    if not sol.vacuum:
        residuals["recomposition"] = _recomposition_error(left, right, sol, gas)
    return {
        "gamma": gas.gamma,
        "input": {"left": _state(left), "right": _state(right), "tol": tol},
        "result": {
            "vacuum": sol.vacuum,
            "B": sol.B,
            "C": sol.C,
            "F": sol.F,
            "wave_types": [t.value for t in sol.wave_types],
            "left_middle": _state(sol.left_middle),
            "right_middle": _state(sol.right_middle),
            "fan": None if sol.fan is None else list(sol.fan),
            "entropy_jump": sol.entropy_jump.value,
        },
        "residuals": residuals,
    }


def interaction_record(kind: InteractionKind, s_left: float, s_right: float,
                       gas: GasConstants, tol: float) -> dict:
    pair = IncomingPair(kind, s_left, s_right)
    out = interactions.solve_interaction(pair, gas, tol=tol)
    return {
        "gamma": gas.gamma,
        "input": {"kind": kind.value, "left": s_left, "right": s_right, "tol": tol},
        "result": {
            "vacuum": out.vacuum,
            "B": out.B,
            "C": out.C,
            "F": out.F,
            "wave_types": [t.value for t in out.types],
            "entropy_jump": out.entropy_jump.value,
            "clauses": out.clauses,
        },
        "residuals": {k: float(v) for k, v in out.residuals.items()},
    }


def atlas_records(gas: GasConstants, panel: str, grid: atlas.GridSpec) -> list[dict]:
    samples = atlas.sample_atlas(gas, panel, grid)
    records = []
    for s in samples:
        records.append({
            "curve_id": s.curve_id.value,
            "x": [float(v) for v in s.x],
            "y": [float(v) for v in s.y],
            "residual": [float(v) for v in s.residual],
            "metadata": _plain(s.metadata),
        })
    return records


def _plain(obj):
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if hasattr(obj, "item"):
        return obj.item()
    return obj


def verify_record(results: list, config: dict) -> dict:
    return {
        "gamma": sorted({r.gamma for r in results}),
        "input": config,
        "result": {
            "passed": all(r.passed for r in results),
            "checks": [r.to_dict() for r in results],
        },
        "residuals": {f"{r.name}@{r.gamma:.6g}": r.max_residual for r in results},
    }


# --- argument handling -------------------------------------------------------------

def parse_grid(text: str) -> tuple[int, float | None]:
    """Parse ``N`` or ``N:XMAX`` (point count, optional upper x bound)."""
    head, _, tail = text.partition(":")
    try:
        n = int(head)
        x_max = float(tail) if tail else None
    except ValueError:
        raise InputError(f"malformed grid {text!r}; expected N or N:XMAX") from None
    if n < 1:
        raise InputError("grid counts must be at least 1")
    if x_max is not None and not (math.isfinite(x_max) and x_max > 2.0):
        raise InputError("grid XMAX must be finite and larger than 2")
    return n, x_max


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit with status 2 as well
        raise InputError(message)


def _gamma_value(text: str) -> float:
    """Parse ``--gamma`` given as a decimal or a fraction such as ``5/3``."""
    try:
        return float(Fraction(text.strip()))
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"invalid gamma value: {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--gamma", type=_gamma_value, default=None,
                        help="adiabatic exponent (default 1.4; verify runs the test set)")
    common.add_argument("--tol", type=float, default=1e-12, help="solver tolerance")
    common.add_argument("--grid", default=None, help="points per curve / pairs per kind: N or N:XMAX")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized grids")
    common.add_argument("--format", dest="output_format", choices=("json", "csv"), default="json")
    common.add_argument("--out", type=Path, default=None, help="directory for output files")

    parser = _Parser(prog="wavelab", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("riemann", parents=[common], help="solve one Riemann problem")
    p.add_argument("--left", nargs=3, type=float, required=True, metavar=("TAU", "U", "P"))
    p.add_argument("--right", nargs=3, type=float, required=True, metavar=("TAU", "U", "P"))

    p = sub.add_parser("interact", parents=[common], help="solve one wave interaction")
    p.add_argument("--kind", required=True, help="Ia, Ib, Ic, IIa, IIb, IIc, IId, IIIa, IIIb or IIIc")
    p.add_argument("--left", type=float, required=True, help="strength of the left incoming wave")
    p.add_argument("--right", type=float, required=True, help="strength of the right incoming wave")

    p = sub.add_parser("atlas", parents=[common], help="sample the transition curves of a panel")
    p.add_argument("--panel", required=True, help="groupI, groupII or groupIII")

    sub.add_parser("verify", parents=[common], help="run the property suites")
    return parser


def _config(ns) -> RunConfig:
    if ns.gamma is not None and not (math.isfinite(ns.gamma) and ns.gamma > 1.0):
        raise InputError("gamma must be a finite number larger than 1")
    if not (math.isfinite(ns.tol) and ns.tol > 0.0):
        raise InputError("tol must be positive")
    n, x_max = parse_grid(ns.grid) if ns.grid is not None else (None, None)
    return RunConfig(ns.gamma, ns.tol, n, x_max, ns.seed, ns.output_format, ns.out)


def _emit(config: RunConfig, name: str, text: str, stdout) -> None:
    if config.out is None:
        stdout.write(text)
        return
    config.out.mkdir(parents=True, exist_ok=True)
    (config.out / name).write_text(text)


def _run(ns, stdout) -> int:
    config = _config(ns)
    gas = config.gas()
    fmt = config.output_format
    if ns.command == "riemann":
        try:
            left, right = PrimitiveState(*ns.left), PrimitiveState(*ns.right)
        except (ValueError, TypeError) as exc:
            raise InputError(f"malformed state: {exc}") from None
        record = riemann_record(left, right, gas, config.tol)
        _emit_record(config, "riemann", record, stdout)
        return EXIT_OK
    if ns.command == "interact":
        try:
            kind = InteractionKind.parse(ns.kind)
            record = interaction_record(kind, ns.left, ns.right, gas, config.tol)
        except (ValueError, DomainError) as exc:
            raise InputError(str(exc)) from None
        _emit_record(config, "interact", record, stdout)
        return EXIT_OK
    if ns.command == "atlas":
        try:
            panel = atlas.Panel.parse(ns.panel)
        except ValueError as exc:
            raise InputError(str(exc)) from None
        defaults = atlas.GridSpec()
        grid = atlas.GridSpec(n=max(config.grid_n or defaults.n, 2),
                              x_max=config.grid_xmax or defaults.x_max)
        records = atlas_records(gas, panel.value, grid)
        if fmt == "json":
            doc = {"gamma": gas.gamma,
                   "input": {"panel": panel.value, "grid": {"n": grid.n, "x_max": grid.x_max}},
                   "result": records,
                   "residuals": {r["curve_id"]: max(r["residual"], default=0.0) for r in records}}
            if config.out is None:
                stdout.write(dumps_json(doc))
            else:
                for r in records:
                    single = dict(doc, result=r, residuals={r["curve_id"]: doc["residuals"][r["curve_id"]]})
                    _emit(config, f"{r['curve_id']}.json", dumps_json(single), stdout)
        else:
            header = ("x", "y", "curve_id", "residual")
            if config.out is None:
                rows = [(x, y, r["curve_id"], e) for r in records
                        for x, y, e in zip(r["x"], r["y"], r["residual"])]
                stdout.write(_csv_text(header, rows))
            else:
                for r in records:
                    rows = [(x, y, r["curve_id"], e) for x, y, e in zip(r["x"], r["y"], r["residual"])]
                    _emit(config, f"{r['curve_id']}.csv", _csv_text(header, rows), stdout)
        return EXIT_OK
    # verify
    gammas = verification.TEST_GAMMAS if config.gamma is None else (config.gamma,)
    n = config.grid_n or 2000
    results = verification.run_suite(gammas, n=n, seed=config.seed, tol=config.tol)
    record = verify_record(results, {"n": n, "seed": config.seed, "tol": config.tol})
    if fmt == "json":
        _emit(config, "verify.json", dumps_json(record), stdout)
    else:
        header = ("name", "gamma", "passed", "count", "failures", "max_residual")
        rows = [(r.name, float(r.gamma), str(r.passed).lower(), r.count, r.failures, r.max_residual)
                for r in results]
        _emit(config, "verify.csv", _csv_text(header, rows), stdout)
    for r in results:
        if not r.passed:
            print(r.line(), file=sys.stderr)
    return EXIT_OK if record["result"]["passed"] else EXIT_PROPERTY_FAILURE


def _emit_record(config: RunConfig, name: str, record: dict, stdout) -> None:
    if config.output_format == "json":
        _emit(config, f"{name}.json", dumps_json(record), stdout)
    else:
        rows: list = []
        _flatten("", record, rows)
        _emit(config, f"{name}.csv", _csv_text(("key", "value"), rows), stdout)


def main(argv=None, stdout=None) -> int:
    """Entry point; returns the exit status."""
    stdout = stdout or sys.stdout
    try:
        ns = build_parser().parse_args(argv)
        return _run(ns, stdout)
    except InputError as exc:
        print(f"wavelab: error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except (DomainError, ValueError) as exc:
        print(f"wavelab: error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR


def console_main() -> None:  # pragma: no cover - thin wrapper for the console script
    sys.exit(main())
