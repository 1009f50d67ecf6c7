"""Batch command line front end.

    tspullback --input series.csv --dim 7 --tau 3 --type 1 --out results/

writes ``components.csv`` (one column per component sequence),
``report.json`` (parameters, energies, residual, diagnostics, warnings) and,
with ``--tau-table``, ``tau_table.csv``.

Exit status: 0 on success, 2 on invalid arguments (including ``m < 1``),
1 on I/O, parse or numerical failure. Every failure prints one line starting
with ``error:``.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import warnings
from dataclasses import dataclass
from datetime import datetime, timezone
from enum import Enum
from pathlib import Path

import numpy as np

from . import __version__
from ._backend import BACKEND
from .decompose import Decomposer, DecomposerSpec
from .embedding import TimeSequence, m_of, size_table, tau_max
from .pipeline import DecompositionReport, PipelineConfig, TauWarning, run, tau_diagnostics
from .pullback import Estimator

__all__ = ["InputFormat", "InputFile", "InputError", "read_series", "write_bundle",
           "write_tau_table", "main"]

COMPONENTS_FILE = "components.csv"
REPORT_FILE = "report.json"
TAU_TABLE_FILE = "tau_table.csv"


class InputError(ValueError):
    """Malformed input series."""


class InputFormat(str, Enum):
    SINGLE = "csv_single_column"
    TWO_COLUMN = "csv_two_column_time_value"


@dataclass(frozen=True)
class InputFile:
    path: Path
    declared_s: int = 0
    format: InputFormat | None = None  # None: detect from the first data row


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def _parse_float(text: str, lineno: int, path) -> float:
    try:
        value = float(text)
    except ValueError:
        raise InputError(f"{path}:{lineno}: cannot parse {text.strip()!r} as a number") from None
    if not math.isfinite(value):
        raise InputError(f"{path}:{lineno}: non-finite value {text.strip()!r}")
    return value


def _is_numeric_row(fields: list[str]) -> bool:
    try:
        [float(f) for f in fields]
    except ValueError:
        return False
    return True


def read_series(f: InputFile | str | Path, s: int = 0) -> TimeSequence:
    """Read a single-column or (time, value) CSV into a :class:`TimeSequence`.

    A first line that does not parse as numbers is taken as a header. In the
    two-column form the time column must be strictly increasing and is then
    dropped.
    """
    if not isinstance(f, InputFile):
        f = InputFile(Path(f), s)
    path = f.path
    with open(path, encoding="utf-8") as fh:
        lines = fh.read().splitlines()

    fmt = f.format
    values, times = [], []
    first = True
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line:
            continue
        fields = [p.strip() for p in line.split(",")]
        if first:
            first = False
            if not _is_numeric_row(fields):
                continue  # header
        if fmt is None:
            if len(fields) == 1:
                fmt = InputFormat.SINGLE
            elif len(fields) == 2:
                fmt = InputFormat.TWO_COLUMN
            else:
                raise InputError(f"{path}:{lineno}: expected 1 or 2 columns, got {len(fields)}")
        width = 1 if fmt is InputFormat.SINGLE else 2
        if len(fields) != width:
            raise InputError(f"{path}:{lineno}: expected {width} column(s), got {len(fields)}")
        if width == 2:
            t = _parse_float(fields[0], lineno, path)
            if times and t <= times[-1]:
                raise InputError(f"{path}:{lineno}: time column is not strictly increasing")
            times.append(t)
        values.append(_parse_float(fields[-1], lineno, path))

    if len(values) < 2:
        raise InputError(f"{path}: need at least 2 samples, found {len(values)}")
    return TimeSequence(np.array(values), f.declared_s)


def write_tau_table(path: Path, N: int, d: int, s: int, probe: int, taus) -> Path:
    size_rows = size_table(N, d, taus)
    q_rows = tau_diagnostics(N, d, s, probe, taus)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("tau,m,dxm,m_ge_d,q_count\n")
        for sr, qr in zip(size_rows, q_rows):
            q = "" if qr.q_count is None else str(qr.q_count)
            fh.write(f"{sr.tau},{sr.m},{sr.dxm},{str(sr.m_ge_d).lower()},{q}\n")
    return path


def _report_dict(report: DecompositionReport, input_path, timestamp: bool) -> dict:
    cfg = report.config
    out = {"tool": "tspullback", "version": __version__}
    if timestamp:
        out["created"] = datetime.now(timezone.utc).isoformat(timespec="seconds")
    out["input"] = None if input_path is None else str(input_path)
    out["parameters"] = {
        "N": report.N,
        "d": cfg.d,
        "tau": cfg.tau,
        "m": report.diagnostics.m,
        "type": cfg.s,
        "decomposer": cfg.decomposer.kind.value,
        "max_components": cfg.decomposer.max_components,
        "estimator": cfg.estimator.value,
        "denoise": cfg.denoise_threshold,
    }
    out["r"] = report.r
    out["r_hat"] = report.r_hat
    out["energies"] = [float(e) for e in report.energies]
    out["total_energy"] = report.total_energy
    out["residual"] = report.residual
    out["diagnostics"] = {
        "m": report.diagnostics.m,
        "tau_max": report.diagnostics.tau_max,
        "m_ge_d": report.diagnostics.m >= cfg.d,
        "q_count_profile": [int(c) for c in report.diagnostics.q_count_profile],
    }
    out["warnings"] = list(report.warnings)
    return out


def write_bundle(report: DecompositionReport, out_dir, *, input_path=None, timestamp: bool = True,
                 tau_table: tuple[int, list[int]] | None = None) -> dict[str, Path]:
    """Write the component CSV, the JSON report and optionally the delay table.

    `tau_table` is ``(probe_index, taus)``. Floats in the CSV files carry 17
    significant digits so they read back bit-exact.
    """
    out_dir = Path(out_dir)
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
        paths = {"components": out_dir / COMPONENTS_FILE, "report": out_dir / REPORT_FILE}
        comps = report.component_matrix()
        with open(paths["components"], "w", encoding="utf-8", newline="\n") as fh:
            fh.write(",".join(["n"] + [f"c{k + 1}" for k in range(comps.shape[0])]) + "\n")
            if comps.shape[0]:
                for i, n in enumerate(range(report.s, report.N + report.s)):
                    fh.write(",".join([str(n)] + [_fmt(v) for v in comps[:, i]]) + "\n")
        with open(paths["report"], "w", encoding="utf-8", newline="\n") as fh:
            json.dump(_report_dict(report, input_path, timestamp), fh, indent=2)
            fh.write("\n")
        if tau_table is not None:
            probe, taus = tau_table
            paths["tau_table"] = write_tau_table(out_dir / TAU_TABLE_FILE, report.N,
                                                 report.config.d, report.s, probe, taus)
    except OSError as exc:
        raise OSError(f"cannot write output bundle to {out_dir}: {exc}") from exc
    return paths


def read_components(path) -> np.ndarray:
    """Read ``components.csv`` back as an ``(r_hat, N)`` array."""
    with open(path, encoding="utf-8") as fh:
        header = fh.readline().strip().split(",")
        r = len(header) - 1
        rows = [line.strip().split(",")[1:] for line in fh if line.strip()]
    if not rows:
        return np.empty((r, 0))
    return np.array(rows, dtype=np.float64).T


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        print(f"error: {message}", file=sys.stderr)
        sys.exit(2)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="tspullback", description="Trajectory-matrix mode decomposition of a time series.")
    p.add_argument("--input", required=True, type=Path, help="CSV file, one value per line or time,value")
    p.add_argument("--dim", required=True, type=int, help="embedding dimension d (>= 2)")
    p.add_argument("--tau", type=int, default=1, help="time delay (default 1)")
    p.add_argument("--type", type=int, choices=(0, 1), default=0, dest="s",
                   help="index type: 0 for x[0..N-1], 1 for x[1..N] (default 0)")
    p.add_argument("--decomposer", choices=[k.value for k in Decomposer],
                   default="svd")
    p.add_argument("--estimator", choices=[e.value for e in Estimator], default="mean")
    p.add_argument("--denoise", type=float, default=None, metavar="FRACTION",
                   help="keep components up to this cumulative energy fraction")
    p.add_argument("--out", type=Path, default=Path("."), help="output directory (default .)")
    p.add_argument("--tau-table", action="store_true", help="also write tau_table.csv")
    p.add_argument("--probe-index", type=int, default=None,
                   help="sample index for the tau table (default: middle of the series)")
    p.add_argument("--no-timestamp", action="store_true", help="omit the creation time from the report")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__} ({BACKEND} kernels)")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)

    if args.dim < 2:
        return _fail(f"--dim must be >= 2, got {args.dim}", 2)
    if args.tau < 1:
        return _fail(f"--tau must be >= 1, got {args.tau}", 2)
    if args.denoise is not None and not 0.0 <= args.denoise <= 1.0:
        return _fail(f"--denoise must lie in [0, 1], got {args.denoise}", 2)

    try:
        x = read_series(InputFile(args.input, args.s))
    except (OSError, InputError) as exc:
        return _fail(str(exc), 1)

    m = m_of(x.N, args.dim, args.tau)
    if m < 1:
        return _fail(f"m = N-(d-1)tau < 1 (N={x.N}, d={args.dim}, tau={args.tau}, m={m})", 2)
    if m < args.tau:
        return _fail(f"m < tau leaves samples outside the trajectory matrix "
                     f"(N={x.N}, d={args.dim}, tau={args.tau}, m={m})", 2)

    probe = args.probe_index
    if probe is None:
        probe = x.s + (x.N - 1) // 2
    elif not x.s <= probe <= x.N - 1 + x.s:
        return _fail(f"--probe-index {probe} outside [{x.s}, {x.N - 1 + x.s}]", 2)

    cfg = PipelineConfig(
        d=args.dim,
        tau=args.tau,
        s=args.s,
        decomposer=DecomposerSpec(args.decomposer),
        estimator=Estimator(args.estimator),
        denoise_threshold=args.denoise,
    )
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", TauWarning)
            report = run(x, cfg)
    except np.linalg.LinAlgError as exc:
        return _fail(f"numerical failure: {exc}", 1)
    for msg in report.warnings:
        print(f"warning: {msg}", file=sys.stderr)

    table = None
    if args.tau_table:
        upper = args.tau
        if x.N > args.dim:
            upper = max(upper, tau_max(x.N, args.dim) + 1)
        table = (probe, list(range(1, upper + 1)))
    try:
        write_bundle(report, args.out, input_path=args.input, timestamp=not args.no_timestamp,
                     tau_table=table)
    except OSError as exc:
        return _fail(str(exc), 1)
    return 0


def _fail(message: str, code: int) -> int:
    print(f"error: {message}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
