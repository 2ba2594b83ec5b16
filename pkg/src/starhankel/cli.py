"""Command-line front end: verification suites, certification, sharpness search."""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import time
from dataclasses import asdict, dataclass, fields
from fractions import Fraction
from typing import Any

import numpy as np

from . import __version__, suites
from .functionals import FUNCTIONAL_IDS
from .genclass import (
    DomainError,
    HerglotzMeasure,
    SchurPoint,
    extremal,
    function_from_p,
    function_from_schur,
    herglotz_series,
)

COMMANDS = ("verify-identities", "verify-bounds", "certify", "search", "eval", "report")
FORMATS = ("json", "csv")

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    seed: int = 0
    samples: int = 100_000
    order: int = 12
    epsilon: float = 1e-6
    output_path: str | None = None
    objective: str | None = None
    functional: str | None = None
    schur: str | None = None
    atoms: str | None = None
    extremal: int | None = None
    format: str = "json"
    starts: int | None = None
    workers: int = 1

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}")
        for name in ("seed", "samples", "order", "workers"):
            if not isinstance(getattr(self, name), int) or isinstance(getattr(self, name), bool):
                raise UsageError(f"{name} must be an integer")
        if self.seed < 0:
            raise UsageError("seed must be non-negative")
        if self.samples < 1:
            raise UsageError("samples must be >= 1")
        if self.order < 6:
            raise UsageError("order must be >= 6")
        if not (isinstance(self.epsilon, (int, float)) and self.epsilon > 0 and math.isfinite(self.epsilon)):
            raise UsageError("epsilon must be a positive number")
        if self.workers < 1:
            raise UsageError("workers must be >= 1")
        if self.starts is not None and self.starts < 1:
            raise UsageError("starts must be >= 1")
        if self.objective is not None and self.objective not in suites.CERTIFY_OBJECTIVES:
            raise UsageError(f"unknown objective {self.objective!r}")
        if self.functional is not None and self.functional not in FUNCTIONAL_IDS:
            raise UsageError(f"unknown functional {self.functional!r}")
        if self.format not in FORMATS:
            raise UsageError(f"unknown format {self.format!r}")
        if self.command == "eval" and sum(x is not None for x in (self.schur, self.atoms, self.extremal)) != 1:
            raise UsageError("eval needs exactly one of --schur, --atoms, --extremal")


@dataclass
class Report:
    version: str
    config: dict
    records: list
    elapsed_ms: float

    @property
    def passed(self) -> bool:
        return all(r.status == "pass" for r in self.records)


# -- flag parsing ---------------------------------------------------------------------------

def parse_complex(text: str) -> complex:
    """``re+imi`` style complex numbers; ``i`` or ``j`` for the imaginary unit."""
    t = text.strip().replace(" ", "").replace("i", "j")
    try:
        return complex(t)
    except ValueError:
        raise UsageError(f"bad complex number {text!r}") from None


def parse_schur(text: str) -> SchurPoint:
    parts = [p for p in text.split(",") if p.strip()]
    if not 1 <= len(parts) <= 4:
        raise UsageError("--schur takes one to four comma-separated values")
    zs = [parse_complex(p) for p in parts] + [0j] * (4 - len(parts))
    try:
        return SchurPoint(*zs)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def parse_atoms(text: str) -> HerglotzMeasure:
    atoms = []
    for item in text.split(","):
        try:
            theta, weight = item.split(":")
            atoms.append((float(theta), float(weight)))
        except ValueError:
            raise UsageError(f"bad atom {item!r}; expected theta:weight") from None
    try:
        return HerglotzMeasure(tuple(atoms))
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="starhankel",
        description="Verify coefficient bounds for the class S_u* and emit machine-readable reports.",
        argument_default=argparse.SUPPRESS,
    )
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--samples", type=int, help="sample count for sampled suites (default 100000)")
    p.add_argument("--seed", type=int, help="base RNG seed (default 0)")
    p.add_argument("--order", type=int, help="series truncation order (default 12, at least 6)")
    p.add_argument("--epsilon", type=float, help="certification tolerance (default 1e-6)")
    p.add_argument("--objective", choices=suites.CERTIFY_OBJECTIVES, help="certify a single objective")
    p.add_argument("--functional", choices=FUNCTIONAL_IDS, help="search a single functional")
    p.add_argument("--schur", help="z1,z2,z3,z4 with complex entries as re+imi")
    p.add_argument("--atoms", help="Herglotz measure as theta:weight,...")
    p.add_argument("--extremal", type=int, help="evaluate the extremal function f_n")
    p.add_argument("--starts", type=int, help="multi-start count for search")
    p.add_argument("--workers", type=int, help="worker processes for search (default 1)")
    p.add_argument("--format", choices=FORMATS, help="output format (default json)")
    p.add_argument("--out", dest="output_path", help="write the report here instead of stdout")
    p.add_argument("--config", help="JSON file with RunConfig fields; flags override it")
    return p


def load_config(argv: list[str] | None) -> RunConfig:
    args = vars(build_parser().parse_args(argv))
    values: dict[str, Any] = {}
    path = args.pop("config", None)
    if path is not None:
        try:
            with open(path) as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config {path}: {exc}") from None
        if not isinstance(data, dict):
            raise UsageError("config file must hold a JSON object")
        known = {f.name for f in fields(RunConfig)}
        unknown = set(data) - known
        if unknown:
            raise UsageError(f"unknown config keys: {sorted(unknown)}")
        values.update(data)
    values.update(args)
    return RunConfig(**values)


# -- running ----------------------------------------------------------------------------------

def _eval_series(config: RunConfig):
    if config.schur is not None:
        sp = parse_schur(config.schur)
        return function_from_schur(sp), f"schur {config.schur}"
    if config.atoms is not None:
        m = parse_atoms(config.atoms)
        return function_from_p(herglotz_series(m, config.order)), f"atoms {config.atoms}"
    if config.extremal < 2:
        raise UsageError("--extremal needs n >= 2")
    return extremal(config.extremal, config.order + 1), f"extremal {config.extremal}"


def run(config: RunConfig) -> Report:
    start = time.perf_counter()
    c = config
    records: list[suites.Record] = []
    if c.command in ("verify-identities", "report"):
        records += suites.verify_identities(c.samples, c.seed, c.order)
    if c.command in ("verify-bounds", "report"):
        records += suites.verify_bounds(c.samples, c.seed, max(c.order, 16))
    if c.command in ("certify", "report"):
        records += suites.certify_records(c.objective, c.epsilon)
    if c.command in ("search", "report"):
        records += suites.search_records(c.functional, c.seed, c.starts, c.workers)
    if c.command == "eval":
        try:
            f, source = _eval_series(c)
        except DomainError as exc:
            raise UsageError(str(exc)) from None
        records += suites.eval_records(f, source)
    elapsed = (time.perf_counter() - start) * 1000
    return Report(__version__, asdict(c), records, elapsed)


# -- emitting ---------------------------------------------------------------------------------

def _plain(o):
    if isinstance(o, (np.floating, Fraction)):
        return float(o)
    if isinstance(o, np.integer):
        return int(o)
    if isinstance(o, (complex, np.complexfloating)):
        return [float(o.real), float(o.imag)]
    if isinstance(o, (list, tuple, np.ndarray)):
        return [_plain(v) for v in o]
    if isinstance(o, dict):
        return {str(k): _plain(v) for k, v in o.items()}
    return o


def _number(x: float) -> str:
    if not math.isfinite(x):
        return "null"
    return format(x, ".17g")


def _dump(o) -> str:
    # json.dumps with every float at 17 significant digits
    if o is None or isinstance(o, (bool, str)):
        return json.dumps(o)
    if isinstance(o, int):
        return str(o)
    if isinstance(o, float):
        return _number(o)
    if isinstance(o, list):
        return "[" + ",".join(_dump(v) for v in o) + "]"
    if isinstance(o, dict):
        return "{" + ",".join(json.dumps(k) + ":" + _dump(v) for k, v in o.items()) + "}"
    raise TypeError(f"cannot serialize {type(o).__name__}")


def _record_dict(r: suites.Record) -> dict:
    return {
        "name": r.name,
        "status": r.status,
        "observed": _plain(r.observed),
        "target": _plain(r.target),
        "tolerance": _plain(r.tolerance),
        "witness": _plain(r.witness),
    }


def emit(report: Report, fmt: str = "json") -> bytes:
    if fmt == "json":
        doc = {
            "version": report.version,
            "config": _plain(report.config),
            "records": [_record_dict(r) for r in report.records],
            "elapsed_ms": float(report.elapsed_ms),
        }
        return (_dump(doc) + "\n").encode()
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["name", "status", "observed", "target", "tolerance"])
        for r in report.records:
            row = [r.name, r.status]
            for v in (r.observed, r.target, r.tolerance):
                v = _plain(v)
                row.append("" if v is None else _number(float(v)) if isinstance(v, float) else v)
            w.writerow(row)
        return buf.getvalue().encode()
    raise UsageError(f"unknown format {fmt!r}")


def main(argv: list[str] | None = None) -> int:
    try:
        config = load_config(argv)
        report = run(config)
        payload = emit(report, config.format)
    except SystemExit as exc:  # argparse usage errors and --help
        return int(exc.code or 0)
    except UsageError as exc:
        print(f"starhankel: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if config.output_path:
        try:
            with open(config.output_path, "wb") as fh:
                fh.write(payload)
        except OSError as exc:
            print(f"starhankel: error: cannot write {config.output_path}: {exc}", file=sys.stderr)
            return EXIT_USAGE
    else:
        sys.stdout.buffer.write(payload)
        sys.stdout.flush()
    failed = [r for r in report.records if r.status != "pass"]
    for r in failed:
        print(f"FAIL {r.name}: observed {r.observed}, target {r.target}, tolerance {r.tolerance}", file=sys.stderr)
    return EXIT_FAIL if failed else EXIT_PASS


if __name__ == "__main__":
    sys.exit(main())
