"""Command-line front end: ``novikov-configs validate|compute|check|plot``.

Exit codes: 0 success or pass, 1 failed check or validation, 2 usage or I/O.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .cocycle import CocycleComplex, ComplexFormatError, load_complex, potentials, validate
from .configurations import (CheckReport, FoldError, analyze, duality_check, is_closed_pseudomanifold,
                             stability_probe, theorem_tt_check, window_stabilization_check)
from .cover import WindowError, WindowSpec
from .plot import lanes_from_result, render_svg
from .values import IndeterminateComparison, ValueVector

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
STABILITY_EPSILONS = ("0.2", "0.1", "0.05", "0.02")


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    input: list[str]
    prime: int | None
    window_lo: str | None
    window_hi: str | None
    margin: str | None
    degrees: list[int] | None
    seed: int
    trials: int
    format: str
    out: str | None
    which: str | None = None

    @classmethod
    def from_args(cls, ns: argparse.Namespace) -> "RunConfig":
        degrees = _parse_degrees(ns.degrees) if getattr(ns, "degrees", None) else None
        cfg = cls(ns.command, ns.input, getattr(ns, "prime", None), getattr(ns, "window_lo", None),
                  getattr(ns, "window_hi", None), getattr(ns, "margin", None), degrees,
                  getattr(ns, "seed", 0), getattr(ns, "trials", 5), getattr(ns, "format", "json"),
                  ns.out, getattr(ns, "which", None))
        if cfg.window_lo is not None and cfg.window_hi is not None:
            if Fraction(cfg.window_lo) >= Fraction(cfg.window_hi):
                raise UsageError("--window-lo must be below --window-hi")
        if cfg.margin is not None and Fraction(cfg.margin) < 0:
            raise UsageError("--margin must be non-negative")
        if cfg.trials < 1:
            raise UsageError("--trials must be positive")
        return cfg

    def spec(self, cx: CocycleComplex) -> WindowSpec:
        n = cx.generators.n

        def conv(x):
            return None if x is None else ValueVector.of(x, (0,) * n)

        return WindowSpec(conv(self.window_lo), conv(self.window_hi), conv(self.margin))


def _parse_degrees(text: str) -> list[int]:
    """``"1"``, ``"0-2"`` or ``"0,2"``."""
    out: set[int] = set()
    try:
        for part in text.split(","):
            if "-" in part.strip()[1:]:
                a, b = part.split("-", 1)
                out.update(range(int(a), int(b) + 1))
            else:
                out.add(int(part))
    except ValueError:
        raise UsageError(f"bad degree range {text!r}") from None
    if not out or min(out) < 0:
        raise UsageError("degrees must be non-negative")
    return sorted(out)


def _decimal(text: str) -> str:
    try:
        Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a decimal number: {text!r}") from None
    return text


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="novikov-configs",
        description="delta/gamma configurations and Novikov-Betti numbers of simplicial 1-cocycles")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, window=True):
        p.add_argument("--input", required=True, action="append",
                       help="input JSON file (repeatable for plot)")
        p.add_argument("--out", help="output file (default: stdout)")
        if window:
            p.add_argument("--prime", type=int, help="field characteristic (default: from input)")
            p.add_argument("--window-lo", type=_decimal)
            p.add_argument("--window-hi", type=_decimal)
            p.add_argument("--margin", type=_decimal)
            p.add_argument("--degrees", help="e.g. 0-2 or 0,1")
            p.add_argument("--seed", type=int, default=0)
            p.add_argument("--trials", type=int, default=5)

    p = sub.add_parser("validate", help="check the cocycle condition and genericity")
    common(p, window=False)
    p.add_argument("--prime", type=int)

    p = sub.add_parser("compute", help="configurations, Betti numbers and rank d_r")
    common(p)
    p.add_argument("--format", choices=("json", "csv", "svg"), default="json")

    p = sub.add_parser("check", help="run one of the identity/duality/stability/window checks")
    p.add_argument("which", choices=("tt", "duality", "stability", "windows"))
    common(p)
    p.add_argument("--format", choices=("json",), default="json")

    p = sub.add_parser("plot", help="SVG plot of compute JSON results")
    common(p, window=False)
    return parser


# -- commands ----------------------------------------------------------------


def _load(cfg: RunConfig) -> CocycleComplex:
    if len(cfg.input) != 1:
        raise UsageError(f"{cfg.command} takes exactly one --input")
    cx = load_complex(cfg.input[0])
    if cfg.prime is not None:
        cx = cx.with_prime(cfg.prime)
    return cx


def _emit(text: str, cfg: RunConfig) -> None:
    if cfg.out:
        Path(cfg.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def cmd_validate(cfg: RunConfig) -> int:
    cx = _load(cfg)
    rep = validate(cx)
    _emit(_dump(rep.to_json()), cfg)
    return EXIT_OK if rep.passed else EXIT_FAIL


def compute_document(cx: CocycleComplex, cfg: RunConfig) -> tuple[dict, int]:
    """Result document of ``compute`` and its exit code."""
    rep = validate(cx)
    if not rep.passed:
        return {"status": "invalid input", "validation": rep.to_json()}, EXIT_FAIL
    try:
        an = analyze(cx, cfg.spec(cx), cfg.degrees, literal=False)
    except (FoldError, WindowError) as exc:
        return {"status": "window did not stabilize", "reason": str(exc),
                "witness": getattr(exc, "witness", {})}, EXIT_FAIL
    window = {k: v for k, v in an.window.summary().items() if k != "critical_values"}
    doc = {
        "status": "ok",
        "field_prime": cx.field_prime,
        "k": an.window.k,
        "window": window,
        "betti": {str(r): an.results[r].betti_top for r in an.degrees},
        "rank_d": {str(r): an.results[r].rank_d for r in an.degrees},
        "degrees": {str(r): an.results[r].to_json() for r in an.degrees},
    }
    for r in an.degrees:
        res = an.results[r]
        prev = an.results[r - 1].gamma.total if (r - 1) in an.results else 0
        doc["degrees"][str(r)]["cell_counts"] = {
            "lowerstar_orbit_sum": res.lowerstar_sum, "sum_delta": res.delta.total,
            "sum_gamma": res.gamma.total, "sum_gamma_prev": prev}
    return doc, EXIT_OK


def _csv(doc: dict) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["degree", "kind", "length", "length_exact", "multiplicity"])
    for r in sorted(doc["degrees"], key=int):
        res = doc["degrees"][r]
        for kind in ("delta", "gamma"):
            for p in res[kind]["points"]:
                w.writerow([r, kind, p["s"], json.dumps(p["s_exact"], sort_keys=True), p["mult"]])
        w.writerow([r, "betti", "", "", res["betti"]])
        w.writerow([r, "rank_d", "", "", res["rank_d"]])
    return buf.getvalue()


def cmd_compute(cfg: RunConfig) -> int:
    cx = _load(cfg)
    doc, code = compute_document(cx, cfg)
    if code != EXIT_OK or cfg.format == "json":
        _emit(_dump(doc), cfg)
    elif cfg.format == "csv":
        _emit(_csv(doc), cfg)
    else:
        _emit(render_svg(lanes_from_result(doc), Path(cfg.input[0]).name), cfg)
    return code


def run_check(cx: CocycleComplex, cfg: RunConfig) -> CheckReport:
    spec = cfg.spec(cx)
    if cfg.which == "tt":
        return theorem_tt_check(cx, cfg.degrees, spec, trials=cfg.trials, seed=cfg.seed)
    if cfg.which == "duality":
        n = cx.dim
        if not is_closed_pseudomanifold(cx, n):
            rep = CheckReport("duality", False)
            rep.fail(None, reason=f"complex is not a closed {n}-dimensional pseudomanifold")
            return rep
        return duality_check(cx, n, cfg.degrees, spec)
    if cfg.which == "stability":
        return stability_probe(cx, STABILITY_EPSILONS, trials=cfg.trials, seed=cfg.seed,
                               degrees=cfg.degrees or [0], spec=spec)
    # windows: the requested (or default) window against a wider one
    pot = potentials(cx)
    gens = cx.generators
    if not pot.k:
        wide = WindowSpec()
    else:
        P = pot.lattice.period_scale(gens)
        lo = spec.lo if spec.lo is not None else P.scale(-3)
        hi = spec.hi if spec.hi is not None else P.scale(3)
        spec = WindowSpec(lo, hi, spec.margin)
        wide = WindowSpec(gens.min([P.scale(-5), lo - P.scale(2)]),
                          gens.max([P.scale(5), hi + P.scale(2)]), spec.margin)
    return window_stabilization_check(cx, spec, wide, cfg.degrees)


def cmd_check(cfg: RunConfig) -> int:
    cx = _load(cfg)
    rep = validate(cx)
    if not rep.passed:
        _emit(_dump({"check": cfg.which, "pass": False, "validation": rep.to_json()}), cfg)
        return EXIT_FAIL
    report = run_check(cx, cfg)
    _emit(_dump(report.to_json()), cfg)
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_plot(cfg: RunConfig) -> int:
    lanes = []
    for path in cfg.input:
        try:
            doc = json.loads(Path(path).read_text(encoding="utf-8"))
            lanes.extend(lanes_from_result(doc))
        except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
            raise UsageError(f"{path}: not a compute result: {exc}") from None
    _emit(render_svg(lanes), cfg)
    return EXIT_OK


COMMANDS = {"validate": cmd_validate, "compute": cmd_compute, "check": cmd_check,
            "plot": cmd_plot}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        cfg = RunConfig.from_args(ns)
        return COMMANDS[cfg.command](cfg)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ComplexFormatError, IndeterminateComparison) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
