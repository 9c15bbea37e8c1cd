"""Command-line front end.

Subcommands
-----------
spectrum      closed-form energies over single quantum numbers or a grid
wavefunction  radial profiles and the two-component density on a log grid
verify        run every numerical oracle and emit a JSON report
figures       energy sweeps over a (--which 1) or b (--which 2)
sweep         generic single-parameter sweep (--param a|b|mu)

Outputs are deterministic: rows are emitted in a fixed order and floats
are formatted with 17 significant digits in CSV.  Exit codes: 0 success,
1 verification failure, 2 invalid manifest, 3 construction error (with a
machine-readable JSON object on stderr).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

import numpy as np

from .core import Branch, Convention, FieldConfig, QuantumNumbers
from .errors import ComplexExponentError, DiracPauliError, DomainError
from .spectrum import (
    PartnerMode,
    bound_state,
    classify_state,
    energy_level,
    _angular_exponent,
)
from .core import resolve_convention
from .verify import build_report

_FIGURE_SERIES = ((0, 0), (1, 0), (1, 1))


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _parse_branch(value: str) -> Branch:
    try:
        return Branch(value)
    except ValueError:
        raise DomainError(f"unknown branch {value!r}; expected plus or minus")


def _parse_convention(value: str | None) -> Convention | None:
    if value is None:
        return None
    try:
        return Convention(value)
    except ValueError:
        raise DomainError(
            f"unknown convention {value!r}; expected paper-literal, "
            f"sign-aware, or corrected-minus")


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--branch", choices=[b.value for b in Branch], default=None)
    parser.add_argument("--convention",
                        choices=[c.value for c in Convention], default=None)
    parser.add_argument("--a", type=float, default=None)
    parser.add_argument("--b", type=float, default=None)
    parser.add_argument("--mu", type=float, default=None)
    parser.add_argument("--n", type=int, default=None)
    parser.add_argument("--ell", type=int, default=None)
    parser.add_argument("--n-max", type=int, default=None)
    parser.add_argument("--ell-max", type=int, default=None)
    parser.add_argument("--min", type=float, default=None)
    parser.add_argument("--max", type=float, default=None)
    parser.add_argument("--steps", type=int, default=None)
    parser.add_argument("--format", choices=["csv", "json"], default=None)
    parser.add_argument("--out", type=str, default=None)
    parser.add_argument("--config", type=str, default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="diracpauli",
        description="Bound states of a neutral spin-1/2 particle with an "
                    "anomalous magnetic moment in the field a + b/r, with "
                    "numerical verification oracles.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("spectrum", "wavefunction", "verify", "figures", "sweep"):
        p = sub.add_parser(name)
        _add_common(p)
        if name == "figures":
            p.add_argument("--which", type=int, choices=[1, 2], default=None)
        if name == "sweep":
            p.add_argument("--param", choices=["a", "b", "mu"], default=None)
    return parser


def _merge_config(args: argparse.Namespace) -> dict:
    """Flag values override config-file values; both override defaults."""
    merged: dict = {}
    if args.config is not None:
        path = Path(args.config)
        if not path.exists():
            raise DomainError(f"config file not found: {path}")
        try:
            raw = json.loads(path.read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise DomainError(f"config file is not valid JSON: {exc}")
        if not isinstance(raw, dict):
            raise DomainError("config file must hold a flat JSON object")
        for key, value in raw.items():
            merged[key.replace("-", "_")] = value
    for key, value in vars(args).items():
        if key in ("command", "config"):
            continue
        if value is not None:
            merged[key] = value
    return merged


def _field_config(manifest: dict) -> FieldConfig:
    return FieldConfig(a=float(manifest.get("a", 1.0)),
                       b=float(manifest.get("b", 1.0)),
                       mu=float(manifest.get("mu", 0.001)))


def _qn_ranges(manifest: dict) -> list[QuantumNumbers]:
    n_max = manifest.get("n_max")
    ell_max = manifest.get("ell_max")
    if n_max is not None or ell_max is not None:
        n_hi = int(n_max if n_max is not None else manifest.get("n", 0))
        ell_hi = int(ell_max if ell_max is not None else manifest.get("ell", 0))
        _check_qn_bound(n_hi, ell_hi)
        return [QuantumNumbers(n=n, ell=ell)
                for n in range(n_hi + 1) for ell in range(ell_hi + 1)]
    n = int(manifest.get("n", 0))
    ell = int(manifest.get("ell", 0))
    _check_qn_bound(n, ell)
    return [QuantumNumbers(n=n, ell=ell)]


def _check_qn_bound(n: int, ell: int) -> None:
    if not (0 <= n <= 64 and 0 <= ell <= 64):
        raise DomainError(f"quantum numbers must lie in [0, 64], got n={n}, ell={ell}")


def _emit(rows: list[dict], columns: list[str], fmt: str, out: str | None) -> None:
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([row[c] if isinstance(row[c], str) else _fmt(row[c])
                             if isinstance(row[c], float) else str(row[c])
                             for c in columns])
        text = buf.getvalue()
    else:
        text = json.dumps({"rows": rows}, indent=2) + "\n"
    _write_out(text, out)


def _write_out(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def _cmd_spectrum(manifest: dict) -> int:
    cfg = _field_config(manifest)
    branch = _parse_branch(manifest.get("branch", "plus"))
    conv = resolve_convention(branch, _parse_convention(manifest.get("convention")))
    rows = []
    for qn in _qn_ranges(manifest):
        eps = energy_level(cfg, qn, branch, conv)
        _, L = _angular_exponent(branch, conv, qn.ell, cfg.mu, cfg.b)
        rows.append({
            "branch": branch.value, "n": qn.n, "ell": qn.ell,
            "a": cfg.a, "b": cfg.b, "mu": cfg.mu,
            "convention": conv.value, "L": L, "energy": eps,
            "classification": classify_state(eps).value,
        })
    columns = ["branch", "n", "ell", "a", "b", "mu", "convention", "L",
               "energy", "classification"]
    _emit(rows, columns, manifest.get("format", "csv"), manifest.get("out"))
    return 0


def _cmd_wavefunction(manifest: dict) -> int:
    cfg = _field_config(manifest)
    branch = _parse_branch(manifest.get("branch", "plus"))
    conv = resolve_convention(branch, _parse_convention(manifest.get("convention")))
    qn = _qn_ranges(manifest)[0]
    state = bound_state(cfg, qn, branch, conv)
    r_lo = float(manifest.get("min", 0.05))
    r_hi = float(manifest.get("max", 40.0 / state.ode.c2))
    steps = int(manifest.get("steps", 200))
    if not (r_lo > 0 and r_hi > r_lo and steps >= 2):
        raise DomainError(
            f"invalid radial grid: min={r_lo}, max={r_hi}, steps={steps}")
    grid = np.logspace(np.log10(r_lo), np.log10(r_hi), steps)
    from .spectrum import wavefunction_partner, wavefunction_upper
    upper = wavefunction_upper(state, grid)
    partner = wavefunction_partner(state, grid, PartnerMode.RELATION)
    density = (upper ** 2 + partner ** 2) * grid ** 2
    rows = [{"r": float(r), "upper": float(u), "partner": float(p),
             "density": float(d)}
            for r, u, p, d in zip(grid, upper, partner, density)]
    _emit(rows, ["r", "upper", "partner", "density"],
          manifest.get("format", "csv"), manifest.get("out"))
    return 0


def _cmd_verify(manifest: dict) -> int:
    cfg = _field_config(manifest)
    branch = _parse_branch(manifest.get("branch", "plus"))
    conv = resolve_convention(branch, _parse_convention(manifest.get("convention")))
    n_max = int(manifest.get("n_max", 2))
    ell_max = int(manifest.get("ell_max", 2))
    _check_qn_bound(n_max, ell_max)
    report = build_report(cfg, branch, conv, n_max, ell_max)
    _write_out(json.dumps(report, indent=2) + "\n", manifest.get("out"))
    return 0 if report["passed"] else 1


def _figure_rows(which: int, manifest: dict) -> list[dict]:
    lo = float(manifest.get("min", 0.0))
    hi = float(manifest.get("max", 10.0))
    steps = int(manifest.get("steps", 201))
    if not (hi > lo and steps >= 2):
        raise DomainError(f"invalid sweep range: min={lo}, max={hi}, steps={steps}")
    mu = float(manifest.get("mu", -0.001))
    branch = _parse_branch(manifest.get("branch", "plus"))
    conv = _parse_convention(manifest.get("convention")) or Convention.LITERAL
    values = np.linspace(lo, hi, steps)
    rows = []
    for n, ell in _FIGURE_SERIES:
        qn = QuantumNumbers(n=n, ell=ell)
        for value in values:
            if which == 1:
                a, b = float(value), float(manifest.get("b", 1.0))
            else:
                a, b = float(manifest.get("a", 1.0)), float(value)
            cfg = FieldConfig(a=a, b=b, mu=mu)
            eps = energy_level(cfg, qn, branch, conv)
            rows.append({
                "which": which, "branch": branch.value, "n": n, "ell": ell,
                "a": a, "b": b, "mu": mu, "convention": conv.value,
                "energy": eps,
            })
    return rows


def _cmd_figures(manifest: dict) -> int:
    which = manifest.get("which")
    if which not in (1, 2):
        raise DomainError(f"--which must be 1 or 2, got {which!r}")
    rows = _figure_rows(int(which), manifest)
    columns = ["which", "branch", "n", "ell", "a", "b", "mu", "convention",
               "energy"]
    _emit(rows, columns, manifest.get("format", "csv"), manifest.get("out"))
    return 0


def _cmd_sweep(manifest: dict) -> int:
    param = manifest.get("param")
    if param not in ("a", "b", "mu"):
        raise DomainError(f"--param must be one of a, b, mu; got {param!r}")
    lo = float(manifest.get("min", 0.0))
    hi = float(manifest.get("max", 10.0))
    steps = int(manifest.get("steps", 201))
    if not (hi > lo and steps >= 2):
        raise DomainError(f"invalid sweep range: min={lo}, max={hi}, steps={steps}")
    branch = _parse_branch(manifest.get("branch", "plus"))
    conv = resolve_convention(branch, _parse_convention(manifest.get("convention")))
    qn = _qn_ranges(manifest)[0]
    base = {"a": float(manifest.get("a", 1.0)),
            "b": float(manifest.get("b", 1.0)),
            "mu": float(manifest.get("mu", 0.001))}
    rows = []
    for value in np.linspace(lo, hi, steps):
        params = dict(base)
        params[param] = float(value)
        cfg = FieldConfig(**params)
        eps = energy_level(cfg, qn, branch, conv)
        _, L = _angular_exponent(branch, conv, qn.ell, cfg.mu, cfg.b)
        rows.append({
            "param": param, "branch": branch.value, "n": qn.n, "ell": qn.ell,
            "a": cfg.a, "b": cfg.b, "mu": cfg.mu, "convention": conv.value,
            "L": L, "energy": eps,
            "classification": classify_state(eps).value,
        })
    columns = ["param", "branch", "n", "ell", "a", "b", "mu", "convention",
               "L", "energy", "classification"]
    _emit(rows, columns, manifest.get("format", "csv"), manifest.get("out"))
    return 0


_COMMANDS = {
    "spectrum": _cmd_spectrum,
    "wavefunction": _cmd_wavefunction,
    "verify": _cmd_verify,
    "figures": _cmd_figures,
    "sweep": _cmd_sweep,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        manifest = _merge_config(args)
    except DomainError as exc:
        sys.stderr.write(json.dumps({"error": type(exc).__name__,
                                     "message": str(exc)}) + "\n")
        return 2
    try:
        return _COMMANDS[args.command](manifest)
    except DomainError as exc:
        sys.stderr.write(json.dumps({"error": type(exc).__name__,
                                     "message": str(exc)}) + "\n")
        return 2
    except ComplexExponentError as exc:
        sys.stderr.write(json.dumps({
            "error": type(exc).__name__,
            "message": str(exc),
            "one_plus_c3sq": exc.one_plus_c3sq}) + "\n")
        return 3
    except DiracPauliError as exc:
        sys.stderr.write(json.dumps({"error": type(exc).__name__,
                                     "message": str(exc)}) + "\n")
        return 3


if __name__ == "__main__":
    raise SystemExit(main())
