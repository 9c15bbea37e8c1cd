"""Verification report: every oracle run against the closed forms at once.

Hard assertions (failures set the report's ``passed`` flag to False):

* canonical-operator residual max_rel <= 1e-9 on the standard grid,
* plus-branch first-order closure residual max_rel <= 1e-9,
* shooting vs closed-form energy relative difference <= 1e-6 with node
  counts equal to n,
* closed-form vs quadrature normalization (relation-derived partner)
  relative deviation <= 1e-6 on the plus branch,
* two-component density integral equal to 1 within 1e-10 when normalized
  numerically.

The minus-branch first-order closure residual and every deviation against
the printed partner expression are reported as diagnostics only.
"""

from __future__ import annotations

import math

from .core import Branch, Convention, FieldConfig, QuantumNumbers, resolve_convention
from .errors import DiracPauliError
from .oracle import (
    canonical_residual,
    compare_spectrum,
    first_order_residual,
    standard_grid,
)
from .spectrum import (
    PartnerMode,
    bound_state,
    normalization_closed,
    normalization_numeric,
)

CANONICAL_TOL = 1e-9
CLOSURE_TOL = 1e-9
SHOOT_TOL = 1e-6
NORM_TOL = 1e-6
INTEGRAL_TOL = 1e-10


def _density_integral(state, m: int = 64) -> float:
    """Integral of (upper^2 + partner^2) r^2 with the state's own N."""
    n_num = normalization_numeric(state.cfg, state.qn, state.ode,
                                  PartnerMode.RELATION, m=m)
    # the integral scales as (N / N_exact)^2
    return (state.norm.N / n_num) ** 2


def build_report(cfg: FieldConfig, branch: Branch,
                 convention: Convention | None = None,
                 n_max: int = 2, ell_max: int = 2) -> dict:
    """Run all oracles over the (n, ell) grid and assemble a JSON-ready dict."""
    conv = resolve_convention(branch, convention)
    failures: list[str] = []
    report: dict = {
        "config": {"a": cfg.a, "b": cfg.b, "mu": cfg.mu},
        "branch": branch.value,
        "convention": conv.value,
        "grid": {"n_max": n_max, "ell_max": ell_max},
    }

    canonical_rows = []
    first_order_rows = []
    normalization_rows = []
    state_errors = []
    for n in range(n_max + 1):
        for ell in range(ell_max + 1):
            qn = QuantumNumbers(n=n, ell=ell)
            try:
                state = bound_state(cfg, qn, branch, conv)
            except DiracPauliError as exc:
                state_errors.append({"n": n, "ell": ell,
                                     "error": type(exc).__name__,
                                     "message": str(exc)})
                continue
            grid = standard_grid(state.ode)

            res = canonical_residual(state.ode, state, grid)
            canonical_rows.append({"n": n, "ell": ell,
                                   "max_rel": res.max_rel,
                                   "rms_rel": res.rms_rel})
            if res.max_rel > CANONICAL_TOL:
                failures.append(
                    f"canonical residual {res.max_rel:.3e} > {CANONICAL_TOL} "
                    f"at (n={n}, ell={ell})")

            fo_rel = first_order_residual(cfg, state, PartnerMode.RELATION, grid)
            fo_lit = first_order_residual(cfg, state, PartnerMode.LITERAL, grid)
            first_order_rows.append({
                "n": n, "ell": ell,
                "relation_defining_max_rel": fo_rel.defining.max_rel,
                "relation_closure_max_rel": fo_rel.closure.max_rel,
                "literal_defining_max_rel": fo_lit.defining.max_rel,
                "literal_closure_max_rel": fo_lit.closure.max_rel,
            })
            if branch is Branch.PLUS and fo_rel.closure.max_rel > CLOSURE_TOL:
                failures.append(
                    f"first-order closure residual {fo_rel.closure.max_rel:.3e} "
                    f"> {CLOSURE_TOL} at (n={n}, ell={ell})")

            n_closed = normalization_closed(cfg, qn, state.ode).N
            n_rel = normalization_numeric(cfg, qn, state.ode, PartnerMode.RELATION)
            n_lit = normalization_numeric(cfg, qn, state.ode, PartnerMode.LITERAL)
            integral = _density_integral(state)
            normalization_rows.append({
                "n": n, "ell": ell,
                "closed": n_closed,
                "numeric_relation": n_rel,
                "numeric_literal": n_lit,
                "rel_dev_relation": abs(n_closed - n_rel) / n_rel,
                "rel_dev_literal": abs(n_closed - n_lit) / n_lit,
                "density_integral": integral,
            })
            if branch is Branch.PLUS and abs(n_closed - n_rel) / n_rel > NORM_TOL:
                failures.append(
                    f"closed-form normalization deviates "
                    f"{abs(n_closed - n_rel) / n_rel:.3e} > {NORM_TOL} "
                    f"at (n={n}, ell={ell})")
            if abs(integral - 1.0) > INTEGRAL_TOL:
                failures.append(
                    f"density integral {integral!r} deviates from 1 "
                    f"at (n={n}, ell={ell})")

    comparison = compare_spectrum(cfg, branch, conv, n_max, ell_max)
    comparison_rows = [{
        "n": row.n, "ell": row.ell,
        "energy_closed": row.energy_closed,
        "energy_shoot": row.energy_shoot,
        "rel_diff": row.rel_diff,
        "node_count": row.node_count,
        "bisections": row.bisections,
    } for row in comparison.rows]
    for row in comparison.rows:
        if row.rel_diff > SHOOT_TOL:
            failures.append(
                f"shooting energy deviates {row.rel_diff:.3e} > {SHOOT_TOL} "
                f"at (n={row.n}, ell={row.ell})")
        if row.node_count != row.n:
            failures.append(
                f"node count {row.node_count} != n at (n={row.n}, ell={row.ell})")
    shoot_failures = [{"n": n, "ell": ell, "error": name, "message": msg}
                      for (n, ell, name, msg) in comparison.failures]
    if state_errors and not comparison_rows and not canonical_rows:
        # whole grid failed to construct; surface it as a hard failure
        failures.append("no state on the grid is constructible")

    report["canonical_residuals"] = canonical_rows
    report["first_order_residuals"] = first_order_rows
    report["normalization"] = normalization_rows
    report["spectrum_comparison"] = comparison_rows
    report["construction_errors"] = state_errors + shoot_failures
    report["hard_failures"] = failures
    report["passed"] = not failures
    return report
