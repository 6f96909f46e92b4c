"""Execution of report / sweep / optimize runs and their serialization."""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import replace

import numpy as np

from . import engine, qubit, svg
from .config import RunConfig
from .engine import Mode
from .qubit import QubitParams

REPORT_COLUMNS = ("avg_w", "avg_qm", "avg_qc", "var_w_re", "var_w_im",
                  "var_qm_re", "var_qm_im", "var_qc", "eff", "rel_w",
                  "sigma", "regime")
BOUNDS_COLUMNS = ("rf_w", "rf_qm", "rf_qc", "tur_bound", "appc_bound",
                  "r_qm", "eff_sq", "var_ratio", "thm2_gap",
                  "rf_gap_w_qm", "rf_gap_w_qc", "kd_disc")


def thread_count() -> int:
    env = os.environ.get("OTTO_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return os.cpu_count() or 1


def fmt_cell(value) -> str:
    """Shortest round-trip decimal; empty cell for absent values."""
    if value is None:
        return ""
    if isinstance(value, engine.Regime):
        return value.value
    if isinstance(value, str):
        return value
    return repr(float(value))


def _report_cells(rep: engine.CumulantReport) -> list:
    return [rep.avg_w, rep.avg_qm, rep.avg_qc,
            rep.var_w.real, rep.var_w.imag,
            rep.var_qm.real, rep.var_qm.imag, rep.var_qc,
            rep.efficiency, rep.reliability_w, rep.avg_sigma, rep.regime]


def _bounds_cells(b: qubit.BoundsReport) -> list:
    return [b.rf_w, b.rf_qm, b.rf_qc, b.tur_bound, b.appc_bound,
            b.r_qm, b.eff_sq, b.var_ratio, b.thm2_gap,
            b.rf_gap_w_qm, b.rf_gap_w_qc, b.kd_discriminant]


def mode_columns(modes) -> list[str]:
    cols = []
    for mode in modes:
        cols += [f"{mode.value}_{c}" for c in REPORT_COLUMNS]
        cols += [f"{mode.value}_{c}" for c in BOUNDS_COLUMNS]
    return cols


def evaluate_point(p: QubitParams, modes) -> list:
    """All per-mode report and bounds cells for one parameter point."""
    spec = qubit.build_qubit_spec(p)
    cells: list = []
    for mode in modes:
        cells += _report_cells(engine.cumulant_report(spec, mode))
        cells += _bounds_cells(qubit.bounds_report(spec, mode))
    return cells


# ---------------------------------------------------------------------------
# report


def _report_json(rep: engine.CumulantReport) -> dict:
    doc = {
        "avg_e1": rep.avg_e[0], "avg_e2": rep.avg_e[1],
        "avg_e3": rep.avg_e[2], "avg_e4": rep.avg_e[3],
        "avg_w": rep.avg_w, "avg_qm": rep.avg_qm, "avg_qc": rep.avg_qc,
        "var_w_re": rep.var_w.real, "var_w_im": rep.var_w.imag,
        "var_qm_re": rep.var_qm.real, "var_qm_im": rep.var_qm.imag,
        "var_qc": rep.var_qc,
        "sigma": rep.avg_sigma,
        "jarzynski_re": None if rep.jarzynski is None else rep.jarzynski.real,
        "jarzynski_im": None if rep.jarzynski is None else rep.jarzynski.imag,
        "eff": rep.efficiency, "rel_w": rep.reliability_w,
        "regime": rep.regime.value,
    }
    if rep.cov is not None:
        doc["cov_re"] = rep.cov.real.tolist()
        doc["cov_im"] = rep.cov.imag.tolist()
    return doc


def report_document(cfg: RunConfig) -> dict:
    """Full single-point document: cumulants, probabilities, bounds."""
    spec = qubit.build_qubit_spec(cfg.params)
    tp = qubit.transition_probs(spec)
    doc = {"params": {f: getattr(cfg.params, f)
                      for f in cfg.params.__dataclass_fields__},
           "transition_probs": {
               "delta_p": tp.delta_p, "theta": tp.theta, "zeta": tp.zeta,
               "theta_c": tp.theta_c, "zeta_sup_c": tp.zeta_sup_c,
               "zeta_sub_c": tp.zeta_sub_c},
           "modes": {}}
    for mode in cfg.modes:
        block = _report_json(engine.cumulant_report(spec, mode))
        b = qubit.bounds_report(spec, mode)
        block["bounds"] = dict(zip(BOUNDS_COLUMNS, _bounds_cells(b)))
        doc["modes"][mode.value] = block
    return doc


# ---------------------------------------------------------------------------
# sweep


def sweep_grid(cfg: RunConfig) -> list[tuple[float, ...]]:
    """Lexicographic grid points (axis1 outer, axis2 inner)."""
    if len(cfg.axes) == 1:
        return [(a,) for a in cfg.axes[0].grid]
    return [(a, b) for a in cfg.axes[0].grid for b in cfg.axes[1].grid]


def sweep_table(cfg: RunConfig) -> tuple[list[str], list[list]]:
    """Header and rows of a sweep; rows in fixed grid order."""
    if not cfg.axes:
        raise ValueError("sweep requires at least one axis")
    modes = cfg.modes
    header = [a.name for a in cfg.axes] + mode_columns(modes)
    points = sweep_grid(cfg)

    def params_at(pt):
        kw = {ax.name: val for ax, val in zip(cfg.axes, pt)}
        return replace(cfg.params, **kw)

    workers = min(thread_count(), max(1, len(points)))
    if workers > 1 and len(points) > 64:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            cells = list(pool.map(lambda pt: evaluate_point(params_at(pt), modes),
                                  points))
    else:
        cells = [evaluate_point(params_at(pt), modes) for pt in points]
    rows = [list(pt) + c for pt, c in zip(points, cells)]
    return header, rows


def render_csv(header: list[str], rows: list[list]) -> str:
    lines = [",".join(header)]
    lines += [",".join(fmt_cell(c) for c in row) for row in rows]
    return "\n".join(lines) + "\n"


def render_sweep_svg(cfg: RunConfig, header: list[str],
                     rows: list[list]) -> str:
    """Chart of selected columns: polylines for 1D sweeps, heatmap for 2D."""
    wanted = list(cfg.output.columns)
    if not wanted:
        wanted = [f"{cfg.modes[0].value}_avg_w"]
    missing = [c for c in wanted if c not in header]
    if missing:
        raise ValueError(f"unknown chart columns {missing}; have {header}")
    cols = {c: header.index(c) for c in wanted}

    def num(v):
        return v.real if isinstance(v, complex) else (
            None if v is None or isinstance(v, (str, engine.Regime)) else float(v))

    if len(cfg.axes) == 1:
        x = [row[0] for row in rows]
        series = {c: [num(row[i]) for row in rows] for c, i in cols.items()}
        return svg.line_chart(x, series, cfg.axes[0].name, "parameter sweep")
    name = wanted[0]
    idx = cols[name]
    xs = list(cfg.axes[1].grid)
    ys = list(cfg.axes[0].grid)
    grid = [[num(rows[j * len(xs) + i][idx]) for i in range(len(xs))]
            for j in range(len(ys))]
    # grid rows follow axis1; transpose axes so axis1 runs along x
    return svg.heatmap(xs, ys, grid, cfg.axes[1].name, cfg.axes[0].name, name)


# ---------------------------------------------------------------------------
# optimize


class TargetUndefined(RuntimeError):
    """Optimization target is undefined on the whole search grid."""


_NAMED_BASES = {"x": (1.0, 0.0, 0.0), "y": (0.0, 1.0, 0.0), "z": (0.0, 0.0, 1.0)}
_NAMED_PLANES = {"yz": (1.0, 0.0, 0.0), "xz": (0.0, 1.0, 0.0),
                 "xy": (0.0, 0.0, 1.0)}  # plane -> normal axis


def classify_direction(alpha: float, chi: float,
                       tol: float = 1e-3) -> str | None:
    """Nearest named measurement basis or plane within angular tolerance."""
    n = (math.sin(alpha) * math.cos(chi),
         math.sin(alpha) * math.sin(chi),
         math.cos(alpha))
    best = None
    best_ang = tol
    for name, axis in _NAMED_BASES.items():
        dot = abs(sum(a * b for a, b in zip(n, axis)))
        ang = math.acos(min(1.0, dot))
        if ang <= best_ang:
            best, best_ang = f"{name}-basis", ang
    if best is not None:
        return best
    for name, normal in _NAMED_PLANES.items():
        off = abs(sum(a * b for a, b in zip(n, normal)))
        ang = math.asin(min(1.0, off))
        if ang <= best_ang:
            best, best_ang = f"{name}-plane", ang
    return best


def _target_value(rep: engine.CumulantReport, target: str) -> float | None:
    if target == "work":
        return rep.avg_w
    if target == "efficiency":
        return rep.efficiency
    return rep.reliability_w


def optimize_document(cfg: RunConfig) -> dict:
    """Grid search over the measurement direction (alpha, chi).

    Coarse 64x64 scan over the full sphere, then three local refinements
    shrinking the window by a factor of 4 each round around the incumbent.
    Deterministic and derivative-free.
    """
    if cfg.target is None:
        raise ValueError("optimize requires a target")
    if cfg.mode == "both":
        raise ValueError("optimize requires a single mode")
    mode = cfg.modes[0]
    evals = 0

    def value(alpha: float, chi: float) -> float | None:
        nonlocal evals
        evals += 1
        rep = qubit.qubit_report(
            replace(cfg.params, alpha=alpha, chi=chi), mode)
        return _target_value(rep, cfg.target)

    alphas = np.linspace(0.0, math.pi, 64)
    chis = np.linspace(0.0, 2.0 * math.pi, 64, endpoint=False)
    best = (-math.inf, 0.0, 0.0)
    defined = 0
    for a in alphas:
        for c in chis:
            v = value(float(a), float(c))
            if v is None:
                continue
            defined += 1
            if v > best[0]:
                best = (v, float(a), float(c))
    if defined == 0:
        raise TargetUndefined(f"target {cfg.target!r} undefined on the grid")
    ha = float(alphas[1] - alphas[0])
    hc = float(chis[1] - chis[0])
    for _ in range(3):
        _, a0, c0 = best
        sub_a = np.linspace(max(0.0, a0 - ha), min(math.pi, a0 + ha), 17)
        sub_c = np.linspace(max(0.0, c0 - hc),
                            min(2.0 * math.pi - 1e-12, c0 + hc), 17)
        for a in sub_a:
            for c in sub_c:
                v = value(float(a), float(c))
                if v is not None and v > best[0]:
                    best = (v, float(a), float(c))
        ha /= 4.0
        hc /= 4.0
    val, a_star, c_star = best
    return {"target": cfg.target, "mode": mode.value, "value": val,
            "alpha": a_star, "chi": c_star,
            "nearest": classify_direction(a_star, c_star),
            "evaluations": evals}
