"""Shipped figure-reproduction configs and their golden CSVs."""

from __future__ import annotations

import json
from importlib.resources import files

from .config import RunConfig, build_run_config

FIGURES = ("fig3", "fig4", "fig5", "fig6")


def _resource(name: str) -> str:
    return files("ottolab").joinpath("figures").joinpath(name).read_text()


def figure_config(name: str) -> RunConfig:
    if name not in FIGURES:
        raise KeyError(f"unknown figure {name!r}; have {FIGURES}")
    return build_run_config(json.loads(_resource(f"{name}.json")))


def golden_csv(name: str) -> str:
    if name not in FIGURES:
        raise KeyError(f"unknown figure {name!r}; have {FIGURES}")
    return _resource(f"{name}.csv")


def csv_max_deviation(text_a: str, text_b: str) -> float:
    """Max per-cell numeric deviation between two CSV dumps.

    Headers and non-numeric cells must agree exactly; differing shapes or
    labels count as infinite deviation.
    """
    lines_a = text_a.strip().splitlines()
    lines_b = text_b.strip().splitlines()
    if len(lines_a) != len(lines_b) or lines_a[0] != lines_b[0]:
        return float("inf")
    worst = 0.0
    for row_a, row_b in zip(lines_a[1:], lines_b[1:]):
        cells_a = row_a.split(",")
        cells_b = row_b.split(",")
        if len(cells_a) != len(cells_b):
            return float("inf")
        for ca, cb in zip(cells_a, cells_b):
            if ca == cb:
                continue
            try:
                worst = max(worst, abs(float(ca) - float(cb)))
            except ValueError:
                return float("inf")
    return worst
