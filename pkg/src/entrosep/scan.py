"""Bisection for the detection threshold of a criterion along a state family."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .criteria import MU_ALPHA_GRID, ConvolutionPOVM, CriterionReport, conjugate_order, mu_criterion
from .exceptions import ScanError, UsageError
from .states import StateFamily

BISECT_TOL = 1e-8
MONOTONE_SLACK = 1e-9


@dataclass(frozen=True)
class ThresholdResult:
    """``c_star`` is ``None`` when the criterion never fires on the bracket."""

    family: str
    criterion_id: str
    params: dict
    c_star: float | None
    bracket: tuple[float, float] | None
    iterations: int
    prescan: list = field(default_factory=list, compare=False)

    def to_dict(self) -> dict:
        params = {k: ("inf" if isinstance(v, float) and math.isinf(v) else v)
                  for k, v in sorted(self.params.items())}
        return {
            "family": self.family,
            "criterion_id": self.criterion_id,
            "params": params,
            "c_star": self.c_star,
            "bracket": list(self.bracket) if self.bracket else None,
            "iterations": self.iterations,
        }


def margin_curve(family: StateFamily, criterion: Callable[..., CriterionReport],
                 grid) -> list[tuple[float, float]]:
    return [(float(c), criterion(family(float(c))).margin) for c in grid]


def scan_threshold(family: StateFamily, criterion: Callable[..., CriterionReport], *,
                   params: dict | None = None, bracket: tuple[float, float] = (0.0, 1.0),
                   tol: float = BISECT_TOL, prescan_points: int = 11) -> ThresholdResult:
    """Smallest family parameter at which ``criterion`` reports a violation.

    An evenly spaced pre-scan first checks that the margin does not increase
    with the parameter; bisection on the violation flag then narrows the
    bracket to width ``tol``. The returned bracket has a non-violating lower
    end and a violating upper end.
    """
    lo, hi = map(float, bracket)
    if not 0.0 <= lo < hi <= 1.0:
        raise UsageError(f"bracket must satisfy 0 <= lo < hi <= 1, got {bracket}")
    grid = np.linspace(lo, hi, prescan_points)
    reports = [criterion(family(float(c))) for c in grid]
    trace = [(float(c), r.margin) for c, r in zip(grid, reports)]
    margins = np.array([m for _, m in trace])
    if np.any(np.diff(margins) > MONOTONE_SLACK):
        raise ScanError("criterion margin is not monotone in the family parameter", trace)
    cid = reports[0].criterion_id
    params = dict(reports[0].params if params is None else params)
    flags = [r.violated for r in reports]
    if not flags[-1]:
        return ThresholdResult(family.name, cid, params, None, None, 0, trace)
    if flags[0]:
        return ThresholdResult(family.name, cid, params, lo, (lo, lo), 0, trace)
    first = flags.index(True)
    a, b = float(grid[first - 1]), float(grid[first])
    it = 0
    while b - a > tol:
        mid = 0.5 * (a + b)
        if criterion(family(mid)).violated:
            b = mid
        else:
            a = mid
        it += 1
    return ThresholdResult(family.name, cid, params, 0.5 * (a + b), (a, b), it, trace)


def best_mu_threshold(family: StateFamily, m1: ConvolutionPOVM, m2: ConvolutionPOVM,
                      alphas=MU_ALPHA_GRID, kind: str = "renyi"):
    """Scan the Maassen-Uffink test over conjugate order pairs.

    Returns ``(best, results)`` where ``best`` has the smallest threshold;
    ties keep the earlier grid entry.
    """
    results = []
    for a in alphas:
        b = conjugate_order(a)

        def crit(rho, a=a, b=b):
            return mu_criterion(m1, m2, rho, a, b, kind)

        results.append(scan_threshold(family, crit))
    found = [r for r in results if r.c_star is not None]
    best = min(found, key=lambda r: r.c_star) if found else None
    return best, results
