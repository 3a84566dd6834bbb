"""Phase-space states, observables, and Poisson brackets.

An observable is a chart-tagged scalar function on phase space whose
evaluator is generic over plain floats and dual scalars.  The canonical
bracket {f,g} = sum_i (df/dx^i dg/dP_i - df/dP_i dg/dx^i) is computed from
one dual evaluation of each observable; a central-difference version is
kept alongside as an independent oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

from .duals import DualScalar, seed_state

CHARTS = ("zeta-phi", "u-phi", "theta-phi", "cartesian")


class ChartMismatchError(ValueError):
    pass


class EvaluationError(RuntimeError):
    """An observable's evaluator hit a point outside its mathematical domain."""


@dataclass(frozen=True)
class PhaseState:
    """A point of T*M in a named chart: coordinates (x1, x2), momenta (p1, p2)."""

    chart: str
    x1: float
    x2: float
    p1: float
    p2: float

    def __post_init__(self):
        if self.chart not in CHARTS:
            raise ValueError(f"unknown chart {self.chart!r}; expected one of {CHARTS}")
        for name in ("x1", "x2", "p1", "p2"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"non-finite component {name}={getattr(self, name)}")

    def components(self):
        return (self.x1, self.x2, self.p1, self.p2)


@dataclass(frozen=True)
class Observable:
    """Deterministic scalar function of a PhaseState, dual- or float-valued."""

    chart: str
    evaluator: Callable
    name: str
    form: str = ""

    def __call__(self, s: PhaseState) -> float:
        _check_chart(self, s)
        return _guard(self, self.evaluator, s.x1, s.x2, s.p1, s.p2)


def _check_chart(obs: Observable, s: PhaseState):
    if obs.chart != s.chart:
        raise ChartMismatchError(
            f"observable {obs.name!r} lives on chart {obs.chart!r}, state is on {s.chart!r}")


def _guard(obs, fn, *args):
    try:
        return fn(*args)
    except (ZeroDivisionError, ValueError, OverflowError) as exc:
        raise EvaluationError(f"evaluating {obs.name!r}: {exc}") from exc


def gradient(obs: Observable, s: PhaseState):
    """(value, (d/dx1, d/dx2, d/dp1, d/dp2)) from one dual evaluation."""
    _check_chart(obs, s)
    r = _guard(obs, obs.evaluator, *seed_state(s.x1, s.x2, s.p1, s.p2))
    if isinstance(r, DualScalar):
        return r.v, r.gradient
    return r, (0.0, 0.0, 0.0, 0.0)


def poisson_bracket(f: Observable, g: Observable, s: PhaseState) -> float:
    """Canonical bracket {f, g} at s via dual-number gradients."""
    if f.chart != g.chart:
        raise ChartMismatchError(
            f"bracket of {f.name!r} ({f.chart}) with {g.name!r} ({g.chart})")
    _, df = gradient(f, s)
    _, dg = gradient(g, s)
    return (df[0] * dg[2] - df[2] * dg[0]) + (df[1] * dg[3] - df[3] * dg[1])


def bracket_scale(f: Observable, g: Observable, s: PhaseState) -> float:
    """Scale factor 1 + |grad f| |grad g| for relative bracket tolerances."""
    _, df = gradient(f, s)
    _, dg = gradient(g, s)
    nf = math.sqrt(sum(d * d for d in df))
    ng = math.sqrt(sum(d * d for d in dg))
    return 1.0 + nf * ng


def scaled_bracket(f: Observable, g: Observable, s: PhaseState) -> float:
    """|{f,g}| / (1 + |grad f| |grad g|), the gate quantity."""
    if f.chart != g.chart:
        raise ChartMismatchError(
            f"bracket of {f.name!r} ({f.chart}) with {g.name!r} ({g.chart})")
    _, df = gradient(f, s)
    _, dg = gradient(g, s)
    br = (df[0] * dg[2] - df[2] * dg[0]) + (df[1] * dg[3] - df[3] * dg[1])
    nf = math.sqrt(sum(d * d for d in df))
    ng = math.sqrt(sum(d * d for d in dg))
    return abs(br) / (1.0 + nf * ng)


def _fd_gradient(obs: Observable, s: PhaseState, h: float):
    base = list(s.components())
    grad = []
    for i in range(4):
        hi = h * (1.0 + abs(base[i]))
        plus = list(base)
        minus = list(base)
        plus[i] += hi
        minus[i] -= hi
        fp = _guard(obs, obs.evaluator, *plus)
        fm = _guard(obs, obs.evaluator, *minus)
        grad.append((fp - fm) / (2.0 * hi))
    return tuple(grad)


def poisson_bracket_oracle(f: Observable, g: Observable, s: PhaseState,
                           h: float = 1e-5) -> float:
    """Bracket via central finite differences: the independent check path."""
    if h <= 0.0:
        raise ValueError(f"step size must be positive, got h={h}")
    if f.chart != g.chart:
        raise ChartMismatchError(
            f"bracket of {f.name!r} ({f.chart}) with {g.name!r} ({g.chart})")
    _check_chart(f, s)
    df = _fd_gradient(f, s, h)
    dg = _fd_gradient(g, s, h)
    return (df[0] * dg[2] - df[2] * dg[0]) + (df[1] * dg[3] - df[3] * dg[1])


def hamiltonian_vector_field(hobs: Observable, s: PhaseState):
    """(dx1/dt, dx2/dt, dp1/dt, dp2/dt) = (dH/dp1, dH/dp2, -dH/dx1, -dH/dx2)."""
    _, d = gradient(hobs, s)
    return (d[2], d[3], -d[0], -d[1])


def coordinate(chart: str, index: int, name: str = "") -> Observable:
    """Coordinate/momentum projections, mostly for tests and oracles."""
    fns = [lambda x1, x2, p1, p2: x1, lambda x1, x2, p1, p2: x2,
           lambda x1, x2, p1, p2: p1, lambda x1, x2, p1, p2: p2]
    labels = ("x1", "x2", "p1", "p2")
    return Observable(chart, fns[index], name or labels[index])
