"""Implicit-midpoint integration with conservation monitoring.

The catalog Hamiltonians are non-separable (position-dependent kinetic
forms, cos(phi) potentials), so explicit splitting schemes do not apply;
the implicit midpoint rule is symplectic for arbitrary smooth H.  Steps are
fixed; a step whose midpoint drifts within the guard distance of a domain
boundary or singular locus is rejected rather than silently continued.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Optional

import numpy as np

from .bracket import EvaluationError, PhaseState, gradient
from .models import Model

BOUNDARY_GUARD = 1e-6
_MAX_FIXED_POINT = 50
_MAX_NEWTON = 25


class StepError(RuntimeError):
    """The implicit solve did not converge."""


class BoundaryError(RuntimeError):
    """A step approached a domain endpoint or singular potential locus."""

    def __init__(self, msg: str, distance: float):
        super().__init__(msg)
        self.distance = distance


@dataclass
class Trajectory:
    times: List[float]
    states: List[PhaseState]
    H_values: List[float]
    Q_values: List[float]
    halt: Optional[dict] = None     # set when integration stopped early


@dataclass(frozen=True)
class DriftReport:
    max_abs_dH: float
    max_abs_dQ: float
    steps: int
    rejected_steps: int


def _field(model: Model, chart: str, z):
    s = PhaseState(chart, z[0], z[1], z[2], z[3])
    _, d = gradient(model.H, s)
    return (d[2], d[3], -d[0], -d[1])


def _check_midpoint(model: Model, m):
    dist = model.domain.boundary_distance(m[0], m[1])
    if dist < BOUNDARY_GUARD or not model.domain.contains(m[0], m[1], margin=0.0):
        raise BoundaryError(
            f"midpoint ({m[0]:.6g}, {m[1]:.6g}) within {dist:.3e} of the "
            f"domain boundary (guard {BOUNDARY_GUARD:g})", dist)


def step(model: Model, s: PhaseState, dt: float, tol: float = 1e-13) -> PhaseState:
    """One implicit-midpoint update z' = z + dt X_H((z + z')/2).

    The implicit relation is solved by damped fixed-point iteration to the
    requested residual, with a finite-difference Newton fallback; the
    midpoint is kept clear of the domain boundary.
    """
    if dt == 0.0:
        raise ValueError("dt must be nonzero")
    if tol <= 0.0:
        raise ValueError(f"tol must be positive, got {tol}")
    chart = model.domain.chart
    z = s.components()

    try:
        f0 = _field(model, chart, z)
    except EvaluationError as exc:
        raise BoundaryError(f"initial state is not evaluable: {exc}",
                            model.domain.boundary_distance(z[0], z[1])) from exc
    w = tuple(zi + dt * fi for zi, fi in zip(z, f0))

    prev_res = math.inf
    for _ in range(_MAX_FIXED_POINT):
        m = tuple(0.5 * (zi + wi) for zi, wi in zip(z, w))
        _check_midpoint(model, m)
        fm = _field(model, chart, m)
        w_new = tuple(zi + dt * fi for zi, fi in zip(z, fm))
        res = max(abs(a - b) for a, b in zip(w_new, w))
        scale = 1.0 + max(abs(a) for a in w_new)
        if res > prev_res:
            # diverging: damp the update
            w = tuple(0.5 * (a + b) for a, b in zip(w, w_new))
        else:
            w = w_new
        if res <= tol * scale:
            return PhaseState(chart, *w)
        prev_res = res

    # Newton fallback on R(w) = w - z - dt X_H((z+w)/2)
    wv = np.array(w, dtype=float)
    zv = np.array(z, dtype=float)
    for _ in range(_MAX_NEWTON):
        m = 0.5 * (zv + wv)
        _check_midpoint(model, tuple(m))
        fm = np.array(_field(model, chart, tuple(m)), dtype=float)
        resid = wv - zv - dt * fm
        if float(np.max(np.abs(resid))) <= tol * (1.0 + float(np.max(np.abs(wv)))):
            return PhaseState(chart, *wv)
        jac = np.eye(4)
        h = 1e-7
        for j in range(4):
            mp = m.copy()
            mm = m.copy()
            hj = h * (1.0 + abs(m[j]))
            mp[j] += hj
            mm[j] -= hj
            col = (np.array(_field(model, chart, tuple(mp)))
                   - np.array(_field(model, chart, tuple(mm)))) / (2.0 * hj)
            jac[:, j] -= 0.5 * dt * col
        try:
            delta = np.linalg.solve(jac, resid)
        except np.linalg.LinAlgError as exc:
            raise StepError(f"singular Newton system: {exc}") from exc
        wv = wv - delta
    raise StepError(
        f"implicit midpoint failed to converge at t-step from "
        f"({s.x1:.6g}, {s.x2:.6g}); last residual scale {prev_res:.3e}")


def run(model: Model, s0: PhaseState, dt: float, t_end: float,
        tol: float = 1e-13) -> Trajectory:
    """Fixed-step integration sampling H and Q each step.

    Halts early with a partial trajectory (and a halt record) when a step
    is rejected at the domain boundary; other step failures propagate,
    tagged with the step index.
    """
    if t_end < 0.0:
        raise ValueError(f"t_end must be nonnegative, got {t_end}")
    if not model.domain.contains(s0.x1, s0.x2, margin=0.0) or \
            model.domain.boundary_distance(s0.x1, s0.x2) < BOUNDARY_GUARD:
        raise BoundaryError(
            f"initial state ({s0.x1:.6g}, {s0.x2:.6g}) is outside the domain "
            f"or within the boundary guard",
            model.domain.boundary_distance(s0.x1, s0.x2))
    n_steps = int(round(t_end / dt)) if t_end > 0.0 else 0
    traj = Trajectory([0.0], [s0], [model.H(s0)], [model.Q(s0)])
    s = s0
    for k in range(n_steps):
        try:
            s = step(model, s, dt, tol)
        except BoundaryError as exc:
            traj.halt = {"step": k, "reason": str(exc), "distance": exc.distance}
            return traj
        except StepError as exc:
            raise StepError(f"step {k}: {exc}") from exc
        traj.times.append((k + 1) * dt)
        traj.states.append(s)
        traj.H_values.append(model.H(s))
        traj.Q_values.append(model.Q(s))
    return traj


def drift_report(traj: Trajectory) -> DriftReport:
    """Max absolute deviations of H and Q from their initial values."""
    if not traj.times:
        raise ValueError("empty trajectory")
    h0 = traj.H_values[0]
    q0 = traj.Q_values[0]
    dh = max(abs(h - h0) for h in traj.H_values)
    dq = max(abs(q - q0) for q in traj.Q_values)
    rejected = 1 if traj.halt is not None else 0
    return DriftReport(dh, dq, len(traj.times) - 1, rejected)
