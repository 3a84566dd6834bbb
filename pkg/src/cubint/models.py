"""Catalog of integrable (H, Q) pairs on S^2, H^2, R^2 and their zeta charts.

Each family transcribes one closed-form system: a Hamiltonian H built from
a cubic F and its companion quartic G (or their transformed-chart images)
together with a momentum-cubic first integral Q.  Every built model must
pass the bracket gate |{H,Q}| <= tol * (1 + |grad H||grad Q|) on sampled
admissible states.  Because the transformed charts are stated up to overall
scalings, a literal transcription that fails the gate triggers a one-time
least-squares fit of per-term-group scalings (kinetic / alpha / beta on the
H side), which is then re-tested and recorded in the model's provenance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Dict, Optional

import numpy as np

from . import classify as _classify
from .bracket import Observable, PhaseState, gradient, scaled_bracket
from .duals import DualScalar, cbrt, cos, cosh, sin, sinh, sqrt, tanh
from .elliptic import complete_elliptic_k, jacobi_s
from .polynomials import CubicPoly, companion_g, cubic_real_roots

GATE_TOL = 1e-9
_GATE_SEED = 0xC0B1


class BuildError(ValueError):
    """A family's parameter constraints are violated."""


class PresetError(KeyError):
    """Unknown preset name."""


class Family(str, Enum):
    Q0_ZETA = "q0-zeta"
    Q0_SPHERE = "q0-sphere"
    Q0_HYPERBOLIC = "q0-hyperbolic"
    P0_HYPERBOLIC = "p0-hyperbolic"
    P0_SPHERE = "p0-sphere"
    P0_PLANE = "p0-plane"
    PPOS_ZETA = "ppos-zeta"
    PPOS_SPHERE = "ppos-sphere"
    PPOS_HYPERBOLIC = "ppos-hyperbolic"
    PNEG_ZETA = "pneg-zeta"
    PNEG_SPHERE_ELLIPTIC = "pneg-sphere-elliptic"
    PNEG_SPHERE_TRIG = "pneg-sphere-trig"
    DULLIN_MATVEEV = "dullin-matveev"
    GORYACHEV_CHAPLYGIN = "goryachev-chaplygin"
    GORYACHEV = "goryachev"
    PNEG_HYPERBOLIC = "pneg-hyperbolic"


@dataclass(frozen=True)
class CoordRange:
    """One chart coordinate: open interval, optional periodicity/exclusions."""

    lo: float
    hi: float
    periodic: bool = False
    cap: float = 3.0                 # sampling window edge when lo/hi infinite
    excluded: tuple = ()             # ((center, half_width), ...) singular loci

    def sampling_bounds(self, guard: float):
        lo = -self.cap if math.isinf(self.lo) else self.lo + guard
        hi = self.cap if math.isinf(self.hi) else self.hi - guard
        return lo, hi

    def admits(self, x: float, margin: float) -> bool:
        if self.periodic:
            return True
        if not (self.lo + margin < x < self.hi - margin):
            return False
        return all(abs(x - c) > w for c, w in self.excluded)

    def boundary_distance(self, x: float) -> float:
        if self.periodic:
            return math.inf
        d = math.inf
        if math.isfinite(self.lo):
            d = min(d, x - self.lo)
        if math.isfinite(self.hi):
            d = min(d, self.hi - x)
        for c, _ in self.excluded:
            d = min(d, abs(x - c))
        return d


@dataclass(frozen=True)
class Domain:
    """Admissible chart region: per-coordinate ranges plus a sampling guard."""

    chart: str
    x1: CoordRange
    x2: CoordRange
    guard: float = 1e-6

    def contains(self, x1: float, x2: float, margin: Optional[float] = None) -> bool:
        m = self.guard if margin is None else margin
        return self.x1.admits(x1, m) and self.x2.admits(x2, m)

    def boundary_distance(self, x1: float, x2: float) -> float:
        return min(self.x1.boundary_distance(x1), self.x2.boundary_distance(x2))

    def sample_positions(self, rng, n: int):
        lo1, hi1 = self.x1.sampling_bounds(self.guard)
        lo2, hi2 = self.x2.sampling_bounds(self.guard)
        out = []
        while len(out) < n:
            a = rng.uniform(lo1, hi1)
            b = rng.uniform(lo2, hi2)
            if all(abs(a - c) > w for c, w in self.x1.excluded) and \
               all(abs(b - c) > w for c, w in self.x2.excluded):
                out.append((a, b))
        return out

    def sample_states(self, rng, n: int, momentum_scale: float = 1.0):
        pos = self.sample_positions(rng, n)
        mom = rng.normal(0.0, momentum_scale, size=(n, 2))
        return [PhaseState(self.chart, a, b, float(pa), float(pb))
                for (a, b), (pa, pb) in zip(pos, mom)]

    def describe(self) -> dict:
        def one(c: CoordRange):
            return {"lo": c.lo, "hi": c.hi, "periodic": c.periodic,
                    "excluded": [list(e) for e in c.excluded]}
        return {"chart": self.chart, "x1": one(self.x1), "x2": one(self.x2)}


_PHI = CoordRange(0.0, 2.0 * math.pi, periodic=True)


@dataclass(frozen=True)
class ModelSpec:
    """Family selector plus its parameter record (couplings included)."""

    family: Family
    params: Dict[str, float] = field(default_factory=dict)

    def get(self, key, default=None):
        return self.params.get(key, default)


@dataclass(frozen=True)
class Model:
    spec: ModelSpec
    H: Observable
    Q: Observable
    domain: Domain
    conformal_factor: Callable[[float, float], float]
    provenance: dict


# ---------------------------------------------------------------------------
# generator algebras

def lie_generators(kind: str):
    """The momentum-linear generator triple: so3 on theta-phi, so21 on u-phi."""
    if kind == "so3":
        def l1(t, f, pt, pf):
            return sin(f) * pt + cos(f) * (cos(t) / sin(t)) * pf

        def l2(t, f, pt, pf):
            return cos(f) * pt - sin(f) * (cos(t) / sin(t)) * pf

        def l3(t, f, pt, pf):
            return pf + 0.0 * pt
        return (Observable("theta-phi", l1, "L1", "so3"),
                Observable("theta-phi", l2, "L2", "so3"),
                Observable("theta-phi", l3, "L3", "so3"))
    if kind == "so21":
        def m1(u, f, pu, pf):
            return sin(f) * pu + cos(f) * (cosh(u) / sinh(u)) * pf

        def m2(u, f, pu, pf):
            return cos(f) * pu - sin(f) * (cosh(u) / sinh(u)) * pf

        def m3(u, f, pu, pf):
            return pf + 0.0 * pu
        return (Observable("u-phi", m1, "M1", "so21"),
                Observable("u-phi", m2, "M2", "so21"),
                Observable("u-phi", m3, "M3", "so21"))
    raise ValueError(f"unknown generator kind {kind!r}; expected 'so3' or 'so21'")


# ---------------------------------------------------------------------------
# family builders
#
# Each builder validates params and returns
#   (make_H, make_Q, domain, form, couplings, q_structure)
# where make_H(lk, la, lb) closes over the term-group scalings and
# make_Q(H_fn) closes over the (possibly rescaled) Hamiltonian.

def _require(cond: bool, msg: str):
    if not cond:
        raise BuildError(msg)


def _zeta_interval(F: CubicPoly, need_positive_zeta: bool) -> CoordRange:
    """Widest sampling interval with F > 0 (and zeta > 0 when required)."""
    G = companion_g(F)
    weight = "zeta-factor" if need_positive_zeta else "none"
    interval, _, _ = _classify.positivity_interval(F, G, weight)
    if interval is not None:
        lo, hi = interval
        if not need_positive_zeta or lo >= 0.0:
            return CoordRange(lo, hi, cap=(lo + 3.0 if math.isinf(hi) else 3.0))
    # fall back to the rightmost region where F (and zeta) stay positive
    roots = [r for r, _ in cubic_real_roots(F).real]
    lo = max(roots) if roots else 0.0
    if need_positive_zeta:
        lo = max(lo, 0.0)
    if F(lo + 1.0) <= 0.0:
        raise BuildError("no admissible zeta interval with F > 0")
    return CoordRange(lo, math.inf, cap=lo + 3.0)


def _mk_q0_zeta(p):
    c0 = float(p.get("c0", 0.0))
    rho0 = float(p.get("rho0", 0.0))
    chi0 = float(p.get("chi0", 0.0))
    beta0 = float(p.get("beta0", 0.0))
    F = CubicPoly(-2.0 * rho0, 3.0 * c0, 0.0, 1.0)
    G = companion_g(F)
    Fd = F.derivative()

    def make_h(lk, la, lb):
        def h(z, f, pz, pf):
            fv = F(z)
            kin = 0.5 * (fv * pz * pz + (G(z) / (4.0 * fv)) * pf * pf)
            return lk * kin + la * (chi0 * sqrt(fv) * cos(f)) + lb * (-beta0 * z)
        return h

    def make_q(_h):
        def q(z, f, pz, pf):
            sf = sqrt(F(z))
            return (pf ** 3
                    - 2.0 * chi0 * (sf * sin(f) * pz + (Fd(z) / (2.0 * sf)) * cos(f) * pf)
                    + 2.0 * beta0 * pf)
        return q

    cls = _classify.classify_q0(c0, rho0)
    if cls.manifold != "none" and cls.interval is not None:
        rng1 = CoordRange(cls.interval[0], cls.interval[1])
    else:
        rng1 = _zeta_interval(F, need_positive_zeta=False)
    dom = Domain("zeta-phi", rng1, _PHI)
    return make_h, make_q, dom, "zeta-cubic", {"alpha": chi0, "beta": beta0}, (1.0, 0.0)


def _elliptic_kin(u, pu, pf, k2):
    """Common elliptic-chart kinetic data: (s,c,d), s*c*d, and D/(scd)^2."""
    s, c, d = jacobi_s(u, k2)
    scd = s * c * d
    s2 = s * s
    s4 = s2 * s2
    dd = (1.0 - k2 * s4) ** 2 - 4.0 * k2 * s4 * (c * c) * (d * d)
    return s, c, d, scd, dd


def _scd_ratio(s, c, d, k2):
    """(s c d)'/(s c d) with ' = d/du."""
    return ((c * c) * (d * d) - (s * s) * (d * d) - k2 * (s * s) * (c * c)) / (s * c * d)


def _mk_q0_sphere(p):
    if "k2" in p:
        k2 = float(p["k2"])
    else:
        z0, z1, z2 = (float(p["zeta0"]), float(p["zeta1"]), float(p["zeta2"]))
        _require(z0 < z1 < z2, f"requires zeta0 < zeta1 < zeta2, got {z0}, {z1}, {z2}")
        k2 = (z1 - z0) / (z2 - z0)
    _require(0.0 < k2 < 1.0, f"requires modulus parameter in (0,1), got k2={k2}")
    chi0 = float(p.get("chi0", 0.0))
    beta0 = float(p.get("beta0", 0.0))
    kq = complete_elliptic_k(k2)

    def make_h(lk, la, lb):
        def h(u, f, pu, pf):
            s, c, d, scd, dd = _elliptic_kin(u, pu, pf, k2)
            kin = 0.5 * (pu * pu + dd / (scd * scd) * pf * pf)
            return (lk * kin + la * (chi0 * k2 * scd * cos(f))
                    + lb * (-beta0 * k2 * s * s))
        return h

    def make_q(_h):
        def q(u, f, pu, pf):
            s, c, d = jacobi_s(u, k2)
            ratio = _scd_ratio(s, c, d, k2)
            return (4.0 * pf ** 3
                    - chi0 * (sin(f) * pu + ratio * cos(f) * pf)
                    + 2.0 * beta0 * pf)
        return q

    dom = Domain("u-phi", CoordRange(0.0, kq), _PHI)
    return make_h, make_q, dom, "elliptic-sphere", {"alpha": chi0, "beta": beta0}, (4.0, 0.0)


def _m_kinetic(u, f, pu, pf):
    """M1^2 + M2^2 - (1 - 3/C^2) M3^2 on the u-phi chart."""
    t = tanh(u)
    c = cosh(u)
    m1 = sin(f) * pu + (cos(f) / t) * pf
    m2 = cos(f) * pu - (sin(f) / t) * pf
    return m1 * m1 + m2 * m2 - (1.0 - 3.0 / (c * c)) * pf * pf


def _mk_q0_hyperbolic(p):
    zeta1 = float(p.get("zeta1", 1.0))
    _require(zeta1 > 0.0, f"requires zeta1 > 0, got zeta1={zeta1}")
    chi0 = float(p.get("chi0", 0.0))
    beta0 = float(p.get("beta0", 0.0))

    def make_h(lk, la, lb):
        def h(u, f, pu, pf):
            t = tanh(u)
            return (lk * _m_kinetic(u, f, pu, pf)
                    + la * (chi0 * t * (1.0 - t * t) * cos(f))
                    + lb * (-beta0 * t * t))
        return h

    def make_q(_h):
        def q(u, f, pu, pf):
            t = tanh(u)
            m1 = sin(f) * pu + (cos(f) / t) * pf
            return (4.0 * pf ** 3
                    - chi0 * (m1 - 3.0 * t * cos(f) * pf)
                    + 2.0 * beta0 * pf)
        return q

    dom = Domain("u-phi", CoordRange(0.0, math.inf, cap=3.0), _PHI)
    return (make_h, make_q, dom, "hyperbolic-double-root",
            {"alpha": chi0, "beta": beta0}, (4.0, 0.0))


def _mk_p0_hyperbolic(p):
    rho = float(p.get("rho", 1.0))
    _require(rho > -1.0, f"requires rho > -1, got rho={rho}")
    alpha = float(p.get("alpha", 0.0))
    beta = float(p.get("beta", 0.0))

    def make_h(lk, la, lb):
        def h(u, f, pu, pf):
            t = tanh(u)
            m1 = sin(f) * pu + (cos(f) / t) * pf
            m2 = cos(f) * pu - (sin(f) / t) * pf
            den = rho + cosh(u)
            kin = 0.5 * (m1 * m1 + m2 * m2 - pf * pf) / den
            return lk * kin + la * (alpha * sinh(u) * cos(f) / den) + lb * (beta / den)
        return h

    def make_q(h):
        def q(u, f, pu, pf):
            m1 = sin(f) * pu + (cos(f) / tanh(u)) * pf
            return h(u, f, pu, pf) * pf - alpha * m1
        return q

    dom = Domain("u-phi", CoordRange(0.0, math.inf, cap=3.0), _PHI)
    return (make_h, make_q, dom, "conformal-hyperbolic",
            {"alpha": alpha, "beta": beta}, (0.0, 1.0))


def _mk_p0_sphere(p):
    rho = float(p.get("rho", 0.5))
    _require(0.0 < rho < 1.0, f"requires rho in (0,1), got rho={rho}")
    alpha = float(p.get("alpha", 0.0))
    beta = float(p.get("beta", 0.0))

    def make_h(lk, la, lb):
        def h(t, f, pt, pf):
            st = sin(t)
            cot = cos(t) / st
            l1 = sin(f) * pt + cos(f) * cot * pf
            l2 = cos(f) * pt - sin(f) * cot * pf
            den = 1.0 + rho * cos(t)
            kin = 0.5 * (l1 * l1 + l2 * l2 + pf * pf) / den
            return (lk * kin + la * (alpha * rho * st * cos(f) / den)
                    + lb * (beta / den))
        return h

    def make_q(h):
        def q(t, f, pt, pf):
            l1 = sin(f) * pt + cos(f) * (cos(t) / sin(t)) * pf
            return h(t, f, pt, pf) * pf + alpha * l1
        return q

    dom = Domain("theta-phi", CoordRange(0.0, math.pi), _PHI)
    return (make_h, make_q, dom, "conformal-sphere",
            {"alpha": alpha, "beta": beta}, (0.0, 1.0))


def _mk_p0_plane(p):
    rho = float(p.get("rho", 1.0))
    _require(rho > 0.0, f"requires rho > 0, got rho={rho}")
    alpha = float(p.get("alpha", 0.0))
    beta = float(p.get("beta", 0.0))
    r2 = rho * rho

    def make_h(lk, la, lb):
        def h(x, y, px, py):
            den = 1.0 + r2 * (x * x + y * y)
            kin = 0.5 * (px * px + py * py) / den
            return lk * kin + la * (2.0 * alpha * r2 * x / den) + lb * (beta / den)
        return h

    def make_q(h):
        def q(x, y, px, py):
            lz = x * py - y * px
            return h(x, y, px, py) * lz - alpha * py
        return q

    dom = Domain("cartesian",
                 CoordRange(-math.inf, math.inf, cap=3.0),
                 CoordRange(-math.inf, math.inf, cap=3.0))
    return (make_h, make_q, dom, "flat-plane",
            {"alpha": alpha, "beta": beta}, (0.0, 1.0))


def _mk_eps_zeta(p, eps: int):
    c0 = float(p.get("c0", 0.0))
    c1 = float(p.get("c1", 0.0))
    c2 = float(p.get("c2", 0.0))
    alpha = float(p.get("alpha", 0.0))
    beta = float(p.get("beta", 0.0))
    F = CubicPoly(eps * c0, eps * c1, eps * c2, float(eps))
    G = companion_g(F)
    Fd = F.derivative()

    def make_h(lk, la, lb):
        def h(z, f, pz, pf):
            fv = F(z)
            kin = (fv * pz * pz + (G(z) / (4.0 * fv)) * pf * pf) / (2.0 * z)
            return (lk * kin + la * (alpha * sqrt(fv) / z * cos(f))
                    + lb * (beta / z))
        return h

    def make_q(h):
        def q(z, f, pz, pf):
            sf = sqrt(F(z))
            return (eps * pf ** 3 + 2.0 * h(z, f, pz, pf) * pf
                    - 2.0 * alpha * (sf * sin(f) * pz
                                     + (Fd(z) / (2.0 * sf)) * cos(f) * pf))
        return q

    dom = Domain("zeta-phi", _zeta_interval(F, need_positive_zeta=True), _PHI)
    form = "zeta-cubic-conformal" if eps > 0 else "zeta-cubic-conformal-mirror"
    return make_h, make_q, dom, form, {"alpha": alpha, "beta": beta}, (float(eps), 2.0)


def _mk_ppos_sphere(p):
    z0, z1, z2 = (float(p["zeta0"]), float(p["zeta1"]), float(p["zeta2"]))
    _require(0.0 < z0 < z1 < z2,
             f"requires 0 < zeta0 < zeta1 < zeta2, got {z0}, {z1}, {z2}")
    alpha = float(p.get("alpha", 0.0))
    beta = float(p.get("beta", 0.0))
    k2 = (z1 - z0) / (z2 - z0)
    rho = z0 / (z2 - z0)
    kq = complete_elliptic_k(k2)

    def make_h(lk, la, lb):
        def h(u, f, pu, pf):
            s, c, d, scd, dd = _elliptic_kin(u, pu, pf, k2)
            zp = rho + k2 * s * s
            kin = (pu * pu + dd / (scd * scd) * pf * pf) / (2.0 * zp)
            return (lk * kin + la * (alpha * k2 * scd * cos(f) / zp)
                    + lb * (beta / zp))
        return h

    def make_q(h):
        def q(u, f, pu, pf):
            s, c, d = jacobi_s(u, k2)
            ratio = _scd_ratio(s, c, d, k2)
            return (4.0 * pf ** 3 + 2.0 * h(u, f, pu, pf) * pf
                    - alpha * (sin(f) * pu + ratio * cos(f) * pf))
        return q

    dom = Domain("u-phi", CoordRange(0.0, kq), _PHI)
    return (make_h, make_q, dom, "elliptic-sphere-conformal",
            {"alpha": alpha, "beta": beta}, (4.0, 2.0))


def _mk_ppos_hyperbolic(p):
    if "rho" in p:
        rho = float(p["rho"])
        _require(rho > 0.0, f"requires rho > 0, got rho={rho}")
    else:
        z0, z1 = float(p["zeta0"]), float(p["zeta1"])
        _require(0.0 < z0 < z1, f"requires 0 < zeta0 < zeta1, got {z0}, {z1}")
        rho = z0 / (z1 - z0)
    alpha = float(p.get("alpha", 0.0))
    beta = float(p.get("beta", 0.0))

    def make_h(lk, la, lb):
        def h(u, f, pu, pf):
            t = tanh(u)
            zp = rho + t * t
            kin = _m_kinetic(u, f, pu, pf) / (2.0 * zp)
            return (lk * kin + la * (alpha * t * (1.0 - t * t) * cos(f) / zp)
                    + lb * (beta / zp))
        return h

    def make_q(h):
        def q(u, f, pu, pf):
            t = tanh(u)
            m1 = sin(f) * pu + (cos(f) / t) * pf
            return (4.0 * pf ** 3 + 2.0 * h(u, f, pu, pf) * pf
                    - alpha * (m1 - 3.0 * t * cos(f) * pf))
        return q

    dom = Domain("u-phi", CoordRange(0.0, math.inf, cap=3.0), _PHI)
    return (make_h, make_q, dom, "hyperbolic-double-root-conformal",
            {"alpha": alpha, "beta": beta}, (4.0, 2.0))


def _mk_pneg_sphere_elliptic(p):
    z0, z1, z2 = (float(p["zeta0"]), float(p["zeta1"]), float(p["zeta2"]))
    _require(z0 < z1 < z2, f"requires zeta0 < zeta1 < zeta2, got {z0}, {z1}, {z2}")
    _require(z1 > 0.0, f"requires zeta1 > 0, got zeta1={z1}")
    alpha = float(p.get("alpha", 0.0))
    beta = float(p.get("beta", 0.0))
    k2 = (z2 - z1) / (z2 - z0)
    rho = z2 / (z2 - z1)
    kq = complete_elliptic_k(k2)

    def make_h(lk, la, lb):
        def h(u, f, pu, pf):
            s, c, d, scd, dd = _elliptic_kin(u, pu, pf, k2)
            zm = k2 * (rho - s * s)
            kin = (pu * pu + dd / (scd * scd) * pf * pf) / (2.0 * zm)
            return (lk * kin + la * (alpha * k2 * scd * cos(f) / zm)
                    + lb * (beta / zm))
        return h

    def make_q(h):
        def q(u, f, pu, pf):
            s, c, d = jacobi_s(u, k2)
            ratio = _scd_ratio(s, c, d, k2)
            return (-4.0 * pf ** 3 + 2.0 * h(u, f, pu, pf) * pf
                    + alpha * (sin(f) * pu + ratio * cos(f) * pf))
        return q

    dom = Domain("u-phi", CoordRange(0.0, kq), _PHI)
    return (make_h, make_q, dom, "elliptic-sphere-mirror",
            {"alpha": alpha, "beta": beta}, (-4.0, 2.0))


def _trig_shape(p):
    """(S, M, zeta0) for the trig-sphere family from its root data.

    S and M are the scaled symmetric functions of the non-real-axis roots:
    S = (z1 + z2)/z0, M = z1 z2 / z0^2 (conjugates for the complex case).
    """
    if "re" in p or "im" in p:
        a, b = float(p["re"]), float(p["im"])
        _require(b != 0.0, "complex pair requires im != 0")
        cands = _classify.solve_zeta0(complex_pair=(a, b))
        _require(bool(cands), "no positive zeta0 for the supplied complex pair")
        z0 = p.get("zeta0", cands[0])
        ssum, mprod = 2.0 * a, a * a + b * b
    elif "zeta2" in p:
        z1, z2 = float(p["zeta1"]), float(p["zeta2"])
        _require(0.0 < z1 < z2, f"requires 0 < zeta1 < zeta2, got {z1}, {z2}")
        z0 = p.get("zeta0", _classify.solve_zeta0(real_pair=(z1, z2))[0])
        ssum, mprod = z1 + z2, z1 * z2
    else:
        z1 = float(p["zeta1"])
        _require(z1 > 0.0, f"degenerate case requires zeta1 > 0, got {z1}")
        z0 = p.get("zeta0", _classify.solve_zeta0(degenerate=z1)[0])
        ssum, mprod = 2.0 * z1, z1 * z1
    z0 = float(z0)
    _require(z0 > 0.0, f"requires zeta0 > 0, got zeta0={z0}")
    # G(0) = 0 is the structural constraint of this family.
    c2m = -(ssum + z0)
    c1m = mprod + ssum * z0
    c0m = -mprod * z0
    g0 = c1m * c1m - 4.0 * c0m * c2m
    scale = 1.0 + c1m * c1m + abs(c0m * c2m)
    _require(abs(g0) <= 1e-9 * scale,
             f"requires G(0) = 0; got G(0) = {g0} for zeta0={z0}")
    return ssum / z0, mprod / (z0 * z0), z0


def _mk_pneg_sphere_trig(p):
    ssum, mprod, z0 = _trig_shape(p)
    alpha = float(p.get("alpha", 0.0))
    beta = float(p.get("beta", 0.0))
    c43 = (4.0 / 3.0) * (1.0 + ssum)
    c23 = 2.0 * (ssum + mprod)
    c00 = 4.0 * mprod

    def fhat_parts(mu):
        w = cbrt(mu * mu)
        den = w * w + w + 1.0
        fh = (w * w - ssum * w + mprod) / den
        return w, den, fh

    def make_h(lk, la, lb):
        def h(t, f, pt, pf):
            st = sin(t)
            mu = cos(t)
            w, _, fh = fhat_parts(mu)
            hh = -(mu * mu) * 1.0 + c43 * w * w - c23 * w + c00
            cot = mu / st
            l1 = sin(f) * pt + cos(f) * cot * pf
            l2 = cos(f) * pt - sin(f) * cot * pf
            kin = (0.5 * fh * (l1 * l1 + l2 * l2)
                   + 0.5 * (hh / (3.0 * fh) - mu * mu * fh) * (pf * pf) / (st * st))
            return (lk * kin + la * (alpha * st * sqrt(fh) / w * cos(f))
                    + lb * (beta / w))
        return h

    def make_q(h):
        def q(t, f, pt, pf):
            st = sin(t)
            mu = cos(t)
            w, den, fh = fhat_parts(mu)
            # d fhat / d mu, via w = mu^(2/3)
            dfdw = ((2.0 * w - ssum) * den - (w * w - ssum * w + mprod) * (2.0 * w + 1.0)) / (den * den)
            dwdmu = (2.0 / 3.0) / cbrt(mu)
            sqf = sqrt(fh)
            dsqf_dt = -st * dfdw * dwdmu / (2.0 * sqf)
            l1 = sin(f) * pt + cos(f) * (mu / st) * pf
            return (-(4.0 / 9.0) * pf ** 3 + 2.0 * h(t, f, pt, pf) * pf
                    + 3.0 * alpha * cbrt(mu) * (sqf * l1 + dsqf_dt * cos(f) * pf))
        return q

    dom = Domain("theta-phi",
                 CoordRange(0.0, math.pi, excluded=((math.pi / 2.0, 1e-2),)),
                 _PHI)
    return (make_h, make_q, dom, "trig-sphere",
            {"alpha": alpha, "beta": beta}, (-4.0 / 9.0, 2.0))


def _mk_dullin_matveev(p):
    if "rho" in p:
        rho = float(p["rho"])
    else:
        z1, z2 = float(p["zeta1"]), float(p["zeta2"])
        _require(0.0 < z1 < z2, f"requires 0 < zeta1 < zeta2, got {z1}, {z2}")
        rho = (z2 + z1) / (z2 - z1)
    _require(rho > 1.0, f"requires rho > 1, got rho={rho}")
    alpha = float(p.get("alpha", 0.0))
    beta = float(p.get("beta", 0.0))

    def make_h(lk, la, lb):
        def h(t, f, pt, pf):
            st = sin(t)
            mu = cos(t)
            uu = rho + mu
            gdm = (3.0 * mu * mu + 4.0 * rho * mu + 1.0) / (4.0 * uu * uu)
            kin = 0.5 * (pt * pt + (1.0 / (st * st) + gdm) * pf * pf)
            return (lk * kin + la * (alpha * st * cos(f) / sqrt(uu))
                    + lb * (beta / uu))
        return h

    def make_q(h):
        def q(t, f, pt, pf):
            st = sin(t)
            mu = cos(t)
            uu = rho + mu
            su = sqrt(uu)
            dterm = (2.0 * uu * mu - st * st) / (2.0 * st * su)
            return (-pf ** 3 + 2.0 * h(t, f, pt, pf) * pf
                    + 2.0 * alpha * su * sin(f) * pt
                    + 2.0 * alpha * dterm * cos(f) * pf)
        return q

    dom = Domain("theta-phi", CoordRange(0.0, math.pi), _PHI)
    return (make_h, make_q, dom, "dullin-matveev",
            {"alpha": alpha, "beta": beta}, (-1.0, 2.0))


def _mk_goryachev_chaplygin(p):
    alpha = float(p.get("alpha", 0.0))
    beta = float(p.get("beta", 0.0))
    rp2 = bool(p.get("rp2", False))

    def make_h(lk, la, lb):
        def h(t, f, pt, pf):
            st = sin(t)
            ct = cos(t)
            cot = ct / st
            l1 = sin(f) * pt + cos(f) * cot * pf
            l2 = cos(f) * pt - sin(f) * cot * pf
            kin = 0.5 * (l1 * l1 + l2 * l2 + 4.0 * pf * pf)
            return (lk * kin + la * (alpha * st * cos(f))
                    + lb * (beta / (ct * ct)))
        return h

    def make_q(h):
        def q(t, f, pt, pf):
            st = sin(t)
            ct = cos(t)
            l1 = sin(f) * pt + cos(f) * (ct / st) * pf
            return (-4.0 * pf ** 3 + 2.0 * h(t, f, pt, pf) * pf
                    + alpha * (ct * l1 - 2.0 * st * cos(f) * pf))
        return q

    hi = math.pi / 2.0 if rp2 else math.pi
    excl = ((math.pi / 2.0, 1e-2),) if (beta != 0.0 and not rp2) else ()
    dom = Domain("theta-phi", CoordRange(0.0, hi, excluded=excl), _PHI)
    return (make_h, make_q, dom, "goryachev-chaplygin",
            {"alpha": alpha, "beta": beta}, (-4.0, 2.0))


def _mk_goryachev(p):
    alpha = float(p.get("alpha", 0.0))
    beta = float(p.get("beta", 0.0))

    def make_h(lk, la, lb):
        def h(t, f, pt, pf):
            st = sin(t)
            mu = cos(t)
            w = cbrt(mu * mu)
            cot = mu / st
            l1 = sin(f) * pt + cos(f) * cot * pf
            l2 = cos(f) * pt - sin(f) * cot * pf
            kin = 0.5 * (l1 * l1 + l2 * l2 + (4.0 / 3.0) * pf * pf)
            return (lk * kin + la * (alpha * st * cos(f) / w) + lb * (beta / w))
        return h

    def make_q(h):
        def q(t, f, pt, pf):
            st = sin(t)
            mu = cos(t)
            l1 = sin(f) * pt + cos(f) * (mu / st) * pf
            return (-(4.0 / 9.0) * pf ** 3 + 2.0 * h(t, f, pt, pf) * pf
                    + 3.0 * alpha * cbrt(mu) * l1)
        return q

    excl = ((math.pi / 2.0, 1e-2),) if (alpha != 0.0 or beta != 0.0) else ()
    dom = Domain("theta-phi", CoordRange(0.0, math.pi, excluded=excl), _PHI)
    return (make_h, make_q, dom, "goryachev",
            {"alpha": alpha, "beta": beta}, (-4.0 / 9.0, 2.0))


def _mk_pneg_hyperbolic(p):
    if "rho" in p:
        rho = float(p["rho"])
    else:
        z1, z0 = float(p["zeta1"]), float(p["zeta0"])
        _require(0.0 < z1 < z0, f"requires 0 < zeta1 < zeta0, got {z1}, {z0}")
        rho = z0 / (z0 - z1)
    _require(rho > 1.0, f"requires rho > 1, got rho={rho}")
    alpha = float(p.get("alpha", 0.0))
    beta = float(p.get("beta", 0.0))

    def make_h(lk, la, lb):
        def h(u, f, pu, pf):
            t = tanh(u)
            zm = rho - t * t
            kin = _m_kinetic(u, f, pu, pf) / (2.0 * zm)
            return (lk * kin + la * (alpha * t * (1.0 - t * t) * cos(f) / zm)
                    + lb * (beta / zm))
        return h

    def make_q(h):
        def q(u, f, pu, pf):
            t = tanh(u)
            m1 = sin(f) * pu + (cos(f) / t) * pf
            return (-4.0 * pf ** 3 + 2.0 * h(u, f, pu, pf) * pf
                    + alpha * (m1 - 3.0 * t * cos(f) * pf))
        return q

    dom = Domain("u-phi", CoordRange(0.0, math.inf, cap=3.0), _PHI)
    return (make_h, make_q, dom, "hyperbolic-double-root-mirror",
            {"alpha": alpha, "beta": beta}, (-4.0, 2.0))


_BUILDERS = {
    Family.Q0_ZETA: _mk_q0_zeta,
    Family.Q0_SPHERE: _mk_q0_sphere,
    Family.Q0_HYPERBOLIC: _mk_q0_hyperbolic,
    Family.P0_HYPERBOLIC: _mk_p0_hyperbolic,
    Family.P0_SPHERE: _mk_p0_sphere,
    Family.P0_PLANE: _mk_p0_plane,
    Family.PPOS_ZETA: lambda p: _mk_eps_zeta(p, +1),
    Family.PPOS_SPHERE: _mk_ppos_sphere,
    Family.PPOS_HYPERBOLIC: _mk_ppos_hyperbolic,
    Family.PNEG_ZETA: lambda p: _mk_eps_zeta(p, -1),
    Family.PNEG_SPHERE_ELLIPTIC: _mk_pneg_sphere_elliptic,
    Family.PNEG_SPHERE_TRIG: _mk_pneg_sphere_trig,
    Family.DULLIN_MATVEEV: _mk_dullin_matveev,
    Family.GORYACHEV_CHAPLYGIN: _mk_goryachev_chaplygin,
    Family.GORYACHEV: _mk_goryachev,
    Family.PNEG_HYPERBOLIC: _mk_pneg_hyperbolic,
}

_MANIFOLDS = {
    Family.Q0_ZETA: "S2", Family.Q0_SPHERE: "S2", Family.Q0_HYPERBOLIC: "H2",
    Family.P0_HYPERBOLIC: "H2", Family.P0_SPHERE: "S2", Family.P0_PLANE: "R2",
    Family.PPOS_ZETA: "S2", Family.PPOS_SPHERE: "S2", Family.PPOS_HYPERBOLIC: "H2",
    Family.PNEG_ZETA: "S2", Family.PNEG_SPHERE_ELLIPTIC: "S2",
    Family.PNEG_SPHERE_TRIG: "S2", Family.DULLIN_MATVEEV: "S2",
    Family.GORYACHEV_CHAPLYGIN: "S2", Family.GORYACHEV: "S2",
    Family.PNEG_HYPERBOLIC: "H2",
}


def _snap_rational(x: float, max_den: int = 6, tol: float = 1e-9) -> float:
    for q in range(1, max_den + 1):
        pnum = round(x * q)
        if abs(x - pnum / q) <= tol * max(1.0, abs(x)):
            return pnum / q
    return x


def _fit_scalings(make_h, make_q, couplings, domain, rng):
    """Least-squares term-group scalings from the bracket residual.

    The residual is linear in the H-side group scalings (the single family
    needing this has Q independent of H), so the best scaling is the null
    vector of the per-state bracket columns, normalized on the potential
    group and snapped to nearby small rationals.
    """
    states = domain.sample_states(rng, 10)
    q_lit = make_q(make_h(1.0, 1.0, 1.0))
    groups = ["kinetic"]
    if couplings.get("alpha"):
        groups.append("alpha")
    if couplings.get("beta"):
        groups.append("beta")
    cols = []
    for g in groups:
        hg = make_h(float(g == "kinetic"), float(g == "alpha"), float(g == "beta"))
        hobs = Observable(domain.chart, hg, f"H[{g}]")
        qobs = Observable(domain.chart, q_lit, "Q[literal]")
        cols.append([_raw_bracket(hobs, qobs, s) for s in states])
    a = np.array(cols, dtype=float).T
    _, _, vt = np.linalg.svd(a)
    v = vt[-1]
    pivot = groups.index("alpha") if "alpha" in groups else (
        groups.index("beta") if "beta" in groups else 0)
    if v[pivot] == 0.0:
        raise BuildError("scaling fit is degenerate (zero pivot component)")
    lam = {g: _snap_rational(float(c / v[pivot])) for g, c in zip(groups, v)}
    lam.setdefault("alpha", 1.0)
    lam.setdefault("beta", 1.0)
    return lam


def _raw_bracket(f: Observable, g: Observable, s: PhaseState) -> float:
    _, df = gradient(f, s)
    _, dg = gradient(g, s)
    return (df[0] * dg[2] - df[2] * dg[0]) + (df[1] * dg[3] - df[3] * dg[1])


def build(spec: ModelSpec) -> Model:
    """Construct the (H, Q, domain) triple for a model spec.

    The literal transcription is gated on sampled states; on failure a
    per-term-group scaling is fitted, re-gated on 10^3 fresh states, and
    recorded in provenance under "fitted_scalings".
    """
    family = Family(spec.family)
    try:
        maker = _BUILDERS[family]
    except KeyError:
        raise BuildError(f"unknown family {spec.family!r}") from None
    make_h, make_q, dom, form, couplings, q_struct = maker(spec.params)

    rng = np.random.default_rng(_GATE_SEED)
    h_fn = make_h(1.0, 1.0, 1.0)
    q_fn = make_q(h_fn)
    hobs = Observable(dom.chart, h_fn, f"H[{family.value}]", form)
    qobs = Observable(dom.chart, q_fn, f"Q[{family.value}]", form)
    gate_states = dom.sample_states(rng, 8)
    worst = max(scaled_bracket(hobs, qobs, s) for s in gate_states)

    fitted = {}
    if worst > GATE_TOL:
        lam = _fit_scalings(make_h, make_q, couplings, dom, rng)
        h_fn = make_h(lam["kinetic"], lam["alpha"], lam["beta"])
        q_fn = make_q(h_fn)
        hobs = Observable(dom.chart, h_fn, f"H[{family.value}]", form)
        qobs = Observable(dom.chart, q_fn, f"Q[{family.value}]", form)
        retest = dom.sample_states(rng, 1000)
        worst = max(scaled_bracket(hobs, qobs, s) for s in retest)
        if worst > GATE_TOL:
            raise BuildError(
                f"{family.value}: bracket gate failed after scaling fit "
                f"(max scaled residual {worst:.3e})")
        fitted = {k: v for k, v in lam.items() if v != 1.0}

    def conformal(x1: float, x2: float) -> float:
        v0 = h_fn(x1, x2, 0.0, 0.0)
        v1 = h_fn(x1, x2, 1.0, 0.0)
        return 1.0 / (2.0 * (v1 - v0))

    manifold = _MANIFOLDS[family]
    if family is Family.GORYACHEV_CHAPLYGIN and spec.params.get("rp2"):
        manifold = "RP2"
    provenance = {
        "family": family.value,
        "form": form,
        "chart": dom.chart,
        "manifold": manifold,
        "fitted_scalings": fitted,
        "gate_max_scaled_bracket": worst,
        "q_structure": {"pf3_coeff": q_struct[0], "h_weight": q_struct[1]},
        "params": dict(spec.params),
    }
    return Model(spec=ModelSpec(family, dict(spec.params)), H=hobs, Q=qobs,
                 domain=dom, conformal_factor=conformal, provenance=provenance)


# ---------------------------------------------------------------------------
# presets

_SQ3 = math.sqrt(3.0)

_PRESETS = {
    "goryachev-chaplygin": (Family.GORYACHEV_CHAPLYGIN,
                            {"alpha": 1.0, "beta": 0.1}),
    "goryachev": (Family.GORYACHEV, {"alpha": 1.0, "beta": 0.1}),
    "dullin-matveev": (Family.DULLIN_MATVEEV,
                       {"rho": 2.0, "alpha": 1.0, "beta": 0.1}),
    "q0-sphere-demo": (Family.Q0_SPHERE,
                       {"zeta0": -_SQ3, "zeta1": 0.0, "zeta2": _SQ3,
                        "chi0": 1.0, "beta0": 0.1}),
    "q0-hyperbolic-demo": (Family.Q0_HYPERBOLIC,
                           {"zeta1": 1.0, "chi0": 1.0, "beta0": 0.1}),
    "p0-sphere-demo": (Family.P0_SPHERE,
                       {"rho": 0.5, "alpha": 1.0, "beta": 0.1}),
    "ppos-sphere-demo": (Family.PPOS_SPHERE,
                         {"zeta0": 1.0, "zeta1": 2.0, "zeta2": 3.0,
                          "alpha": 1.0, "beta": 0.1}),
    "pneg-sphere-demo": (Family.PNEG_SPHERE_ELLIPTIC,
                         {"zeta0": 0.5, "zeta1": 1.0, "zeta2": 3.0,
                          "alpha": 1.0, "beta": 0.1}),
    "pneg-hyperbolic-demo": (Family.PNEG_HYPERBOLIC,
                             {"zeta1": 1.0, "zeta0": 2.0,
                              "alpha": 1.0, "beta": 0.1}),
}

# classifier inputs confirming each demo's manifold regime
_PRESET_CLASSIFY = {
    "q0-sphere-demo": lambda: _classify.classify_q0(-1.0, 0.0),
    "q0-hyperbolic-demo": lambda: _classify.classify_q0(-1.0, -1.0),
    "p0-sphere-demo": lambda: _classify.classify_p0(-3.0, 4.0, -1.0),
    "ppos-sphere-demo": lambda: _classify.classify_general(+1, -6.0, 11.0, -6.0),
    "pneg-sphere-demo": lambda: _classify.classify_general(
        -1, -(0.5 * 1.0 * 3.0), 0.5 * 1.0 + 0.5 * 3.0 + 1.0 * 3.0, -(0.5 + 1.0 + 3.0)),
    "pneg-hyperbolic-demo": lambda: _classify.classify_general(-1, -2.0, 5.0, -4.0),
    "dullin-matveev": lambda: _classify.classify_general(-1, 0.0, 3.0, -4.0),
    "goryachev-chaplygin": lambda: _classify.classify_general(-1, 0.0, 0.0, -1.0),
    "goryachev": lambda: _classify.classify_general(-1, -1.0, 0.0, 0.0),
}


def preset_names():
    return sorted(_PRESETS)


def preset(name: str) -> ModelSpec:
    """A fully parameterized spec for a named system or demo regime."""
    try:
        family, params = _PRESETS[name]
    except KeyError:
        raise PresetError(
            f"unknown preset {name!r}; valid names: {', '.join(preset_names())}"
        ) from None
    check = _PRESET_CLASSIFY.get(name)
    if check is not None:
        cls = check()
        if cls.manifold != _MANIFOLDS[family] and not (
                family is Family.GORYACHEV_CHAPLYGIN):
            raise BuildError(
                f"preset {name!r}: classifier verdict {cls.manifold} does not "
                f"match expected manifold {_MANIFOLDS[family]}")
    return ModelSpec(family, dict(params))


def catalog():
    """(name, family, manifold, form) rows for every preset."""
    rows = []
    for name in preset_names():
        family, _ = _PRESETS[name]
        form = _BUILDERS[family](_PRESETS[name][1])[3]
        rows.append({"name": name, "family": family.value,
                     "manifold": _MANIFOLDS[family], "form": form})
    return rows


# ---------------------------------------------------------------------------
# random admissible parameter draws (verification sweeps)

def sample_spec(family: Family, rng) -> ModelSpec:
    """A random parameter draw satisfying the family's constraints."""
    def rts(n, lo, hi, gap):
        while True:
            r = np.sort(rng.uniform(lo, hi, size=n))
            if np.all(np.diff(r) > gap):
                return [float(x) for x in r]

    alpha = float(rng.uniform(0.3, 1.2))
    beta = float(rng.uniform(-0.3, 0.3))
    f = Family(family)
    if f is Family.Q0_ZETA:
        c0 = -float(rng.uniform(0.4, 1.8))
        rho0 = float(rng.uniform(-0.8, 0.8)) * math.sqrt(-c0 ** 3)
        return ModelSpec(f, {"c0": c0, "rho0": rho0, "chi0": alpha, "beta0": beta})
    if f is Family.Q0_SPHERE:
        z0, z1, z2 = rts(3, -2.0, 2.0, 0.25)
        return ModelSpec(f, {"zeta0": z0, "zeta1": z1, "zeta2": z2,
                             "chi0": alpha, "beta0": beta})
    if f is Family.Q0_HYPERBOLIC:
        return ModelSpec(f, {"zeta1": float(rng.uniform(0.3, 2.0)),
                             "chi0": alpha, "beta0": beta})
    if f is Family.P0_HYPERBOLIC:
        return ModelSpec(f, {"rho": float(rng.uniform(-0.7, 2.5)),
                             "alpha": alpha, "beta": beta})
    if f is Family.P0_SPHERE:
        return ModelSpec(f, {"rho": float(rng.uniform(0.15, 0.85)),
                             "alpha": alpha, "beta": beta})
    if f is Family.P0_PLANE:
        return ModelSpec(f, {"rho": float(rng.uniform(0.4, 1.6)),
                             "alpha": alpha, "beta": beta})
    if f in (Family.PPOS_ZETA, Family.PPOS_SPHERE):
        r0, r1, r2 = rts(3, 0.2, 3.0, 0.25)
        if f is Family.PPOS_SPHERE:
            return ModelSpec(f, {"zeta0": r0, "zeta1": r1, "zeta2": r2,
                                 "alpha": alpha, "beta": beta})
        return ModelSpec(f, {"c0": -r0 * r1 * r2,
                             "c1": r0 * r1 + r0 * r2 + r1 * r2,
                             "c2": -(r0 + r1 + r2),
                             "alpha": alpha, "beta": beta})
    if f is Family.PPOS_HYPERBOLIC:
        z0 = float(rng.uniform(0.3, 1.5))
        return ModelSpec(f, {"zeta0": z0, "zeta1": z0 + float(rng.uniform(0.4, 1.5)),
                             "alpha": alpha, "beta": beta})
    if f in (Family.PNEG_ZETA, Family.PNEG_SPHERE_ELLIPTIC):
        z1 = float(rng.uniform(0.3, 1.2))
        z2 = z1 + float(rng.uniform(0.4, 1.8))
        z0 = z1 - float(rng.uniform(0.25, 1.2))
        if f is Family.PNEG_SPHERE_ELLIPTIC:
            return ModelSpec(f, {"zeta0": z0, "zeta1": z1, "zeta2": z2,
                                 "alpha": alpha, "beta": beta})
        # monic coefficients of (z - z0)(z - z1)(z - z2); F = -monic
        return ModelSpec(f, {"c0": -z0 * z1 * z2,
                             "c1": z0 * z1 + z0 * z2 + z1 * z2,
                             "c2": -(z0 + z1 + z2),
                             "alpha": alpha, "beta": beta})
    if f is Family.PNEG_SPHERE_TRIG:
        kind = int(rng.integers(0, 3))
        if kind == 0:
            z1 = float(rng.uniform(0.4, 1.5))
            return ModelSpec(f, {"zeta1": z1, "zeta2": z1 + float(rng.uniform(0.4, 2.0)),
                                 "alpha": alpha, "beta": beta})
        if kind == 1:
            return ModelSpec(f, {"zeta1": float(rng.uniform(0.4, 2.0)),
                                 "alpha": alpha, "beta": beta})
        return ModelSpec(f, {"re": float(rng.uniform(-0.8, 0.8)),
                             "im": float(rng.uniform(0.4, 1.5)),
                             "alpha": alpha, "beta": beta})
    if f is Family.DULLIN_MATVEEV:
        return ModelSpec(f, {"rho": 1.0 + float(rng.uniform(0.3, 2.0)),
                             "alpha": alpha, "beta": beta})
    if f is Family.GORYACHEV_CHAPLYGIN:
        return ModelSpec(f, {"alpha": alpha, "beta": float(rng.uniform(0.0, 0.3))})
    if f is Family.GORYACHEV:
        return ModelSpec(f, {"alpha": alpha, "beta": beta})
    if f is Family.PNEG_HYPERBOLIC:
        z1 = float(rng.uniform(0.3, 1.2))
        return ModelSpec(f, {"zeta1": z1, "zeta0": z1 + float(rng.uniform(0.3, 1.5)),
                             "alpha": alpha, "beta": beta})
    raise BuildError(f"no sampler for family {family!r}")


# ---------------------------------------------------------------------------
# differential-system residuals in the zeta chart

_LEMMA_RELATIONS = (
    "chi*f' - gamma*f",
    "chi*g' - beta*f",
    "chi' + q*f",
    "beta' - 2q*g'",
    "gamma' + chi*a - 2q*f'",
    "a*gamma + chi*a'/2 - 3(p + q*a)*f",
)


def residual_lemma1(model: Model, n_points: int = 50, perturb_gamma: float = 0.0):
    """Max residuals of the six zeta-chart compatibility relations.

    Reconstructs the angular-chart coefficient functions (a, f, g, chi,
    beta, gamma) from the model's cubic and evaluates the six relations on
    an interior grid, converting angular derivatives through the chart rule
    (d/dtheta = -2 sqrt(F) d/dzeta for the cubic-chart family with p=1, q=0;
    d/dtheta = -sqrt(F/zeta) d/dzeta for the conformal families with q=1).
    """
    fam = Family(model.spec.family)
    prm = model.spec.params
    if fam is Family.Q0_ZETA:
        F = CubicPoly(-2.0 * float(prm.get("rho0", 0.0)),
                      3.0 * float(prm.get("c0", 0.0)), 0.0, 1.0)
        pp, qq = 1.0, 0.0
        ca = float(prm.get("chi0", 0.0))
        cb = float(prm.get("beta0", 0.0))
    elif fam in (Family.PPOS_ZETA, Family.PNEG_ZETA):
        eps = 1.0 if fam is Family.PPOS_ZETA else -1.0
        F = CubicPoly(eps * float(prm.get("c0", 0.0)),
                      eps * float(prm.get("c1", 0.0)),
                      eps * float(prm.get("c2", 0.0)), eps)
        pp, qq = eps, 1.0
        ca = float(prm.get("alpha", 0.0))
        cb = float(prm.get("beta", 0.0))
    else:
        raise ValueError(
            f"residual_lemma1 applies to the zeta-chart families, not {fam.value}")

    G = companion_g(F)
    Fd = F.derivative()

    if fam is Family.Q0_ZETA:
        def fn_f(z):
            return 4.0 * ca * sqrt(F(z))

        def fn_g(z):
            return -4.0 * cb * z

        def fn_chi(z):
            return ca + 0.0 * z

        def fn_beta(z):
            return 2.0 * cb + 0.0 * z

        def fn_gamma(z):
            return -ca * Fd(z) / sqrt(F(z))

        def fn_a(z):
            return G(z) / F(z)

        def chain(zv):
            return -2.0 * math.sqrt(F(zv))
    else:
        def fn_f(z):
            return ca * sqrt(F(z)) / z

        def fn_g(z):
            return cb / z

        def fn_chi(z):
            return 2.0 * ca * sqrt(z)

        def fn_beta(z):
            return 2.0 * cb / z

        def fn_gamma(z):
            return 2.0 * ca * (sqrt(F(z)) / z - Fd(z) / (2.0 * sqrt(F(z))))

        def fn_a(z):
            return G(z) / (4.0 * F(z) * z)

        def chain(zv):
            return -math.sqrt(F(zv) / zv)

    lo, hi = model.domain.x1.lo, model.domain.x1.hi
    if math.isinf(hi):
        hi = model.domain.x1.cap
    pad = 0.02 * (hi - lo)
    grid = np.linspace(lo + pad, hi - pad, n_points)

    def val_and_dot(fn, zv, cf):
        r = fn(DualScalar(zv, 1.0))
        if isinstance(r, DualScalar):
            return r.v, cf * r.g1
        return r, 0.0

    worst = [0.0] * 6
    for zv in grid:
        fzv = F(zv)
        if fzv <= 0.0 or (qq != 0.0 and zv * fzv <= 0.0):
            raise ValueError(f"grid point zeta={zv} violates zeta*F > 0")
        cf = chain(zv)
        fv, fdot = val_and_dot(fn_f, zv, cf)
        gv, gdot = val_and_dot(fn_g, zv, cf)
        chiv, chidot = val_and_dot(fn_chi, zv, cf)
        betav, betadot = val_and_dot(fn_beta, zv, cf)
        gamv, gamdot = val_and_dot(fn_gamma, zv, cf)
        av, adot = val_and_dot(fn_a, zv, cf)
        gamv = gamv + perturb_gamma
        res = (
            chiv * fdot - gamv * fv,
            chiv * gdot - betav * fv,
            chidot + qq * fv,
            betadot - 2.0 * qq * gdot,
            gamdot + chiv * av - 2.0 * qq * fdot,
            av * gamv + chiv * adot / 2.0 - 3.0 * (pp + qq * av) * fv,
        )
        for i, r in enumerate(res):
            worst[i] = max(worst[i], abs(r))
    return {"relations": _LEMMA_RELATIONS, "residuals": worst,
            "grid": (float(grid[0]), float(grid[-1]), int(n_points))}
