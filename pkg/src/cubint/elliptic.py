"""Jacobi elliptic functions sn, cn, dn and the complete integral K(m).

Everything is computed through the descending Landen / arithmetic-geometric
mean transformation, which converges quadratically and needs no external
dependencies.  The modulus convention is the parameter m = k^2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .duals import DualScalar

_AGM_TOL = 1e-15
_MAX_ITER = 64


@dataclass(frozen=True)
class JacobiTriple:
    """(sn, cn, dn) at a common argument and modulus parameter."""

    sn: float
    cn: float
    dn: float


def complete_elliptic_k(m: float) -> float:
    """Quarter period K(m) for m in [0, 1).

    K(m) = pi / (2 agm(1, sqrt(1-m))); diverges as m -> 1.
    """
    if not 0.0 <= m < 1.0:
        raise ValueError(f"complete_elliptic_k requires 0 <= m < 1, got m={m}")
    a, b = 1.0, math.sqrt(1.0 - m)
    for _ in range(_MAX_ITER):
        if abs(a - b) <= _AGM_TOL * a:
            break
        a, b = 0.5 * (a + b), math.sqrt(a * b)
    return math.pi / (2.0 * a)


def _sncndn_agm(u: float, m: float) -> tuple[float, float, float]:
    """Descending Landen chain for 0 < m < 1 (A&S 16.4)."""
    a = [1.0]
    c = [math.sqrt(m)]
    b = math.sqrt(1.0 - m)
    n = 0
    while c[n] > _AGM_TOL and n < _MAX_ITER:
        a.append(0.5 * (a[n] + b))
        c.append(0.5 * (a[n] - b))
        b = math.sqrt(a[n] * b)
        n += 1
    phi = (2.0 ** n) * a[n] * u
    for k in range(n, 0, -1):
        s = c[k] / a[k] * math.sin(phi)
        s = max(-1.0, min(1.0, s))
        phi = 0.5 * (phi + math.asin(s))
    sn = math.sin(phi)
    cn = math.cos(phi)
    dn = math.sqrt(max(0.0, 1.0 - m * sn * sn))
    return sn, cn, dn


def jacobi(u: float, m: float) -> JacobiTriple:
    """sn, cn, dn at argument u and modulus parameter m in [0, 1].

    m = 0 degenerates to (sin, cos, 1) and m = 1 to (tanh, sech, sech);
    arguments beyond the fundamental period are reduced by quasi-periodicity.
    """
    if not math.isfinite(u):
        raise ValueError(f"jacobi requires a finite argument, got u={u}")
    if not 0.0 <= m <= 1.0:
        raise ValueError(f"jacobi requires 0 <= m <= 1, got m={m}")
    if m == 0.0:
        return JacobiTriple(math.sin(u), math.cos(u), 1.0)
    if m == 1.0:
        sech = 1.0 / math.cosh(u)
        return JacobiTriple(math.tanh(u), sech, sech)
    # Reduce modulo the half period 2K: sn, cn flip sign, dn is invariant.
    kq = complete_elliptic_k(m)
    half = 2.0 * kq
    n2 = math.floor(u / half + 0.5)
    ur = u - n2 * half
    sn, cn, dn = _sncndn_agm(ur, m)
    if n2 % 2:
        sn, cn = -sn, -cn
    return JacobiTriple(sn, cn, dn)


def jacobi_s(u, m: float):
    """Dual-aware (sn, cn, dn): accepts a float or DualScalar argument.

    Derivatives follow sn' = cn dn, cn' = -sn dn, dn' = -m sn cn.
    """
    if isinstance(u, DualScalar):
        t = jacobi(u.v, m)
        return (u._lift(t.sn, t.cn * t.dn),
                u._lift(t.cn, -t.sn * t.dn),
                u._lift(t.dn, -m * t.sn * t.cn))
    t = jacobi(u, m)
    return t.sn, t.cn, t.dn
