"""Cubic/quartic polynomial arithmetic, real roots, and companion quartics.

The central algebraic objects of the model family: a cubic F and its
companion quartic G = F'^2 - 2 F F'', tied together by G' = -12 c3 F where
c3 is the leading coefficient.  Root extraction is Cardano-seeded and
Newton-polished so the classifier can distinguish near-double roots
deterministically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

MULTIPLICITY_REL = 1e-8   # cluster width, scaled by 1 + max |root|


@dataclass(frozen=True)
class CubicPoly:
    """c0 + c1 z + c2 z^2 + c3 z^3 (c3 may vanish: quadratic/linear cases)."""

    c0: float
    c1: float
    c2: float
    c3: float = 0.0

    def __call__(self, z):
        return ((self.c3 * z + self.c2) * z + self.c1) * z + self.c0

    def derivative(self) -> "CubicPoly":
        return CubicPoly(self.c1, 2.0 * self.c2, 3.0 * self.c3, 0.0)

    @property
    def degree(self) -> int:
        for d, c in ((3, self.c3), (2, self.c2), (1, self.c1)):
            if c != 0.0:
                return d
        return 0

    @property
    def coeffs(self):
        return (self.c0, self.c1, self.c2, self.c3)


@dataclass(frozen=True)
class QuarticPoly:
    """g0 + g1 z + ... + g4 z^4."""

    g0: float
    g1: float
    g2: float
    g3: float = 0.0
    g4: float = 0.0

    def __call__(self, z):
        return (((self.g4 * z + self.g3) * z + self.g2) * z + self.g1) * z + self.g0

    def derivative(self) -> CubicPoly:
        return CubicPoly(self.g1, 2.0 * self.g2, 3.0 * self.g3, 4.0 * self.g4)

    @property
    def coeffs(self):
        return (self.g0, self.g1, self.g2, self.g3, self.g4)


@dataclass(frozen=True)
class RootSet:
    """Real roots (value, multiplicity) ascending, plus an optional complex pair."""

    real: tuple
    complex_pair: Optional[tuple] = None  # (re, im) with im > 0

    @property
    def values(self):
        return tuple(v for v, _ in self.real)

    def total_count(self) -> int:
        return sum(m for _, m in self.real) + (2 if self.complex_pair else 0)


def _two_product(a: float, b: float):
    """Dekker split product: a*b = p + e exactly."""
    p = a * b
    split = 134217729.0  # 2**27 + 1
    a_hi = a * split
    a_hi = a_hi - (a_hi - a)
    a_lo = a - a_hi
    b_hi = b * split
    b_hi = b_hi - (b_hi - b)
    b_lo = b - b_hi
    e = ((a_hi * b_hi - p) + a_hi * b_lo + a_lo * b_hi) + a_lo * b_lo
    return p, e


def _diff_of_products(a: float, b: float, c: float, d: float) -> float:
    """a*b - c*d with one compensated rounding."""
    p1, e1 = _two_product(a, b)
    p2, e2 = _two_product(c, d)
    return (p1 - p2) + (e1 - e2)


def discriminant_q0(c0: float, rho0: float) -> float:
    """Cubic discriminant in the (c0, rho0) normalization: c0^3 + rho0^2."""
    return c0 ** 3 + rho0 ** 2


def companion_g(f: CubicPoly, eps: Optional[int] = None) -> QuarticPoly:
    """Companion quartic G = F'^2 - 2 F F'' by exact coefficient algebra.

    Coefficient-wise: G = (c1^2 - 4 c0 c2) - 12 c0 c3 z - 6 c1 c3 z^2
    - 4 c2 c3 z^3 - 3 c3^2 z^4.  When eps is given it must match the sign
    of the leading coefficient (the family normalization).
    """
    c0, c1, c2, c3 = f.coeffs
    if eps is not None and eps != 0 and c3 != 0.0:
        if (c3 > 0) != (eps > 0):
            raise ValueError(f"leading coefficient {c3} inconsistent with eps={eps}")
    return QuarticPoly(
        _diff_of_products(c1, c1, 4.0 * c0, c2),
        -12.0 * c0 * c3,
        -6.0 * c1 * c3,
        -4.0 * c2 * c3,
        -3.0 * c3 * c3,
    )


def check_g_prime_identity(f: CubicPoly, g: QuarticPoly, eps: int) -> bool:
    """True iff G' + 12 eps F vanishes coefficient-wise (<= 1e-13 relative)."""
    gp = g.derivative()
    ok = True
    for gc, fc in zip(gp.coeffs, f.coeffs):
        lhs = gc
        rhs = -12.0 * eps * fc
        tol = 1e-13 * max(1.0, abs(lhs), abs(rhs))
        ok = ok and abs(lhs - rhs) <= tol
    return ok


def _newton_polish(f: CubicPoly, x: float, iters: int = 10) -> float:
    fp = f.derivative()
    for _ in range(iters):
        fx = f(x)
        dx = fp(x)
        if dx == 0.0:
            break
        step = fx / dx
        x_new = x - step
        if not math.isfinite(x_new) or x_new == x:
            break
        x = x_new
    return x


def _roots_quadratic(a: float, b: float, c: float):
    """Roots of a z^2 + b z + c, a != 0; returns (real_list, complex_pair)."""
    disc = _diff_of_products(b, b, 4.0 * a, c)
    if disc < 0.0:
        re = -b / (2.0 * a)
        im = math.sqrt(-disc) / (2.0 * abs(a))
        return [], (re, im)
    sq = math.sqrt(disc)
    # Citardauq form avoids cancellation.
    q = -0.5 * (b + math.copysign(sq, b)) if b != 0.0 else 0.5 * sq
    if q == 0.0:
        return [0.0, 0.0], None
    r1, r2 = q / a, c / q
    return sorted((r1, r2)), None


def _cubic_candidates(a: float, b: float, c: float):
    """Real-root candidates of the monic cubic z^3 + a z^2 + b z + c."""
    p = b - a * a / 3.0
    q = 2.0 * a ** 3 / 27.0 - a * b / 3.0 + c
    shift = -a / 3.0
    disc = -4.0 * p ** 3 - 27.0 * q * q
    scale = max(1.0, abs(p) ** 1.5, abs(q))
    if abs(disc) <= 1e-14 * scale * scale:
        if abs(p) <= 1e-14 * scale:
            return [shift, shift, shift]
        d = -3.0 * q / (2.0 * p)     # double root of the depressed cubic
        return sorted([d + shift, d + shift, -2.0 * d + shift])
    if disc > 0.0:
        # three real roots: trigonometric form
        r = 2.0 * math.sqrt(-p / 3.0)
        arg = 3.0 * q / (p * r)
        arg = max(-1.0, min(1.0, arg))
        theta = math.acos(arg) / 3.0
        return sorted(r * math.cos(theta - 2.0 * math.pi * k / 3.0) + shift
                      for k in range(3))
    # one real root: Cardano
    half_q = -q / 2.0
    s = math.sqrt(q * q / 4.0 + p ** 3 / 27.0)
    u = half_q + s
    v = half_q - s
    t = math.copysign(abs(u) ** (1.0 / 3.0), u) + math.copysign(abs(v) ** (1.0 / 3.0), v)
    return [t + shift]


def cubic_real_roots(f: CubicPoly) -> RootSet:
    """Real roots with multiplicities (and the complex pair, if any).

    Cardano-seeded candidates are Newton-polished against the original
    coefficients, then clustered: roots closer than 1e-8 * (1 + max |root|)
    merge into a multiple root, re-polished on F' (a double root of F is a
    simple root of F').
    """
    c0, c1, c2, c3 = f.coeffs
    if f.degree == 0:
        raise ValueError("zero or constant polynomial has no root structure")
    if f.degree == 1:
        return RootSet(((-c0 / c1, 1),))
    if f.degree == 2:
        real, pair = _roots_quadratic(c2, c1, c0)
        if pair is not None:
            return RootSet((), pair)
        real = [_newton_polish(f, r) for r in real]
        scale = 1.0 + max(abs(r) for r in real)
        if abs(real[1] - real[0]) < MULTIPLICITY_REL * scale:
            mid = 0.5 * (real[0] + real[1])
            return RootSet(((mid, 2),))
        return RootSet(tuple((r, 1) for r in sorted(real)))

    a, b, c = c2 / c3, c1 / c3, c0 / c3
    cands = sorted(_newton_polish(f, r) for r in _cubic_candidates(a, b, c))
    scale = 1.0 + max(abs(r) for r in cands)
    tol = MULTIPLICITY_REL * scale

    if len(cands) == 1:
        r = cands[0]
        # deflate: z^2 + (a+r) z + (b + r(a+r))
        bb = a + r
        cc = b + r * bb
        _, pair = _roots_quadratic(1.0, bb, cc)
        if pair is None:
            # borderline discriminant: treat the quadratic roots as real
            reals, _ = _roots_quadratic(1.0, bb, cc)
            cands = sorted([r] + [_newton_polish(f, x) for x in reals])
        else:
            return RootSet(((r, 1),), pair)

    clusters: list[list[float]] = []
    for r in cands:
        if clusters and abs(r - clusters[-1][-1]) < tol:
            clusters[-1].append(r)
        else:
            clusters.append([r])
    roots = []
    fp = f.derivative()
    for grp in clusters:
        mult = len(grp)
        val = sum(grp) / mult
        if mult == 2:
            val = _newton_polish(fp, val)
        elif mult == 3:
            val = -a / 3.0
        else:
            val = _newton_polish(f, val)
        roots.append((val, mult))
    roots.sort(key=lambda t: t[0])
    return RootSet(tuple(roots))
