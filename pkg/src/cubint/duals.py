"""Forward-mode dual scalars with a fixed 4-slot gradient.

Phase space is always 4-dimensional here (two coordinates, two momenta),
so a dual number carrying four derivative slots yields the full gradient
of an observable in a single evaluation, with the product rule applied
exactly at every operation.
"""

from __future__ import annotations

import math


class DualScalar:
    """A value plus a 4-component derivative (d/dx1, d/dx2, d/dp1, d/dp2)."""

    __slots__ = ("v", "g1", "g2", "g3", "g4")

    def __init__(self, v, g1=0.0, g2=0.0, g3=0.0, g4=0.0):
        self.v = v
        self.g1 = g1
        self.g2 = g2
        self.g3 = g3
        self.g4 = g4

    @property
    def value(self):
        return self.v

    @property
    def gradient(self):
        return (self.g1, self.g2, self.g3, self.g4)

    def __repr__(self):
        return f"DualScalar({self.v!r}, grad={self.gradient!r})"

    # -- ring operations ----------------------------------------------------

    def __add__(self, o):
        if isinstance(o, DualScalar):
            return DualScalar(self.v + o.v, self.g1 + o.g1, self.g2 + o.g2,
                              self.g3 + o.g3, self.g4 + o.g4)
        return DualScalar(self.v + o, self.g1, self.g2, self.g3, self.g4)

    __radd__ = __add__

    def __neg__(self):
        return DualScalar(-self.v, -self.g1, -self.g2, -self.g3, -self.g4)

    def __sub__(self, o):
        if isinstance(o, DualScalar):
            return DualScalar(self.v - o.v, self.g1 - o.g1, self.g2 - o.g2,
                              self.g3 - o.g3, self.g4 - o.g4)
        return DualScalar(self.v - o, self.g1, self.g2, self.g3, self.g4)

    def __rsub__(self, o):
        return DualScalar(o - self.v, -self.g1, -self.g2, -self.g3, -self.g4)

    def __mul__(self, o):
        if isinstance(o, DualScalar):
            a, b = self.v, o.v
            return DualScalar(a * b,
                              a * o.g1 + self.g1 * b,
                              a * o.g2 + self.g2 * b,
                              a * o.g3 + self.g3 * b,
                              a * o.g4 + self.g4 * b)
        return DualScalar(self.v * o, self.g1 * o, self.g2 * o,
                          self.g3 * o, self.g4 * o)

    __rmul__ = __mul__

    def __truediv__(self, o):
        if isinstance(o, DualScalar):
            inv = 1.0 / o.v
            q = self.v * inv
            return DualScalar(q,
                              (self.g1 - q * o.g1) * inv,
                              (self.g2 - q * o.g2) * inv,
                              (self.g3 - q * o.g3) * inv,
                              (self.g4 - q * o.g4) * inv)
        inv = 1.0 / o
        return DualScalar(self.v * inv, self.g1 * inv, self.g2 * inv,
                          self.g3 * inv, self.g4 * inv)

    def __rtruediv__(self, o):
        inv = 1.0 / self.v
        q = o * inv
        f = -q * inv
        return DualScalar(q, f * self.g1, f * self.g2, f * self.g3, f * self.g4)

    def __pow__(self, n):
        if isinstance(n, int):
            if n == 0:
                return DualScalar(1.0)
            if n == 1:
                return self
            if n == 2:
                return self * self
            f = n * self.v ** (n - 1)
            return DualScalar(self.v ** n, f * self.g1, f * self.g2,
                              f * self.g3, f * self.g4)
        f = n * self.v ** (n - 1.0)
        return DualScalar(self.v ** n, f * self.g1, f * self.g2,
                          f * self.g3, f * self.g4)

    def _lift(self, v, f):
        """New dual with value v and derivative slots scaled by f (chain rule)."""
        return DualScalar(v, f * self.g1, f * self.g2, f * self.g3, f * self.g4)


def seed_state(x1, x2, p1, p2):
    """Four dual scalars seeded with unit derivatives along each slot."""
    return (DualScalar(x1, 1.0, 0.0, 0.0, 0.0),
            DualScalar(x2, 0.0, 1.0, 0.0, 0.0),
            DualScalar(p1, 0.0, 0.0, 1.0, 0.0),
            DualScalar(p2, 0.0, 0.0, 0.0, 1.0))


# -- elementary functions, dual-aware ----------------------------------------

def sqrt(x):
    if isinstance(x, DualScalar):
        r = math.sqrt(x.v)
        return x._lift(r, 0.5 / r)
    return math.sqrt(x)


def cbrt(x):
    """Real (signed) cube root."""
    if isinstance(x, DualScalar):
        r = cbrt(x.v)
        return x._lift(r, 1.0 / (3.0 * r * r))
    return math.copysign(abs(x) ** (1.0 / 3.0), x)


def sin(x):
    if isinstance(x, DualScalar):
        return x._lift(math.sin(x.v), math.cos(x.v))
    return math.sin(x)


def cos(x):
    if isinstance(x, DualScalar):
        return x._lift(math.cos(x.v), -math.sin(x.v))
    return math.cos(x)


def tan(x):
    if isinstance(x, DualScalar):
        t = math.tan(x.v)
        return x._lift(t, 1.0 + t * t)
    return math.tan(x)


def sinh(x):
    if isinstance(x, DualScalar):
        return x._lift(math.sinh(x.v), math.cosh(x.v))
    return math.sinh(x)


def cosh(x):
    if isinstance(x, DualScalar):
        return x._lift(math.cosh(x.v), math.sinh(x.v))
    return math.cosh(x)


def tanh(x):
    if isinstance(x, DualScalar):
        t = math.tanh(x.v)
        return x._lift(t, 1.0 - t * t)
    return math.tanh(x)


def value_of(x):
    return x.v if isinstance(x, DualScalar) else x
