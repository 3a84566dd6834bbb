"""Global geometry verdicts: admissible interval, endpoint nature, manifold.

The positivity constraints (zeta-weighted or not) F > 0 and G > 0 carve an
interval out of the line; the endpoint structure decides whether the metric
closes up into a manifold.  Endpoint taxonomy:

  pole                   F = 0 simple, G = F'^2 > 0: apparent, joins the manifold
  boundary-at-infinity   F double zero (or an unbounded end): infinite distance
  curvature-singularity  G = 0 while F != 0: the metric cannot extend
  origin-singularity     zeta = 0 with F(0) != 0 and G(0) != 0 (weighted metric)
  extension              zeta = 0 with G(0) = 0 or F(0) = 0: the even/polar
                         continuation carries the metric through
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .polynomials import (CubicPoly, QuarticPoly, RootSet, companion_g,
                          cubic_real_roots)

GOOD_ENDPOINTS = ("pole", "boundary-at-infinity", "extension")

_ZTOL = 1e-12


@dataclass(frozen=True)
class Classification:
    discriminant: float
    discriminant_sign: str          # "negative" | "zero" | "positive"
    roots: RootSet | None
    interval: tuple | None          # (lo, hi); hi may be +inf
    endpoint_kinds: tuple | None    # per endpoint
    manifold: str                   # "S2" | "H2" | "R2" | "RP2" | "none"
    regime: str                     # model-family tag or "none"
    chart_params: dict = field(default_factory=dict)
    notes: tuple = ()

    def to_dict(self) -> dict:
        return {
            "discriminant": self.discriminant,
            "discriminant_sign": self.discriminant_sign,
            "roots": {
                "real": [list(r) for r in self.roots.real],
                "complex_pair": list(self.roots.complex_pair)
                if self.roots.complex_pair else None,
            } if self.roots is not None else None,
            "interval": list(self.interval) if self.interval else None,
            "endpoint_kinds": list(self.endpoint_kinds) if self.endpoint_kinds else None,
            "manifold": self.manifold,
            "regime": self.regime,
            "chart_params": dict(self.chart_params),
            "notes": list(self.notes),
        }


# ---------------------------------------------------------------------------
# positivity intervals

def _poly_scale(p, x: float) -> float:
    ax = abs(x)
    return 1.0 + sum(abs(c) * ax ** i for i, c in enumerate(p.coeffs))


def _bisect_zero(p, lo: float, hi: float) -> float:
    flo = p(lo)
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if hi - lo <= 1e-12 * max(1.0, abs(mid)):
            return mid
        fm = p(mid)
        if fm == 0.0:
            return mid
        if (flo > 0) != (fm > 0):
            hi = mid
        else:
            lo, flo = mid, fm
    return 0.5 * (lo + hi)


def _g_zeros(g: QuarticPoly, window: float):
    """Real zeros of G by sign-change scan plus bisection (to ~1e-12)."""
    if all(c == 0.0 for c in g.coeffs[1:]):
        return []
    n = 10000
    xs = [-window + 2.0 * window * i / n for i in range(n + 1)]
    vals = [g(x) for x in xs]
    zeros = []
    for i in range(n):
        a, b = vals[i], vals[i + 1]
        if a == 0.0:
            zeros.append(xs[i])
        elif (a > 0) != (b > 0):
            zeros.append(_bisect_zero(g, xs[i], xs[i + 1]))
    if vals[-1] == 0.0:
        zeros.append(xs[-1])
    return zeros


def positivity_interval(f: CubicPoly, g: QuarticPoly, weight: str = "none"):
    """Maximal interval of weighted positivity and its endpoint kinds.

    weight "none" demands F > 0 and G > 0; weight "zeta-factor" demands
    zeta * F > 0 and G > 0.  Returns (interval, endpoint_kinds, components)
    where components lists every positive component with its labels; the
    returned interval is the best-labelled (then longest) component, or
    None when the feasible set is empty.
    """
    if weight not in ("none", "zeta-factor"):
        raise ValueError(f"unknown weight {weight!r}")
    weighted = weight == "zeta-factor"

    # breakpoints with provenance flags
    marks: dict[float, dict] = {}

    def add_mark(x, **flags):
        for known in marks:
            if abs(known - x) <= 1e-9 * (1.0 + abs(known)):
                marks[known].update({k: v for k, v in flags.items() if v})
                return
        marks[x] = {k: v for k, v in flags.items() if v}

    froots = cubic_real_roots(f) if f.degree >= 1 else RootSet(())
    for r, mult in froots.real:
        add_mark(r, froot=mult)
    window = 2.0 + 2.0 * max((abs(r) for r, _ in froots.real), default=1.0)
    window = max(window, 1.0 + max(abs(c) for c in g.coeffs))
    for z in _g_zeros(g, window):
        add_mark(z, gzero=True)
    if weighted:
        add_mark(0.0, origin=True)

    pts = sorted(marks)
    edges = [-math.inf] + pts + [math.inf]

    def positive(x: float) -> bool:
        fv = f(x)
        if weighted:
            fv = x * fv
        return fv > 0.0 and g(x) > 0.0

    def midpoint(a, b):
        if math.isinf(a):
            return b - max(1.0, abs(b))
        if math.isinf(b):
            return a + max(1.0, abs(a))
        return 0.5 * (a + b)

    cells = []
    for a, b in zip(edges[:-1], edges[1:]):
        if a == b:
            continue
        cells.append((a, b, positive(midpoint(a, b))))

    # merge adjacent positive cells (a breakpoint may not separate signs)
    comps = []
    for a, b, ok in cells:
        if not ok:
            continue
        if comps and comps[-1][1] == a and not _separates(marks.get(a), weighted):
            comps[-1] = (comps[-1][0], b)
        else:
            comps.append((a, b))

    components = []
    for lo, hi in comps:
        kinds = (_endpoint_kind(lo, marks, weighted, f, g),
                 _endpoint_kind(hi, marks, weighted, f, g))
        components.append({"interval": (lo, hi), "endpoint_kinds": kinds})
    if not components:
        return None, None, []

    def score(c):
        lo, hi = c["interval"]
        good = sum(k in GOOD_ENDPOINTS for k in c["endpoint_kinds"])
        length = (min(hi, lo + 1e6) - lo) if math.isfinite(lo) else 1e6
        return (good, length)

    best = max(components, key=score)
    return best["interval"], best["endpoint_kinds"], components


def _separates(flags, weighted) -> bool:
    """Keep the origin as a component boundary in weighted metrics."""
    if flags is None:
        return False
    return bool(flags.get("origin") and weighted) or bool(flags.get("froot")) \
        or bool(flags.get("gzero"))


def _endpoint_kind(x, marks, weighted, f, g) -> str:
    if math.isinf(x):
        return "boundary-at-infinity"
    flags = None
    for known, fl in marks.items():
        if abs(known - x) <= 1e-9 * (1.0 + abs(known)):
            flags = fl
            break
    flags = flags or {}
    if weighted and abs(x) <= 1e-9:
        if flags.get("froot") or flags.get("gzero"):
            return "extension"
        return "origin-singularity"
    mult = flags.get("froot", 0)
    if mult == 1:
        return "pole"
    if mult >= 2:
        return "boundary-at-infinity"
    if flags.get("gzero"):
        return "curvature-singularity"
    return "curvature-singularity"


# ---------------------------------------------------------------------------
# theorem-level classifiers

def _sign_tag(x: float, scale: float, tol: float = 1e-12) -> str:
    if abs(x) <= tol * max(scale, 1e-30):
        return "zero"
    return "negative" if x < 0.0 else "positive"


def classify_q0(c0: float, rho0: float) -> Classification:
    """Geometry of the unweighted cubic-chart metric from (c0, rho0)."""
    disc = c0 ** 3 + rho0 ** 2
    scale = max(abs(c0) ** 3, rho0 ** 2)
    tag = _sign_tag(disc, scale)
    f = CubicPoly(-2.0 * rho0, 3.0 * c0, 0.0, 1.0)
    g = companion_g(f)
    roots = cubic_real_roots(f)

    if tag == "zero":
        z1 = -math.copysign(abs(rho0) ** (1.0 / 3.0), rho0)
        if z1 > _ZTOL:
            return Classification(
                disc, tag, roots, (-2.0 * z1, z1),
                ("pole", "boundary-at-infinity"), "H2", "q0-hyperbolic",
                {"zeta1": z1})
        note = ("degenerate root zeta1 <= 0: the positivity interval ends in "
                "a curvature singularity",)
        iv, kinds, _ = positivity_interval(f, g, "none")
        return Classification(disc, tag, roots, iv, kinds, "none", "none",
                              {"zeta1": z1}, note)

    if tag == "negative":
        (r0, _), (r1, _), (r2, _) = roots.real
        k2 = (r1 - r0) / (r2 - r0)
        return Classification(
            disc, tag, roots, (r0, r1), ("pole", "pole"), "S2", "q0-sphere",
            {"k2": k2, "zeta0": r0, "zeta1": r1, "zeta2": r2})

    iv, kinds, _ = positivity_interval(f, g, "none")
    return Classification(disc, tag, roots, iv, kinds, "none", "none", {},
                          ("single real root: G vanishes inside the "
                           "positivity region",))


def classify_p0(c0: float, c1: float, c2: float) -> Classification:
    """Geometry of the weighted metric for a quadratic F (the p = 0 set)."""
    f = CubicPoly(c0, c1, c2, 0.0)
    g = companion_g(f)
    g0 = g.g0
    scale = max(c1 * c1, abs(4.0 * c0 * c2))
    disc = g0  # the constant companion G doubles as the branch invariant

    if _sign_tag(g0, scale) != "positive":
        return Classification(disc, _sign_tag(g0, scale), None, None, None,
                              "none", "none", {},
                              ("companion G = c1^2 - 4 c0 c2 must be positive",))

    if c2 == 0.0:
        if c1 <= 0.0:
            return Classification(disc, "positive", None, None, None, "none",
                                  "none", {}, ("c1 <= 0 leaves no admissible ray",))
        z1 = -c0 / c1
        roots = RootSet(((z1, 1),))
        if z1 > _ZTOL:
            return Classification(
                disc, "positive", roots, (z1, math.inf),
                ("pole", "boundary-at-infinity"), "R2", "p0-plane", {"zeta1": z1})
        note = ("zeta1 = 0 forces a half-angle deficit; zeta1 < 0 puts the "
                "origin singularity inside the ray",)
        return Classification(disc, "positive", roots, None, None, "none",
                              "none", {"zeta1": z1}, note)

    roots = cubic_real_roots(f)
    (z1, _), (z2, _) = roots.real
    if c2 > 0.0:
        if z2 > _ZTOL:
            rho = (z2 + z1) / (z2 - z1)
            return Classification(
                disc, "positive", roots, (z2, math.inf),
                ("pole", "boundary-at-infinity"), "H2", "p0-hyperbolic",
                {"rho": rho, "zeta1": z1, "zeta2": z2})
        return Classification(disc, "positive", roots, None, None, "none",
                              "none", {}, ("requires 0 < zeta2",))
    if z1 > _ZTOL or z2 < -_ZTOL:
        rho = (z2 - z1) / abs(z2 + z1) if z2 + z1 != 0.0 else math.inf
        if 0.0 < rho < 1.0:
            return Classification(
                disc, "positive", roots, (z1, z2), ("pole", "pole"), "S2",
                "p0-sphere", {"rho": rho, "zeta1": z1, "zeta2": z2})
    return Classification(disc, "positive", roots, None, None, "none", "none",
                          {}, ("interval must avoid the origin singularity",))


def _monic_disc(c0: float, c1: float, c2: float) -> float:
    """Cubic invariant in the sign convention where < 0 means 3 real roots."""
    std = (18.0 * c2 * c1 * c0 - 4.0 * c2 ** 3 * c0 + c2 ** 2 * c1 ** 2
           - 4.0 * c1 ** 3 - 27.0 * c0 ** 2)
    return -std / 108.0


def classify_general(eps: int, c0: float, c1: float, c2: float) -> Classification:
    """Geometry of the weighted metric for F = eps (z^3 + c2 z^2 + c1 z + c0)."""
    if eps not in (1, -1):
        raise ValueError(f"eps must be +1 or -1, got {eps}")
    monic = CubicPoly(c0, c1, c2, 1.0)
    g = companion_g(monic)
    roots = cubic_real_roots(monic)
    disc = _monic_disc(c0, c1, c2)
    dstd = max(abs(disc), 1e-30)
    tag = ("zero" if any(m > 1 for _, m in roots.real)
           else ("negative" if len(roots.real) == 3 else "positive"))
    g0 = g.g0
    g0_zero = abs(g0) <= 1e-9 * (1.0 + c1 * c1 + abs(4.0 * c0 * c2))

    def none_cls(*notes):
        return Classification(disc, tag, roots, None, None, "none", "none",
                              {}, notes)

    if eps == +1:
        if tag == "negative":
            (r0, _), (r1, _), (r2, _) = roots.real
            if r0 > _ZTOL:
                return Classification(
                    disc, tag, roots, (r0, r1), ("pole", "pole"), "S2",
                    "ppos-sphere",
                    {"k2": (r1 - r0) / (r2 - r0), "rho": r0 / (r2 - r0),
                     "zeta0": r0, "zeta1": r1, "zeta2": r2})
            return none_cls("requires 0 < zeta0")
        if tag == "zero":
            pairs = dict(roots.real)
            if len(roots.real) == 2:
                (s_val, d_val) = [r for r, m in roots.real if m == 1] + \
                                 [r for r, m in roots.real if m == 2]
                if 0.0 < s_val < d_val:
                    return Classification(
                        disc, tag, roots, (s_val, d_val),
                        ("pole", "boundary-at-infinity"), "H2",
                        "ppos-hyperbolic",
                        {"rho": s_val / (d_val - s_val),
                         "zeta0": s_val, "zeta1": d_val})
            return none_cls("double root must sit above a positive simple root")
        return none_cls("one real root: curvature singularity closes the interval")

    # eps == -1
    if tag == "negative":
        (r0, _), (r1, _), (r2, _) = roots.real
        if abs(r0) <= 1e-9 * (1.0 + abs(r2)) and r1 > _ZTOL:
            return Classification(
                disc, tag, roots, (r1, r2), ("pole", "pole"), "S2",
                "dullin-matveev",
                {"rho": (r2 + r1) / (r2 - r1), "zeta1": r1, "zeta2": r2})
        if g0_zero and r0 > _ZTOL:
            return Classification(
                disc, tag, roots, (0.0, r0), ("extension", "pole"), "S2",
                "pneg-sphere-trig",
                {"zeta0": r0, "zeta1": r1, "zeta2": r2,
                 "ssum": (r1 + r2) / r0, "mprod": r1 * r2 / (r0 * r0)})
        if r1 > _ZTOL:
            return Classification(
                disc, tag, roots, (r1, r2), ("pole", "pole"), "S2",
                "pneg-sphere-elliptic",
                {"k2": (r2 - r1) / (r2 - r0), "rho": r2 / (r2 - r1),
                 "zeta0": r0, "zeta1": r1, "zeta2": r2})
        return none_cls("middle root zeta1 <= 0: no verdict branch applies "
                        "(classified none, not asserted by the source theorems)")
    if tag == "zero":
        if len(roots.real) == 1:
            return none_cls("triple root: G <= 0 everywhere")
        d_val = next(r for r, m in roots.real if m == 2)
        s_val = next(r for r, m in roots.real if m == 1)
        if abs(d_val) <= 1e-9 * (1.0 + abs(s_val)) and s_val > _ZTOL:
            return Classification(
                disc, tag, roots, (0.0, s_val), ("extension", "pole"), "S2",
                "goryachev-chaplygin",
                {"zeta0": s_val, "rp2_variant": True})
        if d_val > _ZTOL and abs(s_val - d_val / 4.0) <= 1e-9 * (1.0 + d_val):
            return Classification(
                disc, tag, roots, (0.0, s_val), ("extension", "pole"), "S2",
                "pneg-sphere-trig",
                {"zeta0": s_val, "zeta1": d_val, "zeta2": d_val,
                 "ssum": 2.0 * d_val / s_val,
                 "mprod": d_val * d_val / (s_val * s_val)})
        if 0.0 < d_val < s_val:
            return Classification(
                disc, tag, roots, (d_val, s_val),
                ("boundary-at-infinity", "pole"), "H2", "pneg-hyperbolic",
                {"rho": s_val / (s_val - d_val), "zeta0": s_val, "zeta1": d_val})
        return none_cls("degenerate configuration admits no manifold")
    # one real root plus a complex pair
    (r_val, _), = roots.real
    if g0_zero and r_val > _ZTOL:
        a, b = roots.complex_pair
        return Classification(
            disc, tag, roots, (0.0, r_val), ("extension", "pole"), "S2",
            "pneg-sphere-trig",
            {"zeta0": r_val, "re": a, "im": b,
             "ssum": 2.0 * a / r_val, "mprod": (a * a + b * b) / (r_val * r_val)})
    return none_cls("complex-pair case requires G(0) = 0 and a positive real root")


# ---------------------------------------------------------------------------
# the G(0) = 0 root of the trig-sphere family

def solve_zeta0(real_pair=None, complex_pair=None, degenerate=None):
    """Admissible zeta0 values forcing G(0) = 0 for the trig-sphere family.

    real_pair (z1, z2) with 0 < z1 < z2 gives z1 z2 / (sqrt(z1)+sqrt(z2))^2;
    a degenerate double root z1 > 0 gives z1/4; a complex pair (a, b) gives
    |z|^2 / (2a +- 2|z|) filtered to positive finite values.
    """
    given = [x is not None for x in (real_pair, complex_pair, degenerate)]
    if sum(given) != 1:
        raise ValueError("provide exactly one of real_pair, complex_pair, degenerate")

    if real_pair is not None:
        z1, z2 = real_pair
        if not 0.0 < z1 < z2:
            raise ValueError(f"real pair requires 0 < zeta1 < zeta2, got {z1}, {z2}")
        z0 = z1 * z2 / (math.sqrt(z1) + math.sqrt(z2)) ** 2
        cands = [z0]
        ssum, mprod = z1 + z2, z1 * z2
    elif degenerate is not None:
        z1 = degenerate
        if z1 <= 0.0:
            raise ValueError(f"degenerate case requires zeta1 > 0, got {z1}")
        cands = [z1 / 4.0]
        ssum, mprod = 2.0 * z1, z1 * z1
    else:
        a, b = complex_pair
        if b == 0.0:
            raise ValueError("complex pair requires a nonzero imaginary part")
        mod = math.hypot(a, b)
        raw = []
        for s in (+1.0, -1.0):
            den = 2.0 * a + s * 2.0 * mod
            if den != 0.0:
                raw.append((a * a + b * b) / den)
        cands = [z for z in raw if z > 0.0 and math.isfinite(z)]
        ssum, mprod = 2.0 * a, a * a + b * b

    out = []
    for z0 in cands:
        c2m = -(ssum + z0)
        c1m = mprod + ssum * z0
        c0m = -mprod * z0
        g0 = c1m * c1m - 4.0 * c0m * c2m
        scale = 1.0 + c1m * c1m + abs(4.0 * c0m * c2m)
        if abs(g0) > 1e-10 * scale:
            raise ValueError(
                f"internal check failed: G(0) = {g0} for candidate zeta0 = {z0}")
        out.append(z0)
    return out
