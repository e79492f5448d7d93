"""Parameterized shape families, random sampling and diagram boundary curves."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Sequence

import numpy as np

from .errors import ParameterOutOfRange, TooFewVertices, UnknownCurve
from .polygon import Disk, Shape, TangentialPolygon, from_angles, from_tangent_lengths, functionals

FAMILIES = (
    "disk", "regular", "isosceles_sigma", "rhombus_tau", "kite",
    "triangle_angles", "random_tangential", "one_cap", "two_cap",
)
SAMPLER_EPS = 1e-4


# normalization --------------------------------------------------------------

def _circumradius(poly: TangentialPolygon) -> float:
    """Radius of the circle through the vertices (triangles and regular shapes)."""
    if poly.n == 3:
        a, b, c = poly.sides()
        area = functionals(poly).A
        return float(a * b * c / (4.0 * area))
    t = poly.t_values
    if max(t) - min(t) <= 1e-12 * max(t):
        return functionals(poly).d_O
    raise ParameterOutOfRange("circumradius normalization needs a triangle or a regular polygon")


def normalize(
    poly: TangentialPolygon,
    *,
    rho: float | None = None,
    area: float | None = None,
    circumradius: float | None = None,
) -> TangentialPolygon:
    """Rescale so that exactly one of inradius, area or circumradius takes a value."""
    given = [v is not None for v in (rho, area, circumradius)]
    if sum(given) > 1:
        raise ParameterOutOfRange("give at most one of rho, area, circumradius")
    if rho is not None:
        return TangentialPolygon(rho, poly.t_values)
    if area is not None:
        if not area > 0:
            raise ParameterOutOfRange("area must be positive")
        return TangentialPolygon(math.sqrt(area / math.fsum(poly.t_values)), poly.t_values)
    if circumradius is not None:
        unit = TangentialPolygon(1.0, poly.t_values)
        return TangentialPolygon(circumradius / _circumradius(unit), poly.t_values)
    return poly


# families -------------------------------------------------------------------

def regular_ngon(n: int, **norm: float) -> TangentialPolygon:
    """Regular ``n``-gon; unit inradius unless a normalization keyword is given."""
    if n < 3:
        raise TooFewVertices(f"need n >= 3, got {n}")
    t = math.tan(math.pi / n)
    return normalize(TangentialPolygon(1.0, (t,) * n), **norm)


def isosceles(sigma: float, area: float | None = None, **norm: float) -> TangentialPolygon:
    """Isosceles triangle with ``sigma = tan(apex / 4)``; vertex 0 is the apex."""
    if not 0.0 < sigma < 1.0:
        raise ParameterOutOfRange(f"sigma must lie in (0, 1), got {sigma}")
    t_apex = (1.0 - sigma * sigma) / (2.0 * sigma)
    t_base = (1.0 + sigma) / (1.0 - sigma)
    if area is not None:
        norm["area"] = area
    return normalize(TangentialPolygon(1.0, (t_apex, t_base, t_base)), **norm)


def rhombus(tau: float, **norm: float) -> TangentialPolygon:
    """Rhombus with angles ``(alpha, pi - alpha, ...)`` where ``tau = tan(alpha / 2)``."""
    if not (tau > 0 and math.isfinite(tau)):
        raise ParameterOutOfRange(f"tau must be positive, got {tau}")
    return normalize(TangentialPolygon(1.0, (1.0 / tau, tau, 1.0 / tau, tau)), **norm)


def kite(s1: float, s2: float, beta: float, **norm: float) -> TangentialPolygon:
    """Kite with two sides ``s1``, two sides ``s2`` and angle ``beta`` where they meet.

    Vertex 0 joins the two ``s1`` sides; vertices 1 and 3 carry ``beta``.
    """
    if not (s1 > 0 and s2 > 0 and 0.0 < beta < math.pi):
        raise ParameterOutOfRange("kite needs positive sides and beta in (0, pi)")
    rho = s1 * s2 * math.sin(beta) / (s1 + s2)
    eta_b = rho / math.tan(beta / 2)
    eta = (s1 - eta_b, eta_b, s2 - eta_b, eta_b)
    if min(eta) <= 0:
        raise ParameterOutOfRange("these sides and beta do not close up into a convex kite")
    return normalize(from_tangent_lengths(eta, rho), **norm)


def triangle_angles(alpha: float, beta: float, **norm: float) -> TangentialPolygon:
    """Triangle with two given angles; the third is ``pi - alpha - beta``."""
    gamma = math.pi - alpha - beta
    if min(alpha, beta, gamma) <= 0:
        raise ParameterOutOfRange("angles must be positive and sum below pi")
    return normalize(from_angles((alpha, beta, gamma), 1.0), **norm)


# closed forms used to cross-check the generic functionals --------------------

def regular_closed_forms(n: int, area: float) -> dict[str, float]:
    """Perimeter, moments and sigma pair of a regular ``n``-gon of the given area."""
    t = math.tan(math.pi / n)
    rho = math.sqrt(area / (n * t))
    return {
        "rho": rho,
        "L": 2.0 * n * rho * t,
        "i2": (2.0 / 3.0) * n * rho**3 * t * (3.0 + t * t),
        "i4": (2.0 / 15.0) * n * rho**5 * t * (15.0 + 10.0 * t * t + 3.0 * t**4),
        "sigma_inf": area * area * (3.0 + t * t) / (24.0 * n * t),
        "sigma_one": -math.sqrt(area**5 * t**5 / n**3) / 90.0,
    }


def isosceles_p1(sigma: float) -> float:
    s, m = sigma, 1.0 - sigma
    return (m**12 + 9 * s * m**10 - 40 * s**3 * m**6 + 144 * s**5 * m**2 + 256 * s**6)


def isosceles_closed_forms(sigma: float, area: float) -> dict[str, float]:
    s = sigma
    a = math.sqrt(2.0 * s * area / (1.0 - s * s))
    L = a * (1.0 + s) ** 2 / s
    denom = s * (1.0 - s) * (1.0 + s)
    return {
        "half_base": a,
        "L": L,
        "rho": a * (1.0 - s) / (1.0 + s),
        "sigma_inf": area * area / 48.0
        * ((1 - s) ** 6 + 12 * s * s * (1 - s) ** 2 + 16 * s**3) / (s * (1 - s) * (1 + s) ** 3),
        "sigma_one": -area**3 / (360.0 * L) * isosceles_p1(s) / denom**3,
    }


def rhombus_closed_forms(tau: float, rho: float) -> dict[str, float]:
    w = tau + 1.0 / tau
    return {
        "L": 4.0 * rho * w,
        "i2": rho**3 * (4.0 * w + 4.0 / 3.0 * (tau**3 + tau**-3)),
        "i4": rho**5 * (4.0 * w + 8.0 / 3.0 * (tau**3 + tau**-3) + 0.8 * (tau**5 + tau**-5)),
    }


# shape descriptors ------------------------------------------------------------

@dataclass(frozen=True)
class ShapeFamily:
    """A family id, its parameters and a normalization, buildable on demand."""

    family: str
    params: dict[str, float] = field(default_factory=dict)
    normalization: dict[str, float] = field(default_factory=dict)

    def build(self) -> Shape:
        p, norm = self.params, dict(self.normalization)
        if self.family == "disk":
            if "area" in norm:
                return Disk(math.sqrt(norm["area"] / math.pi))
            return Disk(norm.get("rho", norm.get("circumradius", 1.0)))
        if self.family == "regular":
            return regular_ngon(int(p["n"]), **norm)
        if self.family == "isosceles_sigma":
            return isosceles(p["sigma"], **norm)
        if self.family == "rhombus_tau":
            return rhombus(p["tau"], **norm)
        if self.family == "kite":
            return kite(p["s1"], p["s2"], p["beta"], **norm)
        if self.family == "triangle_angles":
            return triangle_angles(p["alpha"], p["beta"], **norm)
        raise ParameterOutOfRange(f"family {self.family!r} has no single-shape builder")

    def label(self) -> str:
        inner = ",".join(f"{k}={v:.6g}" for k, v in sorted(self.params.items()))
        norm = ",".join(f"{k}={v:.6g}" for k, v in sorted(self.normalization.items()))
        return f"{self.family}({inner}; {norm})"


# random sampling --------------------------------------------------------------

_CHUNK = 1024


def sample_random(
    n: int,
    count: int,
    seed: int,
    concentration: float = 1.0,
    **norm: float,
) -> list[TangentialPolygon]:
    """Random tangential ``n``-gons with vertex angles spread over the simplex.

    The turning angles ``pi - alpha_k`` (which sum to ``2 pi``) are drawn from a
    symmetric Dirichlet law and rejected when any vertex angle leaves
    ``(eps, pi - eps)``.  With concentration 1 this is the uniform law on the
    admissible angle polytope.  Each chunk of 1024 samples draws from its own
    child seed, so results do not depend on how the work is split.
    """
    if n < 3:
        raise TooFewVertices(f"need n >= 3, got {n}")
    if count < 1:
        raise ParameterOutOfRange("count must be at least 1")
    out: list[TangentialPolygon] = []
    children = np.random.SeedSequence(seed).spawn((count + _CHUNK - 1) // _CHUNK)
    for ss in children:
        rng = np.random.default_rng(ss)
        want = min(_CHUNK, count - len(out))
        got: list[np.ndarray] = []
        while len(got) < want:
            turn = rng.dirichlet(np.full(n, concentration), size=4 * want) * (2.0 * math.pi)
            alpha = math.pi - turn
            ok = np.all((alpha > SAMPLER_EPS) & (alpha < math.pi - SAMPLER_EPS), axis=1)
            got.extend(alpha[ok][: want - len(got)])
        for a in got:
            out.append(normalize(from_angles(a, 1.0), **norm))
    return out


# diagram curves --------------------------------------------------------------

@dataclass(frozen=True)
class DiagramSample:
    family: str
    n: int
    param1: float
    param2: float
    x: float
    y: float
    axes: str = "L_over_dO,rho_over_dO"


def diagram_point(shape: Shape) -> tuple[float, float]:
    """``(L / d_O, rho / d_O)`` of a shape."""
    rep = functionals(shape)
    return rep.L / rep.d_O, shape.rho / rep.d_O


CAP_KINDS = ("one_cap", "two_cap_lower", "bcs03_upper")


def cap_x(kind: str, y: float) -> float:
    """Boundary curve ``x(y)`` of one of the cap families."""
    if kind == "one_cap":
        # hull of a disk and one point at distance d_O: L = (pi + alpha) rho + 2 sqrt(d_O^2 - rho^2)
        return (math.pi + 2.0 * math.asin(y)) * y + 2.0 * math.sqrt(1.0 - y * y)
    if kind == "two_cap_lower":
        return 4.0 * (math.sqrt(1.0 - y * y) + y * math.asin(y))
    if kind == "bcs03_upper":
        return 4.0 * (math.sqrt(1.0 - y * y) + math.asin(y))
    raise UnknownCurve(f"unknown curve {kind!r}")


def cap_curve(kind: str, samples: int) -> list[DiagramSample]:
    """Curve samples on the grid ``y = k / samples``, ``k = 1..samples``."""
    if kind not in CAP_KINDS:
        raise UnknownCurve(f"unknown curve {kind!r}")
    if samples < 2:
        raise ParameterOutOfRange("samples must be at least 2")
    axes = "L_over_dO,rho_over_dO" if kind == "one_cap" else "L_over_R,rho_over_R"
    n = 1 if kind == "one_cap" else 2
    out = []
    for k in range(1, samples + 1):
        y = k / samples
        out.append(DiagramSample(kind, n, y, 0.0, cap_x(kind, y), y, axes))
    return out


def blundon_x(y: float, upper: bool) -> float:
    sign = 1.0 if upper else -1.0
    val = 4.0 * (2.0 + 10.0 * y - y * y + sign * 2.0 * (1.0 - 2.0 * y) ** 1.5)
    return math.sqrt(max(val, 0.0))


def blundon_curves(samples: int) -> tuple[list[DiagramSample], list[DiagramSample]]:
    """Lower and upper triangle boundaries in ``(L / R_V, rho / R_V)``."""
    if samples < 2:
        raise ParameterOutOfRange("samples must be at least 2")
    ys = [0.5 * k / samples for k in range(1, samples + 1)]
    axes = "L_over_RV,rho_over_RV"
    lower = [DiagramSample("blundon_lower", 3, y, 0.0, blundon_x(y, False), y, axes) for y in ys]
    upper = [DiagramSample("blundon_upper", 3, y, 0.0, blundon_x(y, True), y, axes) for y in ys]
    return lower, upper


def bicentric_quad_point(eta1: float, upper: bool) -> tuple[float, float]:
    """Envelope point for unit inradius: ``x = L / d_O``, ``y = 1 / d_O``.

    The lower branch (right kites) has tangent lengths ``(eta1, 1, 1/eta1, 1)``,
    the upper branch (isosceles trapezia) ``(eta1, eta1, 1/eta1, 1/eta1)``.
    """
    if eta1 < 1.0:
        raise ParameterOutOfRange("eta1 must be at least 1")
    w = eta1 + 1.0 / eta1
    perimeter = 4.0 * w if upper else 2.0 * (2.0 + w)
    d_o = math.hypot(1.0, eta1)
    return perimeter / d_o, 1.0 / d_o


def bicentric_quad_envelope(
    samples: int, eta_max: float = 50.0
) -> tuple[list[DiagramSample], list[DiagramSample]]:
    if samples < 2:
        raise ParameterOutOfRange("samples must be at least 2")
    etas = np.geomspace(1.0, eta_max, samples)
    branches = []
    for upper, name in ((False, "bicentric_quad_lower"), (True, "bicentric_quad_upper")):
        pts = []
        for e in etas:
            x, y = bicentric_quad_point(float(e), upper)
            pts.append(DiagramSample(name, 4, float(e), 0.0, x, y))
        branches.append(pts)
    return branches[0], branches[1]


def hadwiger_gap(x: float, y: float) -> float:
    """``x (x - 2 pi y) - (pi^2 / 4)(1 - y)^2``; non-negative for convex shapes."""
    return x * (x - 2.0 * math.pi * y) - 0.25 * math.pi**2 * (1.0 - y) ** 2


def family_samples(
    family: str,
    samples: int,
    seed: int = 0,
    n_values: Sequence[int] = (3, 4, 5, 6, 7, 8),
) -> list[DiagramSample]:
    """Diagram points for a family, ordered by family then parameters."""
    if samples < 2 and family not in ("disk",):
        raise ParameterOutOfRange("samples must be at least 2")
    out: list[DiagramSample] = []
    if family == "disk":
        out.append(DiagramSample("disk", 0, 1.0, 0.0, 2.0 * math.pi, 1.0))
    elif family == "regular":
        for n in range(3, 3 + samples):
            x, y = diagram_point(regular_ngon(n))
            out.append(DiagramSample(family, n, float(n), 0.0, x, y))
    elif family == "isosceles_sigma":
        for s in np.linspace(0.0, 1.0, samples + 2)[1:-1]:
            x, y = diagram_point(isosceles(float(s)))
            out.append(DiagramSample(family, 3, float(s), 0.0, x, y))
    elif family == "rhombus_tau":
        for t in np.geomspace(1e-2, 1.0, samples):
            x, y = diagram_point(rhombus(float(t)))
            out.append(DiagramSample(family, 4, float(t), 0.0, x, y))
    elif family == "triangle_angles":
        grid = np.linspace(0.0, math.pi, samples + 2)[1:-1]
        for a in grid:
            for b in grid:
                if a + b < math.pi and a >= b:
                    x, y = diagram_point(triangle_angles(float(a), float(b)))
                    out.append(DiagramSample(family, 3, float(a), float(b), x, y))
    elif family == "kite":
        for b in np.linspace(0.0, math.pi, samples + 2)[1:-1]:
            for r in np.geomspace(1.0, 10.0, samples):
                try:
                    shape = kite(1.0, float(r), float(b))
                except ParameterOutOfRange:
                    continue
                x, y = diagram_point(shape)
                out.append(DiagramSample(family, 4, float(r), float(b), x, y))
    elif family == "random_tangential":
        for n in n_values:
            for k, poly in enumerate(sample_random(n, samples, seed + n)):
                x, y = diagram_point(poly)
                out.append(DiagramSample(family, n, float(k), float(seed + n), x, y))
    elif family == "one_cap":
        out = cap_curve("one_cap", samples)
    elif family == "two_cap":
        out = cap_curve("two_cap_lower", samples) + cap_curve("bcs03_upper", samples)
    elif family == "blundon":
        lo, hi = blundon_curves(samples)
        out = lo + hi
    elif family == "bicentric_quad":
        lo, hi = bicentric_quad_envelope(samples)
        out = lo + hi
    else:
        raise ParameterOutOfRange(f"unknown diagram family {family!r}")
    return sorted(out, key=lambda d: (d.family, d.n, d.param1, d.param2))


def diagram_csv(points: Sequence[DiagramSample]) -> str:
    lines = ["family,n,param1,param2,x,y"]
    for d in points:
        lines.append(f"{d.family},{d.n},{d.param1:.17g},{d.param2:.17g},{d.x:.17g},{d.y:.17g}")
    return "\n".join(lines) + "\n"


def as_record(sample: DiagramSample) -> dict[str, Any]:
    return {
        "family": sample.family, "n": sample.n, "param1": sample.param1,
        "param2": sample.param2, "x": sample.x, "y": sample.y, "axes": sample.axes,
    }
