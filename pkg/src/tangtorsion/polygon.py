"""Tangential polygons stored as an inradius plus half-angle cotangents.

A convex polygon with an incircle of radius ``rho`` centred at the origin is
fully described by ``T_k = cot(alpha_k / 2)`` at each vertex.  The tangent
length from vertex ``k`` to its two touching points is ``eta_k = rho * T_k``,
so side ``k`` (from vertex ``k`` to vertex ``k + 1``) has length
``eta_k + eta_{k+1}``.  Everything else is derived from these numbers.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import (
    AngleSumViolation,
    DegenerateTriangle,
    EqualIndices,
    IndexOutOfRange,
    NonConvexAngle,
    NonPositiveTangentLength,
    ParameterOutOfRange,
    TooFewVertices,
)

ANGLE_SUM_RTOL = 1e-9
NEAR_FLAT_T = 1e8


def _half_angle(t: float) -> float:
    # arccot for positive arguments, accurate at both ends
    return math.atan2(1.0, t)


def _check_angle_sum(t_values: Sequence[float]) -> float:
    n = len(t_values)
    target = (n - 2) * math.pi / 2
    residual = math.fsum(_half_angle(t) for t in t_values) - target
    if abs(residual) > ANGLE_SUM_RTOL * target:
        raise AngleSumViolation(
            f"half-angle sum misses {(n - 2)}*pi/2 by {residual:.3e} rad"
        )
    return residual


@dataclass(frozen=True)
class TangentialPolygon:
    """Convex polygon with an incircle of radius ``rho`` at the origin.

    Attributes:
        rho: inradius, strictly positive.
        t_values: ``cot(alpha_k / 2)`` for each vertex in counterclockwise order.
    """

    rho: float
    t_values: tuple[float, ...]

    def __post_init__(self) -> None:
        t = tuple(float(v) for v in self.t_values)
        object.__setattr__(self, "t_values", t)
        object.__setattr__(self, "rho", float(self.rho))
        if len(t) < 3:
            raise TooFewVertices(f"need at least 3 vertices, got {len(t)}")
        if not (self.rho > 0 and math.isfinite(self.rho)):
            raise ParameterOutOfRange(f"inradius must be positive, got {self.rho}")
        if not all(v > 0 and math.isfinite(v) for v in t):
            raise NonPositiveTangentLength("every T_k must be positive and finite")
        _check_angle_sum(t)

    @property
    def n(self) -> int:
        return len(self.t_values)

    @property
    def near_flat(self) -> bool:
        """True when some vertex is so sharp that its T exceeds 1e8."""
        return max(self.t_values) > NEAR_FLAT_T

    def angles(self) -> np.ndarray:
        return 2.0 * np.array([_half_angle(t) for t in self.t_values])

    def tangent_lengths(self) -> np.ndarray:
        return self.rho * np.asarray(self.t_values)

    def sides(self) -> np.ndarray:
        eta = self.tangent_lengths()
        return eta + np.roll(eta, -1)

    def scaled(self, factor: float) -> "TangentialPolygon":
        return TangentialPolygon(self.rho * factor, self.t_values)


@dataclass(frozen=True)
class Disk:
    """The round disk, kept apart from polygons so its limits are exact."""

    rho: float = 1.0

    def __post_init__(self) -> None:
        if not self.rho > 0:
            raise ParameterOutOfRange(f"radius must be positive, got {self.rho}")
        object.__setattr__(self, "rho", float(self.rho))

    def scaled(self, factor: float) -> "Disk":
        return Disk(self.rho * factor)


Shape = TangentialPolygon | Disk


@dataclass(frozen=True)
class GeometricReport:
    """Perimeter, area, boundary moments i2/i4, area moment I2 and d_O."""

    L: float
    A: float
    i2: float
    i4: float
    I2: float
    d_O: float

    def as_dict(self) -> dict[str, float]:
        return {k: getattr(self, k) for k in ("L", "A", "i2", "i4", "I2", "d_O")}


def from_angles(angles: Sequence[float], rho: float) -> TangentialPolygon:
    """Build a polygon from its vertex angles in radians.

    A small angle-sum residual (within the 1e-9 relative tolerance) is removed
    by shifting every angle by the same amount.

    Raises:
        TooFewVertices: fewer than three angles.
        NonConvexAngle: some angle outside (0, pi).
        AngleSumViolation: angles do not add up to (n - 2) * pi.
    """
    alpha = [float(a) for a in angles]
    n = len(alpha)
    if n < 3:
        raise TooFewVertices(f"need at least 3 vertices, got {n}")
    for a in alpha:
        if not (0.0 < a < math.pi):
            raise NonConvexAngle(f"angle {a} is not in (0, pi)")
    target = (n - 2) * math.pi
    residual = math.fsum(alpha) - target
    if abs(residual) > ANGLE_SUM_RTOL * target:
        raise AngleSumViolation(f"angles sum to {target + residual}, expected {target}")
    shift = residual / n
    t = []
    for a in alpha:
        half = (a - shift) / 2.0
        if not (0.0 < half < math.pi / 2):
            raise NonConvexAngle(f"angle {a} leaves (0, pi) after renormalizing")
        t.append(math.cos(half) / math.sin(half))
    return TangentialPolygon(rho, tuple(t))


def from_tangent_lengths(eta: Sequence[float], rho: float) -> TangentialPolygon:
    """Build a polygon from its tangent lengths; ``T_k = eta_k / rho``."""
    eta = [float(e) for e in eta]
    if len(eta) < 3:
        raise TooFewVertices(f"need at least 3 vertices, got {len(eta)}")
    if any(not e > 0 for e in eta):
        raise NonPositiveTangentLength("tangent lengths must be positive")
    if not rho > 0:
        raise ParameterOutOfRange(f"inradius must be positive, got {rho}")
    return TangentialPolygon(rho, tuple(e / rho for e in eta))


def boundary_moment(shape: Shape, k: int) -> float:
    """``i_{2k}``: integral of ``r^(2k)`` along the boundary, about the incentre."""
    if k < 0:
        raise ParameterOutOfRange("moment order must be non-negative")
    rho = shape.rho
    if isinstance(shape, Disk):
        return 2.0 * math.pi * rho ** (2 * k + 1)
    # each vertex owns two half-sides of length rho*T running away from a touch point
    coeffs = [math.comb(k, j) / (2 * j + 1) for j in range(k + 1)]
    terms = (
        sum(c * t ** (2 * j + 1) for j, c in enumerate(coeffs)) for t in shape.t_values
    )
    return 2.0 * rho ** (2 * k + 1) * math.fsum(terms)


def area_moment(shape: Shape, k: int) -> float:
    """``I_{2k}``: integral of ``r^(2k)`` over the interior, ``rho i_{2k}/(2k+2)``."""
    return shape.rho * boundary_moment(shape, k) / (2 * k + 2)


def functionals(shape: Shape) -> GeometricReport:
    """Perimeter, area, moments and maximal vertex distance of a shape."""
    rho = shape.rho
    if isinstance(shape, Disk):
        return GeometricReport(
            L=2 * math.pi * rho,
            A=math.pi * rho**2,
            i2=2 * math.pi * rho**3,
            i4=2 * math.pi * rho**5,
            I2=math.pi * rho**4 / 2,
            d_O=rho,
        )
    t = shape.t_values
    s1 = math.fsum(t)
    i2 = 2 * rho**3 * math.fsum(v + v**3 / 3 for v in t)
    i4 = 2 * rho**5 * math.fsum(v + 2 * v**3 / 3 + v**5 / 5 for v in t)
    return GeometricReport(
        L=2 * rho * s1,
        A=rho**2 * s1,
        i2=i2,
        i4=i4,
        I2=rho * i2 / 4,
        d_O=rho * math.hypot(1.0, max(t)),
    )


def side_normal_angles(poly: TangentialPolygon, orientation: float = 0.0) -> np.ndarray:
    """Polar angle of the touching point (outward normal) of every side.

    Vertex 0 sits at polar angle ``orientation``; side ``k`` joins vertex ``k``
    to vertex ``k + 1``.
    """
    half_arc = np.arctan(np.asarray(poly.t_values))
    # vertex k -> touch point k spans arctan(T_k); touch k -> vertex k+1 spans arctan(T_{k+1})
    vertex_angle = orientation + np.concatenate(
        ([0.0], np.cumsum(half_arc[:-1] + half_arc[1:]))
    )
    return vertex_angle + half_arc


def vertices(poly: TangentialPolygon, orientation: float = 0.0) -> np.ndarray:
    """Counterclockwise vertex coordinates, shape ``(n, 2)``, incentre at origin."""
    t = np.asarray(poly.t_values)
    phi = side_normal_angles(poly, orientation)
    theta = phi - np.arctan(t)
    radius = poly.rho * np.hypot(1.0, t)
    return np.column_stack((radius * np.cos(theta), radius * np.sin(theta)))


def average_angles(poly: TangentialPolygon, i: int, j: int) -> TangentialPolygon:
    """Replace the angles at vertices ``i`` and ``j`` by their mean."""
    n = poly.n
    for idx in (i, j):
        if not 0 <= idx < n:
            raise IndexOutOfRange(f"vertex index {idx} outside 0..{n - 1}")
    if i == j:
        raise EqualIndices("averaging needs two distinct vertices")
    ti, tj = poly.t_values[i], poly.t_values[j]
    if ti == tj:
        return poly
    half = 0.5 * (_half_angle(ti) + _half_angle(tj))
    t_new = math.cos(half) / math.sin(half)
    t = list(poly.t_values)
    t[i] = t[j] = t_new
    return TangentialPolygon(poly.rho, tuple(t))


def incentre_centroid_distance(sides: Sequence[float]) -> float:
    """Distance between incentre and centroid of a triangle given its sides.

    Raises:
        DegenerateTriangle: the sides violate the strict triangle inequality.
    """
    a, b, c = (float(s) for s in sides)
    if min(a, b, c) <= 0 or a >= b + c or b >= a + c or c >= a + b:
        raise DegenerateTriangle(f"sides {(a, b, c)} do not form a triangle")
    s1 = a + b + c
    s2 = a * b + b * c + c * a
    s3 = a * b * c
    d2 = (5 * s1 * s2 - s1**3 - 18 * s3) / (9 * s1)
    return math.sqrt(max(d2, 0.0))
