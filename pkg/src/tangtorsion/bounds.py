"""Sandwich bounds on the torsional rigidity Q0 of tangential shapes.

Two auxiliary functionals feed everything here:

* ``sigma_inf = rho * i2 / 16``
* ``sigma_one = (i2**2 / L - i4) / 16``, never positive.

``Q0`` must satisfy a quadratic inequality ``f(Q0) <= 0`` whose roots
``q0_minus <= q0_plus`` bracket it.  The roots are available both from the
coefficients of ``f`` and from a closed formula in the two sigmas; the two
routes are kept separate so that each checks the other.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any

from .errors import InapplicableBound, NegativeDiscriminant, ParameterOutOfRange
from .polygon import Disk, GeometricReport, Shape, TangentialPolygon, functionals

# round-off allowance when a quantity that is exactly zero for the disk comes out tiny
_ROUNDOFF = 64 * 2.0**-52


@dataclass(frozen=True)
class SigmaPair:
    sigma_inf: float
    sigma_one: float


@dataclass(frozen=True)
class RigidityQuadratic:
    """Coefficients of ``f(Q) = a2 Q^2 + a1 Q + a0``."""

    a2: float
    a1: float
    a0: float

    def __call__(self, q: float) -> float:
        return (self.a2 * q + self.a1) * q + self.a0

    @property
    def discriminant(self) -> float:
        return self.a1 * self.a1 - 4.0 * self.a2 * self.a0

    def roots(self) -> tuple[float, float]:
        """Both real roots, ordered, avoiding cancellation in the small one."""
        disc = self.discriminant
        if disc < 0:
            scale = self.a1 * self.a1
            if -disc > _ROUNDOFF * scale:
                raise NegativeDiscriminant(f"quadratic discriminant {disc:.3e} < 0")
            disc = 0.0
        q = -0.5 * (self.a1 + math.copysign(math.sqrt(disc), self.a1))
        big = q / self.a2
        small = self.a0 / q if q != 0 else 0.0
        return (small, big) if small <= big else (big, small)


@dataclass(frozen=True)
class ClassicalBound:
    value: float | None
    kind: str
    applicability: str
    applicable: bool

    def as_dict(self) -> dict[str, Any]:
        return {
            "value": self.value,
            "kind": self.kind,
            "applicability": self.applicability,
            "applicable": self.applicable,
        }


@dataclass(frozen=True)
class BoundsReport:
    q0_minus: float
    q0_plus: float
    q_B: float
    q_upper_sigma: float
    q1_tangential: float
    sigma_inf: float
    sigma_one: float
    quadratic: RigidityQuadratic
    classical: dict[str, ClassicalBound] = field(default_factory=dict)

    @property
    def chain_holds(self) -> bool:
        return self.q_B <= self.q0_minus <= self.q_upper_sigma <= self.q0_plus

    def as_dict(self) -> dict[str, Any]:
        return {
            "q0_minus": self.q0_minus,
            "q0_plus": self.q0_plus,
            "q_B": self.q_B,
            "q_upper_sigma": self.q_upper_sigma,
            "q1_tangential": self.q1_tangential,
            "sigma_inf": self.sigma_inf,
            "sigma_one": self.sigma_one,
            "quadratic": {
                "a2": self.quadratic.a2,
                "a1": self.quadratic.a1,
                "a0": self.quadratic.a0,
            },
            "classical": {k: v.as_dict() for k, v in self.classical.items()},
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "BoundsReport":
        quad = RigidityQuadratic(**data["quadratic"])
        classical = {k: ClassicalBound(**v) for k, v in data["classical"].items()}
        scalars = {k: data[k] for k in (
            "q0_minus", "q0_plus", "q_B", "q_upper_sigma", "q1_tangential",
            "sigma_inf", "sigma_one",
        )}
        return cls(quadratic=quad, classical=classical, **scalars)


def sigma_functionals(report: GeometricReport, rho: float) -> SigmaPair:
    """Sigma-infinity and sigma-one from the boundary moments."""
    sigma_inf = rho * report.i2 / 16.0
    sigma_one = (report.i2 * report.i2 / report.L - report.i4) / 16.0
    if sigma_one > 0:
        # only the disk reaches zero; anything above is round-off
        if sigma_one > _ROUNDOFF * report.i4:
            raise ParameterOutOfRange(f"sigma_one = {sigma_one:.3e} > 0: invalid report")
        sigma_one = 0.0
    return SigmaPair(sigma_inf, sigma_one)


def mean_square_radius(report: GeometricReport) -> float:
    """``c0 = i2 / (4 L)``, the constant in the auxiliary Neumann solution."""
    return report.i2 / (4.0 * report.L)


def rigidity_quadratic(report: GeometricReport, rho: float) -> RigidityQuadratic:
    """Coefficients of the quadratic whose negative region contains Q0."""
    A, i2, i4 = report.A, report.i2, report.i4
    return RigidityQuadratic(
        a2=32.0 * A,
        a1=-(4.0 / rho) * (2.0 * A * i4 - rho * i2 * i2 + A * i2 * rho * rho),
        a0=A * rho * (A * i4 - 0.375 * i2 * i2 * rho),
    )


def q0_roots_from_sigmas(A: float, L: float, sig: SigmaPair) -> tuple[float, float]:
    """Roots ``(q0_minus, q0_plus)`` written in terms of the sigma pair.

    The plus root comes straight from the closed formula; the minus root is
    recovered from the product of the roots, which avoids cancelling two
    nearly equal numbers for thin shapes.
    """
    s_inf, s_one = sig.sigma_inf, sig.sigma_one
    if s_one > 0:
        raise ParameterOutOfRange("sigma_one must be <= 0")
    delta = -(s_one / L) * (2.0 * A * L * L * s_inf - L**3 * s_one - A**4)
    if delta < 0:
        if -delta > _ROUNDOFF * (A * s_inf) ** 2:
            raise NegativeDiscriminant(f"delta = {delta:.3e} < 0")
        delta = 0.0
    centre = -L * s_one + A * s_inf
    plus = (centre + math.sqrt(delta)) / A
    product = s_inf * s_inf - s_one * A * A / L
    minus = product / plus
    return minus, plus


_LOWER = ("polya_szego", "a3l2_lower", "cheeger", "solynin", "cubic_trial")
_UPPER = ("st_venant", "sigma_inf", "makai", "a3l2_upper")
BOUND_NAMES = _LOWER + _UPPER
_APPLICABILITY = {"solynin": "triangle", "cubic_trial": "isosceles"}


def shape_tag(shape: Shape) -> str:
    """Coarse family tag deciding which classical bounds apply."""
    if isinstance(shape, Disk):
        return "disk"
    if shape.n == 3:
        t = sorted(shape.t_values)
        if math.isclose(t[0], t[1], rel_tol=1e-12) or math.isclose(t[1], t[2], rel_tol=1e-12):
            return "isosceles"
        return "triangle"
    return "polygon"


def apex_tan(shape: TangentialPolygon) -> float:
    """``tan(apex / 2)`` of an isosceles triangle, the apex being the odd vertex."""
    t = shape.t_values
    for k in range(3):
        a, b = t[(k + 1) % 3], t[(k + 2) % 3]
        if math.isclose(a, b, rel_tol=1e-12):
            return 1.0 / t[k]
    raise InapplicableBound("triangle is not isosceles")


def _applies(name: str, tag: str) -> bool:
    need = _APPLICABILITY.get(name, "all")
    if need == "all":
        return True
    if need == "triangle":
        return tag in ("triangle", "isosceles")
    return tag == "isosceles"


def classical_bound(
    name: str,
    report: GeometricReport,
    rho: float,
    tag: str,
    apex_tau: float | None = None,
) -> float:
    """Value of one named classical bound.

    Raises:
        InapplicableBound: the bound does not cover shapes tagged ``tag``.
        KeyError: ``name`` is not a known bound.
    """
    if name not in BOUND_NAMES:
        raise KeyError(name)
    if not _applies(name, tag):
        raise InapplicableBound(f"{name} does not apply to {tag} shapes")
    A, L = report.A, report.L
    if name == "polya_szego":
        return rho * rho * A / 8.0
    if name == "a3l2_lower":
        return A**3 / (3.0 * L * L)
    if name == "cheeger":
        return 32.0 * math.pi * A**4 / (L + math.sqrt(4.0 * math.pi * A)) ** 4
    if name == "solynin":
        return 9.0 * math.sqrt(3.0) / 20.0 * rho**4
    if name == "cubic_trial":
        if apex_tau is None:
            raise InapplicableBound("cubic_trial needs the apex half-angle tangent")
        return A * A / (30.0 * apex_tau + 10.0 / apex_tau)
    if name == "st_venant":
        return A * A / (8.0 * math.pi)
    if name == "sigma_inf":
        return rho * report.i2 / 16.0
    if name == "makai":
        return rho * rho * A / 3.0
    return 2.0 * A**3 / (3.0 * L * L)


def classical_bounds(
    report: GeometricReport,
    rho: float,
    shape_tag: str,
    apex_tau: float | None = None,
) -> dict[str, ClassicalBound]:
    """Every classical bound, with inapplicable ones tagged and valued ``None``."""
    out: dict[str, ClassicalBound] = {}
    for name in BOUND_NAMES:
        kind = "lower" if name in _LOWER else "upper"
        ok = _applies(name, shape_tag)
        value = classical_bound(name, report, rho, shape_tag, apex_tau) if ok else None
        out[name] = ClassicalBound(value, kind, _APPLICABILITY.get(name, "all"), ok)
    return out


THIN_ASYMPTOTES = {
    "thin_rectangle": 1.0 / 3.0,
    "thin_isosceles": 1.0 / 6.0,
    "q0_minus_thin_isosceles": 21.0 / 128.0,
}


def thin_asymptote(kind: str) -> float:
    """Limit of ``Q / (rho^2 A)`` along a thinning family."""
    try:
        return THIN_ASYMPTOTES[kind]
    except KeyError:
        raise KeyError(f"unknown thin family {kind!r}") from None


def salani_lower(report: GeometricReport, rho: float) -> float:
    """Distance-moment lower bound; for tangential shapes it reduces to ``A rho^2 / 8``."""
    return report.A * rho * rho / 8.0


def bounds_report(shape: Shape) -> BoundsReport:
    """All bounds for one shape in its own units."""
    rep = functionals(shape)
    rho = shape.rho
    sig = sigma_functionals(rep, rho)
    quad = rigidity_quadratic(rep, rho)
    q_minus, q_plus = q0_roots_from_sigmas(rep.A, rep.L, sig)
    tag = shape_tag(shape)
    tau = apex_tan(shape) if tag == "isosceles" else None
    return BoundsReport(
        q0_minus=q_minus,
        q0_plus=q_plus,
        q_B=rho * rho * rep.A / 8.0,
        q_upper_sigma=sig.sigma_inf,
        q1_tangential=4.0 * q_minus / rho,
        sigma_inf=sig.sigma_inf,
        sigma_one=sig.sigma_one,
        quadratic=quad,
        classical=classical_bounds(rep, rho, tag, tau),
    )
