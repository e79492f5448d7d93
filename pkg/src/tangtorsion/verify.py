"""Bound sandwich checks against the grid solver over a fixed set of shapes."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any

from .atlas import ShapeFamily
from .bounds import BoundsReport, bounds_report
from .polygon import functionals
from .torsion import TorsionSolution, solve_torsion

SQRT3 = math.sqrt(3.0)


def regression_set() -> list[ShapeFamily]:
    shapes = [ShapeFamily("disk", {}, {"rho": 1.0})]
    shapes += [ShapeFamily("regular", {"n": n}, {"area": math.pi}) for n in range(3, 9)]
    for s in (0.1, 2.0 - SQRT3, math.sqrt(2.0) - 1.0, 0.7):
        shapes.append(ShapeFamily("isosceles_sigma", {"sigma": s}, {"area": SQRT3}))
    shapes += [ShapeFamily("rhombus_tau", {"tau": t}, {"area": math.pi}) for t in (1.0, 2.0, 4.0)]
    return shapes


# reference spot values of Q0, keyed by regression-set label
SPOT_VALUES: dict[str, float] = {
    ShapeFamily("disk", {}, {"rho": 1.0}).label(): math.pi / 8,
    ShapeFamily("regular", {"n": 4}, {"area": math.pi}).label(): 0.34687,
    ShapeFamily("isosceles_sigma", {"sigma": 2.0 - SQRT3}, {"area": SQRT3}).label(): SQRT3 / 20,
    ShapeFamily("isosceles_sigma", {"sigma": math.sqrt(2.0) - 1.0},
                {"area": SQRT3}).label(): 0.07827,
}
SPOT_RTOL = 0.01


@dataclass
class SandwichResult:
    label: str
    bounds: BoundsReport
    solution: TorsionSolution
    checks: dict[str, bool] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def as_dict(self) -> dict[str, Any]:
        return {
            "shape": self.label,
            "passed": self.passed,
            "checks": dict(self.checks),
            "q0_estimate": self.solution.q0_estimate,
            "richardson_error": self.solution.richardson_error,
            "q0_minus": self.bounds.q0_minus,
            "q0_plus": self.bounds.q0_plus,
        }


def sandwich(entry: ShapeFamily, rel_err: float = 5e-3) -> SandwichResult:
    """Check ``q_B <= q0_minus <= Q0 <= min(upper bounds) <= q0_plus`` within the error band."""
    shape = entry.build()
    rep = functionals(shape)
    b = bounds_report(shape)
    sol = solve_torsion(shape, rel_err)
    q, err = sol.q0_estimate, sol.richardson_error
    q_hi, q_lo = q * (1.0 + err), q * (1.0 - err)
    uppers = min(b.sigma_inf, rep.A**2 / (8.0 * math.pi), shape.rho**2 * rep.A / 3.0)
    checks = {
        "q_B<=q0_minus": b.q_B <= b.q0_minus * (1 + 1e-12),
        "q0_minus<=Q0": b.q0_minus <= q_hi,
        "Q0<=upper": q_lo <= uppers,
        "upper<=q0_plus": uppers <= b.q0_plus * (1 + 1e-12),
        "Q0<=sigma_inf": q_lo <= b.sigma_inf,
        "max_u<=rho^2/2": sol.max_u <= 0.5 * shape.rho**2 * (1 + 1e-9),
    }
    label = entry.label()
    if label in SPOT_VALUES:
        ref = SPOT_VALUES[label]
        checks["spot_value"] = abs(q - ref) <= SPOT_RTOL * ref
    return SandwichResult(label, b, sol, checks)


def run_suite(rel_err: float = 5e-3) -> list[SandwichResult]:
    return [sandwich(s, rel_err) for s in regression_set()]
