"""Which side-length sequences belong to a tangential polygon.

Side ``k`` of a tangential polygon equals ``eta_k + eta_{k+1}``, i.e.
``M @ eta = s`` with ``M = I + P`` and ``P`` the cyclic shift.  A side
sequence is realizable exactly when this system has a positive solution.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Any, Sequence

import numpy as np

from .errors import NonPositiveSide, TooFewVertices, WrongArity
from .polygon import TangentialPolygon

PARITY_RTOL = 1e-10
_ZERO_RTOL = 1e-12


@dataclass(frozen=True)
class FeasibilityResult:
    """Verdict on a side sequence.

    ``status`` is ``feasible``, ``feasible_degenerate`` (some tangent length
    is zero) or ``infeasible``.  ``eta`` is present only when a nonnegative
    solution exists; ``nullspace_shift`` is set for even ``n`` once the
    parity test has passed.
    """

    status: str
    eta: tuple[float, ...] | None
    witness: str | None
    nullspace_shift: float | None = None

    @property
    def feasible(self) -> bool:
        return self.status == "feasible"

    def as_dict(self) -> dict[str, Any]:
        return {
            "feasible": self.feasible,
            "status": self.status,
            "eta": list(self.eta) if self.eta is not None else None,
            "witness": self.witness,
            "nullspace_shift": self.nullspace_shift,
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "FeasibilityResult":
        eta = data.get("eta")
        return cls(
            status=data["status"],
            eta=tuple(eta) if eta is not None else None,
            witness=data.get("witness"),
            nullspace_shift=data.get("nullspace_shift"),
        )


def circulant_matrix(n: int) -> np.ndarray:
    """``I + P``; row ``k`` picks out ``eta_k + eta_{k+1}``."""
    if n < 3:
        raise TooFewVertices(f"need n >= 3, got {n}")
    return np.eye(n) + np.roll(np.eye(n), 1, axis=1)


def odd_inverse(n: int) -> np.ndarray:
    """Exact inverse of the circulant for odd ``n``: alternating cyclic sums over two."""
    if n % 2 == 0:
        raise ValueError("the circulant is singular for even n")
    signs = np.array([(-1.0) ** k for k in range(n)])
    idx = (np.arange(n)[:, None] + np.arange(n)[None, :]) % n
    out = np.zeros((n, n))
    np.put_along_axis(out, idx, np.broadcast_to(signs, (n, n)), axis=1)
    return out / 2.0


def _validate(sides: Sequence[float]) -> np.ndarray:
    s = np.asarray(sides, dtype=float)
    if s.ndim != 1 or s.size < 3:
        raise TooFewVertices(f"need at least 3 sides, got {s.size}")
    if not np.all(np.isfinite(s)) or np.any(s <= 0):
        raise NonPositiveSide("side lengths must be positive and finite")
    return s


def _odd_witness(n: int) -> str:
    return {3: "triangle_inequality", 5: "pentagon_triple"}.get(n, "negative_tangent_length")


def _classify(eta: np.ndarray, scale: float) -> str:
    lo = eta.min()
    if lo > _ZERO_RTOL * scale:
        return "feasible"
    if lo >= -_ZERO_RTOL * scale:
        return "feasible_degenerate"
    return "infeasible"


def solve_tangent_lengths(sides: Sequence[float]) -> FeasibilityResult:
    """Tangent lengths realizing ``sides``, or a tag naming what fails.

    For odd ``n`` the solution is unique.  For even ``n`` the solutions form
    a line ``eta0 + c * (1, -1, 1, ...)``; the shift ``c`` maximizing the
    smallest tangent length is returned.

    Raises:
        NonPositiveSide: some side is not positive.
    """
    s = _validate(sides)
    n = s.size
    scale = float(s.max())
    if n % 2 == 1:
        eta = odd_inverse(n) @ s
        status = _classify(eta, scale)
        if status == "infeasible":
            return FeasibilityResult(status, None, _odd_witness(n))
        return FeasibilityResult(status, tuple(float(v) for v in np.maximum(eta, 0.0)), None)

    even_sum, odd_sum = math.fsum(s[0::2]), math.fsum(s[1::2])
    if abs(even_sum - odd_sum) > PARITY_RTOL * (even_sum + odd_sum):
        return FeasibilityResult("infeasible", None, "parity_sum")
    eta0 = np.linalg.pinv(circulant_matrix(n)) @ s
    # eta_k + c on even k, eta_k - c on odd k: the two lower envelopes cross once
    lo_even, lo_odd = eta0[0::2].min(), eta0[1::2].min()
    c = float(0.5 * (lo_odd - lo_even))
    nv = np.array([(-1.0) ** k for k in range(n)])
    eta = eta0 + c * nv
    status = _classify(eta, scale)
    if status == "infeasible":
        witness = "adjacent_triple" if n == 6 else "negative_tangent_length"
        return FeasibilityResult(status, None, witness, c)
    return FeasibilityResult(status, tuple(float(v) for v in np.maximum(eta, 0.0)), None, c)


def hexagon_conditions(sides: Sequence[float]) -> bool:
    """Closed-form test for six sides: equal alternating sums and three triples."""
    s = [float(v) for v in sides]
    if len(s) != 6:
        raise WrongArity(f"expected 6 sides, got {len(s)}")
    s1, s2, s3, s4, s5, s6 = s
    odd, even = s1 + s3 + s5, s2 + s4 + s6
    if abs(odd - even) > PARITY_RTOL * (odd + even):
        return False
    if min(s) <= 0:
        return False
    return s1 - s2 + s3 > 0 and s3 - s4 + s5 > 0 and s5 - s6 + s1 > 0


def pentagon_conditions(sides: Sequence[float]) -> bool:
    """Five sides: each triple holding exactly one adjacent pair outweighs the rest."""
    s = [float(v) for v in sides]
    if len(s) != 5:
        raise WrongArity(f"expected 5 sides, got {len(s)}")
    if min(s) <= 0:
        return False

    def adjacent(a: int, b: int) -> bool:
        return (a - b) % 5 in (1, 4)

    for triple in itertools.combinations(range(5), 3):
        pairs = sum(adjacent(a, b) for a, b in itertools.combinations(triple, 2))
        if pairs != 1:
            continue
        rest = [k for k in range(5) if k not in triple]
        if sum(s[k] for k in triple) < sum(s[k] for k in rest):
            return False
    return True


def triangle_conditions(sides: Sequence[float]) -> bool:
    a, b, c = (float(v) for v in sides)
    return a < b + c and b < a + c and c < a + b


def _elementary_symmetric(x: Sequence[float]) -> list[float]:
    coeffs = [1.0]
    for v in x:
        nxt = coeffs + [0.0]
        for k in range(len(coeffs), 0, -1):
            nxt[k] += v * coeffs[k - 1]
        coeffs = nxt
    return coeffs


def angle_sum_residuals(
    poly: TangentialPolygon | Sequence[float],
) -> tuple[float, float]:
    """Alternating sums of the elementary symmetric polynomials of ``1/T_k``.

    Returns ``(e0 - e2 + e4 - ..., e1 - e3 + e5 - ...)``.  They are the real
    and imaginary parts of ``prod(1 + i/T_k)``, whose argument is the sum of
    half-angles.  The first vanishes for valid odd ``n``, the second for
    valid even ``n``.
    """
    t = poly.t_values if isinstance(poly, TangentialPolygon) else tuple(poly)
    e = _elementary_symmetric([1.0 / v for v in t])
    cos_part = [(-1) ** (k // 2) * e[k] for k in range(0, len(e), 2)]
    sin_part = [(-1) ** (k // 2) * e[k] for k in range(1, len(e), 2)]
    return math.fsum(cos_part), math.fsum(sin_part)


def applicable_residual(poly: TangentialPolygon | Sequence[float]) -> float:
    """The residual that must vanish, scaled by ``prod sqrt(1 + 1/T_k^2)``."""
    t = poly.t_values if isinstance(poly, TangentialPolygon) else tuple(poly)
    re, im = angle_sum_residuals(t)
    modulus = math.prod(math.hypot(1.0, 1.0 / v) for v in t)
    return (re if len(t) % 2 else im) / modulus
