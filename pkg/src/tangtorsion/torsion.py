"""Grid solver for the torsion problem ``-Laplace(u) = 1`` with ``u = 0`` outside.

The domain is sampled on a uniform grid centred on the incentre.  Nodes
strictly inside carry unknowns; a neighbour that falls outside is replaced by
the boundary point on the same grid line, where ``u = 0``, using the
symmetric ghost-value treatment so the matrix stays symmetric positive
definite and conjugate gradients apply.

``Q0 = integral of u`` is evaluated with a trapezoidal rule along grid lines
whose end cells stop exactly at the boundary, averaged over the two axes.
Successive halvings of ``h`` are combined by Richardson extrapolation.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from .errors import NonConvergent, ParameterOutOfRange, ResolutionTooCoarse, UnsupportedExponent
from .polygon import Disk, Shape, TangentialPolygon, side_normal_angles, vertices

MIN_NODES_ACROSS = 20
CG_RTOL = 1e-10
_INSIDE_RTOL = 1e-12
_MIN_THETA = 1e-10
_DIRECTIONS = ((1, 0), (-1, 0), (0, 1), (0, -1))


@dataclass(frozen=True)
class TorsionSolution:
    q0_estimate: float
    resolutions_used: tuple[float, ...]
    richardson_error: float
    max_u: float
    level_values: tuple[float, ...] = field(default=())

    def as_dict(self) -> dict[str, Any]:
        return {
            "q0_estimate": self.q0_estimate,
            "resolutions_used": list(self.resolutions_used),
            "richardson_error": self.richardson_error,
            "max_u": self.max_u,
            "level_values": list(self.level_values),
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "TorsionSolution":
        return cls(
            q0_estimate=data["q0_estimate"],
            resolutions_used=tuple(data["resolutions_used"]),
            richardson_error=data["richardson_error"],
            max_u=data["max_u"],
            level_values=tuple(data.get("level_values", ())),
        )


class _PolygonDomain:
    def __init__(self, poly: TangentialPolygon):
        phi = side_normal_angles(poly)
        self.normals = np.column_stack((np.cos(phi), np.sin(phi)))
        self.rho = poly.rho
        v = vertices(poly)
        self.lo, self.hi = v.min(axis=0), v.max(axis=0)

    def _gap(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        # distance from each point to each side line, positive inside
        return self.rho - (np.multiply.outer(x, self.normals[:, 0])
                           + np.multiply.outer(y, self.normals[:, 1]))

    def contains(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        return np.all(self._gap(x, y) > _INSIDE_RTOL * self.rho, axis=-1)

    def exit_distance(self, x: np.ndarray, y: np.ndarray, dx: int, dy: int) -> np.ndarray:
        speed = self.normals[:, 0] * dx + self.normals[:, 1] * dy
        gap = self._gap(x, y)
        leaving = speed > 1e-14
        t = np.full(gap.shape, np.inf)
        np.divide(gap, speed, out=t, where=np.broadcast_to(leaving, gap.shape))
        return t.min(axis=-1)


class _DiskDomain:
    def __init__(self, disk: Disk):
        self.rho = disk.rho
        self.lo = np.array([-disk.rho, -disk.rho])
        self.hi = -self.lo

    def contains(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        return x * x + y * y < self.rho**2 * (1.0 - _INSIDE_RTOL)

    def exit_distance(self, x: np.ndarray, y: np.ndarray, dx: int, dy: int) -> np.ndarray:
        along = x * dx + y * dy
        return -along + np.sqrt(np.maximum(along * along - (x * x + y * y) + self.rho**2, 0.0))


def _domain(shape: Shape) -> _PolygonDomain | _DiskDomain:
    return _DiskDomain(shape) if isinstance(shape, Disk) else _PolygonDomain(shape)


@dataclass
class _Level:
    h: float
    mask: np.ndarray
    u_grid: np.ndarray
    theta: dict[tuple[int, int], np.ndarray]
    iterations: int


def _solve_level(shape: Shape, nodes_across: int) -> _Level:
    dom = _domain(shape)
    h = 2.0 * shape.rho / nodes_across
    ix = np.arange(math.floor(dom.lo[0] / h) - 1, math.ceil(dom.hi[0] / h) + 2)
    iy = np.arange(math.floor(dom.lo[1] / h) - 1, math.ceil(dom.hi[1] / h) + 2)
    X, Y = np.meshgrid(ix * h, iy * h, indexing="ij")
    mask = dom.contains(X, Y)
    m = int(mask.sum())
    index = np.full(mask.shape, -1, dtype=np.int64)
    index[mask] = np.arange(m)
    I, J = np.nonzero(mask)
    xs, ys, k = X[I, J], Y[I, J], index[I, J]

    diag = np.zeros(m)
    rows, cols = [], []
    theta: dict[tuple[int, int], np.ndarray] = {}
    for dx, dy in _DIRECTIONS:
        nb = mask[I + dx, J + dy]
        diag[nb] += 1.0
        rows.append(k[nb])
        cols.append(index[I + dx, J + dy][nb])
        th = np.ones(m)
        out = ~nb
        th[out] = np.clip(dom.exit_distance(xs[out], ys[out], dx, dy) / h, _MIN_THETA, 1.0)
        diag[out] += 1.0 / th[out]
        theta[(dx, dy)] = th
    r = np.concatenate(rows)
    c = np.concatenate(cols)
    mat = sp.csr_matrix(
        (np.concatenate((diag, -np.ones(r.size))),
         (np.concatenate((np.arange(m), r)), np.concatenate((np.arange(m), c)))),
        shape=(m, m),
    )
    # scaled by h^2: mat @ u = h^2 * 1
    rhs = np.full(m, h * h)
    precond = sp.diags(1.0 / diag)
    count = [0]

    def tick(_: np.ndarray) -> None:
        count[0] += 1

    u, info = spla.cg(mat, rhs, x0=np.zeros(m), rtol=CG_RTOL, atol=0.0,
                      maxiter=20 * m + 1000, M=precond, callback=tick)
    if info != 0:
        raise NonConvergent(f"conjugate gradients stopped with info={info}")
    u_grid = np.zeros(mask.shape)
    u_grid[mask] = u
    theta_grid = {}
    for key, th in theta.items():
        g = np.zeros(mask.shape)
        g[mask] = th
        theta_grid[key] = g
    return _Level(h, mask, u_grid, theta_grid, count[0])


def _end_slope(inner: float, last: float, theta: float, h: float) -> float:
    """Outward slope at the last node from the parabola through the boundary zero.

    Nodes sit at ``-h`` (value ``inner``) and ``0`` (value ``last``); the
    boundary is at ``theta * h``.
    """
    return -(inner * theta / (1.0 + theta) + last * (1.0 - theta) / theta) / h


def _corrected_trapezoid(vals: np.ndarray, h: float, th_lo: float, th_hi: float) -> float:
    """Trapezoid over nodes plus cut end cells, with endpoint slope corrections."""
    total = 0.5 * (vals[:-1] + vals[1:]).sum() * h
    total += 0.5 * h * (th_lo * vals[0] + th_hi * vals[-1])
    if vals.size >= 2:
        slope_hi = _end_slope(vals[-2], vals[-1], th_hi, h)
        slope_lo = -_end_slope(vals[1], vals[0], th_lo, h)
        total -= h * h * (slope_hi - slope_lo) / 12.0
    return float(total)


def _line_trapezoid(lvl: _Level, axis: int) -> float:
    """Integrate along ``axis`` lines, then across them, with cut end cells."""
    h = lvl.h
    u, mask = lvl.u_grid, lvl.mask
    fwd = (1, 0) if axis == 0 else (0, 1)
    back = (-1, 0) if axis == 0 else (0, -1)
    th_f, th_b = lvl.theta[fwd], lvl.theta[back]
    if axis == 1:
        u, mask, th_f, th_b = u.T, mask.T, th_f.T, th_b.T
    lines, integrals = [], []
    for j in range(mask.shape[1]):
        inside = np.flatnonzero(mask[:, j])
        if inside.size == 0:
            continue
        a, b = inside[0], inside[-1]
        integrals.append(_corrected_trapezoid(u[inside, j], h, th_b[a, j], th_f[b, j]))
        lines.append(j)
    g = np.array(integrals)
    lo = _outer_end_fraction(lvl, axis, lines[0], -1)
    hi = _outer_end_fraction(lvl, axis, lines[-1], +1)
    return _corrected_trapezoid(g, h, lo, hi)


def _outer_end_fraction(lvl: _Level, axis: int, line: int, step: int) -> float:
    """Fraction of ``h`` between the outermost grid line and the domain's extent."""
    key = (0, step) if axis == 0 else (step, 0)
    th = lvl.theta[key]
    if axis == 0:
        sel = lvl.mask[:, line]
        return float(th[sel, line].max())
    sel = lvl.mask[line, :]
    return float(th[line, sel].max())


def level_integral(lvl: _Level) -> float:
    return 0.5 * (_line_trapezoid(lvl, 0) + _line_trapezoid(lvl, 1))


def solve_torsion(
    shape: Shape,
    target_rel_err: float = 5e-3,
    *,
    base_resolution: int = 40,
    max_levels: int = 4,
    max_unknowns: int = 4_000_000,
) -> TorsionSolution:
    """Grid estimate of the torsional rigidity ``Q0`` of a polygon or disk.

    Args:
        shape: tangential polygon or disk.
        target_rel_err: refinement stops once the estimated relative error of
            the extrapolated value drops below this.
        base_resolution: grid nodes across the incircle diameter on the
            coarsest level; doubled on each further level.
        max_levels: cap on the number of grid levels.
        max_unknowns: refuse levels larger than this.

    Raises:
        ResolutionTooCoarse: ``base_resolution`` below 20.
        NonConvergent: the finest levels still disagree by more than five
            times the target.
    """
    if target_rel_err < 1e-4:
        raise ParameterOutOfRange("target_rel_err must be at least 1e-4")
    if base_resolution < MIN_NODES_ACROSS:
        raise ResolutionTooCoarse(
            f"{base_resolution} nodes across 2*rho; need at least {MIN_NODES_ACROSS}"
        )
    if max_levels < 2:
        raise ParameterOutOfRange("Richardson extrapolation needs two levels")
    values: list[float] = []
    spacings: list[float] = []
    max_u = 0.0
    err = math.inf
    estimate = math.nan
    n = base_resolution
    for level in range(max_levels):
        if level >= 2 and _estimated_unknowns(shape, n) > max_unknowns:
            break
        lvl = _solve_level(shape, n)
        values.append(level_integral(lvl))
        spacings.append(lvl.h)
        max_u = float(lvl.u_grid.max())
        if level >= 1:
            estimate = values[-1] + (values[-1] - values[-2]) / 3.0
            err = abs(values[-1] - values[-2]) / (3.0 * abs(estimate))
            if err <= target_rel_err:
                break
        n *= 2
    if not err <= 5.0 * target_rel_err:
        raise NonConvergent(
            f"grid levels disagree by {err:.2e}, above 5x the target {target_rel_err:.1e}"
        )
    return TorsionSolution(estimate, tuple(spacings), err, max_u, tuple(values))


def _estimated_unknowns(shape: Shape, nodes_across: int) -> float:
    h = 2.0 * shape.rho / nodes_across
    if isinstance(shape, Disk):
        return math.pi * shape.rho**2 / h**2
    return shape.rho**2 * math.fsum(shape.t_values) / h**2


# distance moments ---------------------------------------------------------

def _triangle_rule(order: int) -> tuple[np.ndarray, np.ndarray]:
    """Collapsed Gauss-Legendre rule on the reference triangle (0,0),(1,0),(0,1)."""
    x, w = np.polynomial.legendre.leggauss(order)
    x = 0.5 * (x + 1.0)
    w = 0.5 * w
    a, b = np.meshgrid(x, x, indexing="ij")
    wa, wb = np.meshgrid(w, w, indexing="ij")
    pts = np.column_stack(((a * (1 - b)).ravel(), b.ravel()))
    weights = (wa * wb * (1 - b)).ravel()
    return pts, weights


def integrate_over_fan(poly: TangentialPolygon, func, order: int = 8,
                       subdivisions: int = 1) -> float:
    """Integrate ``func(x, y)`` over the polygon split into incentre triangles."""
    ref, w = _triangle_rule(order)
    verts = vertices(poly)
    total = []
    for k in range(poly.n):
        p1, p2 = verts[k], verts[(k + 1) % poly.n]
        for tri in _subdivide(np.zeros(2), p1, p2, subdivisions):
            a, b, c = tri
            jac = abs((b[0] - a[0]) * (c[1] - a[1]) - (c[0] - a[0]) * (b[1] - a[1]))
            pts = a + np.outer(ref[:, 0], b - a) + np.outer(ref[:, 1], c - a)
            total.append(jac * np.dot(w, func(pts[:, 0], pts[:, 1])))
    return math.fsum(total)


def _subdivide(a: np.ndarray, b: np.ndarray, c: np.ndarray, m: int):
    if m <= 1:
        yield (a, b, c)
        return
    for i in range(m):
        for j in range(m - i):
            p = a + (i * (b - a) + j * (c - a)) / m
            yield (p, p + (b - a) / m, p + (c - a) / m)
            if i + j < m - 1:
                q = p + (b - a) / m + (c - a) / m
                yield (q, p + (c - a) / m, p + (b - a) / m)


def distance_to_boundary(poly: TangentialPolygon, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Distance from interior points to the nearest side."""
    dom = _PolygonDomain(poly)
    return dom._gap(np.asarray(x), np.asarray(y)).min(axis=-1)


def distance_moment(shape: Shape, q: int, *, order: int = 8, subdivisions: int = 2) -> float:
    """Integral of ``dist(z, boundary)^q`` over the shape, by quadrature.

    Raises:
        UnsupportedExponent: ``q`` outside {0, 1, 2}.
    """
    if q not in (0, 1, 2) or isinstance(q, bool):
        raise UnsupportedExponent(f"exponent {q!r} not in {{0, 1, 2}}")
    if isinstance(shape, Disk):
        r, w = np.polynomial.legendre.leggauss(order)
        r = 0.5 * shape.rho * (r + 1.0)
        w = 0.5 * shape.rho * w
        return float(2.0 * math.pi * np.dot(w, (shape.rho - r) ** q * r))
    return integrate_over_fan(
        shape, lambda x, y: distance_to_boundary(shape, x, y) ** q,
        order=order, subdivisions=subdivisions,
    )
