import math

import numpy as np
import pytest

from tangtorsion import atlas
from tangtorsion.atlas import (
    ShapeFamily, bicentric_quad_envelope, bicentric_quad_point, blundon_curves, blundon_x,
    cap_curve, cap_x, diagram_csv, diagram_point, family_samples, hadwiger_gap, isosceles,
    isosceles_closed_forms, isosceles_p1, kite, regular_closed_forms, regular_ngon, rhombus,
    rhombus_closed_forms, sample_random, triangle_angles,
)
from tangtorsion.bounds import sigma_functionals
from tangtorsion.errors import ParameterOutOfRange, TooFewVertices, UnknownCurve
from tangtorsion.polygon import (
    Disk, TangentialPolygon, from_angles, from_tangent_lengths, functionals,
)

SQ3 = math.sqrt(3.0)
SQ2 = math.sqrt(2.0)


def test_regular_closed_forms_sweep():
    for n in range(3, 41):
        for area in (0.5, math.pi, 10.0):
            c = regular_closed_forms(n, area)
            p = regular_ngon(n, area=area)
            rep = functionals(p)
            sig = sigma_functionals(rep, p.rho)
            assert rep.A == pytest.approx(area, rel=1e-12)
            for key, val in (("L", rep.L), ("i2", rep.i2), ("i4", rep.i4),
                             ("sigma_inf", sig.sigma_inf), ("rho", p.rho)):
                assert val == pytest.approx(c[key], rel=1e-12)
            # cancellation in the generic sigma_one grows like n^4
            assert sig.sigma_one == pytest.approx(c["sigma_one"], rel=1e-12 * max(1, n**4 / 100))


def test_regular_examples():
    sq = regular_ngon(4, area=math.pi)
    sig = sigma_functionals(functionals(sq), sq.rho)
    assert functionals(sq).L == pytest.approx(4 * math.sqrt(math.pi), rel=1e-14)
    assert sig.sigma_inf == pytest.approx(math.pi**2 / 24, rel=1e-14)
    assert -sig.sigma_one == pytest.approx(math.pi**2.5 / 720, rel=1e-12)
    tri = regular_ngon(3, circumradius=1.0)
    assert tri.rho == pytest.approx(0.5, rel=1e-15)
    assert functionals(tri).A == pytest.approx(3 * SQ3 / 4, rel=1e-14)
    c = regular_closed_forms(12, math.pi)
    assert c["sigma_inf"] == pytest.approx(0.39287, abs=5e-6)
    assert -c["sigma_one"] == pytest.approx(0.0001738, abs=5e-8)
    with pytest.raises(TooFewVertices):
        regular_ngon(2)


def test_isosceles_closed_forms_sweep():
    for s in np.linspace(0.01, 0.99, 99):
        for area in (1.0, SQ3):
            p = isosceles(float(s), area=area)
            rep = functionals(p)
            sig = sigma_functionals(rep, p.rho)
            c = isosceles_closed_forms(float(s), area)
            assert rep.A == pytest.approx(area, rel=1e-12)
            assert rep.L == pytest.approx(c["L"], rel=1e-12)
            assert p.rho == pytest.approx(c["rho"], rel=1e-12)
            assert sig.sigma_inf == pytest.approx(c["sigma_inf"], rel=1e-12)
            assert sig.sigma_one == pytest.approx(c["sigma_one"], rel=1e-11)


def test_isosceles_p1_positive():
    assert all(isosceles_p1(float(s)) > 0 for s in np.linspace(1e-6, 1 - 1e-6, 10_001))


def test_isosceles_examples():
    eq = isosceles(2 - SQ3, area=SQ3)
    assert all(t == pytest.approx(SQ3, rel=1e-14) for t in eq.t_values)
    sig = sigma_functionals(functionals(eq), eq.rho)
    assert sig.sigma_inf == pytest.approx(1 / (4 * SQ3), rel=1e-14)
    right = isosceles(SQ2 - 1, circumradius=1.0)
    assert functionals(right).A == pytest.approx(1.0, rel=1e-14)
    assert right.rho == pytest.approx(SQ2 - 1, rel=1e-14)
    assert sigma_functionals(functionals(right), right.rho).sigma_inf == \
        pytest.approx((3 - 2 * SQ2) / 3, rel=1e-13)
    # apex angle recovers 4*atan(sigma)
    assert right.angles()[0] == pytest.approx(math.pi / 2, rel=1e-14)
    for bad in (0.0, 1.0, -0.2):
        with pytest.raises(ParameterOutOfRange):
            isosceles(bad)


def test_rhombus():
    for tau in np.geomspace(0.05, 20, 41):
        p = rhombus(float(tau), rho=1.3)
        rep = functionals(p)
        c = rhombus_closed_forms(float(tau), 1.3)
        for key in ("L", "i2", "i4"):
            assert getattr(rep, key) == pytest.approx(c[key], rel=1e-12)
        mirror = functionals(rhombus(1.0 / float(tau), rho=1.3))
        assert mirror.as_dict() == pytest.approx(rep.as_dict(), rel=1e-14)
        a = p.angles()
        assert a[0] + a[1] == pytest.approx(math.pi, rel=1e-14)
        assert math.tan(a[0] / 2) == pytest.approx(float(tau), rel=1e-12)
    sq = functionals(rhombus(1.0, rho=1.0))
    assert sq.L == pytest.approx(8) and sq.i2 == pytest.approx(32 / 3)
    r2 = functionals(rhombus(2.0, rho=1.0))
    # (4/3) rho^3 (tau + 1/tau)^3 = 125/6
    assert r2.L == pytest.approx(10, rel=1e-14) and r2.i2 == pytest.approx(125 / 6, rel=1e-14)
    # tangent lengths (2, 1/2) pattern
    via_eta = functionals(from_tangent_lengths([0.5, 2, 0.5, 2], 1.0))
    assert via_eta.i2 == pytest.approx(125 / 6, rel=1e-14)
    with pytest.raises(ParameterOutOfRange):
        rhombus(0.0)


def test_kite():
    k = kite(1.0, 2.0, math.pi / 2)
    assert np.allclose(k.sides(), [1, 2, 2, 1], rtol=1e-14)
    assert k.angles()[1] == pytest.approx(math.pi / 2, rel=1e-14)
    assert k.rho == pytest.approx(2 / 3, rel=1e-14)
    # right kite area is s1*s2
    assert functionals(k).A == pytest.approx(2.0, rel=1e-14)
    with pytest.raises(ParameterOutOfRange):
        kite(1.0, 2.0, 1.0)


def test_triangle_angles():
    p = triangle_angles(0.5, 1.2, area=2.0)
    assert np.allclose(p.angles(), [0.5, 1.2, math.pi - 1.7], rtol=1e-12)
    assert functionals(p).A == pytest.approx(2.0, rel=1e-12)
    with pytest.raises(ParameterOutOfRange):
        triangle_angles(2.0, 1.5)


def test_circumradius_normalization():
    for p in (triangle_angles(0.4, 1.1, circumradius=1.0), regular_ngon(7, circumradius=1.0)):
        from tangtorsion.polygon import vertices
        v = vertices(p)
        # circumcentre is the origin only for regular shapes; check via side lengths
        if p.n == 3:
            a, b, c = p.sides()
            assert a * b * c / (4 * functionals(p).A) == pytest.approx(1.0, rel=1e-12)
        else:
            assert np.allclose(np.hypot(*v.T), 1.0, rtol=1e-12)
    with pytest.raises(ParameterOutOfRange):
        atlas.normalize(rhombus(2.0), circumradius=1.0)
    with pytest.raises(ParameterOutOfRange):
        atlas.normalize(rhombus(2.0), rho=1.0, area=1.0)


def test_shape_family_build():
    for fam, params, norm in (
        ("regular", {"n": 5}, {"area": math.pi}),
        ("isosceles_sigma", {"sigma": 0.3}, {"area": SQ3}),
        ("rhombus_tau", {"tau": 2.0}, {"rho": 1.0}),
        ("kite", {"s1": 1.0, "s2": 2.0, "beta": 1.5}, {}),
        ("triangle_angles", {"alpha": 0.7, "beta": 0.9}, {"circumradius": 1.0}),
    ):
        assert isinstance(ShapeFamily(fam, params, norm).build(), TangentialPolygon)
    d = ShapeFamily("disk", {}, {"area": math.pi}).build()
    assert isinstance(d, Disk) and d.rho == pytest.approx(1.0)
    with pytest.raises(ParameterOutOfRange):
        ShapeFamily("one_cap").build()


def test_isosceles_extremality():
    grid = np.unique(np.append(np.linspace(0.01, 0.99, 981), 2 - SQ3))
    vals = []
    for s in grid:
        p = isosceles(float(s), area=SQ3)
        rep = functionals(p)
        vals.append((rep.L, rep.i2, sigma_functionals(rep, p.rho).sigma_inf))
    vals = np.array(vals)
    for col in range(3):
        assert grid[np.argmin(vals[:, col])] == pytest.approx(2 - SQ3, abs=1e-12)


def test_rhombus_extremality():
    grid = np.unique(np.append(np.geomspace(0.1, 10, 2001), 1.0))
    vals = np.array([[getattr(functionals(rhombus(float(t), rho=1.0)), k)
                      for k in ("L", "i2", "i4", "d_O")] for t in grid])
    for col in range(4):
        assert grid[np.argmin(vals[:, col])] == pytest.approx(1.0, abs=1e-12)


def test_sampler_determinism_and_validity():
    a = sample_random(5, 300, seed=4)
    b = sample_random(5, 300, seed=4)
    assert a == b
    assert sample_random(5, 300, seed=5) != a
    tri = sample_random(3, 10_000, seed=12)
    assert len(tri) == 10_000
    for p in tri:
        assert all(t > 0 for t in p.t_values)
        assert abs(sum(p.angles()) - math.pi) <= 1e-9 * math.pi
        assert np.all((p.angles() > atlas.SAMPLER_EPS) & (p.angles() < math.pi - atlas.SAMPLER_EPS))


def test_sampler_normalization_and_heavy_tail():
    ps = sample_random(6, 50, seed=1, area=2.0)
    assert all(functionals(p).A == pytest.approx(2.0, rel=1e-12) for p in ps)
    heavy = sample_random(6, 2000, seed=1, concentration=0.2)
    light = sample_random(6, 2000, seed=1)
    spread = lambda ps: np.median([max(p.t_values) for p in ps])
    assert spread(heavy) > spread(light)


def test_hexagon_jensen_cloud():
    floor = 2 * 6 * math.tan(math.pi / 6)
    assert floor == pytest.approx(4 * SQ3)
    for p in sample_random(6, 10_000, seed=33):
        assert functionals(p).L / p.rho >= floor * (1 - 1e-15)


def test_hadwiger_on_samples():
    shapes = [p for n in range(3, 9) for p in sample_random(n, 500, seed=n)]
    shapes += [isosceles(float(s)) for s in np.linspace(0.01, 0.99, 50)]
    shapes += [rhombus(float(t)) for t in np.geomspace(0.01, 1, 50)]
    for p in shapes:
        x, y = diagram_point(p)
        assert hadwiger_gap(x, y) >= 0
        assert 0 < y <= 1


def test_cap_endpoints():
    assert cap_x("one_cap", 1.0) == pytest.approx(2 * math.pi, abs=1e-12)
    assert cap_x("one_cap", 1e-12) == pytest.approx(2.0, abs=1e-9)
    assert cap_x("one_cap", 0.5) == pytest.approx(2 * math.pi / 3 + SQ3, abs=1e-12)
    assert cap_x("one_cap", 0.5) == pytest.approx(3.82645, abs=5e-6)
    assert cap_x("two_cap_lower", 1.0) == pytest.approx(2 * math.pi, abs=1e-12)
    assert cap_x("two_cap_lower", 1e-12) == pytest.approx(4.0, abs=1e-9)
    assert cap_x("bcs03_upper", 1.0) == pytest.approx(2 * math.pi, abs=1e-12)
    with pytest.raises(UnknownCurve):
        cap_x("three_cap", 0.5)
    with pytest.raises(UnknownCurve):
        cap_curve("three_cap", 5)


def test_cap_curve_grid():
    pts = cap_curve("one_cap", 10)
    ys = [p.y for p in pts]
    assert ys == sorted(ys) and ys[-1] == 1.0 and ys[0] > 0
    lo, hi = cap_curve("two_cap_lower", 20), cap_curve("bcs03_upper", 20)
    assert all(a.x <= b.x for a, b in zip(lo, hi))


def test_one_cap_limit_of_polygons():
    for y in (0.3, 0.5, 0.8):
        t0 = math.sqrt(1 / y**2 - 1)  # d_O = rho sqrt(1 + T0^2)
        m = 4000
        # half-angle budget left for the m flat vertices
        rest = (m + 1 - 2) * math.pi / 2 - math.atan2(1, t0)
        tf = 1.0 / math.tan(rest / m)
        p = TangentialPolygon(1.0, (t0,) + (tf,) * m)
        x, yy = diagram_point(p)
        assert yy == pytest.approx(y, rel=1e-12)
        assert x == pytest.approx(cap_x("one_cap", y), rel=1e-5)


def test_two_cap_lower_limit_of_polygons():
    # two opposite sharp vertices; on this symmetric cap R = d_O
    for y in (0.3, 0.6):
        t0 = math.sqrt(1 / y**2 - 1)
        m = 2000
        rest = (2 * m + 2 - 2) * math.pi / 2 - 2 * math.atan2(1, t0)
        tf = 1.0 / math.tan(rest / (2 * m))
        p = TangentialPolygon(1.0, (t0,) + (tf,) * m + (t0,) + (tf,) * m)
        x, _ = diagram_point(p)
        assert x == pytest.approx(cap_x("two_cap_lower", y), rel=1e-5)


def test_blundon():
    assert blundon_x(0.5, True) == pytest.approx(3 * SQ3, abs=1e-12)
    assert blundon_x(0.5, False) == pytest.approx(3 * SQ3, abs=1e-12)
    assert blundon_x(1e-14, False) == pytest.approx(0.0, abs=1e-5)
    assert blundon_x(0.0, True) == pytest.approx(4.0, abs=1e-12)
    lo, hi = blundon_curves(25)
    assert lo[-1].y == 0.5 and lo[-1].x == pytest.approx(hi[-1].x, abs=1e-12)
    assert all(a.x <= b.x for a, b in zip(lo, hi))


def _rv_point(p):
    a, b, c = p.sides()
    rep = functionals(p)
    rv = a * b * c / (4 * rep.A)
    return rep.L / rv, p.rho / rv


def test_isosceles_triangles_lie_on_blundon_boundary():
    for s in np.linspace(0.02, 0.98, 49):
        x, y = _rv_point(isosceles(float(s)))
        on_lower = abs(x - blundon_x(y, False))
        on_upper = abs(x - blundon_x(y, True))
        assert min(on_lower, on_upper) < 1e-9


def test_scalene_triangles_inside_blundon():
    rng = np.random.default_rng(2)
    for _ in range(2000):
        a, b = rng.uniform(0.05, 2.5, size=2)
        if a + b >= math.pi - 0.05:
            continue
        x, y = _rv_point(triangle_angles(a, b))
        assert blundon_x(y, False) - 1e-9 <= x <= blundon_x(y, True) + 1e-9


def test_bicentric_quad():
    for upper in (False, True):
        x, y = bicentric_quad_point(1.0, upper)
        assert x == pytest.approx(4 * SQ2, abs=1e-12) and y == pytest.approx(1 / SQ2, abs=1e-12)
    lo, hi = bicentric_quad_envelope(40)
    assert lo[0].param1 == 1.0 and hi[-1].param1 == pytest.approx(50.0)
    # limits of the full-perimeter branches
    assert bicentric_quad_point(1e8, False)[0] == pytest.approx(2.0, rel=1e-6)
    assert bicentric_quad_point(1e8, True)[0] == pytest.approx(4.0, rel=1e-6)
    with pytest.raises(ParameterOutOfRange):
        bicentric_quad_point(0.5, True)


@pytest.mark.parametrize("eta1", [1.0, 1.5, 3.0, 10.0])
def test_bicentric_quad_against_construction(eta1):
    kite_ = from_tangent_lengths([eta1, 1.0, 1 / eta1, 1.0], 1.0)
    trap = from_tangent_lengths([eta1, eta1, 1 / eta1, 1 / eta1], 1.0)
    for shape, upper in ((kite_, False), (trap, True)):
        assert diagram_point(shape) == pytest.approx(bicentric_quad_point(eta1, upper), rel=1e-13)


def test_family_samples_csv():
    pts = family_samples("isosceles_sigma", 10)
    text = diagram_csv(pts)
    lines = text.strip().split("\n")
    assert lines[0] == "family,n,param1,param2,x,y"
    assert len(lines) == 11
    # 17 significant digits round-trip exactly
    for line, p in zip(lines[1:], pts):
        cells = line.split(",")
        assert float(cells[4]) == p.x and float(cells[5]) == p.y
    keys = [(p.family, p.n, p.param1, p.param2) for p in pts]
    assert keys == sorted(keys)


def test_family_samples_cover_all_families():
    for fam in ("disk", "regular", "isosceles_sigma", "rhombus_tau", "triangle_angles", "kite",
                "random_tangential", "one_cap", "two_cap", "blundon", "bicentric_quad"):
        pts = family_samples(fam, 6, seed=3)
        assert pts
        assert all(math.isfinite(p.x) and math.isfinite(p.y) and p.x > 0 and p.y > 0 for p in pts)
    assert family_samples("random_tangential", 6, seed=3) == family_samples("random_tangential", 6, seed=3)
    with pytest.raises(ParameterOutOfRange):
        family_samples("hexagram", 5)
