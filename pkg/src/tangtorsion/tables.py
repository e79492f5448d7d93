"""Reference values, transcribed verbatim, plus their recomputation.

Cells are stored as printed strings.  Numeric cells parse directly; symbolic
cells such as ``3*sqrt(3)/4`` are exact expressions evaluated on demand.
Where a row was printed both symbolically and numerically, both are kept
(``exact`` and ``printed``).
"""
from __future__ import annotations

import ast
import math
import operator
from dataclasses import dataclass
from typing import Callable

from .atlas import isosceles, regular_closed_forms, regular_ngon
from .bounds import sigma_functionals
from .errors import UnknownTable
from .polygon import Disk, functionals

TABLE_IDS = ("area_pi", "circumradius_1_regular", "circumradius_1_isosceles")


@dataclass(frozen=True)
class ReferenceTable:
    id: str
    columns: tuple[str, ...]
    rows: tuple[dict[str, str], ...]
    note: str = ""

    def row(self, key: str) -> dict[str, str]:
        for r in self.rows:
            if r[self.columns[0]] == key:
                return r
        raise KeyError(key)

    def value(self, key: str, column: str) -> float | None:
        cell = self.row(key)[column]
        return evaluate(cell) if cell else None


_AREA_PI_COLUMNS = ("n", "4Q0/A^2", "Q0", "L", "sigma_inf", "-sigma_one")
_AREA_PI = (
    ("3", "0.11547", "0.28492", "8.0806", "0.47485", "0.14769"),
    ("4", "0.14058", "0.34687", "7.0898", "0.41123", "0.024296"),
    ("5", "0.14943", "0.36870", "6.7565", "0.39936", "0.007822"),
    ("6", "0.15340", "0.37850", "6.5978", "0.39571", "0.003349"),
    ("7", "0.15546", "0.38358", "6.5086", "0.39426", "0.001689"),
    ("8", "0.15664", "0.38649", "6.4530", "0.39359", "0.0009485"),
    ("9", "0.15736", "0.38827", "6.4159", "0.39325", "0.0005754"),
    ("10", "0.15783", "0.38943", "6.3899", "0.39306", "0.0003699"),
    ("11", "0.15815", "0.39022", "6.3709", "0.39294", "0.0002489"),
    ("12", "0.15837", "0.39076", "6.3566", "0.39287", "0.0001738"),
    ("inf", "0.15915", "0.3927", "6.2832", "0.3927", "0"),
)

_CIRC_COLUMNS = ("n", "form", "4Q0/A^2", "A", "Q0", "L", "sigma_inf", "-sigma_one", "rho")
_CIRC_REGULAR = (
    ("3", "exact", "sqrt(3)/15", "3*sqrt(3)/4", "9*sqrt(3)/320", "3*sqrt(3)",
     "3*sqrt(3)/64", "3*sqrt(3)/320", "1/2"),
    ("3", "printed", "0.11547", "1.2990", "0.0487", "5.1962", "0.0812", "0.0162", "0.5"),
    ("4", "exact", "0.14058", "2", "0.14058", "4*sqrt(2)", "1/6", "sqrt(2)/180", "1/sqrt(2)"),
    ("4", "printed", "", "2", "", "5.6569", "0.1667", "0.007857", "0.707107"),
    ("6", "exact", "0.15340", "3*sqrt(3)/2", "0.2589", "6", "5*sqrt(3)/32", "1/480",
     "sqrt(3)/2"),
    ("6", "printed", "", "2.5981", "", "6", "0.270633", "0.0020833", "0.866025"),
    ("inf", "exact", "1/(2*pi)", "pi", "pi/8", "2*pi", "pi/8", "0", "1"),
    ("inf", "printed", "0.180043", "", "", "", "", "0", "1"),
)

# the printed table has no rho column; rho appears in the row label
_ISO_COLUMNS = ("alpha", "form", "4Q0/A^2", "A", "Q0", "L", "sigma_inf", "-sigma_one", "rho")
_CIRC_ISOSCELES = (
    ("pi/3", "exact", "sqrt(3)/15", "3*sqrt(3)/4", "9*sqrt(3)/320", "3*sqrt(3)",
     "3*sqrt(3)/64", "3*sqrt(3)/320", "1/2"),
    ("pi/3", "printed", "0.11547", "1.2990", "0.0487", "5.1962", "0.0812", "0.0162", "1/2"),
    ("pi/2", "exact", "0.10436", "1", "0.02609", "2+2*sqrt(2)", "(3-2*sqrt(2))/3",
     "(131-91*sqrt(2))/90", "sqrt(2)-1"),
    ("pi/2", "printed", "", "1", "", "4.8284", "0.0572", "0.0256285", "sqrt(2)-1"),
)

_NOTES = {
    "circumradius_1_regular": (
        "The printed 4Q0/A^2 of the disk row (0.180043) differs from 1/(2*pi) = 0.159155."
    ),
    "circumradius_1_isosceles": (
        "Equilateral -sigma_one printed as 3*sqrt(3)/320; the closed form "
        "A^(5/2)/(90*3^(1/4)) has the same magnitude but is written without the minus sign."
    ),
}


def _rows(columns: tuple[str, ...], data) -> tuple[dict[str, str], ...]:
    return tuple(dict(zip(columns, r)) for r in data)


def reference_table(table_id: str) -> ReferenceTable:
    """One of the embedded reference tables.

    Raises:
        UnknownTable: ``table_id`` is not one of ``TABLE_IDS``.
    """
    if table_id == "area_pi":
        return ReferenceTable(table_id, _AREA_PI_COLUMNS, _rows(_AREA_PI_COLUMNS, _AREA_PI))
    if table_id == "circumradius_1_regular":
        return ReferenceTable(table_id, _CIRC_COLUMNS, _rows(_CIRC_COLUMNS, _CIRC_REGULAR),
                              _NOTES[table_id])
    if table_id == "circumradius_1_isosceles":
        return ReferenceTable(table_id, _ISO_COLUMNS, _rows(_ISO_COLUMNS, _CIRC_ISOSCELES),
                              _NOTES[table_id])
    raise UnknownTable(f"unknown table {table_id!r}; choose from {TABLE_IDS}")


def select(table: ReferenceTable, key: str, form: str | None = None) -> dict[str, str]:
    for r in table.rows:
        if r[table.columns[0]] == key and (form is None or r.get("form") == form):
            return r
    raise KeyError((key, form))


# tiny arithmetic evaluator for the symbolic cells
_BINOPS: dict[type, Callable[[float, float], float]] = {
    ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul,
    ast.Div: operator.truediv, ast.Pow: operator.pow,
}
_NAMES = {"pi": math.pi, "inf": math.inf}
_FUNCS = {"sqrt": math.sqrt}


def evaluate(text: str) -> float:
    """Value of a numeric or symbolic table cell."""
    def walk(node: ast.AST) -> float:
        if isinstance(node, ast.Expression):
            return walk(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)):
            return float(node.value)
        if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            return _BINOPS[type(node.op)](walk(node.left), walk(node.right))
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
            return -walk(node.operand)
        if isinstance(node, ast.Name) and node.id in _NAMES:
            return _NAMES[node.id]
        if (isinstance(node, ast.Call) and isinstance(node.func, ast.Name)
                and node.func.id in _FUNCS and len(node.args) == 1):
            return _FUNCS[node.func.id](walk(node.args[0]))
        raise ValueError(f"cannot evaluate table cell {text!r}")

    return walk(ast.parse(text, mode="eval"))


# recomputation ---------------------------------------------------------------

def recompute_area_pi(n: str) -> dict[str, float]:
    """Closed-form L, sigma_inf and -sigma_one for a regular n-gon (or disk) of area pi."""
    if n == "inf":
        rep = functionals(Disk(1.0))
        sig = sigma_functionals(rep, 1.0)
        return {"L": rep.L, "sigma_inf": sig.sigma_inf, "-sigma_one": 0.0 - sig.sigma_one}
    c = regular_closed_forms(int(n), math.pi)
    return {"L": c["L"], "sigma_inf": c["sigma_inf"], "-sigma_one": 0.0 - c["sigma_one"]}


def recompute_circumradius_1(table_id: str, key: str) -> dict[str, float]:
    """Generic-route A, L, rho and sigma pair for a circumradius-1 table row."""
    if key == "inf":
        shape = Disk(1.0)
    elif table_id == "circumradius_1_regular":
        shape = regular_ngon(int(key), circumradius=1.0)
    else:
        apex = evaluate(key)
        shape = isosceles(math.tan(apex / 4.0), circumradius=1.0)
    rep = functionals(shape)
    sig = sigma_functionals(rep, shape.rho)
    return {"A": rep.A, "L": rep.L, "rho": shape.rho,
            "sigma_inf": sig.sigma_inf, "-sigma_one": 0.0 - sig.sigma_one}


def table_csv(table_id: str) -> str:
    """Reference table with recomputed columns and per-cell relative deviation."""
    table = reference_table(table_id)
    key_col = table.columns[0]
    if table_id == "area_pi":
        recomputed_cols = ("L", "sigma_inf", "-sigma_one")
    else:
        recomputed_cols = ("A", "L", "sigma_inf", "-sigma_one", "rho")
    header = list(table.columns)
    for c in recomputed_cols:
        header += [f"{c}_recomputed", f"{c}_deviation"]
    lines = [",".join(header)]
    for r in table.rows:
        if table_id == "area_pi":
            rec = recompute_area_pi(r[key_col])
        else:
            rec = recompute_circumradius_1(table_id, r[key_col])
        cells = [r[c] for c in table.columns]
        for c in recomputed_cols:
            if not r[c]:
                cells += [f"{rec[c]:.17g}", ""]
                continue
            ref = evaluate(r[c])
            dev = abs(rec[c] - ref) / abs(ref) if ref != 0 else abs(rec[c])
            cells += [f"{rec[c]:.17g}", f"{dev:.3e}"]
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"
