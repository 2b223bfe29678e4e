"""JSON documents read and written by the command line tool.

All documents carry ``"schema": "extquot/1"``. Rationals are written as
``"num/den"`` strings (plain integers as ``"n"``), complex numbers as
``[re, im]`` pairs of shortest round-trip floats.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from .bernstein import FamilyReport, InertialCase
from .group import TorusPoint
from .quotient import (
    ComponentCatalog,
    GridCensus,
    PoincarePolynomial,
    QuotientSetup,
    make_setup,
)

SCHEMA = "extquot/1"


class DocumentError(ValueError):
    """Malformed setup document; ``line``/``column`` point into the JSON text."""

    def __init__(self, msg: str, line: int | None = None, column: int | None = None):
        super().__init__(msg)
        self.line = line
        self.column = column

    def __str__(self):
        where = f" (line {self.line}, column {self.column})" if self.line is not None else ""
        return f"{self.args[0]}{where}"


@dataclass(frozen=True)
class SetupDocument:
    rank: int
    generators: tuple
    label: str
    case: InertialCase | None = None

    def build(self) -> QuotientSetup:
        if self.case is not None:
            return self.case.setup
        return make_setup(self.generators, self.label, rank=self.rank)

    def to_dict(self) -> dict:
        d: dict[str, Any] = {"schema": SCHEMA, "rank": self.rank, "label": self.label}
        d["generators"] = [[list(row) for row in g] for g in self.generators]
        if self.case is not None:
            d["case"] = self.case.as_dict()
        return d


def _case_from(raw) -> InertialCase:
    if not isinstance(raw, dict) or "kind" not in raw:
        raise DocumentError("'case' must be an object with a 'kind'")
    kind = raw["kind"]
    q = float(raw.get("q", 9.0))
    if kind == "gl":
        return InertialCase.gl(int(raw.get("m", 1)), int(raw.get("r", 1)), q)
    if kind in ("sl2", "g2"):
        return InertialCase(kind, q=q)
    raise DocumentError(f"unknown case kind {kind!r}")


def parse_setup(text: str) -> SetupDocument:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(exc.msg, exc.lineno, exc.colno) from None
    if not isinstance(raw, dict):
        raise DocumentError("setup document must be a JSON object", 1, 1)
    schema = raw.get("schema", SCHEMA)
    if schema != SCHEMA:
        raise DocumentError(f"unsupported schema {schema!r}")
    try:
        case = _case_from(raw["case"]) if raw.get("case") is not None else None
    except (TypeError, ValueError) as exc:
        raise DocumentError(f"bad case: {exc}") from None
    gens = raw.get("generators") or []
    if case is None and not gens and "rank" not in raw:
        raise DocumentError("setup needs 'generators', 'rank' or 'case'")
    if case is not None and not gens:
        setup = case.setup
        gens = [g.matrix for g in setup.generators]
        rank = setup.rank
    else:
        rank = raw.get("rank")
        if not isinstance(rank, int) or rank < 1:
            raise DocumentError("'rank' must be a positive integer")
    try:
        gens = tuple(tuple(tuple(int(v) for v in row) for row in g) for g in gens)
    except (TypeError, ValueError):
        raise DocumentError("generators must be lists of integer matrices") from None
    for g in gens:
        if len(g) != rank or any(len(row) != rank for row in g):
            raise DocumentError(f"generator {g} is not {rank}x{rank}")
    label = raw.get("label") or (case.label if case else "setup")
    return SetupDocument(rank=rank, generators=gens, label=str(label), case=case)


def document_for(setup: QuotientSetup, case: InertialCase | None = None) -> SetupDocument:
    return SetupDocument(
        rank=setup.rank,
        generators=tuple(g.matrix for g in setup.generators),
        label=setup.label,
        case=case,
    )


def rational(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _f(v: float) -> float:
    v = float(v)
    return 0.0 if v == 0 else v


def cpx(z: complex) -> list[float]:
    z = complex(z)
    return [_f(z.real), _f(z.imag)]


def point(x: TorusPoint) -> list[list[float]]:
    return [cpx(c) for c in x.coords]


def poincare_block(p: PoincarePolynomial) -> dict:
    even, odd = p.even_odd()
    return {
        "coefficients": [rational(c) for c in p.coefficients],
        "text": str(p),
        "even": rational(even),
        "odd": rational(odd),
    }


def catalog_block(cat: ComponentCatalog) -> dict:
    comps = []
    for i, c in enumerate(cat):
        comps.append({
            "index": i,
            "name": c.name,
            "class_rep": [list(row) for row in c.class_rep.matrix],
            "class_size": c.class_size,
            "centralizer_order": c.centralizer_order,
            "dimension": c.dimension,
            "torsion_orders": list(c.torsion_orders),
            "component_orbit": [list(l) for l in c.component_orbit],
            "isotropy_order": c.isotropy_order,
            "cocharacter": None if c.cocharacter is None else list(c.cocharacter),
            "poincare": [rational(x) for x in c.poincare.coefficients],
        })
    return {
        "group_order": cat.setup.group.order,
        "ordinary_component_index": cat.ordinary_component_index,
        "dimensions": list(cat.dimensions),
        "components": comps,
    }


def census_block(c: GridCensus) -> dict:
    return {
        "grid": c.grid,
        "total": c.total,
        "per_class": {str(k): v for k, v in c.per_class.items()},
        "pair_stabilizers": {str(k): v for k, v in c.pair_stabilizers.items()},
        "point_stabilizers": {str(k): v for k, v in c.point_stabilizers.items()},
    }


def family_record(rep: FamilyReport) -> dict:
    rec: dict[str, Any] = {
        "t": cpx(rep.t),
        "equation_parameter": cpx(rep.equation_parameter),
        "all_flags": rep.ok,
    }
    if rep.variety is not None:
        rec["variety"] = [cpx(v) for v in rep.variety]
    rec["points"] = [
        {
            "component": p.component,
            "name": p.name,
            "source": point(p.source),
            "image": point(p.image.representative),
            "flag": p.flag,
        }
        for p in rep.points
    ]
    return rec


def _flat(obj) -> bool:
    """Scalars, lists of scalars and matrices print on one line."""
    if isinstance(obj, dict):
        return False
    if isinstance(obj, list):
        return all(not isinstance(v, (dict, list)) or
                   (isinstance(v, list) and all(not isinstance(w, (dict, list)) for w in v))
                   for v in obj)
    return True


def _render(obj, level: int) -> str:
    if _flat(obj):
        return json.dumps(obj, ensure_ascii=False)
    pad, inner = "  " * level, "  " * (level + 1)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{inner}{json.dumps(str(k), ensure_ascii=False)}: {_render(v, level + 1)}"
                 for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    items = [inner + _render(v, level + 1) for v in obj]
    return "[\n" + ",\n".join(items) + "\n" + pad + "]"


def dumps(doc: dict) -> str:
    """Indented JSON with short arrays kept on one line."""
    return _render(doc, 0) + "\n"
