"""JSON presentations of algebras and algebra maps.

Algebra::

    {"field": "gf2" | "rational",
     "basis": [{"label": "1", "degree": 0}, {"label": "a", "degree": 1}, ...],
     "products": [{"left": "a", "right": "b", "result": [{"basis": "ab", "coeff": 1}]}, ...]}

Products not listed are zero; a product listed in one order only is completed
by graded commutativity. The unit is the basis element labelled ``"1"``, or
else the first element of degree 0.

Map::

    {"source": <algebra file or object>, "target": <algebra file or object>,
     "images": [{"source": "alpha", "result": [{"basis": "A", "coeff": 1}]}, ...]}

Unlisted source classes map to zero, except the unit which maps to the unit.
Relative file names resolve against the directory of the referencing file.
"""
from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from ..errors import AxiomViolation, InvalidPresentation
from .algebra import AlgebraMap, TableAlgebra
from .field import field_by_name


def _coeff(c):
    if isinstance(c, str):
        return Fraction(c)
    return c


def _read(src, base_dir: Path | None):
    if isinstance(src, dict):
        return src, base_dir
    path = Path(src)
    if base_dir is not None and not path.is_absolute():
        path = base_dir / path
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh), path.parent
    except json.JSONDecodeError as exc:
        raise InvalidPresentation(f"{path}: not valid JSON ({exc})") from exc
    except OSError as exc:
        raise InvalidPresentation(f"{path}: {exc.strerror}") from exc


def algebra_from_dict(d: dict) -> TableAlgebra:
    try:
        field = field_by_name(d["field"])
        basis = [(str(b["label"]), int(b["degree"])) for b in d["basis"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidPresentation(f"malformed algebra presentation: {exc}") from exc
    labels = [b[0] for b in basis]
    degree = dict(basis)
    if "1" in degree:
        unit = "1"
    else:
        zeros = [lab for lab, deg in basis if deg == 0]
        if not zeros:
            raise AxiomViolation("unit", [], "no basis element of degree 0")
        unit = zeros[0]
    if degree[unit] != 0:
        raise AxiomViolation("unit degree", [unit])

    given: dict[tuple[str, str], dict] = {}
    for p in d.get("products", []):
        try:
            left, right = str(p["left"]), str(p["right"])
            vec = {}
            for term in p.get("result", []):
                vec[str(term["basis"])] = vec.get(str(term["basis"]), 0) + _coeff(term.get("coeff", 1))
        except (KeyError, TypeError) as exc:
            raise InvalidPresentation(f"malformed product entry {p!r}") from exc
        for lab in (left, right, *vec):
            if lab not in degree:
                raise InvalidPresentation(f"unknown basis label {lab!r}")
        if (left, right) in given:
            raise InvalidPresentation(f"product {left}*{right} listed twice")
        vec = {k: field.coerce(c) for k, c in vec.items()}
        given[(left, right)] = {k: c for k, c in vec.items() if c}

    for (left, right), vec in given.items():
        if unit in (left, right):
            other = right if left == unit else left
            if vec != {other: field.one}:
                raise AxiomViolation("unit law", [left, right])

    table = dict(given)
    for (left, right), vec in given.items():
        if (right, left) in given:
            continue
        s = field.sign(degree[left] * degree[right])
        table[(right, left)] = {k: field.coerce(s * c) for k, c in vec.items() if field.coerce(s * c)}
    table = {k: v for k, v in table.items() if unit not in k}
    alg = TableAlgebra(field, basis, table, unit=labels.index(unit))
    alg.name = d.get("name", "")
    return alg


def load_algebra(src, base_dir: Path | None = None) -> TableAlgebra:
    d, _ = _read(src, base_dir)
    return algebra_from_dict(d)


def load_map(src, base_dir: Path | None = None, source=None, target=None) -> AlgebraMap:
    """Load a map presentation; ``source``/``target`` override the referenced algebras."""
    d, here = _read(src, base_dir)
    try:
        S = source if source is not None else load_algebra(d["source"], here)
        T = target if target is not None else load_algebra(d["target"], here)
        images = {}
        for entry in d.get("images", []):
            vec = {}
            for term in entry.get("result", []):
                vec[str(term["basis"])] = vec.get(str(term["basis"]), 0) + _coeff(term.get("coeff", 1))
            images[str(entry["source"])] = vec
    except (KeyError, TypeError) as exc:
        raise InvalidPresentation(f"malformed map presentation: {exc}") from exc
    for lab in images:
        if lab not in S.labels:
            raise InvalidPresentation(f"unknown source label {lab!r}")
    for vec in images.values():
        for lab in vec:
            if lab not in T.labels:
                raise InvalidPresentation(f"unknown target label {lab!r}")
    return AlgebraMap.from_labels(S, T, images)
