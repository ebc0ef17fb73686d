"""JSON group documents.

Four kinds share a ``format-version`` header::

    {"format-version": 1, "kind": "binary", "order": 4, "names": [...], "table": [[...], ...]}
    {"format-version": 1, "kind": "derived", "base": <binary>, "n": 3, "theta": [...], "b": 0}
    {"format-version": 1, "kind": "nary", "order": 2, "n": 3, "index-order": "x1-slowest", "table": [...]}
    {"format-version": 1, "kind": "quasigroup-linear", "base": <binary>, "n": 3, "autos": [[...], ...], "b": 0}

A ``nary`` table is flat with ``x1`` varying slowest.
"""

from __future__ import annotations

import hashlib
import json
import re
from dataclasses import dataclass
from typing import Any, Union

from .errors import ParseError, PolyadicError, ValidationError
from .group_core import ElementMap, FiniteGroup, validate_group
from .polyadic_core import (
    DerivedSpec,
    PolyadicGroup,
    PolyadicQuasigroup,
    derive,
    derive_linear_quasigroup,
    validate_polyadic_group,
)

FORMAT_VERSION = 1
INDEX_ORDER = "x1-slowest"
KINDS = ("binary", "derived", "nary", "quasigroup-linear")

Value = Union[FiniteGroup, PolyadicGroup, PolyadicQuasigroup]


@dataclass(frozen=True, eq=False)
class GroupDocument:
    kind: str
    payload: dict
    value: Value

    @property
    def text(self) -> str:
        return json.dumps(self.payload, sort_keys=True)

    @property
    def digest(self) -> str:
        return hashlib.sha256(self.text.encode()).hexdigest()


def _line_of(text: str, key: str):
    m = re.search(rf'"{re.escape(key)}"\s*:', text)
    return text.count("\n", 0, m.start()) + 1 if m else None


class _Reader:
    def __init__(self, text: str):
        self.text = text

    def get(self, obj: dict, key: str, kind: type, where: str = ""):
        name = f"{where}{key}"
        if key not in obj:
            raise ParseError("missing field", field=name, line=_line_of(self.text, key))
        val = obj[key]
        if kind is int and (isinstance(val, bool) or not isinstance(val, int)):
            raise ParseError(f"expected an integer, got {type(val).__name__}", field=name,
                             line=_line_of(self.text, key))
        if kind is not int and not isinstance(val, kind):
            raise ParseError(f"expected {kind.__name__}, got {type(val).__name__}", field=name,
                             line=_line_of(self.text, key))
        return val

    def int_list(self, obj: dict, key: str, where: str = "") -> list[int]:
        val = self.get(obj, key, list, where)
        if not all(isinstance(v, int) and not isinstance(v, bool) for v in val):
            raise ParseError("expected a list of integers", field=f"{where}{key}", line=_line_of(self.text, key))
        return val


def _binary(r: _Reader, obj: dict, where: str = "") -> FiniteGroup:
    order = r.get(obj, "order", int, where)
    table = r.get(obj, "table", list, where)
    if len(table) != order or not all(isinstance(row, list) and len(row) == order for row in table):
        raise ParseError(f"table must be {order} x {order}", field=f"{where}table", line=_line_of(r.text, "table"))
    if not all(isinstance(v, int) and not isinstance(v, bool) for row in table for v in row):
        raise ParseError("table entries must be integers", field=f"{where}table", line=_line_of(r.text, "table"))
    names = obj.get("names")
    if names is not None and (not isinstance(names, list) or len(names) != order):
        raise ParseError(f"names must list {order} strings", field=f"{where}names", line=_line_of(r.text, "names"))
    return _validated(lambda: validate_group(table, names))


def _validated(build):
    try:
        return build()
    except PolyadicError as exc:
        raise ValidationError(f"{type(exc).__name__}: {exc}", cause=exc) from exc


def parse_group_document(text: str) -> GroupDocument:
    """Parse and validate a document; structural problems raise :class:`ParseError`."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, line=exc.lineno) from exc
    if not isinstance(obj, dict):
        raise ParseError("document must be a JSON object", line=1)
    r = _Reader(text)
    version = r.get(obj, "format-version", int)
    if version != FORMAT_VERSION:
        raise ParseError(f"unsupported format-version {version}", field="format-version",
                         line=_line_of(text, "format-version"))
    kind = r.get(obj, "kind", str)
    if kind not in KINDS:
        raise ParseError(f"unknown kind {kind!r}", field="kind", line=_line_of(text, "kind"))

    if kind == "binary":
        value = _binary(r, obj)
    elif kind == "nary":
        order = r.get(obj, "order", int)
        n = r.get(obj, "n", int)
        if obj.get("index-order", INDEX_ORDER) != INDEX_ORDER:
            raise ParseError(f"index-order must be {INDEX_ORDER!r}", field="index-order",
                             line=_line_of(text, "index-order"))
        table = r.int_list(obj, "table")
        if order < 1 or n < 2 or len(table) != order**n:
            raise ParseError(f"flat table has {len(table)} entries, expected order**n = {order}**{n}",
                             field="table", line=_line_of(text, "table"))
        value = _validated(lambda: validate_polyadic_group(table, n, obj.get("names")))
    else:
        base_obj = r.get(obj, "base", dict)
        base = _binary(r, base_obj, "base.")
        n = r.get(obj, "n", int)
        b = r.get(obj, "b", int)
        if kind == "derived":
            theta = r.int_list(obj, "theta")
            if len(theta) != base.order:
                raise ParseError(f"theta must have {base.order} images", field="theta", line=_line_of(text, "theta"))
            value = _validated(lambda: derive(DerivedSpec(base, n, ElementMap(tuple(theta), base.order), b)))
        else:
            autos = r.get(obj, "autos", list)
            if len(autos) != n or not all(isinstance(a, list) and len(a) == base.order for a in autos):
                raise ParseError(f"autos must hold {n} lists of {base.order} images", field="autos",
                                 line=_line_of(text, "autos"))
            value = _validated(lambda: derive_linear_quasigroup(
                base, [ElementMap(tuple(a), base.order) for a in autos], b))
    return GroupDocument(kind, obj, value)


def _binary_payload(g: FiniteGroup) -> dict:
    return {"format-version": FORMAT_VERSION, "kind": "binary", "order": g.order,
            "names": list(g.element_names), "table": g.table.tolist()}


def document_for(value: Value) -> GroupDocument:
    """The canonical document of a group: derived form when known, else a dense table."""
    if isinstance(value, FiniteGroup):
        payload = _binary_payload(value)
        kind = "binary"
    elif isinstance(value, PolyadicGroup) and value.spec is not None:
        spec = value.spec
        payload = {"format-version": FORMAT_VERSION, "kind": "derived", "base": _binary_payload(spec.base),
                   "n": spec.n, "theta": list(spec.theta.images), "b": spec.b}
        kind = "derived"
    elif isinstance(value, PolyadicGroup):
        payload = dense_payload(value)
        kind = "nary"
    else:
        raise TypeError(f"no document form for {type(value).__name__}")
    return GroupDocument(kind, payload, value)


def dense_payload(pg: PolyadicGroup) -> dict[str, Any]:
    return {"format-version": FORMAT_VERSION, "kind": "nary", "order": pg.order, "n": pg.n,
            "index-order": INDEX_ORDER, "names": list(pg.element_names),
            "table": [int(v) for v in pg.table]}


def dump_document(payload: dict) -> str:
    return json.dumps(payload, indent=2) + "\n"
