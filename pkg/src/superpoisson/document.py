"""Structure-definition documents (JSON, ``schema_version`` 1).

A Poisson document carries either a generator table::

    {"schema_version": 1, "signature": {"m": 3, "n": 0},
     "kind": "poisson", "degree": 0,
     "table": {"x1,x2": "x3", "x2,x3": "x1", "x3,x1": "x2"}}

or a builder shortcut::

    {"schema_version": 1, "signature": {"m": 2, "n": 2, "de_rham": true},
     "kind": "poisson", "builder": "metric", "matrix": [["1", "0"], ["0", "1"]]}

An algebroid document gives the anchor on each ``du`` as a map from
generators to values, and brackets of generator pairs as 1-forms::

    {"schema_version": 1, "signature": {"m": 2, "n": 0}, "kind": "algebroid",
     "anchor": {"x1": {"x2": "1"}}, "bracket": {}}
"""
from __future__ import annotations

import json
import sys
from dataclasses import dataclass
from typing import Optional, Union

import jsonschema

from .algebra import Signature
from .algebroid import AlgebroidData
from .expr import ParseError, element, form
from .forms import Derivation
from .poisson import (
    GradedPoissonStructure,
    from_bivector,
    from_classical,
    from_metric_cosharp,
    from_pseudoeuclidean,
)

BUILDERS = {
    "pseudoeuclidean": from_pseudoeuclidean,
    "metric": from_metric_cosharp,
    "bivector": from_bivector,
    "classical": from_classical,
}

_EXPR = {"type": ["string", "integer"]}

SCHEMA = {
    "type": "object",
    "required": ["schema_version", "signature", "kind"],
    "properties": {
        "schema_version": {"const": 1},
        "name": {"type": "string"},
        "signature": {
            "type": "object",
            "required": ["m", "n"],
            "properties": {
                "m": {"type": "integer", "minimum": 0},
                "n": {"type": "integer", "minimum": 0},
                "de_rham": {"type": "boolean"},
            },
            "additionalProperties": False,
        },
        "kind": {"enum": ["poisson", "algebroid"]},
        "degree": {"type": "integer"},
        "table": {"type": "object", "additionalProperties": _EXPR},
        "builder": {"enum": sorted(BUILDERS)},
        "matrix": {"type": "array", "items": {"type": "array", "items": _EXPR}},
        "anchor": {"type": "object", "additionalProperties": {"type": "object", "additionalProperties": _EXPR}},
        "bracket": {"type": "object", "additionalProperties": _EXPR},
    },
    "additionalProperties": False,
}


class DocumentError(ValueError):
    """Schema or parse failure in a structure document."""


@dataclass
class Document:
    name: str
    sig: Signature
    kind: str
    structure: Union[GradedPoissonStructure, AlgebroidData]

    @property
    def k(self) -> int:
        return self.structure.k


def _pair(key: str, sig: Signature):
    parts = [p.strip() for p in key.split(",")]
    if len(parts) != 2:
        raise DocumentError(f"table key {key!r} must be 'u,v'")
    try:
        return sig.check(parts[0]), sig.check(parts[1])
    except ValueError as exc:
        raise DocumentError(f"table key {key!r}: {exc}") from None


def _expr(text, sig: Signature, where: str, one_form: bool = False):
    try:
        v = form(str(text), sig)
        if one_form:
            if v and v.form_degree() != 1:
                raise DocumentError(f"{where}: expected a 1-form, got {text!r}")
            return v
        return element(str(text), sig)
    except ParseError as exc:
        raise DocumentError(f"{where}: {exc}") from None


def load(data: dict) -> Document:
    """Validate and build a structure from an already-decoded document."""
    try:
        jsonschema.validate(data, SCHEMA)
    except jsonschema.ValidationError as exc:
        path = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise DocumentError(f"schema error at {path}: {exc.message}") from None
    s = data["signature"]
    try:
        sig = Signature(s["m"], s["n"], s.get("de_rham", False))
    except ValueError as exc:
        raise DocumentError(f"signature: {exc}") from None
    name = data.get("name", "")
    if data["kind"] == "poisson":
        if "builder" in data:
            if "matrix" not in data or "table" in data:
                raise DocumentError("a builder document needs 'matrix' and no 'table'")
            try:
                P = BUILDERS[data["builder"]]([[str(v) for v in row] for row in data["matrix"]])
            except ParseError as exc:
                raise DocumentError(f"matrix: {exc}") from None
            except ValueError as exc:
                raise DocumentError(f"matrix: {exc}") from None
            if P.sig != sig:
                raise DocumentError(f"builder {data['builder']} gives signature {P.sig}, document declares {sig}")
            if "degree" in data and data["degree"] != P.k:
                raise DocumentError(f"builder {data['builder']} has degree {P.k}, document declares {data['degree']}")
            P.name = name or P.name
            return Document(P.name, sig, "poisson", P)
        if "degree" not in data:
            raise DocumentError("a table document needs 'degree'")
        table = {}
        for key, text in data.get("table", {}).items():
            table[_pair(key, sig)] = _expr(text, sig, f"table[{key}]")
        P = GradedPoissonStructure(sig, data["degree"], table, name=name or "table")
        return Document(P.name, sig, "poisson", P)
    # algebroid
    if "builder" in data or "table" in data or "matrix" in data:
        raise DocumentError("algebroid documents take 'anchor' and 'bracket' only")
    anchors = {}
    for gname, values in data.get("anchor", {}).items():
        try:
            g = sig.check(gname)
            vals = {sig.check(v): _expr(t, sig, f"anchor[{gname}][{v}]") for v, t in values.items()}
            anchors[g] = Derivation(sig, vals, g.parity)
        except DocumentError:
            raise
        except ValueError as exc:
            raise DocumentError(f"anchor[{gname}]: {exc}") from None
    brackets = {}
    for key, text in data.get("bracket", {}).items():
        brackets[_pair(key, sig)] = _expr(text, sig, f"bracket[{key}]", one_form=True)
    try:
        A = AlgebroidData(sig, anchors, brackets, name=name or "algebroid")
    except ValueError as exc:
        raise DocumentError(str(exc)) from None
    return Document(A.name, sig, "algebroid", A)


def loads(text: str) -> Document:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return load(data)


def read(path: str, stdin=None) -> Document:
    """Load from a file path, or from standard input when ``path == '-'``."""
    if path == "-":
        return loads((stdin or sys.stdin).read())
    try:
        with open(path, encoding="utf-8") as fh:
            return loads(fh.read())
    except OSError as exc:
        raise DocumentError(f"cannot read {path}: {exc.strerror}") from None
