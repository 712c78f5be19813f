"""JSON documents: algebra presentations, B* skeletons, charts, resolution dumps."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

import jsonschema

from .algebra import (
    AlgebraElement,
    BigradedSet,
    DifferentialSpec,
    PresentationError,
    Rule,
    StructuredAlgebra,
)
from .bigraded import Ring
from .gstar import BStarSkeleton
from .resolution import Resolution


class FormatError(ValueError):
    pass


_WORD = {"type": "array", "items": {"type": "string", "minLength": 1}}
_COMBO = {
    "type": "array",
    "items": {
        "type": "object",
        "properties": {"word": _WORD, "coeff": {"type": "integer"}},
        "required": ["word", "coeff"],
        "additionalProperties": False,
    },
}

PRESENTATION_SCHEMA: dict[str, Any] = {
    "type": "object",
    "properties": {
        "schema": {"const": 1},
        "name": {"type": "string"},
        "ring": {
            "type": "object",
            "properties": {
                "p": {"type": "integer", "minimum": 2},
                "exponent": {"enum": [1, 2]},
            },
            "required": ["p"],
            "additionalProperties": False,
        },
        "generators": {
            "type": "array",
            "items": {
                "type": "object",
                "properties": {
                    "label": {"type": "string", "minLength": 1},
                    "degree": {"type": "integer", "minimum": 0},
                    "dimension": {"type": "integer", "minimum": 0},
                },
                "required": ["label", "degree", "dimension"],
                "additionalProperties": False,
            },
        },
        "rules": {
            "type": "array",
            "items": {
                "type": "object",
                "properties": {"lhs": _WORD, "rhs": _COMBO},
                "required": ["lhs", "rhs"],
                "additionalProperties": False,
            },
        },
        "differential": {
            "type": "array",
            "items": {
                "type": "object",
                "properties": {"gen": {"type": "string"}, "value": _COMBO},
                "required": ["gen", "value"],
                "additionalProperties": False,
            },
        },
        "distinguished_one": {"type": ["string", "null"]},
    },
    "required": ["schema", "ring", "generators"],
    "additionalProperties": False,
}

CHART_SCHEMA: dict[str, Any] = {
    "type": "object",
    "properties": {
        "schema": {"const": 1},
        "prime": {"const": 2},
        "max_s": {"type": "integer", "minimum": 0},
        "max_t": {"type": "integer", "minimum": 0},
        "classes": {
            "type": "array",
            "items": {
                "type": "object",
                "properties": {
                    "s": {"type": "integer", "minimum": 0},
                    "t": {"type": "integer", "minimum": 0},
                    "index": {"type": "integer", "minimum": 0},
                },
                "required": ["s", "t", "index"],
                "additionalProperties": False,
            },
        },
    },
    "required": ["schema", "prime", "max_s", "max_t", "classes"],
    "additionalProperties": False,
}


def _validate(doc: Any, schema: dict, what: str) -> None:
    try:
        jsonschema.validate(doc, schema)
    except jsonschema.ValidationError as exc:
        where = "/".join(str(x) for x in exc.absolute_path) or "<root>"
        raise FormatError(f"invalid {what} at {where}: {exc.message}") from None


def validate_chart(doc: Any) -> None:
    _validate(doc, CHART_SCHEMA, "chart document")


def validate_presentation(doc: Any) -> None:
    _validate(doc, PRESENTATION_SCHEMA, "presentation document")


def load_json(path: str | Path) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: not valid JSON ({exc})") from None


def dump_json(doc: Any) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


# -- presentations -------------------------------------------------------------------


def _combo_doc(x: AlgebraElement) -> list[dict]:
    return [{"word": list(w), "coeff": c} for w, c in x]


def _combo(items: list[dict], q: int) -> AlgebraElement:
    return AlgebraElement([(tuple(it["word"]), it["coeff"]) for it in items], q)


def algebra_to_document(alg: StructuredAlgebra) -> dict:
    doc: dict[str, Any] = {
        "schema": 1,
        "ring": {"p": alg.ring.p, "exponent": alg.ring.exponent},
        "generators": [
            {"label": lab, "degree": b.degree, "dimension": b.dimension}
            for lab, b in alg.generators.generators
        ],
        "rules": [{"lhs": list(r.lhs), "rhs": _combo_doc(r.rhs)} for r in alg.rules],
        "differential": [
            {"gen": lab, "value": _combo_doc(val)}
            for lab, val in (alg.differential.values.items() if alg.differential else ())
        ],
    }
    if alg.name:
        doc["name"] = alg.name
    if alg.one:
        doc["distinguished_one"] = alg.one
    return doc


def algebra_from_document(doc: Any) -> StructuredAlgebra:
    validate_presentation(doc)
    ring_doc = doc["ring"]
    ring = Ring(ring_doc["p"], ring_doc.get("exponent", 2))
    q = ring.modulus
    try:
        gens = BigradedSet.of(
            *[(g["label"], (g["degree"], g["dimension"])) for g in doc["generators"]]
        )
        for r in doc.get("rules", ()):
            for letter in r["lhs"] + [x for it in r["rhs"] for x in it["word"]]:
                if letter not in gens:
                    raise PresentationError(f"rule uses unknown generator {letter!r}")
        rules = tuple(Rule(tuple(r["lhs"]), _combo(r["rhs"], q)) for r in doc.get("rules", ()))
        values = {d["gen"]: _combo(d["value"], q) for d in doc.get("differential", ())}
        spec = DifferentialSpec(gens, values, q)
        return StructuredAlgebra(
            ring, gens, rules, spec, doc.get("distinguished_one"), doc.get("name", "")
        )
    except (PresentationError, ValueError) as exc:
        raise FormatError(f"invalid presentation: {exc}") from None


def skeleton_to_document(skel: BStarSkeleton) -> dict:
    gens = skel.generators.generators
    return {
        "schema": 1,
        "name": "B* skeleton",
        "ring": {"p": skel.p, "exponent": 2},
        "generators": [
            {"label": lab, "degree": b.degree, "dimension": b.dimension} for lab, b in gens
        ],
        "rules": [],
        "differential": [{"gen": lab, "value": _combo_doc(v)} for lab, v in skel.differential],
    }


def skeleton_from_document(doc: Any) -> BStarSkeleton:
    validate_presentation(doc)
    if doc.get("rules"):
        raise FormatError("a skeleton carries no rewrite rules")
    if doc.get("distinguished_one"):
        raise FormatError("a skeleton has no distinguished element")
    if doc["ring"].get("exponent", 2) != 2:
        raise FormatError("a skeleton lives over Z/p^2")
    p = doc["ring"]["p"]
    q = p * p
    try:
        e0 = [(g["label"], (g["degree"], 0)) for g in doc["generators"] if g["dimension"] == 0]
        e1 = [(g["label"], (g["degree"], 1)) for g in doc["generators"] if g["dimension"] == 1]
        other = [g["label"] for g in doc["generators"] if g["dimension"] > 1]
        if other:
            raise PresentationError(f"generators above dimension 1 are not supported: {other}")
        diff = tuple((d["gen"], _combo(d["value"], q)) for d in doc.get("differential", ()))
        return BStarSkeleton(p, BigradedSet.of(*e0), BigradedSet.of(*e1), diff)
    except (PresentationError, ValueError) as exc:
        raise FormatError(f"invalid skeleton: {exc}") from None


# -- resolutions -----------------------------------------------------------------------


def resolution_to_document(res: Resolution) -> dict:
    """Per stage: generators with degrees and ``d`` as lists of admissible sequences."""
    stages = []
    for st in res.stages:
        gens = [{"label": lab, "degree": t} for lab, t in st.generators]
        entries = []
        if st.s > 0:
            tgt = res.stages[st.s - 1].module
            for g, row in enumerate(res.differential_matrix(st.s)):
                for h, a in enumerate(row):
                    if a:
                        entries.append(
                            {
                                "source": st.module.labels[g],
                                "target": tgt.labels[h],
                                "terms": [list(m) for m in a.monomials()],
                            }
                        )
        stages.append({"s": st.s, "generators": gens, "differential": entries})
    return {
        "schema": 1,
        "prime": 2,
        "max_s": res.max_s,
        "max_t": res.max_t,
        "complete": res.complete,
        "stages": stages,
    }


__all__ = [
    "CHART_SCHEMA",
    "FormatError",
    "PRESENTATION_SCHEMA",
    "algebra_from_document",
    "algebra_to_document",
    "dump_json",
    "load_json",
    "resolution_to_document",
    "skeleton_from_document",
    "skeleton_to_document",
    "validate_chart",
    "validate_presentation",
]
