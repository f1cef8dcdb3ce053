"""JSON documents for spaces, operators, counterexample specs and certificates.

Rationals are written as ``"p/q"`` strings (``"p"`` when ``q == 1``) and are
never passed through floats.  Readers accept those strings and plain JSON
integers; other JSON numbers are rejected so nothing is silently rounded.
"""

from __future__ import annotations

import dataclasses
import hashlib
import json
from fractions import Fraction
from pathlib import Path

from .bs_property import Construction, CorollaryResult, CounterexampleSpec
from .errors import InputError
from .operators import MTComplex, Operator
from .orthogonality import CoverageCertificate, NormalCone2D, OrthoSet, PnCertificate
from .space import EUCLIDEAN, Space, build_named


def rat_str(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def parse_rational(value, where: str = "value") -> Fraction:
    if isinstance(value, bool):
        raise InputError(f"{where}: expected a rational, got a boolean")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError):
            raise InputError(f"{where}: malformed rational {value!r}") from None
    raise InputError(f"{where}: expected an integer or a 'p/q' string, got {value!r}")


def parse_vector(value, where: str = "vector") -> tuple:
    if isinstance(value, str):
        parts = [p for p in value.replace(" ", "").split(",")]
        if not value.strip() or any(p == "" for p in parts):
            raise InputError(f"{where}: malformed vector {value!r}")
        return tuple(parse_rational(p, f"{where}[{i}]") for i, p in enumerate(parts))
    if not isinstance(value, list):
        raise InputError(f"{where}: expected a list")
    return tuple(parse_rational(v, f"{where}[{i}]") for i, v in enumerate(value))


def parse_matrix(value, where: str = "matrix") -> tuple:
    if not isinstance(value, list) or not value:
        raise InputError(f"{where}: expected a nonempty list of rows")
    return tuple(parse_vector(r, f"{where}[{i}]") for i, r in enumerate(value))


def to_jsonable(obj):
    """Plain JSON structure with every Fraction turned into a string; ints (counts) stay ints."""
    if isinstance(obj, Fraction):
        return rat_str(obj)
    if isinstance(obj, (bool, str)) or obj is None:
        return obj
    if isinstance(obj, int):
        return obj
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def approximate(obj):
    """Same shape as :func:`to_jsonable` with rational strings replaced by floats."""
    if isinstance(obj, dict):
        return {k: approximate(v) for k, v in obj.items()}
    if isinstance(obj, list):
        return [approximate(v) for v in obj]
    if isinstance(obj, str):
        try:
            return float(Fraction(obj))
        except (ValueError, ZeroDivisionError):
            return obj
    return obj


def dumps(doc) -> str:
    return json.dumps(doc, sort_keys=False, separators=(",", ":"))


def digest(text: str) -> str:
    return hashlib.sha256(text.encode()).hexdigest()


# ---------------------------------------------------------------------------
# loading references


def load_json_text(ref: str) -> tuple:
    """Resolve an inline JSON document or a file path to ``(parsed, raw_text)``."""
    text = ref if ref.lstrip().startswith(("{", "[")) else None
    if text is None:
        path = Path(ref)
        if not path.is_file():
            raise InputError(f"no such file or builtin reference: {ref!r}")
        text = path.read_text()
    try:
        return json.loads(text), text
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def space_from_doc(doc) -> Space:
    if not isinstance(doc, dict):
        raise InputError("space document must be a JSON object")
    kind = doc.get("kind", "polyhedral")
    label = doc.get("label", "")
    if kind == EUCLIDEAN:
        dim = doc.get("dim")
        if not isinstance(dim, int) or isinstance(dim, bool):
            raise InputError("dim: expected an integer")
        gram = parse_matrix(doc["gram"], "gram") if "gram" in doc else None
        return Space.euclidean(dim, gram, label)
    if kind != "polyhedral":
        raise InputError(f"kind: unknown space kind {kind!r}")
    if "vertices" not in doc:
        raise InputError("vertices: missing")
    verts = parse_matrix(doc["vertices"], "vertices")
    facets = parse_matrix(doc["facets"], "facets") if doc.get("facets") is not None else None
    if "dim" in doc and doc["dim"] != len(verts[0]):
        raise InputError(f"dim: {doc['dim']} does not match vertex length {len(verts[0])}")
    return Space.polyhedral(verts, facets, label)


def space_to_doc(S: Space) -> dict:
    if S.kind == EUCLIDEAN:
        return {"kind": EUCLIDEAN, "dim": S.dim, "gram": to_jsonable(S.gram), "label": S.label}
    return {
        "kind": "polyhedral",
        "dim": S.dim,
        "vertices": to_jsonable(S.vertices),
        "facets": to_jsonable(S.facets),
        "label": S.label,
    }


def load_space(ref) -> tuple:
    """``builtin:NAME``, inline JSON, a file path, or an already parsed dict."""
    if isinstance(ref, dict):
        return space_from_doc(ref), json.dumps(ref, sort_keys=True)
    if ref.startswith("builtin:"):
        return build_named(ref), ref
    doc, text = load_json_text(ref)
    return space_from_doc(doc), text


def operator_from_doc(doc) -> Operator:
    if not isinstance(doc, dict):
        raise InputError("operator document must be a JSON object")
    for key in ("matrix", "domain", "codomain"):
        if key not in doc:
            raise InputError(f"{key}: missing")
    X, _ = load_space(doc["domain"])
    Y, _ = load_space(doc["codomain"])
    return Operator(parse_matrix(doc["matrix"], "matrix"), X, Y, doc.get("label", ""))


def operator_to_doc(T: Operator, domain=None, codomain=None) -> dict:
    return {
        "matrix": to_jsonable(T.matrix),
        "domain": domain if domain is not None else space_to_doc(T.domain),
        "codomain": codomain if codomain is not None else space_to_doc(T.codomain),
        "label": T.label,
    }


def load_operator(ref) -> tuple:
    if isinstance(ref, dict):
        return operator_from_doc(ref), json.dumps(ref, sort_keys=True)
    doc, text = load_json_text(ref)
    return operator_from_doc(doc), text


def spec_from_doc(doc) -> CounterexampleSpec:
    if not isinstance(doc, dict):
        raise InputError("spec document must be a JSON object")
    if "basis" not in doc:
        raise InputError("basis: missing")
    z = parse_vector(doc["z"], "z") if doc.get("z") is not None else None
    return CounterexampleSpec(
        parse_matrix(doc["basis"], "basis"),
        parse_vector(doc.get("alphas", []), "alphas"),
        parse_vector(doc.get("betas", []), "betas"),
        z,
    )


def spec_to_doc(spec: CounterexampleSpec) -> dict:
    doc = {
        "basis": to_jsonable(spec.basis),
        "alphas": to_jsonable(spec.alphas),
        "betas": to_jsonable(spec.betas),
    }
    if spec.z is not None:
        doc["z"] = to_jsonable(spec.z)
    return doc


def load_spec(ref) -> tuple:
    if isinstance(ref, dict):
        return spec_from_doc(ref), json.dumps(ref, sort_keys=True)
    doc, text = load_json_text(ref)
    return spec_from_doc(doc), text


# ---------------------------------------------------------------------------
# certificates


def certificate_doc(obj) -> dict:
    if isinstance(obj, CoverageCertificate):
        doc = {"verdict": obj.verdict, "family": to_jsonable(obj.family)}
        if obj.covered:
            doc["checked_sign_vectors"] = obj.checked_sign_vectors
        else:
            doc["sign_vector"] = list(obj.sign_vector)
            doc["witness"] = to_jsonable(obj.witness)
        doc["lp_calls"] = obj.lp_calls
        return doc
    if isinstance(obj, PnCertificate):
        doc = {"verdict": obj.verdict, "n": obj.n}
        if obj.covering_family is not None:
            doc["covering_family"] = to_jsonable(obj.covering_family)
        doc["family_witnesses"] = [
            {"family": to_jsonable(f), "witness": to_jsonable(w)} for f, w in obj.family_witnesses
        ]
        doc["families_checked"] = obj.families_checked
        doc["lp_calls"] = obj.lp_calls
        return doc
    if isinstance(obj, OrthoSet):
        return {
            "base_point": to_jsonable(obj.base_point),
            "active_functionals": to_jsonable(obj.active_functionals),
        }
    if isinstance(obj, NormalCone2D):
        return {"generators": to_jsonable(obj.generators), "functionals": to_jsonable(obj.functionals)}
    if isinstance(obj, MTComplex):
        return {
            "op_norm": rat_str(obj.op_norm),
            "norm_is_squared": obj.norm_is_squared,
            "cells": [
                {
                    "vertices": to_jsonable(c.sample_vertices),
                    "dim": c.dim,
                    "maximal": c.maximal,
                    "active_codomain": to_jsonable(c.active_codomain),
                    "image": to_jsonable(c.image),
                }
                for c in obj.cells
            ],
        }
    if isinstance(obj, Construction):
        return {
            "case": obj.case,
            "z": to_jsonable(obj.z),
            "functional": to_jsonable(obj.functional),
            "matrix": to_jsonable(obj.operator.matrix),
            "checks": dict(obj.checks),
        }
    if isinstance(obj, CorollaryResult):
        doc = {
            "status": obj.status,
            "hypotheses": dict(obj.hypotheses),
            "reasons": list(obj.reasons),
        }
        if obj.construction is not None:
            doc["construction"] = certificate_doc(obj.construction)
        return doc
    if dataclasses.is_dataclass(obj):
        return to_jsonable(dataclasses.asdict(obj))
    raise TypeError(f"no certificate format for {type(obj).__name__}")
