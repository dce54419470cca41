"""Deterministic JSON certificate documents.

Documents are plain dicts built with a fixed key order and containing
only ints, bools, strings, None and nested dicts/lists of the same, so
serialization is byte-identical across runs and interpreter sessions.
The elapsed_ms field is always serialized as null: wall-clock timing is
reported on standard output instead, keeping the written certificate
bit-reproducible.
"""

from __future__ import annotations

import json
from typing import Any, Mapping, Sequence

from .analysis import ElementReport
from .dihedral import CorollaryCertificate, TheoremCertificate

SCHEMA_VERSION = "1"


def _element_entries(reports: Sequence[ElementReport]) -> list[dict[str, Any]]:
    return [
        {
            "word": rep.word,
            "order": rep.order,
            "is_translation": rep.is_translation,
            "has_fixed_point": rep.has_fixed_point,
        }
        for rep in reports
    ]


def _theorem_body(cert: TheoremCertificate) -> dict[str, Any]:
    return {
        "dimension": cert.dimension,
        "group_order": cert.group_order_actual,
        "elements": _element_entries(cert.reports),
        "steps": {
            f"step{i}": step.passed for i, step in enumerate(cert.steps, 1)
        },
        "theorem_verified": cert.theorem_verified,
    }


def theorem_document(
    cert: TheoremCertificate, params: Mapping[str, Any]
) -> dict[str, Any]:
    doc: dict[str, Any] = {
        "schema_version": SCHEMA_VERSION,
        "command": "verify",
        "params": dict(params),
    }
    doc.update(_theorem_body(cert))
    doc["elapsed_ms"] = None
    return doc


def range_document(
    certs: Sequence[TheoremCertificate], params: Mapping[str, Any]
) -> dict[str, Any]:
    """Aggregate of one verify run per n; per-run bodies match the schema."""
    runs = []
    for cert in certs:
        body: dict[str, Any] = {"n": cert.n}
        body.update(_theorem_body(cert))
        runs.append(body)
    return {
        "schema_version": SCHEMA_VERSION,
        "command": "verify",
        "params": dict(params),
        "runs": runs,
        "theorem_verified": all(c.theorem_verified for c in certs),
        "elapsed_ms": None,
    }


def corollary_document(
    cert: CorollaryCertificate, params: Mapping[str, Any]
) -> dict[str, Any]:
    """Corollary certificate in the shared schema.

    The five step slots carry the corollary's checks: rotation order,
    reflection order, closure size and presentation, absence of
    translations, freeness.
    """
    return {
        "schema_version": SCHEMA_VERSION,
        "command": "corollary",
        "params": dict(params),
        "dimension": cert.ambient_dimension,
        "group_order": cert.group_order_actual,
        "elements": _element_entries(cert.reports),
        "steps": {
            "step1": cert.rotation_order_ok,
            "step2": cert.reflection_order_ok,
            "step3": cert.closure_ok,
            "step4": cert.has_no_translations,
            "step5": cert.is_free,
        },
        "theorem_verified": cert.verified,
        "elapsed_ms": None,
    }


def render_json(doc: Mapping[str, Any]) -> str:
    return json.dumps(doc, indent=2) + "\n"


def write_json(path: str, doc: Mapping[str, Any]) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(render_json(doc))
