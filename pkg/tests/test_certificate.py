"""Tests for the JSON certificate documents and their determinism."""

import json

import pytest

from dihedral_torus.certificate import (
    SCHEMA_VERSION,
    corollary_document,
    range_document,
    render_json,
    theorem_document,
    write_json,
)
from dihedral_torus.dihedral import verify_corollary, verify_theorem

PARAMS = {"n": 1, "range": None, "closure_cap": None, "oracle": None}

TOP_LEVEL_KEYS = [
    "schema_version",
    "command",
    "params",
    "dimension",
    "group_order",
    "elements",
    "steps",
    "theorem_verified",
    "elapsed_ms",
]


@pytest.fixture(scope="module")
def cert():
    return verify_theorem(1)


class TestTheoremDocument:
    def test_key_order_is_fixed(self, cert):
        doc = theorem_document(cert, PARAMS)
        assert list(doc) == TOP_LEVEL_KEYS

    def test_content(self, cert):
        doc = theorem_document(cert, PARAMS)
        assert doc["schema_version"] == SCHEMA_VERSION
        assert doc["command"] == "verify"
        assert doc["params"] == PARAMS
        assert doc["dimension"] == 3
        assert doc["group_order"] == 8
        assert doc["theorem_verified"] is True
        assert doc["elapsed_ms"] is None
        assert list(doc["steps"]) == [f"step{i}" for i in range(1, 6)]
        assert all(doc["steps"].values())

    def test_element_entries(self, cert):
        doc = theorem_document(cert, PARAMS)
        assert len(doc["elements"]) == 8
        for entry in doc["elements"]:
            assert list(entry) == [
                "word", "order", "is_translation", "has_fixed_point",
            ]
        identity = doc["elements"][0]
        assert identity["word"] == ""
        assert identity["order"] == 1
        assert identity["has_fixed_point"] is True

    def test_failed_run_serializes_false(self):
        aborted = verify_theorem(1, closure_cap=4)
        doc = theorem_document(aborted, PARAMS)
        assert doc["theorem_verified"] is False
        assert not any(doc["steps"].values())
        assert doc["elements"] == []


class TestRangeDocument:
    def test_aggregates_runs(self):
        certs = [verify_theorem(n) for n in (1, 2)]
        doc = range_document(certs, {"n": None, "range": 2})
        assert list(doc) == [
            "schema_version", "command", "params", "runs",
            "theorem_verified", "elapsed_ms",
        ]
        assert doc["theorem_verified"] is True
        assert [run["n"] for run in doc["runs"]] == [1, 2]
        for run in doc["runs"]:
            assert list(run) == [
                "n", "dimension", "group_order", "elements", "steps",
                "theorem_verified",
            ]
            assert run["group_order"] == 8 * run["n"]

    def test_one_failure_fails_the_aggregate(self):
        certs = [verify_theorem(1), verify_theorem(1, closure_cap=4)]
        doc = range_document(certs, {})
        assert doc["theorem_verified"] is False
        assert doc["runs"][0]["theorem_verified"] is True
        assert doc["runs"][1]["theorem_verified"] is False


class TestCorollaryDocument:
    def test_step_slots_carry_the_corollary_checks(self):
        cert = verify_corollary(3)
        doc = corollary_document(cert, {"k": 3})
        assert list(doc) == TOP_LEVEL_KEYS
        assert doc["command"] == "corollary"
        assert doc["params"] == {"k": 3}
        assert doc["dimension"] == 7
        assert doc["group_order"] == 6
        assert doc["steps"] == {
            "step1": cert.rotation_order_ok,
            "step2": cert.reflection_order_ok,
            "step3": cert.closure_ok,
            "step4": cert.has_no_translations,
            "step5": cert.is_free,
        }
        assert doc["theorem_verified"] is True


class TestRendering:
    def test_render_is_deterministic_across_recomputation(self):
        first = render_json(theorem_document(verify_theorem(1), PARAMS))
        second = render_json(theorem_document(verify_theorem(1), PARAMS))
        assert first == second

    def test_render_round_trips_and_ends_with_newline(self, cert):
        text = render_json(theorem_document(cert, PARAMS))
        assert text.endswith("\n")
        assert json.loads(text)["group_order"] == 8

    def test_write_json_matches_render(self, cert, tmp_path):
        doc = theorem_document(cert, PARAMS)
        path = tmp_path / "cert.json"
        write_json(str(path), doc)
        assert path.read_text(encoding="utf-8") == render_json(doc)
