"""Tests for the JSON pair and correspondence documents."""

import importlib.resources

import pytest

from logcy3 import documents
from logcy3.boundary import Marking
from logcy3.documents import (
    DocumentError,
    correspondence_from_document,
    correspondence_to_document,
    dumps,
    loads,
    pair_from_document,
    pair_to_document,
)
from logcy3.exactnum import GaussianRational, IntMatrix
from logcy3.fixtures import pair_fixtures
from logcy3.torelli import Correspondence

BUNDLED = [
    "p3",
    "p111",
    "p3-blowup-point",
    "p3-blowup-line",
    "p111-blowup-point",
    "p3-point",
    "p3-conic",
    "p3-mixed",
]


def bundled_text(name):
    return (
        importlib.resources.files("logcy3")
        .joinpath(f"data/{name}.pair.json")
        .read_text(encoding="utf-8")
    )


class TestPairDocuments:
    def test_bundled_files_parse_and_round_trip(self):
        fixtures = pair_fixtures()
        for name in BUNDLED:
            text = bundled_text(name)
            pair, marking = pair_from_document(loads(text))
            assert pair.pic_rank == fixtures[name].pic_rank
            assert pair.program == fixtures[name].program
            assert dumps(pair_to_document(pair, marking)) == text

    def test_serialization_is_deterministic(self):
        pair = pair_fixtures()["p3-conic"]
        assert dumps(pair_to_document(pair)) == dumps(pair_to_document(pair))

    def test_marking_round_trip(self):
        pair = pair_fixtures()["p3"]
        marking = Marking.build(
            {key: GaussianRational(n + 2, 1) for n, key in enumerate(
                sorted(pair.edge_keys(), key=lambda k: tuple(sorted(k)))
            )}
        )
        doc = pair_to_document(pair, marking)
        _, recovered = pair_from_document(loads(dumps(doc)))
        assert recovered == marking

    def test_wrong_format_rejected(self):
        with pytest.raises(DocumentError, match="not a pair document"):
            pair_from_document({"format": "something-else", "version": 1})

    def test_missing_field_rejected(self):
        with pytest.raises(DocumentError, match="missing field"):
            pair_from_document({"format": "logcy3-pair", "version": 1})

    def test_bad_coordinate_rejected(self):
        doc = loads(bundled_text("p3-point"))
        doc["blowups"][0]["coordinate"] = "1/0"
        with pytest.raises(DocumentError, match="denominator"):
            pair_from_document(doc)

    def test_invalid_program_rejected(self):
        doc = loads(bundled_text("p3-point"))
        doc["blowups"][0]["coordinate"] = "0"
        with pytest.raises(DocumentError, match="0-stratum"):
            pair_from_document(doc)

    def test_malformed_json_reports_line(self):
        with pytest.raises(DocumentError, match="line"):
            loads("{\n  broken\n}")


class TestCorrespondenceDocuments:
    def test_round_trip(self):
        corr = Correspondence(
            ((0, 1), (1, 0), (2, 2), (3, 3)),
            (0,),
            IntMatrix([[1, 0], [0, 1]]),
            ((0, IntMatrix([[1]])),),
        )
        doc = correspondence_to_document(corr)
        recovered = correspondence_from_document(loads(dumps(doc)))
        assert recovered.vertex_map == corr.vertex_map
        assert recovered.step_map == corr.step_map
        assert recovered.mu.data == corr.mu.data
        assert recovered.mu_components[0][1].data == corr.mu_components[0][1].data

    def test_wrong_format_rejected(self):
        with pytest.raises(DocumentError, match="not a correspondence"):
            correspondence_from_document({"format": "logcy3-pair", "version": 1})
