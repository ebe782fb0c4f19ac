from __future__ import annotations

import json

import pytest

from ocelmine.core import OcelEvent, OcelLog, OcelObject, TypeLabel, build_log
from ocelmine.io import (
    ParseError,
    SchemaError,
    load_json,
    parse_document,
    save_json,
    validate,
)

from helpers import at, quick_log

MINIMAL = """
{
  "objectTypes": [{"name": "claim", "attributes": []}],
  "eventTypes": [{"name": "rc", "attributes": []}],
  "objects": [{"id": "c1", "type": "claim", "attributes": [], "relationships": []}],
  "events": [{"id": "e1", "type": "rc", "time": "2024-01-01T10:00:00.000Z",
              "attributes": [], "relationships": [{"objectId": "c1", "qualifier": "claim"}]}]
}
"""


def test_load_minimal_document():
    log = load_json(MINIMAL)
    assert len(log.events) == 1 and len(log.objects) == 1
    assert log.event_types == {TypeLabel("rc")}


def test_missing_timestamp_names_event():
    document = json.loads(MINIMAL)
    del document["events"][0]["time"]
    with pytest.raises(SchemaError) as info:
        load_json(json.dumps(document))
    assert "e1" in str(info.value)


def test_missing_relationships_is_schema_error():
    document = json.loads(MINIMAL)
    del document["objects"][0]["relationships"]
    with pytest.raises(SchemaError):
        load_json(json.dumps(document))


def test_malformed_json_is_parse_error():
    with pytest.raises(ParseError):
        load_json("{not json")


def test_unknown_fields_warn_and_drop():
    document = json.loads(MINIMAL)
    document["events"][0]["vendorExtension"] = {"x": 1}
    log, report = parse_document(json.dumps(document))
    assert any(p.code == "UNKNOWN_FIELD" for p in report.warnings)
    assert log.events[0].attributes == {}


def test_save_empty_log():
    document = json.loads(save_json(build_log([], [])))
    assert document == {"objectTypes": [], "eventTypes": [], "objects": [], "events": []}


def test_save_is_deterministic():
    log = quick_log({"c1": "claim", "c2": "claim"}, [("e1", "rc", 0, ["c1", "c2"])])
    assert save_json(log) == save_json(log)


def test_save_load_save_is_idempotent(small_log):
    first = save_json(small_log)
    second = save_json(load_json(first))
    assert first == second


def test_round_trip_on_generated_log(small_log):
    assert load_json(save_json(small_log)) == small_log


def test_refined_labels_survive_round_trip():
    objects = {"h1": "(employee, claim_handler)", "c1": "claim"}
    events = [("e1", "(cCPi, (employee, claim_handler))", 0, ["h1", "c1"])]
    log = quick_log(objects, events)
    loaded = load_json(save_json(log))
    assert loaded == log
    assert loaded.events[0].activity == TypeLabel("cCPi", ("(employee, claim_handler)",))


def test_attribute_values_keep_types():
    obj = OcelObject(
        "c1",
        TypeLabel("claim"),
        attributes={"open": [(at(0), True)], "amount": [(at(1), 12.5)], "note": [(at(2), "hög")]},
    )
    event = OcelEvent(
        "e1", TypeLabel("rc"), at(0), attributes={"priority": 3}, relations=[("c1", "claim")]
    )
    loaded = load_json(save_json(build_log([obj], [event])))
    reloaded = loaded.object("c1").attributes
    assert reloaded["open"][0][1] is True
    assert reloaded["amount"][0][1] == 12.5
    assert loaded.event("e1").attributes["priority"] == 3


def test_validate_reports_duplicate_event_id():
    # Direct construction bypasses build_log so the scan sees the duplicates.
    obj = OcelObject("c1", TypeLabel("claim"))
    event = OcelEvent("e1", TypeLabel("rc"), at(0), relations=[("c1", "claim")])
    twin = OcelEvent("e1", TypeLabel("rc"), at(1), relations=[("c1", "claim")])
    report = validate(OcelLog([obj], [event, twin]))
    assert [p.code for p in report.errors] == ["DUP_EVENT_ID"]


def test_validate_warns_on_zero_relation_events():
    log = build_log(
        [OcelObject("c1", TypeLabel("claim"))],
        [OcelEvent("e1", TypeLabel("rc"), at(0), relations=[])],
    )
    report = validate(log)
    assert report.ok
    assert [p.code for p in report.warnings] == ["NO_RELATED_OBJECTS"]


def test_validate_clean_generated_log(small_log):
    report = validate(small_log)
    assert report.ok and report.warnings == []
