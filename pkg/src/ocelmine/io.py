"""Reading, writing, and validating logs in the OCEL 2.0 JSON format.

The document carries four top-level keys: ``objectTypes``, ``eventTypes``,
``objects``, and ``events``. Objects are ``{id, type, attributes:
[{name, time, value}], relationships: [{objectId, qualifier}]}``; events
are the same with a single ``time`` and untimestamped attributes.

The reader is tolerant (unknown fields become warnings and are dropped),
the writer is strict: :func:`save_json` emits one canonical byte sequence
per log content, with objects, events, and relationship lists sorted by
id and timestamps in ISO-8601 UTC at millisecond precision.
"""

from __future__ import annotations

import json
import os
import tempfile
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Any

from .core import (
    AttributeValue,
    OcelEvent,
    OcelLog,
    OcelObject,
    OcelmineError,
    Problem,
    TypeLabel,
    build_log,
    scan_problems,
)

__all__ = [
    "ParseError",
    "SchemaError",
    "ValidationReport",
    "format_instant",
    "load_json",
    "load_json_file",
    "parse_document",
    "parse_instant",
    "save_json",
    "save_json_file",
    "validate",
    "write_bytes_atomic",
    "write_text_atomic",
]


class ParseError(OcelmineError):
    """The input is not well-formed JSON."""


class SchemaError(OcelmineError):
    """The document is missing or mistypes a required field."""


@dataclass
class ValidationReport:
    """Aggregated findings about a log or document.

    A log is loadable iff ``errors`` is empty; warnings never block.
    """

    errors: list[Problem] = field(default_factory=list)
    warnings: list[Problem] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.errors


def format_instant(ts: datetime) -> str:
    """ISO-8601 UTC with millisecond precision, e.g. 2024-10-01T08:30:00.250Z."""
    ts = ts.astimezone(timezone.utc)
    return f"{ts:%Y-%m-%dT%H:%M:%S}.{ts.microsecond // 1000:03d}Z"


def parse_instant(text: str) -> datetime:
    """Parse an ISO-8601 instant; a trailing Z and naive forms mean UTC."""
    raw = text.strip()
    if raw.endswith(("Z", "z")):
        raw = raw[:-1] + "+00:00"
    ts = datetime.fromisoformat(raw)
    if ts.tzinfo is None:
        ts = ts.replace(tzinfo=timezone.utc)
    return ts.astimezone(timezone.utc)


_OBJECT_KEYS = {"id", "type", "attributes", "relationships"}
_EVENT_KEYS = {"id", "type", "time", "attributes", "relationships"}


def _require(entry: dict, key: str, locator: str) -> Any:
    if key not in entry:
        raise SchemaError(f"{locator}: missing required field '{key}'")
    return entry[key]


def _scalar(value: Any, locator: str) -> AttributeValue:
    if isinstance(value, (str, int, float, bool)):
        return value
    raise SchemaError(f"{locator}: attribute value must be a scalar, got {type(value).__name__}")


def _parse_relationships(entry: dict, locator: str) -> list[tuple[str, str]]:
    raw = _require(entry, "relationships", locator)
    if not isinstance(raw, list):
        raise SchemaError(f"{locator}: 'relationships' must be a list")
    relations = []
    for item in raw:
        if not isinstance(item, dict) or "objectId" not in item:
            raise SchemaError(f"{locator}: relationship entries need an 'objectId'")
        relations.append((str(item["objectId"]), str(item.get("qualifier", ""))))
    return relations


def _parse_object(entry: Any, position: int, warnings: list[Problem]) -> OcelObject:
    locator = f"objects[{position}]"
    if not isinstance(entry, dict):
        raise SchemaError(f"{locator}: object entries must be JSON objects")
    oid = str(_require(entry, "id", locator))
    locator = f"object '{oid}'"
    label = TypeLabel.parse(str(_require(entry, "type", locator)))
    attributes: dict[str, list[tuple[datetime, AttributeValue]]] = {}
    for item in entry.get("attributes", []):
        if not isinstance(item, dict) or "name" not in item or "value" not in item:
            raise SchemaError(f"{locator}: object attributes need 'name' and 'value'")
        try:
            when = parse_instant(str(_require(item, "time", locator)))
        except ValueError as exc:
            raise SchemaError(f"{locator}: bad attribute timestamp: {exc}") from exc
        attributes.setdefault(str(item["name"]), []).append((when, _scalar(item["value"], locator)))
    relations = _parse_relationships(entry, locator)
    for key in entry.keys() - _OBJECT_KEYS:
        warnings.append(Problem("UNKNOWN_FIELD", f"dropped unknown field '{key}'", locator))
    return OcelObject(id=oid, type=label, attributes=attributes, relations=relations)


def _parse_event(entry: Any, position: int, warnings: list[Problem]) -> OcelEvent:
    locator = f"events[{position}]"
    if not isinstance(entry, dict):
        raise SchemaError(f"{locator}: event entries must be JSON objects")
    eid = str(_require(entry, "id", locator))
    locator = f"event '{eid}'"
    label = TypeLabel.parse(str(_require(entry, "type", locator)))
    try:
        timestamp = parse_instant(str(_require(entry, "time", locator)))
    except ValueError as exc:
        raise SchemaError(f"{locator}: bad timestamp: {exc}") from exc
    attributes: dict[str, AttributeValue] = {}
    for item in entry.get("attributes", []):
        if not isinstance(item, dict) or "name" not in item or "value" not in item:
            raise SchemaError(f"{locator}: event attributes need 'name' and 'value'")
        attributes[str(item["name"])] = _scalar(item["value"], locator)
    relations = _parse_relationships(entry, locator)
    for key in entry.keys() - _EVENT_KEYS:
        warnings.append(Problem("UNKNOWN_FIELD", f"dropped unknown field '{key}'", locator))
    return OcelEvent(id=eid, activity=label, timestamp=timestamp, attributes=attributes, relations=relations)


def parse_document(text: str) -> tuple[OcelLog, ValidationReport]:
    """Parse an OCEL 2.0 JSON document, returning the log and all findings.

    Raises:
        ParseError: on malformed JSON.
        SchemaError: on missing required fields.
        IntegrityError: on duplicate ids or dangling relations.
    """
    try:
        document = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed JSON: {exc}") from exc
    if not isinstance(document, dict):
        raise SchemaError("top level must be a JSON object")

    warnings: list[Problem] = []
    for section in ("objectTypes", "eventTypes", "objects", "events"):
        if section not in document:
            warnings.append(Problem("MISSING_SECTION", f"missing section '{section}'", "document"))

    objects = [
        _parse_object(entry, i, warnings) for i, entry in enumerate(document.get("objects", []))
    ]
    events = [_parse_event(entry, i, warnings) for i, entry in enumerate(document.get("events", []))]

    declared_object_types = {str(t.get("name")) for t in document.get("objectTypes", []) if isinstance(t, dict)}
    declared_event_types = {str(t.get("name")) for t in document.get("eventTypes", []) if isinstance(t, dict)}
    for obj in objects:
        if declared_object_types and obj.type.display not in declared_object_types:
            warnings.append(
                Problem("UNDECLARED_TYPE", f"object type '{obj.type}' not declared", f"object '{obj.id}'")
            )
            declared_object_types.add(obj.type.display)
    for event in events:
        if declared_event_types and event.activity.display not in declared_event_types:
            warnings.append(
                Problem("UNDECLARED_TYPE", f"event type '{event.activity}' not declared", f"event '{event.id}'")
            )
            declared_event_types.add(event.activity.display)

    log = build_log(objects, events)
    report = validate(log)
    report.warnings = warnings + report.warnings
    return log, report


def load_json(text: str) -> OcelLog:
    """Parse and validate an OCEL 2.0 JSON document."""
    log, _ = parse_document(text)
    return log


def load_json_file(path: str | Path) -> OcelLog:
    return load_json(Path(path).read_text(encoding="utf-8"))


_TYPE_NAMES = {bool: "boolean", int: "integer", float: "float", str: "string"}


def _value_type(value: AttributeValue) -> str:
    # bool must win over int: isinstance(True, int) holds.
    for python_type, name in _TYPE_NAMES.items():
        if type(value) is python_type:
            return name
    return "string"


def _type_declarations(labels: list[TypeLabel], attribute_types: dict[TypeLabel, dict[str, str]]) -> list[dict]:
    declarations = []
    for label in sorted(labels, key=lambda t: t.display):
        attrs = attribute_types.get(label, {})
        declarations.append(
            {
                "name": label.display,
                "attributes": [{"name": n, "type": t} for n, t in sorted(attrs.items())],
            }
        )
    return declarations


def save_json(log: OcelLog) -> str:
    """Serialize a log to canonical OCEL 2.0 JSON.

    Equal logs produce byte-identical output regardless of how they were
    assembled: every collection is sorted and timestamps are normalized.
    """
    object_attr_types: dict[TypeLabel, dict[str, str]] = {}
    object_entries = []
    for obj in sorted(log.objects, key=lambda o: o.id):
        attrs = []
        for name in sorted(obj.attributes):
            for when, value in obj.attributes[name]:
                attrs.append({"name": name, "time": format_instant(when), "value": value})
                object_attr_types.setdefault(obj.type, {})[name] = _value_type(value)
        object_entries.append(
            {
                "id": obj.id,
                "type": obj.type.display,
                "attributes": attrs,
                "relationships": [
                    {"objectId": target, "qualifier": qualifier}
                    for target, qualifier in sorted(obj.relations)
                ],
            }
        )

    event_attr_types: dict[TypeLabel, dict[str, str]] = {}
    event_entries = []
    for event in sorted(log.events, key=lambda e: e.id):
        for name, value in event.attributes.items():
            event_attr_types.setdefault(event.activity, {})[name] = _value_type(value)
        event_entries.append(
            {
                "id": event.id,
                "type": event.activity.display,
                "time": format_instant(event.timestamp),
                "attributes": [
                    {"name": name, "value": value} for name, value in sorted(event.attributes.items())
                ],
                "relationships": [
                    {"objectId": target, "qualifier": qualifier}
                    for target, qualifier in sorted(event.relations)
                ],
            }
        )

    document = {
        "objectTypes": _type_declarations(sorted(log.object_types, key=lambda t: t.display), object_attr_types),
        "eventTypes": _type_declarations(sorted(log.event_types, key=lambda t: t.display), event_attr_types),
        "objects": object_entries,
        "events": event_entries,
    }
    return json.dumps(document, indent=2, ensure_ascii=False) + "\n"


def save_json_file(log: OcelLog, path: str | Path) -> None:
    write_text_atomic(path, save_json(log))


def validate(log: OcelLog) -> ValidationReport:
    """Report integrity problems without raising.

    Checks duplicate ids, dangling relation endpoints, unsorted attribute
    timelines, and events with no related objects. Logs built through
    :func:`ocelmine.core.build_log` can only produce warnings here.
    """
    errors, warnings = scan_problems(log.objects, log.events)
    return ValidationReport(errors=errors, warnings=warnings)


def write_bytes_atomic(path: str | Path, data: bytes) -> None:
    """Write via a temp file plus rename so readers never see partial files."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp_name = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "wb") as handle:
            handle.write(data)
        os.replace(tmp_name, path)
    except BaseException:
        try:
            os.unlink(tmp_name)
        except OSError:
            pass
        raise


def write_text_atomic(path: str | Path, text: str) -> None:
    write_bytes_atomic(path, text.encode("utf-8"))
