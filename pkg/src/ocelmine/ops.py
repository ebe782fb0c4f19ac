"""The log algebra: filtering, drill-down, unfolding, flattening, and the
activity-by-type extraction matrix.

All operations are pure: they take a built log and return a new built log
(or a derived value), leaving the input untouched. Re-running any pipeline
on equal inputs yields structurally equal outputs.
"""

from __future__ import annotations

import csv
import io as _io
import json
from dataclasses import dataclass, field, replace
from datetime import datetime
from typing import Iterable, Literal, Union

from . import labels
from .core import (
    OcelEvent,
    OcelLog,
    OcelObject,
    TypeLabel,
    UnknownObjectType,
    build_log,
)
from .io import format_instant, parse_instant

__all__ = [
    "ExtractionMatrix",
    "FlatLog",
    "drill_down",
    "extraction_matrix",
    "filter_activities",
    "flatten",
    "latest_note_filter",
    "load_flat_json",
    "matrix_to_csv",
    "project_object_types",
    "retain_linked",
    "save_flat_json",
    "unfold",
]

LabelLike = Union[TypeLabel, str]

TraceEntry = tuple[str, TypeLabel, datetime]


def _as_label(value: LabelLike) -> TypeLabel:
    return value if isinstance(value, TypeLabel) else TypeLabel.parse(value)


def _as_labels(values: Iterable[LabelLike]) -> set[TypeLabel]:
    return {_as_label(v) for v in values}


@dataclass
class FlatLog:
    """A traditional case-based view of a log, one case per object.

    Each trace is a list of ``(event id, activity, timestamp)`` entries in
    (timestamp, event id) order. An event related to several case objects
    appears in each of their traces (convergence duplication).
    """

    case_object_type: TypeLabel
    cases: dict[str, list[TraceEntry]] = field(default_factory=dict)


@dataclass
class ExtractionMatrix:
    """Activity-by-object-type counts of event-to-object relations.

    ``cell(a, t)`` counts distinct (event, object) pairs where the event
    has activity ``a`` and the object has type ``t``. Rows and columns are
    sorted by display label.
    """

    activities: tuple[TypeLabel, ...]
    object_types: tuple[TypeLabel, ...]
    counts: dict[tuple[TypeLabel, TypeLabel], int] = field(default_factory=dict)

    def cell(self, activity: LabelLike, object_type: LabelLike) -> int:
        return self.counts.get((_as_label(activity), _as_label(object_type)), 0)


def filter_activities(
    log: OcelLog, mode: Literal["keep", "drop"], activities: Iterable[LabelLike]
) -> OcelLog:
    """Keep or drop events by activity label.

    Objects are retained even when the filter orphans them; unknown
    activity names are no-ops.
    """
    if mode not in ("keep", "drop"):
        raise ValueError(f"mode must be 'keep' or 'drop', got {mode!r}")
    wanted = _as_labels(activities)
    keep = mode == "keep"
    events = [e for e in log.events if (e.activity in wanted) == keep]
    return build_log(log.objects, events)


def retain_linked(
    log: OcelLog, target: LabelLike, anchor: LabelLike, via: LabelLike
) -> OcelLog:
    """Keep only target-activity events that share a via-typed object with
    some anchor-activity event.

    Event ordering is ignored on purpose: a target event that precedes the
    anchor it shares an object with still survives. Non-target events pass
    through untouched.
    """
    target = _as_label(target)
    anchor = _as_label(anchor)
    via = _as_label(via)
    anchored: set[str] = set()
    for event in log.events_of_activity(anchor):
        for oid in event.related_ids():
            if log.object(oid).type == via:
                anchored.add(oid)

    def linked(event: OcelEvent) -> bool:
        return any(oid in anchored for oid in event.related_ids())

    events = [e for e in log.events if e.activity != target or linked(e)]
    return build_log(log.objects, events)


def drill_down(log: OcelLog, object_type: LabelLike, attribute: str) -> OcelLog:
    """Refine an object type into subtypes by an attribute value.

    Each object of the type is retyped to the original label plus its
    latest value of ``attribute``. Relations and events are unchanged.

    Raises:
        MissingAttribute: if any object of the type lacks the attribute.
    """
    object_type = _as_label(object_type)
    objects = []
    for obj in log.objects:
        if obj.type == object_type:
            value = obj.latest_attribute(attribute)
            objects.append(replace(obj, type=object_type.refine(str(value))))
        else:
            objects.append(obj)
    return build_log(objects, log.events)


def unfold(log: OcelLog, activity: LabelLike, object_type: LabelLike) -> OcelLog:
    """Relabel events of an activity by their relation to an object type.

    Events of ``activity`` related to at least one object of
    ``object_type`` gain the type's display form as a refinement; the rest
    keep their label. Event ids, timestamps, attributes, and relations are
    preserved, so the total event count never changes.
    """
    activity = _as_label(activity)
    object_type = _as_label(object_type)
    refined = activity.refine(object_type.display)
    events = []
    for event in log.events:
        if event.activity == activity and any(
            log.object(oid).type == object_type for oid in event.related_ids()
        ):
            events.append(replace(event, activity=refined))
        else:
            events.append(event)
    return build_log(log.objects, events)


def project_object_types(log: OcelLog, keep: Iterable[LabelLike]) -> OcelLog:
    """Restrict the log to the given object types.

    Objects of other types disappear along with every relation touching
    them; events left without any related object are removed.
    """
    wanted = _as_labels(keep)
    kept_ids = {o.id for o in log.objects if o.type in wanted}
    objects = [
        replace(obj, relations=[r for r in obj.relations if r[0] in kept_ids])
        for obj in log.objects
        if obj.id in kept_ids
    ]
    events = []
    for event in log.events:
        relations = [r for r in event.relations if r[0] in kept_ids]
        if relations:
            events.append(replace(event, relations=relations))
    return build_log(objects, events)


def latest_note_filter(
    log: OcelLog,
    note_activity: LabelLike = labels.ACT_CREATE_NOTE,
    scan_activity: LabelLike = labels.ACT_SCAN_CLAIM,
    case_type: LabelLike = labels.TYPE_CLAIM,
    note_type: LabelLike = labels.TYPE_CLAIM_NOTE,
) -> OcelLog:
    """Retain one note event per claim: the latest one strictly before the
    claim's first scan.

    Claims never scanned keep their latest note overall; a claim whose
    notes all follow the scan keeps none. Note objects left without any
    surviving event are removed, along with relations pointing at them.
    """
    note_activity = _as_label(note_activity)
    scan_activity = _as_label(scan_activity)
    case_type = _as_label(case_type)
    note_type = _as_label(note_type)

    keep_ids: set[str] = set()
    drop_ids: set[str] = set()
    for case in log.objects_of_type(case_type):
        timeline = log.events_of_object(case.id)
        notes = [e for e in timeline if e.activity == note_activity]
        if not notes:
            continue
        first_scan = next((e for e in timeline if e.activity == scan_activity), None)
        if first_scan is None:
            candidates = notes
        else:
            candidates = [e for e in notes if e.timestamp < first_scan.timestamp]
        keeper = candidates[-1].id if candidates else None
        for event in notes:
            (keep_ids if event.id == keeper else drop_ids).add(event.id)
    drop_ids -= keep_ids

    events = [e for e in log.events if e.id not in drop_ids]
    referenced = {oid for e in events for oid in e.related_ids()}
    removed = {
        obj.id
        for obj in log.objects_of_type(note_type)
        if obj.id not in referenced and any(e in drop_ids for e in _event_ids_of(log, obj.id))
    }
    objects = [
        replace(obj, relations=[r for r in obj.relations if r[0] not in removed])
        for obj in log.objects
        if obj.id not in removed
    ]
    return build_log(objects, events)


def _event_ids_of(log: OcelLog, object_id: str) -> list[str]:
    return [e.id for e in log.events_of_object(object_id)]


def flatten(log: OcelLog, object_type: LabelLike) -> FlatLog:
    """Project the log onto one object type, yielding a case per object.

    Raises:
        UnknownObjectType: if the type has no objects in the log.
    """
    object_type = _as_label(object_type)
    if object_type not in log.object_types:
        raise UnknownObjectType(f"no objects of type '{object_type}' in log")
    cases = {
        obj.id: [(e.id, e.activity, e.timestamp) for e in log.events_of_object(obj.id)]
        for obj in log.objects_of_type(object_type)
    }
    return FlatLog(case_object_type=object_type, cases=cases)


def extraction_matrix(log: OcelLog) -> ExtractionMatrix:
    """Count E2O relations per (activity, object type) cell."""
    counts: dict[tuple[TypeLabel, TypeLabel], int] = {}
    for event in log.events:
        for oid in event.related_ids():
            key = (event.activity, log.object(oid).type)
            counts[key] = counts.get(key, 0) + 1
    return ExtractionMatrix(
        activities=tuple(sorted(log.event_types, key=lambda t: t.display)),
        object_types=tuple(sorted(log.object_types, key=lambda t: t.display)),
        counts=counts,
    )


def matrix_to_csv(matrix: ExtractionMatrix) -> str:
    """Render the matrix as CSV: one header row of object-type labels, one
    row per activity, integer cells."""
    buffer = _io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["activity", *(t.display for t in matrix.object_types)])
    for activity in matrix.activities:
        writer.writerow(
            [activity.display, *(matrix.cell(activity, t) for t in matrix.object_types)]
        )
    return buffer.getvalue()


def save_flat_json(flat: FlatLog) -> str:
    """Serialize a flattened log deterministically (cases sorted by id)."""
    document = {
        "caseObjectType": flat.case_object_type.display,
        "cases": {
            case_id: [
                {"eventId": eid, "activity": activity.display, "time": format_instant(ts)}
                for eid, activity, ts in trace
            ]
            for case_id, trace in sorted(flat.cases.items())
        },
    }
    return json.dumps(document, indent=2, ensure_ascii=False) + "\n"


def load_flat_json(text: str) -> FlatLog:
    document = json.loads(text)
    cases = {
        case_id: [
            (entry["eventId"], TypeLabel.parse(entry["activity"]), parse_instant(entry["time"]))
            for entry in trace
        ]
        for case_id, trace in document["cases"].items()
    }
    return FlatLog(case_object_type=TypeLabel.parse(document["caseObjectType"]), cases=cases)
