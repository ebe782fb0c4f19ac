"""In-memory model for object-centric event logs.

Events relate to any number of typed objects through qualified
event-to-object relations, and objects relate to each other through
qualified object-to-object relations. A built log is immutable by
convention: every operation in this package returns a new log instead of
mutating its input, so any number of readers can share one instance.

Logs are constructed through :func:`build_log`, which canonicalizes the
input (UTC millisecond timestamps, sorted and de-duplicated relation
lists, sorted attribute timelines) and rejects logs with duplicate ids or
dangling relation endpoints. All violations are reported together, not
just the first one found.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import Iterable, Union

AttributeValue = Union[str, int, float, bool]

__all__ = [
    "AttributeValue",
    "IntegrityError",
    "MissingAttribute",
    "OcelEvent",
    "OcelLog",
    "OcelObject",
    "OcelmineError",
    "Problem",
    "TypeLabel",
    "UnknownObject",
    "UnknownObjectType",
    "build_log",
    "scan_problems",
]


class OcelmineError(Exception):
    """Base class for every error raised by this package."""


class UnknownObject(OcelmineError):
    """An object id that does not exist in the log."""


class UnknownObjectType(OcelmineError):
    """An object type that does not exist in the log."""


class MissingAttribute(OcelmineError):
    """An object lacks an attribute required by an operation."""


@dataclass(frozen=True)
class Problem:
    """One integrity or schema finding: a code, a message, and a locator."""

    code: str
    message: str
    locator: str

    def __str__(self) -> str:
        return f"{self.code} at {self.locator}: {self.message}"


class IntegrityError(OcelmineError):
    """A log violates referential integrity or id uniqueness.

    Carries every violation found in ``problems``, not just the first.
    """

    def __init__(self, problems: Iterable[Problem]):
        self.problems = list(problems)
        super().__init__("; ".join(str(p) for p in self.problems))


@dataclass(frozen=True)
class TypeLabel:
    """A type or activity name, optionally refined by drill-down or unfold.

    The display form is ``base`` while ``refinements`` is empty, else
    ``(base, r1, r2, ...)``. Two labels are equal iff base and refinements
    match element-wise, so ``TypeLabel("cCPi")`` is distinct from
    ``TypeLabel("cCPi", ("AI",))``.
    """

    base: str
    refinements: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if not self.base:
            raise ValueError("label base must be non-empty")
        if not isinstance(self.refinements, tuple):
            object.__setattr__(self, "refinements", tuple(self.refinements))

    @property
    def display(self) -> str:
        if not self.refinements:
            return self.base
        return "(" + ", ".join((self.base, *self.refinements)) + ")"

    def refine(self, refinement: str) -> TypeLabel:
        """Return a copy with one more refinement appended."""
        return TypeLabel(self.base, self.refinements + (refinement,))

    @classmethod
    def parse(cls, text: str) -> TypeLabel:
        """Parse a display form back into base plus refinements.

        ``(employee, claim_handler)`` becomes base ``employee`` with one
        refinement; nested parentheses stay intact as single refinements.
        Unparenthesized text is taken literally as a base name, so bases
        must not contain top-level commas for the round trip to hold.
        """
        text = text.strip()
        if text.startswith("(") and text.endswith(")"):
            parts = _split_top_level(text[1:-1])
            if len(parts) >= 2:
                return cls(parts[0], tuple(parts[1:]))
        return cls(text)

    def __str__(self) -> str:
        return self.display


def _split_top_level(text: str) -> list[str]:
    """Split on commas that sit outside any parentheses."""
    parts: list[str] = []
    depth = 0
    current: list[str] = []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(current).strip())
            current = []
        else:
            current.append(ch)
    parts.append("".join(current).strip())
    return parts


@dataclass
class OcelObject:
    """An object with timestamped attribute values and qualified O2O relations.

    ``attributes`` maps a name to its value timeline, a list of
    ``(timestamp, value)`` pairs kept in ascending timestamp order.
    ``relations`` holds ``(target object id, qualifier)`` pairs; the source
    object owns the relation.
    """

    id: str
    type: TypeLabel
    attributes: dict[str, list[tuple[datetime, AttributeValue]]] = field(default_factory=dict)
    relations: list[tuple[str, str]] = field(default_factory=list)

    def latest_attribute(self, name: str) -> AttributeValue:
        """Return the most recent value of ``name``.

        Raises:
            MissingAttribute: if the object has no value for ``name``.
        """
        series = self.attributes.get(name)
        if not series:
            raise MissingAttribute(f"object '{self.id}' has no attribute '{name}'")
        return series[-1][1]


@dataclass
class OcelEvent:
    """An event with an activity label, a UTC timestamp, and E2O relations.

    ``relations`` holds ``(object id, qualifier)`` pairs. Event attributes
    are plain values; only object attributes carry timelines.
    """

    id: str
    activity: TypeLabel
    timestamp: datetime
    attributes: dict[str, AttributeValue] = field(default_factory=dict)
    relations: list[tuple[str, str]] = field(default_factory=list)

    def related_ids(self) -> list[str]:
        """Distinct related object ids, in relation order."""
        seen: dict[str, None] = {}
        for oid, _ in self.relations:
            seen.setdefault(oid)
        return list(seen)


class OcelLog:
    """An immutable object-centric event log with lookup indices.

    Construct through :func:`build_log`; the constructor assumes its input
    is already canonical and free of duplicate ids. Objects and events are
    stored sorted by id, so two logs with equal content compare equal no
    matter how they were assembled.
    """

    __slots__ = (
        "objects",
        "events",
        "object_types",
        "event_types",
        "_object_by_id",
        "_event_by_id",
        "_objects_by_type",
        "_events_by_activity",
        "_events_by_object",
    )

    def __init__(self, objects: Iterable[OcelObject], events: Iterable[OcelEvent]):
        self.objects: list[OcelObject] = sorted(objects, key=lambda o: o.id)
        self.events: list[OcelEvent] = sorted(events, key=lambda e: e.id)
        self.object_types: frozenset[TypeLabel] = frozenset(o.type for o in self.objects)
        self.event_types: frozenset[TypeLabel] = frozenset(e.activity for e in self.events)
        self._object_by_id: dict[str, OcelObject] = {o.id: o for o in self.objects}
        self._event_by_id: dict[str, OcelEvent] = {e.id: e for e in self.events}

        by_type: dict[TypeLabel, list[str]] = defaultdict(list)
        for obj in self.objects:
            by_type[obj.type].append(obj.id)
        self._objects_by_type: dict[TypeLabel, list[str]] = dict(by_type)

        order = sorted(self.events, key=lambda e: (e.timestamp, e.id))
        by_activity: dict[TypeLabel, list[str]] = defaultdict(list)
        by_object: dict[str, list[str]] = {o.id: [] for o in self.objects}
        for event in order:
            by_activity[event.activity].append(event.id)
            for oid in event.related_ids():
                if oid in by_object:
                    by_object[oid].append(event.id)
        self._events_by_activity: dict[TypeLabel, list[str]] = dict(by_activity)
        self._events_by_object: dict[str, list[str]] = by_object

    def object(self, object_id: str) -> OcelObject:
        try:
            return self._object_by_id[object_id]
        except KeyError:
            raise UnknownObject(f"no object with id '{object_id}'") from None

    def event(self, event_id: str) -> OcelEvent:
        try:
            return self._event_by_id[event_id]
        except KeyError:
            raise KeyError(f"no event with id '{event_id}'") from None

    def has_object(self, object_id: str) -> bool:
        return object_id in self._object_by_id

    def objects_of_type(self, label: TypeLabel) -> list[OcelObject]:
        """Objects carrying exactly this type label, sorted by id."""
        return [self._object_by_id[oid] for oid in self._objects_by_type.get(label, [])]

    def events_of_activity(self, label: TypeLabel) -> list[OcelEvent]:
        """Events carrying exactly this activity label, in (timestamp, id) order."""
        return [self._event_by_id[eid] for eid in self._events_by_activity.get(label, [])]

    def events_of_object(self, object_id: str) -> list[OcelEvent]:
        """Events related to the object, ascending by (timestamp, event id).

        Raises:
            UnknownObject: if ``object_id`` is not in the log.
        """
        if object_id not in self._object_by_id:
            raise UnknownObject(f"no object with id '{object_id}'")
        return [self._event_by_id[eid] for eid in self._events_by_object[object_id]]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, OcelLog):
            return NotImplemented
        return self.objects == other.objects and self.events == other.events

    def __repr__(self) -> str:
        return (
            f"OcelLog({len(self.objects)} objects, {len(self.events)} events, "
            f"{len(self.object_types)} object types, {len(self.event_types)} event types)"
        )


def _canonical_timestamp(ts: datetime) -> datetime:
    # Naive timestamps are taken as UTC; precision is truncated to whole ms.
    if ts.tzinfo is None:
        ts = ts.replace(tzinfo=timezone.utc)
    ts = ts.astimezone(timezone.utc)
    return ts.replace(microsecond=(ts.microsecond // 1000) * 1000)


def _canonical_object(obj: OcelObject) -> OcelObject:
    attributes = {
        name: sorted(
            ((_canonical_timestamp(t), v) for t, v in series),
            key=lambda pair: pair[0],
        )
        for name, series in sorted(obj.attributes.items())
    }
    return OcelObject(
        id=obj.id,
        type=obj.type,
        attributes=attributes,
        relations=sorted(set(obj.relations)),
    )


def _canonical_event(event: OcelEvent) -> OcelEvent:
    return OcelEvent(
        id=event.id,
        activity=event.activity,
        timestamp=_canonical_timestamp(event.timestamp),
        attributes=dict(sorted(event.attributes.items())),
        relations=sorted(set(event.relations)),
    )


def scan_problems(
    objects: Iterable[OcelObject], events: Iterable[OcelEvent]
) -> tuple[list[Problem], list[Problem]]:
    """Scan raw collections for integrity problems.

    Returns ``(errors, warnings)``. Errors (duplicate ids, dangling
    relation endpoints) make a log unloadable; warnings (unsorted
    attribute timelines, events without related objects) do not.
    """
    objects = list(objects)
    events = list(events)
    errors: list[Problem] = []
    warnings: list[Problem] = []

    object_ids: set[str] = set()
    for obj in objects:
        if obj.id in object_ids:
            errors.append(Problem("DUP_OBJECT_ID", "duplicate object id", f"object '{obj.id}'"))
        object_ids.add(obj.id)
        for name, series in obj.attributes.items():
            times = [t for t, _ in series]
            if times != sorted(times):
                warnings.append(
                    Problem(
                        "UNSORTED_ATTRIBUTES",
                        f"attribute '{name}' timeline is not sorted by timestamp",
                        f"object '{obj.id}'",
                    )
                )

    for obj in objects:
        for target, qualifier in obj.relations:
            if target not in object_ids:
                errors.append(
                    Problem(
                        "DANGLING_O2O",
                        f"relation '{qualifier}' points to missing object '{target}'",
                        f"object '{obj.id}'",
                    )
                )

    event_ids: set[str] = set()
    for event in events:
        if event.id in event_ids:
            errors.append(Problem("DUP_EVENT_ID", "duplicate event id", f"event '{event.id}'"))
        event_ids.add(event.id)
        if not event.relations:
            warnings.append(
                Problem(
                    "NO_RELATED_OBJECTS",
                    "event relates to no objects",
                    f"event '{event.id}'",
                )
            )
        for target, qualifier in event.relations:
            if target not in object_ids:
                errors.append(
                    Problem(
                        "DANGLING_E2O",
                        f"relation '{qualifier}' points to missing object '{target}'",
                        f"event '{event.id}'",
                    )
                )

    return errors, warnings


def build_log(objects: Iterable[OcelObject], events: Iterable[OcelEvent]) -> OcelLog:
    """Canonicalize, validate, and index a log.

    Canonical form: UTC timestamps truncated to millisecond precision,
    relation lists de-duplicated and sorted by (id, qualifier), attribute
    timelines sorted ascending by timestamp. Input values are copied, not
    mutated.

    Raises:
        IntegrityError: listing every duplicate id and dangling relation
            endpoint found.
    """
    canon_objects = [_canonical_object(o) for o in objects]
    canon_events = [_canonical_event(e) for e in events]
    errors, _ = scan_problems(canon_objects, canon_events)
    if errors:
        raise IntegrityError(errors)
    return OcelLog(canon_objects, canon_events)
