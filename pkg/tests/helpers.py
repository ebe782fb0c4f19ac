"""Shared test helpers: a compact log builder, a seeded random-log
generator, and independent brute-force oracles kept deliberately separate
from the implementations they check."""

from __future__ import annotations

import random
from datetime import datetime, timedelta, timezone

from ocelmine.core import OcelEvent, OcelLog, OcelObject, TypeLabel, build_log
from ocelmine.discovery import Dfg

BASE = datetime(2024, 1, 1, tzinfo=timezone.utc)


def at(minutes: float) -> datetime:
    return BASE + timedelta(minutes=minutes)


def quick_log(objects: dict[str, str], events: list[tuple[str, str, float, list[str]]]) -> OcelLog:
    """Build a log from terse specs.

    ``objects`` maps id -> type name; ``events`` entries are
    (id, activity, minutes-offset, related object ids).
    """
    objs = [OcelObject(oid, TypeLabel.parse(t)) for oid, t in objects.items()]
    evts = [
        OcelEvent(eid, TypeLabel.parse(act), at(minutes), relations=[(oid, "rel") for oid in related])
        for eid, act, minutes, related in events
    ]
    return build_log(objs, evts)


# ---------------------------------------------------------------------------
# Randomized logs (shared by hypothesis strategies and acceptance loops)

_QUALIFIERS = ("handled", "owns", "touches", "för")
_ATTR_NAMES = ("grade", "status", "kategori")


def random_log(rng: random.Random, max_events: int = 40) -> OcelLog:
    """A small valid log with random types, relations, and attributes.

    Every object carries a ``grade`` attribute so drill-down is total;
    timestamps collide on purpose now and then to exercise tie-breaking.
    """
    type_pool = [TypeLabel(f"T{i}") for i in range(rng.randint(1, 3))]
    if rng.random() < 0.3:
        type_pool.append(TypeLabel("T0", ("sub",)))
    activity_pool = [TypeLabel(f"A{i}") for i in range(rng.randint(1, 4))]

    objects = []
    for i in range(rng.randint(1, 8)):
        attributes = {
            "grade": [
                (at(rng.randint(0, 500)), rng.choice(["low", "high", rng.randint(0, 3)]))
                for _ in range(rng.randint(1, 2))
            ]
        }
        if rng.random() < 0.4:
            attributes[rng.choice(_ATTR_NAMES)] = [
                (at(rng.randint(0, 500)), rng.choice([True, 3.5, -7, "täckning"]))
            ]
        relations = []
        if i > 0 and rng.random() < 0.4:
            relations.append((f"o{rng.randrange(i)}", rng.choice(_QUALIFIERS)))
        objects.append(
            OcelObject(f"o{i}", rng.choice(type_pool), attributes=attributes, relations=relations)
        )

    events = []
    clock_span = rng.choice([5, 200])  # a tight span forces timestamp ties
    for i in range(rng.randint(0, max_events)):
        if rng.random() < 0.03:
            relations = []
        else:
            count = rng.randint(1, min(3, len(objects)))
            chosen = rng.sample(range(len(objects)), count)
            relations = [(f"o{j}", rng.choice(_QUALIFIERS)) for j in chosen]
        attributes = {}
        if rng.random() < 0.3:
            attributes["amount"] = rng.choice([rng.randint(0, 9999) / 16, rng.randint(-5, 5), False, "妥当"])
        events.append(
            OcelEvent(
                f"e{i}",
                rng.choice(activity_pool),
                at(rng.randint(0, clock_span)),
                attributes=attributes,
                relations=relations,
            )
        )
    return build_log(objects, events)


# ---------------------------------------------------------------------------
# Brute-force oracles

def oracle_events_of_object(log: OcelLog, object_id: str) -> list[str]:
    """Scan all events, filter by relation, sort by (timestamp, id)."""
    hits = [e for e in log.events if any(oid == object_id for oid, _ in e.relations)]
    hits.sort(key=lambda e: (e.timestamp, e.id))
    return [e.id for e in hits]


def oracle_matrix_cell(log: OcelLog, activity: TypeLabel, object_type: TypeLabel) -> int:
    """Double loop over events and objects counting distinct related pairs."""
    count = 0
    for event in log.events:
        if event.activity != activity:
            continue
        for obj in log.objects:
            if obj.type == object_type and any(oid == obj.id for oid, _ in event.relations):
                count += 1
    return count


def oracle_flat_traces(log: OcelLog, object_type: TypeLabel) -> dict[str, list[str]]:
    """Per-object brute-force scan: every object of the type becomes a case."""
    return {
        obj.id: oracle_events_of_object(log, obj.id)
        for obj in log.objects
        if obj.type == object_type
    }


def oracle_dfg_edges(traces: list[list[str]]) -> dict[tuple[str, str], int]:
    """Enumerate adjacent pairs by hand."""
    edges: dict[tuple[str, str], int] = {}
    for trace in traces:
        for a, b in zip(trace, trace[1:]):
            edges[(a, b)] = edges.get((a, b), 0) + 1
    return edges


def assert_flow_conserved(model: Dfg) -> None:
    """Per node: inflow plus starts equals frequency equals outflow plus ends."""
    for node, frequency in model.nodes.items():
        inflow = sum(n for (a, b), n in model.edges.items() if b == node)
        outflow = sum(n for (a, b), n in model.edges.items() if a == node)
        assert inflow + model.start_counts.get(node, 0) == frequency
        assert outflow + model.end_counts.get(node, 0) == frequency
