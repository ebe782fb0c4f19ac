"""Directly-follows model discovery and DOT rendering.

A DFG is discovered from a flattened (case-based) log; node frequencies
count trace positions, so an event shared by several cases counts once per
case. An OC-DFG is discovered straight from an object-centric log with one
edge relation per object type; its node frequencies count distinct events.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

from .core import OcelLog, TypeLabel
from .ops import FlatLog

__all__ = [
    "Dfg",
    "OcDfg",
    "dfg_to_dot",
    "discover_dfg",
    "discover_ocdfg",
]

Edge = tuple[TypeLabel, TypeLabel]


@dataclass
class Dfg:
    """A frequency-annotated directly-follows graph over one case notion."""

    nodes: dict[TypeLabel, int] = field(default_factory=dict)
    edges: dict[Edge, int] = field(default_factory=dict)
    start_counts: dict[TypeLabel, int] = field(default_factory=dict)
    end_counts: dict[TypeLabel, int] = field(default_factory=dict)

    def incoming_flow(self, activity: TypeLabel) -> int:
        """Total count on edges into the activity, self-loops excluded."""
        return sum(n for (a, b), n in self.edges.items() if b == activity and a != activity)


@dataclass
class OcDfg:
    """Directly-follows relations per object type over a shared event set.

    ``typed_edges`` is keyed by (object type, source activity, target
    activity); node frequencies count distinct events, so the per-type
    Venn-style annotations add up over the whole log.
    """

    nodes: dict[TypeLabel, int] = field(default_factory=dict)
    typed_edges: dict[tuple[TypeLabel, TypeLabel, TypeLabel], int] = field(default_factory=dict)
    typed_start: dict[tuple[TypeLabel, TypeLabel], int] = field(default_factory=dict)
    typed_end: dict[tuple[TypeLabel, TypeLabel], int] = field(default_factory=dict)
    object_counts: dict[TypeLabel, int] = field(default_factory=dict)

    def edges_for_type(self, object_type: TypeLabel) -> dict[Edge, int]:
        return {
            (a, b): n for (t, a, b), n in self.typed_edges.items() if t == object_type
        }


def discover_dfg(flat: FlatLog) -> Dfg:
    """Count node visits, adjacent pairs, and trace starts/ends.

    Empty traces are ignored; single-event traces contribute a start and an
    end but no edge. Self-loops are ordinary edges.
    """
    model = Dfg()
    for _, trace in sorted(flat.cases.items()):
        if not trace:
            continue
        activities = [activity for _, activity, _ in trace]
        model.start_counts[activities[0]] = model.start_counts.get(activities[0], 0) + 1
        model.end_counts[activities[-1]] = model.end_counts.get(activities[-1], 0) + 1
        for activity in activities:
            model.nodes[activity] = model.nodes.get(activity, 0) + 1
        for source, target in zip(activities, activities[1:]):
            model.edges[(source, target)] = model.edges.get((source, target), 0) + 1
    return model


def discover_ocdfg(log: OcelLog) -> OcDfg:
    """Discover per-object-type directly-follows relations.

    For each object, adjacent pairs of its event timeline feed the edge
    counts of its type; the object's first and last events feed the typed
    start/end counts. Restricted to a single type this reproduces
    ``discover_dfg(flatten(log, type)).edges`` exactly.
    """
    model = OcDfg()
    for event in log.events:
        model.nodes[event.activity] = model.nodes.get(event.activity, 0) + 1
    for object_type in sorted(log.object_types, key=lambda t: t.display):
        instances = log.objects_of_type(object_type)
        model.object_counts[object_type] = len(instances)
        for obj in instances:
            timeline = log.events_of_object(obj.id)
            if not timeline:
                continue
            first, last = timeline[0].activity, timeline[-1].activity
            model.typed_start[(object_type, first)] = model.typed_start.get((object_type, first), 0) + 1
            model.typed_end[(object_type, last)] = model.typed_end.get((object_type, last), 0) + 1
            for source, target in zip(timeline, timeline[1:]):
                key = (object_type, source.activity, target.activity)
                model.typed_edges[key] = model.typed_edges.get(key, 0) + 1
    return model


_PALETTE = (
    "#1f77b4",
    "#ff7f0e",
    "#2ca02c",
    "#d62728",
    "#9467bd",
    "#8c564b",
    "#e377c2",
    "#7f7f7f",
    "#bcbd22",
    "#17becf",
)


def _quote(name: str) -> str:
    return '"' + name.replace("\\", "\\\\").replace('"', '\\"') + '"'


def dfg_to_dot(model: Union[Dfg, OcDfg]) -> str:
    """Render a discovered model as a deterministic Graphviz digraph.

    Activity nodes are labeled ``name (frequency)``. DFG edges carry their
    count; OC-DFG edges additionally carry the object-type label and one
    stable color per type. Each case notion gets artificial start and end
    nodes.
    """
    lines = ["digraph dfg {", "  rankdir=LR;", '  node [shape=box, fontname="Helvetica"];']
    if isinstance(model, Dfg):
        _render_dfg(model, lines)
    else:
        _render_ocdfg(model, lines)
    lines.append("}")
    return "\n".join(lines) + "\n"


def _render_dfg(model: Dfg, lines: list[str]) -> None:
    for node in sorted(model.nodes, key=lambda t: t.display):
        lines.append(f"  {_quote(node.display)} [label={_quote(f'{node.display} ({model.nodes[node]})')}];")
    if model.start_counts:
        lines.append('  "__start" [shape=circle, label="start"];')
    if model.end_counts:
        lines.append('  "__end" [shape=doublecircle, label="end"];')
    for node in sorted(model.start_counts, key=lambda t: t.display):
        lines.append(f'  "__start" -> {_quote(node.display)} [label="{model.start_counts[node]}"];')
    for (source, target) in sorted(model.edges, key=lambda e: (e[0].display, e[1].display)):
        count = model.edges[(source, target)]
        lines.append(f'  {_quote(source.display)} -> {_quote(target.display)} [label="{count}"];')
    for node in sorted(model.end_counts, key=lambda t: t.display):
        lines.append(f'  {_quote(node.display)} -> "__end" [label="{model.end_counts[node]}"];')


def _render_ocdfg(model: OcDfg, lines: list[str]) -> None:
    types = sorted(model.object_counts, key=lambda t: t.display)
    colors = {t: _PALETTE[i % len(_PALETTE)] for i, t in enumerate(types)}
    for node in sorted(model.nodes, key=lambda t: t.display):
        lines.append(f"  {_quote(node.display)} [label={_quote(f'{node.display} ({model.nodes[node]})')}];")
    for object_type in types:
        color = colors[object_type]
        start_name = f"__start {object_type.display}"
        end_name = f"__end {object_type.display}"
        has_start = any(t == object_type for t, _ in model.typed_start)
        if has_start:
            lines.append(
                f"  {_quote(start_name)} [shape=circle, label={_quote(object_type.display)}, color={_quote(color)}];"
            )
            lines.append(
                f"  {_quote(end_name)} [shape=doublecircle, label={_quote(object_type.display)}, color={_quote(color)}];"
            )
        for (t, node) in sorted(model.typed_start, key=lambda k: (k[0].display, k[1].display)):
            if t != object_type:
                continue
            count = model.typed_start[(t, node)]
            lines.append(
                f"  {_quote(start_name)} -> {_quote(node.display)} "
                f'[label="{count}", color={_quote(color)}, fontcolor={_quote(color)}];'
            )
        for (t, source, target) in sorted(
            model.typed_edges, key=lambda k: (k[0].display, k[1].display, k[2].display)
        ):
            if t != object_type:
                continue
            count = model.typed_edges[(t, source, target)]
            lines.append(
                f"  {_quote(source.display)} -> {_quote(target.display)} "
                f"[label={_quote(f'{count} ({object_type.display})')}, "
                f"color={_quote(color)}, fontcolor={_quote(color)}];"
            )
        for (t, node) in sorted(model.typed_end, key=lambda k: (k[0].display, k[1].display)):
            if t != object_type:
                continue
            count = model.typed_end[(t, node)]
            lines.append(
                f"  {_quote(node.display)} -> {_quote(end_name)} "
                f'[label="{count}", color={_quote(color)}, fontcolor={_quote(color)}];'
            )
