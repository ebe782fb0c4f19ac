"""The published claim-part analyses as composed pipelines.

Each recipe is a straight composition of the log algebra and discovery
operations; running the underlying pipeline by hand yields the identical
model. Q1/Q2 measure how effectively handlers and the AI identified claim
parts, Q3/Q4 split the investigated parts by who identified them, and the
Venn attribution plus the scaling percentage summarize the comparison.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import labels
from .core import OcelLog
from .discovery import Dfg, OcDfg, discover_dfg, discover_ocdfg
from .ops import drill_down, filter_activities, flatten, project_object_types, retain_linked, unfold

__all__ = [
    "CASE_REFERENCE_COUNTS",
    "VennResult",
    "format_percent",
    "q1_human_effectiveness",
    "q2_ai_effectiveness",
    "q3_missed_by_ai",
    "q4_missed_by_humans",
    "scaling_percentage",
    "venn_attribution",
]

# Reference counts of the bundled case study, used by the repro command to
# check a generated log end to end.
CASE_REFERENCE_COUNTS = {
    "q1_rc": 3743,
    "q1_rcp": 68,
    "q1_ccpi": 21,
    "q2_unique_pcp": 1034,
    "q2_ccpi": 23,
    "q3_ccpi": 3,
    "q3_ccpi_ai": 23,
    "q4_ccpi": 5,
    "q4_ccpi_handler": 21,
    "venn_ai_only": 5,
    "venn_both": 18,
    "venn_human_only": 3,
    "human_reported_pct": "1.82%",
    "ai_predicted_pct": "27.62%",
    "scaling_pct": "1420%",
}


@dataclass(frozen=True)
class VennResult:
    """How many investigated claim parts each side identified."""

    ai_only: int
    both: int
    human_only: int

    @property
    def total(self) -> int:
        return self.ai_only + self.both + self.human_only


def q1_human_effectiveness(log: OcelLog) -> Dfg:
    """How claim handlers identified claim parts.

    Drops the AI-only activities, keeps only investigations whose claim
    also carries a handler report, and discovers a DFG on the claim cases.
    """
    filtered = filter_activities(log, "drop", {labels.ACT_SCAN_CLAIM, labels.ACT_PREDICT_PART})
    filtered = retain_linked(
        filtered, labels.ACT_CREATE_INVESTIGATION, labels.ACT_REPORT_PART, labels.TYPE_CLAIM
    )
    return discover_dfg(flatten(filtered, labels.TYPE_CLAIM))


def q2_ai_effectiveness(log: OcelLog) -> Dfg:
    """How the AI identified claim parts.

    Drops handler reports, keeps only investigations whose claim also
    carries an AI prediction, and discovers a DFG on the claim cases. The
    inflow into pCP counts unique predictions even when message-queue
    duplicates put a self-loop on the node.
    """
    filtered = filter_activities(log, "drop", {labels.ACT_REPORT_PART})
    filtered = retain_linked(
        filtered, labels.ACT_CREATE_INVESTIGATION, labels.ACT_PREDICT_PART, labels.TYPE_CLAIM
    )
    return discover_dfg(flatten(filtered, labels.TYPE_CLAIM))


def q3_missed_by_ai(log: OcelLog) -> OcDfg:
    """Investigated parts the AI missed, separated by unfolding on AI.

    Keeps human activities and the claim/AI object types, then unfolds the
    investigation activity on the AI type: investigations the AI also
    identified become (cCPi, AI), the rest stay cCPi.
    """
    prepared = filter_activities(log, "drop", {labels.ACT_SCAN_CLAIM, labels.ACT_PREDICT_PART})
    prepared = project_object_types(prepared, {labels.TYPE_CLAIM, labels.TYPE_AI})
    prepared = unfold(prepared, labels.ACT_CREATE_INVESTIGATION, labels.TYPE_AI)
    return discover_ocdfg(prepared)


def q4_missed_by_humans(log: OcelLog) -> OcDfg:
    """Investigated parts the handlers missed, separated by unfolding on
    the claim-handler subtype.

    Drills down the employee type on role when the log has not been drilled
    yet, keeps the claim and claim-handler types, drops rc, and unfolds the
    investigation activity on the handler type.
    """
    prepared = log
    if labels.TYPE_EMPLOYEE in prepared.object_types:
        prepared = drill_down(prepared, labels.TYPE_EMPLOYEE, labels.ROLE_ATTRIBUTE)
    prepared = project_object_types(prepared, {labels.TYPE_CLAIM, labels.TYPE_CLAIM_HANDLER})
    prepared = filter_activities(prepared, "drop", {labels.ACT_REGISTER_CLAIM})
    prepared = unfold(prepared, labels.ACT_CREATE_INVESTIGATION, labels.TYPE_CLAIM_HANDLER)
    return discover_ocdfg(prepared)


def _claims_of(log: OcelLog, event) -> set[str]:
    return {
        oid for oid in event.related_ids() if log.object(oid).type == labels.TYPE_CLAIM
    }


def venn_attribution(log: OcelLog) -> VennResult:
    """Partition investigated claim parts by who identified them.

    Identity is matched on the claim: a part counts as identified by a side
    when its claim carries that side's identification event (rCP for
    handlers, pCP for the AI).
    """
    claims_with_report: set[str] = set()
    for event in log.events_of_activity(labels.ACT_REPORT_PART):
        claims_with_report |= _claims_of(log, event)
    claims_with_prediction: set[str] = set()
    for event in log.events_of_activity(labels.ACT_PREDICT_PART):
        claims_with_prediction |= _claims_of(log, event)

    part_claims: dict[str, set[str]] = {}
    for event in log.events_of_activity(labels.ACT_CREATE_INVESTIGATION):
        claims = _claims_of(log, event)
        for oid in event.related_ids():
            if log.object(oid).type == labels.TYPE_CLAIM_PART:
                part_claims.setdefault(oid, set()).update(claims)

    ai_only = both = human_only = 0
    for claims in part_claims.values():
        human = bool(claims & claims_with_report)
        ai = bool(claims & claims_with_prediction)
        if ai and human:
            both += 1
        elif ai:
            ai_only += 1
        elif human:
            human_only += 1
    return VennResult(ai_only=ai_only, both=both, human_only=human_only)


def scaling_percentage(log: OcelLog) -> int:
    """Growth of identified-part claims from handlers to the AI, as a
    percentage rounded to the nearest ten.

    Raises:
        ZeroDivisionError: when no claim carries a handler report.
    """
    reported: set[str] = set()
    for event in log.events_of_activity(labels.ACT_REPORT_PART):
        reported |= _claims_of(log, event)
    predicted: set[str] = set()
    for event in log.events_of_activity(labels.ACT_PREDICT_PART):
        predicted |= _claims_of(log, event)
    if not reported:
        raise ZeroDivisionError("no claims with handler-reported parts")
    ratio = 100.0 * (len(predicted) - len(reported)) / len(reported)
    return int(round(ratio / 10.0) * 10)


def format_percent(numerator: int, denominator: int, decimals: int = 2) -> str:
    """Format a share to fixed decimals, e.g. format_percent(68, 3743) == '1.82%'."""
    if denominator == 0:
        raise ZeroDivisionError("percentage denominator is zero")
    return f"{100.0 * numerator / denominator:.{decimals}f}%"
