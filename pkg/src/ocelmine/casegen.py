"""Deterministic synthetic generator for the dual-variant claims process.

The generated log covers one line of business in which claim handlers and
an AI model identify claim parts in parallel: every claim is registered
(rc), annotated with notes (cn), and scanned by the AI (sc); a configured
number of claims receive a handler report (rCP) and/or an AI prediction
(pCP), and a configured subset of those is investigated (cCPi).

Counts are hard targets sampled without replacement, not Bernoulli rates,
so the same configuration always hits the same totals. Output is a pure
function of the configuration: equal seeds give byte-identical JSON.

Free parameters not pinned by the case study (handler/investigator/customer
headcounts, notes per claim, timestamp spreads, the duplicate-prediction
count, the share of investigations opened before the scan, the window
start, and the seed) carry documented defaults and can all be overridden.
"""

from __future__ import annotations

import dataclasses
import json
import random
from dataclasses import dataclass
from datetime import datetime, timedelta, timezone
from pathlib import Path
from typing import Any

from . import labels
from .core import OcelEvent, OcelLog, OcelObject, OcelmineError, build_log

__all__ = [
    "ConfigError",
    "GeneratorConfig",
    "WINDOW_START",
    "config_to_dict",
    "default_case_config",
    "generate",
    "load_config_file",
    "parse_config_text",
]


class ConfigError(OcelmineError):
    """A generator configuration violates its invariants."""


# Start of the synthetic observation window; arbitrary but fixed so equal
# configurations serialize identically.
WINDOW_START = datetime(2024, 10, 1, tzinfo=timezone.utc)

_MINUTE = 60_000
_HOUR = 60 * _MINUTE
_DAY = 24 * _HOUR


@dataclass
class GeneratorConfig:
    """Parameters and hard count targets for the synthetic claims log.

    Defaults are calibrated to the reference case study: 3743 claims over a
    five-month window, 68 handler-reported and 1034 AI-predicted claim
    parts, and 26 investigations split 18/5/3 between both, AI-only, and
    human-only identification.
    """

    n_claims: int = 3743
    horizon_days: int = 150
    n_human_reported: int = 68
    n_ai_predicted: int = 1034
    n_inv_both: int = 18
    n_inv_ai_only: int = 5
    n_inv_human_only: int = 3
    n_duplicate_pcp: int = 7
    n_claim_handlers: int = 25
    n_investigators: int = 4
    n_customers: int = 3000
    notes_per_claim: tuple[int, int] = (1, 3)
    p_ccpi_before_scan: float = 0.3
    seed: int = 104729


def default_case_config() -> GeneratorConfig:
    """The case-study calibration with the documented fixed seed."""
    return GeneratorConfig()


def _check(config: GeneratorConfig) -> None:
    problems = []
    counts = (
        "n_claims",
        "horizon_days",
        "n_human_reported",
        "n_ai_predicted",
        "n_inv_both",
        "n_inv_ai_only",
        "n_inv_human_only",
        "n_duplicate_pcp",
        "n_claim_handlers",
        "n_investigators",
        "n_customers",
    )
    for name in counts:
        if getattr(config, name) < 0:
            problems.append(f"{name} must be non-negative")
    if config.horizon_days < 1:
        problems.append("horizon_days must be at least 1")
    if config.n_human_reported > config.n_claims:
        problems.append("n_human_reported exceeds n_claims")
    if config.n_ai_predicted > config.n_claims:
        problems.append("n_ai_predicted exceeds n_claims")
    if config.n_inv_both > min(config.n_human_reported, config.n_ai_predicted):
        problems.append("n_inv_both exceeds the human/AI overlap capacity")
    if config.n_inv_ai_only > config.n_ai_predicted - config.n_inv_both:
        problems.append("n_inv_ai_only exceeds AI-only capacity")
    if config.n_inv_human_only > config.n_human_reported - config.n_inv_both:
        problems.append("n_inv_human_only exceeds human-only capacity")
    # Non-overlapping report/prediction sets outside the investigated core.
    if config.n_human_reported + config.n_ai_predicted - config.n_inv_both > config.n_claims:
        problems.append("n_human_reported + n_ai_predicted - n_inv_both exceeds n_claims")
    if config.n_duplicate_pcp > config.n_ai_predicted:
        problems.append("n_duplicate_pcp exceeds n_ai_predicted")
    lo, hi = config.notes_per_claim
    if lo < 1 or hi < lo:
        problems.append("notes_per_claim must satisfy 1 <= min <= max")
    if not 0.0 <= config.p_ccpi_before_scan <= 1.0:
        problems.append("p_ccpi_before_scan must be in [0, 1]")
    if config.n_claims > 0:
        if config.n_claim_handlers < 1:
            problems.append("n_claim_handlers must be at least 1 when claims are generated")
        if config.n_customers < 1:
            problems.append("n_customers must be at least 1 when claims are generated")
    if config.n_inv_both + config.n_inv_ai_only + config.n_inv_human_only > 0 and config.n_investigators < 1:
        problems.append("n_investigators must be at least 1 when investigations are generated")
    if problems:
        raise ConfigError("; ".join(problems))


def _ts(ms: int) -> datetime:
    return WINDOW_START + timedelta(milliseconds=ms)


def generate(config: GeneratorConfig) -> OcelLog:
    """Generate the claims-process log for a configuration.

    Per claim the causal order is rc < cn... < sc, with rCP after the last
    note, pCP after sc, and cCPi after whichever identification feeds it
    (or between rCP and sc for the before-scan share). Duplicate pCP events
    land one second after the original with nothing in between, so the
    unique-prediction inflow stays exact.

    Raises:
        ConfigError: when the configuration invariants do not hold.
    """
    _check(config)
    rng = random.Random(config.seed)

    objects: list[OcelObject] = []
    events: list[OcelEvent] = []

    def role_at_start(role: str) -> dict:
        return {labels.ROLE_ATTRIBUTE: [(WINDOW_START, role)]}

    handlers = [
        OcelObject(f"emp-h{i + 1:03d}", labels.TYPE_EMPLOYEE, role_at_start(labels.ROLE_CLAIM_HANDLER))
        for i in range(config.n_claim_handlers)
    ]
    investigators = [
        OcelObject(f"emp-i{i + 1:03d}", labels.TYPE_EMPLOYEE, role_at_start(labels.ROLE_INVESTIGATOR))
        for i in range(config.n_investigators)
    ]
    customers = [
        OcelObject(f"cust-{i + 1:05d}", labels.TYPE_CUSTOMER) for i in range(config.n_customers)
    ]
    ai_model = OcelObject("ai-model-1", labels.TYPE_AI, {"version": [(WINDOW_START, "v5")]})
    objects.extend(handlers)
    objects.extend(investigators)
    objects.extend(customers)
    objects.append(ai_model)

    order = list(range(config.n_claims))
    rng.shuffle(order)
    cursor = 0

    def take(count: int) -> set[int]:
        nonlocal cursor
        chunk = set(order[cursor : cursor + count])
        cursor += count
        return chunk

    both_inv = take(config.n_inv_both)
    ai_only_inv = take(config.n_inv_ai_only)
    human_only_inv = take(config.n_inv_human_only)
    extra_human = take(config.n_human_reported - config.n_inv_both - config.n_inv_human_only)
    extra_ai = take(config.n_ai_predicted - config.n_inv_both - config.n_inv_ai_only)

    human_claims = both_inv | human_only_inv | extra_human
    ai_claims = both_inv | ai_only_inv | extra_ai
    investigated = {i: "both" for i in both_inv}
    investigated.update({i: "ai" for i in ai_only_inv})
    investigated.update({i: "human" for i in human_only_inv})
    duplicated = set(rng.sample(sorted(ai_claims), config.n_duplicate_pcp)) if ai_claims else set()

    # Leave room for the deepest per-claim timeline inside the window.
    margin = config.notes_per_claim[1] * 8 * _HOUR + 140 * _HOUR
    span = max(1, config.horizon_days * _DAY - margin)

    event_seq = 0

    def emit(activity, at_ms: int, relations) -> None:
        nonlocal event_seq
        event_seq += 1
        events.append(
            OcelEvent(id=f"ev-{event_seq:06d}", activity=activity, timestamp=_ts(at_ms), relations=relations)
        )

    for i in range(config.n_claims):
        claim_id = f"claim-{i + 1:05d}"
        start = rng.randrange(span)
        handler = handlers[rng.randrange(len(handlers))]
        customer = customers[rng.randrange(len(customers))]
        objects.append(
            OcelObject(claim_id, labels.TYPE_CLAIM, relations=[(customer.id, "filed_by")])
        )

        emit(
            labels.ACT_REGISTER_CLAIM,
            start,
            [(claim_id, "claim"), (handler.id, "registered_by"), (customer.id, "customer")],
        )

        t = start
        note_id = ""
        for j in range(rng.randint(*config.notes_per_claim)):
            t += rng.randrange(1 * _HOUR, 8 * _HOUR)
            note_id = f"note-{i + 1:05d}-{j + 1}"
            objects.append(
                OcelObject(note_id, labels.TYPE_CLAIM_NOTE, relations=[(claim_id, "attached_to")])
            )
            emit(
                labels.ACT_CREATE_NOTE,
                t,
                [(claim_id, "claim"), (note_id, "note"), (handler.id, "author")],
            )
        last_note_at = t

        scan_at = last_note_at + rng.randrange(2 * _HOUR, 24 * _HOUR)
        emit(
            labels.ACT_SCAN_CLAIM,
            scan_at,
            [(claim_id, "claim"), (ai_model.id, "performer"), (note_id, "latest_note")],
        )

        part_id = ""
        if i in human_claims or i in ai_claims:
            part_id = f"part-{i + 1:05d}"
            objects.append(
                OcelObject(part_id, labels.TYPE_CLAIM_PART, relations=[(claim_id, "part_of")])
            )

        kind = investigated.get(i)
        before_scan = False
        if kind in ("both", "human"):
            before_scan = rng.random() < config.p_ccpi_before_scan

        report_at = 0
        if i in human_claims:
            if before_scan:
                # Report and investigation both squeeze in before the scan.
                report_at = last_note_at + rng.randrange(15 * _MINUTE, 45 * _MINUTE)
            else:
                report_at = last_note_at + rng.randrange(1 * _HOUR, 36 * _HOUR)
            emit(
                labels.ACT_REPORT_PART,
                report_at,
                [(claim_id, "claim"), (part_id, "claim_part"), (handler.id, "reporter")],
            )

        predict_at = 0
        if i in ai_claims:
            predict_at = scan_at + rng.randrange(1 * _MINUTE, 30 * _MINUTE)
            prediction = [(claim_id, "claim"), (part_id, "claim_part"), (ai_model.id, "predictor")]
            emit(labels.ACT_PREDICT_PART, predict_at, prediction)
            if i in duplicated:
                emit(labels.ACT_PREDICT_PART, predict_at + 1000, list(prediction))

        if kind is not None:
            investigator = investigators[rng.randrange(len(investigators))]
            if before_scan:
                opened_at = report_at + rng.randrange(15 * _MINUTE, 60 * _MINUTE)
            else:
                identified_at = max(
                    report_at if kind in ("both", "human") else 0,
                    predict_at if kind in ("both", "ai") else 0,
                )
                opened_at = identified_at + rng.randrange(1 * _HOUR, 72 * _HOUR)
            relations = [
                (claim_id, "claim"),
                (part_id, "claim_part"),
                (investigator.id, "investigator"),
            ]
            if kind in ("both", "ai"):
                relations.append((ai_model.id, "identified_by"))
            if kind in ("both", "human"):
                relations.append((handler.id, "reported_by"))
            emit(labels.ACT_CREATE_INVESTIGATION, opened_at, relations)

    return build_log(objects, events)


_FIELDS = {f.name: f for f in dataclasses.fields(GeneratorConfig)}


def config_to_dict(config: GeneratorConfig) -> dict[str, Any]:
    data = dataclasses.asdict(config)
    data["notes_per_claim"] = list(config.notes_per_claim)
    return data


def _coerce(name: str, value: Any) -> Any:
    if name == "notes_per_claim":
        if isinstance(value, str):
            value = [part.strip() for part in value.split(",")]
        pair = tuple(int(v) for v in value)
        if len(pair) != 2:
            raise ConfigError("notes_per_claim needs exactly two values (min, max)")
        return pair
    if name == "p_ccpi_before_scan":
        return float(value)
    return int(value)


def parse_config_text(text: str) -> GeneratorConfig:
    """Parse a configuration from JSON or key=value lines.

    Unknown keys are rejected so typos never silently fall back to
    defaults; omitted keys keep the case-study calibration.
    """
    text = text.strip()
    if text.startswith("{"):
        try:
            raw = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"malformed JSON configuration: {exc}") from exc
        if not isinstance(raw, dict):
            raise ConfigError("JSON configuration must be an object")
        entries = dict(raw)
    else:
        entries = {}
        for line_no, line in enumerate(text.splitlines(), start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ConfigError(f"line {line_no}: expected key=value, got {line!r}")
            key, _, value = line.partition("=")
            entries[key.strip()] = value.strip()

    unknown = sorted(set(entries) - set(_FIELDS))
    if unknown:
        raise ConfigError(f"unknown configuration keys: {', '.join(unknown)}")
    values = {name: _coerce(name, value) for name, value in entries.items()}
    return GeneratorConfig(**values)


def load_config_file(path: str | Path) -> GeneratorConfig:
    return parse_config_text(Path(path).read_text(encoding="utf-8"))
