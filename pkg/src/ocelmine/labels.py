"""Shared vocabulary for the bundled insurance claims process.

Activity acronyms: rc registers a claim, cn creates a claim note, rCP is a
claim handler reporting a claim part, sc is the AI model scanning a claim,
pCP is the AI model predicting a claim part, and cCPi is an investigator
opening a claim part investigation.
"""

from __future__ import annotations

from .core import TypeLabel

ACT_REGISTER_CLAIM = TypeLabel("rc")
ACT_CREATE_NOTE = TypeLabel("cn")
ACT_REPORT_PART = TypeLabel("rCP")
ACT_SCAN_CLAIM = TypeLabel("sc")
ACT_PREDICT_PART = TypeLabel("pCP")
ACT_CREATE_INVESTIGATION = TypeLabel("cCPi")

TYPE_CUSTOMER = TypeLabel("customer")
TYPE_CLAIM = TypeLabel("claim")
TYPE_CLAIM_NOTE = TypeLabel("claim_note")
TYPE_CLAIM_PART = TypeLabel("claim_part")
TYPE_AI = TypeLabel("AI")
TYPE_EMPLOYEE = TypeLabel("employee")

ROLE_ATTRIBUTE = "role"
ROLE_CLAIM_HANDLER = "claim_handler"
ROLE_INVESTIGATOR = "claim_part_investigator"

TYPE_CLAIM_HANDLER = TYPE_EMPLOYEE.refine(ROLE_CLAIM_HANDLER)
TYPE_INVESTIGATOR = TYPE_EMPLOYEE.refine(ROLE_INVESTIGATOR)
