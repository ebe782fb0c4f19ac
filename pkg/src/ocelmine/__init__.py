"""Object-centric process mining toolkit.

Log algebra, DFG/OC-DFG discovery, and OCEL 2.0 interchange, plus a
deterministic synthetic generator and ready-made recipes for the bundled
insurance claims case study.
"""

from .casegen import ConfigError, GeneratorConfig, default_case_config, generate
from .core import (
    IntegrityError,
    MissingAttribute,
    OcelEvent,
    OcelLog,
    OcelObject,
    OcelmineError,
    TypeLabel,
    UnknownObject,
    UnknownObjectType,
    build_log,
)
from .discovery import Dfg, OcDfg, dfg_to_dot, discover_dfg, discover_ocdfg
from .io import ParseError, SchemaError, ValidationReport, load_json, save_json, validate
from .metrics import ConfusionCounts, MetricReport, compute_metrics, select_model
from .ops import (
    ExtractionMatrix,
    FlatLog,
    drill_down,
    extraction_matrix,
    filter_activities,
    flatten,
    latest_note_filter,
    project_object_types,
    retain_linked,
    unfold,
)
from .recipes import (
    VennResult,
    q1_human_effectiveness,
    q2_ai_effectiveness,
    q3_missed_by_ai,
    q4_missed_by_humans,
    scaling_percentage,
    venn_attribution,
)

__version__ = "0.1.0"

__all__ = [
    "ConfigError",
    "ConfusionCounts",
    "Dfg",
    "ExtractionMatrix",
    "FlatLog",
    "GeneratorConfig",
    "IntegrityError",
    "MetricReport",
    "MissingAttribute",
    "OcDfg",
    "OcelEvent",
    "OcelLog",
    "OcelObject",
    "OcelmineError",
    "ParseError",
    "SchemaError",
    "TypeLabel",
    "UnknownObject",
    "UnknownObjectType",
    "ValidationReport",
    "VennResult",
    "build_log",
    "compute_metrics",
    "default_case_config",
    "dfg_to_dot",
    "discover_dfg",
    "discover_ocdfg",
    "drill_down",
    "extraction_matrix",
    "filter_activities",
    "flatten",
    "generate",
    "latest_note_filter",
    "load_json",
    "project_object_types",
    "q1_human_effectiveness",
    "q2_ai_effectiveness",
    "q3_missed_by_ai",
    "q4_missed_by_humans",
    "retain_linked",
    "save_json",
    "scaling_percentage",
    "select_model",
    "unfold",
    "validate",
    "venn_attribution",
]
