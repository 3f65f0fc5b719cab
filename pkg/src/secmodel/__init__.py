"""secmodel: attack-tree conversion and dependency-impact analysis.

Parse plain-text attack trees, convert them losslessly into numbered
intrusion models, link intrusion steps to the conditions they degrade,
and run interactive what-if propagation over the result. Everything
round-trips through a neutral GraphML pivot and a native XML format.
"""

from __future__ import annotations

from .convert import assign_numbers, cim_to_sand, lower_sand, sand_to_cim
from .errors import (
    ModelError,
    ParseError,
    SecModelError,
    UnsupportedConversionError,
    ValidationFailedError,
)
from .graphmlio import (
    ModelKind,
    PivotEdge,
    PivotGraph,
    PivotNode,
    from_pivot,
    read_graphml,
    to_pivot,
    write_graphml,
)
from .model import (
    Actuator,
    AttackTree,
    AttackTreeNode,
    CimModel,
    CimStep,
    CombinedModel,
    DependencyModel,
    ExternalReference,
    ImpactLink,
    Operator,
    Paragon,
    Refinement,
    Relationship,
    Violation,
    display_label,
    format_state,
    number_index,
    numbered_label,
    paragon_index,
    require_valid,
    state_color,
    step_index,
    step_parents,
    validate_attack_tree,
    validate_cim,
    validate_combined,
    validate_dm,
    validate_reference,
)
from .propagation import (
    Mode,
    RootImpact,
    SequenceWarning,
    Session,
    StateChange,
    check_sequence,
    create_session,
    overrides_for,
    propagate,
    reset_session,
    root_impact,
    state_delta,
    toggle_step,
)
from .render import cim_to_dot
from .sandtext import parse_sand, serialize_sand
from .xmlio import ModelDocument, document_for, kind_for_path, read_model, write_model

__version__ = "0.1.0"

__all__ = [
    "Actuator",
    "AttackTree",
    "AttackTreeNode",
    "CimModel",
    "CimStep",
    "CombinedModel",
    "DependencyModel",
    "ExternalReference",
    "ImpactLink",
    "Mode",
    "ModelDocument",
    "ModelError",
    "ModelKind",
    "Operator",
    "ParseError",
    "Paragon",
    "PivotEdge",
    "PivotGraph",
    "PivotNode",
    "Refinement",
    "Relationship",
    "RootImpact",
    "SecModelError",
    "SequenceWarning",
    "Session",
    "StateChange",
    "UnsupportedConversionError",
    "ValidationFailedError",
    "Violation",
    "assign_numbers",
    "check_sequence",
    "cim_to_dot",
    "cim_to_sand",
    "create_session",
    "display_label",
    "document_for",
    "format_state",
    "from_pivot",
    "kind_for_path",
    "lower_sand",
    "number_index",
    "numbered_label",
    "overrides_for",
    "paragon_index",
    "parse_sand",
    "propagate",
    "read_graphml",
    "read_model",
    "require_valid",
    "reset_session",
    "root_impact",
    "sand_to_cim",
    "serialize_sand",
    "state_color",
    "state_delta",
    "step_index",
    "step_parents",
    "to_pivot",
    "toggle_step",
    "validate_attack_tree",
    "validate_cim",
    "validate_combined",
    "validate_dm",
    "validate_reference",
    "write_graphml",
    "write_model",
]
