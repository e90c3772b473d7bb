from .request import FlightRequest, PayloadError
from .instantiate import (
    Binding,
    BindingTypeError,
    CatalogError,
    EvidenceRequirement,
    EvidenceRequirementList,
    ExplainError,
    Explanation,
    ExplanationEntry,
    NodeStatus,
    SafetyCaseInstance,
    evaluate_check,
    explain_denial,
    instance_to_doc,
    instantiate,
    propagate_statuses,
    render_instance_graph,
    required_evidence,
    select_templates,
)

__all__ = [
    "Binding",
    "BindingTypeError",
    "CatalogError",
    "EvidenceRequirement",
    "EvidenceRequirementList",
    "ExplainError",
    "Explanation",
    "ExplanationEntry",
    "FlightRequest",
    "NodeStatus",
    "PayloadError",
    "SafetyCaseInstance",
    "evaluate_check",
    "explain_denial",
    "instance_to_doc",
    "instantiate",
    "propagate_statuses",
    "render_instance_graph",
    "required_evidence",
    "select_templates",
]
