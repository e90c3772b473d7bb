"""Binding a template to evidence and evaluating the resulting instance.

Every solution node's check is evaluated to satisfied, violated, or
unresolved; statuses propagate up the argument graph with violated
dominating unresolved, so a known failure is never masked by missing data.
Instances are deterministic: identical inputs produce byte-identical
documents, including the content-derived instance id.
"""

from __future__ import annotations

import enum
import numbers
from dataclasses import dataclass
from typing import Optional

from ..canon import content_id, value_to_doc
from ..evidence.bundle import EvidenceBundle, Regulation
from ..evidence.params import resolve_parameters
from ..evidence.vehicles import DEFAULT, PrecipitationLevel
from ..fm.model import Configuration
from ..gsn.binding import BindingSchema, schema_bindings
from ..gsn.model import (
    CONTEXT_KINDS,
    Comparator,
    EvidenceCheck,
    NodeKind,
    PLACEHOLDER_RE,
    SafetyCaseTemplate,
)
from .request import FlightRequest


class BindingTypeError(Exception):
    """A bound value does not fit its comparator; a schema bug, not a data state."""


class CatalogError(Exception):
    pass


class ExplainError(Exception):
    pass


class NodeStatus(str, enum.Enum):
    SATISFIED = "satisfied"
    VIOLATED = "violated"
    UNRESOLVED = "unresolved"


@dataclass(frozen=True)
class Binding:
    value: object
    provenance: str


@dataclass(frozen=True)
class SafetyCaseInstance:
    instance_id: str
    template_id: str
    template_version: str
    bindings: dict[str, Binding]
    unresolved_params: tuple[str, ...]
    node_statuses: dict[str, NodeStatus]
    node_texts: dict[str, str]
    trace_links: dict[str, str]
    top_goal_status: NodeStatus
    generated_at: str


@dataclass(frozen=True)
class EvidenceRequirement:
    node_id: str
    parameters: tuple[str, ...]
    condition: str
    unresolved: bool


@dataclass(frozen=True)
class EvidenceRequirementList:
    template_id: str
    items: tuple[EvidenceRequirement, ...]


@dataclass(frozen=True)
class ExplanationEntry:
    node_id: str
    status: NodeStatus
    condition: str
    goal_chain: tuple[str, ...]  # ancestor goals up to the root


@dataclass(frozen=True)
class Explanation:
    instance_id: str
    template_id: str
    entries: tuple[ExplanationEntry, ...]
    re_evaluate: bool = False

    def summary(self) -> str:
        return "; ".join(
            f"{e.node_id} {e.status.value}: {e.condition}" for e in self.entries
        )


def _require_number(value, check_id: str, param: str) -> float:
    if isinstance(value, bool) or not isinstance(value, numbers.Real):
        raise BindingTypeError(
            f"check {check_id!r}: parameter {param!r} bound to non-numeric {value!r}"
        )
    return float(value)


def _require_level(value, check_id: str, param: str) -> PrecipitationLevel:
    if isinstance(value, PrecipitationLevel):
        return value
    if isinstance(value, str):
        try:
            return PrecipitationLevel.parse(value)
        except KeyError:
            pass
    raise BindingTypeError(
        f"check {check_id!r}: parameter {param!r} bound to non-level {value!r}"
    )


def evaluate_check(check: EvidenceCheck, values: dict[str, object]) -> NodeStatus:
    """Three-valued check evaluation; unresolved when any operand is unbound."""
    if any(name not in values for name in check.parameter_names()):
        return NodeStatus.UNRESOLVED
    left = values[check.left]
    if check.comparator is Comparator.BOOLEAN_TRUE:
        if not isinstance(left, bool):
            raise BindingTypeError(
                f"check {check.check_id!r}: booleanTrue needs a boolean, got {left!r}"
            )
        return NodeStatus.SATISFIED if left else NodeStatus.VIOLATED

    if check.comparator is Comparator.EQUALS:
        right = values[check.right] if check.right is not None else check.right_bound
        ok = left == right
    elif check.comparator is Comparator.LEVEL_AT_MOST:
        observed = _require_level(left, check.check_id, check.left)
        allowed_raw = values[check.right] if check.right is not None else check.right_bound
        allowed = _require_level(allowed_raw, check.check_id, check.right or "rightBound")
        ok = observed <= allowed
    elif check.comparator is Comparator.WITHIN_CLOSED_INTERVAL:
        value = _require_number(left, check.check_id, check.left)
        low = _require_number(values[check.low], check.check_id, check.low)
        high = _require_number(values[check.high], check.check_id, check.high)
        ok = low <= value <= high
    else:
        lhs = _require_number(left, check.check_id, check.left)
        if check.margin_factor is not None:
            lhs *= check.margin_factor
        right_raw = values[check.right] if check.right is not None else check.right_bound
        rhs = _require_number(right_raw, check.check_id, check.right or "rightBound")
        ok = lhs <= rhs if check.comparator is Comparator.LESS_OR_EQUAL else lhs >= rhs
    return NodeStatus.SATISFIED if ok else NodeStatus.VIOLATED


def propagate_statuses(
    template: SafetyCaseTemplate, leaf_statuses: dict[str, NodeStatus]
) -> dict[str, NodeStatus]:
    """Fold solution statuses upward over supportedBy.

    A goal or strategy is satisfied iff all children are satisfied, violated
    as soon as one child is violated, unresolved otherwise. Childless
    argument nodes (undeveloped or not) count as unresolved rather than
    vacuously satisfied.
    """
    memo: dict[str, NodeStatus] = {}

    def status(node_id: str) -> NodeStatus:
        if node_id in memo:
            return memo[node_id]
        node = template.nodes[node_id]
        if node.kind is NodeKind.SOLUTION:
            result = leaf_statuses.get(node_id, NodeStatus.UNRESOLVED)
        else:
            children = template.children(node_id)
            if not children:
                result = NodeStatus.UNRESOLVED
            else:
                child_statuses = [status(child) for child in children]
                if NodeStatus.VIOLATED in child_statuses:
                    result = NodeStatus.VIOLATED
                elif NodeStatus.UNRESOLVED in child_statuses:
                    result = NodeStatus.UNRESOLVED
                else:
                    result = NodeStatus.SATISFIED
        memo[node_id] = result
        return result

    for node_id, node in template.nodes.items():
        if node.kind not in CONTEXT_KINDS:
            status(node_id)
    return memo


def render_value(value) -> str:
    doc = value_to_doc(value)
    if isinstance(doc, bool):
        return "true" if doc else "false"
    if isinstance(doc, float) and doc.is_integer():
        return str(int(doc))
    return str(doc)


def _render_text(text: str, bindings: dict[str, Binding]) -> str:
    def substitute(match):
        name = match.group(1)
        if name in bindings:
            return render_value(bindings[name].value)
        return f"[{name}:?]"

    return PLACEHOLDER_RE.sub(substitute, text)


def instantiate(
    template: SafetyCaseTemplate,
    schema: BindingSchema,
    bundle: EvidenceBundle,
    *,
    configuration: Optional[Configuration] = None,
    regulation: Optional[Regulation] = None,
    generated_at: str = "",
) -> SafetyCaseInstance:
    """Bind the template's parameters, evaluate every check, propagate statuses."""
    regulation = regulation or Regulation()
    evidence = resolve_parameters(bundle, regulation, names=sorted(template.parameters))
    derived = schema_bindings(schema, configuration)

    bindings: dict[str, Binding] = {}
    for name in sorted(template.parameters):
        from_evidence = evidence.get(name)
        from_features = derived.get(name)
        if from_features is not None and (
            from_evidence is None or from_evidence[1] == DEFAULT
        ):
            # a declared capability feature supplements an incomplete spec sheet,
            # but never overrides an explicitly sourced value
            bindings[name] = Binding(from_features, "feature-class")
        elif from_evidence is not None:
            bindings[name] = Binding(from_evidence[0], from_evidence[1])
    unresolved = tuple(sorted(set(template.parameters) - set(bindings)))

    values = {name: binding.value for name, binding in bindings.items()}
    leaf_statuses = {
        node_id: evaluate_check(check, values)
        for node_id, check in template.checks.items()
    }
    statuses = propagate_statuses(template, leaf_statuses)
    for node_id, node in template.nodes.items():
        if node.kind in CONTEXT_KINDS:
            statuses[node_id] = (
                NodeStatus.UNRESOLVED
                if any(p not in bindings for p in node.params)
                else NodeStatus.SATISFIED
            )

    node_texts = {
        node_id: _render_text(node.text, bindings)
        for node_id, node in template.nodes.items()
    }
    bindings_doc = {
        name: [value_to_doc(binding.value), binding.provenance]
        for name, binding in bindings.items()
    }
    instance_id = content_id("inst", {
        "templateId": template.template_id,
        "version": template.version,
        "bindings": bindings_doc,
    })
    return SafetyCaseInstance(
        instance_id=instance_id,
        template_id=template.template_id,
        template_version=template.version,
        bindings=bindings,
        unresolved_params=unresolved,
        node_statuses=statuses,
        node_texts=node_texts,
        trace_links={node_id: node_id for node_id in template.nodes},
        top_goal_status=statuses[template.root_goal],
        generated_at=generated_at,
    )


def required_evidence(
    template: SafetyCaseTemplate, bundle: Optional[EvidenceBundle] = None
) -> EvidenceRequirementList:
    """One entry per solution node; entries are flagged when operands are missing."""
    resolved: set[str] = set()
    if bundle is not None:
        resolved = set(resolve_parameters(bundle, Regulation(),
                                          names=sorted(template.parameters)))
    items = []
    for node_id in template.solution_ids():
        check = template.checks.get(node_id)
        if check is None:
            items.append(EvidenceRequirement(node_id, (), "no check defined", True))
            continue
        params = check.parameter_names()
        missing = bundle is None or any(name not in resolved for name in params)
        items.append(EvidenceRequirement(node_id, params, check.describe(), missing))
    return EvidenceRequirementList(template.template_id, tuple(items))


def explain_denial(
    instance: SafetyCaseInstance, template: SafetyCaseTemplate
) -> Explanation:
    """Why the top goal is not satisfied: every failing or open leaf, with values."""
    if instance.top_goal_status is NodeStatus.SATISFIED:
        raise ExplainError("instance is satisfied; there is nothing to explain")
    entries = []
    for node_id in template.solution_ids():
        status = instance.node_statuses[node_id]
        if status is NodeStatus.SATISFIED:
            continue
        check = template.checks.get(node_id)
        if check is None:
            condition = "no check defined"
        else:
            operand_notes = []
            for name in check.parameter_names():
                binding = instance.bindings.get(name)
                if binding is None:
                    operand_notes.append(f"{name} missing")
                else:
                    operand_notes.append(
                        f"{name} = {render_value(binding.value)} ({binding.provenance})"
                    )
            condition = f"{check.describe()}; " + ", ".join(operand_notes)
        entries.append(ExplanationEntry(
            node_id=node_id,
            status=status,
            condition=condition,
            goal_chain=template.goal_chain_to_root(node_id),
        ))
    has_unresolved = any(e.status is NodeStatus.UNRESOLVED for e in entries)
    return Explanation(
        instance_id=instance.instance_id,
        template_id=instance.template_id,
        entries=tuple(entries),
        re_evaluate=has_unresolved,
    )


def select_templates(
    request: FlightRequest,
    catalog: dict[str, SafetyCaseTemplate],
    *,
    pilot=None,
    policy=None,
) -> list[str]:
    """Which templates to evaluate, pilot case first.

    The wind case is appended whenever the pilot case cannot be expected to
    hold (unknown, uncertified, under-hours, or flagged pilots) and always
    under open access, where it becomes the advisory checklist.
    """
    if not catalog:
        raise CatalogError("template catalog is empty")
    pilot_id = next((tid for tid in catalog if tid.startswith("pilot")), None)
    wind_id = next((tid for tid in catalog if tid.startswith("wind")), None)
    if pilot_id is None or wind_id is None:
        raise CatalogError("catalog must contain the pilot and wind templates")
    required_certification = "part107"
    min_hours = 10.0
    open_access = False
    if policy is not None:
        certs = sorted(policy.required_certifications)
        required_certification = certs[0] if certs else required_certification
        min_hours = policy.min_flight_hours
        open_access = getattr(policy.mode, "value", policy.mode) == "openAccess"
    pilot_case_expected = (
        pilot is not None
        and required_certification in pilot.certifications
        and pilot.flight_hours >= min_hours
        and not pilot.adverse_history
    )
    if pilot_case_expected and not open_access:
        return [pilot_id]
    return [pilot_id, wind_id]


def _node_parameters(template: SafetyCaseTemplate, node_id: str) -> tuple[str, ...]:
    """Parameters a node displays: its placeholders plus its check's operands."""
    names = list(template.nodes[node_id].params)
    check = template.checks.get(node_id)
    if check is not None:
        for name in check.parameter_names():
            if name not in names:
                names.append(name)
    return tuple(names)


def instance_to_doc(instance: SafetyCaseInstance, template: SafetyCaseTemplate) -> dict:
    """The instance's JSON document (schema in docs/formats.md)."""
    return {
        "instanceId": instance.instance_id,
        "templateId": instance.template_id,
        "templateVersion": instance.template_version,
        "generatedAt": instance.generated_at,
        "topGoalStatus": instance.top_goal_status.value,
        "bindings": {
            name: {"value": value_to_doc(binding.value), "provenance": binding.provenance}
            for name, binding in sorted(instance.bindings.items())
        },
        "unresolvedParameters": list(instance.unresolved_params),
        "nodes": [
            {
                "id": node_id,
                "kind": template.nodes[node_id].kind.value,
                "text": instance.node_texts[node_id],
                "status": instance.node_statuses[node_id].value,
                "traceLink": instance.trace_links[node_id],
                "parameters": list(_node_parameters(template, node_id)),
            }
            for node_id in sorted(template.nodes)
        ],
        "edges": (
            [{"from": s, "to": d, "kind": "supportedBy"} for s, d in template.supported_by]
            + [{"from": s, "to": d, "kind": "inContextOf"} for s, d in template.in_context_of]
        ),
    }


def render_instance_graph(
    instance: SafetyCaseInstance, template: SafetyCaseTemplate
) -> str:
    """Graph-description text with per-node status attributes."""
    lines = [
        f"graph {instance.template_id} instance={instance.instance_id} "
        f"top={instance.top_goal_status.value}"
    ]
    for node_id in sorted(template.nodes):
        node = template.nodes[node_id]
        lines.append(
            f"node\t{node_id}\tkind={node.kind.value}"
            f"\tstatus={instance.node_statuses[node_id].value}"
            f'\ttext="{instance.node_texts[node_id]}"'
        )
    for src, dst in template.supported_by:
        lines.append(f"edge\t{src}\t{dst}\tkind=supportedBy")
    for src, dst in template.in_context_of:
        lines.append(f"edge\t{src}\t{dst}\tkind=inContextOf")
    return "\n".join(lines) + "\n"
