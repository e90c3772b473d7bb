"""Loading, validating, and rendering safety-case templates.

Templates live in JSON documents (schema in docs/formats.md). Loading
enforces structural rules; validate_template reports argumentation-quality
findings that do not prevent loading.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Union

from .model import (
    CONTEXT_KINDS,
    Comparator,
    EvidenceCheck,
    GsnNode,
    NodeKind,
    ParamSource,
    ParameterRef,
    SafetyCaseTemplate,
    SemanticType,
)


class ParseError(Exception):
    pass


class StructureError(Exception):
    pass


@dataclass(frozen=True)
class Finding:
    kind: str
    node_id: str
    message: str


_SUPPORT_TARGETS = {
    NodeKind.GOAL: {NodeKind.STRATEGY, NodeKind.SOLUTION},
    NodeKind.STRATEGY: {NodeKind.GOAL, NodeKind.SOLUTION},
}


def _require(doc: dict, key: str) -> object:
    if key not in doc:
        raise ParseError(f"template document is missing {key!r}")
    return doc[key]


def load_template(source: Union[str, dict]) -> SafetyCaseTemplate:
    """Parse and structurally validate a template document."""
    if isinstance(source, str):
        try:
            doc = json.loads(source)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid template JSON: {exc}") from exc
    else:
        doc = source
    if not isinstance(doc, dict):
        raise ParseError("template document must be a JSON object")

    template_id = str(_require(doc, "templateId"))
    version = str(_require(doc, "version"))
    root_goal = str(_require(doc, "rootGoal"))

    parameters: dict[str, ParameterRef] = {}
    for entry in _require(doc, "parameters"):
        try:
            ref = ParameterRef(
                name=entry["name"],
                semantic_type=SemanticType(entry["semanticType"]),
                source=ParamSource(entry["source"]),
            )
        except (KeyError, ValueError) as exc:
            raise ParseError(f"bad parameter entry {entry!r}: {exc}") from exc
        if ref.name in parameters:
            raise StructureError(f"parameter {ref.name!r} declared twice")
        parameters[ref.name] = ref

    nodes: dict[str, GsnNode] = {}
    for entry in _require(doc, "nodes"):
        try:
            node_id = entry["id"]
            kind = NodeKind(entry["kind"])
            text = entry["text"]
        except (KeyError, ValueError) as exc:
            raise ParseError(f"bad node entry {entry!r}: {exc}") from exc
        if node_id in nodes:
            raise StructureError(f"node id {node_id!r} declared twice")
        params = GsnNode.extract_params(text)
        for name in params:
            if name not in parameters:
                raise StructureError(
                    f"node {node_id!r} uses placeholder [{name}] with no declared parameter"
                )
        nodes[node_id] = GsnNode(
            id=node_id, kind=kind, text=text, params=params,
            undeveloped=bool(entry.get("undeveloped", False)),
        )

    supported_by: list[tuple[str, str]] = []
    in_context_of: list[tuple[str, str]] = []
    attached: dict[str, list[str]] = {node_id: [] for node_id in nodes}
    for entry in _require(doc, "edges"):
        try:
            src, dst, kind = entry["from"], entry["to"], entry["kind"]
        except KeyError as exc:
            raise ParseError(f"bad edge entry {entry!r}: {exc}") from exc
        for end in (src, dst):
            if end not in nodes:
                raise StructureError(f"edge references unknown node {end!r}")
        if kind == "supportedBy":
            src_kind = nodes[src].kind
            allowed = _SUPPORT_TARGETS.get(src_kind, set())
            if nodes[dst].kind not in allowed:
                raise StructureError(
                    f"supportedBy {src}->{dst}: {src_kind.value} cannot be "
                    f"supported by {nodes[dst].kind.value}"
                )
            supported_by.append((src, dst))
        elif kind == "inContextOf":
            if nodes[dst].kind not in CONTEXT_KINDS:
                raise StructureError(
                    f"inContextOf {src}->{dst} must target a context/assumption/justification"
                )
            if nodes[src].kind in CONTEXT_KINDS:
                raise StructureError(f"context node {src!r} cannot own contexts")
            in_context_of.append((src, dst))
            attached[src].append(dst)
        else:
            raise ParseError(f"unknown edge kind {kind!r}")

    checks: dict[str, EvidenceCheck] = {}
    for entry in doc.get("checks", ()):
        try:
            node_id = entry["nodeId"]
            check = EvidenceCheck(
                check_id=entry["checkId"],
                comparator=Comparator(entry["comparator"]),
                left=entry["left"],
                right=entry.get("right"),
                right_bound=entry.get("rightBound"),
                low=entry.get("low"),
                high=entry.get("high"),
                margin_factor=entry.get("marginFactor"),
            )
        except (KeyError, ValueError) as exc:
            raise ParseError(f"bad check entry {entry!r}: {exc}") from exc
        if node_id not in nodes or nodes[node_id].kind is not NodeKind.SOLUTION:
            raise StructureError(f"check {check.check_id!r} attached to non-solution {node_id!r}")
        if node_id in checks:
            raise StructureError(f"solution {node_id!r} carries two checks")
        _validate_check(check, parameters)
        checks[node_id] = check

    nodes = {
        node_id: GsnNode(
            id=node.id, kind=node.kind, text=node.text, params=node.params,
            attached_contexts=tuple(attached[node_id]), undeveloped=node.undeveloped,
        )
        for node_id, node in nodes.items()
    }
    template = SafetyCaseTemplate(
        template_id=template_id,
        version=version,
        root_goal=root_goal,
        nodes=nodes,
        supported_by=tuple(supported_by),
        in_context_of=tuple(in_context_of),
        checks=checks,
        parameters=parameters,
    )
    _validate_graph(template)
    return template


def _validate_check(check: EvidenceCheck, parameters: dict[str, ParameterRef]) -> None:
    for name in check.parameter_names():
        if name not in parameters:
            raise StructureError(
                f"check {check.check_id!r} references undeclared parameter {name!r}"
            )
    left_type = parameters[check.left].semantic_type
    if check.comparator is Comparator.WITHIN_CLOSED_INTERVAL:
        if check.low is None or check.high is None:
            raise StructureError(f"check {check.check_id!r} needs low and high bounds")
        for name in (check.low, check.high):
            if parameters[name].semantic_type is not left_type:
                raise StructureError(
                    f"check {check.check_id!r}: bound {name!r} type differs from left operand"
                )
        return
    if check.comparator is Comparator.BOOLEAN_TRUE:
        if check.right is not None or check.right_bound is not None:
            raise StructureError(f"check {check.check_id!r}: booleanTrue takes no right operand")
        return
    if check.right is not None:
        if parameters[check.right].semantic_type is not left_type:
            raise StructureError(
                f"check {check.check_id!r}: operand semantic types differ "
                f"({check.left} vs {check.right})"
            )
    elif check.right_bound is None:
        raise StructureError(f"check {check.check_id!r} has no right operand")


def _validate_graph(t: SafetyCaseTemplate) -> None:
    if t.root_goal not in t.nodes:
        raise StructureError(f"root goal {t.root_goal!r} is not a node")
    if t.nodes[t.root_goal].kind is not NodeKind.GOAL:
        raise StructureError("root must be a goal node")
    # cycle check via depth-first search over supportedBy
    state: dict[str, int] = {}

    def visit(node_id: str) -> None:
        state[node_id] = 1
        for child in t.children(node_id):
            mark = state.get(child, 0)
            if mark == 1:
                raise StructureError(f"supportedBy cycle through {child!r}")
            if mark == 0:
                visit(child)
        state[node_id] = 2

    visit(t.root_goal)
    reachable = set(state)
    for ctx_src, ctx_dst in t.in_context_of:
        if ctx_src in reachable:
            reachable.add(ctx_dst)
    orphans = set(t.nodes) - reachable
    if orphans:
        raise StructureError(f"nodes unreachable from the root goal: {sorted(orphans)}")
    for node_id, node in t.nodes.items():
        if node.kind is NodeKind.SOLUTION and t.children(node_id):
            raise StructureError(f"solution {node_id!r} must be a leaf")


def validate_template(t: SafetyCaseTemplate) -> list[Finding]:
    """Argumentation-quality findings; empty for the shipped catalog."""
    findings: list[Finding] = []
    for node_id in sorted(t.nodes):
        node = t.nodes[node_id]
        if node.kind in CONTEXT_KINDS:
            continue
        used = set(node.params)
        check = t.checks.get(node_id)
        if check is not None:
            used.update(check.parameter_names())
        available = t.ancestor_context_params(node_id)
        for name in sorted(used - available):
            findings.append(Finding(
                kind="parameter-not-propagated",
                node_id=node_id,
                message=f"[{name}] is used at {node_id} but no ancestor context carries it",
            ))
        if node.kind is NodeKind.SOLUTION and check is None:
            findings.append(Finding(
                kind="solution-without-check",
                node_id=node_id,
                message=f"solution {node_id} has no evidence check",
            ))
        if (node.kind is NodeKind.GOAL and not t.children(node_id)
                and not node.undeveloped):
            findings.append(Finding(
                kind="undeveloped-goal",
                node_id=node_id,
                message=f"goal {node_id} has no support and is not marked undeveloped",
            ))
    return findings


def topological_order(t: SafetyCaseTemplate) -> list[str]:
    """Deterministic topological order of the supportedBy graph."""
    indegree = {node_id: 0 for node_id in t.nodes
                if t.nodes[node_id].kind not in CONTEXT_KINDS}
    for _, dst in t.supported_by:
        indegree[dst] += 1
    ready = sorted(n for n, d in indegree.items() if d == 0)
    order: list[str] = []
    while ready:
        current = ready.pop(0)
        order.append(current)
        inserted = False
        for child in sorted(t.children(current)):
            indegree[child] -= 1
            if indegree[child] == 0:
                ready.append(child)
                inserted = True
        if inserted:
            ready.sort()
    return order


def load_template_file(path: Union[str, Path]) -> SafetyCaseTemplate:
    return load_template(Path(path).read_text())


def render_template_graph(t: SafetyCaseTemplate) -> str:
    """Graph-description text: one node per line, one edge per line."""
    lines = [f"graph {t.template_id} version={t.version} root={t.root_goal}"]
    for node_id in sorted(t.nodes):
        node = t.nodes[node_id]
        lines.append(f'node\t{node_id}\tkind={node.kind.value}\ttext="{node.text}"')
    for src, dst in t.supported_by:
        lines.append(f"edge\t{src}\t{dst}\tkind=supportedBy")
    for src, dst in t.in_context_of:
        lines.append(f"edge\t{src}\t{dst}\tkind=inContextOf")
    return "\n".join(lines) + "\n"
