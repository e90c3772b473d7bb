"""Parameterized GSN argument-graph types.

Node texts carry placeholders written `[Name]`; each placeholder must be a
declared parameter. Solution nodes own an evidence check that compares
bound parameter values.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from typing import Optional, Union

PLACEHOLDER_RE = re.compile(r"\[([A-Za-z][A-Za-z0-9]*)\]")


class NodeKind(str, enum.Enum):
    GOAL = "goal"
    STRATEGY = "strategy"
    CONTEXT = "context"
    SOLUTION = "solution"
    ASSUMPTION = "assumption"
    JUSTIFICATION = "justification"


CONTEXT_KINDS = {NodeKind.CONTEXT, NodeKind.ASSUMPTION, NodeKind.JUSTIFICATION}


class SemanticType(str, enum.Enum):
    WIND_SPEED = "windSpeed"  # m/s
    TEMPERATURE = "temperature"  # degrees C
    VISIBILITY = "visibility"  # km; unlimited maps to +inf
    PRECIPITATION = "precipitation"  # ordered level
    DURATION = "duration"  # minutes
    CHARGE_FRACTION = "chargeFraction"  # 0..1
    CERTIFICATION = "certification"
    FLIGHT_HOURS = "flightHours"
    IDENTIFIER = "identifier"


class ParamSource(str, enum.Enum):
    VEHICLE = "vehicle"
    WEATHER = "weather"
    PILOT = "pilot"
    MISSION = "mission"
    AIRSPACE = "airspace"
    REGULATION = "regulation"


@dataclass(frozen=True)
class ParameterRef:
    name: str
    semantic_type: SemanticType
    source: ParamSource

    def __post_init__(self) -> None:
        if not re.fullmatch(r"[A-Za-z][A-Za-z0-9]*", self.name):
            raise ValueError(f"bad parameter name {self.name!r}")


class Comparator(str, enum.Enum):
    LESS_OR_EQUAL = "lessOrEqual"
    GREATER_OR_EQUAL = "greaterOrEqual"
    WITHIN_CLOSED_INTERVAL = "withinClosedInterval"
    LEVEL_AT_MOST = "levelAtMost"
    EQUALS = "equals"
    BOOLEAN_TRUE = "booleanTrue"


Constant = Union[float, int, str, bool]


@dataclass(frozen=True)
class EvidenceCheck:
    check_id: str
    comparator: Comparator
    left: str  # parameter name
    right: Optional[str] = None  # parameter name
    right_bound: Optional[Constant] = None
    low: Optional[str] = None  # interval bound parameters
    high: Optional[str] = None
    margin_factor: Optional[float] = None  # multiplies the left side

    def parameter_names(self) -> tuple[str, ...]:
        names = [self.left]
        for name in (self.right, self.low, self.high):
            if name is not None:
                names.append(name)
        return tuple(names)

    def describe(self) -> str:
        left = f"{self.margin_factor} x [{self.left}]" if self.margin_factor else f"[{self.left}]"
        if self.comparator is Comparator.WITHIN_CLOSED_INTERVAL:
            return f"{left} within [{self.low}] .. [{self.high}]"
        right = f"[{self.right}]" if self.right is not None else repr(self.right_bound)
        symbol = {
            Comparator.LESS_OR_EQUAL: "<=",
            Comparator.GREATER_OR_EQUAL: ">=",
            Comparator.LEVEL_AT_MOST: "at most",
            Comparator.EQUALS: "==",
        }.get(self.comparator)
        if self.comparator is Comparator.BOOLEAN_TRUE:
            return f"{left} is true"
        return f"{left} {symbol} {right}"


@dataclass(frozen=True)
class GsnNode:
    id: str
    kind: NodeKind
    text: str
    params: tuple[str, ...] = ()
    attached_contexts: tuple[str, ...] = ()
    undeveloped: bool = False

    @staticmethod
    def extract_params(text: str) -> tuple[str, ...]:
        seen: list[str] = []
        for match in PLACEHOLDER_RE.finditer(text):
            if match.group(1) not in seen:
                seen.append(match.group(1))
        return tuple(seen)


@dataclass(frozen=True)
class SafetyCaseTemplate:
    template_id: str
    version: str
    root_goal: str
    nodes: dict[str, GsnNode]
    supported_by: tuple[tuple[str, str], ...] = ()
    in_context_of: tuple[tuple[str, str], ...] = ()
    checks: dict[str, EvidenceCheck] = field(default_factory=dict)
    parameters: dict[str, ParameterRef] = field(default_factory=dict)

    def children(self, node_id: str) -> tuple[str, ...]:
        return tuple(dst for src, dst in self.supported_by if src == node_id)

    def parents(self, node_id: str) -> tuple[str, ...]:
        return tuple(src for src, dst in self.supported_by if dst == node_id)

    def solution_ids(self) -> tuple[str, ...]:
        return tuple(n for n, node in self.nodes.items() if node.kind is NodeKind.SOLUTION)

    def goal_chain_to_root(self, node_id: str) -> tuple[str, ...]:
        """Goals on the support path from a node up to the root goal."""
        chain: list[str] = []
        current = node_id
        while True:
            parents = self.parents(current)
            if not parents:
                break
            current = parents[0]
            if self.nodes[current].kind is NodeKind.GOAL:
                chain.append(current)
        return tuple(chain)

    def ancestor_context_params(self, node_id: str) -> frozenset[str]:
        """Parameters of contexts attached to the node or any supporting ancestor."""
        out: set[str] = set()
        stack = [node_id]
        visited: set[str] = set()
        while stack:
            current = stack.pop()
            if current in visited:
                continue
            visited.add(current)
            for ctx in self.nodes[current].attached_contexts:
                out.update(self.nodes[ctx].params)
            stack.extend(self.parents(current))
        return frozenset(out)
