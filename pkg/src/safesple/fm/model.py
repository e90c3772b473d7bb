"""Feature-model domain types.

A model is a single tree of named features. A feature's children are either
individually flagged (mandatory/optional) or form one or/xor group; the two
styles do not mix under the same parent. Cross-tree constraints are
propositional formulas over feature names.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

from ..logic import Formula, variables


class GroupKind(str, enum.Enum):
    NONE = "none"  # leaf
    AND = "and"  # flagged children
    OR = "or"
    XOR = "xor"


class Optionality(str, enum.Enum):
    MANDATORY = "mandatory"
    OPTIONAL = "optional"


@dataclass(frozen=True)
class Feature:
    name: str
    parent: Optional[str]
    optionality: Optional[Optionality]  # None for or/xor group members
    group_kind: GroupKind = GroupKind.NONE
    is_abstract: bool = False
    children: tuple[str, ...] = ()


@dataclass(frozen=True)
class HazardTrace:
    hazard_id: str
    description: str
    contributing_features: tuple[str, ...]
    mitigating_features: tuple[str, ...] = ()
    template_node_ids: tuple[str, ...] = ()


@dataclass(frozen=True)
class FeatureModel:
    name: str
    root: str
    features: dict[str, Feature]
    cross_tree_constraints: tuple[Formula, ...] = ()
    hazard_traces: tuple[HazardTrace, ...] = ()

    def feature_names(self) -> tuple[str, ...]:
        return tuple(self.features)

    def concrete_names(self) -> tuple[str, ...]:
        return tuple(n for n, f in self.features.items() if not f.is_abstract)

    def validate(self) -> None:
        root = self.features.get(self.root)
        if root is None:
            raise ValueError(f"root feature {self.root!r} is not declared")
        if root.parent is not None:
            raise ValueError("root feature must have no parent")
        if root.optionality is not Optionality.MANDATORY:
            raise ValueError("root feature must be mandatory")
        seen_children: set[str] = set()
        for name, feat in self.features.items():
            if feat.name != name:
                raise ValueError(f"feature table key {name!r} does not match feature {feat.name!r}")
            if feat.group_kind in (GroupKind.OR, GroupKind.XOR) and len(feat.children) < 2:
                raise ValueError(f"{feat.group_kind.value} group under {name!r} needs >= 2 children")
            for child in feat.children:
                if child in seen_children:
                    raise ValueError(f"feature {child!r} has more than one parent")
                seen_children.add(child)
                got = self.features.get(child)
                if got is None:
                    raise ValueError(f"child {child!r} of {name!r} is not declared")
                if got.parent != name:
                    raise ValueError(f"child {child!r} does not point back to parent {name!r}")
                if feat.group_kind in (GroupKind.OR, GroupKind.XOR) and got.optionality is not None:
                    raise ValueError(
                        f"group member {child!r} must not carry a mandatory/optional flag"
                    )
        # reachability doubles as a cycle check: a single tree covers every feature
        reachable = {self.root}
        frontier = [self.root]
        while frontier:
            for child in self.features[frontier.pop()].children:
                if child not in reachable:
                    reachable.add(child)
                    frontier.append(child)
        unreachable = set(self.features) - reachable
        if unreachable:
            raise ValueError(f"features not reachable from root: {sorted(unreachable)}")
        declared = set(self.features)
        for constraint in self.cross_tree_constraints:
            unknown = variables(constraint) - declared
            if unknown:
                raise ValueError(f"constraint references unknown features: {sorted(unknown)}")
        for trace in self.hazard_traces:
            if not trace.contributing_features:
                raise ValueError(f"hazard {trace.hazard_id!r} lists no contributing features")
            for ref in (*trace.contributing_features, *trace.mitigating_features):
                if ref not in declared:
                    raise ValueError(
                        f"hazard {trace.hazard_id!r} references unknown feature {ref!r}"
                    )


@dataclass(frozen=True)
class Configuration:
    """A (possibly partial) decision about which features are in a product."""

    selected: frozenset[str] = frozenset()
    deselected: frozenset[str] = frozenset()
    partial: bool = True

    def __post_init__(self) -> None:
        overlap = self.selected & self.deselected
        if overlap:
            raise ValueError(f"features both selected and deselected: {sorted(overlap)}")

    @staticmethod
    def full(selected: frozenset[str], all_concrete: frozenset[str]) -> "Configuration":
        return Configuration(
            selected=frozenset(selected),
            deselected=frozenset(all_concrete) - frozenset(selected),
            partial=False,
        )
