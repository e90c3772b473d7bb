"""Queries over feature models: validity, counting, slicing, hazard coverage.

Tree semantics:
  root always selected; mandatory child c of p: c <-> p; optional child:
  c -> p; or-group under p: p <-> (c1 | ... | cn); xor-group under p:
  (p -> exactly-one(children)) and each child -> p. Cross-tree constraints
  are conjoined on top.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable

from ..logic import (
    And,
    ExactlyOne,
    Formula,
    Iff,
    Implies,
    Not,
    Or,
    Var,
    count_models,
    is_satisfiable,
    partial_evaluate,
    to_text,
    variables,
)
from .model import Configuration, Feature, FeatureModel, GroupKind, Optionality


class InvalidSelectionError(Exception):
    pass


class Verdict(str, enum.Enum):
    VALID = "valid"
    INVALID = "invalid"
    INCOMPLETE_BUT_EXTENSIBLE = "incomplete-but-extensible"


@dataclass(frozen=True)
class ValidityReport:
    verdict: Verdict
    violations: tuple[str, ...] = ()


@dataclass(frozen=True)
class HazardCoverage:
    hazard_id: str
    covered: bool
    reasons: tuple[str, ...] = ()


@dataclass(frozen=True)
class CoverageReport:
    entries: tuple[HazardCoverage, ...]

    @property
    def uncovered(self) -> tuple[HazardCoverage, ...]:
        return tuple(e for e in self.entries if not e.covered)


def labeled_constraints(model: FeatureModel) -> list[tuple[str, Formula]]:
    """The model's semantics as (description, formula) conjuncts."""
    out: list[tuple[str, Formula]] = [
        (f"root feature '{model.root}' is always selected", Var(model.root)),
    ]
    for name, feat in model.features.items():
        if not feat.children:
            continue
        parent = Var(name)
        members = [Var(c) for c in feat.children]
        if feat.group_kind is GroupKind.OR:
            out.append((
                f"or group under '{name}' requires at least one of "
                f"{{{', '.join(feat.children)}}} when '{name}' is selected",
                Iff(parent, Or(*members)),
            ))
        elif feat.group_kind is GroupKind.XOR:
            out.append((
                f"xor group under '{name}' requires exactly one of "
                f"{{{', '.join(feat.children)}}} when '{name}' is selected",
                And(Implies(parent, ExactlyOne(*members)),
                    *[Implies(m, parent) for m in members]),
            ))
        else:
            for child in feat.children:
                child_feat = model.features[child]
                if child_feat.optionality is Optionality.MANDATORY:
                    out.append((
                        f"'{child}' is mandatory under '{name}'",
                        Iff(Var(child), parent),
                    ))
                else:
                    out.append((
                        f"'{child}' requires its parent '{name}'",
                        Implies(Var(child), parent),
                    ))
    for constraint in model.cross_tree_constraints:
        out.append((f"cross-tree constraint: {to_text(constraint)}", constraint))
    return out


def to_propositional(model: FeatureModel) -> Formula:
    """The model's full propositional semantics as one formula."""
    return And(*[formula for _, formula in labeled_constraints(model)])


def _literals(config: Configuration) -> list[Formula]:
    lits: list[Formula] = [Var(n) for n in sorted(config.selected)]
    lits.extend(Not(Var(n)) for n in sorted(config.deselected))
    return lits


def _check_vocabulary(model: FeatureModel, names: Iterable[str]) -> None:
    unknown = set(names) - set(model.features)
    if unknown:
        raise InvalidSelectionError(f"unknown features: {sorted(unknown)}")


def _count_over_concrete(model: FeatureModel, extra: list[Formula]) -> int:
    formula = And(to_propositional(model), *extra) if extra else to_propositional(model)
    concrete = model.concrete_names()
    abstract = [n for n, f in model.features.items() if f.is_abstract]
    if not abstract:
        return count_models(formula, concrete, bigint=True)

    # project abstract features out: count concrete assignments that extend
    # to at least one full model, branching concrete variables with SAT pruning
    names = sorted(concrete)

    def recurse(idx: int, literals: list[Formula]) -> int:
        constrained = And(formula, *literals) if literals else formula
        if is_satisfiable(constrained) is None:
            return 0
        if idx == len(names):
            return 1
        total = 0
        for value in (False, True):
            lit = Var(names[idx]) if value else Not(Var(names[idx]))
            total += recurse(idx + 1, literals + [lit])
        return total

    return recurse(0, [])


def count_variants(model: FeatureModel) -> int:
    """Exact number of valid full configurations over concrete features."""
    return _count_over_concrete(model, [])


def slice_count(model: FeatureModel, fixed: Configuration) -> int:
    """Number of valid full configurations extending the fixed selection."""
    _check_vocabulary(model, fixed.selected | fixed.deselected)
    return _count_over_concrete(model, _literals(fixed))


def check_configuration(model: FeatureModel, config: Configuration) -> ValidityReport:
    """Validity verdict plus violated-constraint descriptions for invalid inputs."""
    try:
        _check_vocabulary(model, config.selected | config.deselected)
    except InvalidSelectionError as exc:
        return ValidityReport(Verdict.INVALID, (str(exc),))
    assignment = {n: True for n in config.selected}
    assignment.update({n: False for n in config.deselected})
    violated = tuple(
        description
        for description, formula in labeled_constraints(model)
        if partial_evaluate(formula, assignment) is False
    )
    if violated:
        return ValidityReport(Verdict.INVALID, violated)
    constrained = And(to_propositional(model), *_literals(config))
    if is_satisfiable(constrained) is None:
        return ValidityReport(
            Verdict.INVALID,
            ("the selection cannot be extended to any valid configuration",),
        )
    if config.partial:
        return ValidityReport(Verdict.INCOMPLETE_BUT_EXTENSIBLE)
    undecided = set(model.concrete_names()) - config.selected - config.deselected
    if undecided:
        return ValidityReport(
            Verdict.INVALID,
            (f"configuration declared full but leaves features undecided: {sorted(undecided)}",),
        )
    return ValidityReport(Verdict.VALID)


def hazard_coverage(model: FeatureModel, catalog: Iterable) -> CoverageReport:
    """For each hazard trace: do its features exist and does any template node address it?"""
    known_nodes: set[str] = set()
    for template in catalog:
        known_nodes.update(template.nodes)
    entries = []
    for trace in model.hazard_traces:
        reasons = []
        for name in (*trace.contributing_features, *trace.mitigating_features):
            if name not in model.features:
                reasons.append(f"unknown feature '{name}'")
        if not trace.template_node_ids:
            reasons.append("no template nodes address this hazard")
        elif not any(node in known_nodes for node in trace.template_node_ids):
            reasons.append(
                "none of the referenced template nodes exist in the catalog: "
                + ", ".join(trace.template_node_ids)
            )
        entries.append(HazardCoverage(trace.hazard_id, covered=not reasons,
                                      reasons=tuple(reasons)))
    return CoverageReport(tuple(entries))


def submodel(model: FeatureModel, new_root: str) -> FeatureModel:
    """The subtree rooted at a feature as a standalone model.

    Keeps cross-tree constraints and hazard traces whose feature references
    all fall inside the subtree; drops the rest.
    """
    if new_root not in model.features:
        raise InvalidSelectionError(f"unknown feature: {new_root}")
    keep: set[str] = set()
    frontier = [new_root]
    while frontier:
        name = frontier.pop()
        keep.add(name)
        frontier.extend(model.features[name].children)
    features = {}
    for name in model.features:  # preserve declaration order
        if name not in keep:
            continue
        feat = model.features[name]
        if name == new_root:
            feat = Feature(
                name=feat.name, parent=None, optionality=Optionality.MANDATORY,
                group_kind=feat.group_kind, is_abstract=feat.is_abstract,
                children=feat.children,
            )
        features[name] = feat
    constraints = tuple(
        c for c in model.cross_tree_constraints if variables(c) <= set(features)
    )
    traces = tuple(
        t for t in model.hazard_traces
        if set(t.contributing_features) | set(t.mitigating_features) <= set(features)
    )
    sub = FeatureModel(
        name=f"{model.name}_{new_root}",
        root=new_root,
        features=features,
        cross_tree_constraints=constraints,
        hazard_traces=traces,
    )
    sub.validate()
    return sub
