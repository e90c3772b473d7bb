"""Feature-to-parameter binding schemas.

A mapping assigns equivalence classes of parameter values to features.
The schema derived from it decides, per configuration, which template
parameters take a feature-derived value; everything else is fetched from
evidence at instantiation time.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Optional, Union

from ..fm.analysis import to_propositional
from ..fm.model import Configuration, FeatureModel
from ..logic import And, Var, is_satisfiable
from .model import SafetyCaseTemplate

Scalar = Union[float, int, str, bool]


class MappingError(Exception):
    pass


class ConflictError(Exception):
    pass


@dataclass(frozen=True)
class EquivalenceClass:
    """A value range treated as behaviorally identical: a discrete value or a closed interval."""

    value: Optional[Scalar] = None
    low: Optional[float] = None
    high: Optional[float] = None

    def __post_init__(self) -> None:
        interval = self.low is not None or self.high is not None
        if (self.value is None) == (not interval):
            raise ValueError("an equivalence class is either a discrete value or an interval")
        if interval and (self.low is None or self.high is None or self.low > self.high):
            raise ValueError("interval class needs low <= high")

    def disjoint_from(self, other: "EquivalenceClass") -> bool:
        if self.value is not None and other.value is not None:
            return self.value != other.value
        if self.value is not None or other.value is not None:
            return True  # a discrete value and an interval never merge
        return self.high < other.low or other.high < self.low

    def intersect(self, other: "EquivalenceClass") -> "EquivalenceClass":
        if self.disjoint_from(other):
            raise ValueError("intersecting disjoint classes")
        if self.value is not None:
            return self
        return EquivalenceClass(low=max(self.low, other.low), high=min(self.high, other.high))

    def representative(self) -> Scalar:
        """Bound value for checks: the conservative lower end of an interval."""
        return self.value if self.value is not None else self.low


@dataclass(frozen=True)
class BindingSchema:
    template_id: str
    feature_classes: dict[str, tuple[tuple[str, EquivalenceClass], ...]]  # param -> (feature, class)
    evidence_sourced: frozenset[str]


def map_features_to_parameters(
    model: FeatureModel,
    template: SafetyCaseTemplate,
    mapping: Mapping[str, tuple[str, EquivalenceClass]],
) -> BindingSchema:
    """Build a binding schema; parameters no feature maps to stay evidence-sourced.

    Raises MappingError on unknown features or parameters, ConflictError when
    two co-selectable features pin the same parameter to disjoint classes.
    """
    per_param: dict[str, list[tuple[str, EquivalenceClass]]] = {}
    for feature, (param, eq_class) in mapping.items():
        if feature not in model.features:
            raise MappingError(f"unknown feature {feature!r}")
        if param not in template.parameters:
            raise MappingError(f"unknown template parameter {param!r}")
        per_param.setdefault(param, []).append((feature, eq_class))

    formula = to_propositional(model)
    for param, entries in per_param.items():
        for i, (feat_a, class_a) in enumerate(entries):
            for feat_b, class_b in entries[i + 1:]:
                if not class_a.disjoint_from(class_b):
                    continue
                both = And(formula, Var(feat_a), Var(feat_b))
                if is_satisfiable(both) is not None:
                    raise ConflictError(
                        f"features {feat_a!r} and {feat_b!r} can be selected together "
                        f"but map [{param}] to disjoint classes"
                    )

    feature_classes = {
        param: tuple(sorted(entries))
        for param, entries in sorted(per_param.items())
    }
    evidence_sourced = frozenset(template.parameters) - frozenset(feature_classes)
    return BindingSchema(
        template_id=template.template_id,
        feature_classes=feature_classes,
        evidence_sourced=evidence_sourced,
    )


def schema_bindings(
    schema: BindingSchema, configuration: Optional[Configuration]
) -> dict[str, Scalar]:
    """Feature-derived parameter values for the selected features of a configuration."""
    if configuration is None:
        return {}
    out: dict[str, Scalar] = {}
    for param, entries in schema.feature_classes.items():
        chosen: Optional[EquivalenceClass] = None
        for feature, eq_class in entries:
            if feature not in configuration.selected:
                continue
            chosen = eq_class if chosen is None else chosen.intersect(eq_class)
        if chosen is not None:
            out[param] = chosen.representative()
    return out
