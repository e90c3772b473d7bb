"""Shared test fixtures: bundled artifacts and random generators."""

import random
from functools import lru_cache

from safesple.fm import parse_feature_model
from safesple.fm.model import Feature, FeatureModel, GroupKind, Optionality
from safesple.paths import demo_model_path


@lru_cache(maxsize=1)
def demo_model():
    return parse_feature_model(demo_model_path().read_text())


def random_feature_model(rng: random.Random, max_features: int = 10) -> FeatureModel:
    """Random valid feature model with flagged children, groups and cross-tree links."""
    assert max_features >= 1
    names = [f"F{i}" for i in range(max_features)]
    features: dict[str, Feature] = {
        "F0": Feature(name="F0", parent=None, optionality=Optionality.MANDATORY)
    }
    available = ["F0"]
    next_index = 1
    while next_index < max_features and available:
        parent = rng.choice(available)
        style = rng.random()
        remaining = max_features - next_index
        if style < 0.4 and remaining >= 2 and not features[parent].children:
            kind = GroupKind.XOR if rng.random() < 0.5 else GroupKind.OR
            size = rng.randint(2, min(3, remaining))
            member_names = names[next_index:next_index + size]
            next_index += size
            for member in member_names:
                features[member] = Feature(name=member, parent=parent, optionality=None)
                available.append(member)
            f = features[parent]
            features[parent] = Feature(
                name=f.name, parent=f.parent, optionality=f.optionality,
                group_kind=kind, is_abstract=f.is_abstract, children=tuple(member_names),
            )
        elif features[parent].group_kind in (GroupKind.NONE, GroupKind.AND):
            child = names[next_index]
            next_index += 1
            optionality = Optionality.MANDATORY if rng.random() < 0.5 else Optionality.OPTIONAL
            features[child] = Feature(name=child, parent=parent, optionality=optionality)
            available.append(child)
            f = features[parent]
            features[parent] = Feature(
                name=f.name, parent=f.parent, optionality=f.optionality,
                group_kind=GroupKind.AND, is_abstract=f.is_abstract,
                children=f.children + (child,),
            )
    declared = list(features)
    constraints = []
    if len(declared) >= 3 and rng.random() < 0.7:
        from safesple.logic import Implies, Not, Var

        for _ in range(rng.randint(1, 2)):
            a, b = rng.sample(declared[1:], 2)
            if rng.random() < 0.5:
                constraints.append(Implies(Var(a), Var(b)))
            else:
                constraints.append(Implies(Var(a), Not(Var(b))))
    model = FeatureModel(
        name="Random",
        root="F0",
        features=features,
        cross_tree_constraints=tuple(constraints),
    )
    model.validate()
    return model
