"""Propositional formulas over named variables.

The expression tree is immutable. Exactly-one is a first-class n-ary
connective because feature-model alternative groups are "pick exactly one
of n", not a chain of binary xors.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Mapping, Optional


class Formula:
    """Base class for all formula nodes."""

    __slots__ = ()


@dataclass(frozen=True)
class Const(Formula):
    value: bool


TRUE = Const(True)
FALSE = Const(False)


@dataclass(frozen=True)
class Var(Formula):
    name: str

    def __post_init__(self) -> None:
        if not self.name:
            raise ValueError("variable name must be non-empty")


@dataclass(frozen=True)
class Not(Formula):
    operand: Formula


@dataclass(frozen=True)
class And(Formula):
    operands: tuple[Formula, ...]

    def __init__(self, *operands: Formula):
        object.__setattr__(self, "operands", tuple(operands))


@dataclass(frozen=True)
class Or(Formula):
    operands: tuple[Formula, ...]

    def __init__(self, *operands: Formula):
        object.__setattr__(self, "operands", tuple(operands))


@dataclass(frozen=True)
class Implies(Formula):
    antecedent: Formula
    consequent: Formula


@dataclass(frozen=True)
class Iff(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class ExactlyOne(Formula):
    operands: tuple[Formula, ...]

    def __init__(self, *operands: Formula):
        object.__setattr__(self, "operands", tuple(operands))


def _children(f: Formula) -> Iterator[Formula]:
    if isinstance(f, Not):
        yield f.operand
    elif isinstance(f, (And, Or, ExactlyOne)):
        yield from f.operands
    elif isinstance(f, Implies):
        yield f.antecedent
        yield f.consequent
    elif isinstance(f, Iff):
        yield f.left
        yield f.right


def variables(f: Formula) -> frozenset[str]:
    """All variable names occurring in the formula."""
    out: set[str] = set()
    stack = [f]
    while stack:
        node = stack.pop()
        if isinstance(node, Var):
            out.add(node.name)
        else:
            stack.extend(_children(node))
    return frozenset(out)


def evaluate(f: Formula, assignment: Mapping[str, bool]) -> bool:
    """Evaluate under a total assignment. Raises KeyError on a missing variable."""
    if isinstance(f, Const):
        return f.value
    if isinstance(f, Var):
        return assignment[f.name]
    if isinstance(f, Not):
        return not evaluate(f.operand, assignment)
    if isinstance(f, And):
        return all(evaluate(g, assignment) for g in f.operands)
    if isinstance(f, Or):
        return any(evaluate(g, assignment) for g in f.operands)
    if isinstance(f, Implies):
        return (not evaluate(f.antecedent, assignment)) or evaluate(f.consequent, assignment)
    if isinstance(f, Iff):
        return evaluate(f.left, assignment) == evaluate(f.right, assignment)
    if isinstance(f, ExactlyOne):
        return sum(1 for g in f.operands if evaluate(g, assignment)) == 1
    raise TypeError(f"not a formula node: {f!r}")


def partial_evaluate(f: Formula, assignment: Mapping[str, bool]) -> Optional[bool]:
    """Three-valued evaluation under a partial assignment.

    Returns True/False when the value is already determined, None otherwise.
    """
    if isinstance(f, Const):
        return f.value
    if isinstance(f, Var):
        return assignment.get(f.name)
    if isinstance(f, Not):
        v = partial_evaluate(f.operand, assignment)
        return None if v is None else not v
    if isinstance(f, And):
        saw_none = False
        for g in f.operands:
            v = partial_evaluate(g, assignment)
            if v is False:
                return False
            if v is None:
                saw_none = True
        return None if saw_none else True
    if isinstance(f, Or):
        saw_none = False
        for g in f.operands:
            v = partial_evaluate(g, assignment)
            if v is True:
                return True
            if v is None:
                saw_none = True
        return None if saw_none else False
    if isinstance(f, Implies):
        a = partial_evaluate(f.antecedent, assignment)
        if a is False:
            return True
        b = partial_evaluate(f.consequent, assignment)
        if b is True:
            return True
        if a is True and b is False:
            return False
        return None
    if isinstance(f, Iff):
        a = partial_evaluate(f.left, assignment)
        b = partial_evaluate(f.right, assignment)
        if a is None or b is None:
            return None
        return a == b
    if isinstance(f, ExactlyOne):
        true_count = 0
        unknown = 0
        for g in f.operands:
            v = partial_evaluate(g, assignment)
            if v is True:
                true_count += 1
            elif v is None:
                unknown += 1
        if true_count > 1:
            return False
        if unknown == 0:
            return true_count == 1
        if true_count == 1:
            return None  # exactly one so far, but an unknown could add a second
        return None
    raise TypeError(f"not a formula node: {f!r}")


def to_text(f: Formula) -> str:
    """Render in the prefix syntax used by the feature-model constraint language."""
    if isinstance(f, Const):
        return "true" if f.value else "false"
    if isinstance(f, Var):
        return f.name
    if isinstance(f, Not):
        return f"not({to_text(f.operand)})"
    if isinstance(f, And):
        return "and(" + ", ".join(to_text(g) for g in f.operands) + ")"
    if isinstance(f, Or):
        return "or(" + ", ".join(to_text(g) for g in f.operands) + ")"
    if isinstance(f, Implies):
        return f"implies({to_text(f.antecedent)}, {to_text(f.consequent)})"
    if isinstance(f, Iff):
        return f"iff({to_text(f.left)}, {to_text(f.right)})"
    if isinstance(f, ExactlyOne):
        return "xor(" + ", ".join(to_text(g) for g in f.operands) + ")"
    raise TypeError(f"not a formula node: {f!r}")
