"""Truth-table oracle: exhaustive enumeration, independent of the CNF/DPLL path.

Kept deliberately naive so it can serve as the reference the solver is
tested against. Only `evaluate` is shared with the rest of the package.
"""

from __future__ import annotations

from itertools import product
from typing import Iterable

from .formula import Formula, evaluate, variables


def _assignments(names: list[str]):
    for values in product((False, True), repeat=len(names)):
        yield dict(zip(names, values))


def truth_table_satisfiable(f: Formula) -> bool:
    names = sorted(variables(f))
    return any(evaluate(f, a) for a in _assignments(names))


def truth_table_count(f: Formula, over: Iterable[str]) -> int:
    names = sorted(set(over))
    if not variables(f) <= set(names):
        raise ValueError("projection set must cover formula variables")
    return sum(1 for a in _assignments(names) if evaluate(f, a))


def truth_table_models(f: Formula, over: Iterable[str]) -> list[dict[str, bool]]:
    names = sorted(set(over))
    if not variables(f) <= set(names):
        raise ValueError("projection set must cover formula variables")
    return [a for a in _assignments(names) if evaluate(f, a)]
