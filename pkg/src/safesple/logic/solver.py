"""Satisfiability, exact model counting, and model enumeration.

Search is DPLL: unit propagation plus backtracking over a static
lexicographic variable order, which keeps every result deterministic.
The counter additionally splits the residual clause set into connected
components and multiplies their counts.
"""

from __future__ import annotations

from itertools import product
from typing import Iterable, Optional

from .cnf import Clause, to_cnf
from .formula import Formula, partial_evaluate, variables

_UINT64_MAX = 2**64 - 1


class CapacityError(Exception):
    """Enumeration would exceed the caller's stated capacity."""


def _simplify(clauses: list[Clause], lit: int) -> Optional[list[Clause]]:
    """Assign lit true; drop satisfied clauses, shrink others. None on conflict."""
    out: list[Clause] = []
    for clause in clauses:
        if lit in clause:
            continue
        if -lit in clause:
            reduced = tuple(x for x in clause if x != -lit)
            if not reduced:
                return None
            out.append(reduced)
        else:
            out.append(clause)
    return out


def _propagate(clauses: list[Clause]) -> Optional[tuple[list[Clause], dict[int, bool]]]:
    """Exhaust unit propagation. Returns (residual clauses, forced values) or None."""
    forced: dict[int, bool] = {}
    while True:
        unit = next((c[0] for c in clauses if len(c) == 1), None)
        if unit is None:
            return clauses, forced
        forced[abs(unit)] = unit > 0
        simplified = _simplify(clauses, unit)
        if simplified is None:
            return None
        clauses = simplified


def _solve(clauses: list[Clause]) -> Optional[dict[int, bool]]:
    if any(len(c) == 0 for c in clauses):
        return None
    propagated = _propagate(clauses)
    if propagated is None:
        return None
    clauses, assignment = propagated
    if not clauses:
        return assignment
    var = min(abs(lit) for clause in clauses for lit in clause)
    for value in (False, True):
        lit = var if value else -var
        simplified = _simplify(clauses, lit)
        if simplified is None:
            continue
        sub = _solve(simplified)
        if sub is not None:
            sub[var] = value
            sub.update(assignment)
            return sub
    return None


def _components(clauses: list[Clause]) -> list[list[Clause]]:
    """Partition clauses into groups that share no variables."""
    parent: dict[int, int] = {}

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a: int, b: int) -> None:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    for clause in clauses:
        vs = [abs(lit) for lit in clause]
        for v in vs:
            parent.setdefault(v, v)
        for v in vs[1:]:
            union(vs[0], v)

    groups: dict[int, list[Clause]] = {}
    for clause in clauses:
        root = find(abs(clause[0]))
        groups.setdefault(root, []).append(clause)
    return [groups[k] for k in sorted(groups)]


def _clause_vars(clauses: Iterable[Clause]) -> set[int]:
    return {abs(lit) for clause in clauses for lit in clause}


def _count(clauses: list[Clause]) -> int:
    """Number of models over exactly the variables occurring in `clauses`."""
    if any(len(c) == 0 for c in clauses):
        return 0
    if not clauses:
        return 1
    before = _clause_vars(clauses)
    propagated = _propagate(clauses)
    if propagated is None:
        return 0
    clauses, forced = propagated
    remaining = _clause_vars(clauses)
    # variables satisfied away (not forced) are free to take either value
    freed = len(before) - len(forced) - len(remaining)
    factor = 1 << freed
    if not clauses:
        return factor
    parts = _components(clauses)
    if len(parts) > 1:
        total = factor
        for part in parts:
            total *= _count(part)
            if total == 0:
                return 0
        return total
    var = min(remaining)
    total = 0
    for value in (False, True):
        lit = var if value else -var
        simplified = _simplify(clauses, lit)
        if simplified is None:
            continue
        after = _clause_vars(simplified)
        freed_branch = len(remaining) - 1 - len(after)
        total += _count(simplified) << freed_branch
    return factor * total


def is_satisfiable(f: Formula) -> Optional[dict[str, bool]]:
    """A satisfying assignment, total over f's variables, or None if UNSAT.

    Deterministic: the same formula always yields the same model.
    """
    cnf = to_cnf(f)
    model = _solve(list(cnf.clauses))
    if model is None:
        return None
    return {
        name: model.get(cnf.var_table[name], False)
        for name in cnf.original_vars
    }


def count_models(f: Formula, over: Iterable[str], *, bigint: bool = False) -> int:
    """Exact number of satisfying assignments over the projection set `over`.

    `over` must cover every variable of f; members of `over` that f does not
    constrain double the count. Counts above the unsigned 64-bit range raise
    OverflowError unless bigint mode is on.
    """
    over_set = frozenset(over)
    f_vars = variables(f)
    missing = f_vars - over_set
    if missing:
        raise ValueError(f"projection set must cover formula variables, missing: {sorted(missing)}")
    cnf = to_cnf(f)
    count = _count(list(cnf.clauses))
    # variables in the CNF table but absent from residual clauses after folding
    table_vars = _clause_vars(cnf.clauses)
    unused = sum(1 for name in cnf.original_vars if cnf.var_table[name] not in table_vars)
    aux_unused = sum(
        1 for name, idx in cnf.var_table.items()
        if name.startswith("_aux") and idx not in table_vars
    )
    count <<= unused
    if aux_unused:
        # auxiliaries never end up unconstrained under biconditional definitions
        raise AssertionError("auxiliary variable left unconstrained")
    count <<= len(over_set - f_vars)
    if not bigint and count > _UINT64_MAX:
        raise OverflowError("model count exceeds 64-bit range; retry with bigint=True")
    return count


def enumerate_models(
    f: Formula,
    over: Iterable[str],
    limit: Optional[int] = None,
    *,
    exhaustive: bool = False,
) -> list[dict[str, bool]]:
    """All (or the first `limit`) models over `over`, in lexicographic order.

    Order: variables sorted by name, assignments ordered with False before
    True. With exhaustive=True the limit is a hard cap and overflowing it
    raises CapacityError instead of truncating.
    """
    over_names = sorted(set(over))
    f_vars = variables(f)
    missing = f_vars - set(over_names)
    if missing:
        raise ValueError(f"projection set must cover formula variables, missing: {sorted(missing)}")
    if limit is None and len(over_names) > 25:
        raise CapacityError("projection set larger than 25 variables requires a limit")

    out: list[dict[str, bool]] = []

    def push(assignment: dict[str, bool]) -> bool:
        """Append one model; False means enumeration must stop."""
        if limit is not None and len(out) >= limit:
            if exhaustive:
                raise CapacityError(f"model count exceeds limit {limit}")
            return False
        out.append(dict(assignment))
        return True

    def extend_free(assignment: dict[str, bool], idx: int) -> bool:
        free = over_names[idx:]
        if not free:
            return push(assignment)
        for values in product((False, True), repeat=len(free)):
            assignment.update(zip(free, values))
            if not push(assignment):
                return False
        for name in free:
            del assignment[name]
        return True

    def recurse(assignment: dict[str, bool], idx: int) -> bool:
        value = partial_evaluate(f, assignment)
        if value is False:
            return True
        if value is True:
            return extend_free(assignment, idx)
        for v in (False, True):
            assignment[over_names[idx]] = v
            keep_going = recurse(assignment, idx + 1)
            del assignment[over_names[idx]]
            if not keep_going:
                return False
        return True

    recurse({}, 0)
    return out
