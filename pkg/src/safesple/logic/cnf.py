"""Equisatisfiable CNF conversion.

Uses the Tseitin transformation with full biconditional definitions, so
every auxiliary variable is functionally determined by the original
variables. That makes the CNF model count over all variables equal to the
formula's model count over its own variables, which the counter relies on.

Original variables get indices 1..n in sorted name order; auxiliaries
follow and are named "_aux<k>" in the variable table.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .formula import (
    And,
    Const,
    ExactlyOne,
    FALSE,
    Formula,
    Iff,
    Implies,
    Not,
    Or,
    TRUE,
    Var,
    variables,
)

Clause = tuple[int, ...]


@dataclass
class CnfFormula:
    clauses: list[Clause]
    var_table: dict[str, int]
    original_vars: tuple[str, ...]

    @property
    def num_vars(self) -> int:
        return len(self.var_table)


def fold_constants(f: Formula) -> Formula:
    """Propagate true/false literals so no Const survives except at the root."""
    if isinstance(f, (Const, Var)):
        return f
    if isinstance(f, Not):
        g = fold_constants(f.operand)
        if isinstance(g, Const):
            return FALSE if g.value else TRUE
        return Not(g)
    if isinstance(f, And):
        kept = []
        for g in map(fold_constants, f.operands):
            if isinstance(g, Const):
                if not g.value:
                    return FALSE
                continue
            kept.append(g)
        if not kept:
            return TRUE
        if len(kept) == 1:
            return kept[0]
        return And(*kept)
    if isinstance(f, Or):
        kept = []
        for g in map(fold_constants, f.operands):
            if isinstance(g, Const):
                if g.value:
                    return TRUE
                continue
            kept.append(g)
        if not kept:
            return FALSE
        if len(kept) == 1:
            return kept[0]
        return Or(*kept)
    if isinstance(f, Implies):
        a = fold_constants(f.antecedent)
        b = fold_constants(f.consequent)
        if isinstance(a, Const):
            return b if a.value else TRUE
        if isinstance(b, Const):
            return TRUE if b.value else fold_constants(Not(a))
        return Implies(a, b)
    if isinstance(f, Iff):
        a = fold_constants(f.left)
        b = fold_constants(f.right)
        if isinstance(a, Const):
            return b if a.value else fold_constants(Not(b))
        if isinstance(b, Const):
            return a if b.value else fold_constants(Not(a))
        return Iff(a, b)
    if isinstance(f, ExactlyOne):
        kept = []
        true_seen = 0
        for g in map(fold_constants, f.operands):
            if isinstance(g, Const):
                if g.value:
                    true_seen += 1
                continue
            kept.append(g)
        if true_seen > 1:
            return FALSE
        if true_seen == 1:
            if not kept:
                return TRUE
            return fold_constants(And(*[Not(g) for g in kept]))
        if not kept:
            return FALSE
        if len(kept) == 1:
            return kept[0]
        return ExactlyOne(*kept)
    raise TypeError(f"not a formula node: {f!r}")


class _Builder:
    def __init__(self, original: tuple[str, ...]):
        self.var_table: dict[str, int] = {name: i + 1 for i, name in enumerate(original)}
        self.next_index = len(original) + 1
        self.clauses: list[Clause] = []

    def fresh(self) -> int:
        idx = self.next_index
        self.var_table[f"_aux{idx}"] = idx
        self.next_index += 1
        return idx

    def add(self, *lits: int) -> None:
        self.clauses.append(tuple(lits))

    def encode(self, f: Formula) -> int:
        """Return a literal equivalent to f, emitting defining clauses."""
        if isinstance(f, Var):
            return self.var_table[f.name]
        if isinstance(f, Not):
            return -self.encode(f.operand)
        if isinstance(f, And):
            lits = [self.encode(g) for g in f.operands]
            x = self.fresh()
            for lit in lits:
                self.add(-x, lit)
            self.add(x, *[-lit for lit in lits])
            return x
        if isinstance(f, Or):
            lits = [self.encode(g) for g in f.operands]
            x = self.fresh()
            self.add(-x, *lits)
            for lit in lits:
                self.add(x, -lit)
            return x
        if isinstance(f, Implies):
            return self.encode(Or(Not(f.antecedent), f.consequent))
        if isinstance(f, Iff):
            a = self.encode(f.left)
            b = self.encode(f.right)
            x = self.fresh()
            self.add(-x, -a, b)
            self.add(-x, a, -b)
            self.add(x, -a, -b)
            self.add(x, a, b)
            return x
        if isinstance(f, ExactlyOne):
            lits = [self.encode(g) for g in f.operands]
            x = self.fresh()
            self.add(-x, *lits)
            for a, b in combinations(lits, 2):
                self.add(-x, -a, -b)
            # exactly-one over the operands forces x
            for i, lit in enumerate(lits):
                others = [other for j, other in enumerate(lits) if j != i]
                self.add(x, -lit, *others)
            return x
        raise TypeError(f"unexpected node after folding: {f!r}")


def to_cnf(f: Formula) -> CnfFormula:
    """Equisatisfiable CNF; CNF models project onto original variables as f-models."""
    original = tuple(sorted(variables(f)))
    folded = fold_constants(f)
    if isinstance(folded, Const):
        clauses: list[Clause] = [] if folded.value else [()]
        return CnfFormula(clauses, {name: i + 1 for i, name in enumerate(original)}, original)
    builder = _Builder(original)
    root = builder.encode(folded)
    builder.add(root)
    return CnfFormula(builder.clauses, builder.var_table, original)
