"""Minimal complete DPLL SAT solver used to cross-check CNF exports.

Deliberately independent of the package under test: clauses are plain
lists of signed integers in DIMACS convention.  Unit propagation plus
branching on the first unassigned variable; no learning.  Fine for the
instance sizes exercised here (tens of variables).
"""

from __future__ import annotations

from typing import Optional


def _propagate(clauses, assign):
    """Repeatedly apply unit clauses.  Returns False on conflict."""
    changed = True
    while changed:
        changed = False
        for clause in clauses:
            unassigned = []
            satisfied = False
            for lit in clause:
                val = assign.get(abs(lit))
                if val is None:
                    unassigned.append(lit)
                elif (lit > 0) == val:
                    satisfied = True
                    break
            if satisfied:
                continue
            if not unassigned:
                return False
            if len(unassigned) == 1:
                lit = unassigned[0]
                assign[abs(lit)] = lit > 0
                changed = True
    return True


def solve(nvars: int, clauses) -> Optional[dict[int, bool]]:
    """A satisfying assignment as {var: bool}, or None if unsatisfiable."""
    clauses = [list(c) for c in clauses]

    def search(assign):
        assign = dict(assign)
        if not _propagate(clauses, assign):
            return None
        var = next((v for v in range(1, nvars + 1) if v not in assign), None)
        if var is None:
            return assign
        for value in (True, False):
            attempt = dict(assign)
            attempt[var] = value
            result = search(attempt)
            if result is not None:
                return result
        return None

    model = search({})
    if model is None:
        return None
    for v in range(1, nvars + 1):
        model.setdefault(v, False)
    return model


def check_model(clauses, model) -> bool:
    return all(any((lit > 0) == model[abs(lit)] for lit in clause)
               for clause in clauses)
