"""Exact sparse linear algebra over the rationals.

Only what the R-matrix inverse needs: Gaussian elimination on sparse rows
keyed by arbitrary hashable variables, with consistency and nullity
reporting.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Hashable, Iterable


@dataclass
class SolveResult:
    consistent: bool
    solution: dict          # particular solution, free variables set to zero
    rank: int
    nullity: int            # dimension of the solution space among the given variables

    @property
    def unique(self) -> bool:
        return self.consistent and self.nullity == 0


def solve_sparse(equations: Iterable[tuple[dict, object]], variables: Iterable[Hashable]) -> SolveResult:
    """Solve ``sum(coef[v] * x[v]) == rhs`` for every equation, exactly."""
    variables = list(dict.fromkeys(variables))
    pivots: dict = {}   # pivot variable -> (row dict, rhs), row normalised with row[pivot] == 1
    consistent = True
    for coeffs, rhs in equations:
        row = {v: Fraction(c) for v, c in coeffs.items() if c}
        rhs = Fraction(rhs)
        # eliminate existing pivots
        changed = True
        while changed:
            changed = False
            for v in [v for v in row if v in pivots]:
                c = row.get(v)
                if not c:
                    continue
                prow, prhs = pivots[v]
                for w, pc in prow.items():
                    nv = row.get(w, 0) - c * pc
                    if nv:
                        row[w] = nv
                    else:
                        row.pop(w, None)
                rhs -= c * prhs
                changed = True
        if not row:
            if rhs != 0:
                consistent = False
            continue
        p = min(row, key=lambda v: (len(str(v)), str(v)))
        c = row[p]
        row = {w: x / c for w, x in row.items()}
        rhs /= c
        # keep existing pivot rows reduced with respect to the new pivot
        for q, (qrow, qrhs) in list(pivots.items()):
            k = qrow.get(p)
            if k:
                for w, x in row.items():
                    nv = qrow.get(w, 0) - k * x
                    if nv:
                        qrow[w] = nv
                    else:
                        qrow.pop(w, None)
                pivots[q] = (qrow, qrhs - k * rhs)
        pivots[p] = (row, rhs)
    unknown = [v for v in pivots if v not in set(variables)]
    if unknown:
        raise ValueError(f"equations mention undeclared variables, e.g. {unknown[0]!r}")
    solution = {p: prhs for p, (prow, prhs) in pivots.items() if prhs}
    return SolveResult(consistent, solution, len(pivots), len(variables) - len(pivots))
