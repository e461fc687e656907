"""Exact Smith normal form over the integers.

Works on dense lists of Python ints, so torsion is computed without any
overflow concerns.  Pivoting picks the entry of least absolute value to
keep intermediate growth down.
"""

from __future__ import annotations


def smith_normal_form(rows: list[list[int]]) -> list[int]:
    """Diagonal of the Smith normal form (non-zero entries, each dividing the next)."""
    a = [list(r) for r in rows]
    m = len(a)
    n = len(a[0]) if m else 0
    diag = []
    top = 0
    while top < m and top < n:
        pivot = _find_pivot(a, top, m, n)
        if pivot is None:
            break
        pi, pj = pivot
        a[top], a[pi] = a[pi], a[top]
        for r in range(m):
            a[r][top], a[r][pj] = a[r][pj], a[r][top]
        while True:
            reduced = False
            for i in range(top + 1, m):
                if a[i][top]:
                    q = a[i][top] // a[top][top]
                    for j in range(top, n):
                        a[i][j] -= q * a[top][j]
                    if a[i][top]:
                        a[top], a[i] = a[i], a[top]
                        reduced = True
            for j in range(top + 1, n):
                if a[top][j]:
                    q = a[top][j] // a[top][top]
                    for i in range(top, m):
                        a[i][j] -= q * a[i][top]
                    if a[top][j]:
                        for i in range(top, m):
                            a[i][top], a[i][j] = a[i][j], a[i][top]
                        reduced = True
            if not reduced:
                break
        # ensure the pivot divides every remaining entry
        d = a[top][top]
        offender = None
        for i in range(top + 1, m):
            for j in range(top + 1, n):
                if a[i][j] % d:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            for j in range(top, n):
                a[top][j] += a[offender][j]
            continue
        diag.append(abs(d))
        top += 1
    return diag


def _find_pivot(a, top, m, n):
    best = None
    for i in range(top, m):
        row = a[i]
        for j in range(top, n):
            v = row[j]
            if v:
                if best is None or abs(v) < abs(best[2]):
                    best = (i, j, v)
                    if abs(v) == 1:
                        return (i, j)
    return None if best is None else (best[0], best[1])


def integer_rank(rows: list[list[int]]) -> int:
    return len(smith_normal_form(rows))


def torsion_of(rows: list[list[int]]) -> list[int]:
    """Diagonal entries > 1, i.e. the torsion coefficients of the cokernel."""
    return [d for d in smith_normal_form(rows) if d > 1]
