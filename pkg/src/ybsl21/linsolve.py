"""Small exact linear solves over the rationals (Gaussian elimination)."""

from __future__ import annotations

from fractions import Fraction

from .superpoly import Monomial, SuperPolynomial

Q = Fraction


def solve_in_span(span: list[SuperPolynomial],
                  target: SuperPolynomial) -> list[Fraction] | None:
    """Coefficients x with sum(x_i * span_i) == target, or None if outside."""
    monos: list[Monomial] = sorted(
        {m for p in span for m in p.terms} | set(target.terms),
        key=Monomial.sort_key)
    rows = [[p.coefficient(m) for p in span] + [target.coefficient(m)]
            for m in monos]
    ncols = len(span)
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [v * inv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    # inconsistent rows mean the target leaves the span
    for i in range(r, len(rows)):
        if rows[i][ncols]:
            return None
    x = [Q(0)] * ncols
    for i, c in enumerate(pivots):
        x[c] = rows[i][ncols]
    return x
