"""Certificate-free reference computations for tests and acceptance runs.

Nothing here shares the engine's reduction path: ``brute_delta`` builds a
dense monomial-image matrix with its own series products and ranks it
with pivots taken at the highest nonzero column (the reverse of the
engine's (degree, branch) order).  ``sieve_semigroup`` is a plain
dynamic-programming sieve of a numerical semigroup.
"""

from __future__ import annotations

import logging
from typing import Any, Iterable

import numpy as np

from app.core.coeffield import FieldDescriptor
from app.core.errors import InvalidParameterization
from app.core.parameterization import validate
from app.models.param import Parameterization
from app.models.results import SieveResult

logger = logging.getLogger(__name__)


# ── brute-force delta ──

def _dense(field: FieldDescriptor, terms: Iterable[tuple[int, Any]], precision: int) -> list[Any]:
    out = [field.zero()] * (precision + 1)
    for e, c in terms:
        if e <= precision:
            out[e] = c
    return out


def _convolve(field: FieldDescriptor, a: list[Any], b: list[Any], precision: int) -> list[Any]:
    out = [field.zero()] * (precision + 1)
    for i, x in enumerate(a):
        if field.is_zero(x):
            continue
        for k in range(precision + 1 - i):
            y = b[k]
            if not field.is_zero(y):
                out[i + k] = field.add(out[i + k], field.mul(x, y))
    return out


def _monomial_rows(phi: Parameterization, precision: int) -> Iterable[list[Any]]:
    """Dense images of x^α whose weighted order does not exceed D."""
    field, r, n = phi.field, phi.r, phi.n
    images = [[_dense(field, phi.entries[j][i].terms, precision) for j in range(r)] for i in range(n)]
    # smallest order of xᵢ over branches where it is nonzero
    weights = []
    for i in range(n):
        orders = [p.min_exponent for p in (phi.entries[j][i] for j in range(r)) if not p.is_zero()]
        weights.append(min(orders) if orders else None)
    one = [[field.one()] + [field.zero()] * precision for _ in range(r)]

    def walk(i: int, current: list[list[Any]], weight: int) -> Iterable[list[list[Any]]]:
        if i == n:
            yield current
            return
        yield from walk(i + 1, current, weight)
        if weights[i] is None:
            return
        w = weight + weights[i]
        cur = current
        while w <= precision:
            cur = [_convolve(field, cur[j], images[i][j], precision) for j in range(r)]
            yield from walk(i + 1, cur, w)
            w += weights[i]

    for branches in walk(0, one, 0):
        # column index m·r + j, as for the engine, but pivots are taken from the top
        yield [branches[j][m] for m in range(precision + 1) for j in range(r)]


def brute_delta(phi: Parameterization, precision: int) -> int:
    """δ_{≤D} = r(D+1) − rank of the monomial-image matrix, no certificate.

    Raises:
        InvalidParameterization: If φ fails validation or D < 1.
    """
    report = validate(phi)
    if not report.valid:
        raise InvalidParameterization("; ".join(report.reasons()))
    if precision < 1:
        raise InvalidParameterization(f"Precision must be >= 1, got {precision!r}")

    field = phi.field
    size = phi.r * (precision + 1)
    pivots: dict[int, list[Any]] = {}
    for row in _monomial_rows(phi, precision):
        v = list(row)
        for col in range(size - 1, -1, -1):
            x = v[col]
            if field.is_zero(x):
                continue
            prow = pivots.get(col)
            if prow is None:
                inv = field.inv(x)
                pivots[col] = [field.mul(inv, y) for y in v[: col + 1]]
                break
            for k in range(col + 1):
                if not field.is_zero(prow[k]):
                    v[k] = field.sub(v[k], field.mul(x, prow[k]))
        if len(pivots) == size:
            break
    logger.debug("brute_delta at D=%d: rank %d of %d", precision, len(pivots), size)
    return size - len(pivots)


# ── numerical semigroup sieve ──

def sieve_semigroup(generators: Iterable[int], bound: int) -> SieveResult:
    """Sieve ⟨generators⟩ on [0, B].

    The conductor is reported once a run of min(generators) consecutive
    members is found (every later integer is then a member).

    Raises:
        ValueError: If the generator set is empty or not positive.
    """
    gens = sorted(set(int(g) for g in generators))
    if not gens or gens[0] < 1:
        raise ValueError(f"Generators must be a nonempty set of positive integers: {gens!r}")
    if bound < 0:
        raise ValueError(f"Bound must be >= 0, got {bound!r}")

    member = np.zeros(bound + 1, dtype=bool)
    member[0] = True
    for g in gens:
        for k in range(g, bound + 1):
            if member[k - g]:
                member[k] = True

    run_length = gens[0]
    conductor = None
    run = 0
    for k in range(bound + 1):
        run = run + 1 if member[k] else 0
        if run == run_length:
            conductor = k - run_length + 1
            break

    limit = bound + 1 if conductor is None else conductor
    gaps = np.flatnonzero(~member[:limit]).tolist()
    return SieveResult(
        bound=bound,
        generators=tuple(gens),
        membership=member,
        gaps=gaps,
        conductor=conductor,
    )
