"""Left stochastic matrices over exact rationals and their PLM decomposition.

A left stochastic matrix has nonnegative entries and every column summing to
exactly 1.  Each one is a finite convex combination of permutation-like
matrices, and the combination here is found greedily: repeatedly locate the
first positive entry of every column, peel off the PLM those positions form,
scaled by the smallest entry involved, and continue on the remainder.  Every
step zeroes at least one more entry while keeping the remainder nonnegative
with uniform column sums, so at most d^2 terms appear and the weights sum to
1 exactly.

All arithmetic uses ``fractions.Fraction``; nothing here rounds.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .core import Plm
from .errors import (
    DimensionMismatchError,
    NotLeftStochasticError,
    WeightSumNotOneError,
    ZeroColumnError,
)


@dataclass(frozen=True)
class StochasticMatrix:
    """Square matrix of nonnegative exact rationals (rows of columns of them).

    Construction rejects negative entries; column sums are checked by
    :func:`is_left_stochastic` and by the operations that need them, not here.
    """

    entries: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(Fraction(x) for x in row) for row in self.entries)
        object.__setattr__(self, "entries", rows)
        d = len(rows)
        if d == 0:
            raise ValueError("empty matrix")
        for i, row in enumerate(rows, start=1):
            if len(row) != d:
                raise ValueError(f"not square: {d} rows but row {i} has {len(row)} entries")
            for j, x in enumerate(row, start=1):
                if x < 0:
                    raise NotLeftStochasticError(
                        f"negative entry {x} at row {i}, column {j}", column=j
                    )

    @property
    def dim(self) -> int:
        return len(self.entries)

    @classmethod
    def from_plm(cls, a: Plm) -> "StochasticMatrix":
        d = a.dim
        one, zero = Fraction(1), Fraction(0)
        return cls(
            tuple(
                tuple(one if a.colmap[j] == i else zero for j in range(d))
                for i in range(1, d + 1)
            )
        )

    def column_sums(self) -> tuple[Fraction, ...]:
        d = self.dim
        return tuple(sum(self.entries[i][j] for i in range(d)) for j in range(d))


@dataclass(frozen=True)
class Decomposition:
    """Convex combination of PLMs: positive weights summing to exactly 1."""

    terms: tuple[tuple[Fraction, Plm], ...]

    def __post_init__(self):
        terms = tuple((Fraction(lam), p) for lam, p in self.terms)
        object.__setattr__(self, "terms", terms)
        if not terms:
            raise WeightSumNotOneError("a decomposition needs at least one term")
        d = terms[0][1].dim
        for lam, p in terms:
            if p.dim != d:
                raise DimensionMismatchError(f"term dims {p.dim} != {d}")
            if not 0 < lam <= 1:
                raise ValueError(f"weight {lam} outside (0, 1]")
        if len(terms) > d * d:
            raise ValueError(f"{len(terms)} terms exceed the {d * d} bound")
        total = sum(lam for lam, _ in terms)
        if total != 1:
            raise WeightSumNotOneError(f"weights sum to {total}, not 1")

    @property
    def dim(self) -> int:
        return self.terms[0][1].dim

    def to_json_dict(self) -> dict:
        return {
            "dim": self.dim,
            "terms": [
                {"lambda": str(lam), "colmap": list(p.colmap)} for lam, p in self.terms
            ],
        }


def is_left_stochastic(m: StochasticMatrix) -> bool:
    return all(s == 1 for s in m.column_sums())


def first_positive_rows(m: StochasticMatrix, atol=None) -> tuple[int, ...]:
    """For each column, the smallest row index with a positive entry.

    ``atol`` opts into the approximate mode: entries at or below it count as
    zero.  The default is exact.  Raises :class:`ZeroColumnError` when a
    column has no positive entry.
    """
    threshold = Fraction(0) if atol is None else atol
    d = m.dim
    out = []
    for j in range(d):
        row = next((i for i in range(d) if m.entries[i][j] > threshold), None)
        if row is None:
            raise ZeroColumnError(j + 1)
        out.append(row + 1)
    return tuple(out)


def first_positive_plm(m: StochasticMatrix, atol=None) -> Plm:
    """The PLM supported on each column's first positive entry."""
    return Plm(first_positive_rows(m, atol=atol))


def decompose(m: StochasticMatrix) -> Decomposition:
    """Greedy exact decomposition into a convex combination of PLMs.

    Raises :class:`NotLeftStochasticError` unless every column sums to 1.
    The invariants the construction guarantees (remainder stays nonnegative,
    column sums stay uniform, the zero count strictly grows) are re-checked at
    every step as a defense against arithmetic slips.
    """
    d = m.dim
    for j, s in enumerate(m.column_sums(), start=1):
        if s != 1:
            raise NotLeftStochasticError(f"column {j} sums to {s}, not 1", column=j, total=s)

    work = [list(row) for row in m.entries]
    zeros = sum(1 for row in work for x in row if x == 0)
    remaining = Fraction(1)
    terms: list[tuple[Fraction, Plm]] = []
    while remaining > 0:
        picks = []
        for j in range(d):
            i = next(i for i in range(d) if work[i][j] > 0)
            picks.append(i)
        lam = min(work[picks[j]][j] for j in range(d))
        for j in range(d):
            work[picks[j]][j] -= lam
        terms.append((lam, Plm(tuple(i + 1 for i in picks))))
        remaining -= lam

        new_zeros = sum(1 for row in work for x in row if x == 0)
        if new_zeros <= zeros:
            raise AssertionError("a step failed to zero a new entry")
        zeros = new_zeros
        if any(x < 0 for row in work for x in row):
            raise AssertionError("remainder went negative")
        if any(sum(work[i][j] for i in range(d)) != remaining for j in range(d)):
            raise AssertionError("column sums drifted apart")
    return Decomposition(tuple(terms))


def convex_combine(terms) -> StochasticMatrix:
    """Sum weight * PLM over the given (weight, Plm) pairs, exactly.

    Weights must lie in [0, 1] and sum to exactly 1; zero weights are allowed
    here even though :class:`Decomposition` excludes them.
    """
    terms = [(Fraction(lam), p) for lam, p in terms]
    if not terms:
        raise WeightSumNotOneError("no terms to combine")
    d = terms[0][1].dim
    for lam, p in terms:
        if p.dim != d:
            raise DimensionMismatchError(f"term dims {p.dim} != {d}")
        if not 0 <= lam <= 1:
            raise ValueError(f"weight {lam} outside [0, 1]")
    total = sum(lam for lam, _ in terms)
    if total != 1:
        raise WeightSumNotOneError(f"weights sum to {total}, not 1")
    grid = [[Fraction(0)] * d for _ in range(d)]
    for lam, p in terms:
        for j in range(d):
            grid[p.colmap[j] - 1][j] += lam
    return StochasticMatrix(tuple(tuple(row) for row in grid))


def recompose(dec: Decomposition) -> StochasticMatrix:
    return convex_combine(dec.terms)


def random_left_stochastic(d: int, seed: int, max_denominator: int = 1000) -> StochasticMatrix:
    """Deterministic random left stochastic matrix with exact rational entries.

    Each column picks a denominator q <= max_denominator and splits q into d
    nonnegative integer parts uniformly via sorted cut points.
    """
    if d < 1:
        raise ValueError(f"dimension {d} must be >= 1")
    if max_denominator < 1:
        raise ValueError(f"max denominator {max_denominator} must be >= 1")
    rng = random.Random(seed)
    cols = []
    for _ in range(d):
        q = rng.randint(1, max_denominator)
        cuts = sorted(rng.randint(0, q) for _ in range(d - 1))
        bounds = [0] + cuts + [q]
        cols.append([Fraction(bounds[k + 1] - bounds[k], q) for k in range(d)])
    return StochasticMatrix(tuple(tuple(cols[j][i] for j in range(d)) for i in range(d)))
