"""Powers, periodicity, and eigenvalue structure of permutation-like matrices.

Every PLM lives in a finite multiplicative monoid, so its powers eventually
cycle: there are minimal s >= 1 and t >= 1 with ``A^(s+t) == A^s``.  That one
identity drives everything here.  It gives the periodicity verdict, and it
forces the minimal polynomial to divide ``x^s (x^t - 1)``, so every eigenvalue
is zero or a t-th root of unity.  The characteristic polynomial is computed
exactly over the integers and its roots are cross-checked numerically.

Repeated eigenvalues (any PLM with two disjoint cycles in its column-map graph
has eigenvalue 1 at least twice; the identity has it d times) defeat a naive
companion-matrix root finder: a multiplicity-m root is only found to within
roughly machine-epsilon^(1/m), which for (x-1)^5 is about 1e-3.  To honor a
1e-9 tolerance the characteristic polynomial is first split into square-free
factors by Yun's algorithm using exact rational arithmetic; each factor has
simple roots and those are found to near machine precision.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .core import Plm, identity, multiply, to_dense
from .errors import RootFindingError

DEFAULT_TOL = 1e-9


@dataclass(frozen=True)
class PowerCycle:
    """Minimal pair with ``A^(tail+period) == A^tail``, tail >= 1."""

    tail: int
    period: int


@dataclass(frozen=True)
class PeriodicityVerdict:
    """One of three shapes: periodic, pre-row, or merely eventually periodic.

    * periodic: ``A^(k+1) == A`` with k minimal (tail 1).  Field ``k``.
    * prerow: some power of A is a row PLM; ``e`` is the least such exponent
      and ``m`` the constant row.  Row PLMs themselves are reported periodic
      (k = 1) instead, with ``is_prerow`` still true.
    * eventually_periodic: neither; fields ``s`` and ``t`` from the power
      cycle.  Does not occur below dimension 4.
    """

    kind: str
    k: int | None = None
    e: int | None = None
    m: int | None = None
    s: int | None = None
    t: int | None = None
    is_prerow: bool = False

    @classmethod
    def periodic(cls, k: int, is_prerow: bool) -> "PeriodicityVerdict":
        return cls(kind="periodic", k=k, is_prerow=is_prerow)

    @classmethod
    def prerow(cls, e: int, m: int) -> "PeriodicityVerdict":
        return cls(kind="prerow", e=e, m=m, is_prerow=True)

    @classmethod
    def eventually_periodic(cls, s: int, t: int) -> "PeriodicityVerdict":
        return cls(kind="eventually_periodic", s=s, t=t, is_prerow=False)

    def to_json_dict(self) -> dict:
        if self.kind == "periodic":
            return {"periodicity": "periodic", "k": self.k, "is_prerow": self.is_prerow}
        if self.kind == "prerow":
            return {"periodicity": "prerow", "e": self.e, "m": self.m, "is_prerow": True}
        return {
            "periodicity": "eventually_periodic",
            "s": self.s,
            "t": self.t,
            "is_prerow": False,
        }


@dataclass(frozen=True)
class CharPoly:
    """det(xI - A) with exact integer coefficients, leading first, monic."""

    degree: int
    coefficients: tuple[int, ...]


@dataclass(frozen=True)
class EigenReport:
    has_zero: bool
    roots_of_unity_ok: bool
    period: int
    numeric_eigenvalues: tuple[complex, ...]
    spectral_radius_numeric: float

    def to_json_dict(self) -> dict:
        return {
            "has_zero": self.has_zero,
            "roots_of_unity_ok": self.roots_of_unity_ok,
            "period": self.period,
            "numeric_eigenvalues": [[z.real, z.imag] for z in self.numeric_eigenvalues],
            "spectral_radius_numeric": self.spectral_radius_numeric,
        }


def power(a: Plm, k: int) -> Plm:
    """A^k by repeated squaring; A^0 is the identity."""
    if k < 0:
        raise ValueError("PLMs are not invertible in general; exponent must be >= 0")
    result = identity(a.dim)
    base = a
    while k:
        if k & 1:
            result = multiply(result, base)
        base = multiply(base, base)
        k >>= 1
    return result


def power_cycle(a: Plm) -> PowerCycle:
    """Walk A, A^2, ... until a repeat; first collision gives tail and period."""
    seen: dict[Plm, int] = {}
    p = a
    k = 1
    while p not in seen:
        seen[p] = k
        p = multiply(p, a)
        k += 1
    s = seen[p]
    return PowerCycle(tail=s, period=k - s)


def periodicity(a: Plm) -> PeriodicityVerdict:
    """Classify the power behavior of A.

    The scan for a row-PLM power only needs exponents up to tail + period: the
    powers repeat beyond that point, so no new matrices appear.
    """
    cyc = power_cycle(a)
    s, t = cyc.tail, cyc.period
    row_exp = None
    row_m = None
    p = a
    for e in range(1, s + t + 1):
        cm = p.colmap
        if all(r == cm[0] for r in cm):
            row_exp, row_m = e, cm[0]
            break
        p = multiply(p, a)
    if s == 1:
        return PeriodicityVerdict.periodic(k=t, is_prerow=row_exp is not None)
    if row_exp is not None:
        return PeriodicityVerdict.prerow(e=row_exp, m=row_m)
    return PeriodicityVerdict.eventually_periodic(s=s, t=t)


def char_poly(a: Plm) -> CharPoly:
    """Characteristic polynomial via the trace recursion, exactly.

    M_1 = A, c_k = -trace(M_k)/k, M_{k+1} = A(M_k + c_k I); every division is
    exact for an integer matrix, which the remainder check enforces.
    """
    d = a.dim
    rows = [list(r) for r in to_dense(a).entries]
    coeffs = [1]
    m = [row[:] for row in rows]
    for k in range(1, d + 1):
        tr = sum(m[i][i] for i in range(d))
        c, rem = divmod(-tr, k)
        if rem:
            raise AssertionError(f"trace recursion produced a non-integer at step {k}")
        coeffs.append(c)
        if k == d:
            break
        for i in range(d):
            m[i][i] += c
        m = [
            [sum(rows[i][p] * m[p][j] for p in range(d)) for j in range(d)]
            for i in range(d)
        ]
    return CharPoly(degree=d, coefficients=tuple(coeffs))


def one_norm(a: Plm) -> int:
    """Maximum column sum of the dense form.  Always 1 for a PLM."""
    dense = to_dense(a).entries
    d = a.dim
    return max(sum(dense[i][j] for i in range(d)) for j in range(d))


# --- polynomial helpers over Fraction, coefficients leading-first ---

def _trim(p: list[Fraction]) -> list[Fraction]:
    i = 0
    while i < len(p) and p[i] == 0:
        i += 1
    return p[i:]


def _deriv(p: list[Fraction]) -> list[Fraction]:
    n = len(p) - 1
    return _trim([p[i] * (n - i) for i in range(n)])


def _monic(p: list[Fraction]) -> list[Fraction]:
    lead = p[0]
    return [c / lead for c in p]


def _polydivmod(p: list[Fraction], q: list[Fraction]):
    rem = list(p)
    quo: list[Fraction] = []
    while len(rem) >= len(q) and rem:
        factor = rem[0] / q[0]
        quo.append(factor)
        for i in range(len(q)):
            rem[i] = rem[i] - factor * q[i]
        rem = rem[1:]
    return _trim(quo) if quo else [], _trim(rem)


def _div_exact(p: list[Fraction], q: list[Fraction]) -> list[Fraction]:
    quo, rem = _polydivmod(p, q)
    if rem:
        raise AssertionError("polynomial division expected to be exact")
    return quo


def _polygcd(p: list[Fraction], q: list[Fraction]) -> list[Fraction]:
    p, q = _trim(list(p)), _trim(list(q))
    while q:
        _, r = _polydivmod(p, q)
        p, q = q, r
    return _monic(p) if p else []


def _squarefree_factors(coeffs: tuple[int, ...]) -> list[tuple[list[Fraction], int]]:
    """Yun's square-free decomposition of a monic polynomial.

    Returns (factor, multiplicity) pairs with each factor monic and
    square-free; the product of factor^multiplicity is the input.
    """
    f = [Fraction(c) for c in coeffs]
    if len(f) <= 1:
        return []
    fp = _deriv(f)
    a0 = _polygcd(f, fp)
    b = _div_exact(f, a0)
    c = _div_exact(fp, a0)
    d = _trim([x - y for x, y in _pad(c, _deriv(b))])
    out: list[tuple[list[Fraction], int]] = []
    i = 1
    while len(b) > 1:
        ai = _polygcd(b, d) if d else _monic(b)
        if len(ai) > 1:
            out.append((ai, i))
        b = _div_exact(b, ai)
        c = _div_exact(d, ai) if d else []
        d = _trim([x - y for x, y in _pad(c, _deriv(b))])
        i += 1
    return out


def _pad(p: list[Fraction], q: list[Fraction]):
    n = max(len(p), len(q))
    p = [Fraction(0)] * (n - len(p)) + p
    q = [Fraction(0)] * (n - len(q)) + q
    return zip(p, q)


def _roots_with_multiplicity(cp: CharPoly) -> list[complex]:
    roots: list[complex] = []
    for factor, mult in _squarefree_factors(cp.coefficients):
        found = np.roots([float(c) for c in factor])
        for z in found:
            roots.extend([complex(z)] * mult)
    if len(roots) != cp.degree:
        raise RootFindingError(
            f"found {len(roots)} roots for a degree-{cp.degree} polynomial"
        )
    roots.sort(key=lambda z: (z.real, z.imag))
    return roots


def max_unity_deviation(roots, period: int, tol: float) -> float:
    """Worst distance of any root from {0} union the period-th roots of unity.

    A root counts as zero when its modulus is within tol; otherwise its
    deviation is how far it sits from the unit circle or from satisfying
    ``z^period == 1``, whichever is worse.
    """
    worst = 0.0
    for z in roots:
        if abs(z) <= tol:
            continue
        dev = max(abs(abs(z) - 1.0), abs(z**period - 1.0))
        worst = max(worst, dev)
    return worst


def eigen_check(a: Plm, tol: float = DEFAULT_TOL) -> EigenReport:
    """Exact eigenvalue verdicts with a numeric cross-check.

    ``roots_of_unity_ok`` re-verifies the matrix identity A^(s+t) == A^s; the
    numeric side then confirms every characteristic root is within ``tol`` of
    zero or of a t-th root of unity, raising :class:`RootFindingError` if the
    computed roots ever disagree with that exact guarantee.
    """
    if tol <= 0:
        raise ValueError(f"tolerance must be positive, got {tol}")
    cyc = power_cycle(a)
    exact_ok = power(a, cyc.tail + cyc.period) == power(a, cyc.tail)
    cp = char_poly(a)
    has_zero = cp.coefficients[-1] == 0
    try:
        roots = _roots_with_multiplicity(cp)
    except np.linalg.LinAlgError as exc:
        raise RootFindingError(f"numeric root finding failed: {exc}") from exc
    dev = max_unity_deviation(roots, cyc.period, tol)
    if dev > tol:
        raise RootFindingError(
            f"some root sits {dev:.3e} away from the allowed spectrum", deviation=dev
        )
    radius = max(abs(z) for z in roots)
    return EigenReport(
        has_zero=has_zero,
        roots_of_unity_ok=exact_ok,
        period=cyc.period,
        numeric_eigenvalues=tuple(roots),
        spectral_radius_numeric=radius,
    )
