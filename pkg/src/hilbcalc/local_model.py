"""Exact polynomial checks of the local model of a node: x_i y_i = t for each point.

Polynomials live in Q[x_1..x_m, y_1..y_m, t]; the normal form rewrites every
x_i y_i to t, which leaves a unique representative modulo the relations.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Iterable, Mapping, Sequence

from .staircase import DomainError

Exponent = tuple[int, ...]


class MPoly:
    """Sparse polynomial with exact rational coefficients in a fixed number of variables.

    ``pairs`` lists index pairs (a, b, c) meaning var_a * var_b = var_c; when given,
    every product is reduced to normal form.
    """

    __slots__ = ("nvars", "terms", "pairs")

    def __init__(self, nvars: int, terms: Mapping[Exponent, Fraction] | None = None,
                 pairs: Sequence[tuple[int, int, int]] = ()):
        self.nvars = nvars
        self.pairs = tuple(pairs)
        clean: dict[Exponent, Fraction] = {}
        for e, c in (terms or {}).items():
            if c:
                e = self._reduce(tuple(e))
                clean[e] = clean.get(e, Fraction(0)) + Fraction(c)
        self.terms = {e: c for e, c in clean.items() if c}

    def _reduce(self, e: Exponent) -> Exponent:
        if not self.pairs:
            return e
        e = list(e)
        for a, b, c in self.pairs:
            k = min(e[a], e[b])
            if k:
                e[a] -= k
                e[b] -= k
                e[c] += k
        return tuple(e)

    def _like(self, terms) -> "MPoly":
        return MPoly(self.nvars, terms, self.pairs)

    @classmethod
    def const(cls, nvars: int, c, pairs=()) -> "MPoly":
        return cls(nvars, {(0,) * nvars: Fraction(c)}, pairs)

    @classmethod
    def var(cls, nvars: int, index: int, power: int = 1, pairs=()) -> "MPoly":
        e = [0] * nvars
        e[index] = power
        return cls(nvars, {tuple(e): Fraction(1)}, pairs)

    def __add__(self, other: "MPoly") -> "MPoly":
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return self._like(out)

    def __neg__(self) -> "MPoly":
        return self._like({e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "MPoly") -> "MPoly":
        return self + (-other)

    def __mul__(self, other) -> "MPoly":
        if not isinstance(other, MPoly):
            c = Fraction(other)
            return self._like({e: v * c for e, v in self.terms.items()})
        out: dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = self._reduce(tuple(a + b for a, b in zip(e1, e2)))
                out[e] = out.get(e, 0) + c1 * c2
        return self._like(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "MPoly":
        out = MPoly.const(self.nvars, 1, self.pairs)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, MPoly) and self.terms == other.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def leading(self) -> tuple[Exponent, Fraction]:
        e = max(self.terms)
        return e, self.terms[e]

    def exact_div(self, divisor: "MPoly") -> "MPoly":
        """Quotient in the free polynomial ring (no relations); raises if inexact."""
        if self.pairs or divisor.pairs:
            raise DomainError("exact division is only defined without relations")
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        rem = dict(self.terms)
        quot: dict[Exponent, Fraction] = {}
        de, dc = divisor.leading()
        while rem:
            e = max(rem)
            c = rem[e]
            shift = tuple(a - b for a, b in zip(e, de))
            if any(s < 0 for s in shift):
                raise DomainError("division is not exact")
            q = c / dc
            quot[shift] = quot.get(shift, 0) + q
            for e2, c2 in divisor.terms.items():
                k = tuple(a + b for a, b in zip(shift, e2))
                v = rem.get(k, 0) - q * c2
                if v:
                    rem[k] = v
                else:
                    rem.pop(k, None)
        return MPoly(self.nvars, quot)

    def substitute(self, values: Sequence) -> object:
        """Evaluate with one value per variable (values must support * and **)."""
        total = 0
        for e, c in self.terms.items():
            term = c
            for v, k in zip(values, e):
                if k:
                    term = term * v ** k
            total = total + term
        return total

    def with_relations(self, pairs) -> "MPoly":
        return MPoly(self.nvars, self.terms, pairs)

    def __repr__(self) -> str:
        return f"MPoly({self.terms})"


def bareiss_det(matrix: list[list[MPoly]]) -> MPoly:
    """Fraction-free determinant over a polynomial ring without relations."""
    n = len(matrix)
    if n == 0:
        raise DomainError("empty matrix")
    a = [list(row) for row in matrix]
    nvars = a[0][0].nvars
    sign = 1
    prev = MPoly.const(nvars, 1)
    for k in range(n - 1):
        if a[k][k].is_zero():
            swap = next((r for r in range(k + 1, n) if not a[r][k].is_zero()), None)
            if swap is None:
                return MPoly(nvars)
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]).exact_div(prev)
        prev = a[k][k]
    return a[n - 1][n - 1] * sign


def leibniz_det(matrix: list[list[MPoly]]) -> MPoly:
    """Cofactor expansion along the first row; an independent check on ``bareiss_det``."""
    n = len(matrix)
    if n == 1:
        return matrix[0][0]
    total = MPoly(matrix[0][0].nvars, {}, matrix[0][0].pairs)
    for j in range(n):
        if matrix[0][j].is_zero():
            continue
        minor = [row[:j] + row[j + 1:] for row in matrix[1:]]
        term = matrix[0][j] * leibniz_det(minor)
        total = total + (term if j % 2 == 0 else -term)
    return total


# -- the local model ------------------------------------------------------------------

@dataclass(frozen=True)
class LocalModel:
    """Variables x_1..x_m (indices 0..m-1), y_1..y_m (m..2m-1) and t (2m)."""

    m: int

    @property
    def nvars(self) -> int:
        return 2 * self.m + 1

    @property
    def relations(self) -> tuple[tuple[int, int, int], ...]:
        return tuple((i, self.m + i, 2 * self.m) for i in range(self.m))

    def x(self, i: int, power: int = 1, reduced: bool = True) -> MPoly:
        return MPoly.var(self.nvars, i - 1, power, self.relations if reduced else ())

    def y(self, i: int, power: int = 1, reduced: bool = True) -> MPoly:
        return MPoly.var(self.nvars, self.m + i - 1, power, self.relations if reduced else ())

    def t(self, power: int = 1) -> MPoly:
        return MPoly.var(self.nvars, 2 * self.m, power, self.relations)

    def one(self) -> MPoly:
        return MPoly.const(self.nvars, 1, self.relations)

    def elementary(self, side: str, j: int) -> MPoly:
        """sigma^x_j or sigma^y_j: the j-th elementary symmetric function."""
        var = self.x if side == "x" else self.y
        total = MPoly(self.nvars, {}, self.relations)
        for subset in combinations(range(1, self.m + 1), j):
            prod = self.one()
            for i in subset:
                prod = prod * var(i)
            total = total + prod
        return total

    def nf(self, p: MPoly) -> MPoly:
        return p.with_relations(self.relations)


def mixed_vandermonde_matrix(m: int, i: int) -> list[list[MPoly]]:
    """Rows 1, x, ..., x^(m-i), then y, ..., y^(i-1); one column per point."""
    if not 1 <= i <= m:
        raise DomainError(f"need 1 <= i <= m, got i={i}, m={m}")
    model = LocalModel(m)
    rows = [[model.x(c, a, reduced=False) for c in range(1, m + 1)] for a in range(m - i + 1)]
    rows += [[model.y(c, b, reduced=False) for c in range(1, m + 1)] for b in range(1, i)]
    return rows


def mixed_vandermonde(m: int, i: int) -> MPoly:
    """det V^m_i by Bareiss elimination, reduced to normal form."""
    det = bareiss_det(mixed_vandermonde_matrix(m, i))
    return LocalModel(m).nf(det)


@dataclass
class CheckReport:
    name: str
    passed: bool = True
    details: list[dict] = field(default_factory=list)

    def record(self, ok: bool, **info) -> None:
        self.passed = self.passed and ok
        self.details.append({"ok": ok, **info})

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, "details": self.details}


def _residual_text(p: MPoly) -> str:
    return "0" if p.is_zero() else f"{len(p.terms)} nonzero terms"


def verify_sigma_relations(m: int) -> CheckReport:
    """sigma^y_m sigma^x_j = t^j sigma^y_(m-j), the x/y mirror, and
    t^(m-i) sigma^y_(m-j) = t^(m-i-j) sigma^x_j sigma^y_m for i + j <= m."""
    if m < 1:
        raise DomainError("m must be at least 1")
    model = LocalModel(m)
    sx = [model.elementary("x", j) for j in range(m + 1)]
    sy = [model.elementary("y", j) for j in range(m + 1)]
    report = CheckReport(f"sigma relations, m={m}")
    for j in range(m + 1):
        r1 = sy[m] * sx[j] - model.t(j) * sy[m - j]
        r2 = sx[m] * sy[j] - model.t(j) * sx[m - j]
        report.record(r1.is_zero(), identity="sy_m*sx_j = t^j*sy_(m-j)", j=j, residual=_residual_text(r1))
        report.record(r2.is_zero(), identity="sx_m*sy_j = t^j*sx_(m-j)", j=j, residual=_residual_text(r2))
        for i in range(m - j + 1):
            r3 = model.t(m - i) * sy[m - j] - model.t(m - i - j) * sx[j] * sy[m]
            r4 = model.t(m - i) * sx[m - j] - model.t(m - i - j) * sy[j] * sx[m]
            report.record(r3.is_zero(), identity="t^(m-i)*sy_(m-j) = t^(m-i-j)*sx_j*sy_m", i=i, j=j,
                          residual=_residual_text(r3))
            report.record(r4.is_zero(), identity="t^(m-i)*sx_(m-j) = t^(m-i-j)*sy_j*sx_m", i=i, j=j,
                          residual=_residual_text(r4))
    return report


def _divide_by_t_power(p: MPoly, k: int, model: LocalModel) -> MPoly | None:
    """p / t^k in normal form, or None if some monomial has too small a t-exponent."""
    tidx = 2 * model.m
    out = {}
    for e, c in p.terms.items():
        if e[tidx] < k:
            return None
        e2 = list(e)
        e2[tidx] -= k
        out[tuple(e2)] = c
    return MPoly(p.nvars, out, model.relations)


def verify_G_recursion(m: int) -> CheckReport:
    """sigma^y_m det V_i = +-t^(m-i) det V_(i+1) for i = 1..m-1, and the chain
    G_(i+1) = sigma^y_m G_i / t^(m-i) starting from G_1 = prod_(i<j) (x_i - x_j).

    Each step records which sign holds and whether it is the displayed sign
    (-1)^(m-i+1).
    """
    if m < 2:
        raise DomainError("m must be at least 2")
    model = LocalModel(m)
    sym = model.elementary("y", m)
    dets = [None] + [mixed_vandermonde(m, i) for i in range(1, m + 1)]
    report = CheckReport(f"G recursion, m={m}")
    for i in range(1, m):
        lhs = sym * dets[i]
        rhs = model.t(m - i) * dets[i + 1]
        displayed = (-1) ** (m - i + 1)
        sign = next((s for s in (1, -1) if (lhs - rhs * s).is_zero()), None)
        report.record(sign is not None, identity="sy_m*det V_i = +-t^(m-i)*det V_(i+1)", i=i,
                      sign=sign, displayed_sign=displayed, displayed_sign_holds=sign == displayed,
                      residual="0" if sign is not None else _residual_text(lhs - rhs * displayed))
    g = model.one()
    for a in range(1, m + 1):
        for b in range(a + 1, m + 1):
            g = g * (model.x(a) - model.x(b))
    for i in range(1, m + 1):
        sign = next((s for s in (1, -1) if (g - dets[i] * s).is_zero()), None)
        report.record(sign is not None, identity="G_i = +-det V_i", i=i, sign=sign)
        if i < m:
            nxt = _divide_by_t_power(sym * g, m - i, model)
            report.record(nxt is not None, identity="t^(m-i) divides sy_m*G_i", i=i)
            if nxt is None:
                break
            g = nxt
    return report


# -- vanishing orders along the special fibre ------------------------------------------

def _laurent_valuation(coeffs: Mapping[int, Fraction]) -> int | None:
    nonzero = [k for k, c in coeffs.items() if c]
    return min(nonzero) if nonzero else None


def _series_eval(p: MPoly, values: Sequence[dict[int, Fraction]]) -> dict[int, Fraction]:
    """Evaluate p with each variable a Laurent polynomial in s (dict power -> coeff)."""
    def mul(a, b):
        out: dict[int, Fraction] = {}
        for k1, c1 in a.items():
            for k2, c2 in b.items():
                out[k1 + k2] = out.get(k1 + k2, 0) + c1 * c2
        return out

    total: dict[int, Fraction] = {}
    cache: dict[tuple[int, int], dict[int, Fraction]] = {}
    for e, c in p.terms.items():
        term = {0: c}
        for idx, k in enumerate(e):
            if k:
                key = (idx, k)
                if key not in cache:
                    pw = {0: Fraction(1)}
                    for _ in range(k):
                        pw = mul(pw, values[idx])
                    cache[key] = pw
                term = mul(term, cache[key])
        for k, v in term.items():
            total[k] = total.get(k, 0) + v
    return total


def arc_valuation(m: int, j: int, generic_x: Iterable[int], rng: random.Random,
                  retries: int = 8) -> int:
    """s-adic order of G_j = det V^m_j along the arc through the component where
    y_i = 0 for i in ``generic_x`` and x_i = 0 otherwise.

    Generic parameters are random nonzero rationals; a draw with colliding
    parameters is redrawn. The order is the minimum over draws, since a special
    draw can only raise it.
    """
    generic_x = set(generic_x)
    det = bareiss_det(mixed_vandermonde_matrix(m, j))
    best = None
    for _ in range(retries):
        params = []
        while len(set(params)) < m:
            params = [Fraction(rng.randint(1, 97), rng.randint(1, 97)) * rng.choice((1, -1))
                      for _ in range(m)]
        values: list[dict[int, Fraction]] = [None] * (2 * m + 1)
        for i in range(m):
            p = params[i]
            if i + 1 in generic_x:
                values[i] = {0: p}
                values[m + i] = {1: 1 / p}
            else:
                values[m + i] = {0: p}
                values[i] = {1: 1 / p}
        values[2 * m] = {1: Fraction(1)}
        val = _laurent_valuation(_series_eval(det, values))
        if val is not None:
            best = val if best is None else min(best, val)
    if best is None:
        raise DomainError("every draw was degenerate")
    return best


def law_order(k: int, j: int) -> int:
    """The predicted order (k - j)^2 + (k - j)."""
    return (k - j) ** 2 + (k - j)


def component_order(m: int, k: int, j: int) -> int:
    """Order of G_j along a component with k generic x-coordinates, by the
    cheapest assignment of matrix rows to columns: with d = m - k - j + 1 it is
    d(d - 1)/2."""
    d = m - k - j + 1
    return d * (d - 1) // 2


@dataclass
class VanishingTable:
    m: int
    measured: dict[tuple[int, int], int]

    def law_holds(self) -> bool:
        return all(v == law_order(k, j) for (k, j), v in self.measured.items())

    def mismatches(self) -> list[tuple[int, int, int, int]]:
        return [(k, j, v, law_order(k, j)) for (k, j), v in sorted(self.measured.items())
                if v != law_order(k, j)]

    def rows(self) -> list[list[int]]:
        return [[self.measured[(k, j)] for j in range(1, self.m + 1)] for k in range(self.m + 1)]

    def to_json(self) -> dict:
        return {"m": self.m, "rows_k_by_j": self.rows(), "law_holds": self.law_holds(),
                "mismatches": [{"k": k, "j": j, "measured": v, "law": w}
                               for k, j, v, w in self.mismatches()]}


def vanishing_order_table(m: int, seed: int | None = 0) -> VanishingTable:
    """Order of G_j along a component of the special fibre with k generic
    x-coordinates, for k = 0..m and j = 1..m."""
    if not 2 <= m <= 5:
        raise DomainError("vanishing orders are tabulated for 2 <= m <= 5")
    rng = random.Random(seed)
    measured = {}
    for k in range(m + 1):
        for j in range(1, m + 1):
            measured[(k, j)] = arc_valuation(m, j, range(1, k + 1), rng)
    return VanishingTable(m, measured)


def verify_small_diagonal_restriction(m: int) -> CheckReport:
    """Leading behaviour of G_i near the small diagonal x_1 = ... = x_m = x, y = t/x.

    Substitute x_c = x u_c, y_c = y / u_c with u_c = 1 + eps a_c. After clearing the
    unit factor prod u_c^(i-1), the lowest eps-order term of det V^m_i must be a
    single monomial x^C(m-i+1,2) y^C(i,2) eps^C(m,2).
    """
    if not 2 <= m <= 4:
        raise DomainError("the small diagonal check runs for 2 <= m <= 4")
    report = CheckReport(f"small diagonal restriction, m={m}")
    nv = 3  # x, y, eps
    xv, yv, ev = (MPoly.var(nv, k) for k in range(3))
    one = MPoly.const(nv, 1)
    slopes = [Fraction(c + 1) for c in range(m)]
    for i in range(1, m + 1):
        u = [one + ev * a for a in slopes]
        rows = [[xv ** a * u[c] ** (a + i - 1) for c in range(m)] for a in range(m - i + 1)]
        rows += [[yv ** b * u[c] ** (i - 1 - b) for c in range(m)] for b in range(1, i)]
        det = bareiss_det(rows)
        low = min(e[2] for e in det.terms)
        lead = {e: c for e, c in det.terms.items() if e[2] == low}
        expected = (comb(m - i + 1, 2), comb(i, 2), comb(m, 2))
        ok = low == comb(m, 2) and list(lead) == [expected]
        report.record(ok, i=i, leading_exponents=sorted(lead), expected=expected)
    return report
