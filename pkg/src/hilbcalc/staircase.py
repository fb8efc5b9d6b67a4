"""Staircase polygons, the invariants alpha_m and beta_{m,j}, and the ideals J_m.

Every area here is a count of lattice boxes: the integer point (a, b) is
counted when the unit square with lower-left corner (a, b) lies in the
finite region S. Equivalently, x^a y^b is not in the monomial ideal of the
upper region R.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable


class DomainError(ValueError):
    pass


@dataclass(frozen=True)
class MonomialIdeal2D:
    """Monomial ideal in k[x, y], kept as its minimal generators (a, b) ~ x^a y^b."""

    generators: tuple[tuple[int, int], ...]

    @classmethod
    def from_exponents(cls, exps: Iterable[tuple[int, int]]) -> "MonomialIdeal2D":
        pts = set(exps)
        minimal = [p for p in pts
                   if not any(q != p and q[0] <= p[0] and q[1] <= p[1] for q in pts)]
        return cls(tuple(sorted(minimal)))

    def contains(self, a: int, b: int) -> bool:
        return any(a >= g0 and b >= g1 for g0, g1 in self.generators)

    def cobasis(self) -> list[tuple[int, int]]:
        """Standard monomials; raises if the quotient is infinite."""
        if not self.generators:
            raise DomainError("zero ideal has infinite colength")
        xs = [g for g in self.generators if g[1] == 0]
        ys = [g for g in self.generators if g[0] == 0]
        if not xs or not ys:
            raise DomainError("ideal is not primary to the origin")
        xmax, ymax = xs[0][0], ys[0][1]
        return [(a, b) for a in range(xmax) for b in range(ymax) if not self.contains(a, b)]

    def colength(self) -> int:
        return len(self.cobasis())


@dataclass(frozen=True)
class SpecialPolygon:
    """Staircase region given by the corners of its upper region.

    ``corners`` are the minimal lattice points of R, sorted by x. The finite
    polygon S is the closure of the complement of R in the first quadrant.
    Translated copies (for R_m + P_j) are allowed to have negative
    coordinates; only their intersection with the quadrant matters.
    """

    corners: tuple[tuple[int, int], ...]
    # extra pieces of R: translates of other staircases and half planes
    translates: tuple[tuple[tuple[int, int], ...], ...] = ()
    y_cap: int | None = None
    kind: str = "finite"

    def in_upper_region(self, a: int, b: int) -> bool:
        if self.y_cap is not None and b >= self.y_cap:
            return True
        for stair in (self.corners,) + self.translates:
            if any(a >= cx and b >= cy for cx, cy in stair):
                return True
        return False

    def bounding_box(self) -> tuple[int, int]:
        xs = [c[0] for c in self.corners]
        ys = [c[1] for c in self.corners]
        m = len(self.corners)
        return max(xs) + m, max(ys) + m

    def column_heights(self) -> list[int]:
        """Number of lattice points of S in each column x = 0, 1, ... of the bounding box.

        Every piece of R is closed upwards, so S meets each column in an initial
        segment whose length is the lowest point of R in that column.
        """
        xmax, ymax = self.bounding_box()
        heights = []
        for a in range(xmax + 1):
            low = ymax + 1 if self.y_cap is None else min(self.y_cap, ymax + 1)
            for stair in (self.corners,) + self.translates:
                for cx, cy in stair:
                    if a >= cx:
                        low = min(low, max(cy, 0))
            heights.append(low)
        return heights

    def interior_points(self) -> list[tuple[int, int]]:
        return [(a, b) for a, h in enumerate(self.column_heights()) for b in range(h)]

    def area(self) -> int:
        return sum(self.column_heights())

    def as_partition(self) -> list[int]:
        """Column heights of S, nonincreasing (the Young diagram reading)."""
        return sorted((h for h in self.column_heights() if h), reverse=True)


def _check_m(m: int) -> None:
    if not isinstance(m, int) or m < 1:
        raise DomainError(f"m must be a positive integer, got {m!r}")


def _check_j(m: int, j: int) -> None:
    _check_m(m)
    if not 1 <= j <= m - 1:
        raise DomainError(f"j must lie in [1, {m - 1}], got {j}")


def jm_exponents(m: int) -> list[tuple[int, int]]:
    # generator x^C(m-i+1,2) y^C(i,2) for i = 1..m
    return [(comb(m - i + 1, 2), comb(i, 2)) for i in range(1, m + 1)]


def ideal_Jm(m: int) -> MonomialIdeal2D:
    _check_m(m)
    return MonomialIdeal2D.from_exponents(jm_exponents(m))


def basic_polygon(m: int) -> SpecialPolygon:
    _check_m(m)
    return SpecialPolygon(ideal_Jm(m).generators)


def alpha(m: int) -> int:
    return basic_polygon(m).area()


def alpha_closed_form(m: int) -> int:
    _check_m(m)
    return m * (m + 2) * (m * m - 1) // 24


def _shifted_polygon(m: int, j: int, dx: int) -> SpecialPolygon:
    # R_m together with its translates by k*(dx, -j), k >= 1, and the half plane y >= j.
    # A single translate is not enough once C(i,2) >= 2j: the relation can be
    # applied repeatedly (for m=5, j=4 one needs k=3), so all k are included
    # until the translate lies entirely below the x-axis.
    base = ideal_Jm(m).generators
    top = max(b for _, b in base)
    shifts = []
    k = 1
    while True:
        shifts.append(tuple((a + k * dx, b - k * j) for a, b in base))
        if top - k * j < 0:
            break
        k += 1
    return SpecialPolygon(base, translates=tuple(shifts), y_cap=j)


def beta_polygon(m: int, j: int) -> SpecialPolygon:
    _check_j(m, j)
    return _shifted_polygon(m, j, m - j)


def beta(m: int, j: int) -> int:
    return beta_polygon(m, j).area()


def beta_vector(m: int) -> tuple[int, ...]:
    _check_m(m)
    return tuple(beta(m, j) for j in range(1, m))


def beta_total(m: int) -> int:
    return sum(beta_vector(m))


def beta_shifted(m: int, j: int, sign: str) -> int:
    """Area for the translate P_j^- (sign '-') or P_j^+ (sign '+')."""
    _check_j(m, j)
    if sign in ("-", "minus"):
        return _shifted_polygon(m, j, m - j - 1).area()
    if sign in ("+", "plus"):
        return _shifted_polygon(m, j, m - j + 1).area()
    raise DomainError(f"sign must be '+' or '-', got {sign!r}")


# -- colength of J_m + (x^{m-j} - a y^j), two independent ways -----------------

def colength_by_cobasis(m: int, j: int) -> int:
    """Elimination recipe: drop y-degree >= j and the multiples forced by J_m."""
    _check_j(m, j)
    cob = ideal_Jm(m).cobasis()
    # x^A y^B in J_m with x^{m-j} = a y^j gives x^{A+t(m-j)} y^{max(B-tj,0)}
    killers = []
    for k in range(1, m + 1):
        A, B = comb(m + 1 - k, 2), comb(k, 2)
        t = 1
        while True:
            killers.append((A + t * (m - j), max(B - t * j, 0)))
            if B - t * j <= 0:
                break
            t += 1
    keep = [(a, b) for a, b in cob
            if b < j and not any(a >= ka and b >= kb for ka, kb in killers)]
    return len(keep)


def _sparse_rank(rows: list[dict[tuple[int, int], Fraction]]) -> int:
    pivots: dict[tuple[int, int], dict] = {}
    rank = 0
    for row in rows:
        row = dict(row)
        while row:
            lead = max(row)
            if lead not in pivots:
                pivots[lead] = row
                rank += 1
                break
            prow = pivots[lead]
            f = row[lead] / prow[lead]
            for k, v in prow.items():
                nv = row.get(k, 0) - f * v
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
    return rank


def colength_by_linear_algebra(m: int, j: int, a: Fraction) -> int:
    """dim of k[x,y]/(J_m + (x^{m-j} - a y^j)) by exact elimination in the finite quotient."""
    _check_j(m, j)
    if a == 0:
        raise DomainError("a must be nonzero")
    ideal = ideal_Jm(m)
    cob = ideal.cobasis()
    rows = []
    for p, q in cob:
        row: dict[tuple[int, int], Fraction] = {}
        t1 = (p + m - j, q)
        t2 = (p, q + j)
        if not ideal.contains(*t1):
            row[t1] = Fraction(1)
        if not ideal.contains(*t2):
            row[t2] = row.get(t2, Fraction(0)) - a
        if row:
            rows.append(row)
    return len(cob) - _sparse_rank(rows)


def random_nonzero_rational(rng: random.Random, bound: int = 9) -> Fraction:
    while True:
        num = rng.randint(-bound, bound)
        if num:
            return Fraction(num, rng.randint(1, bound))


def beta_via_colength(m: int, j: int, rng: random.Random | None = None,
                      retries: int = 5) -> int:
    """Colength characterization of beta, computed by both sub-oracles.

    The linear-algebra route is run with two independent random values of a;
    disagreement means an unlucky draw and triggers a retry.
    """
    rng = rng or random.Random(0)
    recipe = colength_by_cobasis(m, j)
    for _ in range(retries):
        a1, a2 = random_nonzero_rational(rng), random_nonzero_rational(rng)
        v1 = colength_by_linear_algebra(m, j, a1)
        v2 = colength_by_linear_algebra(m, j, a2)
        if v1 == v2:
            if v1 != recipe:
                raise ArithmeticError(
                    f"colength routes disagree at m={m}, j={j}: recipe {recipe}, linear algebra {v1}")
            return v1
    raise ArithmeticError(f"no generic value of a found for m={m}, j={j}")
