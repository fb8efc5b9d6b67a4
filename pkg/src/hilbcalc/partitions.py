"""Distributions (unordered partitions recorded by block size) and their operations."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Iterable, Iterator, Mapping

from .staircase import DomainError


@dataclass(frozen=True)
class Distribution:
    """Frequency map size -> multiplicity, stored as sorted (size, mult) pairs."""

    items: tuple[tuple[int, int], ...] = ()

    @classmethod
    def from_freq(cls, freq: Mapping[int, int]) -> "Distribution":
        for size, mult in freq.items():
            if size < 1 or mult < 0:
                raise DomainError(f"bad block ({size}, {mult})")
        return cls(tuple(sorted(((s, k) for s, k in freq.items() if k), reverse=True)))

    @classmethod
    def from_sizes(cls, sizes: Iterable[int]) -> "Distribution":
        freq: dict[int, int] = {}
        for s in sizes:
            freq[s] = freq.get(s, 0) + 1
        return cls.from_freq(freq)

    @property
    def freq(self) -> dict[int, int]:
        return dict(self.items)

    def mult(self, size: int) -> int:
        return self.freq.get(size, 0)

    def distinct_sizes(self) -> list[int]:
        return [s for s, _ in self.items]

    def sizes(self) -> list[int]:
        """Loose form: every block listed, largest first."""
        return [s for s, k in self.items for _ in range(k)]

    @property
    def total_length(self) -> int:
        return sum(s * k for s, k in self.items)

    @property
    def block_count(self) -> int:
        return sum(k for _, k in self.items)

    def __str__(self) -> str:
        if not self.items:
            return "()"
        return "(" + ",".join(str(s) if k == 1 else f"{s}^{k}" for s, k in self.items) + ")"


class _EmptyMarker:
    """The value of removing a block size that is not present."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "EMPTY"


EMPTY = _EmptyMarker()


def coprod(d1: Distribution, d2: Distribution) -> Distribution:
    freq = d1.freq
    for s, k in d2.items:
        freq[s] = freq.get(s, 0) + k
    return Distribution.from_freq(freq)


def remove_block(d: Distribution, k: int) -> Distribution | _EmptyMarker:
    freq = d.freq
    if freq.get(k, 0) == 0:
        return EMPTY
    freq[k] -= 1
    return Distribution.from_freq(freq)


def promote(d: Distribution, ell: int) -> Distribution:
    """Replace one block of the ell-th largest distinct size n by one of size n+1 (1-based)."""
    sizes = d.distinct_sizes()
    if not 1 <= ell <= len(sizes):
        raise DomainError(f"index {ell} out of range for {d}")
    n = sizes[ell - 1]
    freq = d.freq
    freq[n] -= 1
    freq[n + 1] = freq.get(n + 1, 0) + 1
    return Distribution.from_freq(freq)


def unite(d: Distribution, a: int, b: int) -> Distribution:
    freq = d.freq
    need = {a: 2} if a == b else {a: 1, b: 1}
    for s, k in need.items():
        if freq.get(s, 0) < k:
            raise DomainError(f"{d} lacks blocks to unite {a} and {b}")
    for s, k in need.items():
        freq[s] -= k
    freq[a + b] = freq.get(a + b, 0) + 1
    return Distribution.from_freq(freq)


def aut_count(d: Distribution | Iterable[int]) -> int:
    if not isinstance(d, Distribution):
        d = Distribution.from_sizes(d)
    out = 1
    for _, k in d.items:
        out *= factorial(k)
    return out


def nu_coeff(d: Distribution, a: int, b: int) -> Fraction:
    """Ratio of symmetrization degrees when a block of size a is united with one of size b."""
    mu = d.freq
    if a == b:
        denom = mu.get(a, 0) * (mu.get(a, 0) - 1)
    else:
        denom = mu.get(a, 0) * mu.get(b, 0)
    if denom == 0:
        raise DomainError(f"{d} has no pair of blocks of sizes {a}, {b}")
    return Fraction(mu.get(a + b, 0) + 1, denom)


@dataclass(frozen=True)
class MultiDistribution:
    """A nodebound block size together with the x-branch and y-branch distributions."""

    nodebound: int
    x_part: Distribution
    y_part: Distribution

    @property
    def total_length(self) -> int:
        return self.nodebound + self.x_part.total_length + self.y_part.total_length


def scroll_ratio(phi: MultiDistribution, parent: Distribution, separating: bool) -> Fraction:
    """a(n')a(n'')/a(n) for a node scroll split off from the distribution ``parent``."""
    rest = remove_block(parent, phi.nodebound)
    if rest is EMPTY or coprod(phi.x_part, phi.y_part) != rest:
        raise DomainError(f"{phi} is not a split of {parent}")
    mu = parent.mult(phi.nodebound)
    if separating:
        return Fraction(1, mu * comb(mu - 1, phi.x_part.mult(phi.nodebound)))
    return Fraction(1, mu)


def splits(d: Distribution) -> Iterator[tuple[Distribution, Distribution]]:
    """All ordered pairs (d', d'') with d' + d'' = d as distributions."""
    items = d.items

    def rec(i: int):
        if i == len(items):
            yield {}, {}
            return
        s, k = items[i]
        for left in range(k + 1):
            for f1, f2 in rec(i + 1):
                g1, g2 = dict(f1), dict(f2)
                if left:
                    g1[s] = left
                if k - left:
                    g2[s] = k - left
                yield g1, g2

    for f1, f2 in rec(0):
        yield Distribution.from_freq(f1), Distribution.from_freq(f2)


def partitions_of(m: int, max_part: int | None = None) -> Iterator[Distribution]:
    """All distributions of total length m."""
    max_part = m if max_part is None else max_part

    def rec(rest: int, cap: int):
        if rest == 0:
            yield []
            return
        for p in range(min(rest, cap), 0, -1):
            for tail in rec(rest - p, p):
                yield [p] + tail

    for sizes in rec(m, max_part):
        yield Distribution.from_sizes(sizes)
