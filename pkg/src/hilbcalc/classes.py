"""Normal-form tautological classes on the relative Hilbert scheme of m points.

Conventions for the three kinds of generator:

* ``DiagonalTerm`` with blocks (n_1, a_1), ..., (n_r, a_r) is the class
  (1/A) f_*(a_1 x ... x a_r), where f maps the r-fold fibre product of X onto
  the diagonal locus and A is the product of factorials of the multiplicities
  of the block sizes. The unit class is the all-singleton term and the
  discriminant polarization is one half of the term with sizes (2, 1, ..., 1).
* ``NodeScrollTerm`` with ``section_power == 0`` is the node scroll over the
  locus where an n-fold point sits at a node and the remaining blocks lie on
  the normalized singular fibre. It carries the analogous normalization 1/A
  from the off-node blocks and is aggregated over all nodes.
* ``section_power == 1`` is the node section, the product of the scroll with
  the discriminant polarization.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from typing import Iterable, Iterator, Union

from .characters import ONE, Backend, BaseMonomial, CharExpr, PENCIL, get_backend
from .partitions import aut_count
from .staircase import DomainError

Block = tuple[int, BaseMonomial]


def canon_blocks(blocks: Iterable[Block]) -> tuple[Block, ...]:
    return tuple(sorted(blocks, key=lambda b: (-b[0], b[1])))


def _block_text(blocks: tuple[Block, ...]) -> str:
    return "|".join(str(s) for s, _ in blocks)


def _twist_text(blocks: tuple[Block, ...]) -> str:
    if all(t == ONE for _, t in blocks):
        return ""
    return "[" + ",".join(str(t) for _, t in blocks) + "]"


@dataclass(frozen=True)
class DiagonalTerm:
    m: int
    blocks: tuple[Block, ...]

    def __post_init__(self):
        object.__setattr__(self, "blocks", canon_blocks(self.blocks))
        if sum(s for s, _ in self.blocks) != self.m:
            raise DomainError(f"block sizes of {self.blocks} do not sum to {self.m}")

    @property
    def codim(self) -> int:
        return sum(s - 1 + t.degree for s, t in self.blocks)

    @property
    def aut(self) -> int:
        return aut_count(s for s, _ in self.blocks)

    def sort_key(self):
        return (0, self.m, tuple((-s, t) for s, t in self.blocks))

    def __str__(self) -> str:
        return f"Diag({_block_text(self.blocks)}){_twist_text(self.blocks)}"


@dataclass(frozen=True)
class NodeScrollTerm:
    """Node scroll (or node section) with every off-node block on the normalized fibre.

    Singular fibres are irreducible with one node, so both preimages of the node
    lie on the same normalization curve and the off-node blocks are not split
    by branch.
    """

    m: int
    j: int
    n: int
    blocks: tuple[Block, ...] = ()
    section_power: int = 0

    def __post_init__(self):
        object.__setattr__(self, "blocks", canon_blocks(self.blocks))
        if self.n < 2 or not 1 <= self.j <= self.n - 1:
            raise DomainError(f"scroll index j={self.j} invalid for nodebound n={self.n}")
        if self.section_power not in (0, 1):
            raise DomainError("section_power must be 0 or 1")
        total = self.n + sum(s for s, _ in self.blocks)
        if total != self.m:
            raise DomainError(f"scroll of total length {total} on ambient length {self.m}")

    @property
    def codim(self) -> int:
        off = sum(s - 1 + t.degree for s, t in self.blocks)
        return self.n + off + self.section_power

    @property
    def aut(self) -> int:
        return aut_count(s for s, _ in self.blocks)

    @property
    def off_node_count(self) -> int:
        return len(self.blocks)

    def with_section(self, power: int) -> "NodeScrollTerm":
        return NodeScrollTerm(self.m, self.j, self.n, self.blocks, power)

    def with_blocks(self, blocks) -> "NodeScrollTerm":
        return NodeScrollTerm(self.m, self.j, self.n, tuple(blocks), self.section_power)

    def sort_key(self):
        return (1 + self.section_power, self.m, self.n, self.j,
                tuple((-s, t) for s, t in self.blocks))

    def __str__(self) -> str:
        head = "Sect" if self.section_power else "F"
        sizes = ",".join(str(s) for s, _ in self.blocks) or "0"
        return f"{head}({self.j};{self.n}:{sizes}){_twist_text(self.blocks)}"


TautTerm = Union[DiagonalTerm, NodeScrollTerm]
Coeff = Union[CharExpr, Fraction, int]


def _is_zero_term(term: TautTerm, backend: Backend) -> bool:
    """Vanishing forced by dimension, independent of the coefficient."""
    amb = backend.ambient_dim(term.m)
    if amb is not None and term.codim > amb:
        return True
    if isinstance(term, DiagonalTerm):
        if backend.dim_X is not None and any(t.degree > backend.dim_X for _, t in term.blocks):
            return True
        return any(t.e_pt for _, t in term.blocks)
    if not backend.has_nodes:
        return True
    if backend.dim_X is not None:
        # off-node twists live on a branch curve of a singular fibre
        if any(t.degree > backend.dim_X - 1 for _, t in term.blocks):
            return True
    return False


@dataclass
class TautClass:
    m: int
    backend: Backend = PENCIL
    terms: dict = field(default_factory=dict)

    def __post_init__(self):
        self.backend = get_backend(self.backend)
        raw, self.terms = self.terms, {}
        for t, c in raw.items():
            self._add(t, c)

    # construction helpers
    def _add(self, term: TautTerm, coeff: Coeff) -> None:
        if term.m != self.m:
            raise DomainError(f"term {term} has ambient length {term.m}, class has {self.m}")
        c = CharExpr.lift(coeff)
        if not c or _is_zero_term(term, self.backend):
            return
        new = self.terms.get(term, CharExpr()) + c
        if new:
            self.terms[term] = new
        else:
            self.terms.pop(term, None)

    def add_term(self, term: TautTerm, coeff: Coeff = 1) -> "TautClass":
        self._add(term, coeff)
        return self

    @classmethod
    def zero(cls, m: int, backend="pencil") -> "TautClass":
        return cls(m, get_backend(backend))

    @classmethod
    def of(cls, term: TautTerm, coeff: Coeff = 1, backend="pencil") -> "TautClass":
        return cls(term.m, get_backend(backend), {term: coeff})

    def copy(self) -> "TautClass":
        out = TautClass(self.m, self.backend)
        out.terms = dict(self.terms)
        return out

    # linear structure
    def _check(self, other: "TautClass") -> None:
        if other.m != self.m:
            raise DomainError(f"ambient mismatch {self.m} vs {other.m}")
        if other.backend != self.backend:
            raise DomainError(f"backend mismatch {self.backend.name} vs {other.backend.name}")

    def __add__(self, other: "TautClass") -> "TautClass":
        self._check(other)
        out = self.copy()
        for t, c in other.terms.items():
            out._add(t, c)
        return out

    def __iadd__(self, other: "TautClass") -> "TautClass":
        self._check(other)
        for t, c in other.terms.items():
            self._add(t, c)
        return self

    def __neg__(self) -> "TautClass":
        return self.scale(-1)

    def __sub__(self, other: "TautClass") -> "TautClass":
        return self + (-other)

    def scale(self, c: Coeff) -> "TautClass":
        out = TautClass(self.m, self.backend)
        for t, v in self.terms.items():
            out._add(t, v * CharExpr.lift(c))
        return out

    def __mul__(self, c: Coeff) -> "TautClass":
        return self.scale(c)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, TautClass):
            return NotImplemented
        return self.m == other.m and self.backend == other.backend and self.terms == other.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def items(self) -> Iterator[tuple[TautTerm, CharExpr]]:
        return iter(sorted(self.terms.items(), key=lambda kv: kv[0].sort_key()))

    def codims(self) -> set[int]:
        return {t.codim for t in self.terms}

    def by_kind(self) -> tuple["TautClass", "TautClass", "TautClass"]:
        diag, scroll, sect = (TautClass(self.m, self.backend) for _ in range(3))
        for t, c in self.terms.items():
            if isinstance(t, DiagonalTerm):
                diag.terms[t] = c
            elif t.section_power == 0:
                scroll.terms[t] = c
            else:
                sect.terms[t] = c
        return diag, scroll, sect

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        out = []
        for t, c in self.items():
            if c.is_constant():
                v = c.constant_value()
                sign = "-" if v < 0 else "+"
                mag = abs(v)
                body = str(t) if mag == 1 else f"{mag}*{t}"
            else:
                sign, body = "+", f"({c})*{t}"
            out.append((sign, body))
        text = ("-" if out[0][0] == "-" else "") + out[0][1]
        for sign, body in out[1:]:
            text += f" {sign} {body}"
        return text

    __repr__ = __str__


def normalize(c: TautClass) -> TautClass:
    """Canonical form: sorted blocks, zero and dimension purges. Idempotent."""
    return TautClass(c.m, c.backend, dict(c.terms))


def codim(t: TautTerm) -> int:
    return t.codim


# -- named constructors --------------------------------------------------------

def diagonal(sizes: Iterable[int], twists: Iterable[BaseMonomial] | None = None) -> DiagonalTerm:
    sizes = list(sizes)
    twists = list(twists) if twists is not None else [ONE] * len(sizes)
    if len(twists) != len(sizes):
        raise DomainError("one twist per block is required")
    return DiagonalTerm(sum(sizes), tuple(zip(sizes, twists)))


def unit_class(m: int, backend="pencil") -> TautClass:
    return TautClass.of(diagonal([1] * m), 1, backend)


def gamma_class(m: int, twists: Iterable[BaseMonomial] | None = None,
                backend="pencil") -> TautClass:
    """The discriminant polarization, optionally twisted: G_m[a, b, ...] = 1/2 Diag(2|1..1)[a, b, ...]."""
    if m < 2:
        return TautClass.zero(m, backend)
    return TautClass.of(diagonal([2] + [1] * (m - 2), twists), Fraction(1, 2), backend)


def poly_class(twists: Iterable[BaseMonomial], backend="pencil") -> TautClass:
    """Pushforward of a_1 x ... x a_m from the fibre product, i.e. m! Diag(1|...|1)[a.]."""
    twists = list(twists)
    m = len(twists)
    return TautClass.of(diagonal([1] * m, twists), factorial(m), backend)


def scroll(m: int, j: int, n: int, sizes=(), twists=None, section: bool = False) -> NodeScrollTerm:
    sizes = list(sizes)
    twists = list(twists) if twists is not None else [ONE] * len(sizes)
    if len(twists) != len(sizes):
        raise DomainError("one twist per block is required")
    return NodeScrollTerm(m, j, n, tuple(zip(sizes, twists)), 1 if section else 0)


def labeling_share(x_sizes: Iterable[int], y_sizes: Iterable[int]) -> Fraction:
    """Fraction of the 2^r branch labelings of the off-node blocks that give this split."""
    x_sizes, y_sizes = list(x_sizes), list(y_sizes)
    r = len(x_sizes) + len(y_sizes)
    ways = Fraction(aut_count(x_sizes + y_sizes), aut_count(x_sizes) * aut_count(y_sizes))
    return ways / 2 ** r


def labeled_scroll(m: int, j: int, n: int, x_sizes=(), y_sizes=(), x_twists=None, y_twists=None,
                   section: bool = False, backend="pencil") -> "TautClass":
    """A scroll written with its off-node blocks assigned to the x and y branches.

    On an irreducible nodal fibre the branch labels carry no geometry: the
    labeled scroll is the share of the unlabeled scroll taken by that labeling,
    so summing over all labelings recovers the unlabeled scroll.
    """
    x_sizes, y_sizes = list(x_sizes), list(y_sizes)
    xt = list(x_twists) if x_twists is not None else [ONE] * len(x_sizes)
    yt = list(y_twists) if y_twists is not None else [ONE] * len(y_sizes)
    term = scroll(m, j, n, x_sizes + y_sizes, xt + yt, section)
    return TautClass.of(term, labeling_share(x_sizes, y_sizes), backend)


def excess_weight(size: int) -> int:
    return comb(size, 2)


__all__ = [
    "Block", "DiagonalTerm", "NodeScrollTerm", "TautClass", "TautTerm", "normalize", "codim",
    "diagonal", "unit_class", "gamma_class", "poly_class", "scroll", "labeled_scroll",
    "labeling_share",
]
