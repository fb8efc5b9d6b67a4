"""Base classes on the total space X and the character ring that evaluations land in.

A base monomial is L^a * w^b * P^c, where w is the relative dualizing class and
P is the class of a node preimage on a branch curve of a singular fibre. P only
ever appears as a twist on the off-node blocks of a node scroll.

Characters are the formal symbols
    b = L^2, lw = L.w, w2 = w^2, d = deg L on a fibre, g2 = 2g - 2, sig = number of nodes,
plus psix, psiy and kappa symbols that only live in the symbolic backend.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Union

from .staircase import DomainError


class DimensionError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class BaseMonomial:
    e_L: int = 0
    e_w: int = 0
    e_pt: int = 0

    @property
    def degree(self) -> int:
        return self.e_L + self.e_w + self.e_pt

    def __mul__(self, other: "BaseMonomial") -> "BaseMonomial":
        return BaseMonomial(self.e_L + other.e_L, self.e_w + other.e_w, self.e_pt + other.e_pt)

    def __str__(self) -> str:
        parts = []
        for sym, e in (("L", self.e_L), ("w", self.e_w), ("P", self.e_pt)):
            if e == 1:
                parts.append(sym)
            elif e > 1:
                parts.append(f"{sym}^{e}")
        return "*".join(parts) if parts else "1"


ONE = BaseMonomial()
L = BaseMonomial(1, 0, 0)
OMEGA = BaseMonomial(0, 1, 0)
POINT = BaseMonomial(0, 0, 1)


@dataclass(frozen=True)
class Backend:
    """Geometry of the family X -> B.

    ``dim_X`` and ``dim_B`` are None for the symbolic backend, where nothing is
    truncated by dimension and psi classes stay formal.
    """

    name: str
    dim_X: int | None
    dim_B: int | None
    has_nodes: bool
    formal_psi: bool

    def ambient_dim(self, m: int) -> int | None:
        return None if self.dim_B is None else m + self.dim_B


PENCIL = Backend("pencil", 2, 1, True, False)
CURVE = Backend("curve", 1, 0, False, False)
SYMBOLIC = Backend("symbolic", None, None, True, True)

BACKENDS = {b.name: b for b in (PENCIL, CURVE, SYMBOLIC)}


def get_backend(name: str | Backend) -> Backend:
    if isinstance(name, Backend):
        return name
    try:
        return BACKENDS[name]
    except KeyError:
        raise DomainError(f"unknown backend {name!r}; choose from {sorted(BACKENDS)}") from None


def mul_base(a: BaseMonomial | None, b: BaseMonomial | None,
             backend: Backend = PENCIL) -> BaseMonomial | None:
    """Product on X; None stands for the zero class."""
    if a is None or b is None:
        return None
    prod = a * b
    if backend.dim_X is not None and prod.degree > backend.dim_X:
        return None
    return prod


# -- character expressions -----------------------------------------------------

CHARACTER_SYMBOLS = ("sig", "w2", "lw", "b", "d", "g2")
_PRINT_RANK = {s: i for i, s in enumerate(CHARACTER_SYMBOLS + ("psix", "psiy"))}
# terms are listed by descending exponent in this order
_TERM_RANK = ("b", "lw", "w2", "sig", "d", "g2", "psix", "psiy")

Monomial = tuple  # tuple of (symbol, exponent) pairs in canonical order


def _sym_key(sym: str) -> tuple:
    return (_PRINT_RANK.get(sym, len(_PRINT_RANK)), sym)


def _canon_monomial(powers: Mapping[str, int]) -> Monomial:
    return tuple(sorted(((s, e) for s, e in powers.items() if e), key=lambda p: _sym_key(p[0])))


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    powers = dict(a)
    for s, e in b:
        powers[s] = powers.get(s, 0) + e
    return _canon_monomial(powers)


Scalar = Union[int, Fraction]


class CharExpr:
    """Polynomial with exact rational coefficients in character symbols."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Fraction] | None = None):
        clean = {}
        if terms:
            for mono, c in terms.items():
                if c:
                    clean[mono] = Fraction(c)
        self.terms: dict[Monomial, Fraction] = clean
        self._hash = None

    # constructors
    @classmethod
    def const(cls, c: Scalar) -> "CharExpr":
        return cls({(): Fraction(c)})

    @classmethod
    def symbol(cls, name: str, power: int = 1) -> "CharExpr":
        return cls({_canon_monomial({name: power}): Fraction(1)})

    @classmethod
    def lift(cls, x: "CharExpr | Scalar") -> "CharExpr":
        return x if isinstance(x, CharExpr) else cls.const(x)

    # ring structure
    def __add__(self, other):
        other = CharExpr.lift(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return CharExpr(out)

    __radd__ = __add__

    def __neg__(self):
        return CharExpr({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-CharExpr.lift(other))

    def __rsub__(self, other):
        return CharExpr.lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, CharExpr):
            c = Fraction(other)
            return CharExpr({k: v * c for k, v in self.terms.items()}) if c else CharExpr()
        out: dict[Monomial, Fraction] = {}
        for k1, v1 in self.terms.items():
            for k2, v2 in other.terms.items():
                k = _mono_mul(k1, k2)
                out[k] = out.get(k, 0) + v1 * v2
        return CharExpr(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = CharExpr.const(1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, CharExpr):
            try:
                other = CharExpr.const(Fraction(other))
            except (TypeError, ValueError):
                return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    # inspection
    def is_constant(self) -> bool:
        return all(not k for k in self.terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise DomainError(f"expression {self} is not a constant")
        return self.terms.get((), Fraction(0))

    def symbols(self) -> set[str]:
        return {s for mono in self.terms for s, _ in mono}

    def substitute(self, values: Mapping[str, "CharExpr | Scalar"]) -> "CharExpr":
        out = CharExpr()
        for mono, c in self.terms.items():
            term = CharExpr.const(c)
            for s, e in mono:
                if s in values:
                    term = term * (CharExpr.lift(values[s]) ** e)
                else:
                    term = term * CharExpr.symbol(s, e)
            out = out + term
        return out

    def _term_key(self, mono: Monomial):
        powers = dict(mono)
        extra = tuple(sorted((s, e) for s, e in mono if s not in _TERM_RANK))
        return tuple(powers.get(s, 0) for s in _TERM_RANK) + (extra,)

    def ordered_terms(self) -> list[tuple[Monomial, Fraction]]:
        return sorted(self.terms.items(), key=lambda kv: self._term_key(kv[0]), reverse=True)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for mono, c in self.ordered_terms():
            sym = "*".join(s if e == 1 else f"{s}^{e}" for s, e in mono)
            mag = abs(c)
            if not sym:
                body = str(mag)
            elif mag == 1:
                body = sym
            else:
                body = f"{mag}*{sym}"
            pieces.append(("-" if c < 0 else "+", body))
        first_sign, first = pieces[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in pieces[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self) -> str:
        return f"CharExpr({self})"

    def to_json(self) -> dict[str, str]:
        out = {}
        for mono, c in self.ordered_terms():
            key = "*".join(s if e == 1 else f"{s}^{e}" for s, e in mono) or "1"
            out[key] = str(c)
        return out


def char(name: str) -> CharExpr:
    return CharExpr.symbol(name)


def chars_sum(items: Iterable[CharExpr]) -> CharExpr:
    out = CharExpr()
    for x in items:
        out = out + x
    return out


def integrate_surface(alpha: BaseMonomial) -> CharExpr:
    """Integral over the surface X (pencil backend) of a degree-2 base monomial."""
    if alpha.e_pt:
        raise DimensionError("the node class P is not a class on X")
    if alpha.degree != 2:
        raise DimensionError(f"{alpha} is not a point class on X")
    return {(2, 0): char("b"), (1, 1): char("lw"), (0, 2): char("w2")}[(alpha.e_L, alpha.e_w)]


def fiber_degree(alpha: BaseMonomial) -> CharExpr:
    """Degree of a degree-1 base class on a fibre of X -> B."""
    if alpha.e_pt:
        raise DimensionError("the node class P has no fibre degree on X")
    if alpha.degree != 1:
        raise DimensionError(f"{alpha} has degree {alpha.degree}, need 1")
    return char("d") if alpha.e_L else char("g2")


def branch_degree(alpha: BaseMonomial) -> CharExpr:
    """Degree on a branch curve of a singular fibre; P is a single point there."""
    if alpha.degree != 1:
        raise DimensionError(f"{alpha} has degree {alpha.degree}, need 1")
    if alpha.e_pt:
        return CharExpr.const(1)
    return fiber_degree(alpha)
