"""Transfer along the flaglet correspondence, Chern classes of the tautological bundle,
and the enumerative endpoints built from them."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Mapping, Sequence

from .characters import (L, ONE, Backend, BaseMonomial, CharExpr, char, get_backend, mul_base)
from .classes import DiagonalTerm, NodeScrollTerm, TautClass, diagonal, unit_class
from .gamma import evaluate, gamma_power_times, mul_gamma
from .partitions import aut_count
from .staircase import DomainError


def _append(blocks, new_block):
    return tuple(blocks) + (new_block,)


def _aut_ratio(old_blocks, new_blocks) -> Fraction:
    return Fraction(aut_count(s for s, _ in new_blocks), aut_count(s for s, _ in old_blocks))


def _transfer_term(term, twist: BaseMonomial, backend: Backend) -> TautClass:
    m = term.m + 1
    out = TautClass(m, backend)
    if isinstance(term, DiagonalTerm):
        new = _append(term.blocks, (1, twist))
        out.add_term(DiagonalTerm(m, new), _aut_ratio(term.blocks, new))
        return out

    blocks = term.blocks
    grown = _append(blocks, (1, twist))
    appended = TautClass.of(NodeScrollTerm(m, term.j, term.n, grown), _aut_ratio(blocks, grown), backend)
    if term.section_power == 0:
        return appended
    # node section: Gamma . tau(F) minus the two parts of the flaglet divisor
    out += mul_gamma(appended)
    for i, (size, tw) in enumerate(blocks):
        new_tw = mul_base(tw, twist, backend)
        if new_tw is None:
            continue
        promoted = blocks[:i] + ((size + 1, new_tw),) + blocks[i + 1:]
        out.add_term(NodeScrollTerm(m, term.j, term.n, promoted), -size * _aut_ratio(blocks, promoted))
    if twist.degree == 0:
        n = term.n
        for j in (term.j, term.j + 1):
            out.add_term(NodeScrollTerm(m, j, n + 1, blocks), -n)
    return out


def transfer(c: TautClass, twist: BaseMonomial = ONE) -> TautClass:
    """tau_m(c . twist_m): pull back to the flaglet scheme, twist the new point, push forward."""
    out = TautClass(c.m + 1, c.backend)
    for t, v in c.terms.items():
        out += _transfer_term(t, twist, c.backend).scale(v)
    return out


# -- full-flag pipeline ------------------------------------------------------------

def flag_step(prev: TautClass, exponent: int, twist_base: BaseMonomial = L) -> TautClass:
    """Push (prev) . (x_i)^exponent from the flaglet down to the next Hilbert scheme.

    x_i = twist_i - Gamma_i + Gamma_{i-1}: the twist on the new point, minus the
    discriminant upstairs, plus the discriminant pulled back from downstairs.
    """
    i = prev.m + 1
    out = TautClass(i, prev.backend)
    for a in range(exponent + 1):
        for b in range(exponent - a + 1):
            c = exponent - a - b
            coeff = factorial(exponent) // (factorial(a) * factorial(b) * factorial(c))
            down = gamma_power_times(prev, b) if b else prev
            tw = BaseMonomial(twist_base.e_L * a, twist_base.e_w * a, 0)
            if a and mul_base(tw, ONE, prev.backend) is None:
                continue
            up = transfer(down, tw)
            if c:
                up = gamma_power_times(up, c)
            out += up.scale(coeff * (-1) ** c)
    return out


def w_class(exponents: Sequence[int], backend="pencil", twist_base: BaseMonomial = L) -> TautClass:
    """Pushforward from the full flag scheme of x_1^{j_1} ... x_m^{j_m}, x_1 = L_1."""
    backend = get_backend(backend)
    first = BaseMonomial(twist_base.e_L * exponents[0], twist_base.e_w * exponents[0], 0)
    q = TautClass(1, backend)
    if mul_base(first, ONE, backend) is not None:
        q.add_term(diagonal([1], [first]), 1)
    for e in exponents[1:]:
        q = flag_step(q, e, twist_base)
    return q


def w_integral(exponents: Sequence[int], backend="pencil") -> CharExpr:
    c = w_class(exponents, backend)
    return evaluate(c) if c else CharExpr()


EXPECTED_CASES = ((2, 1, 1), (1, 1, 2), (2, 0, 2), (1, 2, 1), (1, 0, 3),
               (0, 3, 1), (0, 2, 2), (0, 1, 3), (0, 0, 4))


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


@dataclass
class MultisecantReport:
    cases: list[tuple[tuple[int, ...], CharExpr]]
    total: CharExpr
    unexpected: list[tuple[tuple[int, ...], CharExpr]]
    n3: CharExpr

    def to_json(self) -> dict:
        return {
            "cases": [{"exponents": list(e), "subtotal": str(v)} for e, v in self.cases],
            "grand_total": str(self.total),
            "N3": str(self.n3),
            "unexpected_cases": [{"exponents": list(e), "subtotal": str(v)} for e, v in self.unexpected],
        }


def multisecant_N3(characters: Mapping[str, object] | None = None,
                   grassmann: Mapping[tuple[int, ...], Fraction] | None = None) -> MultisecantReport:
    """3! N_3 as a sum over the flag-monomial integrals weighted by Grassmann integrals (1 for m = 3).

    Every exponent vector of total 4 is computed; any nonzero one outside the
    nine expected cases is returned in ``unexpected``.
    """
    grassmann = dict(grassmann or {})
    cases, unexpected = [], []
    total = CharExpr()
    for exps in _compositions(4, 3):
        val = w_integral(exps)
        if exps in EXPECTED_CASES:
            cases.append((exps, val))
        elif val:
            unexpected.append((exps, val))
        total = total + val * grassmann.get(exps, 1)
    order = {e: i for i, e in enumerate(EXPECTED_CASES)}
    cases.sort(key=lambda kv: order[kv[0]])
    if characters:
        subst = {k: v for k, v in characters.items()}
        cases = [(e, v.substitute(subst)) for e, v in cases]
        unexpected = [(e, v.substitute(subst)) for e, v in unexpected]
        total = total.substitute(subst)
    return MultisecantReport(cases, total, unexpected, total * Fraction(1, 6))


# -- Chern classes of the tautological bundle ---------------------------------------

def chern_total(m: int, backend="pencil", twist: BaseMonomial = L) -> list[TautClass]:
    """Chern classes c_0..c_m of the tautological bundle of a line bundle, by the flaglet recursion.

    On the flaglet scheme c(lambda_m) = c(lambda_{m-1}) (1 + twist_m - Gamma_m + Gamma_{m-1});
    the flaglet map to the m-th Hilbert scheme has degree m, so pushing forward and dividing by m
    recovers c(lambda_m).
    """
    backend = get_backend(backend)
    if m < 1:
        raise DomainError("m must be at least 1")
    prev = [unit_class(1, backend), TautClass(1, backend)]
    if mul_base(twist, ONE, backend) is not None:
        prev[1].add_term(diagonal([1], [twist]), 1)
    for i in range(2, m + 1):
        cur = [TautClass(i, backend) for _ in range(i + 1)]
        for k, ck in enumerate(prev):
            if not ck:
                continue
            base = transfer(ck)
            cur[k] += base
            cur[k + 1] += transfer(ck, twist)
            cur[k + 1] -= mul_gamma(base)
            cur[k + 1] += transfer(mul_gamma(ck))
        prev = [c.scale(Fraction(1, i)) for c in cur]
    return prev


def _expand_root_product(factors: Sequence[Sequence[int]], nvars: int) -> dict[tuple[int, ...], int]:
    """Expand a product of linear forms sum_{i in S} x_i into monomials in x_1..x_nvars."""
    poly = {(0,) * nvars: 1}
    for support in factors:
        nxt: dict[tuple[int, ...], int] = {}
        for mono, c in poly.items():
            for i in support:
                e = list(mono)
                e[i] += 1
                nxt[tuple(e)] = nxt.get(tuple(e), 0) + c
        poly = nxt
    return poly


def trisecant_scroll_degree(d=None, g=None) -> CharExpr:
    """Degree of c_3 of the exterior square of the tautological bundle on the third
    symmetric product of a single curve.

    With flag Chern roots x_1, x_2, x_3, c_3 of the exterior square is
    (x_1 + x_2)(x_1 + x_3)(x_2 + x_3); each monomial is pushed down the full flag
    scheme, whose map to the Hilbert scheme has degree 3! = 6. The result is a
    polynomial in d and g2 = 2g - 2; pass integers to specialize.
    """
    poly = _expand_root_product([(0, 1), (0, 2), (1, 2)], 3)
    value = CharExpr()
    for exps, c in poly.items():
        cls = w_class(exps, "curve")
        if cls:
            value = value + evaluate(cls) * c
    value = value * Fraction(1, 6)
    subst = {}
    if d is not None:
        subst["d"] = d
    if g is not None:
        subst["g2"] = 2 * g - 2
    return value.substitute(subst) if subst else value


def trisecant_closed_form(d=None, g=None) -> CharExpr:
    dd = CharExpr.lift(d) if d is not None else char("d")
    g2 = CharExpr.lift(2 * g - 2) if g is not None else char("g2")
    return (2 * dd ** 3 - 12 * dd ** 2 + 16 * dd - 3 * dd * g2 + 6 * g2) * Fraction(1, 6)


# -- relative double points ----------------------------------------------------------

def _flag_polynomial_text(n: int) -> str:
    """sum_{i=0}^n L1^(n-i) (L2 - G)^i expanded as a polynomial in L1, L2, G."""
    pieces = []
    for i in range(n + 1):
        for k in range(i + 1):
            coeff = comb(i, k) * (-1) ** k
            factors = []
            for sym, e in (("L1", n - i), ("L2", i - k), ("G", k)):
                if e == 1:
                    factors.append(sym)
                elif e > 1:
                    factors.append(f"{sym}^{e}")
            mono = "*".join(factors) or "1"
            mag = abs(coeff)
            body = mono if mag == 1 else f"{mag}*{mono}"
            pieces.append(("-" if coeff < 0 else "+", body))
    text = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
    for sign, body in pieces[1:]:
        text += f" {sign} {body}"
    return text


def _kappa(twist: BaseMonomial) -> CharExpr:
    """Symbol for the pushforward to B of a base monomial in L and w."""
    if twist.e_w == 0:
        return char(f"kappa{twist.e_L - 1}(L)")
    if twist.e_L == 0:
        return char(f"kappa{twist.e_w - 1}")
    return char(f"kappa{twist.e_L - 1},{twist.e_w - 1}(L,w)")


def pushforward_to_base(c: TautClass) -> CharExpr:
    """Push a class on the Hilbert scheme of 2 points down to B, in kappa and node symbols.

    Diag(1|1)[a, b] = 1/2 f_*(a x b) pushes to 1/2 kappa(a) kappa(b); Diag(2)[a]
    pushes to kappa(a); a node section pushes to minus the node locus, written
    delta, times its psi coefficient; bare scrolls push to zero. A base monomial
    of degree 0 pushes to zero along the fibres.
    """
    if c.m != 2:
        raise DomainError("pushforward to the base is implemented for 2 points")
    total = CharExpr()
    for t, v in c.terms.items():
        if isinstance(t, DiagonalTerm):
            twists = [tw for _, tw in t.blocks]
            if any(tw.degree == 0 for tw in twists):
                continue
            val = CharExpr.const(Fraction(1, t.aut))
            for tw in twists:
                val = val * _kappa(tw)
            total = total + val * v
        elif t.section_power:
            total = total - char("delta") * v
    return total


@dataclass
class DoublePointReport:
    n: int
    formal: str
    gamma_powers: dict[int, str]
    class_on_hilbert: TautClass
    base_display: CharExpr
    pencil_class: TautClass
    pencil_value: CharExpr | None

    def to_json(self) -> dict:
        return {
            "n": self.n, "formal": self.formal,
            "gamma_powers": {str(k): v for k, v in self.gamma_powers.items()},
            "class": str(self.class_on_hilbert),
            "2m_2": str(self.base_display),
            "pencil_class": str(self.pencil_class),
            "pencil_value": None if self.pencil_value is None else str(self.pencil_value),
        }


def double_point_class(n: int) -> DoublePointReport:
    """Segre class s_n of the dual of the tautological bundle on 2 points, the
    virtual class of relative double points of a map to P^n.

    The flag scheme of 2 points maps with degree 2 onto the Hilbert scheme, so
    the class there is half the sum of the pushed flag monomials.
    """
    from .gamma import gamma2_power_symbolic
    if n < 1:
        raise DomainError("n must be at least 1")

    def class_in(backend):
        out = TautClass(2, get_backend(backend))
        for i in range(n + 1):
            out += w_class((n - i, i), backend)
        return out.scale(Fraction(1, 2))

    symbolic = class_in("symbolic")
    pencil = class_in("pencil")
    amb = get_backend("pencil").ambient_dim(2)
    value = evaluate(pencil) if n == amb else None
    powers = {k: gamma2_power_symbolic(k)["formal"] for k in range(1, n + 1)}
    return DoublePointReport(n, _flag_polynomial_text(n), powers, symbolic,
                             pushforward_to_base(symbolic) * 2, pencil, value)
