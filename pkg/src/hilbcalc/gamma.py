"""Multiplication by the discriminant polarization and evaluation of point classes."""

from __future__ import annotations

from fractions import Fraction
from math import comb

from .characters import (OMEGA, POINT, Backend, BaseMonomial, CharExpr, DimensionError,
                         branch_degree, char, fiber_degree, get_backend, integrate_surface,
                         mul_base)
from .classes import (Block, DiagonalTerm, NodeScrollTerm, TautClass, TautTerm, unit_class)
from .partitions import Distribution, aut_count, nu_coeff
from .staircase import beta


# -- helpers -------------------------------------------------------------------

def _unite_pair(blocks: list[Block], p: int, q: int, backend: Backend):
    twist = mul_base(blocks[p][1], blocks[q][1], backend)
    if twist is None:
        return None
    rest = [b for i, b in enumerate(blocks) if i not in (p, q)]
    return rest + [(blocks[p][0] + blocks[q][0], twist)]


def _twist_block(blocks: list[Block], i: int, extra: BaseMonomial, backend: Backend):
    twist = mul_base(blocks[i][1], extra, backend)
    if twist is None:
        return None
    out = list(blocks)
    out[i] = (blocks[i][0], twist)
    return out


def _pair_terms(blocks: list[Block], backend: Backend):
    """Unordered pairs of actual blocks with the coefficient nu * n_a * n_b."""
    dist = Distribution.from_sizes(s for s, _ in blocks)
    for p in range(len(blocks)):
        for q in range(p + 1, len(blocks)):
            a, b = blocks[p][0], blocks[q][0]
            united = _unite_pair(blocks, p, q, backend)
            if united is not None:
                yield united, nu_coeff(dist, a, b) * a * b


# -- Gamma times a diagonal term -------------------------------------------------

def _gamma_diagonal(term: DiagonalTerm, backend: Backend) -> TautClass:
    m = term.m
    out = TautClass(m, backend)
    blocks = list(term.blocks)
    for united, c in _pair_terms(blocks, backend):
        out.add_term(DiagonalTerm(m, tuple(united)), c)
    for i, (size, _) in enumerate(blocks):
        if size >= 2:
            twisted = _twist_block(blocks, i, OMEGA, backend)
            if twisted is not None:
                out.add_term(DiagonalTerm(m, tuple(twisted)), -comb(size, 2))
    if backend.has_nodes:
        for i, (size, twist) in enumerate(blocks):
            if size < 2 or twist.degree > 0:
                continue
            others = blocks[:i] + blocks[i + 1:]
            ratio = Fraction(aut_count(s for s, _ in others), term.aut)
            for j in range(1, size):
                out.add_term(NodeScrollTerm(m, j, size, tuple(others)), ratio * beta(size, j))
    return out


# -- E-classes on a node scroll --------------------------------------------------

def psi_part(n: int, k: int) -> CharExpr:
    return comb(n - k + 1, 2) * char("psix") + comb(k, 2) * char("psiy")


def apply_e(term: NodeScrollTerm, k: int, backend: Backend) -> TautClass:
    """Multiply the scroll (or section) by the class e_k pulled back from its base.

    e_k = psi part + D part - sum over off-node blocks of n'(n + 1) P. Both node
    preimages lie on the normalized fibre and each enters once, with weights
    n - k + 1 and k. The D part is minus the discriminant of the off-node points
    on the normalized fibre, whose canonical class is w - 2P.
    """
    n, m = term.n, term.m
    out = TautClass(m, backend)
    if backend.formal_psi:
        out.add_term(term, psi_part(n, k))
    blocks = list(term.blocks)

    def emit(new_blocks, coeff):
        if new_blocks is not None:
            out.add_term(term.with_blocks(new_blocks), coeff)

    for i, (size, _) in enumerate(blocks):
        emit(_twist_block(blocks, i, POINT, backend), -size * (n + 1))
        if size >= 2:
            c = comb(size, 2)
            emit(_twist_block(blocks, i, OMEGA, backend), c)
            emit(_twist_block(blocks, i, POINT, backend), -2 * c)
    for united, c in _pair_terms(blocks, backend):
        emit(united, -c)
    return out


def scroll_e_classes(term: NodeScrollTerm, backend="pencil"):
    """The pair (e_j, e_{j+1}) as operators on the scroll, returned as the images of the scroll."""
    backend = get_backend(backend)
    return apply_e(term, term.j, backend), apply_e(term, term.j + 1, backend)


def _apply_e_class(c: TautClass, k_offset: int) -> TautClass:
    out = TautClass(c.m, c.backend)
    for t, v in c.terms.items():
        out += apply_e(t, t.j + k_offset, c.backend).scale(v)
    return out


def _section_times_gamma(term: NodeScrollTerm, backend: Backend) -> TautClass:
    # Gamma.Sect = -(e_j + e_{j+1}) Sect - e_j e_{j+1} F
    sect = TautClass.of(term, 1, backend)
    scroll_only = TautClass.of(term.with_section(0), 1, backend)
    out = -(_apply_e_class(sect, 0) + _apply_e_class(sect, 1))
    out -= _apply_e_class(_apply_e_class(scroll_only, 1), 0)
    return out


def mul_gamma_term(term: TautTerm, backend: Backend) -> TautClass:
    if isinstance(term, DiagonalTerm):
        return _gamma_diagonal(term, backend)
    if term.section_power == 0:
        return TautClass.of(term.with_section(1), 1, backend)
    return _section_times_gamma(term, backend)


def mul_gamma(c: TautClass) -> TautClass:
    out = TautClass(c.m, c.backend)
    for t, v in c.terms.items():
        out += mul_gamma_term(t, c.backend).scale(v)
    return out


# -- powers ----------------------------------------------------------------------

def _complete_homogeneous(k: int):
    """Exponent pairs (a, b) with a + b = k."""
    return [(a, k - a) for a in range(k + 1)] if k >= 0 else []


def _apply_e_monomial(term: NodeScrollTerm, a: int, b: int, backend: Backend) -> TautClass:
    c = TautClass.of(term, 1, backend)
    for _ in range(b):
        c = _apply_e_class(c, 1)
    for _ in range(a):
        c = _apply_e_class(c, 0)
    return c


def gamma_power_on_scroll(ell: int, term: NodeScrollTerm, backend="pencil") -> TautClass:
    """Gamma^ell times a node scroll, by the projective-bundle relation.

    With h = -Gamma restricted to the scroll,
    h^ell = s_{ell-1}(e_j, e_{j+1}) h - e_j e_{j+1} s_{ell-2}(e_j, e_{j+1}),
    and h.F = -Sect.
    """
    backend = get_backend(backend)
    if term.section_power:
        raise ValueError("expected a scroll term, got a section")
    if ell == 0:
        return TautClass.of(term, 1, backend)
    if ell == 1:
        return TautClass.of(term.with_section(1), 1, backend)
    sect = term.with_section(1)
    h_part = TautClass(term.m, backend)
    for a, b in _complete_homogeneous(ell - 1):
        h_part += _apply_e_monomial(sect, a, b, backend)
    const_part = TautClass(term.m, backend)
    for a, b in _complete_homogeneous(ell - 2):
        const_part += _apply_e_monomial(term, a + 1, b + 1, backend)
    # h^ell F = -(s_{ell-1} applied to Sect) - e_j e_{j+1} s_{ell-2} F ; Gamma^ell = (-1)^ell h^ell
    h_power = -h_part - const_part
    return h_power.scale((-1) ** ell)


def gamma_power_times(c: TautClass, k: int) -> TautClass:
    """Gamma^k . c, expanding diagonals step by step and closing scroll powers in one go."""
    out = TautClass(c.m, c.backend)
    current = c
    for step in range(k + 1):
        remaining = k - step
        diag, scrolls, sects = current.by_kind()
        for t, v in scrolls.terms.items():
            out += gamma_power_on_scroll(remaining, t, c.backend).scale(v)
        for t, v in sects.terms.items():
            out += gamma_power_on_scroll(remaining + 1, t.with_section(0), c.backend).scale(v)
        if remaining == 0:
            out += diag
            break
        current = mul_gamma(diag)
    return out


def gamma_power_class(k: int, m: int, backend="pencil") -> TautClass:
    return gamma_power_times(unit_class(m, backend), k)


# -- evaluation ----------------------------------------------------------------

def _diag_value(term: DiagonalTerm, backend: Backend) -> CharExpr:
    twists = [t for _, t in term.blocks]
    if backend.name == "curve":
        if any(t.degree != 1 for t in twists):
            return CharExpr()
        val = CharExpr.const(Fraction(1, term.aut))
        for t in twists:
            val = val * fiber_degree(t)
        return val
    degs = sorted(t.degree for t in twists)
    if degs != [1] * (len(degs) - 1) + [2]:
        return CharExpr()
    val = CharExpr.const(Fraction(1, term.aut))
    for t in twists:
        val = val * (integrate_surface(t) if t.degree == 2 else fiber_degree(t))
    return val


def _scroll_value(term: NodeScrollTerm) -> CharExpr:
    if term.section_power == 0:
        return CharExpr()
    twists = [t for _, t in term.blocks]
    if any(t.degree != 1 for t in twists):
        return CharExpr()
    val = CharExpr.const(Fraction(-1, term.aut)) * char("sig")
    for t in twists:
        val = val * branch_degree(t)
    return val


def evaluate(c: TautClass, backend=None) -> CharExpr:
    backend = get_backend(backend) if backend is not None else c.backend
    if backend.name == "symbolic":
        raise DimensionError("the symbolic backend has no fundamental class to integrate against")
    amb = backend.ambient_dim(c.m)
    total = CharExpr()
    for t, v in c.terms.items():
        if t.codim != amb:
            raise DimensionError(f"term {t} has codimension {t.codim}, need {amb}")
        if not v.is_constant():
            raise DimensionError(f"coefficient {v} of {t} is not a number")
        val = _diag_value(t, backend) if isinstance(t, DiagonalTerm) else _scroll_value(t)
        total = total + val * v
    return total


# -- the m = 2 closed form -------------------------------------------------------

def gamma2_power_symbolic(k: int) -> dict:
    """Closed form for the k-th power of -Gamma on the Hilbert scheme of 2 points.

    Returns the formal expression (node contributions with psi monomials) and its
    pencil specialization, where psi classes vanish and each node scroll section
    integrates to -1.
    """
    if k < 1:
        raise ValueError("k must be at least 1")

    def psi_sum(e: int) -> str:
        if e < 0:
            return "0"
        mons = []
        for i in range(e, -1, -1):
            px = "" if i == 0 else ("psix" if i == 1 else f"psix^{i}")
            py = "" if e - i == 0 else ("psiy" if e - i == 1 else f"psiy^{e - i}")
            mons.append("*".join(p for p in (px, py) if p) or "1")
        return " + ".join(mons)

    if k == 1:
        formal = "-G"
    elif k == 2:
        formal = "-G[w] + 1/2*sum_s(F)"
    else:
        formal = (f"-G[w^{k-1}] + 1/2*sum_s(({psi_sum(k - 3)})*(-G)*F"
                  f" - psix*psiy*({psi_sum(k - 4)})*F)")
    sym_image = (f"-G[w^{k-1}] + 1/2*sum_s(({psi_sum(k - 3)})*F)" if k >= 3 else None)
    # the pencil specialization is reported for Gamma^k itself, not (-Gamma)^k
    engine = gamma_power_class(k, 2, "pencil")
    specialized = evaluate(engine) if k == 3 else None
    return {"k": k, "formal": formal, "symmetric_product_image": sym_image,
            "pencil_class": engine, "pencil_value": specialized}
