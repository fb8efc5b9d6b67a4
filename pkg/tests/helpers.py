"""Shared oracles for the test suite: conversion of engine polynomials to sympy."""

import sympy

from hilbcalc.characters import CharExpr

CHAR_SYMBOLS = sympy.symbols("b d lw w2 g2 sig psix psiy")
b, d, lw, w2, g2, sig, psix, psiy = CHAR_SYMBOLS
_BY_NAME = {str(s): s for s in CHAR_SYMBOLS}


def as_sympy(expr: CharExpr) -> sympy.Expr:
    """Rebuild a character polynomial in sympy, monomial by monomial."""
    total = sympy.Integer(0)
    for mono, coeff in expr.terms.items():
        term = sympy.Rational(coeff.numerator, coeff.denominator)
        for name, power in mono:
            term *= _BY_NAME.get(name, sympy.Symbol(name)) ** power
        total += term
    return sympy.expand(total)


def same_polynomial(expr: CharExpr, expected) -> bool:
    return sympy.expand(as_sympy(expr) - sympy.sympify(expected)) == 0


def sigma_free(poly) -> sympy.Expr:
    return sympy.expand(sympy.sympify(poly).subs(sig, 0))


def sigma_part(poly) -> sympy.Expr:
    return sympy.expand(sympy.sympify(poly) - sigma_free(poly))
