"""Acceptance suite: one PASS/FAIL line per criterion 1 to 12.

Each criterion is a function returning (passed, detail). The pytest wrappers
print the line and assert on it, so a failing criterion fails its test. Run
the file directly to print the twelve lines without pytest.
"""

import random
import sys
import time
from fractions import Fraction
from math import comb

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from hilbcalc.characters import OMEGA, SYMBOLIC, BaseMonomial, mul_base
from hilbcalc.classes import (TautClass, diagonal, gamma_class, normalize, poly_class)
from hilbcalc.gamma import evaluate, gamma2_power_symbolic, gamma_power_class, gamma_power_times, mul_gamma
from hilbcalc.local_model import vanishing_order_table, verify_G_recursion, verify_sigma_relations
from hilbcalc.partitions import Distribution, nu_coeff
from hilbcalc.staircase import (alpha, beta, beta_total, beta_vector, beta_via_colength,
                                colength_by_cobasis)
from hilbcalc.syntax import parse_class
from hilbcalc.transfer import EXPECTED_CASES, double_point_class, multisecant_N3, transfer, trisecant_closed_form, trisecant_scroll_degree

from helpers import as_sympy, b, d, g2, lw, same_polynomial, sig, w2
from strategies import classes, homogeneous_terms, rationals, terms

RESULTS = {}

STATED_SUBTOTALS = {
    (2, 1, 1): b * (d - 1) * (d - 2),
    (1, 1, 2): -5 * b * d + b * d ** 2 + 6 * b - 2 * d * lw + 4 * lw,
    (2, 0, 2): -2 * b * d - b * g2 + 2 * b,
    (1, 2, 1): (b * d - 2 * b - lw) * (d - 2),
    (1, 0, 3): -3 * b * d - 3 * d * lw + 6 * b + 6 * lw - d * w2,
    (0, 3, 1): (-3 * b - 3 * lw - (w2 - sig)) * (d - 2),
    (0, 2, 2): -2 * d * sig + 10 * b + 12 * lw + 4 * w2 - 2 * sig - 4 * b * d - 2 * b * g2,
    (0, 1, 3): -3 * d * b - 3 * d * lw - d * w2 + 4 * d * sig + 12 * b + 18 * lw + 8 * w2 - 24 * sig,
    (0, 0, 4): 12 * b + 24 * lw + 14 * w2,
}
STATED_TOTAL = ((3 * d ** 2 - 25 * d + 60) * b + (-12 * d + 72) * lw + (-3 * d + 28) * w2
                - 3 * b * g2 + (3 * d - 20) * sig)


def timed(fn):
    start = time.perf_counter()
    value = fn()
    return value, time.perf_counter() - start


# -- the twelve criteria -----------------------------------------------------------------

def criterion_1():
    expected = {2: (1,), 3: (3, 3), 4: (6, 8, 6), 5: (10, 15, 15, 10), 6: (15, 24, 27, 24, 15)}
    totals = {2: 1, 3: 6, 4: 20, 5: 50, 6: 105}
    (vectors, sums), secs = timed(lambda: ({m: beta_vector(m) for m in expected},
                                           {m: beta_total(m) for m in expected}))
    ok = vectors == expected and sums == totals and secs < 0.1
    return ok, f"vectors {'match' if vectors == expected else vectors}, totals {sums}, {secs:.3f}s"


def criterion_2():
    def run():
        bad = []
        for m in range(2, 10):
            rng = random.Random(m)
            for j in range(1, m):
                values = (beta(m, j), colength_by_cobasis(m, j), beta_via_colength(m, j, rng))
                if len(set(values)) != 1:
                    bad.append((m, j, values))
        return bad
    bad, secs = timed(run)
    return not bad and secs < 5, f"disagreements {bad or 'none'}, {secs:.2f}s"


def criterion_3():
    bad, secs = timed(lambda: [m for m in range(1, 31) if alpha(m) != m * (m + 2) * (m * m - 1) // 24])
    return not bad and secs < 1, f"mismatches {bad or 'none'} for m <= 30, {secs:.3f}s"


def criterion_4():
    value = evaluate(gamma_power_class(3, 2))
    return same_polynomial(value, w2 / 2 - sig / 2), f"integral = {value}"


def criterion_5():
    value = evaluate(gamma_power_class(4, 3))
    return same_polynomial(value, 13 * w2 - 9 * sig), f"integral = {value}"


def criterion_6():
    value = evaluate(gamma_power_times(parse_class("F(1;2:1|0)", 3), 2))
    return same_polynomial(value, -3 * sig), f"(-G)^2 F = {value} (sig nodes)"


def criterion_7():
    report = multisecant_N3()
    got = dict(report.cases)
    off = {}
    for case in EXPECTED_CASES:
        diff = sympy.expand(as_sympy(got[case]) - STATED_SUBTOTALS[case])
        if diff != 0:
            off[case] = diff
    detail = ("all nine match" if not off else
              "engine minus stated: " + "; ".join(f"{c}: {v}" for c, v in off.items()))
    return not off, detail


def criterion_8():
    report, secs = timed(multisecant_N3)
    diff = sympy.expand(as_sympy(report.total) - STATED_TOTAL)
    ok = diff == 0 and secs < 10
    return ok, f"engine total {report.total}; engine minus stated = {diff}; {secs:.2f}s"


def criterion_9():
    (symbolic, at_30), secs = timed(lambda: (trisecant_scroll_degree(), trisecant_scroll_degree(3, 0)))
    ok = symbolic == trisecant_closed_form() and not at_30 and secs < 1
    return ok, f"degree = {symbolic}; (3,0) -> {at_30}; {secs:.3f}s"


def criterion_10():
    def run():
        sigma = all(verify_sigma_relations(m).passed for m in range(1, 5))
        grec = all(verify_G_recursion(m).passed for m in range(2, 5))
        tables = {m: vanishing_order_table(m) for m in range(2, 5)}
        return sigma, grec, tables
    (sigma, grec, tables), secs = timed(run)
    law_bad = {m: len(t.mismatches()) for m, t in tables.items() if not t.law_holds()}
    ok = sigma and grec and not law_bad and secs < 30
    detail = (f"sigma relations {'pass' if sigma else 'fail'}; G recursion {'pass' if grec else 'fail'}"
              f" (up to sign); vanishing law mismatches by m: {law_bad or 'none'}; {secs:.2f}s")
    return ok, detail


def _property_suites():
    failures = []

    def check(name, fn):
        try:
            fn()
        except Exception as exc:  # a falsified property
            failures.append(f"{name}: {type(exc).__name__}")

    for m in range(1, 6):
        @settings(max_examples=500, deadline=None, database=None)
        @given(st.data())
        def grading_and_linearity(data):
            term, c = data.draw(homogeneous_terms(m))
            assert all(t.codim == term.codim + 1 for t in mul_gamma(c).terms)
            c1, c2, a = data.draw(classes(m)), data.draw(classes(m)), data.draw(rationals)
            assert mul_gamma(c1.scale(a) + c2) == mul_gamma(c1).scale(a) + mul_gamma(c2)
        check(f"(a) m={m}", grading_and_linearity)

    for m in range(1, 5):
        @settings(max_examples=150, deadline=None, database=None)
        @given(st.data())
        def transfer_props(data):
            term = data.draw(terms(m))
            up = transfer(TautClass.of(term, 1, "pencil"))
            assert up.m == m + 1 and all(t.codim == term.codim for t in up.terms)
            c1, c2, a = data.draw(classes(m)), data.draw(classes(m)), data.draw(rationals)
            assert transfer(c1.scale(a) + c2) == transfer(c1).scale(a) + transfer(c2)
        check(f"(b) m={m}", transfer_props)

    twist = st.builds(BaseMonomial, st.integers(0, 2), st.integers(0, 2), st.just(0))

    @settings(max_examples=200, deadline=None, database=None)
    @given(twist, twist, twist)
    def rule_one(x, y, z):
        right = TautClass(3, "symbolic")
        for p, q, r in ((x, y, z), (x, z, y), (y, z, x)):
            right += gamma_class(3, [mul_base(p, q, SYMBOLIC), r], "symbolic")
        assert mul_gamma(poly_class([x, y, z], "symbolic")) == right.scale(2)

    @settings(max_examples=200, deadline=None, database=None)
    @given(twist.filter(lambda t: t.degree > 0), twist)
    def rule_two(x, y):
        right = TautClass.of(diagonal([3], [mul_base(x, y, SYMBOLIC)]), 1, "symbolic")
        right -= gamma_class(3, [mul_base(x, OMEGA, SYMBOLIC), y], "symbolic")
        assert mul_gamma(gamma_class(3, [x, y], "symbolic")) == right

    check("(c) rule 1", rule_one)
    check("(c) rule 2", rule_two)

    for m in range(1, 6):
        @settings(max_examples=100, deadline=None, database=None)
        @given(st.data())
        def idempotent(data):
            c = data.draw(classes(m))
            assert normalize(normalize(c)) == normalize(c)
        check(f"(d) m={m}", idempotent)

    if any(beta(m, j) != beta(m, m - j) for m in range(2, 13) for j in range(1, m)):
        failures.append("(e) symmetry")

    nu_ok = True
    for m in range(6, 12):
        dist = Distribution.from_sizes([2, 2] + [1] * (m - 4))
        coefficients = (nu_coeff(dist, 1, 1) * comb(m - 4, 2),
                        nu_coeff(dist, 2, 2) * 2 * 2,
                        nu_coeff(dist, 2, 1) * 2 * 1 * 2 * (m - 4))
        nu_ok &= coefficients == (Fraction(3, 2), 2, 2)
    if not nu_ok:
        failures.append("(f) nu coefficients")
    return failures


def criterion_11():
    failures = _property_suites()
    return not failures, "suites (a)-(f) hold" if not failures else "falsified: " + ", ".join(failures)


def criterion_12():
    pencil = gamma2_power_symbolic(3)["pencil_value"]
    report = double_point_class(1)
    expected_class = (TautClass.of(diagonal([1, 1], [BaseMonomial(0, 0, 0), BaseMonomial(1, 0, 0)]), 2,
                                   "symbolic") - gamma_class(2, backend="symbolic"))
    ok = (same_polynomial(pencil, w2 / 2 - sig / 2) and report.formal == "L1 + L2 - G"
          and report.class_on_hilbert == expected_class)
    return ok, f"cube on 2 points = {pencil}; s_1 = {report.formal} = {report.class_on_hilbert}"


CRITERIA = [
    (1, "beta tables", criterion_1),
    (2, "triple-oracle beta agreement", criterion_2),
    (3, "alpha closed form", criterion_3),
    (4, "cube of Gamma on 2 points", criterion_4),
    (5, "fourth power of Gamma on 3 points", criterion_5),
    (6, "(-Gamma)^2 on the labeled scroll", criterion_6),
    (7, "nine trisecant subtotals", criterion_7),
    (8, "trisecant grand total", criterion_8),
    (9, "trisecant scroll degree", criterion_9),
    (10, "local model verification", criterion_10),
    (11, "property suites", criterion_11),
    (12, "two-point closed form and double point class", criterion_12),
]


def line(number, title, ok, detail):
    return f"{'PASS' if ok else 'FAIL'} criterion {number:>2} ({title}): {detail}"


@pytest.mark.parametrize("number, title, check", CRITERIA, ids=[f"criterion_{n}" for n, _, _ in CRITERIA])
def test_criterion(number, title, check):
    ok, detail = check()
    text = line(number, title, ok, detail)
    RESULTS[number] = text
    print(text)
    assert ok, text


if __name__ == "__main__":
    status = 0
    for number, title, check in CRITERIA:
        ok, detail = check()
        print(line(number, title, ok, detail))
        status |= not ok
    sys.exit(status)
