"""Text and JSON forms of tautological classes.

Grammar::

    class   := term (('+' | '-') term)*
    term    := [coeff '*'] atom | coeff
    coeff   := rational | '(' charexpr ')'
    atom    := 'Diag(' sizes ')' [twists]
             | 'G' int [twists]
             | ('F' | 'Sect') '(' int ';' int ':' dist ['|' dist] ')' [twists]
    sizes   := int ('|' int)*
    dist    := '0' | int (',' int)*
    twists  := '[' twist (',' twist)* ['|' twist (',' twist)*] ']'
    twist   := '1' | factor ('*' factor)*,   factor := ('L' | 'w' | 'P') ['^' int]

A scroll written with one distribution, F(j;n:sizes), is the unlabeled scroll.
Writing two distributions separated by '|' assigns the off-node blocks to the
x and y branches and yields that labeling's share of the unlabeled scroll.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction

from .characters import ONE, BaseMonomial, CharExpr, char, get_backend
from .classes import (DiagonalTerm, NodeScrollTerm, TautClass, diagonal, labeled_scroll, scroll)
from .staircase import DomainError


class ParseError(DomainError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


class _Tokens:
    def __init__(self, text: str):
        self.items: list[tuple[str, str, int]] = []
        pos = 0
        while pos < len(text):
            match = _TOKEN.match(text, pos)
            if match is None or match.end() == pos:
                break
            start = match.start(match.lastindex) if match.lastindex else match.end()
            if match.group(1) is not None:
                self.items.append(("int", match.group(1), start))
            elif match.group(2) is not None:
                self.items.append(("name", match.group(2), start))
            elif match.group(3) is not None:
                self.items.append(("sym", match.group(3), start))
            pos = match.end()
        self.end = len(text)
        self.i = 0

    def peek(self, offset: int = 0):
        k = self.i + offset
        return self.items[k] if k < len(self.items) else ("eof", "", self.end)

    def pos(self) -> int:
        return self.peek()[2]

    def next(self):
        tok = self.peek()
        self.i += 1
        return tok

    def accept(self, value: str) -> bool:
        if self.peek()[1] == value and self.peek()[0] != "eof":
            self.i += 1
            return True
        return False

    def expect(self, value: str) -> None:
        kind, val, pos = self.peek()
        if val != value or kind == "eof":
            raise ParseError(f"expected {value!r}, found {val or 'end of input'!r}", pos)
        self.i += 1

    def integer(self) -> int:
        kind, val, pos = self.next()
        if kind != "int":
            raise ParseError(f"expected an integer, found {val or 'end of input'!r}", pos)
        return int(val)


# -- character expressions --------------------------------------------------------------

def _rational(tokens: _Tokens) -> Fraction:
    num = tokens.integer()
    if tokens.peek()[1] == "/" and tokens.peek(1)[0] == "int":
        tokens.next()
        den = tokens.integer()
        if den == 0:
            raise ParseError("zero denominator", tokens.pos())
        return Fraction(num, den)
    return Fraction(num)


def _char_factor(tokens: _Tokens) -> CharExpr:
    kind, val, pos = tokens.peek()
    if kind == "int":
        return CharExpr.const(_rational(tokens))
    if kind == "name":
        tokens.next()
        name = val
        # kappa symbols carry an index and an argument list, e.g. kappa0,0(L,w)
        if tokens.peek()[1] == "(" and name.startswith("kappa"):
            depth, text = 0, ""
            while True:
                k2, v2, p2 = tokens.next()
                if k2 == "eof":
                    raise ParseError("unbalanced parenthesis", p2)
                text += v2
                depth += v2 == "("
                depth -= v2 == ")"
                if depth == 0:
                    break
            name += text
        expr = char(name)
        if tokens.accept("^"):
            expr = CharExpr.symbol(name, tokens.integer())
        return expr
    if tokens.accept("("):
        inner = _char_sum(tokens)
        tokens.expect(")")
        return inner
    raise ParseError(f"unexpected {val or 'end of input'!r} in a character expression", pos)


def _char_product(tokens: _Tokens) -> CharExpr:
    expr = _char_factor(tokens)
    while tokens.peek()[1] == "*":
        tokens.next()
        expr = expr * _char_factor(tokens)
    return expr


def _char_sum(tokens: _Tokens) -> CharExpr:
    sign = -1 if tokens.accept("-") else 1
    expr = _char_product(tokens) * sign
    while tokens.peek()[1] in "+-" and tokens.peek()[0] == "sym":
        sign = -1 if tokens.next()[1] == "-" else 1
        expr = expr + _char_product(tokens) * sign
    return expr


def parse_characters(text: str) -> CharExpr:
    tokens = _Tokens(text)
    expr = _char_sum(tokens)
    if tokens.peek()[0] != "eof":
        raise ParseError(f"unexpected {tokens.peek()[1]!r}", tokens.pos())
    return expr


# -- classes ---------------------------------------------------------------------------

def _twist(tokens: _Tokens) -> BaseMonomial:
    if tokens.peek()[0] == "int":
        pos = tokens.pos()
        if tokens.integer() != 1:
            raise ParseError("the only numeric twist is 1", pos)
        return ONE
    exps = {"L": 0, "w": 0, "P": 0}
    while True:
        kind, val, pos = tokens.next()
        if val not in exps:
            raise ParseError(f"unknown base class {val!r}", pos)
        power = tokens.integer() if tokens.accept("^") else 1
        exps[val] += power
        if not tokens.accept("*"):
            break
    return BaseMonomial(exps["L"], exps["w"], exps["P"])


def _twist_lists(tokens: _Tokens) -> tuple[list[BaseMonomial], list[BaseMonomial] | None]:
    first: list[BaseMonomial] = []
    second: list[BaseMonomial] | None = None
    current = first
    if tokens.peek()[1] not in "|]":
        current.append(_twist(tokens))
    while True:
        if tokens.accept(","):
            current.append(_twist(tokens))
        elif tokens.accept("|"):
            if second is not None:
                raise ParseError("at most two twist lists", tokens.pos())
            second = []
            current = second
            if tokens.peek()[1] not in "|]":
                current.append(_twist(tokens))
        else:
            break
    tokens.expect("]")
    return first, second


def _dist(tokens: _Tokens) -> list[int]:
    sizes = [tokens.integer()]
    while tokens.accept(","):
        sizes.append(tokens.integer())
    if sizes == [0]:
        return []
    if any(s < 1 for s in sizes):
        raise ParseError("block sizes must be positive", tokens.pos())
    return sizes


def _atom(tokens: _Tokens, backend) -> TautClass:
    kind, val, pos = tokens.next()
    if val == "Diag":
        tokens.expect("(")
        sizes = [tokens.integer()]
        while tokens.accept("|"):
            sizes.append(tokens.integer())
        tokens.expect(")")
        twists = None
        if tokens.accept("["):
            first, second = _twist_lists(tokens)
            if second is not None:
                raise ParseError("a diagonal takes a single twist list", pos)
            twists = first
        if twists is not None and len(twists) != len(sizes):
            raise ParseError("one twist per block is required", pos)
        _validate(twists or [], backend, pos, allow_point=False)
        return TautClass.of(diagonal(sizes, twists), 1, backend)
    if kind == "name" and re.fullmatch(r"G\d+", val):
        m = int(val[1:])
        twists = None
        if tokens.accept("["):
            first, second = _twist_lists(tokens)
            if second is not None:
                raise ParseError("G takes a single twist list", pos)
            twists = first + [ONE] * (m - 1 - len(first))
            if len(twists) != m - 1:
                raise ParseError(f"G{m} takes at most {m - 1} twists", pos)
        if m < 2:
            raise ParseError("G needs at least 2 points", pos)
        _validate(twists or [], backend, pos, allow_point=False)
        term = diagonal([2] + [1] * (m - 2), twists)
        return TautClass.of(term, Fraction(1, 2), backend)
    if val in ("F", "Sect"):
        section = val == "Sect"
        tokens.expect("(")
        j = tokens.integer()
        tokens.expect(";")
        n = tokens.integer()
        tokens.expect(":")
        x_sizes = _dist(tokens)
        y_sizes = _dist(tokens) if tokens.accept("|") else None
        tokens.expect(")")
        tw_first, tw_second = [], None
        if tokens.accept("["):
            tw_first, tw_second = _twist_lists(tokens)
        m = n + sum(x_sizes) + sum(y_sizes or [])
        _validate(tw_first + (tw_second or []), backend, pos, allow_point=True)
        try:
            if y_sizes is None:
                twists = tw_first or [ONE] * len(x_sizes)
                if len(twists) != len(x_sizes):
                    raise ParseError("one twist per off-node block is required", pos)
                return TautClass.of(scroll(m, j, n, x_sizes, twists, section), 1, backend)
            if tw_second is None:
                tw_second = tw_first[len(x_sizes):] if tw_first else []
                tw_first = tw_first[:len(x_sizes)]
            xt = tw_first or [ONE] * len(x_sizes)
            yt = tw_second or [ONE] * len(y_sizes)
            if len(xt) != len(x_sizes) or len(yt) != len(y_sizes):
                raise ParseError("one twist per off-node block is required", pos)
            return labeled_scroll(m, j, n, x_sizes, y_sizes, xt, yt, section, backend)
        except ParseError:
            raise
        except DomainError as exc:
            raise ParseError(str(exc), pos) from None
    raise ParseError(f"unknown generator {val or 'end of input'!r}", pos)


def _validate(twists, backend, pos: int, allow_point: bool) -> None:
    dim = backend.dim_X
    for tw in twists:
        if dim is not None and tw.degree > dim:
            raise ParseError(f"twist {tw} has degree {tw.degree} above dim X = {dim}", pos)
        if tw.e_pt and not allow_point:
            raise ParseError("the node class P only twists off-node blocks of a scroll", pos)


def parse_class(text: str, m: int | None = None, backend="pencil") -> TautClass:
    """Parse a class; ``m`` is the declared ambient length, inferred when omitted."""
    backend = get_backend(backend)
    tokens = _Tokens(text)
    pieces: list[TautClass] = []
    sign = 1
    if tokens.accept("-"):
        sign = -1
    elif tokens.accept("+"):
        sign = 1
    while True:
        pos = tokens.pos()
        coeff: CharExpr = CharExpr.const(1)
        kind, val, _ = tokens.peek()
        has_coeff = False
        if kind == "int":
            coeff = CharExpr.const(_rational(tokens))
            has_coeff = True
        elif val == "(":
            tokens.next()
            coeff = _char_sum(tokens)
            tokens.expect(")")
            has_coeff = True
        if has_coeff and not tokens.accept("*"):
            if m is None:
                raise ParseError("a bare number needs a declared ambient length", pos)
            atom = TautClass.of(diagonal([1] * m), 1, backend)
        else:
            atom = _atom(tokens, backend)
        pieces.append(atom.scale(coeff * sign))
        kind, val, _ = tokens.peek()
        if kind == "eof":
            break
        if val in "+-" and kind == "sym":
            tokens.next()
            sign = -1 if val == "-" else 1
        else:
            raise ParseError(f"unexpected {val!r}", tokens.pos())
    ambient = {p.m for p in pieces}
    if m is not None:
        ambient.add(m)
    if len(ambient) != 1:
        raise ParseError(f"terms have different ambient lengths {sorted(ambient)}", 0)
    out = TautClass(ambient.pop(), backend)
    for p in pieces:
        out += p
    return out


def format_class(c: TautClass) -> str:
    return str(c)


# -- JSON ------------------------------------------------------------------------------

def _coeff_json(c: CharExpr):
    if c.is_constant():
        return str(c.constant_value())
    return c.to_json()


def _coeff_from_json(raw) -> CharExpr:
    if isinstance(raw, str):
        return CharExpr.const(Fraction(raw))
    total = CharExpr()
    for mono, val in raw.items():
        total = total + parse_characters(mono) * Fraction(val)
    return total


def class_to_json(c: TautClass, value: CharExpr | None = None) -> dict:
    entries = []
    for t, v in c.items():
        blocks = [{"size": s, "twist": str(tw)} for s, tw in t.blocks]
        if isinstance(t, DiagonalTerm):
            entries.append({"kind": "diag", "coeff": _coeff_json(v), "blocks": blocks})
        else:
            entries.append({"kind": "section" if t.section_power else "scroll",
                            "coeff": _coeff_json(v), "j": t.j, "n": t.n, "blocks": blocks})
    out = {"m": c.m, "backend": c.backend.name, "class": entries}
    if value is not None:
        out["value"] = value.to_json()
    return out


def _twist_from_text(text: str) -> BaseMonomial:
    tokens = _Tokens(text)
    tw = _twist(tokens)
    if tokens.peek()[0] != "eof":
        raise ParseError(f"trailing text in twist {text!r}", tokens.pos())
    return tw


def class_from_json(data: dict | str) -> TautClass:
    if isinstance(data, str):
        data = json.loads(data)
    c = TautClass(int(data["m"]), get_backend(data.get("backend", "pencil")))
    for entry in data["class"]:
        blocks = tuple((int(b["size"]), _twist_from_text(b["twist"])) for b in entry["blocks"])
        coeff = _coeff_from_json(entry["coeff"])
        if entry["kind"] == "diag":
            term = DiagonalTerm(c.m, blocks)
        elif entry["kind"] in ("scroll", "section"):
            term = NodeScrollTerm(c.m, int(entry["j"]), int(entry["n"]), blocks,
                                  1 if entry["kind"] == "section" else 0)
        else:
            raise DomainError(f"unknown term kind {entry['kind']!r}")
        c.add_term(term, coeff)
    return c


def emit_json(c: TautClass, value: CharExpr | None = None) -> str:
    return json.dumps(class_to_json(c, value), sort_keys=True)
